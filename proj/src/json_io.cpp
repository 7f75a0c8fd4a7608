#include "hyper/json_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

namespace hyper {

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string canonical_dump(const json& j) { return j.dump(2); }

json to_json(const Scalar& s) {
  if (s.field().is_rational()) {
    const mpq_class q = s.rational_value();
    return {{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
  }
  return {{"mod", s.field().p}, {"val", std::to_string(s.residue_value())}};
}

Scalar scalar_from_json(const json& j) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "scalar must be a JSON object");
  if (j.contains("mod")) {
    const Field f = Field::prime(j.at("mod").get<std::uint64_t>());
    return Scalar(f, mpz_class(j.at("val").get<std::string>()));
  }
  mpq_class q(mpz_class(j.at("num").get<std::string>()), mpz_class(j.at("den").get<std::string>()));
  if (q.get_den() == 0) fail(ErrorCode::DivisionByZero, "scalar with zero denominator");
  return Scalar(Field::rationals(), q);
}

json to_json(const MultiExp& m) {
  json a = json::array();
  for (int j = 0; j < m.n; ++j) a.push_back(m[j]);
  return a;
}

MultiExp mono_from_json(const json& j) {
  if (!j.is_array() || j.size() > static_cast<std::size_t>(kMaxVars))
    fail(ErrorCode::InvalidArgument, "monomial must be an exponent array");
  MultiExp m(static_cast<int>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) m[static_cast<int>(k)] = j[k].get<std::int16_t>();
  return m;
}

json to_json(const Weight& w) { return w.coords; }

json to_json(const Generator& g, const RootData& rd) {
  switch (g.kind) {
    case GenKind::Lower:
    case GenKind::Raise: {
      std::vector<int> root(rd.root(g.index).begin(), rd.root(g.index).end());
      return {{"kind", g.kind == GenKind::Lower ? "lower" : "raise"},
              {"root", root},
              {"mono", to_json(g.mono)},
              {"power", g.power}};
    }
    case GenKind::Binom: return {{"kind", "binom"}, {"i", g.index + 1}, {"k", g.power}};
    case GenKind::Lambda:
      return {{"kind", "lambda"}, {"i", g.index + 1}, {"mono", to_json(g.mono)}, {"r", g.power}};
  }
  return {};
}

Generator generator_from_json(const json& j, const RootData& rd, int nvars) {
  const std::string kind = j.at("kind").get<std::string>();
  auto mono = [&] {
    MultiExp m = mono_from_json(j.at("mono"));
    if (m.n != nvars) fail(ErrorCode::InvalidArgument, "monomial has the wrong number of variables");
    return m;
  };
  auto node = [&](const char* key) {
    const int i = j.at(key).get<int>();
    if (i < 1 || i > rd.rank()) fail(ErrorCode::InvalidArgument, "node index out of range");
    return i - 1;
  };
  if (kind == "lower" || kind == "raise") {
    const auto coeffs = j.at("root").get<std::vector<int>>();
    for (int b = 0; b < rd.num_positive_roots(); ++b) {
      const auto& r = rd.root(b);
      if (std::equal(coeffs.begin(), coeffs.end(), r.begin(), r.end())) {
        const int k = j.at("power").get<int>();
        return kind == "lower" ? Generator::lower(b, mono(), k) : Generator::raise(b, mono(), k);
      }
    }
    fail(ErrorCode::InvalidArgument, "not a positive root of " + rd.name());
  }
  if (kind == "binom") return Generator::binom(node("i"), nvars, j.at("k").get<int>());
  if (kind == "lambda") return Generator::lambda(node("i"), mono(), j.at("r").get<int>());
  fail(ErrorCode::InvalidArgument, "unknown generator kind '" + kind + "'");
}

json to_json(const AlgebraElement& x, const RootData& rd) {
  json terms = json::array();
  for (const auto& [m, c] : x.terms) {
    json word = json::array();
    for (const auto& g : m.word) word.push_back(to_json(g, rd));
    terms.push_back({{"word", word}, {"coeff", to_json(c)}});
  }
  return {{"field", x.field.name()}, {"terms", terms}};
}

AlgebraElement element_from_json(const json& j, const RootData& rd, int nvars) {
  const std::string fname = j.at("field").get<std::string>();
  const Field f = fname == "Q" ? Field::rationals() : Field::prime(std::stoull(fname.substr(1)));
  AlgebraElement x(f);
  for (const auto& t : j.at("terms")) {
    PBWMonomial m;
    for (const auto& g : t.at("word")) m.word.push_back(generator_from_json(g, rd, nvars));
    const Scalar c = scalar_from_json(t.at("coeff"));
    if (c.field() != f) fail(ErrorCode::FieldMismatch, "coefficient outside " + f.name());
    x.add(m, c);
  }
  return x;
}

std::vector<Generator> serialization_set(const ModuleRep& m) {
  std::vector<Generator> out = m.exported;
  auto add = [&](const Generator& g) {
    if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  };
  const int n = m.nvars;
  std::vector<MultiExp> near;
  for (int j = 0; j < n; ++j) {
    near.push_back(MultiExp::unit(n, j));
    if (m.context == Context::Loop) near.push_back(-MultiExp::unit(n, j));
  }
  const Weight& lam = m.highest;
  for (int i = 0; i < m.rd->rank(); ++i) {
    for (int k = 1; k <= lam[i] + 1; ++k) add(Generator::binom(i, n, k));
    for (const auto& c : near)
      for (int r = 1; r <= lam[i] + 1; ++r) add(Generator::lambda(i, c, r));
  }
  // the highest-weight test raises with every exponent in [-1, 1]^n (Loop) or [0, 1]^n
  std::vector<MultiExp> box{MultiExp(n)};
  for (int j = 0; j < n; ++j) {
    const std::size_t len = box.size();
    for (int e : {1, -1}) {
      if (e < 0 && m.context != Context::Loop) continue;
      for (std::size_t q = 0; q < len; ++q) {
        MultiExp s = box[q];
        s[j] = static_cast<std::int16_t>(e);
        box.push_back(s);
      }
    }
  }
  for (int b = 0; b < m.rd->num_positive_roots(); ++b)
    for (const auto& s : box) {
      add(Generator::raise(b, s, 1));
      add(Generator::lower(b, s, 1));
    }
  std::sort(out.begin(), out.end(),
            [](const Generator& a, const Generator& b) { return compare_generators(a, b) < 0; });
  return out;
}

namespace {

json matrix_json(const Matrix& a) {
  json entries = json::array();
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (!a.at(i, j).is_zero()) entries.push_back({i, j, to_json(a.at(i, j))});
  return entries;
}

json caps_json(const Caps& c) {
  return {{"max_power", c.max_power}, {"max_height", c.max_height}};
}

class TableSource : public ActionSource {
 public:
  TableSource(std::vector<std::pair<Generator, Matrix>> table, RootDataPtr rd)
      : table_(std::move(table)), rd_(std::move(rd)) {}
  Matrix matrix(const Generator& g) const override {
    for (const auto& [h, a] : table_)
      if (h == g) return a;
    fail(ErrorCode::InvalidArgument, "generator action not stored in the module file: " + to_json(g, *rd_).dump());
  }

 private:
  std::vector<std::pair<Generator, Matrix>> table_;
  RootDataPtr rd_;
};

Variant variant_from(const std::string& s) {
  if (s == "finite") return Variant::FiniteType;
  if (s == "graded") return Variant::Graded;
  if (s == "loop") return Variant::Loop;
  fail(ErrorCode::InvalidArgument, "unknown variant '" + s + "'");
}

}  // namespace

json to_json(const ModuleRep& m) {
  const RootData& rd = *m.rd;
  json basis = json::array();
  for (int i = 0; i < m.dim(); ++i) {
    json b = {{"label", m.basis_labels[i]}, {"weight", to_json(m.weights[i])}};
    if (m.degrees) b["degree"] = to_json((*m.degrees)[i]);
    basis.push_back(b);
  }
  json actions = json::array();
  for (const auto& g : serialization_set(m))
    actions.push_back({{"generator", to_json(g, rd)}, {"matrix", matrix_json(m.action(g))}});
  const Certificate& c = m.certificate;
  json body = {
      {"type", rd.name()},
      {"field", m.field.name()},
      {"nvars", m.nvars},
      {"context", m.context == Context::Loop ? "loop" : "current"},
      {"variant", variant_name(m.variant)},
      {"kind", m.kind},
      {"highest_weight", to_json(m.highest)},
      {"dim", m.dim()},
      {"cyclic_vector", m.cyclic_vector},
      {"basis", basis},
      {"certificate",
       {{"caps", caps_json(c.caps)},
        {"relations", c.relations},
        {"checks", c.checks},
        {"defects", c.defects},
        {"iterations", c.iterations},
        {"spanning", c.spanning},
        {"cyclic", c.cyclic}}},
      {"actions", actions},
  };
  body["digest"] = fnv1a_hex(canonical_dump(body));
  return body;
}

ModulePtr module_from_json(const json& j) {
  json body = j;
  const std::string digest = body.at("digest").get<std::string>();
  body.erase("digest");
  if (fnv1a_hex(canonical_dump(body)) != digest)
    fail(ErrorCode::InvalidArgument, "module digest does not match its contents");
  const std::string type = body.at("type").get<std::string>();
  if (type.size() < 2 || !std::isalpha(static_cast<unsigned char>(type[0])))
    fail(ErrorCode::InvalidArgument, "bad type '" + type + "'");
  auto m = std::make_shared<ModuleRep>();
  m->rd = RootData::build(type[0], std::stoi(type.substr(1)));
  const std::string fname = body.at("field").get<std::string>();
  m->field = fname == "Q" ? Field::rationals() : Field::prime(std::stoull(fname.substr(1)));
  m->nvars = body.at("nvars").get<int>();
  m->context = body.at("context").get<std::string>() == "loop" ? Context::Loop : Context::Current;
  m->variant = variant_from(body.at("variant").get<std::string>());
  m->kind = body.at("kind").get<std::string>();
  m->highest = Weight(body.at("highest_weight").get<std::vector<int>>());
  m->cyclic_vector = body.at("cyclic_vector").get<int>();
  for (const auto& b : body.at("basis")) {
    m->basis_labels.push_back(b.at("label").get<std::string>());
    m->weights.emplace_back(b.at("weight").get<std::vector<int>>());
    if (b.contains("degree")) {
      if (!m->degrees) m->degrees.emplace();
      m->degrees->push_back(mono_from_json(b.at("degree")));
    }
  }
  const json& c = body.at("certificate");
  m->certificate.caps.max_power = c.at("caps").at("max_power").get<int>();
  m->certificate.caps.max_height = c.at("caps").at("max_height").get<int>();
  m->certificate.relations = c.at("relations").get<std::vector<std::string>>();
  m->certificate.checks = c.at("checks").get<long>();
  m->certificate.defects = c.at("defects").get<int>();
  m->certificate.iterations = c.at("iterations").get<int>();
  m->certificate.spanning = c.at("spanning").get<int>();
  m->certificate.cyclic = c.at("cyclic").get<bool>();
  const int d = m->dim();
  std::vector<std::pair<Generator, Matrix>> table;
  for (const auto& a : body.at("actions")) {
    const Generator g = generator_from_json(a.at("generator"), *m->rd, m->nvars);
    Matrix mat(m->field, d, d);
    for (const auto& e : a.at("matrix")) {
      const int r = e.at(0).get<int>(), col = e.at(1).get<int>();
      if (r < 0 || r >= d || col < 0 || col >= d) fail(ErrorCode::InvalidArgument, "matrix entry out of range");
      mat.at(r, col) = scalar_from_json(e.at(2));
    }
    table.emplace_back(g, std::move(mat));
  }
  // every stored generator counts as exported, so a reload serializes to the same bytes
  for (const auto& [g, a] : table) m->exported.push_back(g);
  m->set_source(std::make_shared<TableSource>(std::move(table), m->rd));
  return m;
}

std::string character_csv(const std::map<Weight, long>& ch) {
  std::string out;
  if (ch.empty()) return out;
  const int l = ch.begin()->first.rank();
  for (int i = 0; i < l; ++i) out += "w" + std::to_string(i + 1) + ",";
  out += "multiplicity\n";
  for (const auto& [w, k] : ch) {
    for (int c : w.coords) out += std::to_string(c) + ",";
    out += std::to_string(k) + "\n";
  }
  return out;
}

std::string graded_character_csv(const std::map<std::pair<Weight, MultiExp>, long>& ch) {
  std::string out;
  if (ch.empty()) return out;
  const int l = ch.begin()->first.first.rank(), n = ch.begin()->first.second.n;
  for (int i = 0; i < l; ++i) out += "w" + std::to_string(i + 1) + ",";
  for (int j = 0; j < n; ++j) out += "d" + std::to_string(j + 1) + ",";
  out += "multiplicity\n";
  for (const auto& [key, k] : ch) {
    for (int c : key.first.coords) out += std::to_string(c) + ",";
    for (int j = 0; j < n; ++j) out += std::to_string(key.second[j]) + ",";
    out += std::to_string(k) + "\n";
  }
  return out;
}

void RunConfig::validate() const {
  if (type.size() < 2 || !std::isupper(static_cast<unsigned char>(type[0])))
    fail(ErrorCode::InvalidArgument, "type must look like A2, got '" + type + "'");
  for (std::size_t i = 1; i < type.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(type[i])))
      fail(ErrorCode::InvalidArgument, "type must look like A2, got '" + type + "'");
  if (nvars < 0 || nvars > kMaxVars)
    fail(ErrorCode::InvalidArgument, "n must lie in 0.." + std::to_string(kMaxVars));
  if (variant != "finite" && variant != "graded" && variant != "loop")
    fail(ErrorCode::InvalidArgument, "variant must be finite, graded or loop");
  if (format != "json" && format != "csv") fail(ErrorCode::InvalidArgument, "format must be json or csv");
  for (const auto& [k, v] : caps)
    if (v < 0) fail(ErrorCode::InvalidArgument, "cap " + k + " is negative");
  field_value();
  root_data();
}

Field RunConfig::field_value() const { return field == 0 ? Field::rationals() : Field::prime(field); }

RootDataPtr RunConfig::root_data() const { return RootData::build(type[0], std::stoi(type.substr(1))); }

json RunConfig::to_json() const {
  return {{"type", type}, {"n", nvars}, {"variant", variant}, {"field", field},
          {"caps", caps},  {"format", format}, {"seed", seed}};
}

}  // namespace hyper
