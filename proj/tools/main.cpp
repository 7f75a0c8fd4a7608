// hyperalg: command-line front end to the engine.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "hyper/expr.hpp"
#include "hyper/json_io.hpp"
#include "hyper/suites.hpp"

using namespace hyper;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string type = "A1";
  int n = 1;
  std::uint32_t field = 0;
  std::string context = "loop";
  std::string format = "json";
  std::string out;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Common& c, bool with_context) {
  cmd->add_option("--type", c.type, "Cartan type and rank, e.g. A2")->capture_default_str();
  cmd->add_option("--n", c.n, "number of loop variables")->capture_default_str();
  cmd->add_option("--field", c.field, "0 for Q or a prime p")->capture_default_str();
  if (with_context)
    cmd->add_option("--context", c.context, "current or loop")
        ->check(CLI::IsMember({"current", "loop"}))
        ->capture_default_str();
  cmd->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  cmd->add_option("--out", c.out, "write the artifact here instead of stdout");
}

RunConfig make_config(const Common& c, const std::string& variant) {
  RunConfig cfg;
  cfg.type = c.type;
  cfg.nvars = c.n;
  cfg.variant = variant;
  cfg.field = c.field;
  cfg.format = c.format;
  cfg.seed = c.seed;
  cfg.validate();
  return cfg;
}

Context context_of(const Common& c) { return c.context == "loop" ? Context::Loop : Context::Current; }

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

Weight parse_weight(const std::string& s, int rank) {
  std::vector<int> c;
  for (const auto& x : split(s, ',')) {
    try {
      std::size_t used = 0;
      c.push_back(std::stoi(x, &used));
      if (used != x.size()) throw std::invalid_argument(x);
    } catch (const std::exception&) {
      throw UsageError("bad weight coordinate '" + x + "'");
    }
  }
  if (static_cast<int>(c.size()) != rank)
    throw UsageError("weight '" + s + "' needs " + std::to_string(rank) + " coordinates");
  return Weight(c);
}

EvalPoint parse_point(const std::string& s, int n, Field f) {
  EvalPoint p;
  for (const auto& x : split(s, ',')) {
    try {
      mpq_class q(x);
      if (q.get_den() == 0) throw UsageError("zero denominator in '" + x + "'");
      q.canonicalize();
      p.a.push_back(to_field(q, f));
    } catch (const std::invalid_argument&) {
      throw UsageError("bad point coordinate '" + x + "'");
    }
  }
  if (static_cast<int>(p.a.size()) != n)
    throw UsageError("point '" + s + "' needs " + std::to_string(n) + " coordinates");
  return p;
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw UsageError("cannot write " + c.out);
  f << text;
}

void emit_json(const Common& c, const json& j) { emit(c, canonical_dump(j) + "\n"); }


json character_json(const ModuleRep& m) {
  json rows = json::array();
  for (const auto& [w, k] : character(m)) rows.push_back({{"weight", to_json(w)}, {"multiplicity", k}});
  return rows;
}

json lweight_json(const LWeight& w) {
  json polys = json::array();
  for (int i = 0; i < w.rank; ++i) {
    json row = json::array();
    for (int j = 0; j < w.nvars; ++j) {
      json coeffs = json::array();
      for (const auto& c : w.polys[i][j]) coeffs.push_back(to_json(c));
      row.push_back(coeffs);
    }
    polys.push_back(row);
  }
  return {{"polynomials", polys}, {"string", w.str()}};
}

void emit_module(const Common& c, const RunConfig& cfg, const ModuleRep& m, const json& recipe) {
  if (c.format == "csv") {
    emit(c, m.degrees ? graded_character_csv(graded_character(m)) : character_csv(character(m)));
    return;
  }
  const json mj = to_json(m);
  emit_json(c, {{"config", cfg.to_json()},
                {"dim", m.dim()},
                {"character", character_json(m)},
                {"certificate_digest", mj.at("digest")},
                {"module", mj},
                {"recipe", recipe}});
}

json report_json(const FdPropReport& r) {
  json failed = json::array();
  std::map<std::string, int> per_part;
  for (const auto& e : r.entries) {
    ++per_part[e.part];
    if (!e.pass) failed.push_back({{"part", e.part}, {"instance", e.instance}});
  }
  return {{"entries", r.entries.size()}, {"failures", r.failures()}, {"per_part", per_part}, {"failed", failed}};
}

/// Loop modules take --lambda/--point for one factor or repeated --factor "w@a".
std::vector<std::pair<Weight, EvalPoint>> loop_factors(const RunConfig& cfg, const std::string& lambda,
                                                       const std::string& point,
                                                       const std::vector<std::string>& factors) {
  const int rank = cfg.root_data()->rank();
  std::vector<std::pair<Weight, EvalPoint>> out;
  if (!lambda.empty() || !point.empty()) {
    if (lambda.empty() || point.empty()) throw UsageError("--lambda and --point go together");
    out.emplace_back(parse_weight(lambda, rank), parse_point(point, cfg.nvars, cfg.field_value()));
  }
  for (const auto& f : factors) {
    const auto parts = split(f, '@');
    if (parts.size() != 2) throw UsageError("factor must look like 2,1@3,5");
    out.emplace_back(parse_weight(parts[0], rank), parse_point(parts[1], cfg.nvars, cfg.field_value()));
  }
  if (out.empty()) throw UsageError("loop modules need --lambda with --point, or --factor");
  return out;
}

Variant variant_from(const std::string& v) {
  if (v == "finite") return Variant::FiniteType;
  if (v == "graded") return Variant::Graded;
  return Variant::Loop;
}

// A recipe records the construction arguments of weyl/evalmod output, so tools
// that need actions beyond the stored tables can rebuild the module exactly.
json weyl_recipe(const Common& c, const std::string& variant, const std::string& lambda, const std::string& point,
                 const std::vector<std::string>& factors, int max_power, int max_height) {
  return {{"command", "weyl"},  {"type", c.type},   {"n", c.n},         {"field", c.field},
          {"variant", variant}, {"lambda", lambda}, {"point", point},   {"factors", factors},
          {"max_power", max_power}, {"max_height", max_height}};
}

json evalmod_recipe(const Common& c, const std::string& lambda, const std::string& point, bool irreducible) {
  return {{"command", "evalmod"}, {"type", c.type},   {"n", c.n},         {"field", c.field},
          {"lambda", lambda},     {"point", point},   {"irreducible", irreducible}};
}

ModulePtr build_from_recipe(const json& r, RunConfig& cfg) {
  Common c;
  c.type = r.at("type").get<std::string>();
  c.n = r.at("n").get<int>();
  c.field = r.at("field").get<std::uint32_t>();
  const std::string lambda = r.at("lambda").get<std::string>(), point = r.at("point").get<std::string>();
  if (r.at("command") == "evalmod") {
    cfg = make_config(c, "loop");
    const RootDataPtr rd = cfg.root_data();
    return evaluation_module(rd, parse_weight(lambda, rd->rank()), parse_point(point, cfg.nvars, cfg.field_value()),
                             r.at("irreducible").get<bool>() ? EvalBase::IrreducibleOfG : EvalBase::WeylOfG,
                             cfg.field_value());
  }
  const std::string variant = r.at("variant").get<std::string>();
  const auto factors = r.at("factors").get<std::vector<std::string>>();
  const int max_power = r.at("max_power").get<int>(), max_height = r.at("max_height").get<int>();
  cfg = make_config(c, variant);
  const RootDataPtr rd = cfg.root_data();
  std::optional<Caps> caps;
  if (max_power >= 0 || max_height >= 0) {
    Weight lam = Weight::zero(rd->rank());
    if (!lambda.empty()) lam = parse_weight(lambda, rd->rank());
    Caps d = Caps::defaults(*rd, lam);
    if (max_power >= 0) d.max_power = max_power;
    if (max_height >= 0) d.max_height = max_height;
    caps = d;
    cfg.caps = {{"max_power", d.max_power}, {"max_height", d.max_height}};
  }
  const Variant v = variant_from(variant);
  if (v == Variant::Loop)
    return construct_weyl_loop(rd, cfg.nvars, loop_factors(cfg, lambda, point, factors), cfg.field_value(), caps);
  if (lambda.empty()) throw UsageError("--lambda is required");
  if (!point.empty() || !factors.empty()) throw UsageError("points only apply to --variant loop");
  return construct_weyl(rd, parse_weight(lambda, rd->rank()), v, cfg.nvars, cfg.field_value(), caps);
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("module file is not valid JSON: ") + e.what());
  }
}

json load_file(const std::string& path) {
  json j = read_json(path);
  // artifacts from weyl/evalmod wrap the module
  if (j.is_object() && j.contains("module")) return j.at("module");
  return j;
}

// Rebuilds from the artifact's recipe when it has one; the rebuilt module must
// carry the digest stored in the file.
ModulePtr load_module_full(const std::string& path) {
  const json j = read_json(path);
  if (!j.is_object() || !j.contains("recipe") || !j.contains("module")) return module_from_json(load_file(path));
  module_from_json(j.at("module"));  // digest and table checks
  RunConfig cfg;
  ModulePtr m = build_from_recipe(j.at("recipe"), cfg);
  if (to_json(*m).at("digest") != j.at("module").at("digest"))
    fail(ErrorCode::InvalidArgument, "module does not match its recipe");
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in hyperalgebras of multicurrent and multiloop algebras"};
  app.require_subcommand(1);
  Common c;

  // straighten
  auto* straighten = app.add_subcommand("straighten", "normal form of an expression");
  std::string expr_text;
  straighten->add_option("expr", expr_text, "expression")->required();
  add_common(straighten, c, true);

  // lambda
  auto* lambda = app.add_subcommand("lambda", "coefficient Lambda_{i,f,r} in the divided-power basis");
  int li = 1, lr = 0;
  std::string lmono;
  lambda->add_option("i", li, "node (1-based)")->required();
  lambda->add_option("mono", lmono, "monomial such as t1*t2^-1")->required();
  lambda->add_option("r", lr, "order")->required();
  add_common(lambda, c, true);

  // garland
  auto* garland = app.add_subcommand("garland", "residual of the Garland identity");
  std::string groot, ga, gb;
  int gr = 1, gs = 1;
  garland->add_option("alpha", groot, "positive root, e.g. a1+a2")->required();
  garland->add_option("r", gr)->required();
  garland->add_option("s", gs)->required();
  garland->add_option("a", ga, "monomial a")->required();
  garland->add_option("b", gb, "monomial b")->required();
  add_common(garland, c, true);

  // weyl
  auto* weyl = app.add_subcommand("weyl", "construct a local Weyl module");
  std::string wvariant = "finite", wlambda, wpoint;
  std::vector<std::string> wfactors;
  int max_power = -1, max_height = -1;
  weyl->add_option("--variant", wvariant)->check(CLI::IsMember({"finite", "graded", "loop"}))->capture_default_str();
  weyl->add_option("--lambda", wlambda, "highest weight, e.g. 2,1");
  weyl->add_option("--point", wpoint, "evaluation point for a single loop factor");
  weyl->add_option("--factor", wfactors, "loop factor weight@point, repeatable");
  weyl->add_option("--max-power", max_power, "divided-power cap");
  weyl->add_option("--max-height", max_height, "exponent cap");
  add_common(weyl, c, false);

  // drinfeld
  auto* drinfeld = app.add_subcommand("drinfeld", "Drinfeld polynomials of a module's cyclic vector");
  std::string module_file;
  int vec = -1;
  drinfeld->add_option("--module", module_file, "module JSON")->required();
  drinfeld->add_option("--vector", vec, "basis index (default: cyclic vector)");
  add_common(drinfeld, c, false);

  // evalmod
  auto* evalmod = app.add_subcommand("evalmod", "evaluation module V(lambda) at a point");
  std::string elambda, epoint;
  bool irreducible = false;
  evalmod->add_option("--lambda", elambda)->required();
  evalmod->add_option("--point", epoint)->required();
  evalmod->add_flag("--irreducible", irreducible, "use the irreducible quotient of the finite Weyl module");
  add_common(evalmod, c, false);

  // verify
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->require_subcommand(1);
  auto* v_ident = verify->add_subcommand("identities", "Lambda power reduction and Garland classification");
  int max_kr = 6, max_s = 3, max_deg = 2;
  v_ident->add_option("--max-kr", max_kr)->capture_default_str();
  v_ident->add_option("--max-s", max_s)->capture_default_str();
  v_ident->add_option("--max-degree", max_deg)->capture_default_str();
  add_common(v_ident, c, false);
  auto* v_int = verify->add_subcommand("integrality", "random products have integral coordinates");
  int samples = 500;
  v_int->add_option("--samples", samples)->capture_default_str();
  v_int->add_option("--seed", c.seed)->capture_default_str();
  add_common(v_int, c, false);
  auto* v_fd = verify->add_subcommand("fdprop", "finite-dimensionality properties at the cyclic vector");
  std::string fd_module, fd_kind = "loop", fd_lambda, fd_point;
  int fd_height = 2;
  v_fd->add_option("--module", fd_module, "module JSON (otherwise built from --lambda/--point)");
  v_fd->add_option("--kind", fd_kind)->check(CLI::IsMember({"loop", "evaluation"}))->capture_default_str();
  v_fd->add_option("--lambda", fd_lambda);
  v_fd->add_option("--point", fd_point);
  v_fd->add_option("--height", fd_height)->capture_default_str();
  add_common(v_fd, c, false);
  auto* v_216 = verify->add_subcommand("prop216", "pullback along t -> t - a satisfies the graded Weyl relations");
  std::string p_lambda, p_point;
  int p_height = 2;
  v_216->add_option("--lambda", p_lambda)->required();
  v_216->add_option("--point", p_point)->required();
  v_216->add_option("--height", p_height)->capture_default_str();
  add_common(v_216, c, false);

  // character
  auto* charcmd = app.add_subcommand("character", "weight multiplicities of a module");
  std::string ch_module;
  charcmd->add_option("--module", ch_module, "module JSON")->required();
  add_common(charcmd, c, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*straighten) {
      const RunConfig cfg = make_config(c, c.context == "loop" ? "loop" : "graded");
      Hyperalgebra alg(cfg.root_data(), cfg.nvars, context_of(c));
      const AlgebraElement x = evaluate(parse_expr(expr_text, cfg.nvars), alg, cfg.field_value());
      emit_json(c, {{"config", cfg.to_json()},
                    {"input", expr_text},
                    {"normal_form", alg.str(x)},
                    {"element", to_json(x, alg.root_data())}});
    } else if (*lambda) {
      const RunConfig cfg = make_config(c, c.context == "loop" ? "loop" : "graded");
      Hyperalgebra alg(cfg.root_data(), cfg.nvars, context_of(c));
      if (li < 1 || li > alg.root_data().rank()) throw UsageError("node out of range");
      if (lr < 0) throw UsageError("order must be >= 0");
      const MultiExp f = parse_mono(lmono, cfg.nvars);
      if (f.is_one()) fail(ErrorCode::InvalidArgument, "Lambda needs a nonconstant monomial");
      const OrdElem e = alg.lambda_expand(li - 1, f, lr);
      const AlgebraElement x = alg.to_field(alg.from_ord(e), cfg.field_value());
      emit_json(c, {{"config", cfg.to_json()},
                    {"i", li},
                    {"mono", f.str()},
                    {"r", lr},
                    {"result", alg.str(x)},
                    {"ordinary", alg.engine().str(e)},
                    {"element", to_json(x, alg.root_data())}});
    } else if (*garland) {
      const RunConfig cfg = make_config(c, c.context == "loop" ? "loop" : "graded");
      Hyperalgebra alg(cfg.root_data(), cfg.nvars, context_of(c));
      int root = -1;
      for (int b = 0; b < alg.root_data().num_positive_roots(); ++b)
        if (alg.root_data().root_name(b) == groot) root = b;
      if (root < 0) throw UsageError("unknown positive root '" + groot + "'");
      const GarlandResult g =
          alg.garland_residual(root, gr, gs, parse_mono(ga, cfg.nvars), parse_mono(gb, cfg.nvars));
      json j = {{"config", cfg.to_json()},
                {"alpha", groot},
                {"r", gr},
                {"s", gs},
                {"a", ga},
                {"b", gb},
                {"residual", alg.str(g.residual)},
                {"in_raise_ideal", g.in_raise_ideal},
                {"classification", g.classification},
                {"passes", g.passes}};
      if (g.current_applicable) j["residual_current"] = alg.str(g.residual_current);
      emit_json(c, j);
    } else if (*weyl) {
      const json recipe = weyl_recipe(c, wvariant, wlambda, wpoint, wfactors, max_power, max_height);
      RunConfig cfg;
      const ModulePtr m = build_from_recipe(recipe, cfg);
      cfg.format = c.format;
      emit_module(c, cfg, *m, recipe);
    } else if (*drinfeld) {
      const ModulePtr m = module_from_json(load_file(module_file));
      const RunConfig cfg = make_config(Common{m->rd->name(), m->nvars, m->field.p, "loop", c.format, c.out, 0},
                                        variant_name(m->variant));
      const int v = vec >= 0 ? vec : m->cyclic_vector;
      emit_json(c, {{"config", cfg.to_json()},
                    {"module_digest", to_json(*m).at("digest")},
                    {"vector", v},
                    {"drinfeld", lweight_json(extract_drinfeld(*m, v))}});
    } else if (*evalmod) {
      const json recipe = evalmod_recipe(c, elambda, epoint, irreducible);
      RunConfig cfg;
      const ModulePtr m = build_from_recipe(recipe, cfg);
      cfg.format = c.format;
      emit_module(c, cfg, *m, recipe);
    } else if (*v_ident) {
      const RunConfig cfg = make_config(c, "loop");
      const SuiteReport a = power_reduce_suite(max_kr), b = garland_suite(max_s, max_deg);
      emit_json(c, {{"config", cfg.to_json()},
                    {"suites", {a.to_json(), b.to_json()}},
                    {"failures", a.failures + b.failures}});
      return (a.all_pass() && b.all_pass()) ? 0 : 1;
    } else if (*v_int) {
      const RunConfig cfg = make_config(c, "loop");
      const SuiteReport r = integrality_suite(c.seed, samples);
      emit_json(c, {{"config", cfg.to_json()}, {"report", r.to_json()}, {"failures", r.failures}});
      return r.all_pass() ? 0 : 1;
    } else if (*v_fd) {
      ModulePtr m;
      RunConfig cfg;
      if (!fd_module.empty()) {
        m = load_module_full(fd_module);
        cfg = make_config(Common{m->rd->name(), m->nvars, m->field.p, "loop", c.format, c.out, 0}, "loop");
      } else {
        cfg = make_config(c, "loop");
        const auto factors = loop_factors(cfg, fd_lambda, fd_point, {});
        if (fd_kind == "evaluation")
          m = evaluation_module(cfg.root_data(), factors[0].first, factors[0].second, EvalBase::WeylOfG,
                                cfg.field_value());
        else
          m = construct_weyl_loop(cfg.root_data(), cfg.nvars, factors, cfg.field_value());
      }
      const FdPropReport r = verify_fdprop(*m, m->cyclic_vector, fd_height);
      emit_json(c, {{"config", cfg.to_json()},
                    {"module_digest", to_json(*m).at("digest")},
                    {"report", report_json(r)}});
      return r.all_pass() ? 0 : 1;
    } else if (*v_216) {
      const RunConfig cfg = make_config(c, "graded");
      const RootDataPtr rd = cfg.root_data();
      const Weight lam = parse_weight(p_lambda, rd->rank());
      const EvalPoint a = parse_point(p_point, cfg.nvars, cfg.field_value());
      const ModulePtr loop = construct_weyl_loop(rd, cfg.nvars, {{lam, a}}, cfg.field_value());
      const ModulePtr pb = pullback_phi(loop, a);
      const GradedRelationReport r = check_graded_weyl_relations(*pb, pb->cyclic_vector, p_height);
      const ModulePtr graded = construct_weyl(rd, lam, Variant::Graded, cfg.nvars, cfg.field_value());
      json failed = json::array();
      for (const auto& e : r.entries)
        if (!e.pass) failed.push_back({{"part", e.part}, {"instance", e.instance}});
      const bool ok = r.all_pass() && pb->dim() <= graded->dim();
      emit_json(c, {{"config", cfg.to_json()},
                    {"relations_checked", r.entries.size()},
                    {"failed", failed},
                    {"pullback_dim", pb->dim()},
                    {"cyclic_dim", r.cyclic_dim},
                    {"graded_weyl_dim", graded->dim()},
                    {"pass", ok}});
      return ok ? 0 : 1;
    } else if (*charcmd) {
      const ModulePtr m = module_from_json(load_file(ch_module));
      const RunConfig cfg = make_config(Common{m->rd->name(), m->nvars, m->field.p, "loop", c.format, c.out, 0},
                                        variant_name(m->variant));
      if (c.format == "csv")
        emit(c, m->degrees ? graded_character_csv(graded_character(*m)) : character_csv(character(*m)));
      else
        emit_json(c, {{"config", cfg.to_json()},
                      {"module_digest", to_json(*m).at("digest")},
                      {"dim", m->dim()},
                      {"character", character_json(*m)}});
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(error_code_name(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << json{{"error", "InvalidArgument"}, {"message", e.what()}}.dump() << "\n";
    return 1;
  }
  return 0;
}
