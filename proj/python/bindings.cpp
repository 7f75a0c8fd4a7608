// Python extension: structured results cross the boundary as canonical JSON text.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "hyper/expr.hpp"
#include "hyper/json_io.hpp"
#include "hyper/suites.hpp"

namespace py = pybind11;
using namespace hyper;

namespace {

RootDataPtr root_data(const std::string& type) {
  if (type.size() < 2) fail(ErrorCode::InvalidArgument, "type must look like A2");
  int rank = 0;
  try {
    rank = std::stoi(type.substr(1));
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "bad type '" + type + "'");
  }
  return RootData::build(type[0], rank);
}

Field field_of(std::uint32_t p) { return p == 0 ? Field::rationals() : Field::prime(p); }

Context context_of(const std::string& c) {
  if (c == "loop") return Context::Loop;
  if (c == "current") return Context::Current;
  fail(ErrorCode::InvalidArgument, "context must be 'current' or 'loop'");
}

Weight weight_of(const std::vector<int>& w, const RootData& rd) {
  if (static_cast<int>(w.size()) != rd.rank()) fail(ErrorCode::InvalidArgument, "weight has the wrong length");
  return Weight(w);
}

// Coordinates may be ints or strings such as "3/2".
EvalPoint point_of(const std::vector<std::string>& a, int n, Field f) {
  if (static_cast<int>(a.size()) != n) fail(ErrorCode::InvalidArgument, "point needs one coordinate per variable");
  EvalPoint p;
  for (const auto& x : a) {
    mpq_class q;
    if (q.set_str(x, 10) != 0 || q.get_den() == 0) fail(ErrorCode::InvalidArgument, "bad coordinate '" + x + "'");
    q.canonicalize();
    p.a.push_back(to_field(q, f));
  }
  return p;
}

py::dict character_dict(const std::map<Weight, long>& ch) {
  py::dict d;
  for (const auto& [w, k] : ch) d[py::tuple(py::cast(w.coords))] = k;
  return d;
}

struct PyModule {
  ModulePtr m;

  int dim() const { return m->dim(); }
  std::string kind() const { return m->kind; }
  std::string variant() const { return variant_name(m->variant); }
  std::string to_json_text() const { return canonical_dump(to_json(*m)); }
  std::string digest() const { return to_json(*m).at("digest").get<std::string>(); }
  py::dict character_map() const { return character_dict(character(*m)); }
  std::string drinfeld(int v) const { return extract_drinfeld(*m, v < 0 ? m->cyclic_vector : v).str(); }
  std::string fdprop(int height) const {
    const FdPropReport r = verify_fdprop(*m, m->cyclic_vector, height);
    json failed = json::array();
    for (const auto& e : r.entries)
      if (!e.pass) failed.push_back({{"part", e.part}, {"instance", e.instance}});
    return canonical_dump({{"entries", r.entries.size()}, {"failures", r.failures()}, {"failed", failed}});
  }
};

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "Exact computations in hyperalgebras of multicurrent and multiloop algebras";

  static py::exception<Error> hyper_error(mod, "HyperError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::tuple args = py::make_tuple(std::string(error_code_name(e.code())), std::string(e.what()));
      PyErr_SetObject(hyper_error.ptr(), args.ptr());
    }
  });

  mod.def(
      "straighten",
      [](const std::string& expr, const std::string& type, int n, const std::string& context, std::uint32_t p) {
        Hyperalgebra alg(root_data(type), n, context_of(context));
        const AlgebraElement x = evaluate(parse_expr(expr, n), alg, field_of(p));
        return canonical_dump({{"normal_form", alg.str(x)}, {"element", to_json(x, alg.root_data())}});
      },
      py::arg("expr"), py::arg("type") = "A1", py::arg("n") = 1, py::arg("context") = "loop", py::arg("field") = 0);

  mod.def(
      "lambda_expand",
      [](int i, const std::string& mono, int r, const std::string& type, int n, const std::string& context,
         std::uint32_t p) {
        Hyperalgebra alg(root_data(type), n, context_of(context));
        if (i < 1 || i > alg.root_data().rank()) fail(ErrorCode::InvalidArgument, "node out of range");
        const MultiExp f = parse_mono(mono, n);
        if (f.is_one()) fail(ErrorCode::InvalidArgument, "Lambda needs a nonconstant monomial");
        return alg.str(alg.to_field(alg.from_ord(alg.lambda_expand(i - 1, f, r)), field_of(p)));
      },
      py::arg("i"), py::arg("mono"), py::arg("r"), py::arg("type") = "A1", py::arg("n") = 1,
      py::arg("context") = "loop", py::arg("field") = 0);

  mod.def(
      "garland",
      [](const std::string& root, int r, int s, const std::string& a, const std::string& b, const std::string& type,
         int n, const std::string& context) {
        Hyperalgebra alg(root_data(type), n, context_of(context));
        int idx = -1;
        for (int k = 0; k < alg.root_data().num_positive_roots(); ++k)
          if (alg.root_data().root_name(k) == root) idx = k;
        if (idx < 0) fail(ErrorCode::InvalidArgument, "unknown positive root '" + root + "'");
        const GarlandResult g = alg.garland_residual(idx, r, s, parse_mono(a, n), parse_mono(b, n));
        return canonical_dump({{"residual", alg.str(g.residual)},
                               {"in_raise_ideal", g.in_raise_ideal},
                               {"classification", g.classification},
                               {"passes", g.passes}});
      },
      py::arg("root"), py::arg("r"), py::arg("s"), py::arg("a"), py::arg("b"), py::arg("type") = "A1",
      py::arg("n") = 1, py::arg("context") = "loop");

  mod.def(
      "weyl_character",
      [](const std::string& type, const std::vector<int>& lam) {
        const auto rd = root_data(type);
        return character_dict(weyl_character(*rd, weight_of(lam, *rd)));
      },
      py::arg("type"), py::arg("lam"));

  mod.def(
      "suite",
      [](const std::string& name, std::uint64_t seed, int size) {
        SuiteReport r;
        if (name == "power_reduce")
          r = power_reduce_suite(size);
        else if (name == "garland")
          r = garland_suite(size, 2);
        else if (name == "integrality")
          r = integrality_suite(seed, size);
        else
          fail(ErrorCode::InvalidArgument, "unknown suite '" + name + "'");
        return canonical_dump(r.to_json());
      },
      py::arg("name"), py::arg("seed") = 0, py::arg("size") = 6);

  py::class_<PyModule>(mod, "Module")
      .def_property_readonly("dim", &PyModule::dim)
      .def_property_readonly("kind", &PyModule::kind)
      .def_property_readonly("variant", &PyModule::variant)
      .def_property_readonly("digest", &PyModule::digest)
      .def("character", &PyModule::character_map)
      .def("to_json", &PyModule::to_json_text)
      .def("drinfeld", &PyModule::drinfeld, py::arg("vector") = -1)
      .def("verify_fdprop", &PyModule::fdprop, py::arg("height") = 2,
           py::call_guard<py::gil_scoped_release>());

  mod.def(
      "weyl_module",
      [](const std::string& type, const std::vector<int>& lam, const std::string& variant, int n, std::uint32_t p) {
        const auto rd = root_data(type);
        Variant v;
        if (variant == "finite")
          v = Variant::FiniteType;
        else if (variant == "graded")
          v = Variant::Graded;
        else
          fail(ErrorCode::InvalidArgument, "variant must be 'finite' or 'graded'; use loop_weyl_module for loops");
        return PyModule{construct_weyl(rd, weight_of(lam, *rd), v, n, field_of(p))};
      },
      py::arg("type"), py::arg("lam"), py::arg("variant") = "finite", py::arg("n") = 1, py::arg("field") = 0,
      py::call_guard<py::gil_scoped_release>());

  mod.def(
      "loop_weyl_module",
      [](const std::string& type, int n,
         const std::vector<std::pair<std::vector<int>, std::vector<std::string>>>& factors, std::uint32_t p) {
        const auto rd = root_data(type);
        std::vector<std::pair<Weight, EvalPoint>> fs;
        for (const auto& [w, a] : factors) fs.emplace_back(weight_of(w, *rd), point_of(a, n, field_of(p)));
        return PyModule{construct_weyl_loop(rd, n, fs, field_of(p))};
      },
      py::arg("type"), py::arg("n"), py::arg("factors"), py::arg("field") = 0);

  mod.def(
      "evaluation_module",
      [](const std::string& type, const std::vector<int>& lam, const std::vector<std::string>& a, std::uint32_t p,
         bool irreducible) {
        const auto rd = root_data(type);
        const Field f = field_of(p);
        return PyModule{evaluation_module(rd, weight_of(lam, *rd), point_of(a, static_cast<int>(a.size()), f),
                                          irreducible ? EvalBase::IrreducibleOfG : EvalBase::WeylOfG, f)};
      },
      py::arg("type"), py::arg("lam"), py::arg("point"), py::arg("field") = 0, py::arg("irreducible") = false);

  mod.def(
      "module_from_json", [](const std::string& text) { return PyModule{module_from_json(json::parse(text))}; },
      py::arg("text"));
}
