#include "hyper/suites.hpp"

#include <functional>
#include <random>
#include <tuple>

namespace hyper {

void SuiteReport::add(SuiteCase c) {
  ++total;
  if (!c.pass) ++failures;
  cases.push_back(std::move(c));
}

json SuiteReport::to_json() const {
  json failed = json::array();
  for (const auto& c : cases)
    if (!c.pass) failed.push_back({{"case", c.name}, {"detail", c.detail}});
  std::string names;
  for (const auto& c : cases) names += c.name + (c.pass ? "+" : "-") + "\n";
  return {{"suite", suite},
          {"total", total},
          {"failures", failures},
          {"failed", failed},
          {"cases_digest", fnv1a_hex(names)}};
}

namespace {

std::vector<MultiExp> monos_up_to(int n, int degree, bool laurent) {
  std::vector<MultiExp> out;
  MultiExp m(n);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == n) {
      out.push_back(m);
      return;
    }
    for (int e = laurent ? -left : 0; e <= left; ++e) {
      m[j] = static_cast<std::int16_t>(e);
      rec(j + 1, left - std::abs(e));
    }
    m[j] = 0;
  };
  rec(0, degree);
  return out;
}

std::string catch_code(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return std::string(error_code_name(e.code())) + ": " + e.what();
  }
  return {};
}

}  // namespace

SuiteReport power_reduce_suite(int max_kr) {
  SuiteReport rep;
  rep.suite = "power_reduce";
  for (int rank : {1, 2}) {
    Hyperalgebra alg(RootData::build('A', rank), 2, Context::Loop);
    for (const MultiExp& f : {MultiExp{1, 0}, MultiExp{1, 1}})
      for (int i = 0; i < rank; ++i)
        for (int k = 1; k <= max_kr; ++k)
          for (int r = 1; k * r <= max_kr; ++r) {
            SuiteCase c;
            c.name = "A" + std::to_string(rank) + " i=" + std::to_string(i + 1) + " f=" + f.str() +
                     " k=" + std::to_string(k) + " r=" + std::to_string(r);
            c.detail = catch_code([&] {
              const auto poly = alg.lambda_power_reduce(i, f, k, r);
              c.pass = alg.expand_lambda_products(i, f, poly) == alg.lambda_expand(i, f.scaled(k), r);
            });
            if (!c.pass && c.detail.empty()) c.detail = "expansions differ";
            rep.add(std::move(c));
          }
  }
  return rep;
}

SuiteReport garland_suite(int max_s, int max_degree) {
  SuiteReport rep;
  rep.suite = "garland";
  for (int rank : {1, 2})
    for (Context ctx : {Context::Loop, Context::Current}) {
      Hyperalgebra alg(RootData::build('A', rank), 2, ctx);
      const auto monos = monos_up_to(2, max_degree, ctx == Context::Loop);
      for (int root = 0; root < alg.root_data().num_positive_roots(); ++root)
        for (int s = 1; s <= max_s; ++s)
          for (int r = 1; r <= s; ++r)
            for (const auto& a : monos)
              for (const auto& b : monos) {
                SuiteCase c;
                c.name = "A" + std::to_string(rank) + (ctx == Context::Loop ? " loop" : " current") +
                         " root=" + alg.root_data().root_name(root) + " r=" + std::to_string(r) +
                         " s=" + std::to_string(s) + " a=" + a.str() + " b=" + b.str();
                c.detail = catch_code([&] {
                  const GarlandResult g = alg.garland_residual(root, r, s, a, b);
                  c.pass = g.passes;
                  if (!g.passes) c.detail = g.classification;
                });
                rep.add(std::move(c));
              }
    }
  return rep;
}

SuiteReport integrality_suite(std::uint64_t seed, int samples) {
  SuiteReport rep;
  rep.suite = "integrality";
  std::mt19937_64 rng(seed);
  auto pick = [&](int n) { return static_cast<int>(rng() % static_cast<std::uint64_t>(n)); };
  std::map<std::tuple<int, int, Context>, std::unique_ptr<Hyperalgebra>> algebras;
  for (int t = 0; t < samples; ++t) {
    const int rank = 1 + pick(2), n = 1 + pick(2);
    const Context ctx = pick(2) ? Context::Loop : Context::Current;
    auto& slot = algebras[{rank, n, ctx}];
    if (!slot) slot = std::make_unique<Hyperalgebra>(RootData::build('A', rank), n, ctx);
    Hyperalgebra& alg = *slot;
    const int lo = ctx == Context::Loop ? -2 : 0;
    auto mono = [&] {
      MultiExp s(n);
      for (int j = 0; j < n; ++j) s[j] = static_cast<std::int16_t>(lo + pick(3 - lo));
      return s;
    };
    std::vector<Generator> word;
    const int len = 1 + pick(4);
    for (int w = 0; w < len; ++w) {
      const int k = 1 + pick(3);
      switch (pick(4)) {
        case 0: word.push_back(Generator::lower(pick(alg.root_data().num_positive_roots()), mono(), k)); break;
        case 1: word.push_back(Generator::raise(pick(alg.root_data().num_positive_roots()), mono(), k)); break;
        case 2: word.push_back(Generator::binom(pick(rank), n, k)); break;
        default: {
          MultiExp c = mono();
          if (c.is_one()) c[pick(n)] = 1;
          word.push_back(Generator::lambda(pick(rank), c, k));
        }
      }
    }
    SuiteCase c;
    c.name = "#" + std::to_string(t) + " A" + std::to_string(rank) + " n=" + std::to_string(n) +
             (ctx == Context::Loop ? " loop " : " current ") + alg.str(PBWMonomial{word});
    c.detail = catch_code([&] {
      alg.integral_coordinates(alg.pbw_normal_form(word, Field::rationals()));
      c.pass = true;
    });
    rep.add(std::move(c));
  }
  return rep;
}

}  // namespace hyper
