#pragma once
// Reference computations shared by the unit and acceptance tests. Nothing here
// calls into the straightening code.

#include <algorithm>
#include <map>
#include <vector>

#include "hyper/lie.hpp"
#include "hyper/root_data.hpp"

namespace oracle {

using hyper::MultiExp;
using hyper::OrdElem;

// Polynomial in commuting X_1..X_r; key = exponent vector.
using Poly = std::map<std::vector<int>, mpq_class>;

inline Poly poly_mul(const Poly& a, const Poly& b, int r) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      std::vector<int> e(ea);
      int deg = 0;
      for (int s = 0; s < r; ++s) {
        e[s] += eb[s];
        deg += (s + 1) * e[s];
      }
      if (deg > r) continue;  // beyond u^r
      out[e] += ca * cb;
    }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

/// Coefficient of u^r in exp(-sum_{s>=1} (h_i (x) f^s) u^s / s), by summing S^k/k!.
inline OrdElem exp_series_lambda(const hyper::RootData& rd, int i, const MultiExp& f, int r) {
  const std::vector<int> zero(r > 0 ? r : 1, 0);
  Poly S;
  for (int s = 1; s <= r; ++s) {
    std::vector<int> e(zero);
    e[s - 1] = 1;
    S[e] = mpq_class(-1, s);
  }
  Poly total{{zero, 1}}, power{{zero, 1}};
  mpq_class fact = 1;
  for (int k = 1; k <= r; ++k) {
    power = poly_mul(power, S, r);
    fact *= k;
    for (const auto& [e, c] : power) total[e] += c / fact;
  }
  OrdElem out;
  for (const auto& [e, c] : total) {
    int deg = 0;
    for (int s = 0; s < r; ++s) deg += (s + 1) * e[s];
    if (deg != r || c == 0) continue;
    hyper::OrdMono m;
    for (int s = 0; s < r; ++s)
      if (e[s]) m.push_back({hyper::LieKey{rd.cartan_index(i), f.scaled(s + 1)}, e[s]});
    std::sort(m.begin(), m.end());
    out[m] += c;
  }
  if (r == 0) out = OrdElem{{hyper::OrdMono{}, 1}};
  return out;
}

/// sl2 character of highest weight m.
inline std::map<hyper::Weight, long> a1_character(int m) {
  std::map<hyper::Weight, long> ch;
  for (int k = m; k >= -m; k -= 2) ch[hyper::Weight({k})] = 1;
  return ch;
}

/// sl3 character of highest weight (a, b) by counting Gelfand-Tsetlin patterns.
inline std::map<hyper::Weight, long> a2_character(int a, int b) {
  const int m1 = a + b, m2 = b, m3 = 0;
  std::map<hyper::Weight, long> ch;
  for (int p1 = m2; p1 <= m1; ++p1)
    for (int p2 = m3; p2 <= m2; ++p2)
      for (int q = p2; q <= p1; ++q) {
        const int w1 = q, w2 = p1 + p2 - q, w3 = m1 + m2 + m3 - p1 - p2;
        ++ch[hyper::Weight({w1 - w2, w2 - w3})];
      }
  return ch;
}

}  // namespace oracle
