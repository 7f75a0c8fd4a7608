#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hyper/json_io.hpp"

namespace hyper {

struct SuiteCase {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string suite;
  long total = 0;
  long failures = 0;
  std::vector<SuiteCase> cases;  // every case, in generation order

  void add(SuiteCase c);
  bool all_pass() const { return failures == 0; }
  json to_json() const;
};

/// lambda_power_reduce(i, f, k, r) expanded back equals lambda_expand(i, f^k, r),
/// for every node of A1 and A2, f in {t1, t1*t2}, k*r <= max_kr.
SuiteReport power_reduce_suite(int max_kr);

/// Garland classification for every positive root of A1 and A2, 1 <= r <= s <= max_s,
/// monomials a, b in two variables with sum |a_j| <= max_degree, Loop and Current.
SuiteReport garland_suite(int max_s, int max_degree);

/// Seeded random products of at most four divided-power generators (A1/A2, n <= 2,
/// k <= 3, exponent height <= 2), each checked for integral coordinates.
SuiteReport integrality_suite(std::uint64_t seed, int samples);

}  // namespace hyper
