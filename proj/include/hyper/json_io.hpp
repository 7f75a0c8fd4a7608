#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "hyper/modules.hpp"

namespace hyper {

using json = nlohmann::json;

/// 64-bit FNV-1a, lowercase hex.
std::string fnv1a_hex(std::string_view bytes);
/// Two-space indented dump with sorted keys; the form every digest is taken over.
std::string canonical_dump(const json& j);

json to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json to_json(const MultiExp& m);
MultiExp mono_from_json(const json& j);
json to_json(const Weight& w);

json to_json(const Generator& g, const RootData& rd);
Generator generator_from_json(const json& j, const RootData& rd, int nvars);
json to_json(const AlgebraElement& x, const RootData& rd);
AlgebraElement element_from_json(const json& j, const RootData& rd, int nvars);

/// Generators written with a module: the exported set plus what extract_drinfeld
/// and the highest-weight test need on reload.
std::vector<Generator> serialization_set(const ModuleRep& m);
/// Module with its certificate, action matrices and a digest of the rest.
json to_json(const ModuleRep& m);
/// Rebuilds a module from its JSON form; actions outside the stored set raise InvalidArgument.
ModulePtr module_from_json(const json& j);

/// CSV rows "w1,...,wl,multiplicity" sorted by weight.
std::string character_csv(const std::map<Weight, long>& ch);
/// CSV rows "w1,...,wl,d1,...,dn,multiplicity".
std::string graded_character_csv(const std::map<std::pair<Weight, MultiExp>, long>& ch);

struct RunConfig {
  std::string type = "A1";  // letter and rank
  int nvars = 1;
  std::string variant = "finite";
  std::uint32_t field = 0;  // 0 for Q, else a prime
  std::map<std::string, int> caps;  // truncation orders and degree caps by name
  std::string format = "json";
  std::uint64_t seed = 0;

  /// Throws InvalidArgument on an inconsistent configuration.
  void validate() const;
  Field field_value() const;
  RootDataPtr root_data() const;
  json to_json() const;
};

}  // namespace hyper
