#pragma once

#include "tverberg/model.hpp"

#include <json.hpp>

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace tverberg {

using Json = nlohmann::ordered_json;

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what_) : std::runtime_error(what_) {}
};

// Deterministic RNG: identical streams for identical seeds on every platform.
// std::mt19937_64 output is pinned by the standard; the distributions here
// are hand-rolled because the standard ones are not.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  long uniform(long lo, long hi);  // inclusive bounds

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i)
      std::swap(v[i - 1], v[static_cast<std::size_t>(uniform(0, static_cast<long>(i) - 1))]);
  }

 private:
  std::mt19937_64 engine_;
};

struct GenParams {
  int d = 2;
  int r = 3;
  std::string profile = "special";  // special | singletons | random | bl
  std::uint64_t seed = 0;
  long bound = 100;               // integer coordinates in [-bound, bound]
  bool general_position = false;  // rejection-sample until no d+1 points are dependent
};

// Seeded instance generator. bl is the 3-classes-of-size-r planar profile and
// always enforces general position.
Instance generate_instance(const GenParams& params);

Json instance_to_json(const Instance& instance, const Json& metadata = Json());
Instance instance_from_json(const Json& doc);
Json witness_to_json(const TverbergWitness& witness);
TverbergWitness witness_from_json(const Json& doc);

std::string serialize_instance(const Instance& instance, const Json& metadata = Json());
Instance parse_instance(const std::string& text);
std::string serialize_witness(const TverbergWitness& witness);
TverbergWitness parse_witness(const std::string& text);

}  // namespace tverberg
