// Resource caps and knobs shared by the verification pipeline.  Every cap
// violation raises resource_error naming the cap and the attempted size.
#pragma once

#include <cstdint>
#include <thread>

namespace facta {

struct Config {
  uint64_t coset_index_cap = 20'000'000;     // max index for coset enumerations
  uint64_t backtrack_node_cap = 50'000'000;  // nodes in set-stabilizer / intersection searches
  uint64_t orbit_cap = 1'000'000;            // point-orbit enumerations (matrix actions)
  uint64_t tuple_orbit_cap = 20'000'000;     // s-arc orbit enumerations
  uint64_t conjugation_orbit_cap = 100'000;  // subgroup conjugation orbits
  uint64_t element_enumeration_cap = 1'000'000;  // full element lists (Cayley graphs)
  uint64_t coset_memory_budget = 512ull << 20;   // bytes for coset representative tables
  unsigned parallelism = std::thread::hardware_concurrency();

  static const Config& standard() {
    static const Config c{};
    return c;
  }
};

}  // namespace facta
