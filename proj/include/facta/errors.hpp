// Error types shared by all facta modules.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace facta {

// Bad input: wrong parameter, malformed spec, unsupported combination.
class argument_error : public std::runtime_error {
public:
  explicit argument_error(const std::string& what) : std::runtime_error(what) {}
};

// A stated precondition does not hold (e.g. intransitive group where a
// transitive one is required).
class precondition_error : public std::runtime_error {
public:
  explicit precondition_error(const std::string& what) : std::runtime_error(what) {}
};

// A subgroup relation that was assumed fails (H not contained in G).
class containment_error : public std::runtime_error {
public:
  explicit containment_error(const std::string& what) : std::runtime_error(what) {}
};

// A configured cap was exceeded.  Always names the cap and the attempted size
// so that near-feasibility failures are diagnosable rather than silent.
class resource_error : public std::runtime_error {
public:
  resource_error(const std::string& cap_name, uint64_t cap, const std::string& attempted)
      : std::runtime_error("resource cap '" + cap_name + "' (" + std::to_string(cap) +
                           ") exceeded; attempted " + attempted),
        cap_name_(cap_name) {}
  const std::string& cap_name() const { return cap_name_; }

private:
  std::string cap_name_;
};

// A checksum or other integrity guard failed; signals wrong shipped data.
class integrity_error : public std::runtime_error {
public:
  explicit integrity_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace facta
