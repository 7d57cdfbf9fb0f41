// Number-theoretic utilities: p-parts, primitive prime divisors, orders of
// classical groups and their standard bounds, r-parts of |GL_n(q)|.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "facta/errors.hpp"

namespace facta::arith {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Deterministic primality test (Miller-Rabin with a base set valid below
// 2^64, trial division above).
bool is_prime(const Integer& n);
bool is_prime(uint64_t n);

// Writes n = p^f with p prime, or returns nullopt if n is not a prime power.
std::optional<std::pair<uint64_t, uint32_t>> prime_power(uint64_t n);

// n_p, the largest power of p dividing n.  p must be prime, n >= 1.
Integer p_part(const Integer& n, uint64_t p);
// n_{p'} = n / n_p.
Integer p_coprime_part(const Integer& n, uint64_t p);

// Prime factorization by trial division; returns (prime, exponent) pairs in
// increasing prime order.
std::vector<std::pair<Integer, uint32_t>> factorize(Integer n);

enum class PpdException { None, MersenneK2, TwoSix, Convention63 };

struct PpdResult {
  uint64_t q = 0;
  uint32_t k = 0;
  std::vector<uint64_t> primes;  // sorted
  PpdException exception = PpdException::None;
};

// The primitive prime divisors of (q, k): primes r dividing q^k - 1 but no
// q^j - 1 with j < k.  With use_convention63 (the default), (q,k) = (2,6)
// reports {7} tagged Convention63; with it disabled the set is empty and the
// exception tag is TwoSix.  k = 2 with q + 1 a power of 2 yields the empty
// set tagged MersenneK2.
PpdResult ppd(uint64_t q, uint32_t k, bool use_convention63 = true);

// Whether n is divisible by every prime in the set.
bool divisible_by_all(const Integer& n, const PpdResult& ppd);

enum class Family {
  GL, SL, PSL, GU, SU, PSU, Sp, PSp,
  OmegaOdd, OmegaPlus, OmegaMinus, POmegaPlus, POmegaMinus,
  GOPlus, GOMinus,
};

std::string family_name(Family f);

struct ClassicalOrder {
  Family family;
  uint32_t n_or_2m = 0;  // the matrix dimension (2m for symplectic/orthogonal)
  uint64_t q = 0;
  Integer order;
};

// Exact order of the classical group, with validity checks on the parameter
// range (e.g. Sp needs even dimension >= 2, OmegaOdd odd q).
ClassicalOrder classical_order(Family family, uint32_t n_or_2m, uint64_t q);

// Size of the scalar kernel |Z| with PSL = SL/Z etc.
Integer projective_kernel(Family family, uint32_t n_or_2m, uint64_t q);

// Checks the standard simple-group order bounds for the projective families
// (PSL: q^{n^2-2} < |L| < q^{n^2-1}, and the analogous rows for PSU, PSp,
// Omega_{2m+1}, POmega^eps).  Returns true when the family/dimension pair is
// inside the validity range and the bounds hold; throws argument_error when
// called outside the validity range.
bool check_order_bounds(Family family, uint32_t n_or_2m, uint64_t q);
// Whether the bound table covers this parameter combination at all.
bool order_bounds_applicable(Family family, uint32_t n_or_2m, uint64_t q);

// |GL_n(q)|_r for a prime r not dividing q, computed by the multiplicative
// case split (r | q-1 with r^(2,r) | q-1; r = 2 with q = 3 mod 4 via the
// halving recursion; otherwise through the least j with r | q^j - 1).
Integer gl_r_part(uint32_t n, uint64_t q, uint64_t r);

// The exponent c(k): 1/2 for k <= 9, 1 - 2/(k-2) for k >= 10.
Rational c_of_k(uint32_t k);

}  // namespace facta::arith
