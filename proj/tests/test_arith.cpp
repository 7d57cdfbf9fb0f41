#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "facta/arith.hpp"

using namespace facta;
using namespace facta::arith;

namespace {

// Independent oracle: all primitive prime divisors of (q, k) by full trial
// factorization of q^k - 1 and direct divisibility of the smaller q^j - 1.
std::vector<uint64_t> ppd_brute(uint64_t q, uint32_t k) {
  Integer n = 1;
  for (uint32_t i = 0; i < k; ++i) n *= q;
  n -= 1;
  std::vector<uint64_t> primes;
  Integer m = n;
  for (Integer d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      primes.push_back(d.convert_to<uint64_t>());
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) primes.push_back(m.convert_to<uint64_t>());

  std::vector<uint64_t> out;
  for (uint64_t r : primes) {
    bool primitive = true;
    for (uint32_t j = 1; j < k && primitive; ++j) {
      // q^j mod r by modular exponentiation
      uint64_t v = 1, base = q % r;
      for (uint32_t t = 0; t < j; ++t) v = (unsigned __int128)v * base % r;
      if (v == 1) primitive = false;
    }
    if (primitive) out.push_back(r);
  }
  return out;
}

}  // namespace

TEST_CASE("primality and prime powers") {
  CHECK(is_prime(uint64_t(2)));
  CHECK(is_prime(uint64_t(23)));
  CHECK(!is_prime(uint64_t(1)));
  CHECK(!is_prime(uint64_t(63)));
  CHECK(is_prime(uint64_t(2147483647)));  // 2^31 - 1
  CHECK(prime_power(64) == std::make_pair(uint64_t(2), uint32_t(6)));
  CHECK(prime_power(121) == std::make_pair(uint64_t(11), uint32_t(2)));
  CHECK(!prime_power(12));
}

TEST_CASE("p_part examples") {
  CHECK(p_part(48, 2) == 16);
  CHECK(p_part(15, 2) == 1);
  CHECK(p_part(1451520, 2) == 512);
  CHECK(p_coprime_part(48, 2) == 3);
  CHECK_THROWS_AS(p_part(10, 4), argument_error);
  CHECK_THROWS_AS(p_part(0, 2), argument_error);
}

TEST_CASE("ppd paper examples") {
  auto r1 = ppd(2, 4);
  CHECK(r1.primes == std::vector<uint64_t>{5});
  CHECK(r1.exception == PpdException::None);

  auto r2 = ppd(2, 6);
  CHECK(r2.primes == std::vector<uint64_t>{7});
  CHECK(r2.exception == PpdException::Convention63);

  auto r3 = ppd(2, 6, false);
  CHECK(r3.primes.empty());
  CHECK(r3.exception == PpdException::TwoSix);

  auto r4 = ppd(3, 2);
  CHECK(r4.primes.empty());
  CHECK(r4.exception == PpdException::MersenneK2);

  CHECK_THROWS_AS(ppd(6, 2), argument_error);
  CHECK(divisible_by_all(35, ppd(2, 4)));
  CHECK(!divisible_by_all(36, ppd(2, 4)));
}

TEST_CASE("ppd against brute force, q <= 64, k <= 12") {
  for (uint64_t q = 2; q <= 64; ++q) {
    if (!prime_power(q)) continue;
    for (uint32_t k = 1; k <= 12; ++k) {
      auto got = ppd(q, k, false);
      auto want = ppd_brute(q, k);
      CHECK(got.primes == want);
      if (k >= 2 && !(q == 2 && k == 6) &&
          !(k == 2 && prime_power(q + 1) && prime_power(q + 1)->first == 2)) {
        CHECK(!got.primes.empty());
      }
    }
  }
}

TEST_CASE("classical orders") {
  CHECK(classical_order(Family::Sp, 6, 2).order == 1451520);
  CHECK(classical_order(Family::PSL, 2, 23).order == 6072);
  // PSL_4(2) is the alternating group of degree 8.
  Integer a8 = 1;
  for (int i = 2; i <= 8; ++i) a8 *= i;
  a8 /= 2;
  CHECK(classical_order(Family::PSL, 4, 2).order == a8);
  CHECK(classical_order(Family::SL, 2, 7).order == 336);
  CHECK(classical_order(Family::PSL, 2, 7).order == 168);
  CHECK(classical_order(Family::Sp, 4, 4).order == 979200);
  CHECK(classical_order(Family::SL, 2, 16).order == 4080);
  CHECK(classical_order(Family::SU, 3, 3).order == 6048);
  CHECK(classical_order(Family::SU, 4, 4).order == 1018368000);
  CHECK(classical_order(Family::OmegaPlus, 8, 2).order == 174182400);
  CHECK(classical_order(Family::GOMinus, 8, 2).order == 394813440);
  CHECK(classical_order(Family::OmegaMinus, 8, 2).order == 197406720);
  CHECK(classical_order(Family::Sp, 6, 4).order == Integer("4106059776000"));
  CHECK(classical_order(Family::SL, 4, 4).order == 987033600);
  CHECK(classical_order(Family::SL, 3, 4).order == 60480);

  CHECK_THROWS_AS(classical_order(Family::Sp, 5, 2), argument_error);
  CHECK_THROWS_AS(classical_order(Family::OmegaOdd, 7, 4), argument_error);
  CHECK_THROWS_AS(classical_order(Family::SL, 2, 6), argument_error);
}

TEST_CASE("order bounds hold on the whole validity window") {
  for (uint64_t q = 2; q <= 16; ++q) {
    if (!prime_power(q)) continue;
    for (uint32_t n = 2; n <= 12; ++n) {
      for (Family f : {Family::PSL, Family::PSU, Family::PSp, Family::OmegaOdd,
                       Family::POmegaPlus, Family::POmegaMinus}) {
        if (!order_bounds_applicable(f, n, q)) continue;
        CAPTURE((int)f);
        CAPTURE(n);
        CAPTURE(q);
        CHECK(check_order_bounds(f, n, q));
      }
    }
  }
}

TEST_CASE("gl_r_part examples") {
  CHECK(gl_r_part(2, 3, 2) == 16);
  for (uint64_t q : {4, 5, 7, 9, 11}) {
    for (uint64_t r : {2, 3, 5, 7, 13}) {
      if (q % r == 0) continue;
      CHECK(gl_r_part(1, q, r) == p_part(q - 1, r));
    }
  }
  CHECK(gl_r_part(3, 4, 3) == p_part(classical_order(Family::GL, 3, 4).order, 3));
  CHECK_THROWS_AS(gl_r_part(2, 4, 2), argument_error);
}

TEST_CASE("gl_r_part equals the r-part of the expanded order") {
  for (uint32_t n = 1; n <= 5; ++n)
    for (uint64_t q = 2; q <= 9; ++q) {
      if (!prime_power(q)) continue;
      Integer full = classical_order(Family::GL, n, q).order;
      for (uint64_t r : {2, 3, 5, 7, 11, 13}) {
        if (q % r == 0) continue;
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(r);
        CHECK(gl_r_part(n, q, r) == p_part(full, r));
      }
    }
}

TEST_CASE("c_of_k values and monotonicity") {
  CHECK(c_of_k(9) == Rational(1, 2));
  CHECK(c_of_k(10) == Rational(3, 4));
  CHECK(c_of_k(102) == Rational(49, 50));
  CHECK(c_of_k(1) == Rational(1, 2));
  for (uint32_t k = 1; k < 60; ++k) CHECK(c_of_k(k) <= c_of_k(k + 1));
}
