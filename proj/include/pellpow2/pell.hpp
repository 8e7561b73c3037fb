#pragma once

// Exact Pell / companion-Pell arithmetic over GMP integers, plus the
// structural facts about them that the reduction pipeline relies on.

#include <gmpxx.h>

#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "pellpow2/bigreal.hpp"

namespace pellpow2 {

namespace detail {

struct PellCache {
  std::shared_mutex mutex;
  std::vector<mpz_class> pell{mpz_class(0), mpz_class(1)};
  std::vector<mpz_class> lucas{mpz_class(2), mpz_class(2)};
};

inline PellCache& pell_cache() {
  static PellCache c;
  return c;
}

inline mpz_class cached_term(std::vector<mpz_class>& seq, long n) {
  auto& c = pell_cache();
  {
    std::shared_lock lock(c.mutex);
    if (n < static_cast<long>(seq.size())) return seq[n];
  }
  std::unique_lock lock(c.mutex);
  while (n >= static_cast<long>(seq.size())) {
    size_t k = seq.size();
    seq.push_back(2 * seq[k - 1] + seq[k - 2]);
  }
  return seq[n];
}

}  // namespace detail

// P_0 = 0, P_1 = 1, P_{k+1} = 2 P_k + P_{k-1}
inline mpz_class pell(long n) {
  if (n < 0) throw std::domain_error("pell: negative index");
  return detail::cached_term(detail::pell_cache().pell, n);
}

// Q_0 = Q_1 = 2, Q_{k+2} = 2 Q_{k+1} + Q_k  (so Q_k = alpha^k + beta^k)
inline mpz_class pell_lucas(long n) {
  if (n < 0) throw std::domain_error("pell_lucas: negative index");
  return detail::cached_term(detail::pell_cache().lucas, n);
}

// 2-adic valuation of a positive integer.
inline unsigned long nu2(const mpz_class& x) {
  if (x <= 0) throw std::domain_error("nu2: argument must be positive");
  return mpz_scan1(x.get_mpz_t(), 0);
}

struct PellPair {
  long index;
  mpz_class p_value;
  mpz_class q_value;
};

inline PellPair pell_pair(long n) {
  return PellPair{n, pell(n), pell_lucas(n)};
}

struct TwoSumFactorization {
  long half_sum_index;   // (n + delta*m)/2
  long half_diff_index;  // (n - delta*m)/2
  int delta;             // +1 iff n == m (mod 4)
};

// P_n + P_m = P_{(n+dm)/2} * Q_{(n-dm)/2} with d = +1 iff n = m (mod 4).
// Verifies the identity exactly before returning.
inline TwoSumFactorization two_sum_factorization(long n, long m) {
  if (m < 0 || n < m) throw std::domain_error("two_sum_factorization: need n >= m >= 0");
  if (((n - m) & 1) != 0)
    throw std::domain_error("two_sum_factorization: indices must have equal parity");
  int delta = ((n - m) % 4 == 0) ? 1 : -1;
  long hs = (n + delta * m) / 2;
  long hd = (n - delta * m) / 2;
  if (pell(hs) * pell_lucas(hd) != pell(n) + pell(m))
    throw std::logic_error("two_sum_factorization: identity check failed");
  return TwoSumFactorization{hs, hd, delta};
}

namespace detail {

// Primes below the trial-division limit used by has_prime_factor_at_least.
inline const std::vector<unsigned long>& small_primes() {
  static const std::vector<unsigned long> primes = [] {
    const unsigned long limit = 1000000;
    std::vector<bool> composite(limit + 1, false);
    std::vector<unsigned long> out;
    for (unsigned long p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (unsigned long q = p * p; q <= limit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace detail

// Whether P_n has a prime factor >= n - 1, decided by exact factorization.
// Trial division by primes below 10^6 fully factors P_n for the supported
// range; any cofactor left has only prime factors > 10^6 >= cap - 1.
inline bool has_prime_factor_at_least(long n, long cap = 200) {
  if (n < 13 || n > cap) throw std::domain_error("has_prime_factor_at_least: index out of range");
  const auto threshold = static_cast<unsigned long>(n - 1);
  mpz_class rest = pell(n);
  for (unsigned long p : detail::small_primes()) {
    if (rest == 1) return false;
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      if (p >= threshold) return true;
      do {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      } while (mpz_divisible_ui_p(rest.get_mpz_t(), p));
    }
  }
  return rest > 1;  // leftover factors all exceed the sieve limit
}

// Certified check that alpha^(n-2) <= P_n <= alpha^(n-1) for n >= 1.
inline bool pell_size_certified(long n, const PrecisionPolicy& policy = {}) {
  if (n < 1) throw std::domain_error("pell_size_certified: need n >= 1");
  mpq_class value(pell(n));
  RealExpr low = [n](mpfr_prec_t prec) {
    return pow_int(named_constant(Constant::Alpha, prec), n - 2);
  };
  RealExpr high = [n](mpfr_prec_t prec) {
    return pow_int(named_constant(Constant::Alpha, prec), n - 1);
  };
  mpfr_prec_t prec = policy.initial_bits;
  for (;;) {
    CertifiedReal lo = low(prec), hi = high(prec);
    if (lo.certifies_le(value) && hi.certifies_ge(value)) return true;
    // Bounds could only fail certification through interval slack; escalate.
    if (value < lo.lower() || value > hi.upper()) return false;
    if (prec >= policy.max_bits)
      throw PrecisionExhausted("pell_size_certified: undecidable at max precision");
    prec = policy.next(prec);
  }
}

// Certified Binet check: the interval (alpha^n - beta^n) / (2 sqrt 2)
// contains exactly one integer, and that integer equals pell(n).
inline bool binet_matches(long n, const PrecisionPolicy& policy = {}) {
  if (n < 0) throw std::domain_error("binet_matches: negative index");
  RealExpr expr = [n](mpfr_prec_t prec) {
    CertifiedReal a = pow_int(named_constant(Constant::Alpha, prec), n);
    CertifiedReal b = pow_int(named_constant(Constant::Beta, prec), n);
    CertifiedReal s = named_constant(Constant::Sqrt2, prec).scaled_2exp(1);
    return (a - b) / s;
  };
  mpfr_prec_t prec = policy.initial_bits;
  for (;;) {
    CertifiedReal v = expr(prec);
    mpz_class unique;
    if (v.unique_integer(&unique)) return unique == pell(n);
    if (prec >= policy.max_bits)
      throw PrecisionExhausted("binet_matches: undecidable at max precision");
    prec = policy.next(prec);
  }
}

}  // namespace pellpow2
