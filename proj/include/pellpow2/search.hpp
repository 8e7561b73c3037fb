#pragma once

// Exact enumeration of P_n + P_m + P_ell = 2^a over a finite index range,
// plus the structural ell = 0 case replayed from the factorization identity.

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "pellpow2/pell.hpp"

namespace pellpow2 {

struct SolutionTuple {
  long n = 0;
  long m = 0;
  long ell = 0;
  unsigned long a = 0;

  friend auto operator<=>(const SolutionTuple&, const SolutionTuple&) = default;
};

inline std::string to_string(const SolutionTuple& t) {
  std::ostringstream os;
  os << "(" << t.n << ", " << t.m << ", " << t.ell << ", " << t.a << ")";
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const SolutionTuple& t) {
  return os << to_string(t);
}

// The exponent a with x = 2^a, or nullopt when x is not a power of two.
inline std::optional<unsigned long> is_power_of_two(const mpz_class& x) {
  if (x <= 0) throw std::domain_error("is_power_of_two: argument must be positive");
  if (mpz_popcount(x.get_mpz_t()) != 1) return std::nullopt;
  return mpz_scan1(x.get_mpz_t(), 0);
}

// Exact re-evaluation of the defining equation and the ordering constraints.
inline bool verify_solution(const SolutionTuple& t) {
  if (t.ell < 0 || t.m < t.ell || t.n < t.m) return false;
  mpz_class sum = pell(t.n) + pell(t.m) + pell(t.ell);
  mpz_class pow = mpz_class(1) << t.a;
  return sum == pow;
}

// All tuples with 0 <= ell <= m <= n <= n_max solving P_n + P_m + P_ell = 2^a,
// by exact enumeration, in lexicographic order.
inline std::set<SolutionTuple> brute_force(long n_max) {
  if (n_max < 0) throw std::domain_error("brute_force: need n_max >= 0");
  std::vector<mpz_class> p(n_max + 1);
  for (long i = 0; i <= n_max; ++i) p[i] = pell(i);
  std::set<SolutionTuple> out;
  mpz_class two_sum, sum;
  for (long n = 0; n <= n_max; ++n)
    for (long m = 0; m <= n; ++m) {
      two_sum = p[n] + p[m];
      for (long ell = 0; ell <= m; ++ell) {
        sum = two_sum + p[ell];
        if (sum == 0) continue;
        if (auto a = is_power_of_two(sum)) out.insert({n, m, ell, *a});
      }
    }
  return out;
}

using CertificateNotes = std::vector<std::string>;

struct EllZeroCase {
  std::set<SolutionTuple> solutions;
  CertificateNotes notes;
};

// Structural ell = 0 case.  With ell = m = 0 the equation collapses to
// P_n = 2^a, which forces n <= 12 (P_n has a prime factor >= n - 1 > 2 for
// n >= 13).  With m >= 1, P_n and P_m must share parity, and then
// P_n + P_m = P_u * Q_v with u = (n + dm)/2, v = (n - dm)/2; both factors
// must be powers of two, nu2(Q_v) = 1 pins Q_v = 2 so v in {0, 1}, and P_u
// a power of two pins u to the m = 0 hit list.
inline EllZeroCase case_ell_zero() {
  EllZeroCase out;

  std::vector<long> power_indices;
  for (long n = 1; n <= 12; ++n)
    if (auto a = is_power_of_two(pell(n))) {
      power_indices.push_back(n);
      out.solutions.insert({n, 0, 0, *a});
    }
  {
    std::ostringstream os;
    os << "ell = m = 0: P_n = 2^a scanned for n <= 12, hits";
    for (long n : power_indices) os << " n=" << n;
    os << "; excluded for n >= 13 since P_n then has a prime factor >= n - 1 > 2";
    out.notes.push_back(os.str());
  }
  for (long n = 13; n <= 40; ++n)
    if (!has_prime_factor_at_least(n))
      throw std::logic_error("case_ell_zero: large prime factor check failed");
  out.notes.push_back(
      "prime factor >= n - 1 confirmed by exact factorization for 13 <= n <= 40");

  out.notes.push_back(
      "ell = 0, m >= 1: mixed-parity (n, m) skipped, P_n + P_m is then odd and > 1");
  for (long v = 0; v <= 300; ++v)
    if (nu2(pell_lucas(v)) != 1)
      throw std::logic_error("case_ell_zero: nu2(Q_v) = 1 check failed");
  out.notes.push_back(
      "same parity: P_n + P_m = P_u * Q_v; nu2(Q_v) = 1 (checked v <= 300) forces "
      "Q_v = 2, so v in {0, 1}, and P_u = 2^(a-1) forces u into the m = 0 hit list");

  for (long u : power_indices)
    for (long v : {0L, 1L}) {
      long n = u + v;
      long dm = u - v;  // dm = delta * m
      for (int delta : {1, -1}) {
        long m = delta * dm;
        if (m < 1 || m > n || ((n - m) & 1) != 0) continue;
        int required = ((n - m) % 4 == 0) ? 1 : -1;
        mpz_class sum = pell(n) + pell(m);
        if (required != delta) {
          std::ostringstream os;
          os << "candidate (n, m) = (" << n << ", " << m << ") from (u, v) = (" << u
             << ", " << v << ") fails the delta rule; directly, P_n + P_m = " << sum
             << " is not a power of two";
          if (is_power_of_two(sum))
            throw std::logic_error("case_ell_zero: delta-rule reject was a solution");
          out.notes.push_back(os.str());
          continue;
        }
        auto f = two_sum_factorization(n, m);
        if (f.half_sum_index != u || f.half_diff_index != v)
          throw std::logic_error("case_ell_zero: factorization indices mismatch");
        auto a = is_power_of_two(sum);
        if (!a) throw std::logic_error("case_ell_zero: P_u * Q_v = 2^a re-check failed");
        out.solutions.insert({n, m, 0, *a});
        std::ostringstream os;
        os << "(u, v) = (" << u << ", " << v << ") yields " << to_string({n, m, 0, *a});
        out.notes.push_back(os.str());
      }
    }
  return out;
}

}  // namespace pellpow2
