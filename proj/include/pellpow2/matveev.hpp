#pragma once

// Logarithmic-height bookkeeping and the certified coefficient chain derived
// from Matveev-style lower bounds for the three linear forms in log 2, log α,
// and log of the shifted combinations, culminating in an absolute bound on n.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <pellpow2/bigreal.hpp>

namespace pellpow2 {

enum class NamedEta { Two, Alpha, Sqrt2 };

// Logarithmic heights over Q(sqrt 2): h(2) = log 2, h(alpha) = (log alpha)/2
// (minimal polynomial x^2 - 2x - 1, conjugate |beta| < 1), h(sqrt2) = (log 2)/2.
inline CertifiedReal height_of_named(NamedEta eta, mpfr_prec_t prec = 192) {
  switch (eta) {
    case NamedEta::Two:
      return named_constant(Constant::Log2, prec);
    case NamedEta::Alpha:
      return named_constant(Constant::LogAlpha, prec).scaled_2exp(-1);
    case NamedEta::Sqrt2:
      return named_constant(Constant::LogSqrt2, prec);
  }
  throw std::invalid_argument("height_of_named: unknown eta");
}

namespace detail {

inline void check_shifts(const std::vector<long>& shifts) {
  if (shifts.empty() || shifts.size() > 2)
    throw std::invalid_argument("expected one or two shifts");
  for (long x : shifts)
    if (x < 0) throw std::invalid_argument("shifts must be nonnegative");
}

}  // namespace detail

// The third algebraic number of the linear forms: sqrt2 / (1 + alpha^-x) for
// one shift, sqrt2 / (1 + alpha^-x1 + alpha^-x2) for two.
inline CertifiedReal eta3_value(const std::vector<long>& shifts,
                                mpfr_prec_t prec = 192) {
  detail::check_shifts(shifts);
  CertifiedReal alpha = named_constant(Constant::Alpha, prec);
  CertifiedReal denom = CertifiedReal::from_long(1, prec);
  for (long x : shifts) denom = denom + pow_int(alpha, -x);
  return named_constant(Constant::Sqrt2, prec) / denom;
}

// Certified upper bound for h(eta3): log(2 sqrt2) + x (log alpha)/2 with one
// shift, log(4 sqrt2) + (x1 + x2)(log alpha)/2 with two.
inline CertifiedReal height_bound_eta3(const std::vector<long>& shifts,
                                       mpfr_prec_t prec = 192) {
  detail::check_shifts(shifts);
  CertifiedReal log2 = named_constant(Constant::Log2, prec);
  CertifiedReal log_sqrt2 = named_constant(Constant::LogSqrt2, prec);
  CertifiedReal half_log_alpha =
      named_constant(Constant::LogAlpha, prec).scaled_2exp(-1);
  long sum = 0;
  for (long x : shifts) sum += x;
  CertifiedReal base = shifts.size() == 1 ? log2 + log_sqrt2
                                          : log2.scaled_2exp(1) + log_sqrt2;
  return base + CertifiedReal::from_long(sum, prec) * half_log_alpha;
}

// A3 := 3 + x log alpha (one shift) or 4 + (x1 + x2) log alpha (two shifts),
// certified to dominate max{2 h(eta3), |log eta3|, 0.16} with |log eta3| < 1.
inline CertifiedReal a3_parameter(const std::vector<long>& shifts,
                                  mpfr_prec_t prec = 192) {
  detail::check_shifts(shifts);
  CertifiedReal log_alpha = named_constant(Constant::LogAlpha, prec);
  long sum = 0;
  for (long x : shifts) sum += x;
  CertifiedReal a3 =
      CertifiedReal::from_long(shifts.size() == 1 ? 3 : 4, prec) +
      CertifiedReal::from_long(sum, prec) * log_alpha;

  CertifiedReal twice_height = height_bound_eta3(shifts, prec).scaled_2exp(1);
  if (!((a3 - twice_height).certified_sign() > 0))
    throw std::logic_error("a3_parameter: 2 h(eta3) bound not certified");
  CertifiedReal one = CertifiedReal::from_long(1, prec);
  CertifiedReal log_eta3 = log(eta3_value(shifts, prec));
  if (!((one - abs(log_eta3)).certified_sign() > 0))
    throw std::logic_error("a3_parameter: |log eta3| < 1 not certified");
  if (!a3.certifies_ge(1) || !a3.certifies_ge(mpq_class(4, 25)))
    throw std::logic_error("a3_parameter: trivial lower bounds not certified");
  return a3;
}

struct MatveevInstance {
  int t = 0;
  int degree_D = 1;
  std::vector<CertifiedReal> A;
  CertifiedReal B;

  void validate() const {
    if (t < 1 || static_cast<std::size_t>(t) != A.size())
      throw std::invalid_argument("MatveevInstance: t must equal |A| and be >= 1");
    if (degree_D < 1)
      throw std::invalid_argument("MatveevInstance: degree must be positive");
    for (const CertifiedReal& a : A)
      if (!a.certifies_ge(mpq_class(4, 25)))
        throw std::invalid_argument("MatveevInstance: each A_i must be >= 0.16");
    if (!B.certifies_ge(1))
      throw std::invalid_argument("MatveevInstance: B must be >= 1");
  }
};

namespace detail {

// 1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D), the B-independent prefix.
inline CertifiedReal matveev_prefix(int t, int degree_D, mpfr_prec_t prec) {
  mpz_class pow30, t9;
  mpz_ui_pow_ui(pow30.get_mpz_t(), 30, static_cast<unsigned long>(t) + 3);
  mpz_ui_pow_ui(t9.get_mpz_t(), static_cast<unsigned long>(t), 9);
  CertifiedReal c = CertifiedReal::from_rational(mpq_class(7, 5), prec) *
                    CertifiedReal::from_integer(pow30, prec) *
                    sqrt(CertifiedReal::from_integer(t9, prec));
  CertifiedReal d = CertifiedReal::from_long(degree_D, prec);
  return c * d * d * (CertifiedReal::from_long(1, prec) + log(d));
}

}  // namespace detail

// E = 1.4 * 30^(t+3) * t^4.5 * D^2 (1 + log D)(1 + log B) A_1 ... A_t, so that
// a nonvanishing form satisfies |Lambda| > exp(-E).
inline CertifiedReal matveev_exponent(const MatveevInstance& inst) {
  inst.validate();
  mpfr_prec_t prec = inst.B.precision_bits();
  for (const CertifiedReal& a : inst.A)
    prec = std::max(prec, a.precision_bits());
  prec = std::max<mpfr_prec_t>(prec, 192);
  CertifiedReal e = detail::matveev_prefix(inst.t, inst.degree_D, prec) *
                    (CertifiedReal::from_long(1, prec) + log(inst.B));
  for (const CertifiedReal& a : inst.A) e = e * a;
  return e;
}

enum class ChainQuantity { NMinusM, NMinusEll, N };

inline const char* chain_quantity_name(ChainQuantity q) {
  switch (q) {
    case ChainQuantity::NMinusM: return "n_minus_m";
    case ChainQuantity::NMinusEll: return "n_minus_ell";
    case ChainQuantity::N: return "n";
  }
  return "?";
}

// Certified statement: quantity * log alpha < coefficient_C * (log n)^k for
// every solution with n > 150.  For quantity = n the stronger statement
// n < coefficient_C * (log n)^k holds and is what solve_log_bound consumes.
struct BoundChainCoefficient {
  ChainQuantity quantity;
  CertifiedReal coefficient_C;
  int log_power_k = 0;
};

struct BoundChain {
  BoundChainCoefficient K1, K2, K3;
  std::vector<std::string> certifications;
};

namespace detail {

inline void certify_positive(const CertifiedReal& v, const char* what,
                             std::vector<std::string>* notes) {
  if (!(v.certified_sign() > 0))
    throw std::logic_error(std::string("bound_chain: failed to certify ") + what);
  if (notes) notes->push_back(what);
}

}  // namespace detail

// The three-step coefficient chain.  All inequalities are certified with the
// upper endpoints of the interval values; n ranges over integers > 150.
inline BoundChain bound_chain(mpfr_prec_t prec = 256) {
  using detail::certify_positive;
  const CertifiedReal one = CertifiedReal::from_long(1, prec);
  const CertifiedReal log2 = named_constant(Constant::Log2, prec);
  const CertifiedReal log_sqrt2 = named_constant(Constant::LogSqrt2, prec);
  const CertifiedReal log_alpha = named_constant(Constant::LogAlpha, prec);
  const CertifiedReal log151 = log(CertifiedReal::from_long(151, prec));

  std::vector<std::string> notes;

  // Validity of the fixed height parameters A1 = 1.4, A2 = 0.9, A3 = 0.7 for
  // eta = 2, alpha, sqrt2: each dominates 2 h(eta), |log eta|, and 0.16.
  const CertifiedReal a1 = CertifiedReal::from_rational(mpq_class(7, 5), prec);
  const CertifiedReal a2 = CertifiedReal::from_rational(mpq_class(9, 10), prec);
  const CertifiedReal a3 = CertifiedReal::from_rational(mpq_class(7, 10), prec);
  certify_positive(a1 - log2.scaled_2exp(1), "2*h(2) = 2 log 2 <= 1.4", &notes);
  certify_positive(a1 - log2, "|log 2| <= 1.4", &notes);
  certify_positive(a2 - log_alpha, "2*h(alpha) = |log alpha| <= 0.9", &notes);
  certify_positive(a3 - log2, "2*h(sqrt2) = log 2 <= 0.7", &notes);
  certify_positive(a3 - log_sqrt2, "|log sqrt2| <= 0.7", &notes);

  // B = 2n + 1 replacement: 1 + log(2n+1) <= 2 log n for n >= 151, certified
  // at n = 151 (the left side grows slower in n).
  certify_positive(log151.scaled_2exp(1) - (one + log(CertifiedReal::from_long(303, prec))),
                   "1 + log(2*151+1) <= 2 log 151", &notes);

  // Step 1: |Lambda1| > exp(-c1 log n) with t = 3, D = 2, A = (1.4, 0.9, 0.7)
  // and the factor 2 from the B replacement; together with
  // |Lambda1| < 8 alpha^-(n-m) this yields (n-m) log alpha < K1 log n.
  const CertifiedReal two = CertifiedReal::from_long(2, prec);
  const CertifiedReal c1 =
      detail::matveev_prefix(3, 2, prec) * two * a1 * a2 * a3;
  const CertifiedReal k1 =
      c1 + CertifiedReal::from_long(3, prec) * log2 / log151;
  certify_positive(CertifiedReal::from_integer(mpz_class("1800000000000"), prec) - k1,
                   "K1 <= 1.8e12", &notes);

  // Step 2: with A3 = 3 + (n-m) log alpha symbolic, the two-parameter product
  // c2 = c1 / 0.7 must round below 2.45e12, and the additive log 5 (resp.
  // log 4 in step 3) is absorbed into 2.5e12.
  const CertifiedReal c2 = detail::matveev_prefix(3, 2, prec) * two * a1 * a2;
  const CertifiedReal cap245 =
      CertifiedReal::from_integer(mpz_class("2450000000000"), prec);
  certify_positive(cap245 - c2, "c2 <= 2.45e12", &notes);
  const CertifiedReal slack =
      CertifiedReal::from_integer(mpz_class("50000000000"), prec);
  certify_positive(slack * log151 * CertifiedReal::from_long(3, prec) -
                       log(CertifiedReal::from_long(5, prec)),
                   "log 5 <= 0.05e12 * log 151 * 3", &notes);
  certify_positive(slack * log151 * CertifiedReal::from_long(4, prec) -
                       log(CertifiedReal::from_long(4, prec)),
                   "log 4 <= 0.05e12 * log 151 * 4", &notes);

  const CertifiedReal c25 =
      CertifiedReal::from_integer(mpz_class("2500000000000"), prec);
  // (n-ell) log alpha < 2.5e12 log n (3 + (n-m) log alpha) < K2 log^2 n.
  const CertifiedReal k2 =
      c25 * (k1 + CertifiedReal::from_long(3, prec) / log151);
  certify_positive(CertifiedReal::from_integer(mpz_class("5000000000000000000000000"), prec) - k2,
                   "K2 <= 5e24", &notes);

  // Step 3: n log alpha < 2.5e12 log n (4 + (n-m) log alpha + (n-ell) log
  // alpha); dividing by log alpha gives n < K3 log^3 n.
  const CertifiedReal k3 =
      c25 *
      (CertifiedReal::from_long(4, prec) / (log151 * log151) + k1 / log151 + k2) /
      log_alpha;
  certify_positive(
      CertifiedReal::from_integer(mpz_class("17000000000000000000000000000000000000"), prec) - k3,
      "K3 <= 1.7e37", &notes);

  BoundChain chain;
  chain.K1 = {ChainQuantity::NMinusM, k1, 1};
  chain.K2 = {ChainQuantity::NMinusEll, k2, 2};
  chain.K3 = {ChainQuantity::N, k3, 3};
  chain.certifications = std::move(notes);
  return chain;
}

// Least integer N certified so that x < C (log x)^k implies x < N, located as
// the largest fixed point of x = C (log x)^k by bisection on [e^k, 1e60].
inline mpz_class solve_log_bound(const CertifiedReal& C, int k,
                                 const PrecisionPolicy& policy = {}) {
  if (k < 0) throw std::invalid_argument("solve_log_bound: k must be >= 0");
  if (!(C.certified_sign() > 0))
    throw std::invalid_argument("solve_log_bound: C must be certified positive");
  mpz_class n;
  if (k == 0) {
    mpq_class hi = C.upper();
    mpz_cdiv_q(n.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    return n;
  }

  // Certified sign of g(x) = C (log x)^k - x, escalating the precision of the
  // log evaluation; 0 means undecided even at the precision cap.
  auto g_sign = [&](const mpq_class& x) -> int {
    for (mpfr_prec_t p = policy.initial_bits;; p = policy.next(p)) {
      CertifiedReal xb = CertifiedReal::from_rational(x, p);
      int s = (C * pow_int(log(xb), k) - xb).certified_sign();
      if (s != 0) return s;
      if (p >= policy.max_bits) return 0;
    }
  };

  // g is eventually negative and C (log x)^k / x decreases for x > e^k, so a
  // certified g(N) < 0 at N > e^k bounds the premise region by N.
  mpz_class three_k;
  mpz_ui_pow_ui(three_k.get_mpz_t(), 3, static_cast<unsigned long>(k));
  mpq_class lo(three_k);
  mpq_class hi(mpz_class("1" + std::string(60, '0')));
  if (g_sign(lo) < 0) {
    n = three_k;
  } else {
    if (g_sign(hi) >= 0)
      throw std::runtime_error("solve_log_bound: no certified sign change on [3^k, 1e60]");
    for (int it = 0; it < 200 && hi - lo > 1; ++it) {
      mpq_class mid = (lo + hi) / 2;
      if (g_sign(mid) < 0) hi = mid; else lo = mid;
    }
    if (hi - lo > 1)
      throw std::runtime_error("solve_log_bound: bisection did not converge");
    mpz_cdiv_q(n.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  }
  if (!(g_sign(mpq_class(n)) < 0) || !(g_sign(mpq_class(2 * n)) < 0))
    throw std::runtime_error("solve_log_bound: substitution check failed at N or 2N");
  return n;
}

enum class LinearForm { Lambda1, Lambda2, Lambda3 };

inline const char* linear_form_name(LinearForm f) {
  switch (f) {
    case LinearForm::Lambda1: return "Lambda1";
    case LinearForm::Lambda2: return "Lambda2";
    case LinearForm::Lambda3: return "Lambda3";
  }
  return "?";
}

struct NonvanishingResult {
  bool certified = false;
  std::string note;
  explicit operator bool() const { return certified; }
};

// Symbolic nonvanishing arguments for the three forms, with the supporting
// numeric inequalities re-verified in certified arithmetic at the minimal
// in-range exponent n = 151 (and worst-case smaller exponents).
inline NonvanishingResult nonvanishing_guard(LinearForm form,
                                             mpfr_prec_t prec = 256) {
  const CertifiedReal one = CertifiedReal::from_long(1, prec);
  const CertifiedReal abs_beta = abs(named_constant(Constant::Beta, prec));
  const CertifiedReal b151 = pow_int(abs_beta, 151);
  const CertifiedReal alpha151 = pow_int(named_constant(Constant::Alpha, prec), 151);

  NonvanishingResult r;
  if (!((alpha151 - one).certified_sign() > 0)) return r;

  switch (form) {
    case LinearForm::Lambda1:
      // Vanishing would give 2^(a+1) = alpha^n / sqrt2, hence alpha^(2n) =
      // 2^(2a+3) an integer; but alpha^(2n) = (Q_2n + 2 sqrt2 P_2n)/2 is
      // irrational since P_2n >= 2.
      r.certified = (one - CertifiedReal::from_long(3, prec) * b151).certified_sign() > 0;
      r.note =
          "vanishing forces alpha^(2n) = 2^(2a+3) in Z, impossible: "
          "alpha^(2n) has irrational part sqrt2*P_2n != 0; "
          "re-verified 3|beta|^151 < 1 < alpha^151";
      break;
    case LinearForm::Lambda2: {
      // Vanishing gives alpha^n + alpha^m = sqrt2 * 2^(a+1); conjugating,
      // |beta^n + beta^m| = sqrt2 * 2^(a+1) > alpha^n, yet it is < 1.
      const CertifiedReal b150 = pow_int(abs_beta, 150);
      r.certified = (one - (b151 + b150)).certified_sign() > 0;
      r.note =
          "conjugation: |beta^n + beta^m| <= |beta|^151 + |beta|^150 < 1 < "
          "alpha^151, contradicting equality with sqrt2*2^(a+1) > alpha^n";
      break;
    }
    case LinearForm::Lambda3: {
      // Same conjugation with three terms; m, ell >= 1 in this branch, so the
      // worst case is |beta|^151 + 2|beta|.
      const CertifiedReal worst = b151 + abs_beta.scaled_2exp(1);
      r.certified = (one - worst).certified_sign() > 0 &&
                    (one - CertifiedReal::from_long(3, prec) * b151).certified_sign() > 0;
      r.note =
          "conjugation: |beta^n + beta^m + beta^ell| <= |beta|^151 + 2|beta| "
          "< 1 < alpha^151; also 3|beta|^151 < 1";
      break;
    }
  }
  return r;
}

}  // namespace pellpow2
