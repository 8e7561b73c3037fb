#pragma once

// Certified continued fractions, convergent bracketing at 10^44 scale, the
// Dujella-Petho reduction step, and the Legendre-style fallback used when the
// reduction's epsilon is structurally nonpositive.

#include <gmpxx.h>

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <pellpow2/bigreal.hpp>

namespace pellpow2 {

struct ContinuedFractionExpansion {
  RealExpr value;
  std::vector<mpz_class> partial_quotients;            // a_0, a_1, ...
  std::vector<std::pair<mpz_class, mpz_class>> convergents;  // (p_k, q_k)
  long certified_terms = 0;
  bool terminated_rational = false;
  mpfr_prec_t certified_at_bits = 0;
};

namespace detail {

// Canonical continued fraction of a rational by Euclid's algorithm,
// truncated to at most max_terms quotients.
inline std::vector<mpz_class> rational_cf(mpq_class x, std::size_t max_terms) {
  std::vector<mpz_class> out;
  mpz_class num = x.get_num(), den = x.get_den();
  while (out.size() < max_terms && den != 0) {
    mpz_class a, r;
    mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    out.push_back(a);
    num = den;
    den = r;
  }
  return out;
}

inline std::vector<std::pair<mpz_class, mpz_class>> cf_convergents(
    const std::vector<mpz_class>& quotients) {
  std::vector<std::pair<mpz_class, mpz_class>> conv;
  mpz_class p_prev2 = 0, p_prev1 = 1, q_prev2 = 1, q_prev1 = 0;
  for (const mpz_class& a : quotients) {
    mpz_class p = a * p_prev1 + p_prev2;
    mpz_class q = a * q_prev1 + q_prev2;
    conv.emplace_back(p, q);
    p_prev2 = p_prev1;
    p_prev1 = p;
    q_prev2 = q_prev1;
    q_prev1 = q;
  }
  return conv;
}

// All reals sharing a canonical continued-fraction prefix form an interval,
// so a prefix common to both endpoint expansions is certified for the value.
inline std::size_t common_prefix(const std::vector<mpz_class>& a,
                                 const std::vector<mpz_class>& b) {
  std::size_t n = std::min(a.size(), b.size());
  std::size_t k = 0;
  while (k < n && a[k] == b[k]) ++k;
  return k;
}

inline bool legendre_windows_hold(
    const CertifiedReal& ball,
    const std::vector<std::pair<mpz_class, mpz_class>>& conv) {
  mpq_class lo = ball.lower(), hi = ball.upper();
  for (const auto& [p, q] : conv) {
    mpq_class center(p, q), window(mpz_class(1), q * q);
    center.canonicalize();
    window.canonicalize();
    if (!(center - window < lo && hi < center + window)) return false;
  }
  return true;
}

}  // namespace detail

// Expands x to `terms` certified partial quotients by expanding the exact
// rational endpoints of its enclosure at escalating precision until they
// agree (and every convergent passes the exact Legendre-window check).
// An exactly rational enclosure terminates the expansion instead.
inline ContinuedFractionExpansion expand_cf(const RealExpr& x, long terms,
                                            const PrecisionPolicy& policy = {}) {
  if (terms < 1) throw std::invalid_argument("expand_cf: need at least one term");
  policy.validate();
  ContinuedFractionExpansion cf;
  cf.value = x;
  for (mpfr_prec_t prec = policy.initial_bits;; prec = policy.next(prec)) {
    CertifiedReal ball = x(prec);
    std::size_t want = static_cast<std::size_t>(terms);
    if (ball.is_exact()) {
      std::vector<mpz_class> qs = detail::rational_cf(ball.lower(), want + 1);
      cf.terminated_rational = qs.size() <= want;
      if (!cf.terminated_rational) qs.resize(want);
      cf.partial_quotients = std::move(qs);
    } else {
      std::vector<mpz_class> qa = detail::rational_cf(ball.lower(), want + 2);
      std::vector<mpz_class> qb = detail::rational_cf(ball.upper(), want + 2);
      std::size_t agree = detail::common_prefix(qa, qb);
      if (agree < want) {
        if (prec >= policy.max_bits)
          throw PrecisionExhausted("expand_cf: endpoints disagree at precision cap");
        continue;
      }
      qa.resize(want);
      cf.partial_quotients = std::move(qa);
    }
    cf.convergents = detail::cf_convergents(cf.partial_quotients);
    if (!detail::legendre_windows_hold(ball, cf.convergents)) {
      if (prec >= policy.max_bits)
        throw PrecisionExhausted("expand_cf: Legendre window check needs more precision");
      continue;
    }
    cf.certified_terms = static_cast<long>(cf.partial_quotients.size());
    cf.certified_at_bits = prec;
    break;
  }
  // Structural invariants of the recurrence output.
  for (std::size_t k = 0; k < cf.convergents.size(); ++k) {
    const auto& [p, q] = cf.convergents[k];
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
    if (g != 1) throw std::logic_error("expand_cf: convergent not in lowest terms");
    if (k >= 2 && !(cf.convergents[k].second > cf.convergents[k - 1].second))
      throw std::logic_error("expand_cf: denominators not increasing");
    if (k >= 1 && cf.partial_quotients[k] < 1)
      throw std::logic_error("expand_cf: partial quotient below 1");
  }
  return cf;
}

struct BracketingResult {
  long lower = -1;
  long upper = 0;
  bool tie = false;
};

// Consecutive indices with q_lower <= bound < q_upper (tie flags equality);
// (-1, 0) sentinel when even q_0 = 1 exceeds the bound.
inline BracketingResult convergent_bracketing(const ContinuedFractionExpansion& cf,
                                              const mpz_class& bound) {
  if (cf.convergents.empty())
    throw std::invalid_argument("convergent_bracketing: empty expansion");
  if (bound < cf.convergents.front().second) return {-1, 0, false};
  for (std::size_t k = 0; k + 1 < cf.convergents.size(); ++k) {
    if (cf.convergents[k].second <= bound && bound < cf.convergents[k + 1].second)
      return {static_cast<long>(k), static_cast<long>(k + 1),
              cf.convergents[k].second == bound};
  }
  throw std::invalid_argument("convergent_bracketing: not enough certified terms");
}

inline mpz_class max_partial_quotient(const ContinuedFractionExpansion& cf, long upto) {
  if (upto < 1 || upto >= cf.certified_terms)
    throw std::invalid_argument("max_partial_quotient: index beyond certified terms");
  mpz_class best = 0;
  for (long i = 1; i <= upto; ++i)
    if (cf.partial_quotients[static_cast<std::size_t>(i)] > best)
      best = cf.partial_quotients[static_cast<std::size_t>(i)];
  return best;
}

struct ReductionInstance {
  RealExpr gamma;
  RealExpr mu;
  CertifiedReal A;
  CertifiedReal B;
  mpz_class M;

  void validate() const {
    if (!gamma || !mu)
      throw std::invalid_argument("ReductionInstance: missing expressions");
    if (!(A.certified_sign() > 0))
      throw std::invalid_argument("ReductionInstance: A must be certified > 0");
    if (!((B - CertifiedReal::from_long(1, B.precision_bits())).certified_sign() > 0))
      throw std::invalid_argument("ReductionInstance: B must be certified > 1");
    if (M < 1) throw std::invalid_argument("ReductionInstance: M must be >= 1");
  }
};

struct ReductionOutcome {
  long convergent_index = -1;
  mpz_class q_used;
  CertifiedReal epsilon;
  mpz_class w_bound;
  mpfr_prec_t certified_at_bits = 0;
};

struct DegenerateFailure {
  std::string reason;
  int convergents_tried = 0;
};

using ReductionResult = std::variant<ReductionOutcome, DegenerateFailure>;

// epsilon = ||mu q|| - M ||gamma q|| as a certified interval at fixed
// precision (throws std::domain_error when the products are too wide).
inline CertifiedReal reduction_epsilon(const ReductionInstance& inst,
                                       const mpz_class& q, mpfr_prec_t bits) {
  CertifiedReal qb = CertifiedReal::from_integer(q, bits);
  CertifiedReal dist_mu = nearest_int_distance(inst.mu(bits) * qb);
  CertifiedReal dist_gamma = nearest_int_distance(inst.gamma(bits) * qb);
  return dist_mu - CertifiedReal::from_integer(inst.M, bits) * dist_gamma;
}

// Conservative bound ceil(log(A q / epsilon_lower) / log B): exact rational
// ratio from the upper endpoint of A and certified lower endpoint of epsilon,
// then the upper endpoint of the quotient of log enclosures.
inline mpz_class dp_w_bound(const CertifiedReal& A, const CertifiedReal& B,
                            const mpz_class& q, const mpq_class& epsilon_lower,
                            mpfr_prec_t bits) {
  if (epsilon_lower <= 0)
    throw std::invalid_argument("dp_w_bound: epsilon lower endpoint must be positive");
  mpq_class ratio = A.upper() * mpq_class(q) / epsilon_lower;
  CertifiedReal level = log(CertifiedReal::from_rational(ratio, bits)) / log(B);
  mpq_class hi = level.upper();
  mpz_class w;
  mpz_cdiv_q(w.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  return w;
}

// Scans convergents of gamma from the first q > 6M; the first certified
// epsilon > 0 yields the outcome (no solution has w >= w_bound).  If `cap`
// consecutive convergents fail to certify a positive epsilon, the instance is
// reported degenerate.
inline ReductionResult dujella_petho(const ReductionInstance& inst,
                                     const ContinuedFractionExpansion& cf,
                                     const PrecisionPolicy& policy = {},
                                     int cap = 25) {
  inst.validate();
  policy.validate();
  mpz_class six_m = 6 * inst.M;
  std::size_t start = 0;
  while (start < cf.convergents.size() && cf.convergents[start].second <= six_m)
    ++start;
  if (start == cf.convergents.size())
    throw std::invalid_argument("dujella_petho: no certified convergent with q > 6M");

  int tried = 0;
  for (std::size_t k = start; k < cf.convergents.size() && tried < cap; ++k, ++tried) {
    const mpz_class& q = cf.convergents[k].second;
    // The products mu*q and gamma*q need roughly bits(q) + bits(M) extra
    // precision before their distances to Z resolve; start there.
    mpfr_prec_t bits = std::max<mpfr_prec_t>(
        policy.initial_bits,
        static_cast<mpfr_prec_t>(mpz_sizeinbase(q.get_mpz_t(), 2) +
                                 mpz_sizeinbase(inst.M.get_mpz_t(), 2) + 64));
    for (;;) {
      int sign = 0;
      bool wide = false;
      try {
        CertifiedReal eps = reduction_epsilon(inst, q, bits);
        sign = eps.certified_sign();
        if (sign > 0) {
          ReductionOutcome out;
          out.convergent_index = static_cast<long>(k);
          out.q_used = q;
          out.epsilon = eps;
          out.w_bound = dp_w_bound(inst.A, inst.B, q, eps.lower(), bits);
          out.certified_at_bits = bits;
          return out;
        }
      } catch (const std::domain_error&) {
        wide = true;
      }
      if (!wide && sign < 0) break;  // certified nonpositive: next convergent
      if (bits >= policy.max_bits) {
        if (wide)
          throw PrecisionExhausted("dujella_petho: epsilon enclosure too wide at cap");
        break;  // sign undecided at cap: treat as not certifiably positive
      }
      bits = policy.next(bits);
    }
  }
  if (tried < cap)
    throw std::invalid_argument("dujella_petho: ran out of certified convergents");
  return DegenerateFailure{
      "no certified positive epsilon among " + std::to_string(tried) +
          " consecutive convergents past q > 6M",
      tried};
}

// Independent soundness audit of an outcome: recompute epsilon at twice the
// recorded precision and re-derive w_bound from the recorded epsilon lower
// endpoint.
inline bool recheck_outcome(const ReductionInstance& inst, const ReductionOutcome& out) {
  mpfr_prec_t bits = out.certified_at_bits * 2;
  CertifiedReal eps = reduction_epsilon(inst, out.q_used, bits);
  if (!(eps.certified_sign() > 0)) return false;
  if (!(eps.lower() <= out.epsilon.upper() && out.epsilon.lower() <= eps.upper()))
    return false;
  return dp_w_bound(inst.A, inst.B, out.q_used, out.epsilon.lower(), bits) == out.w_bound;
}

// Fallback for inequalities 0 < |x gamma - y| < A B^-w with x <= M_coeff:
// convergent properties give |x gamma - y| > 1/((a_M + 2) x), hence
// w_bound = ceil(log(A (a_M + 2) M_coeff) / log B).
inline mpz_class legendre_fallback(const ContinuedFractionExpansion& cf,
                                   const mpz_class& M_coeff, const CertifiedReal& A,
                                   const CertifiedReal& B, long upto,
                                   mpfr_prec_t bits = 256) {
  mpz_class a_m = max_partial_quotient(cf, upto);
  mpq_class ratio = A.upper() * mpq_class((a_m + 2) * M_coeff);
  CertifiedReal level = log(CertifiedReal::from_rational(ratio, bits)) / log(B);
  mpq_class hi = level.upper();
  mpz_class w;
  mpz_cdiv_q(w.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
  return w;
}

}  // namespace pellpow2
