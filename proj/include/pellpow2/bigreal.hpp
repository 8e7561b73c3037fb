#pragma once

// Certified arbitrary-precision real arithmetic: midpoint-radius intervals
// over MPFR with outward rounding.  Every operation returns an interval
// guaranteed to contain the exact mathematical result.

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdio>
#include <functional>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>

namespace pellpow2 {

class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& msg) : std::runtime_error(msg) {}
};

struct PrecisionPolicy {
  mpfr_prec_t initial_bits = 192;
  mpfr_prec_t max_bits = 8192;
  int growth_factor = 2;

  void validate() const {
    if (initial_bits < 8 || max_bits < initial_bits || growth_factor < 2)
      throw std::invalid_argument("invalid precision policy");
  }
  mpfr_prec_t next(mpfr_prec_t bits) const {
    if (bits >= max_bits) return max_bits;
    mpfr_prec_t n = bits * growth_factor;
    return n > max_bits ? max_bits : n;
  }
};

namespace detail {
// All radii live at a small fixed precision; every radius operation rounds up.
inline constexpr mpfr_prec_t kRadiusPrec = 64;
}  // namespace detail

class CertifiedReal {
 public:
  CertifiedReal() : CertifiedReal(64) {}

  explicit CertifiedReal(mpfr_prec_t prec) {
    if (prec < 8) throw std::invalid_argument("precision too small");
    mpfr_init2(mid_, prec);
    mpfr_set_zero(mid_, 1);
    mpfr_init2(rad_, detail::kRadiusPrec);
    mpfr_set_zero(rad_, 1);
  }

  CertifiedReal(const CertifiedReal& o) {
    mpfr_init2(mid_, mpfr_get_prec(o.mid_));
    mpfr_set(mid_, o.mid_, MPFR_RNDN);
    mpfr_init2(rad_, detail::kRadiusPrec);
    mpfr_set(rad_, o.rad_, MPFR_RNDU);
  }

  CertifiedReal(CertifiedReal&& o) noexcept {
    mpfr_init2(mid_, 8);
    mpfr_init2(rad_, 8);
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
  }

  CertifiedReal& operator=(const CertifiedReal& o) {
    if (this != &o) {
      mpfr_set_prec(mid_, mpfr_get_prec(o.mid_));
      mpfr_set(mid_, o.mid_, MPFR_RNDN);
      mpfr_set(rad_, o.rad_, MPFR_RNDU);
    }
    return *this;
  }

  CertifiedReal& operator=(CertifiedReal&& o) noexcept {
    mpfr_swap(mid_, o.mid_);
    mpfr_swap(rad_, o.rad_);
    return *this;
  }

  ~CertifiedReal() {
    mpfr_clear(mid_);
    mpfr_clear(rad_);
  }

  static CertifiedReal from_long(long v, mpfr_prec_t prec) {
    CertifiedReal r(prec);
    int t = mpfr_set_si(r.mid_, v, MPFR_RNDN);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  static CertifiedReal from_integer(const mpz_class& v, mpfr_prec_t prec) {
    CertifiedReal r(prec);
    int t = mpfr_set_z(r.mid_, v.get_mpz_t(), MPFR_RNDN);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  static CertifiedReal from_rational(const mpq_class& v, mpfr_prec_t prec) {
    CertifiedReal r(prec);
    int t = mpfr_set_q(r.mid_, v.get_mpq_t(), MPFR_RNDN);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  // Ball covering an exact rational interval [lo, hi].
  static CertifiedReal from_interval(const mpq_class& lo, const mpq_class& hi,
                                     mpfr_prec_t prec) {
    if (lo > hi) throw std::invalid_argument("from_interval: lo > hi");
    CertifiedReal r = from_rational((lo + hi) / 2, prec);
    mpq_class half_width = (hi - lo) / 2;
    mpfr_t t;
    mpfr_init2(t, detail::kRadiusPrec);
    mpfr_set_q(t, half_width.get_mpq_t(), MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, t, MPFR_RNDU);
    mpfr_clear(t);
    return r;
  }

  mpfr_prec_t precision_bits() const { return mpfr_get_prec(mid_); }
  mpfr_srcptr midpoint() const { return mid_; }
  mpfr_srcptr radius() const { return rad_; }
  bool is_exact() const { return mpfr_zero_p(rad_); }

  // Exact rational endpoints (MPFR values convert to rationals losslessly).
  mpq_class lower() const {
    mpq_class m = to_mpq(mid_), r = to_mpq(rad_);
    return m - r;
  }
  mpq_class upper() const {
    mpq_class m = to_mpq(mid_), r = to_mpq(rad_);
    return m + r;
  }
  mpq_class radius_mpq() const { return to_mpq(rad_); }

  // +1 if the interval lies strictly above 0, -1 strictly below, 0 undecided.
  int certified_sign() const {
    if (mpfr_zero_p(rad_)) return mpfr_sgn(mid_);
    if (mpfr_sgn(mid_) > 0 && mpfr_cmpabs(mid_, rad_) > 0) return 1;
    if (mpfr_sgn(mid_) < 0 && mpfr_cmpabs(mid_, rad_) > 0) return -1;
    // borderline |mid| == rad: fall back to exact endpoints
    mpq_class lo = lower();
    if (sgn(lo) > 0) return 1;
    mpq_class hi = upper();
    if (sgn(hi) < 0) return -1;
    return 0;
  }

  bool contains(const mpq_class& v) const { return lower() <= v && v <= upper(); }
  bool certifies_le(const mpq_class& c) const { return upper() <= c; }
  bool certifies_ge(const mpq_class& c) const { return lower() >= c; }
  bool radius_le(const mpq_class& r) const { return radius_mpq() <= r; }

  bool overlaps(const CertifiedReal& o) const {
    return lower() <= o.upper() && o.lower() <= upper();
  }

  // True iff the interval contains exactly one integer; stores it in *out.
  bool unique_integer(mpz_class* out) const {
    mpq_class lo = lower(), hi = upper();
    mpz_class lo_ceil, hi_floor;
    mpz_cdiv_q(lo_ceil.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_fdiv_q(hi_floor.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    if (lo_ceil != hi_floor) return false;
    if (out) *out = lo_ceil;
    return true;
  }

  // Exact scaling by 2^e (no rounding in either component).
  CertifiedReal scaled_2exp(long e) const {
    CertifiedReal r(*this);
    mpfr_mul_2si(r.mid_, r.mid_, e, MPFR_RNDN);
    mpfr_mul_2si(r.rad_, r.rad_, e, MPFR_RNDU);
    return r;
  }

  std::string decimal(int significant_digits = 40) const {
    return format_mpfr(mid_, significant_digits);
  }
  std::string radius_decimal() const {
    if (mpfr_zero_p(rad_)) return "0";
    return format_mpfr(rad_, 3);
  }

  friend CertifiedReal operator+(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(result_prec(a, b));
    int t = mpfr_add(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  friend CertifiedReal operator-(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(result_prec(a, b));
    int t = mpfr_sub(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    mpfr_add(r.rad_, a.rad_, b.rad_, MPFR_RNDU);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  friend CertifiedReal operator-(const CertifiedReal& a) {
    CertifiedReal r(a);
    mpfr_neg(r.mid_, r.mid_, MPFR_RNDN);
    return r;
  }

  friend CertifiedReal operator*(const CertifiedReal& a, const CertifiedReal& b) {
    CertifiedReal r(result_prec(a, b));
    int t = mpfr_mul(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // rad = |a|*rb + |b|*ra + ra*rb, all rounded up
    mpfr_t am, bm, tmp;
    mpfr_init2(am, detail::kRadiusPrec);
    mpfr_init2(bm, detail::kRadiusPrec);
    mpfr_init2(tmp, detail::kRadiusPrec);
    mpfr_abs(am, a.mid_, MPFR_RNDU);  // |a.mid| rounded up to radius precision
    mpfr_abs(bm, b.mid_, MPFR_RNDU);
    mpfr_mul(r.rad_, am, b.rad_, MPFR_RNDU);
    mpfr_mul(tmp, bm, a.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, tmp, MPFR_RNDU);
    mpfr_mul(tmp, a.rad_, b.rad_, MPFR_RNDU);
    mpfr_add(r.rad_, r.rad_, tmp, MPFR_RNDU);
    mpfr_clears(am, bm, tmp, nullptr);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  friend CertifiedReal operator/(const CertifiedReal& a, const CertifiedReal& b) {
    // Requires the divisor interval to exclude zero.
    mpfr_t bl;  // lower bound of |b|
    mpfr_init2(bl, detail::kRadiusPrec);
    mpfr_abs(bl, b.mid_, MPFR_RNDD);
    if (!(mpfr_cmp(bl, b.rad_) > 0)) {
      mpfr_clear(bl);
      throw std::domain_error("division by an interval containing zero");
    }
    CertifiedReal r(result_prec(a, b));
    int t = mpfr_div(r.mid_, a.mid_, b.mid_, MPFR_RNDN);
    // |a/b - ma/mb| <= (ra*|mb| + rb*|ma|) / (|mb| * (|mb| - rb))
    mpfr_t am, bm, num, den, tmp;
    mpfr_init2(am, detail::kRadiusPrec);
    mpfr_init2(bm, detail::kRadiusPrec);
    mpfr_init2(num, detail::kRadiusPrec);
    mpfr_init2(den, detail::kRadiusPrec);
    mpfr_init2(tmp, detail::kRadiusPrec);
    mpfr_abs(am, a.mid_, MPFR_RNDU);
    mpfr_abs(bm, b.mid_, MPFR_RNDU);
    mpfr_mul(num, a.rad_, bm, MPFR_RNDU);
    mpfr_mul(tmp, b.rad_, am, MPFR_RNDU);
    mpfr_add(num, num, tmp, MPFR_RNDU);
    mpfr_sub(den, bl, b.rad_, MPFR_RNDD);
    mpfr_mul(den, den, bl, MPFR_RNDD);
    mpfr_div(r.rad_, num, den, MPFR_RNDU);
    mpfr_clears(am, bm, num, den, tmp, bl, nullptr);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  friend CertifiedReal abs(const CertifiedReal& a) {
    CertifiedReal r(a);
    mpfr_abs(r.mid_, r.mid_, MPFR_RNDN);
    return r;
  }

  friend CertifiedReal log(const CertifiedReal& a) {
    mpfr_t lo;
    mpfr_init2(lo, detail::kRadiusPrec);
    mpfr_sub(lo, a.mid_, a.rad_, MPFR_RNDD);
    if (!(mpfr_sgn(lo) > 0)) {
      mpfr_clear(lo);
      throw std::domain_error("log of an interval not strictly positive");
    }
    CertifiedReal r(a.precision_bits());
    int t = mpfr_log(r.mid_, a.mid_, MPFR_RNDN);
    // |log x - log ma| <= ra / lo  on [lo, hi]
    mpfr_div(r.rad_, a.rad_, lo, MPFR_RNDU);
    mpfr_clear(lo);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  friend CertifiedReal sqrt(const CertifiedReal& a) {
    mpfr_t lo;
    mpfr_init2(lo, detail::kRadiusPrec);
    mpfr_sub(lo, a.mid_, a.rad_, MPFR_RNDD);
    if (!(mpfr_sgn(lo) > 0)) {
      mpfr_clear(lo);
      throw std::domain_error("sqrt of an interval not strictly positive");
    }
    CertifiedReal r(a.precision_bits());
    int t = mpfr_sqrt(r.mid_, a.mid_, MPFR_RNDN);
    // |sqrt x - sqrt ma| <= ra / (2 sqrt lo)
    mpfr_t sq;
    mpfr_init2(sq, detail::kRadiusPrec);
    mpfr_sqrt(sq, lo, MPFR_RNDD);
    mpfr_mul_2si(sq, sq, 1, MPFR_RNDD);
    mpfr_div(r.rad_, a.rad_, sq, MPFR_RNDU);
    mpfr_clears(sq, lo, nullptr);
    if (t != 0) r.add_ulp_error();
    return r;
  }

  friend CertifiedReal pow_int(const CertifiedReal& base, long e) {
    if (e == 0) return from_long(1, base.precision_bits());
    if (e < 0) return from_long(1, base.precision_bits()) / pow_int(base, -e);
    CertifiedReal acc = base;
    int top = 63;
    while (top > 0 && ((static_cast<unsigned long>(e) >> top) & 1) == 0) --top;
    for (int i = top - 1; i >= 0; --i) {
      acc = acc * acc;
      if ((static_cast<unsigned long>(e) >> i) & 1) acc = acc * base;
    }
    return acc;
  }

  // Distance to the nearest integer, as a certified interval in [0, 1/2].
  friend CertifiedReal nearest_int_distance(const CertifiedReal& x) {
    static const mpq_class kQuarter(1, 4), kHalf(1, 2);
    if (!(x.radius_mpq() < kQuarter))
      throw std::domain_error("radius too large to certify a nearest integer");
    mpz_class n0;
    mpfr_get_z(n0.get_mpz_t(), x.mid_, MPFR_RNDN);
    CertifiedReal d(x.precision_bits() + 4);
    int t = mpfr_sub_z(d.mid_, x.mid_, n0.get_mpz_t(), MPFR_RNDN);
    if (t != 0) throw std::logic_error("nearest_int_distance: inexact subtraction");
    mpfr_abs(d.mid_, d.mid_, MPFR_RNDN);
    mpfr_set(d.rad_, x.rad_, MPFR_RNDU);
    mpq_class dq = to_mpq(d.mid_), rq = to_mpq(d.rad_);
    mpq_class hi = dq + rq;
    if (hi <= kHalf) return d;
    // The interval straddles a half-integer: values past it fold back, so the
    // certified distance range is [min(dq - rq, 1 - hi) clamped at 0, 1/2].
    mpq_class lo = dq - rq, folded = 1 - hi;
    if (folded < lo) lo = folded;
    if (lo < 0) lo = 0;
    return from_interval(lo, kHalf, x.precision_bits());
  }

 private:
  static mpfr_prec_t result_prec(const CertifiedReal& a, const CertifiedReal& b) {
    return std::max(a.precision_bits(), b.precision_bits());
  }

  static mpq_class to_mpq(mpfr_srcptr v) {
    mpq_class q;
    if (!mpfr_zero_p(v)) mpfr_get_q(q.get_mpq_t(), v);
    return q;
  }

  static std::string format_mpfr(mpfr_srcptr v, int digits) {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits - 1, v);
    std::string out(s);
    mpfr_free_str(s);
    return out;
  }

  // Account for the rounding error of the last RNDN operation on mid_:
  // at most one ulp = 2^(exp - prec).
  void add_ulp_error() {
    if (mpfr_zero_p(mid_)) throw std::logic_error("ulp error on zero midpoint");
    mpfr_t u;
    mpfr_init2(u, detail::kRadiusPrec);
    mpfr_set_ui_2exp(u, 1, mpfr_get_exp(mid_) - precision_bits(), MPFR_RNDU);
    mpfr_add(rad_, rad_, u, MPFR_RNDU);
    mpfr_clear(u);
  }

  mpfr_t mid_;
  mpfr_t rad_;
};

enum class Constant { Two, Sqrt2, Alpha, Beta, Log2, LogAlpha, LogSqrt2 };

inline const char* constant_name(Constant c) {
  switch (c) {
    case Constant::Two: return "two";
    case Constant::Sqrt2: return "sqrt2";
    case Constant::Alpha: return "alpha";
    case Constant::Beta: return "beta";
    case Constant::Log2: return "log2";
    case Constant::LogAlpha: return "log_alpha";
    case Constant::LogSqrt2: return "log_sqrt2";
  }
  throw std::invalid_argument("unknown constant");
}

namespace detail {

inline CertifiedReal compute_constant(Constant c, mpfr_prec_t prec) {
  switch (c) {
    case Constant::Two:
      return CertifiedReal::from_long(2, prec);
    case Constant::Sqrt2:
      return sqrt(CertifiedReal::from_long(2, prec));
    case Constant::Alpha:
      return CertifiedReal::from_long(1, prec) + compute_constant(Constant::Sqrt2, prec);
    case Constant::Beta:
      return CertifiedReal::from_long(1, prec) - compute_constant(Constant::Sqrt2, prec);
    case Constant::Log2: {
      CertifiedReal r = CertifiedReal::from_long(2, prec);
      return log(r);
    }
    case Constant::LogAlpha:
      return log(compute_constant(Constant::Alpha, prec));
    case Constant::LogSqrt2:
      // log sqrt(2) = (1/2) log 2, an exact halving
      return compute_constant(Constant::Log2, prec).scaled_2exp(-1);
  }
  throw std::invalid_argument("unknown constant");
}

inline std::shared_mutex& constant_cache_mutex() {
  static std::shared_mutex m;
  return m;
}

inline std::map<std::pair<int, long>, CertifiedReal>& constant_cache() {
  static std::map<std::pair<int, long>, CertifiedReal> cache;
  return cache;
}

}  // namespace detail

// Memoized named constants; safe under concurrent lookup/insert.
inline CertifiedReal named_constant(Constant c, mpfr_prec_t prec) {
  std::pair<int, long> key{static_cast<int>(c), static_cast<long>(prec)};
  {
    std::shared_lock lock(detail::constant_cache_mutex());
    auto it = detail::constant_cache().find(key);
    if (it != detail::constant_cache().end()) return it->second;
  }
  CertifiedReal value = detail::compute_constant(c, prec);
  std::unique_lock lock(detail::constant_cache_mutex());
  return detail::constant_cache().emplace(key, std::move(value)).first->second;
}

// A real number as a reusable handle: evaluate at any requested precision.
using RealExpr = std::function<CertifiedReal(mpfr_prec_t)>;

inline RealExpr constant_expr(Constant c) {
  return [c](mpfr_prec_t prec) { return named_constant(c, prec); };
}

// Evaluate with escalating precision until the radius drops below target.
inline CertifiedReal refine(const RealExpr& expr, const mpq_class& target_radius,
                            const PrecisionPolicy& policy) {
  policy.validate();
  if (!(target_radius > 0)) throw std::invalid_argument("target radius must be positive");
  mpfr_prec_t prec = policy.initial_bits;
  for (;;) {
    CertifiedReal v = expr(prec);
    if (v.radius_le(target_radius)) return v;
    if (prec >= policy.max_bits)
      throw PrecisionExhausted("refine: target radius unreachable at max precision");
    prec = policy.next(prec);
  }
}

inline CertifiedReal refine(const RealExpr& expr, double target_radius,
                            const PrecisionPolicy& policy) {
  return refine(expr, mpq_class(target_radius), policy);
}

}  // namespace pellpow2
