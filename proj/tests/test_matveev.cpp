#include "pellpow2/matveev.hpp"

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"

using namespace pellpow2;
using oracles::MpqInterval;

namespace {

// Interval fully inside the ball => the ball contains the bracketed value.
bool ball_encloses(const CertifiedReal& b, const MpqInterval& iv) {
  return b.lower() <= iv.lo && iv.hi <= b.upper();
}

// Ball fully inside the interval => the ball's value matches the (wider)
// frozen decimal window.
bool ball_within(const CertifiedReal& b, const MpqInterval& iv) {
  return iv.lo <= b.lower() && b.upper() <= iv.hi;
}

const char* const kHAlpha = "0.440686793509771512616304662489896154514080164";
const char* const kLogSqrt2 = "0.346573590279972654708616060729088284037750067";
const char* const kLog2Sqrt2 = "1.03972077083991796412584818218726485211325020";
const char* const kLog4Sqrt2 = "1.73286795139986327354308030364544142018875034";
const char* const kLogAlpha = "0.881373587019543025232609324979792309028160328";

MpqInterval sum(const MpqInterval& a, const MpqInterval& b) {
  return {a.lo + b.lo, a.hi + b.hi};
}

MpqInterval scale(const MpqInterval& a, long k) {
  return k >= 0 ? MpqInterval{k * a.lo, k * a.hi} : MpqInterval{k * a.hi, k * a.lo};
}

}  // namespace

TEST(Heights, NamedValues) {
  CertifiedReal h2 = height_of_named(NamedEta::Two);
  EXPECT_TRUE(ball_encloses(h2, oracles::log2_interval(160)));

  CertifiedReal ha = height_of_named(NamedEta::Alpha);
  EXPECT_TRUE(ball_within(ha, oracles::decimal_ball(kHAlpha, 44)));
  EXPECT_TRUE(ha.scaled_2exp(1).certifies_le(mpq_class(9, 10)));

  CertifiedReal hs = height_of_named(NamedEta::Sqrt2);
  EXPECT_TRUE(ball_within(hs, oracles::decimal_ball(kLogSqrt2, 44)));
  EXPECT_TRUE(hs.scaled_2exp(1).certifies_le(mpq_class(7, 10)));
}

TEST(Heights, Eta3UpperBound) {
  EXPECT_TRUE(ball_within(height_bound_eta3({0}), oracles::decimal_ball(kLog2Sqrt2, 43)));
  EXPECT_TRUE(ball_within(
      height_bound_eta3({1}),
      sum(oracles::decimal_ball(kLog2Sqrt2, 43), oracles::decimal_ball(kHAlpha, 43))));
  EXPECT_TRUE(ball_within(
      height_bound_eta3({1, 2}),
      sum(oracles::decimal_ball(kLog4Sqrt2, 43), scale(oracles::decimal_ball(kHAlpha, 43), 3))));

  EXPECT_THROW(height_bound_eta3({}), std::invalid_argument);
  EXPECT_THROW(height_bound_eta3({1, 2, 3}), std::invalid_argument);
  EXPECT_THROW(height_bound_eta3({-1}), std::invalid_argument);
}

TEST(Heights, A3Parameter) {
  CertifiedReal at0 = a3_parameter({0});
  EXPECT_TRUE(at0.is_exact());
  EXPECT_TRUE(at0.contains(mpq_class(3)));

  CertifiedReal at00 = a3_parameter({0, 0});
  EXPECT_TRUE(at00.is_exact());
  EXPECT_TRUE(at00.contains(mpq_class(4)));

  MpqInterval expected5 =
      sum(MpqInterval{mpq_class(3), mpq_class(3)}, scale(oracles::decimal_ball(kLogAlpha, 43), 5));
  EXPECT_TRUE(ball_within(a3_parameter({5}), expected5));

  // The dominance certifications hold across the whole shift range the
  // pipeline will use (sampled pairs; singles exhaustively).
  for (long x = 0; x <= 140; ++x) EXPECT_NO_THROW(a3_parameter({x}));
  for (long x1 : {0L, 1L, 2L, 63L, 130L})
    for (long x2 : {0L, 1L, 77L, 140L, 150L})
      EXPECT_NO_THROW(a3_parameter({x1, x2}));
}

TEST(Heights, Eta3Value) {
  // g(0) = sqrt2/2, g(1) = 1, g(2) = alpha/2.
  CertifiedReal g0 = eta3_value({0});
  MpqInterval s2 = oracles::sqrt2_interval(40);
  EXPECT_TRUE(ball_within(g0, {s2.lo / 2, s2.hi / 2}));

  CertifiedReal g1 = eta3_value({1});
  EXPECT_TRUE(g1.contains(mpq_class(1)));
  EXPECT_TRUE(g1.radius_le(mpq_class(mpz_class(1), mpz_class("100000000000000000000000000000000"))));

  CertifiedReal g2 = eta3_value({2});
  EXPECT_TRUE(ball_within(g2, {(1 + s2.lo) / 2, (1 + s2.hi) / 2}));

  // phi(x1, x2) lies strictly between sqrt2/3 and sqrt2 for all shifts.
  for (long x1 : {0L, 1L, 5L, 130L})
    for (long x2 : {0L, 2L, 140L}) {
      CertifiedReal v = eta3_value({x1, x2});
      EXPECT_TRUE(v.certifies_ge(mpq_class(47, 100)));
      EXPECT_TRUE(v.certifies_le(mpq_class(142, 100)));
    }
}

TEST(MatveevExponent, ExactInstance) {
  // t = 1, D = 1, A = [1], B = 1: E = 1.4 * 30^4 = 1134000.
  MatveevInstance inst;
  inst.t = 1;
  inst.degree_D = 1;
  inst.A = {CertifiedReal::from_long(1, 192)};
  inst.B = CertifiedReal::from_long(1, 192);
  CertifiedReal e = matveev_exponent(inst);
  EXPECT_TRUE(e.contains(mpq_class(1134000)));
  EXPECT_TRUE(e.radius_le(mpq_class(mpz_class(1), mpz_class("1000000000000000000000000000000"))));

  // With B = e the factor (1 + log B) is 2 and E doubles to 2268000.
  MpqInterval euler = oracles::decimal_ball(
      "2.71828182845904523536028747135266249775724709369995", 49);
  inst.B = CertifiedReal::from_interval(euler.lo, euler.hi, 192);
  CertifiedReal e2 = matveev_exponent(inst);
  EXPECT_TRUE(e2.contains(mpq_class(2268000)));
  EXPECT_TRUE(e2.radius_le(mpq_class(1, 1000000)));
}

TEST(MatveevExponent, InstanceValidation) {
  MatveevInstance inst;
  inst.t = 1;
  inst.degree_D = 1;
  inst.A = {CertifiedReal::from_rational(mpq_class(1, 10), 192)};
  inst.B = CertifiedReal::from_long(2, 192);
  EXPECT_THROW(matveev_exponent(inst), std::invalid_argument);

  inst.A = {CertifiedReal::from_long(1, 192)};
  inst.B = CertifiedReal::from_rational(mpq_class(1, 2), 192);
  EXPECT_THROW(matveev_exponent(inst), std::invalid_argument);

  inst.B = CertifiedReal::from_long(2, 192);
  inst.t = 2;  // |A| = 1
  EXPECT_THROW(matveev_exponent(inst), std::invalid_argument);
  inst.t = 1;
  inst.degree_D = 0;
  EXPECT_THROW(matveev_exponent(inst), std::invalid_argument);
}

TEST(MatveevExponent, MonotoneInParameters) {
  std::mt19937_64 rng(424242);
  std::uniform_int_distribution<int> tdist(1, 3), ddist(1, 2);
  std::uniform_int_distribution<long> num(16, 500), bnum(1, 100);
  for (int iter = 0; iter < 200; ++iter) {
    MatveevInstance inst;
    inst.t = tdist(rng);
    inst.degree_D = ddist(rng);
    for (int i = 0; i < inst.t; ++i)
      inst.A.push_back(CertifiedReal::from_rational(mpq_class(num(rng), 100), 192));
    inst.B = CertifiedReal::from_long(bnum(rng), 192);
    CertifiedReal base = matveev_exponent(inst);

    MatveevInstance bumpedA = inst;
    std::uniform_int_distribution<int> pick(0, inst.t - 1);
    int i = pick(rng);
    bumpedA.A[i] = inst.A[i] + CertifiedReal::from_rational(mpq_class(1, 4), 192);
    EXPECT_GT(matveev_exponent(bumpedA).lower(), base.upper());

    MatveevInstance bumpedB = inst;
    bumpedB.B = inst.B + CertifiedReal::from_long(1, 192);
    EXPECT_GT(matveev_exponent(bumpedB).lower(), base.upper());
  }
}

TEST(BoundChain, CoefficientsWithinStatedCaps) {
  BoundChain chain = bound_chain();

  EXPECT_EQ(chain.K1.quantity, ChainQuantity::NMinusM);
  EXPECT_EQ(chain.K1.log_power_k, 1);
  EXPECT_GT(chain.K1.coefficient_C.certified_sign(), 0);
  EXPECT_TRUE(chain.K1.coefficient_C.certifies_le(mpq_class(mpz_class("1800000000000"))));

  EXPECT_EQ(chain.K2.quantity, ChainQuantity::NMinusEll);
  EXPECT_EQ(chain.K2.log_power_k, 2);
  EXPECT_TRUE(chain.K2.coefficient_C.certifies_le(
      mpq_class(mpz_class("5000000000000000000000000"))));

  EXPECT_EQ(chain.K3.quantity, ChainQuantity::N);
  EXPECT_EQ(chain.K3.log_power_k, 3);
  EXPECT_TRUE(chain.K3.coefficient_C.certifies_le(
      mpq_class(mpz_class("17000000000000000000000000000000000000"))));

  EXPECT_FALSE(chain.certifications.empty());
}

TEST(BoundChain, CoefficientsMatchOracleValues) {
  BoundChain chain = bound_chain();

  MpqInterval k1{oracles::decimal_to_mpq("1710623737051.26") - mpq_class(1, 10),
                 oracles::decimal_to_mpq("1710623737051.27") + mpq_class(1, 10)};
  EXPECT_TRUE(ball_within(chain.K1.coefficient_C, k1));

  mpq_class k2mid(mpz_class("4276559342629657435900000"));
  MpqInterval k2{k2mid - mpz_class("100000000"), k2mid + mpz_class("100000000")};
  EXPECT_TRUE(ball_within(chain.K2.coefficient_C, k2));

  mpq_class k3mid(mpz_class("12130382069570609441000000000000000000"));
  MpqInterval k3{k3mid - mpz_class("10000000000000000000000"),
                 k3mid + mpz_class("10000000000000000000000")};
  EXPECT_TRUE(ball_within(chain.K3.coefficient_C, k3));
}

TEST(SolveLogBound, Examples) {
  EXPECT_EQ(solve_log_bound(CertifiedReal::from_long(10, 192), 0), mpz_class(10));

  MpqInterval euler = oracles::decimal_ball(
      "2.71828182845904523536028747135266249775724709369995", 49);
  mpz_class ne = solve_log_bound(CertifiedReal::from_interval(euler.lo, euler.hi, 192), 1);
  EXPECT_LE(ne, mpz_class(6));
  EXPECT_GE(ne, mpz_class(3));

  mpz_class cap(mpz_class("17000000000000000000000000000000000000"));
  mpz_class n = solve_log_bound(CertifiedReal::from_integer(cap, 256), 3);
  EXPECT_GT(n, mpz_class("16760202770000000000000000000000000000000000"));
  EXPECT_LT(n, mpz_class("16760202790000000000000000000000000000000000"));
  // Within a factor 1.05 of 1.7e43 either way.
  mpz_class ref(mpz_class("17000000000000000000000000000000000000000000"));
  EXPECT_LT(n * 100, ref * 105);
  EXPECT_LT(ref * 100, n * 105);

  // Independent substitution check: C (log N)^3 < N and C (log 2N)^3 < 2N.
  for (const mpz_class& point : {n, mpz_class(2 * n)}) {
    MpqInterval lg = oracles::log_interval_big(mpq_class(point), 120);
    EXPECT_LT(mpq_class(cap) * lg.hi * lg.hi * lg.hi, mpq_class(point));
  }
}

TEST(SolveLogBound, ChainAbsoluteBound) {
  BoundChain chain = bound_chain();
  mpz_class n_abs = solve_log_bound(chain.K3.coefficient_C, 3);
  EXPECT_LE(n_abs, mpz_class("18000000000000000000000000000000000000000000"));
  EXPECT_GT(n_abs, mpz_class("11824000000000000000000000000000000000000000"));
  EXPECT_LT(n_abs, mpz_class("11844000000000000000000000000000000000000000"));
  // Lemma-region check used by the pipeline: N_abs < M/2 with M = 4e43.
  EXPECT_LT(2 * n_abs, mpz_class("40000000000000000000000000000000000000000000"));
}

TEST(SolveLogBound, DomainErrors) {
  EXPECT_THROW(solve_log_bound(CertifiedReal::from_long(10, 192), -1),
               std::invalid_argument);
  EXPECT_THROW(solve_log_bound(CertifiedReal::from_long(0, 192), 1),
               std::invalid_argument);
  EXPECT_THROW(solve_log_bound(CertifiedReal::from_long(-3, 192), 2),
               std::invalid_argument);
}

TEST(Nonvanishing, AllThreeFormsCertify) {
  for (LinearForm f : {LinearForm::Lambda1, LinearForm::Lambda2, LinearForm::Lambda3}) {
    NonvanishingResult r = nonvanishing_guard(f);
    EXPECT_TRUE(r.certified) << linear_form_name(f);
    EXPECT_FALSE(r.note.empty());
  }
}
