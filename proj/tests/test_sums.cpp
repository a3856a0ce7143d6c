#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "mpfr_oracle.hpp"
#include "oracle/frozen_values.hpp"
#include "ostrowski/error.hpp"
#include "ostrowski/sums.hpp"
#include "suite.hpp"

using namespace ostrowski;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

cplx e(double x) { return std::polar(1.0, 2 * kPi * x); }

const AlphaContext& ctx_for(const std::string& key) {
  static std::map<std::string, std::unique_ptr<AlphaContext>> cache;
  auto& slot = cache[key];
  if (!slot) slot = std::make_unique<AlphaContext>(suite::by_key(key));
  return *slot;
}

}  // namespace

TEST(TSum, SingleTermIsOne) {
  for (const auto& n : suite::all()) {
    const AlphaContext& c = ctx_for(n.key);
    EXPECT_EQ(t_sum_naive(c, 1), cplx(1, 0));
    const SumReport r = t_sum_closed(c, 1);
    EXPECT_EQ(r.T, cplx(1, 0));
    EXPECT_EQ(r.S1, cplx(0, 0));
    EXPECT_EQ(r.S2, cplx(0, 0));
  }
}

TEST(TSum, TwoTermsGolden) {
  const AlphaContext& c = ctx_for("phi");
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const cplx want = 1.0 + (e(phi) + 1.0) / 2.0;
  EXPECT_LT(std::abs(t_sum_naive(c, 2) - want), 1e-15);
  EXPECT_LT(std::abs(t_sum_closed(c, 2).T - want), 1e-15);
}

TEST(TSum, MatchesFrozenNaive) {
  for (const auto& t : frozen::kT) {
    const AlphaContext& c = ctx_for(t.alpha);
    const cplx want(t.re, t.im);
    EXPECT_LT(std::abs(t_sum_naive(c, t.M) - want), 1e-12) << t.alpha << " M=" << t.M;
    EXPECT_LT(std::abs(t_sum_closed(c, t.M).T - want), 1e-12) << t.alpha << " M=" << t.M;
  }
}

TEST(TSum, AgreesWithMpfrOracle) {
  for (const std::uint64_t M : {17ull, 40ull, 100ull}) {
    oracle::MpfrAlpha ref(AlphaSpec::sqrt(3));
    const auto want = ref.t_naive(M);
    const cplx got = t_sum_closed(ctx_for("sqrt3"), M).T;
    EXPECT_LT(std::abs(got - cplx(static_cast<double>(want.real()), static_cast<double>(want.imag()))), 1e-12);
  }
}

TEST(TSum, NaiveAndClosedAgree) {
  EXPECT_LT(std::abs(t_sum_naive(ctx_for("sqrt2"), 50) - t_sum_closed(ctx_for("sqrt2"), 50).T), 1e-10);
  EXPECT_LT(std::abs(t_sum_naive(ctx_for("phi"), 5) - t_sum_closed(ctx_for("phi"), 5).T), 1e-10);
}

TEST(TSum, SplitIdentity) {
  for (const auto& n : suite::all()) {
    for (const std::uint64_t M : {2ull, 3ull, 10ull, 89ull, 500ull, 2048ull, 9999ull}) {
      const SumReport r = t_sum_closed(ctx_for(n.key), M);
      EXPECT_LT(std::abs(r.T - (1.0 + r.S1 - r.S2)), 1e-10) << n.key << " M=" << M;
    }
  }
}

TEST(TSum, BudgetIsEnforced) {
  const Budget small{1000};
  EXPECT_THROW(t_sum_naive(ctx_for("phi"), 32, small), Error);
  EXPECT_NO_THROW(t_sum_naive(ctx_for("phi"), 31, small));
  EXPECT_THROW(t_sum_closed(ctx_for("phi"), 1001, small), Error);
}

TEST(S2Cot, SingleTerm) {
  const double phi = (1 + std::sqrt(5.0)) / 2;
  const cplx want(-0.25, -0.25 / std::tan(kPi * phi));
  EXPECT_LT(std::abs(s2_via_cot(ctx_for("phi"), 2) - want), 1e-14);
}

TEST(S2Cot, MatchesFrozenAndDirect) {
  for (const auto& s : frozen::kS2) {
    const cplx want(s.re, s.im);
    EXPECT_LT(std::abs(s2_via_cot(ctx_for(s.alpha), s.M) - want), 1e-12) << s.alpha << s.M;
    EXPECT_LT(std::abs(t_sum_closed(ctx_for(s.alpha), s.M).S2 - want), 1e-12) << s.alpha << s.M;
  }
  for (const auto& n : suite::all()) {
    for (std::uint64_t M = 2; M <= 2048; M = M * 3 + 1) {
      const cplx a = s2_via_cot(ctx_for(n.key), M);
      const cplx b = t_sum_closed(ctx_for(n.key), M).S2;
      EXPECT_LT(std::abs(a - b), 1e-10) << n.key << " M=" << M;
      EXPECT_DOUBLE_EQ(a.real(), -(M - 1.0) / (2.0 * M));
    }
  }
}

TEST(CotRemainder, Examples) {
  EXPECT_NEAR(cot_remainder(1e-12), 0.0, 1e-20);
  EXPECT_NEAR(cot_remainder(0.5), -1.0, 1e-15);
  EXPECT_NEAR(cot_remainder(0.25), frozen::kCotRemainderQuarter, 1e-15);
  EXPECT_THROW(cot_remainder(0.0), Error);
  EXPECT_THROW(cot_remainder(0.51), Error);
  EXPECT_THROW(cot_remainder(-0.1), Error);
}

TEST(CotRemainder, RangeAndMonotoneOnGrid) {
  double prev = 0.0;
  for (int k = 1; k <= 10000; ++k) {
    const double t = 0.5 * k / 10000.0;
    const double v = cot_remainder(t);
    EXPECT_GT(v, -1.0 - 1e-15);
    EXPECT_LE(v, 0.0);
    EXPECT_LE(v, prev);
    prev = v;
  }
  // Across the series/direct switch.
  const double u = 1e-3 / kPi;
  EXPECT_NEAR(cot_remainder(u * (1 - 1e-9)), cot_remainder(u * (1 + 1e-9)), 1e-12);
}

TEST(RecipSumTest, Examples) {
  EXPECT_NEAR(recip_sum(ctx_for("phi"), 1).value, -2.6180339887498949, 1e-14);
  EXPECT_NEAR(recip_sum(ctx_for("phi"), 2).value, 1.6180339887498949, 1e-14);
  for (const auto& r : frozen::kRecip) {
    const RecipSum got = recip_sum(ctx_for(r.alpha), r.m);
    EXPECT_NEAR(got.value, r.value, 1e-9 * std::max(1.0, std::abs(r.value))) << r.alpha << " m=" << r.m;
  }
}

TEST(RecipSumTest, MaxTermAndMpfr) {
  oracle::MpfrAlpha ref(suite::cf012());
  const RecipSum got = recip_sum(ctx_for("cf012"), 5000);
  EXPECT_NEAR(got.value, static_cast<double>(ref.recip(5000)), 1e-9 * std::abs(got.value));
  double mx = 0;
  for (std::uint64_t k = 1; k <= 5000; ++k) mx = std::max(mx, std::abs(1.0 / ref.signed_frac(k)));
  EXPECT_NEAR(got.max_term, mx, mx * 1e-14);
}

TEST(SegmentPlanTest, Examples) {
  const auto& phi = ctx_for("phi").cf();
  const SegmentPlan p = segment_plan(10, phi);
  ASSERT_EQ(p.segments.size(), 2u);
  EXPECT_EQ(p.segments[0], (Segment{2, 0, 0, 2}));
  EXPECT_EQ(p.segments[1], (Segment{5, 0, 2, 8}));
  const auto& s2 = ctx_for("sqrt2").cf();
  for (std::size_t j = 1; j < 12; ++j) {
    const SegmentPlan q = segment_plan(s2.q(j).get_ui(), s2);
    ASSERT_EQ(q.segments.size(), 1u);
    EXPECT_EQ(q.segments[0], (Segment{j, 0, 0, s2.q(j).get_ui()}));
  }
  EXPECT_THROW(segment_plan(phi.q(phi.last_index()).get_ui() + 1, phi), Error);
}

TEST(SegmentPlanTest, PartitionCoversExactly) {
  for (const char* key : {"phi", "sqrt2"}) {
    const auto& cf = ctx_for(key).cf();
    const std::uint64_t limit = cf.q(10).get_ui();
    for (std::uint64_t m = 1; m < limit; ++m) {
      const SegmentPlan p = segment_plan(m, cf);
      std::uint64_t next = 0;
      for (std::size_t s = 0; s < p.segments.size(); ++s) {
        const Segment& g = p.segments[s];
        ASSERT_EQ(g.start, next) << key << " m=" << m;
        ASSERT_EQ(g.length, cf.q(g.level).get_ui());
        if (s > 0 && p.segments[s - 1].level == g.level) ASSERT_EQ(p.segments[s - 1].c + 1, g.c);
        next = g.end();
      }
      ASSERT_EQ(next, m);
    }
  }
}

TEST(SegmentSumTest, Recomposition) {
  std::mt19937_64 rng(3);
  for (const char* key : {"phi", "sqrt2", "stress_i"}) {
    const AlphaContext& c = ctx_for(key);
    const std::uint64_t limit = c.cf().q(8).get_ui();
    for (int t = 0; t < 50; ++t) {
      const std::uint64_t m = 1 + rng() % (limit - 1);
      double total = 0;
      for (const Segment& g : segment_plan(m, c.cf()).segments) total += segment_sum(c, g);
      const double want = recip_sum(c, m).value;
      EXPECT_NEAR(total, want, 1e-8 * std::max(1.0, std::abs(want))) << key << " m=" << m;
    }
  }
  const double first = segment_sum(ctx_for("phi"), Segment{2, 0, 0, 2});
  EXPECT_NEAR(first, 1.6180339887498949, 1e-14);
}

TEST(ExceptionalIndicesTest, SqrtTwoExample) {
  const auto& cf = ctx_for("sqrt2").cf();
  const SegmentAnalysis a = exceptional_indices(Segment{2, 0, 0, 5}, cf);
  EXPECT_EQ(a.k_plus, 3u);
  EXPECT_EQ(a.k_minus, 2u);
  EXPECT_EQ(a.k_zero, 5u);
  EXPECT_FALSE(a.degenerate);
  // 5 is odd: residues 2 and 3 of k*7 mod 5 give k = 1 and k = 4.
  EXPECT_EQ(a.half_indices, (std::vector<std::uint64_t>{1, 4}));
}

TEST(ExceptionalIndicesTest, KMinusFromDeterminant) {
  for (const auto& n : suite::bounded()) {
    const auto& cf = ctx_for(n.key).cf();
    for (std::size_t i = 2; i <= 20; ++i) {
      const std::uint64_t q = cf.q(i).get_ui();
      const std::uint64_t prev = cf.q(i - 1).get_ui();
      const SegmentAnalysis a = exceptional_indices(Segment{i, 0, 0, q}, cf);
      const std::uint64_t want = i % 2 == 0 ? prev : q - prev;
      EXPECT_EQ(a.k_minus, want) << n.key << " i=" << i;
      EXPECT_EQ(a.k_plus, q - want) << n.key << " i=" << i;
    }
  }
}

TEST(ExceptionalIndicesTest, ShiftLawAndOneMultiplePerSegment) {
  for (const auto& n : suite::all()) {
    const auto& cf = ctx_for(n.key).cf();
    for (std::size_t i = 1; i <= 12 && i + 1 < cf.size(); ++i) {
      if (!cf.q(i).fits_ulong_p()) break;
      const std::uint64_t q = cf.q(i).get_ui();
      if (q < 2) continue;
      const std::uint64_t reps = std::min<std::uint64_t>(cf.a(i + 1).get_ui(), 64);
      const SegmentAnalysis base = exceptional_indices(Segment{i, 0, 0, q}, cf);
      for (std::uint64_t c = 0; c < reps; ++c) {
        const Segment g{i, c, c * q, q};
        const SegmentAnalysis a = exceptional_indices(g, cf);
        EXPECT_EQ(a.k_plus, base.k_plus + c * q);
        EXPECT_EQ(a.k_minus, base.k_minus + c * q);
        EXPECT_EQ(a.k_zero, (c + 1) * q);
        if (q <= 100000) {
          int multiples = 0;
          for (std::uint64_t k = g.start + 1; k <= g.end(); ++k) multiples += k % q == 0;
          EXPECT_EQ(multiples, 1);
        }
        const Integer pk = cf.p(i) * Integer(static_cast<unsigned long>(a.k_plus)) - 1;
        EXPECT_TRUE(mpz_divisible_ui_p(pk.get_mpz_t(), q));
      }
    }
  }
}

TEST(ExceptionalIndicesTest, DegenerateModuli) {
  const auto& cf = ctx_for("phi").cf();
  EXPECT_THROW(exceptional_indices(Segment{1, 0, 0, 1}, cf), Error);
  const SegmentAnalysis a = exceptional_indices(Segment{3, 0, 0, 3}, cf);
  EXPECT_TRUE(a.degenerate);
  EXPECT_EQ(a.excluded, (std::vector<std::uint64_t>{1, 2, 3}));
  EXPECT_THROW(exceptional_closed_forms(ctx_for("phi"), Segment{3, 0, 0, 3}), Error);
}

TEST(CkValuesTest, ReconstructionAndRange) {
  for (const auto& n : suite::all()) {
    const AlphaContext& c = ctx_for(n.key);
    oracle::MpfrAlpha ref(n.spec);
    for (std::size_t i = 3; i <= 9 && i + 1 < c.cf().size(); ++i) {
      const std::uint64_t q = c.q64(i);
      if (q > 20000) break;
      const double xi = approximate(convergent_error(c.cf(), i).xi);
      const double q_next = c.cf().q(i + 1).get_d();
      const SegmentAnalysis a = ck_values(c, Segment{i, 0, 0, q});
      for (const CkValue& v : a.ck_values) {
        const double np = static_cast<double>(v.n_prime);
        ASSERT_GE(std::abs(v.n_prime), 2);
        ASSERT_LT(std::abs(v.C), 2.0);
        const double rebuilt = q / np + v.C * v.k * xi * q / (np * np * q_next);
        const double direct = 1.0 / ref.signed_frac(v.k);
        ASSERT_LT(std::abs(rebuilt - direct), 1e-10 * std::abs(direct)) << n.key << " i=" << i << " k=" << v.k;
      }
    }
  }
}

TEST(CkValuesTest, SmallXGivesMinusOne) {
  const AlphaContext& c = ctx_for("phi");
  const SegmentAnalysis a = ck_values(c, Segment{20, 0, 0, c.q64(20)});
  // k = 1 is far from the ±1 residues here, so x is tiny.
  for (const CkValue& v : a.ck_values) {
    if (v.k == 1) EXPECT_NEAR(v.C, -1.0, 1e-3);
    EXPECT_NEAR(v.C, -1.0 / (1.0 + v.x), 1e-15);
  }
}

TEST(ExceptionalClosedFormsTest, MatchDirect) {
  const AlphaContext& c = ctx_for("sqrt2");
  const ExceptionalClosedForms f = exceptional_closed_forms(c, Segment{3, 0, 0, 12});
  EXPECT_TRUE(f.consistent);
  EXPECT_LT(f.max_relative_error, 1e-9);
  for (const auto& n : suite::all()) {
    const AlphaContext& d = ctx_for(n.key);
    for (std::size_t i = 2; i <= 14 && i + 1 < d.cf().size(); ++i) {
      const std::uint64_t q = d.q64(i);
      if (q < 4) continue;
      const std::uint64_t reps = std::min<std::uint64_t>(d.cf().a(i + 1).get_ui(), 16);
      for (std::uint64_t cc = 0; cc < reps; ++cc) {
        const ExceptionalClosedForms g = exceptional_closed_forms(d, Segment{i, cc, cc * q, q});
        EXPECT_LT(g.max_relative_error, 1e-9) << n.key << " i=" << i << " c=" << cc;
        const double xi = approximate(convergent_error(d.cf(), i).xi);
        if (xi > 0) {
          EXPECT_GT(g.plus_closed, 0.0);
          EXPECT_LT(g.plus_closed, static_cast<double>(q));
        }
      }
    }
  }
}
