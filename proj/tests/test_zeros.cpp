#include <gtest/gtest.h>

#include "dhzero/dh.hpp"
#include "dhzero/zeros.hpp"

using namespace dhzero;
using namespace dhzero::zeros;

namespace {
Complex cplx(const char* text, const PrecisionContext& ctx) { return parse_complex(text, ctx); }
Real dec(const char* text, const PrecisionContext& ctx) { return parse_decimal(text, ctx); }
}  // namespace

TEST(Scan, FindsOneBracketPerZeroWindow) {
  const PrecisionContext ctx(40);
  const auto a = scan_critical_line(dec("14", ctx), dec("15", ctx), dec("0.1", ctx), ctx);
  ASSERT_EQ(a.size(), 1u);
  EXPECT_LT(a[0].t_lo, dec("14.404003", ctx));
  EXPECT_GT(a[0].t_hi, dec("14.404003", ctx));
  const auto b = scan_critical_line(dec("23", ctx), dec("24", ctx), dec("0.1", ctx), ctx);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_LT(b[0].t_lo, dec("23.34537", ctx));
  EXPECT_GT(b[0].t_hi, dec("23.34537", ctx));
}

TEST(Scan, SignChangesUpToThirty) {
  const PrecisionContext ctx(35);
  const auto all = scan_critical_line(dec("0", ctx), dec("30", ctx), dec("0.1", ctx), ctx);
  // Sign changes of Z located independently near 5.1, 9.0, 12.2, 14.5, 17.2, 19.4, 22.2, 23.4, 26.1, 28.0.
  EXPECT_EQ(all.size(), 10u);
}

TEST(Scan, WorkerCountDoesNotChangeResult) {
  const PrecisionContext ctx(35);
  const auto one = scan_critical_line(dec("0", ctx), dec("20", ctx), dec("0.25", ctx), ctx, 1);
  for (int w : {2, 3, 8}) {
    const auto many = scan_critical_line(dec("0", ctx), dec("20", ctx), dec("0.25", ctx), ctx, w);
    ASSERT_EQ(many.size(), one.size());
    for (size_t i = 0; i < one.size(); ++i) {
      EXPECT_TRUE(many[i].t_lo == one[i].t_lo);
      EXPECT_TRUE(many[i].t_hi == one[i].t_hi);
    }
  }
}

TEST(Scan, EndpointAlwaysSampled) {
  const PrecisionContext ctx(35);
  // 14 + 3 * 0.15 = 14.45 > 14.404, so the sign change falls in the last partial step.
  const auto b = scan_critical_line(dec("14", ctx), dec("14.42", ctx), dec("0.15", ctx), ctx);
  ASSERT_EQ(b.size(), 1u);
  EXPECT_TRUE(b[0].t_hi == dec("14.42", ctx));
}

TEST(Scan, RejectsBadArguments) {
  const PrecisionContext ctx(35);
  EXPECT_THROW(scan_critical_line(dec("1", ctx), dec("2", ctx), dec("0", ctx), ctx), Error);
  EXPECT_THROW(scan_critical_line(dec("3", ctx), dec("2", ctx), dec("0.1", ctx), ctx), Error);
  EXPECT_TRUE(scan_critical_line(dec("3", ctx), dec("3", ctx), dec("0.1", ctx), ctx).empty());
}

TEST(Newton, OnLineRefinement) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const ZeroCandidate c = newton_refine(cplx("0.5+14.45i", ctx), ctx, 50, true);
  ASSERT_TRUE(c.converged);
  EXPECT_EQ(c.reason, StopReason::Converged);
  EXPECT_TRUE(c.refined.re() == rational(1, 2, p));
  EXPECT_LE(abs(c.refined.im() - dec("14.404003", ctx)), pow10_neg(5, p));
  EXPECT_LE(c.f_abs_at_refined, pow10_neg(40, p));
  EXPECT_LE(c.final_step, pow10_neg(50, p));
  EXPECT_FALSE(c.trace.empty());
}

TEST(Newton, UnconstrainedFindsExceptionalZero) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  const ZeroCandidate c = newton_refine(cplx("0.808517+85.699348i", ctx), ctx, 50, false);
  ASSERT_TRUE(c.converged);
  EXPECT_LE(c.f_abs_at_refined, pow10_neg(45, p));
  EXPECT_LE(abs(c.refined - cplx("0.808517+85.699348i", ctx)), pow10_neg(5, p));
  EXPECT_FALSE(near_critical_line(c.refined, ctx));
}

TEST(Newton, RealAxisStartDoesNotConverge) {
  const PrecisionContext ctx(40);
  const ZeroCandidate c = newton_refine(cplx("3", ctx), ctx, 50, false);
  EXPECT_FALSE(c.converged);
  EXPECT_NE(c.reason, StopReason::Converged);
  EXPECT_LE(abs(c.refined - cplx("3", ctx)), Real(1, ctx.bits()));
}

TEST(Newton, IterationCapIsReported) {
  const PrecisionContext ctx(60);
  const ZeroCandidate c = newton_refine(cplx("0.5+14.9i", ctx), ctx, 1, true);
  EXPECT_FALSE(c.converged);
  EXPECT_EQ(c.reason, StopReason::MaxIterations);
  EXPECT_EQ(c.iterations, 1);
  EXPECT_THROW(newton_refine(cplx("0.5+14.9i", ctx), ctx, 0, true), Error);
}

TEST(Records, RatioEqualsModulusOfX) {
  const PrecisionContext ctx(80);
  const mpfr_prec_t p = ctx.bits();
  const EvalRecord r = eval_record(cplx("0.724258+176.702461i", ctx), ctx);
  ASSERT_TRUE(r.ratio.has_value());
  EXPECT_LE(abs(*r.ratio - r.x_abs), pow10_neg(70, p));
  EXPECT_LE(r.residual, pow10_neg(70, p));
  EXPECT_EQ(r.digits, 80);
  EXPECT_EQ(to_decimal(r.x_abs, 4), "0.3298");
}

TEST(Records, ExcludedAndPolarPoints) {
  const PrecisionContext ctx(40);
  for (const char* s : {"1", "0"}) {
    try {
      eval_record(cplx(s, ctx), ctx);
      FAIL() << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ExcludedPoint) << s;
    }
  }
  try {
    eval_record(cplx("2", ctx), ctx);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PoleOfX);
  }
}

TEST(Classify, Labels) {
  const PrecisionContext ctx(60);
  const Real kappa = dec("1.21164", ctx);
  const auto on = classify_point(cplx("0.5+23.3i", ctx), ctx, kappa);
  EXPECT_EQ(on.label, Label::StrictZeroOnLine);
  EXPECT_TRUE(on.on_line);
  EXPECT_TRUE(on.score == 1L);

  const auto off = classify_point(cplx("0.808517+85.699348i", ctx), ctx, kappa);
  EXPECT_EQ(off.label, Label::ApproximateOffLine);
  EXPECT_FALSE(off.on_line);
  EXPECT_NEAR(off.score.to_double(), 3.33e-10, 0.01e-10);

  const auto none = classify_point(cplx("3", ctx), ctx, kappa);
  EXPECT_EQ(none.label, Label::NotZero);
  EXPECT_FALSE(none.refinement.converged);
}

TEST(Classify, Threshold) {
  const PrecisionContext ctx(50);
  EXPECT_TRUE(zero_threshold(ctx) == pow10_neg(40, ctx.bits()));
  EXPECT_TRUE(near_critical_line(cplx("0.5000000000000000000000000001+3i", ctx), ctx));
  EXPECT_FALSE(near_critical_line(cplx("0.5001+3i", ctx), ctx));
}

TEST(Escalation, OnLineZeroDecaysGeometrically) {
  const auto report = precision_escalation("0.5+14.4i", {40, 60, 80});
  ASSERT_EQ(report.steps.size(), 3u);
  EXPECT_EQ(report.trend, Trend::GeometricDecrease);
  EXPECT_GT(report.decay_rate, 0.5);
  for (const auto& st : report.steps) EXPECT_TRUE(st.candidate.converged);
}

TEST(Escalation, RealAxisStartPlateaus) {
  const auto report = precision_escalation("3", {40, 50, 60});
  EXPECT_EQ(report.trend, Trend::Plateau);
  EXPECT_NEAR(report.decay_rate, 0.0, 1e-3);
}

TEST(Escalation, RejectsBadPrecisionLists) {
  EXPECT_THROW(precision_escalation("3", {}), Error);
  EXPECT_THROW(precision_escalation("3", {60, 40}), Error);
  try {
    precision_escalation("3", {20, 40});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PrecisionTooLow);
  }
}
