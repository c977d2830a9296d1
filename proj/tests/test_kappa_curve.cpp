#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "dhzero/kappa_curve.hpp"
#include "dhzero/ratio.hpp"

using namespace dhzero;
using namespace dhzero::kappa_curve;

namespace {

Real dec(const char* text, const PrecisionContext& ctx) { return parse_decimal(text, ctx); }

Box box(const char* a, const char* b, const char* c, const char* d, const PrecisionContext& ctx) {
  return Box{dec(a, ctx), dec(b, ctx), dec(c, ctx), dec(d, ctx)};
}

}  // namespace

TEST(Kappa, SolvesAtModerateOffset) {
  const PrecisionContext ctx(80);
  const mpfr_prec_t p = ctx.bits();
  const KappaResult r = kappa_solve(pow10_neg(20, p), ctx);
  EXPECT_LE(abs(r.kappa - dec("1.21164", ctx)), pow10_neg(5, p));
  EXPECT_LT(r.t_lo, r.kappa);
  EXPECT_LT(r.kappa, r.t_hi);
  EXPECT_LE(r.residual, pow10_neg(ctx.digits() - 15, p));
  // The reduction root is the epsilon -> 0 limit; the offset enters at second order.
  EXPECT_LE(abs(r.kappa - r.reduction_kappa), pow10_neg(30, p));
}

TEST(Kappa, ReductionRootMatchesIndependentValue) {
  const PrecisionContext ctx(40);
  EXPECT_EQ(to_decimal(kappa_reduction(ctx), 11), "1.2116357919");
}

TEST(Kappa, PreconditionsAreEnforced) {
  const PrecisionContext ctx(60);
  const mpfr_prec_t p = ctx.bits();
  auto code_of = [&](const Real& eps) {
    try {
      kappa_solve(eps, ctx);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;  // sentinel: no error
  };
  EXPECT_EQ(code_of(Real(p)), ErrorCode::DomainError);
  EXPECT_EQ(code_of(dec("0.01", ctx)), ErrorCode::DomainError);
  EXPECT_EQ(code_of(pow10_neg(50, p)), ErrorCode::PrecisionTooLow);
}

TEST(Kappa, DefaultEpsilonFitsThePrecision) {
  EXPECT_TRUE(default_epsilon(PrecisionContext(60)) == pow10_neg(15, PrecisionContext(60).bits()));
  EXPECT_TRUE(default_epsilon(PrecisionContext(200)) == pow10_neg(50, PrecisionContext(200).bits()));
  const PrecisionContext ctx(70);
  EXPECT_NO_THROW(kappa_solve(default_epsilon(ctx), ctx));
}

TEST(Grid, NodesOnCriticalLineVanishAndSignsMatchRegions) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  const CurveGrid g = implicit_curve_grid(box("0.3", "0.7", "-2", "5", ctx), {9, 15}, ctx);
  // sigma nodes 0.3, 0.35, ..., 0.7 -> column 4 is 1/2; t nodes -2, -1.5, ..., 5.
  ASSERT_TRUE(g.sigmas[4] == rational(1, 2, p));
  for (int j = 0; j < 15; ++j) EXPECT_LE(abs(g.value(4, j)), pow10_neg(30, p));
  EXPECT_GT(g.value(0, 14), 0L);  // (0.3, 5): |X| > 1
  EXPECT_LT(g.value(0, 4), 0L);   // (0.3, 0): |X| < 1
}

TEST(Grid, ConjugateSymmetryInT) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  const CurveGrid g = implicit_curve_grid(box("-2", "3", "-2", "2", ctx), {11, 9}, ctx);
  for (int j = 0; j < 9; ++j) {
    for (int i = 0; i < 11; ++i) {
      if (g.singular_nodes[j * 11 + i]) continue;
      EXPECT_LE(abs(g.value(i, j) - g.value(i, 8 - j)), pow10_neg(40, p));
    }
  }
}

TEST(Grid, MasksCellsAroundPolesAndZeros) {
  const PrecisionContext ctx(40);
  // Nodes every 0.5 in sigma, 0.25 in t; 2 and -1 sit on nodes, the t = 0 row is row 2.
  const CurveGrid g = implicit_curve_grid(box("-2", "3", "-0.5", "1.5", ctx), {11, 9}, ctx);
  std::set<std::pair<int, int>> masked;
  for (int j = 0; j < 8; ++j) {
    for (int i = 0; i < 10; ++i) {
      if (g.cell_masked(i, j)) masked.insert({i, j});
    }
  }
  const std::set<std::pair<int, int>> expected{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {7, 1}, {7, 2}, {8, 1}, {8, 2}};
  EXPECT_EQ(masked, expected);
  EXPECT_EQ(to_decimal(g.value(2, 2), 5), "-inf");  // zero of X at -1
  EXPECT_EQ(to_decimal(g.value(8, 2), 5), "inf");   // pole at 2
}

TEST(Grid, MasksOffNodeSingularities) {
  const PrecisionContext ctx(40);
  // sigma nodes 1.7, 2.3, ..., t nodes -0.3, 0.3: the pole at 2 is inside cell (0, 0).
  const CurveGrid g = implicit_curve_grid(box("1.7", "6.5", "-0.3", "4.5", ctx), {9, 9}, ctx);
  EXPECT_TRUE(g.cell_masked(0, 0));
  int count = 0;
  for (auto m : g.masked_cells) count += m;
  // 2, 4 and 6 each fall inside exactly one cell of the t = 0 band.
  EXPECT_EQ(count, 3);
}

TEST(Grid, RejectsBadShapes) {
  const PrecisionContext ctx(40);
  EXPECT_THROW(implicit_curve_grid(box("0", "1", "0", "1", ctx), {7, 10}, ctx), Error);
  EXPECT_THROW(implicit_curve_grid(box("1", "1", "0", "1", ctx), {10, 10}, ctx), Error);
}

TEST(Grid, WorkerCountDoesNotChangeValues) {
  const PrecisionContext ctx(40);
  const Box b = box("-1.5", "2.5", "-2", "2", ctx);
  const CurveGrid one = implicit_curve_grid(b, {12, 10}, ctx, 1);
  const CurveGrid four = implicit_curve_grid(b, {12, 10}, ctx, 4);
  ASSERT_EQ(one.values.size(), four.values.size());
  for (size_t k = 0; k < one.values.size(); ++k) EXPECT_TRUE(one.values[k] == four.values[k]);
}

TEST(Segments, UniformGridHasNone) {
  const PrecisionContext ctx(40);
  const CurveGrid g = implicit_curve_grid(box("0", "0.3", "5", "6", ctx), {8, 8}, ctx);
  for (const auto& v : g.values) ASSERT_GT(v, 0L);
  EXPECT_TRUE(trace_segments(g).empty());
}

TEST(Segments, FollowTheCriticalLine) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  const CurveGrid g = implicit_curve_grid(box("0.4", "0.6", "-2", "2", ctx), {9, 17}, ctx);
  const auto lines = trace_segments(g);
  ASSERT_FALSE(lines.empty());
  int on_line = 0;
  for (const auto& l : lines) {
    for (const auto& pt : l) {
      if (abs(pt.sigma - rational(1, 2, p)) <= pow10_neg(30, p)) ++on_line;
    }
  }
  EXPECT_GE(on_line, 10);
}

TEST(Segments, ApexMatchesKappa) {
  const PrecisionContext ctx(40);
  const mpfr_prec_t p = ctx.bits();
  const CurveGrid g = implicit_curve_grid(box("0.45", "0.55", "0", "2", ctx), {11, 41}, ctx);
  const auto lines = trace_segments(g);
  const auto apex = off_line_apex(g, lines);
  ASSERT_TRUE(apex.has_value());
  const Real cell = g.ts[1] - g.ts[0];
  EXPECT_LE(abs(*apex - kappa_reduction(ctx)), cell);
  // Points on the off-line branch really satisfy |X| = 1 to interpolation accuracy.
  for (const auto& l : lines) {
    for (const auto& pt : l) {
      EXPECT_LE(abs(ratio::log_abs_x(Complex(pt.sigma, pt.t), ctx)), Real::from_double(1e-3, p));
    }
  }
}

TEST(Segments, RefinementMovesPointsLessThanACoarseDiagonal) {
  const PrecisionContext ctx(35);
  const Box b = box("-1", "2", "0.25", "3", ctx);
  const CurveGrid coarse = implicit_curve_grid(b, {13, 12}, ctx);
  const CurveGrid fine = implicit_curve_grid(b, {25, 23}, ctx);
  const auto lc = trace_segments(coarse);
  const auto lf = trace_segments(fine);
  ASSERT_FALSE(lc.empty());
  const double diag = std::hypot(0.25, 0.25);
  for (const auto& l : lc) {
    for (const auto& pt : l) {
      double best = 1e9;
      for (const auto& m : lf) {
        for (const auto& q : m) {
          best = std::min(best, std::hypot((pt.sigma - q.sigma).to_double(), (pt.t - q.t).to_double()));
        }
      }
      EXPECT_LT(best, diag) << to_decimal(pt.sigma, 6) << "," << to_decimal(pt.t, 6);
    }
  }
}

TEST(Segments, PolylinesAreConnected) {
  const PrecisionContext ctx(35);
  const CurveGrid g = implicit_curve_grid(box("-3", "4", "-3", "3", ctx), {29, 25}, ctx);
  const auto lines = trace_segments(g);
  const double dx = 0.25, dy = 0.25;
  for (const auto& l : lines) {
    for (size_t k = 1; k < l.size(); ++k) {
      // Consecutive points lie on edges of one cell.
      EXPECT_LE(std::fabs((l[k].sigma - l[k - 1].sigma).to_double()), dx + 1e-12);
      EXPECT_LE(std::fabs((l[k].t - l[k - 1].t).to_double()), dy + 1e-12);
    }
  }
  // Determinism: tracing twice gives identical output.
  const auto again = trace_segments(g);
  ASSERT_EQ(again.size(), lines.size());
  for (size_t k = 0; k < lines.size(); ++k) {
    ASSERT_EQ(again[k].size(), lines[k].size());
    for (size_t m = 0; m < lines[k].size(); ++m) EXPECT_TRUE(again[k][m].sigma == lines[k][m].sigma);
  }
}
