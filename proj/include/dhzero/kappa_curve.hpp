#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "dhzero/precision.hpp"

namespace dhzero::kappa_curve {

struct KappaResult {
  Real kappa;
  Real epsilon;
  Real t_lo;  // sampling bracket around the root
  Real t_hi;
  Real residual;         // |log|X(1/2 + eps + i kappa)||
  Real reduction_kappa;  // root of -log(5/pi) - Re Psi(3/4 + it/2)
  int bisections = 0;
};

/// Largest root in (0, 3] of t -> log|X(1/2 + eps + it)|.
KappaResult kappa_solve(const Real& epsilon, const PrecisionContext& ctx);

/// Root of the sigma-derivative of log|X| on the critical line, located to 10^-(digits/2).
Real kappa_reduction(const PrecisionContext& ctx);

/// Smallest epsilon the CLI uses by default at this precision: 10^-min(50, floor((digits - 30)/2)).
Real default_epsilon(const PrecisionContext& ctx);

struct Box {
  Real sigma_min;
  Real sigma_max;
  Real t_min;
  Real t_max;
};

/// Node counts along each axis.
struct Resolution {
  int n_sigma = 261;
  int n_t = 121;
};

Box default_box(mpfr_prec_t prec);

struct Point {
  Real sigma;
  Real t;
};
using Polyline = std::vector<Point>;

struct CurveGrid {
  Box box;
  Resolution resolution;
  int digits = 0;
  int guard = 0;
  std::vector<Real> sigmas;  // node abscissae, size n_sigma
  std::vector<Real> ts;      // node ordinates, size n_t
  /// log|X| at node (i, j), stored at j * n_sigma + i; +-inf at poles/zeros of X.
  std::vector<Real> values;
  std::vector<std::uint8_t> singular_nodes;  // same layout as values
  /// One flag per cell (i, j) at j * (n_sigma - 1) + i.
  std::vector<std::uint8_t> masked_cells;

  const Real& value(int i, int j) const { return values[static_cast<size_t>(j) * resolution.n_sigma + i]; }
  bool cell_masked(int i, int j) const {
    return masked_cells[static_cast<size_t>(j) * (resolution.n_sigma - 1) + i] != 0;
  }
};

/// Evaluates log|X| on the node lattice, rows split across `workers` threads.
CurveGrid implicit_curve_grid(const Box& box, const Resolution& resolution, const PrecisionContext& ctx,
                              int workers = 1);

/// Zero-level polylines of log|X| by marching squares.
std::vector<Polyline> trace_segments(const CurveGrid& grid);

/// Largest t among segment points with 0 < |sigma - 1/2| <= 2 cell widths.
std::optional<Real> off_line_apex(const CurveGrid& grid, const std::vector<Polyline>& segments);

}  // namespace dhzero::kappa_curve
