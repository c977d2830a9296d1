#include "dhzero/kappa_curve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "dhzero/dh.hpp"
#include "dhzero/parallel.hpp"
#include "dhzero/ratio.hpp"
#include "dhzero/specfun.hpp"

namespace dhzero::kappa_curve {

namespace {

constexpr long kSamples = 300;  // t = 0.01, 0.02, ..., 3

// Largest k in [1, kSamples) with a sign change of g between k/100 and (k+1)/100.
template <typename G>
std::optional<long> last_sign_change(G&& g, mpfr_prec_t wp) {
  std::vector<int> signs(kSamples + 1, 0);
  for (long k = 1; k <= kSamples; ++k) signs[k] = g(rational(k, 100, wp)).sign();
  for (long k = kSamples - 1; k >= 1; --k) {
    if (signs[k] != 0 && signs[k + 1] != 0 && signs[k] != signs[k + 1]) return k;
  }
  return std::nullopt;
}

}  // namespace

Real kappa_reduction(const PrecisionContext& ctx) {
  const mpfr_prec_t wp = ctx.bits();
  const Real log5_over_pi = log(Real(5, wp) / const_pi(wp));
  const Real three_quarters = rational(3, 4, wp);
  auto h = [&](const Real& t) {
    return -log5_over_pi - specfun::digamma(Complex(three_quarters, t / 2), ctx).re();
  };
  const auto k = last_sign_change(h, wp);
  if (!k) throw Error(ErrorCode::NoRootInBracket, "no sign change of the reduction on (0, 3]");
  Real lo = rational(*k, 100, wp), hi = rational(*k + 1, 100, wp);
  const int lo_sign = h(lo).sign();
  const Real width = pow10_neg(ctx.digits() / 2, wp);
  while (hi - lo > width) {
    Real mid = (lo + hi) / 2;
    if (h(mid).sign() == lo_sign) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return (lo + hi) / 2;
}

KappaResult kappa_solve(const Real& epsilon_in, const PrecisionContext& ctx) {
  const mpfr_prec_t wp = ctx.bits();
  const Real epsilon = epsilon_in.at(wp);
  if (!(epsilon > 0L)) {
    throw Error(ErrorCode::DomainError, "epsilon must be positive; |X| = 1 on the whole critical line");
  }
  if (epsilon > pow10_neg(3, wp)) throw Error(ErrorCode::DomainError, "epsilon must be <= 1e-3");
  const double needed = -2.0 * log10(epsilon).to_double() + 30.0;
  if (ctx.digits() < needed) {
    throw Error(ErrorCode::PrecisionTooLow,
                "kappa_solve at this epsilon needs at least " + std::to_string(static_cast<int>(std::ceil(needed))) +
                    " digits");
  }

  const Real sigma = rational(1, 2, wp) + epsilon;
  auto g = [&](const Real& t) { return ratio::log_abs_x(Complex(sigma, t), ctx); };
  const auto k = last_sign_change(g, wp);
  if (!k) throw Error(ErrorCode::NoRootInBracket, "log|X| has no sign change on (0, 3]");

  KappaResult out{Real(wp), epsilon, rational(*k, 100, wp), rational(*k + 1, 100, wp), Real(wp), Real(wp), 0};
  Real lo = out.t_lo, hi = out.t_hi;
  const int lo_sign = g(lo).sign();
  const Real target = pow10_neg(ctx.digits() - 15, wp);
  const Real min_width = pow10_neg(ctx.digits(), wp);
  Real mid = (lo + hi) / 2;
  Real g_mid = g(mid);
  while (abs(g_mid) > target && hi - lo > min_width) {
    if (g_mid.sign() == lo_sign) {
      lo = mid;
    } else {
      hi = mid;
    }
    mid = (lo + hi) / 2;
    g_mid = g(mid);
    ++out.bisections;
  }
  out.kappa = mid;
  out.residual = abs(g_mid);
  out.reduction_kappa = kappa_reduction(ctx);
  return out;
}

Real default_epsilon(const PrecisionContext& ctx) {
  const long exponent = std::min(50L, static_cast<long>((ctx.digits() - 30) / 2));
  return pow10_neg(std::max(3L, exponent), ctx.bits());
}

// Grid --------------------------------------------------------------------

Box default_box(mpfr_prec_t prec) { return Box{Real(-6, prec), Real(7, prec), Real(-3, prec), Real(3, prec)}; }

namespace {

// (lo (n - 1 - i) + hi i) / (n - 1): exact at both ends and at every dyadic node.
std::vector<Real> axis(const Real& lo, const Real& hi, int n, mpfr_prec_t wp) {
  std::vector<Real> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i) out.push_back((lo.at(wp) * static_cast<long>(n - 1 - i) + hi.at(wp) * static_cast<long>(i)) / static_cast<long>(n - 1));
  return out;
}

// Poles and zeros of X on the real axis: negative odd or even >= 2 integers.
bool singular_real(const Real& sigma) {
  if (!sigma.is_integer()) return false;
  const long n = sigma.to_long();
  return (n < 0 && n % 2 != 0) || (n >= 2 && n % 2 == 0);
}

}  // namespace

CurveGrid implicit_curve_grid(const Box& box, const Resolution& res, const PrecisionContext& ctx, int workers) {
  if (res.n_sigma < 8 || res.n_t < 8) throw Error(ErrorCode::DomainError, "grid resolution must be >= 8 per axis");
  if (!(box.sigma_min < box.sigma_max) || !(box.t_min < box.t_max)) {
    throw Error(ErrorCode::DomainError, "grid box must be nonempty");
  }
  const mpfr_prec_t wp = ctx.bits();
  CurveGrid grid{box, res, ctx.digits(), ctx.guard_digits(), axis(box.sigma_min, box.sigma_max, res.n_sigma, wp),
                 axis(box.t_min, box.t_max, res.n_t, wp), {}, {}, {}};
  const size_t nodes = static_cast<size_t>(res.n_sigma) * res.n_t;
  grid.values.assign(nodes, Real(wp));
  grid.singular_nodes.assign(nodes, 0);

  const double inf = std::numeric_limits<double>::infinity();
  detail::parallel_for(static_cast<size_t>(res.n_t), workers, [&](size_t j) {
    for (int i = 0; i < res.n_sigma; ++i) {
      const size_t idx = j * res.n_sigma + i;
      const Complex s(grid.sigmas[i], grid.ts[j]);
      if (grid.ts[j].is_zero() && singular_real(grid.sigmas[i])) {
        grid.singular_nodes[idx] = 1;
        grid.values[idx] = Real::from_double(dh::is_pole_of_x(s) ? inf : -inf, wp);
      } else {
        grid.values[idx] = ratio::log_abs_x(s, ctx);
      }
    }
  });

  // Mask every closed cell that contains a singular point.
  grid.masked_cells.assign(static_cast<size_t>(res.n_sigma - 1) * (res.n_t - 1), 0);
  if (box.t_min <= 0L && box.t_max >= 0L) {
    const long first = static_cast<long>(std::ceil(box.sigma_min.to_double()));
    const long last = static_cast<long>(std::floor(box.sigma_max.to_double()));
    for (long p = first; p <= last; ++p) {
      const Real pr(p, wp);
      if (!singular_real(pr) || pr < box.sigma_min || pr > box.sigma_max) continue;
      for (int j = 0; j + 1 < res.n_t; ++j) {
        if (grid.ts[j] > 0L || grid.ts[j + 1] < 0L) continue;
        for (int i = 0; i + 1 < res.n_sigma; ++i) {
          if (grid.sigmas[i] <= pr && pr <= grid.sigmas[i + 1]) {
            grid.masked_cells[static_cast<size_t>(j) * (res.n_sigma - 1) + i] = 1;
          }
        }
      }
    }
  }
  return grid;
}

// Marching squares -------------------------------------------------------------

namespace {

struct Tracer {
  const CurveGrid& grid;
  int ns;
  std::map<long, Point> edge_points;

  bool above(int i, int j) const { return grid.value(i, j) > 0L; }

  // Horizontal edge (i,j)-(i+1,j) has id 2(j ns + i); vertical (i,j)-(i,j+1) has id 2(j ns + i) + 1.
  long h_edge(int i, int j) const { return 2L * (static_cast<long>(j) * ns + i); }
  long v_edge(int i, int j) const { return 2L * (static_cast<long>(j) * ns + i) + 1; }

  Point interpolate(int i0, int j0, int i1, int j1) const {
    const Real& a = grid.value(i0, j0);
    const Real& b = grid.value(i1, j1);
    const Real frac = a / (a - b);
    return Point{grid.sigmas[i0] + (grid.sigmas[i1] - grid.sigmas[i0]) * frac,
                 grid.ts[j0] + (grid.ts[j1] - grid.ts[j0]) * frac};
  }

  long edge(int i, int j, bool horizontal) {
    const long id = horizontal ? h_edge(i, j) : v_edge(i, j);
    if (!edge_points.count(id)) {
      edge_points.emplace(id, horizontal ? interpolate(i, j, i + 1, j) : interpolate(i, j, i, j + 1));
    }
    return id;
  }
};

}  // namespace

std::vector<Polyline> trace_segments(const CurveGrid& grid) {
  const int ns = grid.resolution.n_sigma;
  const int nt = grid.resolution.n_t;
  Tracer tr{grid, ns, {}};
  const PrecisionContext ctx(grid.digits, grid.guard);

  std::vector<std::pair<long, long>> segs;
  for (int j = 0; j + 1 < nt; ++j) {
    for (int i = 0; i + 1 < ns; ++i) {
      if (grid.cell_masked(i, j)) continue;
      const bool a = tr.above(i, j), b = tr.above(i + 1, j);
      const bool c = tr.above(i + 1, j + 1), d = tr.above(i, j + 1);
      const bool cb = a != b, cr = b != c, ct = c != d, cl = d != a;
      const int crossings = cb + cr + ct + cl;
      if (crossings == 0) continue;
      if (crossings == 2) {
        std::vector<long> ids;
        if (cb) ids.push_back(tr.edge(i, j, true));
        if (cr) ids.push_back(tr.edge(i + 1, j, false));
        if (ct) ids.push_back(tr.edge(i, j + 1, true));
        if (cl) ids.push_back(tr.edge(i, j, false));
        segs.emplace_back(ids[0], ids[1]);
        continue;
      }
      // Saddle: the centre sample decides which diagonal pair is connected.
      const Complex centre((grid.sigmas[i] + grid.sigmas[i + 1]) / 2, (grid.ts[j] + grid.ts[j + 1]) / 2);
      const bool centre_above = ratio::log_abs_x(centre, ctx) > 0L;
      const long bottom = tr.edge(i, j, true), right = tr.edge(i + 1, j, false);
      const long top = tr.edge(i, j + 1, true), left = tr.edge(i, j, false);
      if (centre_above == a) {
        segs.emplace_back(bottom, right);
        segs.emplace_back(top, left);
      } else {
        segs.emplace_back(bottom, left);
        segs.emplace_back(top, right);
      }
    }
  }

  std::map<long, std::vector<size_t>> by_edge;
  for (size_t k = 0; k < segs.size(); ++k) {
    by_edge[segs[k].first].push_back(k);
    by_edge[segs[k].second].push_back(k);
  }
  std::vector<bool> used(segs.size(), false);

  // Follow unused segments from `edge`, appending the edges met along the way.
  auto walk = [&](long edge, std::vector<long>& out) {
    for (;;) {
      size_t next = segs.size();
      for (size_t k : by_edge[edge]) {
        if (!used[k]) {
          next = k;
          break;
        }
      }
      if (next == segs.size()) return;
      used[next] = true;
      edge = segs[next].first == edge ? segs[next].second : segs[next].first;
      out.push_back(edge);
    }
  };

  std::vector<Polyline> lines;
  for (size_t k = 0; k < segs.size(); ++k) {
    if (used[k]) continue;
    used[k] = true;
    std::vector<long> forward{segs[k].second}, backward;
    walk(segs[k].second, forward);
    walk(segs[k].first, backward);
    std::vector<long> chain(backward.rbegin(), backward.rend());
    chain.push_back(segs[k].first);
    chain.insert(chain.end(), forward.begin(), forward.end());
    Polyline line;
    line.reserve(chain.size());
    for (long id : chain) line.push_back(tr.edge_points.at(id));
    lines.push_back(std::move(line));
  }
  return lines;
}

std::optional<Real> off_line_apex(const CurveGrid& grid, const std::vector<Polyline>& segments) {
  if (grid.sigmas.size() < 2) return std::nullopt;
  const mpfr_prec_t wp = grid.sigmas.front().precision();
  const Real half = rational(1, 2, wp);
  const Real band = (grid.sigmas[1] - grid.sigmas[0]) * 2;
  const Real floor = pow10_neg(30, wp);
  std::optional<Real> best;
  for (const auto& line : segments) {
    for (const auto& p : line) {
      const Real off = abs(p.sigma - half);
      if (off <= floor || off > band) continue;
      if (!best || p.t > *best) best = p.t;
    }
  }
  return best;
}

}  // namespace dhzero::kappa_curve
