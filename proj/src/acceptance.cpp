#include "dhzero/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <unistd.h>

#include "dhzero/cli.hpp"
#include "dhzero/dh.hpp"
#include "dhzero/kappa_curve.hpp"
#include "dhzero/ratio.hpp"
#include "dhzero/reference_rows.hpp"
#include "dhzero/specfun.hpp"
#include "dhzero/zeros.hpp"

namespace dhzero::acceptance {

namespace {

std::string sci(const Real& x) { return to_decimal(x, 3); }

// 100 points in sigma in [-3, 4], |t| <= 50, at distance >= 1/4 from the poles of
// X(s) and X(1-s) and from the two excluded points s = 1 and s = 0.
std::vector<Complex> functional_panel(const PrecisionContext& ctx) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> sigma(-3.0, 4.0), t(-50.0, 50.0);
  const double avoid[] = {-3.0, -1.0, 0.0, 1.0, 2.0, 4.0};
  std::vector<Complex> out;
  while (out.size() < 100) {
    const double x = sigma(rng), y = t(rng);
    bool ok = true;
    for (double p : avoid) ok = ok && std::hypot(x - p, y) >= 0.25;
    if (ok) out.emplace_back(Real::from_double(x, ctx.bits()), Real::from_double(y, ctx.bits()));
  }
  return out;
}

CriterionResult functional_equation() {
  const PrecisionContext ctx(60);
  Real worst(ctx.bits());
  for (const auto& s : functional_panel(ctx)) worst = max(worst, dh::functional_equation_residual(s, ctx));
  return {1, "functional equation residual", worst < pow10_neg(45, ctx.bits()),
          "max relative residual " + sci(worst) + " over 100 points (bound 1e-45)"};
}

CriterionResult inversion() {
  const PrecisionContext ctx(60);
  Real worst(ctx.bits());
  for (const auto& s : functional_panel(ctx)) worst = max(worst, abs(ratio::inversion_product(s, ctx) - 1L));
  return {2, "inversion symmetry X(s)X(1-s) = 1", worst < pow10_neg(50, ctx.bits()),
          "max |X(s)X(1-s) - 1| " + sci(worst) + " (bound 1e-50)"};
}

CriterionResult derivative_forms() {
  const PrecisionContext ctx(60);
  const mpfr_prec_t wp = ctx.bits();
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> sigma(-2.0, 3.0), t(0.5, 30.0);
  std::bernoulli_distribution flip(0.5);

  Real worst_series(wp), worst_fd(wp), worst_line(wp);
  int sign_errors = 0, points = 0;
  const Real tol = pow10_neg(10, wp);
  const Real h = pow10_neg(20, wp);
  while (points < 20) {
    const double x = sigma(rng);
    const double y = t(rng) * (flip(rng) ? -1.0 : 1.0);
    if (std::fabs(x - 0.5) < 0.05) continue;
    ++points;
    const Complex s(Real::from_double(x, wp), Real::from_double(y, wp));
    const Real d = ratio::d_abs_x_dt_digamma(s, ctx).value;
    const Real series = ratio::d_abs_x_dt_series(s, tol, ctx).value;
    worst_series = max(worst_series, abs(d - series) / max(abs(d), Real(1, wp)));

    const Real up = ratio::abs_x(Complex(s.re(), s.im() + h), ctx);
    const Real down = ratio::abs_x(Complex(s.re(), s.im() - h), ctx);
    const Real fd = (up - down) / (h * 2);
    worst_fd = max(worst_fd, abs(fd - d) / abs(d));

    const int expected = (Real::from_double(0.5 - x, wp) * s.im()).sign();
    if (d.sign() != expected) ++sign_errors;

    const Complex on_line(rational(1, 2, wp), s.im());
    worst_line = max(worst_line, abs(ratio::d_abs_x_dt_digamma(on_line, ctx).value));
  }
  const bool pass = worst_series <= tol && worst_fd <= pow10_neg(35, wp) && sign_errors == 0 &&
                    worst_line <= pow10_neg(50, wp);
  std::ostringstream detail;
  detail << "series gap " << sci(worst_series) << ", finite-difference rel " << sci(worst_fd) << ", sign errors "
         << sign_errors << ", max on-line " << sci(worst_line);
  return {3, "d|X|/dt cross-validation", pass, detail.str()};
}

CriterionResult identities() {
  const PrecisionContext ctx(60);
  const mpfr_prec_t wp = ctx.bits();
  const Real tol = pow10_neg(ctx.digits() - 10, wp);
  const Real pi = const_pi(wp), gamma = const_euler(wp), ln2 = const_log2(wp);
  const Real half = rational(1, 2, wp);

  std::vector<std::pair<std::string, Real>> errs;
  auto rel = [&](const Real& got, const Real& want) { return abs(got - want) / max(abs(want), Real(1, wp)); };
  auto crel = [&](const Complex& got, const Complex& want) { return abs(got - want) / max(abs(want), Real(1, wp)); };

  errs.emplace_back("Gamma(1/2)", rel(exp(specfun::log_gamma(Complex(half), ctx).re()), sqrt(pi)));
  errs.emplace_back("Psi(1)", crel(specfun::digamma(Complex(Real(1, wp)), ctx), Complex(-gamma)));
  errs.emplace_back("Psi(1/2)", crel(specfun::digamma(Complex(half), ctx), Complex(-gamma - ln2 * 2)));
  errs.emplace_back("zeta(2,1)",
                    crel(specfun::hurwitz_zeta(Complex(Real(2, wp)), Real(1, wp), ctx), Complex(sqr(pi) / 6)));
  for (const char* a_text : {"0.2", "0.7", "1.3"}) {
    const Real a = parse_decimal(a_text, ctx);
    errs.emplace_back(std::string("zeta(0,") + a_text + ")",
                      crel(specfun::hurwitz_zeta(Complex(Real(wp)), a, ctx), Complex(half - a)));
  }
  errs.emplace_back("zeta(-1,1/5)", crel(specfun::hurwitz_zeta(Complex(Real(-1, wp)), rational(1, 5, wp), ctx),
                                         Complex(rational(-1, 300, wp))));
  errs.emplace_back("zeta'(0,1)", crel(specfun::hurwitz_zeta_ds(Complex(Real(wp)), Real(1, wp), ctx),
                                       Complex(-log(pi * 2) / 2)));
  for (const char* s_text : {"2.5+3i", "-1.5+10i", "0.5+20i"}) {
    const Complex s = parse_complex(s_text, ctx);
    const Real a = parse_decimal("0.3", ctx);
    const Complex lhs = specfun::hurwitz_zeta(s, a, ctx) - specfun::hurwitz_zeta(s, a + 1L, ctx);
    errs.emplace_back(std::string("recurrence at ") + s_text, crel(lhs, pow_neg(log(a), s)));
  }

  bool pass = true;
  std::string worst_name;
  Real worst(wp);
  for (const auto& [name, e] : errs) {
    if (!(e <= tol)) pass = false;
    if (e >= worst) {
      worst = e;
      worst_name = name;
    }
  }
  return {4, "special-function identities", pass,
          std::to_string(errs.size()) + " identities, worst " + worst_name + " at " + sci(worst) + " (bound 1e-50)"};
}

CriterionResult kappa_threshold() {
  const PrecisionContext c50(140), c30(100);
  const auto r50 = kappa_curve::kappa_solve(pow10_neg(50, c50.bits()), c50);
  const auto r30 = kappa_curve::kappa_solve(pow10_neg(30, c30.bits()), c30);
  const mpfr_prec_t wp = c50.bits();
  const Real ref = parse_decimal(kReferenceKappa, c50);
  const Real off = abs(r50.kappa - ref);
  const Real gap = abs(r50.kappa - r30.kappa.at(wp));
  const Real tol = pow10_neg(5, wp);
  return {5, "kappa threshold", off <= tol && gap <= tol,
          "kappa(1e-50) = " + to_decimal(r50.kappa, 12) + ", |kappa - 1.21164| = " + sci(off) +
              ", |kappa(1e-30) - kappa(1e-50)| = " + sci(gap)};
}

CriterionResult on_line_zeros() {
  const PrecisionContext c60(60), c200(200);
  bool pass = true;
  std::ostringstream detail;
  const std::pair<const char*, const char*> windows[] = {{"14", "14.404003"}, {"23", "23.345370"}};
  for (const auto& [lo_text, expected_text] : windows) {
    const Real lo = parse_decimal(lo_text, c60);
    const auto brackets = zeros::scan_critical_line(lo, lo + 1L, parse_decimal("0.1", c60), c60);
    detail << "[" << lo_text << "," << lo.to_long() + 1 << "] brackets=" << brackets.size();
    if (brackets.size() != 1) {
      pass = false;
      detail << "; ";
      continue;
    }
    const Real mid = (brackets[0].t_lo + brackets[0].t_hi) / 2;
    const auto c = zeros::newton_refine(Complex(rational(1, 2, c60.bits()), mid), c60, 50, true);
    const Real t_err = abs(c.refined.im() - parse_decimal(expected_text, c60));
    const std::string start200 = "0.5+" + to_decimal(c.refined.im(), 60) + "i";
    const auto c2 = zeros::newton_refine(parse_complex(start200, c200), c200, 50, true);
    const auto esc = zeros::precision_escalation("0.5+" + to_decimal(mid, 20) + "i", {60, 100, 200});

    const bool ok = c.converged && t_err <= pow10_neg(5, c60.bits()) &&
                    c.f_abs_at_refined < pow10_neg(40, c60.bits()) && c2.converged &&
                    c2.f_abs_at_refined < pow10_neg(180, c200.bits()) && esc.trend == zeros::Trend::GeometricDecrease;
    pass = pass && ok;
    detail << " t=" << to_decimal(c.refined.im(), 10) << " |f|60=" << sci(c.f_abs_at_refined)
           << " |f|200=" << sci(c2.f_abs_at_refined) << " trend=" << zeros::to_string(esc.trend) << "; ";
  }
  return {6, "critical-line zeros", pass, detail.str()};
}

CriterionResult spira_rows() {
  const PrecisionContext ctx(200);
  const mpfr_prec_t wp = ctx.bits();
  const Real kappa = kappa_curve::kappa_reduction(ctx);
  bool pass = true;
  std::ostringstream detail;
  for (size_t k = 0; k < 4; ++k) {
    const auto& ref = kReferenceRows[k];
    const Complex s = parse_complex(ref.s, ctx);
    const auto rec = zeros::eval_record(s, ctx);
    const bool identity = rec.ratio && abs(*rec.ratio - rec.x_abs) < pow10_neg(180, wp);
    const Real ref_x = parse_decimal(ref.x_abs, ctx);
    const bool x_flag = abs(rec.x_abs - ref_x) <= abs(ref_x) / 4;
    const auto cls = zeros::classify_point(s, ctx, kappa);
    pass = pass && identity;
    detail << ref.name << ": |X|=" << to_decimal(rec.x_abs, 5) << " (ref " << ref.x_abs << ", "
           << (x_flag ? "agrees" : "DISAGREES") << ") ratio=|X|:" << (identity ? "yes" : "NO") << " "
           << zeros::to_string(cls.label) << " score=" << sci(cls.score) << "; ";
    if (k == 0) {
      // exp(-|0.808517 - 1/2| * 85.699348 / kappa)
      const Real expected = exp(-(parse_decimal("0.308517", ctx) * parse_decimal("85.699348", ctx)) / kappa);
      if (abs(cls.score / expected - 1L) > Real::from_double(0.01, wp)) pass = false;
    }
  }
  return {7, "exceptional-point records at 200 digits", pass, detail.str()};
}

CriterionResult figure_grid() {
  const PrecisionContext ctx(60);
  const mpfr_prec_t wp = ctx.bits();
  const auto grid = kappa_curve::implicit_curve_grid(kappa_curve::default_box(wp), {}, ctx);
  const int ns = grid.resolution.n_sigma, nt = grid.resolution.n_t;

  // sigma_i = -6 + i/20 and t_j = -3 + j/20, so sigma = 1/2 is column 130 and t = 0 is row 60.
  Real line_max(wp);
  for (int j = 0; j < nt; ++j) line_max = max(line_max, abs(grid.value(130, j)));
  const bool line_ok = grid.sigmas[130] == rational(1, 2, wp) && line_max <= pow10_neg(ctx.digits() - 10, wp);

  std::set<std::pair<int, int>> expected, masked;
  for (long p : {-5L, -3L, -1L, 2L, 4L, 6L}) {
    const int col = static_cast<int>((p + 6) * 20);
    for (int i : {col - 1, col}) {
      for (int j : {59, 60}) expected.insert({i, j});
    }
  }
  for (int j = 0; j + 1 < nt; ++j) {
    for (int i = 0; i + 1 < ns; ++i) {
      if (grid.cell_masked(i, j)) masked.insert({i, j});
    }
  }

  const auto segments = kappa_curve::trace_segments(grid);
  const auto apex = kappa_curve::off_line_apex(grid, segments);
  const Real kappa = kappa_curve::kappa_reduction(ctx);
  const Real cell_height = grid.ts[1] - grid.ts[0];
  const bool apex_ok = apex && abs(*apex - kappa) <= cell_height;

  std::ostringstream detail;
  detail << "max |log|X|| on sigma=1/2 " << sci(line_max) << ", masked cells " << masked.size() << " (expected "
         << expected.size() << (masked == expected ? ", identical" : ", DIFFERENT") << "), apex "
         << (apex ? to_decimal(*apex, 8) : std::string("none")) << " vs kappa " << to_decimal(kappa, 8);
  return {8, "|X| = 1 curve grid", line_ok && masked == expected && apex_ok, detail.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

CriterionResult determinism() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("dhzero_determinism_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  bool pass = true;
  std::ostringstream detail;
  std::string scan_ref, curve_ref, csv_ref, seg_ref;
  for (int w : {1, 2, 8}) {
    std::ostringstream out, err;
    const int rc_scan = cli::run({"scan", "0", "30", "--step", "0.1", "--workers", std::to_string(w)}, out, err);
    const std::string scan = out.str();

    const fs::path grid = dir / ("grid_w" + std::to_string(w) + ".csv");
    std::ostringstream cout_, cerr_;
    // Same --out name for every worker count so the echoed path cannot differ.
    const fs::path shared = dir / "grid.csv";
    const int rc_curve = cli::run({"curve", "--out", shared.string(), "--workers", std::to_string(w)}, cout_, cerr_);
    fs::copy_file(shared, grid, fs::copy_options::overwrite_existing);
    const std::string csv = slurp(grid);
    const std::string seg = slurp(shared.string() + ".segments.json");

    if (rc_scan != 0 || rc_curve != 0) {
      pass = false;
      detail << "w=" << w << " exit codes " << rc_scan << "/" << rc_curve << "; ";
      continue;
    }
    if (w == 1) {
      scan_ref = scan;
      curve_ref = cout_.str();
      csv_ref = csv;
      seg_ref = seg;
      detail << "scan " << scan.size() << " B, grid " << csv.size() << " B, segments " << seg.size() << " B";
    } else {
      const bool same = scan == scan_ref && cout_.str() == curve_ref && csv == csv_ref && seg == seg_ref;
      pass = pass && same;
      detail << "; w=" << w << (same ? " identical" : " DIFFERS");
    }
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {9, "worker-count determinism", pass, detail.str()};
}

}  // namespace

CriterionResult run_criterion(int id) {
  static const char* const names[] = {"functional equation residual",
                                      "inversion symmetry X(s)X(1-s) = 1",
                                      "d|X|/dt cross-validation",
                                      "special-function identities",
                                      "kappa threshold",
                                      "critical-line zeros",
                                      "exceptional-point records at 200 digits",
                                      "|X| = 1 curve grid",
                                      "worker-count determinism"};
  const auto start = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    switch (id) {
      case 1: r = functional_equation(); break;
      case 2: r = inversion(); break;
      case 3: r = derivative_forms(); break;
      case 4: r = identities(); break;
      case 5: r = kappa_threshold(); break;
      case 6: r = on_line_zeros(); break;
      case 7: r = spira_rows(); break;
      case 8: r = figure_grid(); break;
      case 9: r = determinism(); break;
      default: throw Error(ErrorCode::DomainError, "no criterion " + std::to_string(id));
    }
  } catch (const std::exception& e) {
    r = {id, (id >= 1 && id <= kCriteria) ? names[id - 1] : "unknown", false, std::string("exception: ") + e.what()};
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CriterionResult> run_all(const std::function<void(const CriterionResult&)>& progress) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= kCriteria; ++id) {
    out.push_back(run_criterion(id));
    if (progress) progress(out.back());
  }
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.pass ? "PASS" : "FAIL") << " [" << r.id << "] " << r.name << ": " << r.detail;
  return os.str();
}

}  // namespace dhzero::acceptance
