#include "dhzero/zeros.hpp"

#include <cmath>
#include <numeric>

#include "dhzero/dh.hpp"
#include "dhzero/parallel.hpp"
#include "dhzero/ratio.hpp"

namespace dhzero::zeros {

const char* to_string(StopReason r) {
  switch (r) {
    case StopReason::Converged: return "Converged";
    case StopReason::MaxIterations: return "MaxIterations";
    case StopReason::LeftRegion: return "LeftRegion";
    case StopReason::DerivativeUnderflow: return "DerivativeUnderflow";
  }
  return "?";
}

const char* to_string(Label l) {
  switch (l) {
    case Label::StrictZeroOnLine: return "StrictZeroOnLine";
    case Label::ApproximateOffLine: return "ApproximateOffLine";
    case Label::NotZero: return "NotZero";
    case Label::Indeterminate: return "Indeterminate";
  }
  return "?";
}

const char* to_string(Trend t) {
  switch (t) {
    case Trend::GeometricDecrease: return "GeometricDecrease";
    case Trend::Plateau: return "Plateau";
    case Trend::Mixed: return "Mixed";
  }
  return "?";
}

// Scanning ---------------------------------------------------------------

std::vector<Bracket> scan_critical_line(const Real& t0_in, const Real& t1_in, const Real& step_in,
                                        const PrecisionContext& ctx, int workers) {
  const mpfr_prec_t wp = ctx.bits();
  const Real t0 = t0_in.at(wp), t1 = t1_in.at(wp), step = step_in.at(wp);
  if (!(step > 0L)) throw Error(ErrorCode::DomainError, "scan step must be positive");
  if (t1 < t0) throw Error(ErrorCode::DomainError, "scan range must satisfy t0 <= t1");

  const long count = floor((t1 - t0) / step).to_long();
  std::vector<Real> ts;
  ts.reserve(static_cast<size_t>(count) + 2);
  for (long k = 0; k <= count; ++k) ts.push_back(t0 + step * k);
  if (ts.back() < t1) ts.push_back(t1);

  std::vector<int> signs(ts.size(), 0);
  detail::parallel_for(ts.size(), workers, [&](size_t i) {
    signs[i] = dh::z_function(ts[i], ctx).value.sign();
  });

  std::vector<Bracket> out;
  for (size_t i = 0; i + 1 < ts.size(); ++i) {
    const int a = signs[i] >= 0 ? 1 : -1;
    const int b = signs[i + 1] >= 0 ? 1 : -1;
    if (a != b) out.push_back({ts[i], ts[i + 1]});
  }
  return out;
}

// Newton -----------------------------------------------------------------

namespace {

ZeroCandidate refine_complex(const Complex& start_in, const PrecisionContext& ctx, const NewtonOptions& opt) {
  const mpfr_prec_t wp = ctx.bits();
  const Complex start = start_in.at(wp);
  const Real tol = pow10_neg(ctx.digits() - 10, wp);
  const Real underflow = pow10_neg(ctx.digits(), wp);
  const Real drift = Real::from_double(opt.max_drift, wp);

  ZeroCandidate cand{start, start, 0, Real(wp), Real(wp), false, StopReason::MaxIterations, {}};
  Complex s = start;
  dh::FValue fv = dh::f_with_derivative(s, ctx);
  Real f_abs = abs(fv.value);

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    if (abs(fv.derivative) < underflow) {
      if (opt.throw_on_underflow) throw Error(ErrorCode::DerivativeUnderflow, "|f'| fell below 10^-digits");
      cand.reason = StopReason::DerivativeUnderflow;
      break;
    }
    const Complex full = fv.value / fv.derivative;
    const Real full_len = abs(full);

    if (full_len <= tol) {
      s -= full;
      cand.iterations = iter + 1;
      cand.final_step = full_len;
      cand.converged = true;
      cand.reason = StopReason::Converged;
      const Real fa = abs(dh::f_eval(s, ctx));
      cand.trace.push_back({s, fa, full_len, 0});
      break;
    }

    // Halve the step (at most 10 times) while |f| would grow.
    Complex trial = s - full;
    Real trial_abs = abs(dh::f_eval(trial, ctx));
    Real scale(1, wp);
    int halvings = 0;
    while (trial_abs > f_abs && halvings < 10) {
      scale /= 2;
      ++halvings;
      trial = s - full * scale;
      trial_abs = abs(dh::f_eval(trial, ctx));
    }
    if (abs(trial - start) > drift) {
      cand.reason = StopReason::LeftRegion;
      break;
    }
    s = trial;
    cand.iterations = iter + 1;
    cand.final_step = full_len * scale;
    cand.trace.push_back({s, trial_abs, cand.final_step, halvings});
    fv = dh::f_with_derivative(s, ctx);
    f_abs = abs(fv.value);
  }

  cand.refined = s;
  cand.f_abs_at_refined = cand.converged ? cand.trace.back().f_abs : abs(dh::f_eval(s, ctx));
  return cand;
}

ZeroCandidate refine_on_line(const Complex& start_in, const PrecisionContext& ctx, const NewtonOptions& opt) {
  const mpfr_prec_t wp = ctx.bits();
  const Real half = rational(1, 2, wp);
  const Complex start = start_in.at(wp);
  const Real tol = pow10_neg(ctx.digits() - 10, wp);
  const Real underflow = pow10_neg(ctx.digits(), wp);
  const Real drift = Real::from_double(opt.max_drift, wp);
  auto on_line = [&](const Real& t) { return Complex(half, t); };

  ZeroCandidate cand{start, on_line(start.im()), 0, Real(wp), Real(wp), false, StopReason::MaxIterations, {}};
  Real t = start.im();
  dh::ZDerivative z = dh::z_with_derivative(t, ctx);

  for (int iter = 0; iter < opt.max_iter; ++iter) {
    if (abs(z.derivative) < underflow) {
      if (opt.throw_on_underflow) throw Error(ErrorCode::DerivativeUnderflow, "|Z'(t)| fell below 10^-digits");
      cand.reason = StopReason::DerivativeUnderflow;
      break;
    }
    const Real full = z.value / z.derivative;
    const Real full_len = abs(full);
    if (full_len <= tol) {
      t -= full;
      cand.iterations = iter + 1;
      cand.final_step = full_len;
      cand.converged = true;
      cand.reason = StopReason::Converged;
      cand.trace.push_back({on_line(t), abs(dh::z_function(t, ctx).value), full_len, 0});
      break;
    }
    const Real z_abs = abs(z.value);
    Real trial = t - full;
    Real trial_abs = abs(dh::z_function(trial, ctx).value);
    Real scale(1, wp);
    int halvings = 0;
    while (trial_abs > z_abs && halvings < 10) {
      scale /= 2;
      ++halvings;
      trial = t - full * scale;
      trial_abs = abs(dh::z_function(trial, ctx).value);
    }
    if (abs(trial - start.im()) > drift) {
      cand.reason = StopReason::LeftRegion;
      break;
    }
    t = trial;
    cand.iterations = iter + 1;
    cand.final_step = full_len * scale;
    cand.trace.push_back({on_line(t), trial_abs, cand.final_step, halvings});
    z = dh::z_with_derivative(t, ctx);
  }

  cand.refined = on_line(t);
  cand.f_abs_at_refined = abs(dh::f_eval(cand.refined, ctx));
  return cand;
}

}  // namespace

ZeroCandidate newton_refine(const Complex& start, const PrecisionContext& ctx, const NewtonOptions& options) {
  if (options.max_iter < 1) throw Error(ErrorCode::DomainError, "max_iter must be >= 1");
  return options.constrain_to_line ? refine_on_line(start, ctx, options) : refine_complex(start, ctx, options);
}

ZeroCandidate newton_refine(const Complex& start, const PrecisionContext& ctx, int max_iter, bool constrain_to_line) {
  NewtonOptions options;
  options.max_iter = max_iter;
  options.constrain_to_line = constrain_to_line;
  return newton_refine(start, ctx, options);
}

// Records and classification ----------------------------------------------

EvalRecord eval_record(const Complex& s_in, const PrecisionContext& ctx) {
  const Complex s = s_in.at(ctx.bits());
  if (dh::is_pole_of_x(s)) throw Error(ErrorCode::PoleOfX, "X(s) has a pole at s = " + to_decimal(s.re(), 20));
  const Complex reflected = 1L - s;
  const Complex f = dh::f_eval(s, ctx);
  const Complex f1 = dh::f_eval(reflected, ctx);
  const Complex x = dh::x_eval(s, ctx);

  EvalRecord rec{s, abs(f), abs(f1), std::nullopt, abs(x), Real(ctx.bits()), ctx.digits()};
  if (!rec.f1s_abs.is_zero()) rec.ratio = rec.f_abs / rec.f1s_abs;

  const Complex rhs = x * f1;
  const Real floor = pow10_neg(ctx.digits(), ctx.bits());
  rec.residual = abs(f - rhs) / max(max(rec.f_abs, abs(rhs)), floor);
  return rec;
}

bool near_critical_line(const Complex& s, const PrecisionContext& ctx) {
  const mpfr_prec_t wp = ctx.bits();
  return abs(s.re().at(wp) - rational(1, 2, wp)) <= pow10_neg(ctx.digits() / 2, wp);
}

Real zero_threshold(const PrecisionContext& ctx) {
  return pow10_neg(static_cast<long>(std::floor(0.8 * ctx.digits())), ctx.bits());
}

Classification classify_point(const Complex& s_in, const PrecisionContext& ctx, const Real& kappa) {
  const Complex s = s_in.at(ctx.bits());
  NewtonOptions opt;
  opt.max_iter = 50;
  opt.constrain_to_line = near_critical_line(s, ctx);
  opt.throw_on_underflow = false;

  ZeroCandidate cand = newton_refine(s, ctx, opt);
  const Complex& point = cand.converged ? cand.refined : s;
  EvalRecord rec = eval_record(point, ctx);
  const Real threshold = zero_threshold(ctx);
  const bool small = rec.f_abs <= threshold;
  const bool on_line = near_critical_line(point, ctx);

  Label label;
  if (cand.converged) {
    label = small ? (on_line ? Label::StrictZeroOnLine : Label::ApproximateOffLine) : Label::Indeterminate;
  } else {
    label = small ? Label::Indeterminate : Label::NotZero;
  }
  Real score = ratio::pseudo_zero_score(point.re(), point.im(), kappa);
  return Classification{label, std::move(rec), std::move(score), std::move(cand), on_line};
}

// Escalation ----------------------------------------------------------------

EscalationReport precision_escalation(const std::string& s_text, const std::vector<int>& digits_list) {
  if (digits_list.empty()) throw Error(ErrorCode::DomainError, "digits_list must not be empty");
  for (size_t i = 0; i < digits_list.size(); ++i) {
    if (digits_list[i] < PrecisionContext::kMinDigits) {
      throw Error(ErrorCode::PrecisionTooLow, "every escalation precision must be >= 30");
    }
    if (i > 0 && digits_list[i] <= digits_list[i - 1]) {
      throw Error(ErrorCode::DomainError, "digits_list must be strictly ascending");
    }
  }

  EscalationReport report{{}, Trend::Mixed, 0.0};
  std::vector<double> logs;
  for (int d : digits_list) {
    const PrecisionContext ctx(d);
    const Complex s = parse_complex(s_text, ctx);
    NewtonOptions opt;
    opt.constrain_to_line = near_critical_line(s, ctx);
    opt.throw_on_underflow = false;
    ZeroCandidate cand = newton_refine(s, ctx, opt);
    Real f_abs = cand.f_abs_at_refined;
    // An exact zero is reported as the working-precision floor.
    logs.push_back(f_abs.is_zero() ? -static_cast<double>(ctx.total_digits()) : log10(f_abs).to_double());
    report.steps.push_back({d, std::move(cand), std::move(f_abs)});
  }

  if (logs.size() >= 2) {
    bool decreasing = true, flat = true;
    for (size_t i = 1; i < logs.size(); ++i) {
      const double dd = digits_list[i] - digits_list[i - 1];
      const double dl = logs[i] - logs[i - 1];
      if (dl > -0.25 * dd) decreasing = false;
      if (std::fabs(dl) > 1e-3) flat = false;
    }
    report.trend = decreasing ? Trend::GeometricDecrease : (flat ? Trend::Plateau : Trend::Mixed);

    const double n = static_cast<double>(logs.size());
    const double mx = std::accumulate(digits_list.begin(), digits_list.end(), 0.0) / n;
    const double my = std::accumulate(logs.begin(), logs.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (size_t i = 0; i < logs.size(); ++i) {
      sxy += (digits_list[i] - mx) * (logs[i] - my);
      sxx += (digits_list[i] - mx) * (digits_list[i] - mx);
    }
    report.decay_rate = -sxy / sxx;
  }
  return report;
}

}  // namespace dhzero::zeros
