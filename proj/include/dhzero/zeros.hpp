#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dhzero/precision.hpp"

namespace dhzero::zeros {

struct Bracket {
  Real t_lo;
  Real t_hi;
};

/// Sign changes of Z(t) between adjacent samples t0, t0 + step, ... (t1 is
/// always sampled). Samples are evaluated on `workers` threads; the result does
/// not depend on the worker count.
std::vector<Bracket> scan_critical_line(const Real& t0, const Real& t1, const Real& step,
                                        const PrecisionContext& ctx, int workers = 1);

struct NewtonStep {
  Complex point;   // iterate after the step
  Real f_abs;      // |f| (or |Z| when constrained) at the iterate
  Real step;       // accepted step length
  int halvings = 0;
};

enum class StopReason { Converged, MaxIterations, LeftRegion, DerivativeUnderflow };
const char* to_string(StopReason r);

struct ZeroCandidate {
  Complex start;
  Complex refined;
  int iterations = 0;
  Real final_step;
  Real f_abs_at_refined;
  bool converged = false;
  StopReason reason = StopReason::MaxIterations;
  std::vector<NewtonStep> trace;
};

struct NewtonOptions {
  int max_iter = 50;
  bool constrain_to_line = false;
  /// Iterates further than this from the start end the refinement unconverged.
  double max_drift = 1.0;
  /// Throw DerivativeUnderflow instead of reporting it in the candidate.
  bool throw_on_underflow = true;
};

/// Damped Newton on f (complex) or on Z(t) with sigma pinned to 1/2.
ZeroCandidate newton_refine(const Complex& start, const PrecisionContext& ctx, const NewtonOptions& options);
ZeroCandidate newton_refine(const Complex& start, const PrecisionContext& ctx, int max_iter, bool constrain_to_line);

struct EvalRecord {
  Complex s;
  Real f_abs;
  Real f1s_abs;
  std::optional<Real> ratio;  // absent when |f(1-s)| == 0
  Real x_abs;
  Real residual;
  int digits = 0;
};

EvalRecord eval_record(const Complex& s, const PrecisionContext& ctx);

enum class Label { StrictZeroOnLine, ApproximateOffLine, NotZero, Indeterminate };
const char* to_string(Label l);

struct Classification {
  Label label;
  EvalRecord evidence;
  Real score;
  ZeroCandidate refinement;
  bool on_line = false;
};

/// |sigma - 1/2| <= 10^-(digits/2)
bool near_critical_line(const Complex& s, const PrecisionContext& ctx);
/// 10^-(0.8 digits)
Real zero_threshold(const PrecisionContext& ctx);

Classification classify_point(const Complex& s, const PrecisionContext& ctx, const Real& kappa);

enum class Trend { GeometricDecrease, Plateau, Mixed };
const char* to_string(Trend t);

struct EscalationStep {
  int digits;
  ZeroCandidate candidate;
  Real f_abs;
};

struct EscalationReport {
  std::vector<EscalationStep> steps;
  Trend trend;
  /// Least-squares slope of -log10|f| against digits; > 0 when |f| shrinks.
  double decay_rate = 0.0;
};

EscalationReport precision_escalation(const std::string& s, const std::vector<int>& digits_list);

}  // namespace dhzero::zeros
