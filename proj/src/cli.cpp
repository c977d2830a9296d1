#include "dhzero/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "dhzero/acceptance.hpp"
#include "dhzero/dh.hpp"
#include "dhzero/kappa_curve.hpp"
#include "dhzero/ratio.hpp"
#include "dhzero/reference_rows.hpp"
#include "dhzero/zeros.hpp"

namespace dhzero::cli {

namespace {

using json = nlohmann::ordered_json;

/// Failures that are not library errors (bad files, bad flag values).
struct CliError {
  std::string code;
  std::string message;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Outcome {
  json input = json::object();
  json result = json::object();
  std::optional<Table> table;  // preferred CSV layout, if any
};

std::string dec(const Real& x, int sig) { return to_decimal(x, sig); }
json cdec(const Complex& z, int sig) { return json{{"re", dec(z.re(), sig)}, {"im", dec(z.im(), sig)}}; }

json record_json(const zeros::EvalRecord& r) {
  const int sig = r.digits;
  return json{{"s", cdec(r.s, sig)},
              {"f_abs", dec(r.f_abs, sig)},
              {"f1s_abs", dec(r.f1s_abs, sig)},
              {"ratio", r.ratio ? json(dec(*r.ratio, sig)) : json(nullptr)},
              {"x_abs", dec(r.x_abs, sig)},
              {"residual", dec(r.residual, sig)},
              {"digits", r.digits}};
}

json candidate_json(const zeros::ZeroCandidate& c, int sig) {
  json trace = json::array();
  for (const auto& st : c.trace) {
    trace.push_back({{"point", cdec(st.point, sig)},
                     {"f_abs", dec(st.f_abs, 6)},
                     {"step", dec(st.step, 6)},
                     {"halvings", st.halvings}});
  }
  return json{{"start", cdec(c.start, sig)},
              {"refined", cdec(c.refined, sig)},
              {"converged", c.converged},
              {"reason", zeros::to_string(c.reason)},
              {"iterations", c.iterations},
              {"final_step", dec(c.final_step, 6)},
              {"f_abs_at_refined", dec(c.f_abs_at_refined, sig)},
              {"trace", trace}};
}

json classification_json(const zeros::Classification& c, int sig) {
  return json{{"label", zeros::to_string(c.label)},
              {"on_line", c.on_line},
              {"score", dec(c.score, sig)},
              {"threshold", "1e-" + std::to_string(static_cast<int>(0.8 * c.evidence.digits))},
              {"evidence", record_json(c.evidence)},
              {"refinement", candidate_json(c.refinement, sig)}};
}

// Rendering ---------------------------------------------------------------------

void flatten(const json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& rows) {
  auto key = [&](const std::string& k) { return prefix.empty() ? k : prefix + "." + k; };
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key(k), rows);
  } else if (j.is_array()) {
    for (size_t i = 0; i < j.size(); ++i) flatten(j[i], key(std::to_string(i)), rows);
  } else if (j.is_string()) {
    rows.emplace_back(prefix, j.get<std::string>());
  } else if (j.is_null()) {
    rows.emplace_back(prefix, "");
  } else {
    rows.emplace_back(prefix, j.dump());
  }
}

std::string csv_cell(const std::string& v) {
  if (v.find_first_of(",\"\n") == std::string::npos) return v;
  std::string q = "\"";
  for (char c : v) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

json envelope(const std::string& command, int digits, const json& input) {
  json e;
  e["tool"] = {{"name", std::string(kToolName)}, {"version", std::string(kVersion)}};
  e["command"] = command;
  e["digits"] = digits;
  e["input"] = input;
  return e;
}

std::string banner(const std::string& command, int digits, const json& input) {
  std::ostringstream os;
  os << "# " << kToolName << ' ' << kVersion << ' ' << command << " digits=" << digits << '\n';
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(input, "", rows);
  for (const auto& [k, v] : rows) os << "# " << k << '=' << v << '\n';
  return os.str();
}

std::string render(const std::string& format, const std::string& command, int digits, const Outcome& o) {
  if (format == "json") {
    json e = envelope(command, digits, o.input);
    e["result"] = o.result;
    return e.dump(2) + "\n";
  }
  std::ostringstream os;
  os << banner(command, digits, o.input);
  if (format == "csv" && o.table) {
    for (size_t i = 0; i < o.table->header.size(); ++i) os << (i ? "," : "") << o.table->header[i];
    os << '\n';
    for (const auto& row : o.table->rows) {
      for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_cell(row[i]);
      os << '\n';
    }
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> rows;
  flatten(o.result, "", rows);
  if (format == "csv") {
    os << "key,value\n";
    for (const auto& [k, v] : rows) os << csv_cell(k) << ',' << csv_cell(v) << '\n';
  } else {
    for (const auto& [k, v] : rows) os << k << ": " << v << '\n';
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError{"IOError", "cannot open " + path + " for writing"};
  f << content;
  if (!f) throw CliError{"IOError", "failed writing " + path};
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!text.empty() && text.back() == sep) out.emplace_back();
  return out;
}

int parse_int(const std::string& text, const std::string& what) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw Error(ErrorCode::ParseError, "invalid " + what + ": '" + text + "'");
  return v;
}

// Commands ---------------------------------------------------------------------

Outcome cmd_eval(const std::string& s_text, const PrecisionContext& ctx) {
  const int sig = ctx.digits();
  const Complex s = parse_complex(s_text, ctx);
  Outcome o;
  o.input["s"] = s_text;
  const Complex f = dh::f_eval(s, ctx);
  const Complex x = dh::x_eval(s, ctx);
  o.result["s"] = cdec(s, sig);
  o.result["f"] = cdec(f, sig);
  o.result["f_abs"] = dec(abs(f), sig);
  o.result["x"] = cdec(x, sig);
  o.result["x_abs"] = dec(abs(x), sig);
  o.result["residual"] = dec(dh::functional_equation_residual(s, ctx), sig);
  return o;
}

Outcome cmd_record(const std::string& s_text, const PrecisionContext& ctx) {
  Outcome o;
  o.input["s"] = s_text;
  o.result = record_json(zeros::eval_record(parse_complex(s_text, ctx), ctx));
  return o;
}

Outcome cmd_classify(const std::string& s_text, const std::string& kappa_text, const PrecisionContext& ctx) {
  Outcome o;
  o.input["s"] = s_text;
  o.input["kappa"] = kappa_text.empty() ? json(nullptr) : json(kappa_text);
  const Real kappa = kappa_text.empty() ? kappa_curve::kappa_reduction(ctx) : parse_decimal(kappa_text, ctx);
  const auto c = zeros::classify_point(parse_complex(s_text, ctx), ctx, kappa);
  o.result = classification_json(c, ctx.digits());
  o.result["kappa"] = dec(kappa, ctx.digits());
  return o;
}

Outcome cmd_scan(const std::string& t0, const std::string& t1, const std::string& step, int workers,
                 const PrecisionContext& ctx) {
  Outcome o;
  o.input = {{"t0", t0}, {"t1", t1}, {"step", step}};
  const auto brackets =
      zeros::scan_critical_line(parse_decimal(t0, ctx), parse_decimal(t1, ctx), parse_decimal(step, ctx), ctx, workers);
  json list = json::array();
  Table table{{"t_lo", "t_hi"}, {}};
  for (const auto& b : brackets) {
    const std::string lo = dec(b.t_lo, ctx.digits()), hi = dec(b.t_hi, ctx.digits());
    list.push_back({{"t_lo", lo}, {"t_hi", hi}});
    table.rows.push_back({lo, hi});
  }
  o.result["count"] = brackets.size();
  o.result["brackets"] = list;
  o.table = std::move(table);
  return o;
}

Outcome cmd_refine(const std::string& s_text, bool on_line, int max_iter, const PrecisionContext& ctx) {
  Outcome o;
  o.input = {{"s", s_text}, {"on_line", on_line}, {"max_iter", max_iter}};
  zeros::NewtonOptions opt;
  opt.max_iter = max_iter;
  opt.constrain_to_line = on_line;
  opt.throw_on_underflow = false;
  o.result = candidate_json(zeros::newton_refine(parse_complex(s_text, ctx), ctx, opt), ctx.digits());
  return o;
}

Outcome cmd_escalate(const std::string& s_text, const std::vector<int>& digits_list) {
  Outcome o;
  o.input = {{"s", s_text}, {"digits_list", digits_list}};
  const auto report = zeros::precision_escalation(s_text, digits_list);
  json steps = json::array();
  for (const auto& st : report.steps) {
    steps.push_back({{"digits", st.digits},
                     {"refined", cdec(st.candidate.refined, st.digits)},
                     {"converged", st.candidate.converged},
                     {"reason", zeros::to_string(st.candidate.reason)},
                     {"f_abs", dec(st.f_abs, 10)}});
  }
  o.result["steps"] = steps;
  o.result["trend"] = zeros::to_string(report.trend);
  std::ostringstream rate;
  rate.precision(6);
  rate << report.decay_rate;
  o.result["decay_rate"] = rate.str();
  return o;
}

Outcome cmd_kappa(const std::string& eps_text, const PrecisionContext& ctx) {
  Outcome o;
  o.input["eps"] = eps_text.empty() ? json(nullptr) : json(eps_text);
  const Real eps = eps_text.empty() ? kappa_curve::default_epsilon(ctx) : parse_decimal(eps_text, ctx);
  const auto r = kappa_curve::kappa_solve(eps, ctx);
  const int sig = ctx.digits();
  o.result = {{"kappa", dec(r.kappa, sig)},
              {"epsilon", dec(r.epsilon, 6)},
              {"bracket", {dec(r.t_lo, sig), dec(r.t_hi, sig)}},
              {"residual", dec(r.residual, 6)},
              {"bisections", r.bisections},
              {"reduction_kappa", dec(r.reduction_kappa, sig / 2)},
              {"reduction_gap", dec(abs(r.kappa - r.reduction_kappa), 6)},
              {"reference", std::string(kReferenceKappa)}};
  return o;
}

Outcome cmd_curve(const std::string& box_text, const std::string& res_text, const std::string& out_path, int workers,
                  const PrecisionContext& ctx) {
  if (out_path.empty()) throw CliError{"UsageError", "curve requires --out <grid.csv>"};
  const mpfr_prec_t wp = ctx.bits();
  kappa_curve::Box box = kappa_curve::default_box(wp);
  if (!box_text.empty()) {
    const auto parts = split(box_text, ',');
    if (parts.size() != 4) throw Error(ErrorCode::ParseError, "--box expects sigma_min,sigma_max,t_min,t_max");
    box = {parse_decimal(parts[0], ctx), parse_decimal(parts[1], ctx), parse_decimal(parts[2], ctx),
           parse_decimal(parts[3], ctx)};
  }
  kappa_curve::Resolution res;
  if (!res_text.empty()) {
    const auto parts = split(res_text, ',');
    if (parts.size() != 2) throw Error(ErrorCode::ParseError, "--res expects n_sigma,n_t");
    res = {parse_int(parts[0], "n_sigma"), parse_int(parts[1], "n_t")};
  }

  const auto grid = kappa_curve::implicit_curve_grid(box, res, ctx, workers);
  const auto segments = kappa_curve::trace_segments(grid);
  constexpr int kSig = 20;

  Outcome o;
  o.input = {{"box",
              {dec(box.sigma_min, kSig), dec(box.sigma_max, kSig), dec(box.t_min, kSig), dec(box.t_max, kSig)}},
             {"resolution", {res.n_sigma, res.n_t}},
             {"out", out_path}};

  std::ostringstream csv;
  csv << banner("curve", ctx.digits(), o.input);
  csv << "sigma,t,log_abs_x,masked\n";
  for (int j = 0; j < res.n_t; ++j) {
    for (int i = 0; i < res.n_sigma; ++i) {
      const size_t idx = static_cast<size_t>(j) * res.n_sigma + i;
      csv << dec(grid.sigmas[i], kSig) << ',' << dec(grid.ts[j], kSig) << ',' << dec(grid.values[idx], kSig) << ','
          << static_cast<int>(grid.singular_nodes[idx]) << '\n';
    }
  }
  json lines = json::array();
  size_t points = 0;
  for (const auto& line : segments) {
    json pl = json::array();
    for (const auto& p : line) pl.push_back({dec(p.sigma, kSig), dec(p.t, kSig)});
    points += line.size();
    lines.push_back(std::move(pl));
  }
  const std::string seg_path = out_path + ".segments.json";
  write_file(out_path, csv.str());
  write_file(seg_path, lines.dump() + "\n");

  json masked = json::array();
  for (int j = 0; j + 1 < res.n_t; ++j) {
    for (int i = 0; i + 1 < res.n_sigma; ++i) {
      if (grid.cell_masked(i, j)) {
        masked.push_back({{"sigma", {dec(grid.sigmas[i], kSig), dec(grid.sigmas[i + 1], kSig)}},
                          {"t", {dec(grid.ts[j], kSig), dec(grid.ts[j + 1], kSig)}}});
      }
    }
  }
  const auto apex = kappa_curve::off_line_apex(grid, segments);
  o.result = {{"nodes", grid.values.size()},
              {"masked_cells", masked},
              {"polylines", segments.size()},
              {"points", points},
              {"off_line_apex", apex ? json(dec(*apex, kSig)) : json(nullptr)},
              {"files", {{"grid", out_path}, {"segments", seg_path}}}};
  return o;
}

bool within_relative(const Real& computed, std::string_view reference, double tol, const PrecisionContext& ctx) {
  const Real ref = parse_decimal(reference, ctx);
  return abs(computed - ref) <= abs(ref) * Real::from_double(tol, ctx.bits());
}

Outcome cmd_table1(const PrecisionContext& ctx) {
  const int sig = ctx.digits();
  const Real kappa = kappa_curve::kappa_reduction(ctx);
  Outcome o;
  o.input["relative_tolerance"] = "0.25";
  json rows = json::array();
  Table table{{"row", "s", "f_abs", "f1s_abs", "ratio", "x_abs", "label", "score", "ref_ratio", "ref_x_abs",
               "ref_label", "ratio_agrees", "x_abs_agrees", "label_agrees"},
              {}};
  for (const auto& ref : kReferenceRows) {
    const Complex s = parse_complex(ref.s, ctx);
    const auto rec = zeros::eval_record(s, ctx);
    const auto cls = zeros::classify_point(s, ctx, kappa);
    const bool strict = ref.classification == "Strict Zero";
    const bool label_ok = cls.label == (strict ? zeros::Label::StrictZeroOnLine : zeros::Label::ApproximateOffLine);
    const bool ratio_ok = rec.ratio && within_relative(*rec.ratio, ref.ratio, 0.25, ctx);
    const bool x_ok = within_relative(rec.x_abs, ref.x_abs, 0.25, ctx);

    json row;
    row["row"] = std::string(ref.name);
    row["computed"] = record_json(rec);
    row["reference"] = {{"f_abs", std::string(ref.f_abs)},
                        {"f1s_abs", std::string(ref.f1s_abs)},
                        {"ratio", std::string(ref.ratio)},
                        {"x_abs", std::string(ref.x_abs)},
                        {"classification", std::string(ref.classification)}};
    row["agreement"] = {{"ratio", ratio_ok}, {"x_abs", x_ok}, {"classification", label_ok}};
    row["classification"] = {{"label", zeros::to_string(cls.label)},
                             {"on_line", cls.on_line},
                             {"score", dec(cls.score, sig)},
                             {"refined", record_json(cls.evidence)},
                             {"refinement_converged", cls.refinement.converged},
                             {"iterations", cls.refinement.iterations}};
    rows.push_back(std::move(row));
    table.rows.push_back({std::string(ref.name), to_decimal(s, 20), dec(rec.f_abs, 10), dec(rec.f1s_abs, 10),
                          rec.ratio ? dec(*rec.ratio, 10) : "", dec(rec.x_abs, 10), zeros::to_string(cls.label),
                          dec(cls.score, 10), std::string(ref.ratio), std::string(ref.x_abs),
                          std::string(ref.classification), ratio_ok ? "1" : "0", x_ok ? "1" : "0",
                          label_ok ? "1" : "0"});
  }
  o.result["kappa"] = dec(kappa, sig / 2);
  o.result["rows"] = rows;
  o.table = std::move(table);
  return o;
}

Outcome cmd_selftest(std::ostream& err, bool& all_pass) {
  Outcome o;
  json list = json::array();
  int failed = 0;
  const auto results = acceptance::run_all([&](const acceptance::CriterionResult& r) {
    err << acceptance::format_line(r) << '\n';
    err.flush();
  });
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    list.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  o.result["criteria"] = list;
  o.result["passed"] = static_cast<int>(results.size()) - failed;
  o.result["failed"] = failed;
  all_pass = failed == 0;
  return o;
}

std::optional<int> env_digits() {
  const char* env = std::getenv("DHZERO_DIGITS");
  if (env == nullptr || *env == '\0') return std::nullopt;
  return parse_int(env, "DHZERO_DIGITS");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multiprecision evaluation, zero classification and |X| = 1 curves for the Davenport-Heilbronn function",
               std::string(kToolName)};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kVersion));

  std::optional<int> digits_flag;
  std::string format = "json", out_path;
  int workers = 1;
  app.add_option("--digits", digits_flag, "Decimal digits (default 60 or $DHZERO_DIGITS)");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--out", out_path, "Write output to this file");
  app.add_option("--workers", workers, "Worker threads for scan and curve")->check(CLI::PositiveNumber);

  std::string s_text, t0, t1, step = "0.1", kappa_text, digits_list = "50,100,200", eps_text, box_text, res_text;
  bool on_line = false;
  int max_iter = 50;

  auto* eval = app.add_subcommand("eval", "f(s), X(s) and the functional-equation residual");
  eval->add_option("s", s_text, "Complex point, e.g. 0.3+5i")->required();
  auto* record = app.add_subcommand("record", "Evaluation record |f(s)|, |f(1-s)|, ratio, |X(s)|");
  record->add_option("s", s_text)->required();
  auto* classify = app.add_subcommand("classify", "Refine and classify a candidate zero");
  classify->add_option("s", s_text)->required();
  classify->add_option("--kappa", kappa_text, "Threshold used in the pseudo-zero score");
  auto* scan = app.add_subcommand("scan", "Sign changes of Z(t) on the critical line");
  scan->add_option("t0", t0)->required();
  scan->add_option("t1", t1)->required();
  scan->add_option("--step", step, "Sampling step (default 0.1)");
  auto* refine = app.add_subcommand("refine", "Damped Newton refinement");
  refine->add_option("s", s_text)->required();
  refine->add_flag("--on-line", on_line, "Pin sigma to 1/2 and iterate on Z(t)");
  refine->add_option("--max-iter", max_iter)->check(CLI::PositiveNumber);
  auto* escalate = app.add_subcommand("escalate", "Re-refine at increasing precision");
  escalate->add_option("s", s_text)->required();
  escalate->add_option("--digits", digits_list, "Comma-separated precisions (default 50,100,200)");
  auto* kappa = app.add_subcommand("kappa", "Solve for the |t| threshold kappa");
  kappa->add_option("--eps", eps_text, "Offset from sigma = 1/2");
  auto* curve = app.add_subcommand("curve", "Grid of log|X| and the |X| = 1 polylines");
  curve->add_option("--box", box_text, "sigma_min,sigma_max,t_min,t_max (use --box=...)");
  curve->add_option("--res", res_text, "n_sigma,n_t node counts (default 261,121)");
  auto* table1 = app.add_subcommand("table1", "Recompute the reference rows at their stored coordinates");
  auto* selftest = app.add_subcommand("selftest", "Run the acceptance suite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  int digits = 60;
  bool pass = true;
  auto fail = [&](const std::string& code, const std::string& message) {
    json e = envelope(command, digits, json{{"args", args}});
    e["error"] = {{"code", code}, {"message", message}};
    out << e.dump(2) << '\n';
    return kUsageError;
  };

  try {
    if (digits_flag) {
      digits = *digits_flag;
    } else if (auto env = env_digits()) {
      digits = *env;
    }
    Outcome o;
    if (sub == escalate) {
      std::vector<int> list;
      for (const auto& part : split(digits_list, ',')) list.push_back(parse_int(part, "precision list"));
      o = cmd_escalate(s_text, list);
      digits = list.empty() ? digits : *std::max_element(list.begin(), list.end());
    } else if (sub == selftest) {
      o = cmd_selftest(err, pass);
    } else {
      const PrecisionContext ctx(digits);
      if (sub == eval) o = cmd_eval(s_text, ctx);
      else if (sub == record) o = cmd_record(s_text, ctx);
      else if (sub == classify) o = cmd_classify(s_text, kappa_text, ctx);
      else if (sub == scan) o = cmd_scan(t0, t1, step, workers, ctx);
      else if (sub == refine) o = cmd_refine(s_text, on_line, max_iter, ctx);
      else if (sub == kappa) o = cmd_kappa(eps_text, ctx);
      else if (sub == curve) o = cmd_curve(box_text, res_text, out_path, workers, ctx);
      else if (sub == table1) o = cmd_table1(ctx);
    }
    o.input["format"] = format;
    const std::string text = render(format, command, digits, o);
    if (!out_path.empty() && sub != curve) {
      write_file(out_path, text);
    } else {
      out << text;
    }
  } catch (const Error& e) {
    return fail(std::string(to_string(e.code())), e.what());
  } catch (const CliError& e) {
    return fail(e.code, e.message);
  } catch (const std::exception& e) {
    return fail("InternalError", e.what());
  }
  return pass ? kOk : kSelftestFailed;
}

}  // namespace dhzero::cli
