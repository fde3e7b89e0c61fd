#pragma once

/**
 * The commands behind the `twcurve` executable. Each command reads a parsed
 * job file and produces either human-readable text or a JSON document, plus
 * an exit code:
 *   0  success
 *   1  mathematical failure (no relation, wrong pole orders, failed check, ...)
 *   2  input error (syntax, missing keys, values outside the field)
 *   3  unresolved (a root could not be decided in the declared field)
 *
 * The text printed by `twform` is itself a job file with `eq:` lines, and
 * `verify` also accepts the JSON document printed by `twform --json`.
 */

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "twcurve/cli/json_io.hpp"
#include "twcurve/errors.hpp"
#include "twcurve/function_field.hpp"
#include "twcurve/jobspec.hpp"
#include "twcurve/normal_forms.hpp"
#include "twcurve/puiseux.hpp"
#include "twcurve/scaling.hpp"
#include "twcurve/semigroup.hpp"
#include "twcurve/series_eval.hpp"
#include "twcurve/tw_curve.hpp"

namespace twc::cli {

enum class Command { Expand, Semigroup, NormalForms, TwForm, Inverse, Iso, Aut, Verify };

inline const std::vector<std::pair<std::string, Command>>& command_names() {
  static const std::vector<std::pair<std::string, Command>> names{
      {"expand", Command::Expand}, {"semigroup", Command::Semigroup}, {"normalforms", Command::NormalForms},
      {"twform", Command::TwForm}, {"inverse", Command::Inverse},     {"iso", Command::Iso},
      {"aut", Command::Aut},       {"verify", Command::Verify}};
  return names;
}

inline std::optional<Command> parse_command(std::string_view name) {
  for (const auto& [n, c] : command_names())
    if (n == name) return c;
  return std::nullopt;
}

inline std::string command_name(Command c) {
  for (const auto& [n, v] : command_names())
    if (v == c) return n;
  return "?";
}

struct CommandOptions {
  std::optional<long> order;          // expansion order for `expand`
  std::optional<long> max_precision;  // cap on series terms and relative precision
  std::optional<long> max_degree;     // cap on the weighted degree in `inverse` and the isomorphism check
  bool json = false;
};

struct CommandResult {
  int exit_code = 0;
  std::string output;  // ends with a newline
  bool is_error = false;  // output is a diagnostic rather than a result
};

inline constexpr int kExitOk = 0, kExitMath = 1, kExitInput = 2, kExitUnresolved = 3;

namespace detail {

struct Settings {
  long order = 8;
  long max_precision = 400;
  long max_degree = 64;
};

inline Settings settings(const JobSpec& job, const CommandOptions& opt) {
  Settings s;
  if (job.order) s.order = *job.order;
  if (job.max_precision) s.max_precision = *job.max_precision;
  if (job.max_degree) s.max_degree = *job.max_degree;
  if (opt.order) s.order = *opt.order;
  if (opt.max_precision) s.max_precision = *opt.max_precision;
  if (opt.max_degree) s.max_degree = *opt.max_degree;
  if (s.order < 1) throw InvalidInput("order must be positive");
  if (s.max_precision < 1) throw InvalidInput("max-precision must be positive");
  if (s.max_degree < 1) throw InvalidInput("max-degree must be positive");
  return s;
}

inline const CurveSpec& curve_of(const JobSpec& job, bool second) {
  const auto& c = second ? job.second : job.first;
  const char* suffix = second ? "2" : "";
  if (!c) throw InvalidInput(std::string("job file has no 'curve") + suffix + ":' line");
  if (c->place_text.empty()) throw InvalidInput(std::string("job file has no 'place") + suffix + ":' line");
  return *c;
}

inline PlaceParametrization place_of(const CurveSpec& c, long order, const Settings& s) {
  return expand_place(c.curve, c.center, c.branch, order, s.max_precision);
}

inline std::vector<int> pole_orders(const CurveSpec& c, const Settings& s) {
  if (c.generators.empty()) throw InvalidInput("job file has no 'gen:' lines");
  PlaceParametrization place = place_of(c, 8, s);
  std::vector<int> out;
  for (std::size_t i = 0; i < c.generators.size(); ++i) {
    auto ev = series_evaluate(c.generators[i], place, 1);
    place = ev.place;
    if (ev.series.is_zero_to_truncation() || ev.series.order() >= 0)
      throw WrongPoleOrders("generator f" + std::to_string(i + 1) + " has no pole at the place");
    out.push_back(static_cast<int>(-ev.series.order()));
  }
  return out;
}

inline TWCurve build(const CurveSpec& c, const Settings& s) {
  if (c.generators.empty()) throw InvalidInput("job file has no 'gen:' lines");
  TWOptions opt;
  opt.relation.max_relative_precision = s.max_precision;
  return build_tw(c.curve, place_of(c, 8, s), c.generators, opt);
}

inline Encoder encoder_for(const JobSpec& job) { return Encoder{job.field ? job.field->degree() : 1}; }

inline std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? sep : "") + parts[i];
  return out;
}

template <class T>
std::string join_numbers(const std::vector<T>& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(std::to_string(x));
  return join(s, " ");
}

inline std::string branch_text(const BranchChoice& b) {
  std::vector<std::string> s;
  for (const auto& d : b) s.push_back(std::to_string(d.segment) + "/" + std::to_string(d.root));
  return join(s, ", ");
}

inline std::vector<std::string> f_names(std::size_t r) { return indexed_names(r, "f"); }

/// Job-file lines describing the field, curve and place.
inline std::vector<std::pair<std::string, std::string>> job_header(const JobSpec& job, const CurveSpec& c) {
  std::vector<std::pair<std::string, std::string>> out;
  static const std::string xy[] = {"x", "y"};
  if (job.field) out.emplace_back("field", job.field->is_rationals() ? job.field_text : job.field->modulus().to_string("a"));
  out.emplace_back("curve", to_string(c.curve, xy));
  out.emplace_back("place", c.center.to_string());
  if (!c.branch.empty()) out.emplace_back("branch", branch_text(c.branch));
  return out;
}

inline Json checks_json(const TWReport& rep) {
  Json arr = Json::array();
  for (const auto& c : rep.checks) {
    Json o{{"stage", c.stage}, {"key", c.key}, {"description", c.description}, {"passed", c.passed}};
    if (!c.detail.empty()) o["detail"] = c.detail;
    arr.push_back(o);
  }
  return Json{{"passed", rep.passed()}, {"checks", arr}};
}

inline std::string checks_text(const TWReport& rep) {
  std::ostringstream os;
  for (const auto& c : rep.checks) {
    os << (c.passed ? "  ok    " : "  FAIL  ") << (c.stage ? "F" + std::to_string(c.stage) + " " : "") << c.key << ": "
       << c.description;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << "\n";
  }
  os << (rep.passed() ? "all checks passed\n" : "some checks FAILED\n");
  return os.str();
}

struct Output {
  Json json = Json::object();
  std::string text;
  int exit_code = kExitOk;
};

inline Output run_expand(const JobSpec& job, const Settings& s) {
  const CurveSpec& c = curve_of(job, false);
  PlaceParametrization p = place_of(c, s.order, s);
  Encoder enc = encoder_for(job);
  Output out;
  out.json["place"] = Json{{"x", c.center.x.to_string()}, {"y", c.center.y.to_string()}};
  out.json["ramification_index"] = p.ramification_index();
  out.json["order"] = s.order;
  out.json["x"] = enc.series(p.x_series());
  out.json["y"] = enc.series(p.y_series().truncated(std::min(p.order(), s.order)));
  std::ostringstream os;
  os << "place: " << c.center.to_string() << "\n"
     << "ramification index: " << p.ramification_index() << "\n"
     << "x = " << p.x_series().to_string() << "\n"
     << "y = " << p.y_series().truncated(std::min(p.order(), s.order)).to_string() << "\n";
  out.text = os.str();
  return out;
}

inline Output run_semigroup(const JobSpec& job, const Settings& s) {
  std::vector<int> orders = pole_orders(curve_of(job, false), s);
  std::vector<int> sorted = orders;
  std::sort(sorted.begin(), sorted.end());
  NumericalSemigroup sg(sorted);
  Output out;
  out.json["pole_orders"] = orders;
  out.json["minimal_generators"] = sg.minimal_generators();
  out.json["gaps"] = sg.gaps();
  out.json["conductor"] = sg.conductor();
  out.json["number_of_gaps"] = sg.genus();
  std::ostringstream os;
  os << "pole orders: " << join_numbers(orders) << "\n"
     << "minimal generators: " << join_numbers(sg.minimal_generators()) << "\n"
     << "gaps: " << join_numbers(sg.gaps()) << "\n"
     << "conductor: " << sg.conductor() << "\n"
     << "number of gaps: " << sg.genus() << "\n";
  out.text = os.str();
  return out;
}

inline std::vector<int> checked_degrees(const JobSpec& job, const Settings& s) {
  std::vector<int> d = pole_orders(curve_of(job, false), s);
  auto problems = degree_problems(d, true);
  if (!problems.empty()) throw WrongPoleOrders("pole orders {" + join_numbers(d) + "}: " + problems.front());
  return d;
}

inline Output run_normalforms(const JobSpec& job, const Settings& s) {
  std::vector<int> d = checked_degrees(job, s);
  Output out;
  out.json["pole_orders"] = d;
  Json stages = Json::array();
  std::ostringstream os;
  os << "pole orders: " << join_numbers(d) << "\n";
  for (std::size_t j = 2; j <= d.size(); ++j) {
    TWEquation eq = tw_equation_shape(d, j);
    const auto names = indexed_names(j);
    Json nf = Json::array();
    std::vector<std::string> items;
    for (const auto& [deg, m] : eq.normal_forms.by_degree) {
      nf.push_back(Json{{"degree", deg}, {"monomial", to_string(m, names)}});
      items.push_back(to_string(m, names) + " [" + std::to_string(deg) + "]");
    }
    Json st{{"j", j}, {"weights", eq.weights}, {"normal_forms", nf}, {"lead", to_string(eq.lead, names)}};
    os << "stage " << j << " (weights " << join_numbers(eq.weights) << ")\n"
       << "  N" << j << ": " << join(items, ", ") << "\n"
       << "  m" << j << ": " << to_string(eq.lead, names);
    if (eq.good) {
      st["good_variable"] = names[eq.good->var];
      st["good_exponent"] = eq.good->exponent;
      os << " (in " << names[eq.good->var] << " with exponent " << eq.good->exponent << ")";
    }
    if (eq.partner) {
      st["partner"] = to_string(*eq.partner, names);
      os << ", partner " << to_string(*eq.partner, names);
    }
    os << "\n";
    stages.push_back(st);
  }
  out.json["stages"] = stages;
  out.text = os.str();
  return out;
}

inline Json tw_json(const JobSpec& job, const CurveSpec& c, const TWCurve& tw, const Encoder& enc) {
  Json o;
  Json header = Json::object();
  header["field"] = job.field ? Json(job.field->is_rationals() ? job.field_text : job.field->modulus().to_string("a"))
                              : Json(nullptr);
  static const std::string xy[] = {"x", "y"};
  header["curve"] = to_string(c.curve, xy);
  header["place"] = c.center.to_string();
  header["branch"] = c.branch.empty() ? Json(nullptr) : Json(branch_text(c.branch));
  o["job"] = header;
  o["r"] = tw.r;
  o["pole_orders"] = tw.degrees;
  const auto fn = f_names(tw.r);
  Json gens = Json::array();
  for (std::size_t i = 0; i < tw.r; ++i) {
    const Generator& g = tw.generators.generator(i);
    gens.push_back(Json{{"index", i + 1},
                        {"pole_order", g.pole_order},
                        {"original", enc.rational_function(g.original)},
                        {"correction", enc.polynomial(g.correction, fn)},
                        {"expression", enc.rational_function(g.expression)}});
  }
  o["generators"] = gens;
  Json eqs = Json::array();
  for (const auto& eq : tw.equations) {
    const auto names = indexed_names(eq.j);
    eqs.push_back(Json{{"j", eq.j}, {"lead", to_string(eq.lead, names)}, {"polynomial", enc.polynomial(eq.polynomial, names)}});
  }
  o["equations"] = eqs;
  Json subs = Json::array();
  for (const auto& rec : tw.generators.substitution_log()) {
    subs.push_back(Json{{"variable", "x" + std::to_string(rec.var + 1)},
                        {"sign", rec.sign == Sign::Plus ? "+" : "-"},
                        {"replacement", enc.polynomial(rec.replacement, indexed_names(tw.r))}});
  }
  o["substitutions"] = subs;
  return o;
}

inline Output run_twform(const JobSpec& job, const Settings& s) {
  const CurveSpec& c = curve_of(job, false);
  TWCurve tw = build(c, s);
  TWReport rep = verify_tw(tw);
  Encoder enc = encoder_for(job);
  Output out;
  Json body = tw_json(job, c, tw, enc);
  for (auto it = body.begin(); it != body.end(); ++it) out.json[it.key()] = it.value();
  out.json["verification"] = checks_json(rep);
  std::ostringstream os;
  const auto fn = f_names(tw.r);
  os << "# canonical form; this text is a job file accepted by 'twcurve verify'\n"
     << "# r: " << tw.r << "\n# pole orders: " << join_numbers(tw.degrees) << "\n";
  for (const auto& [k, v] : job_header(job, c)) os << k << ": " << v << "\n";
  for (std::size_t i = 0; i < tw.r; ++i) {
    const Generator& g = tw.generators.generator(i);
    if (!g.correction.is_zero())
      os << "# f" << i + 1 << " = " << g.original.to_string() << " + "
         << (g.correction.size() > 1 ? "(" + to_string(g.correction, fn) + ")" : to_string(g.correction, fn)) << "\n";
    os << "gen: " << g.expression.to_string() << "\n";
  }
  for (const auto& eq : tw.equations) os << "eq: " << to_string(eq.polynomial, indexed_names(eq.j)) << "\n";
  out.text = os.str();
  if (!rep.passed()) {
    out.exit_code = kExitMath;
    out.text += "# verification FAILED\n" + checks_text(rep);
  }
  return out;
}

inline Output run_inverse(const JobSpec& job, const Settings& s) {
  const CurveSpec& c = curve_of(job, false);
  TWCurve tw = build(c, s);
  BirationalInverse inv = birational_inverse(tw, RatioOptions{s.max_degree});
  const bool ok = certify_ratio(tw.generators, RationalFunction::x(), inv.x) &&
                  certify_ratio(tw.generators, RationalFunction::y(), inv.y);
  Encoder enc = encoder_for(job);
  const auto names = indexed_names(tw.r);
  auto ratio = [&](const GeneratorRatio& q) {
    return Json{{"text", q.to_string(names)},
                {"numerator", enc.polynomial(q.numerator, names)},
                {"denominator", enc.polynomial(q.denominator, names)}};
  };
  Output out;
  out.json["X"] = ratio(inv.x);
  out.json["Y"] = ratio(inv.y);
  out.json["certified"] = ok;
  std::ostringstream os;
  os << "X = " << inv.x.to_string(names) << "\n"
     << "Y = " << inv.y.to_string(names) << "\n"
     << (ok ? "certified: X(f) = x and Y(f) = y on the curve\n" : "certificate FAILED\n");
  out.text = os.str();
  if (!ok) out.exit_code = kExitMath;
  return out;
}

inline Json verdict_json(const ScalingVerdict& v, const Encoder& enc) {
  Json o{{"lambda", enc.elements(v.lambda.lambda)}, {"fast_filter", v.fast_filter}};
  if (v.fast_filter) {
    o["local"] = Json{{"truncation", v.local_n.truncation},
                      {"consistent_at_N", v.local_n.consistent},
                      {"consistent_at_2N", v.local_2n.consistent}};
    if (!v.local_n.u.empty()) o["local"]["c1"] = enc.element(v.local_n.u.front());
    if (v.global)
      o["global"] = Json{{"maps_curve", v.global->maps_curve},
                         {"pulls_back_generators", v.global->pulls_back_generators}};
    o["local_global_agree"] = v.local_global_agree();
  }
  o["accepted"] = v.accepted;
  if (!v.detail.empty()) o["detail"] = v.detail;
  return o;
}

inline std::string verdict_text(const ScalingVerdict& v) {
  std::ostringstream os;
  os << "  " << v.lambda.to_string() << ": " << (v.accepted ? "accepted" : "rejected");
  if (!v.fast_filter) {
    os << " at the fast filter";
  } else {
    os << " (local N=" << v.local_n.truncation << ": " << (v.local_n.consistent ? "consistent" : "inconsistent")
       << ", 2N: " << (v.local_2n.consistent ? "consistent" : "inconsistent")
       << "; global: " << (v.global && v.global->passed() ? "certified" : "failed") << ")";
  }
  if (!v.detail.empty()) os << " " << v.detail;
  os << "\n";
  return os.str();
}

inline void solution_output(const SolutionSet& sol, const Encoder& enc, Output& out, std::ostringstream& os) {
  out.json["status"] = to_string(sol.status);
  Json eqs = Json::array();
  for (const auto& e : sol.system.equations)
    eqs.push_back(Json{{"from", "F" + std::to_string(e.stage)},
                       {"monomial", to_string(e.monomial, indexed_names(e.stage))},
                       {"exponents", e.exponents},
                       {"constant", enc.element(e.constant)}});
  out.json["system"] = Json{{"equations", eqs}, {"inconsistent", sol.system.inconsistent}};
  if (sol.system.inconsistent) out.json["system"]["reason"] = sol.system.reason;
  Json cands = Json::array();
  for (const auto& c : sol.candidates) cands.push_back(enc.elements(c.lambda));
  out.json["candidates"] = cands;
  Json verdicts = Json::array();
  for (const auto& v : sol.verdicts) verdicts.push_back(verdict_json(v, enc));
  out.json["verdicts"] = verdicts;
  Json verified = Json::array();
  for (const auto& c : sol.verified) verified.push_back(enc.elements(c.lambda));
  out.json["verified"] = verified;
  out.json["pending"] = sol.pending;

  os << "scaling equations: " << sol.system.equations.size() << "\n";
  for (const auto& e : sol.system.equations) {
    std::vector<std::string> parts;
    for (std::size_t i = 0; i < e.exponents.size(); ++i)
      if (e.exponents[i] == 1)
        parts.push_back("l" + std::to_string(i + 1));
      else if (e.exponents[i] != 0)
        parts.push_back("l" + std::to_string(i + 1) + "^" +
                        (e.exponents[i] < 0 ? "(" + std::to_string(e.exponents[i]) + ")" : std::to_string(e.exponents[i])));
    os << "  " << join(parts, "*") << " = " << e.constant.to_string() << "   (from "
       << to_string(e.monomial, indexed_names(e.stage)) << " in F" << e.stage << ")\n";
  }
  if (sol.system.inconsistent) os << "  inconsistent: " << sol.system.reason << "\n";
  os << "candidates: " << sol.candidates.size() << "\n";
  for (const auto& v : sol.verdicts) os << verdict_text(v);
  os << "verified: " << sol.verified.size() << "\n";
  for (const auto& c : sol.verified) os << "  " << c.to_string() << "\n";
  for (const auto& p : sol.pending) os << "pending: " << p << "\n";
  os << "status: " << to_string(sol.status) << "\n";
  if (sol.status == SolutionStatus::Unresolved) out.exit_code = kExitUnresolved;
}

inline VerifyOptions verify_options(const JobSpec& job, const Settings& s) {
  VerifyOptions v;
  v.ratio.max_degree = s.max_degree;
  if (job.field) v.field = *job.field;
  return v;
}

inline Output run_iso(const JobSpec& job, const Settings& s) {
  TWCurve a = build(curve_of(job, false), s);
  TWCurve b = build(curve_of(job, true), s);
  SolutionSet sol = solve_scalings(a, b, verify_options(job, s));
  Output out;
  std::ostringstream os;
  os << "isomorphisms x_i -> l_i x_i from the first curve to the second\n";
  solution_output(sol, encoder_for(job), out, os);
  out.text = os.str();
  return out;
}

inline Output run_aut(const JobSpec& job, const Settings& s) {
  TWCurve tw = build(curve_of(job, false), s);
  AutomorphismGroup g = automorphism_group(tw, verify_options(job, s));
  Output out;
  std::ostringstream os;
  os << "automorphisms x_i -> l_i x_i fixing the place\n";
  solution_output(g.solutions, encoder_for(job), out, os);
  out.json["group"] = Json{{"order", g.elements.size()},
                           {"table", g.table},
                           {"closed", g.closed},
                           {"inverses", g.has_inverses},
                           {"commutative", g.commutative}};
  os << "group order: " << g.elements.size() << "\n";
  for (std::size_t i = 0; i < g.table.size(); ++i) os << "  " << join_numbers(g.table[i]) << "\n";
  os << "closed: " << (g.closed ? "yes" : "no") << ", inverses: " << (g.has_inverses ? "yes" : "no")
     << ", commutative: " << (g.commutative ? "yes" : "no") << "\n";
  out.text = os.str();
  if (!g.is_group() && out.exit_code == kExitOk) out.exit_code = kExitMath;
  return out;
}

inline Output run_verify(const JobSpec& job, const Settings& s) {
  const CurveSpec& c = curve_of(job, false);
  if (c.generators.empty()) throw InvalidInput("job file has no 'gen:' lines");
  TWReport rep;
  std::size_t r;
  if (job.equations.empty()) {
    TWCurve tw = build(c, s);
    rep = verify_tw(tw);
    r = tw.r;
  } else {
    GeneratorSystem gs(c.curve, place_of(c, 8, s), c.generators);
    r = gs.size();
    if (job.equations.size() + 1 != r)
      throw InvalidInput("expected " + std::to_string(r - 1) + " 'eq:' lines for " + std::to_string(r) +
                         " generators, found " + std::to_string(job.equations.size()));
    rep.checks = verify_degrees(gs, r, true);
    for (std::size_t k = 0; k < job.equations.size(); ++k) {
      TWEquation eq = tw_equation_shape(gs.degrees(), k + 2);
      eq.polynomial = job.equations[k];
      auto more = verify_equation(gs, eq);
      rep.checks.insert(rep.checks.end(), more.begin(), more.end());
    }
  }
  Output out;
  out.json["r"] = r;
  out.json["source"] = job.equations.empty() ? "computed" : "given";
  out.json["verification"] = checks_json(rep);
  out.text = std::string(job.equations.empty() ? "checks on the computed canonical form\n"
                                               : "checks on the given equations\n") +
             checks_text(rep);
  if (!rep.passed()) out.exit_code = kExitMath;
  return out;
}

inline std::string status_name(int code) {
  switch (code) {
    case kExitOk: return "ok";
    case kExitMath: return "failed";
    case kExitInput: return "input_error";
    default: return "unresolved";
  }
}

inline int exit_code_for(ErrorKind k) {
  switch (k) {
    case ErrorKind::Input: return kExitInput;
    case ErrorKind::Math: return kExitMath;
    case ErrorKind::Unresolved: return kExitUnresolved;
  }
  return kExitMath;
}

inline CommandResult finish(Command cmd, Output out, bool json) {
  if (!json) return {out.exit_code, out.text};
  Json doc{{"command", command_name(cmd)}, {"exit_code", out.exit_code}, {"outcome", status_name(out.exit_code)}};
  for (auto it = out.json.begin(); it != out.json.end(); ++it) doc[it.key()] = it.value();
  return {out.exit_code, doc.dump(2) + "\n"};
}

inline CommandResult error_result(const std::string& command, int code, const std::string& name,
                                  const std::string& message, bool json) {
  if (!json) return {code, "error: " + name + ": " + message + "\n", true};
  Json doc{{"command", command},
           {"exit_code", code},
           {"outcome", status_name(code)},
           {"error", Json{{"kind", name}, {"message", message}}}};
  return {code, doc.dump(2) + "\n", false};
}

/// Job-file text reconstructed from a `twform --json` document.
inline std::string job_text_from_twform_json(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON input: ") + e.what());
  }
  auto str = [&](const Json& v, const char* what) -> std::string {
    if (!v.is_string()) throw InvalidInput(std::string("JSON input: '") + what + "' must be a string");
    return v.get<std::string>();
  };
  try {
    if (!doc.is_object() || !doc.contains("job") || !doc.contains("generators") || !doc.contains("equations"))
      throw InvalidInput("JSON input is not the output of 'twform --json'");
    const Json& job = doc.at("job");
    std::string out;
    if (!job.at("field").is_null()) out += "field: " + str(job.at("field"), "job.field") + "\n";
    out += "curve: " + str(job.at("curve"), "job.curve") + "\n";
    out += "place: " + str(job.at("place"), "job.place") + "\n";
    if (!job.at("branch").is_null()) out += "branch: " + str(job.at("branch"), "job.branch") + "\n";
    for (const auto& g : doc.at("generators")) out += "gen: " + str(g.at("expression").at("text"), "expression.text") + "\n";
    for (const auto& e : doc.at("equations")) out += "eq: " + str(e.at("polynomial").at("text"), "polynomial.text") + "\n";
    return out;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("JSON input: ") + e.what());
  }
}

}  // namespace detail

/// Runs a command on a parsed job.
inline CommandResult run_command(Command cmd, const JobSpec& job, const CommandOptions& opt) {
  const std::string name = command_name(cmd);
  try {
    detail::Settings s = detail::settings(job, opt);
    detail::Output out;
    switch (cmd) {
      case Command::Expand: out = detail::run_expand(job, s); break;
      case Command::Semigroup: out = detail::run_semigroup(job, s); break;
      case Command::NormalForms: out = detail::run_normalforms(job, s); break;
      case Command::TwForm: out = detail::run_twform(job, s); break;
      case Command::Inverse: out = detail::run_inverse(job, s); break;
      case Command::Iso: out = detail::run_iso(job, s); break;
      case Command::Aut: out = detail::run_aut(job, s); break;
      case Command::Verify: out = detail::run_verify(job, s); break;
    }
    return detail::finish(cmd, std::move(out), opt.json);
  } catch (const Error& e) {
    return detail::error_result(name, detail::exit_code_for(e.kind()), e.name(), e.what(), opt.json);
  }
}

/// Parses `file_text` as a job file (or, for `verify`, as `twform --json`
/// output) and runs `command` on it.
inline CommandResult run_command(std::string_view command, std::string_view file_text, const CommandOptions& opt) {
  auto cmd = parse_command(command);
  if (!cmd)
    return detail::error_result(std::string(command), kExitInput, "InvalidInput",
                                "unknown command '" + std::string(command) + "'", opt.json);
  try {
    std::string text(file_text);
    std::string_view trimmed = twc::detail::trim(file_text);
    if (*cmd == Command::Verify && !trimmed.empty() && trimmed.front() == '{')
      text = detail::job_text_from_twform_json(file_text);
    return run_command(*cmd, parse_jobspec(text), opt);
  } catch (const Error& e) {
    return detail::error_result(std::string(command), detail::exit_code_for(e.kind()), e.name(), e.what(), opt.json);
  }
}

}  // namespace twc::cli
