#pragma once

/**
 * Job files: UTF-8 text with one `key: value` per line. Everything after '#'
 * is a comment and blank lines are ignored.
 *
 *   field: a^2 + 1              minimal polynomial of the generator a (optional)
 *   curve: x - y^2 + x^2*y^2 + y^4
 *   place: 0, 0                 center (x0, y0); either coordinate may be
 *                               `infinity`, and `place: infinity` means both
 *   branch: 0/1, 0/0            optional polygon decisions segment/root per stage
 *   gen: (y^2 - 1)/(x*y)        generators, repeated in order
 *   curve2:, place2:, branch2:, gen2:   the second pointed curve for `iso`
 *   eq: x1^4 + x2^3 + ...       relations F_2, ..., F_r for `verify`
 *   order:, max-precision:, max-degree:  numeric defaults for the CLI options
 */

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twcurve/errors.hpp"
#include "twcurve/expression_parser.hpp"
#include "twcurve/multipoly.hpp"
#include "twcurve/number_field.hpp"
#include "twcurve/puiseux.hpp"
#include "twcurve/rational_function.hpp"

namespace twc {

struct CurveSpec {
  MultiPoly curve{2};
  std::string curve_text;
  PlaceCenter center = PlaceCenter::affine(FieldElement(0), FieldElement(0));
  std::string place_text;
  BranchChoice branch;
  std::vector<RationalFunction> generators;
  std::vector<std::string> generator_text;
};

struct JobSpec {
  std::optional<NumberField> field;
  std::string field_text;
  std::optional<CurveSpec> first, second;
  std::vector<MultiPoly> equations;  // in x1..x_j, j = 2, 3, ...
  std::vector<std::string> equation_text;
  std::optional<long> order, max_precision, max_degree;
};

namespace detail {

struct JobLine {
  std::string key;
  std::string value;
  SourceLocation where;  // of the value
};

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<JobLine> split_job_lines(std::string_view text) {
  std::vector<JobLine> out;
  int lineno = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++lineno;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (trim(line).empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto colon = line.find(':');
    std::size_t first = line.find_first_not_of(" \t");
    if (colon == std::string_view::npos)
      throw ParseError(lineno, static_cast<int>(first) + 1, "expected 'key: value'");
    std::string key(trim(line.substr(0, colon)));
    if (key.empty()) throw ParseError(lineno, static_cast<int>(colon) + 1, "missing key before ':'");
    std::size_t vstart = colon + 1;
    while (vstart < line.size() && std::isspace(static_cast<unsigned char>(line[vstart]))) ++vstart;
    std::string value(trim(line.substr(vstart)));
    out.push_back({key, value, {lineno, static_cast<int>(vstart) + 1}});
    if (end == text.size()) break;
  }
  return out;
}

inline CenterCoordinate parse_center_coordinate(std::string_view text, const std::optional<NumberField>& field,
                                                SourceLocation where) {
  if (trim(text) == "infinity") {
    CenterCoordinate c = CenterCoordinate::infinity();
    if (field) c.value = FieldElement(*field, {Rational(0)});
    return c;
  }
  FieldElement v = parse_constant(text, field, where);
  // Record the declared field even for rational coordinates; the expansion
  // searches for roots there.
  if (field && v.field().is_rationals()) v = FieldElement(*field, {v.rational_value()});
  return CenterCoordinate::finite(v);
}

inline PlaceCenter parse_place(std::string_view text, const std::optional<NumberField>& field, SourceLocation where) {
  std::string_view body = text;
  int offset = 0;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw ParseError(where.line, where.column + static_cast<int>(body.size()), "expected ')'");
    body = body.substr(1, body.size() - 2);
    offset = 1;
  }
  if (trim(body) == "infinity") return {parse_center_coordinate("infinity", field, where),
                                         parse_center_coordinate("infinity", field, where)};
  // Split at the top-level comma.
  int depth = 0;
  std::size_t comma = std::string_view::npos;
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] == '(') ++depth;
    if (body[i] == ')') --depth;
    if (body[i] == ',' && depth == 0) {
      if (comma != std::string_view::npos)
        throw ParseError(where.line, where.column + offset + static_cast<int>(i), "too many coordinates");
      comma = i;
    }
  }
  if (comma == std::string_view::npos)
    throw ParseError(where.line, where.column, "expected 'x0, y0' or 'infinity'");
  SourceLocation wx{where.line, where.column + offset};
  SourceLocation wy{where.line, where.column + offset + static_cast<int>(comma) + 1};
  return {parse_center_coordinate(body.substr(0, comma), field, wx),
          parse_center_coordinate(body.substr(comma + 1), field, wy)};
}

inline BranchChoice parse_branch(std::string_view text, SourceLocation where) {
  BranchChoice out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view item = trim(text.substr(pos, comma - pos));
    const int col = where.column + static_cast<int>(pos);
    auto slash = item.find('/');
    auto is_index = [](std::string_view s) {
      return !s.empty() && s.size() < 9 &&
             std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (slash == std::string_view::npos || !is_index(trim(item.substr(0, slash))) ||
        !is_index(trim(item.substr(slash + 1))))
      throw ParseError(where.line, col, "expected 'segment/root' with non-negative integers");
    out.push_back({std::stoul(std::string(trim(item.substr(0, slash)))),
                   std::stoul(std::string(trim(item.substr(slash + 1))))});
    if (comma == text.size()) break;
    pos = comma + 1;
  }
  return out;
}

inline long parse_count(const JobLine& l) {
  const std::string& v = l.value;
  if (v.empty() || v.size() > 9 ||
      !std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError(l.where.line, l.where.column, "expected a non-negative integer for '" + l.key + "'");
  return std::stol(v);
}

}  // namespace detail

inline JobSpec parse_jobspec(std::string_view text) {
  auto lines = detail::split_job_lines(text);
  JobSpec job;
  std::map<std::string, SourceLocation> seen;
  auto once = [&](const detail::JobLine& l) {
    if (auto it = seen.find(l.key); it != seen.end())
      throw ParseError(l.where.line, 1, "duplicate key '" + l.key + "' (first given on line " +
                                            std::to_string(it->second.line) + ")");
    seen.emplace(l.key, l.where);
  };
  // The field is needed before any expression can be read.
  for (const auto& l : lines)
    if (l.key == "field") {
      once(l);
      static const std::vector<std::string> a{"a"};
      MultiPoly m = parse_polynomial(l.value, a, std::nullopt, l.where);
      std::vector<Rational> coeffs(static_cast<std::size_t>(std::max(0, m.degree_in(0))) + 1, Rational(0));
      for (const auto& [mon, c] : m.terms()) coeffs[static_cast<std::size_t>(mon[0])] = c.rational_value();
      try {
        job.field = NumberField::from_minimal_polynomial(QPoly(coeffs));
      } catch (const InvalidInput& e) {
        throw ParseError(l.where.line, l.where.column, e.what());
      }
      job.field_text = l.value;
    }
  auto curve_slot = [&](bool second) -> CurveSpec& {
    auto& slot = second ? job.second : job.first;
    if (!slot) slot.emplace();
    return *slot;
  };
  static const std::vector<std::string> known{"field",  "curve",  "place",   "branch",        "gen",
                                              "curve2", "place2", "branch2", "gen2",          "eq",
                                              "order",  "max-precision", "max-degree"};
  for (const auto& l : lines) {
    if (l.key == "field") continue;
    if (std::find(known.begin(), known.end(), l.key) == known.end())
      throw ParseError(l.where.line, 1, "unknown key '" + l.key + "'");
    const bool second = !l.key.empty() && l.key.back() == '2';
    const std::string base = second ? l.key.substr(0, l.key.size() - 1) : l.key;
    if (l.value.empty()) throw ParseError(l.where.line, l.where.column, "missing value for '" + l.key + "'");
    if (base != "gen" && base != "eq") once(l);
    if (base == "curve") {
      CurveSpec& c = curve_slot(second);
      c.curve = parse_polynomial(l.value, {"x", "y"}, job.field, l.where);
      if (c.curve.is_constant()) throw ParseError(l.where.line, l.where.column, "the curve polynomial is constant");
      c.curve_text = l.value;
    } else if (base == "place") {
      CurveSpec& c = curve_slot(second);
      c.center = detail::parse_place(l.value, job.field, l.where);
      c.place_text = l.value;
    } else if (base == "branch") {
      curve_slot(second).branch = detail::parse_branch(l.value, l.where);
    } else if (base == "gen") {
      CurveSpec& c = curve_slot(second);
      RationalFunction g = parse_rational_function(l.value, job.field, l.where);
      if (g.is_zero()) throw ParseError(l.where.line, l.where.column, "generator is identically zero");
      c.generators.push_back(std::move(g));
      c.generator_text.push_back(l.value);
    } else if (base == "eq") {
      const std::size_t j = job.equations.size() + 2;
      job.equations.push_back(parse_polynomial(l.value, indexed_names(j), job.field, l.where));
      job.equation_text.push_back(l.value);
    } else if (base == "order") {
      job.order = detail::parse_count(l);
    } else if (base == "max-precision") {
      job.max_precision = detail::parse_count(l);
    } else if (base == "max-degree") {
      job.max_degree = detail::parse_count(l);
    }
  }
  for (const auto* c : {&job.first, &job.second})
    if (*c && (*c)->curve.is_zero()) {
      const bool second = c == &job.second;
      throw InvalidInput(std::string("job file has place or generators but no '") + (second ? "curve2" : "curve") +
                         ":' line");
    }
  return job;
}

}  // namespace twc
