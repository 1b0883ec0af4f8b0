#pragma once

#include <charconv>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "brace.hpp"
#include "fp.hpp"
#include "grun.hpp"
#include "matrix_group.hpp"

namespace bracelab::io {

using Json = nlohmann::ordered_json;

/// A parsed .sbr file: the validated brace plus `# key: value` metadata.
struct BraceDocument {
  SkewBrace brace;
  std::map<std::string, std::string> metadata;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

struct Line {
  std::size_t number;
  std::string text;
};

/// Splits into non-empty, comment-stripped lines. `# key: value` comments are
/// collected into `meta` when given.
inline std::vector<Line> content_lines(std::string_view text, std::map<std::string, std::string>* meta) {
  std::vector<Line> out;
  std::size_t number = 0, pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      const auto comment = trim(line.substr(hash + 1));
      if (meta) {
        if (const auto colon = comment.find(':'); colon != std::string_view::npos) {
          const auto key = trim(comment.substr(0, colon));
          if (!key.empty() && key.find(' ') == std::string_view::npos)
            (*meta)[std::string(key)] = std::string(trim(comment.substr(colon + 1)));
        }
      }
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (!line.empty()) out.push_back({number, std::string(line)});
    if (end == text.size()) break;
  }
  return out;
}

inline std::vector<std::string> split(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  for (std::string w; is >> w;) out.push_back(w);
  return out;
}

template <class Int>
Int parse_int(const std::string& tok, std::size_t line) {
  Int v{};
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(line) + ": expected an integer, got '" + tok + "'");
  return v;
}

inline std::vector<Elem> parse_row(const Line& l, std::size_t n) {
  const auto toks = split(l.text);
  if (toks.size() != n)
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(l.number) + ": expected " + std::to_string(n) +
                                            " entries, got " + std::to_string(toks.size()));
  std::vector<Elem> row;
  row.reserve(n);
  for (const auto& t : toks) {
    const auto v = parse_int<long long>(t, l.number);
    if (v < 0 || static_cast<std::size_t>(v) >= n)
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(l.number) + ": entry " + t + " out of range");
    row.push_back(static_cast<Elem>(v));
  }
  return row;
}

inline void require_permutation_rows(const RawTable& t, const std::string& name, const std::vector<Line>& lines,
                                     std::size_t first) {
  const std::size_t n = t.size();
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<bool> seen(n, false);
    for (Elem x : t[r]) {
      if (seen[x])
        throw Error(ErrorKind::ValidationError,
                    name + " row " + std::to_string(r) + " (line " + std::to_string(lines[first + r].number) +
                        ") is not a permutation: " + std::to_string(x) + " repeats",
                    {{static_cast<Elem>(r), x}});
      seen[x] = true;
    }
  }
}

}  // namespace detail

/// Parses and validates a .sbr document. A shared identity other than 0 is
/// relabelled to 0 and recorded as metadata `relabelled-identity`.
inline BraceDocument parse_brace(std::string_view text, const CheckPolicy& policy = {}) {
  BraceDocument doc;
  const auto lines = detail::content_lines(text, &doc.metadata);
  if (lines.empty()) throw Error(ErrorKind::SyntaxError, "line 1: empty document");
  const auto head = detail::split(lines[0].text);
  if (head.size() != 3 || head[0] != "skewbrace" || head[1] != "v1")
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(lines[0].number) + ": expected 'skewbrace v1 <n>'");
  const auto n = detail::parse_int<std::size_t>(head[2], lines[0].number);
  if (n == 0) throw Error(ErrorKind::SyntaxError, "line " + std::to_string(lines[0].number) + ": order must be positive");
  if (lines.size() != 2 * n + 2) {
    const std::size_t at = lines.size() > 2 * n + 2 ? lines[2 * n + 2].number : lines.back().number + 1;
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(at) + ": expected " + std::to_string(n) +
                                            " dot rows, 'circ', and " + std::to_string(n) + " circ rows");
  }
  if (lines[n + 1].text != "circ")
    throw Error(ErrorKind::SyntaxError, "line " + std::to_string(lines[n + 1].number) + ": expected 'circ'");
  RawTable dot, circ;
  for (std::size_t i = 0; i < n; ++i) dot.push_back(detail::parse_row(lines[1 + i], n));
  for (std::size_t i = 0; i < n; ++i) circ.push_back(detail::parse_row(lines[n + 2 + i], n));
  detail::require_permutation_rows(dot, "dot", lines, 1);
  detail::require_permutation_rows(circ, "circ", lines, n + 2);
  auto v = validate_skew_brace(dot, circ, policy);
  if (!v.brace) {
    const auto& r = v.brace.report();
    throw Error(ErrorKind::ValidationError, r.check + ": " + r.detail, r.witnesses);
  }
  doc.brace = v.brace.value();
  if (v.original_identity != 0) doc.metadata["relabelled-identity"] = std::to_string(v.original_identity);
  return doc;
}

/// Canonical text: header, sorted metadata comments, dot rows, `circ`, circ
/// rows, each line newline-terminated.
inline std::string serialize_brace(const SkewBrace& a, const std::map<std::string, std::string>& metadata = {}) {
  std::ostringstream os;
  const std::size_t n = a.order();
  os << "skewbrace v1 " << n << "\n";
  for (const auto& [k, v] : metadata) os << "# " << k << ": " << v << "\n";
  auto rows = [&](const GroupTable& t) {
    for (Elem x = 0; x < n; ++x) {
      for (Elem y = 0; y < n; ++y) os << (y ? " " : "") << t.mul(x, y);
      os << "\n";
    }
  };
  rows(a.dot_group());
  os << "circ\n";
  rows(a.circ_group());
  return os.str();
}

inline std::string serialize_brace(const BraceDocument& d) { return serialize_brace(d.brace, d.metadata); }

/// Matrix blocks `matrix p rows cols` followed by `rows` lines of entries.
inline std::vector<FpMatrix> parse_matrices(std::string_view text) {
  const auto lines = detail::content_lines(text, nullptr);
  std::vector<FpMatrix> out;
  for (std::size_t i = 0; i < lines.size();) {
    const auto head = detail::split(lines[i].text);
    const auto ln = lines[i].number;
    if (head.size() != 4 || head[0] != "matrix")
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(ln) + ": expected 'matrix p rows cols'");
    const auto p = detail::parse_int<unsigned>(head[1], ln);
    const auto r = detail::parse_int<std::size_t>(head[2], ln);
    const auto c = detail::parse_int<std::size_t>(head[3], ln);
    if (!is_prime(p) || p > kMaxPrime)
      throw Error(ErrorKind::NonPrimeModulus, "line " + std::to_string(ln) + ": " + head[1] + " is not a supported prime");
    if (r == 0 || c == 0 || r > kMaxDimension || c > kMaxDimension)
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(ln) + ": matrix shape out of range");
    if (i + r >= lines.size())
      throw Error(ErrorKind::SyntaxError, "line " + std::to_string(ln) + ": matrix block is truncated");
    std::vector<std::vector<long>> rows;
    for (std::size_t k = 1; k <= r; ++k) {
      const auto toks = detail::split(lines[i + k].text);
      if (toks.size() != c)
        throw Error(ErrorKind::SyntaxError, "line " + std::to_string(lines[i + k].number) + ": expected " +
                                                std::to_string(c) + " entries");
      std::vector<long> row;
      for (const auto& t : toks) row.push_back(detail::parse_int<long>(t, lines[i + k].number));
      rows.push_back(std::move(row));
    }
    out.push_back(FpMatrix::from_rows(p, rows));
    i += r + 1;
  }
  return out;
}

inline std::string serialize_matrices(const std::vector<FpMatrix>& ms) {
  std::ostringstream os;
  for (const auto& m : ms) {
    os << "matrix " << m.p() << " " << m.rows() << " " << m.cols() << "\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << int{m(i, j)};
      os << "\n";
    }
  }
  return os.str();
}

// Structured reports. Field order is fixed by construction order.

inline Json to_json(const VerificationReport& r) {
  Json j;
  j["check"] = r.check;
  j["status"] = std::string(to_string(r.status));
  j["pass"] = r.passed();
  j["checked"] = r.checked;
  j["violations"] = r.violations;
  j["witnesses"] = r.witnesses;
  if (!r.detail.empty()) j["detail"] = r.detail;
  return j;
}

inline Json to_json(const IdentitySuiteReport& r) {
  Json j;
  j["pass"] = r.passed();
  j["overall"] = to_json(r.overall);
  Json ids = Json::array();
  for (const auto& x : r.identities) ids.push_back(to_json(x));
  j["identities"] = std::move(ids);
  return j;
}

inline Json to_json(const GrunReport& g) {
  Json j;
  if (!g.brace_id.empty()) j["brace"] = g.brace_id;
  j["order"] = g.order;
  j["perfect"] = g.is_perfect;
  j["two_sided"] = g.is_two_sided;
  j["derived_order"] = g.derived_order;
  j["socle_order"] = g.socle_order;
  j["ann_order"] = g.ann_order;
  j["ann2_order"] = g.ann2_order;
  j["quotient_ann_order"] = g.quotient_ann_order;
  j["defect_trivial"] = g.defect_trivial();
  j["defect"] = g.defect_set;
  j["grun_holds"] = g.grun_holds;
  j["theorem1"] = to_json(g.thm1);
  j["char_equivalences"] = to_json(g.cor_equivalence);
  return j;
}

inline Json to_json(const CharacterizationReport& c) {
  Json j;
  j["pass"] = c.report.passed();
  j["defect_trivial"] = c.defect_trivial;
  j["all_iota_aut"] = c.all_iota_aut;
  Json rows = Json::array();
  for (const auto& r : c.rows) {
    Json x;
    x["element"] = r.element;
    x["psi_bar_dot_hom"] = r.psi_bar_dot_hom;
    x["derived_in_psi_bar_kernel"] = r.derived_in_psi_bar_kernel;
    x["iota_dot_aut"] = r.iota_dot_aut;
    x["right_relation_at_bar"] = r.right_relation_at_bar;
    x["psi_dot_hom"] = r.psi_dot_hom;
    x["derived_in_psi_kernel"] = r.derived_in_psi_kernel;
    rows.push_back(std::move(x));
  }
  j["rows"] = std::move(rows);
  j["report"] = to_json(c.report);
  return j;
}

inline Json vectors_json(const std::vector<FpVector>& vs) {
  Json a = Json::array();
  for (const auto& v : vs) a.push_back(std::vector<int>(v.begin(), v.end()));
  return a;
}

inline Json to_json(const FpSubspace& s) {
  Json j;
  j["dim"] = s.dim();
  j["basis"] = vectors_json(s.basis());
  return j;
}

inline Json to_json(const RecipeCheck& r) {
  Json j;
  j["cond1"] = r.cond1;
  j["cond2"] = r.cond2;
  j["U"] = to_json(r.fixed);
  j["W"] = to_json(r.preimage);
  j["witnesses_v"] = vectors_json(r.witnesses_v);
  j["witnesses_truncated"] = r.witnesses_truncated;
  return j;
}

inline Json matrix_json(const FpMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const auto r = m.row(i);
    rows.push_back(std::vector<int>(r.begin(), r.end()));
  }
  return rows;
}

inline Json to_json(const RecipeSearchResult& r) {
  Json j;
  j["nodes"] = r.nodes;
  j["qualifying_sets"] = r.qualifying_sets;
  j["budget_exceeded"] = r.budget_exceeded;
  Json cat = Json::array();
  for (const auto& c : r.catalog) {
    Json x;
    x["group_order"] = c.signature.group_order;
    x["fixed_dim"] = c.signature.fixed_dim;
    Json prof = Json::object();
    for (const auto& [o, k] : c.signature.profile) prof[std::to_string(o)] = k;
    x["order_profile"] = std::move(prof);
    x["multiplicity"] = c.multiplicity;
    Json gens = Json::array();
    for (const auto& m : c.generators) gens.push_back(matrix_json(m));
    x["generators"] = std::move(gens);
    cat.push_back(std::move(x));
  }
  j["catalog"] = std::move(cat);
  return j;
}

namespace detail {

inline void flatten(const Json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    if (j.empty()) os << prefix << ": {}\n";
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

}  // namespace detail

/// Plain-text rendering: one `key: value` line per leaf, nested keys joined
/// with dots.
inline std::string to_text(const Json& j) {
  std::ostringstream os;
  detail::flatten(j, "", os);
  return os.str();
}

}  // namespace bracelab::io
