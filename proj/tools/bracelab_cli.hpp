#pragma once

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bracelab/bracelab.hpp"

namespace bracelab::cli {

enum ExitCode { kOk = 0, kFail = 1, kUsage = 2 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::uint64_t default_seed() {
  if (const char* s = std::getenv("BRACELAB_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
      throw UsageError(std::string("BRACELAB_SEED is not an unsigned integer: ") + s);
    }
  }
  return 0;
}

inline GroupTable named_group(const std::string& name) {
  auto g = groups::by_name(name);
  if (!g) throw UsageError("unknown group '" + name + "'");
  return *g;
}

inline MatrixGroup prop1_group(unsigned p) { return matrix_group_closure(prop1_matrices(p)); }
inline MatrixGroup prop3_group() { return matrix_group_closure(prop3_matrices()); }

/// Builds one of the named constructions: example1, prop1[:p], prop3,
/// trivial:<group>, almost-trivial:<group>.
inline std::optional<SkewBrace> builtin_brace(const std::string& spec) {
  if (spec == "example1") return example1_brace();
  if (spec == "prop3") return matrix_semidirect(example1_brace(), prop3_group()).brace;
  if (spec == "prop1" || spec.rfind("prop1:", 0) == 0) {
    const unsigned p = spec == "prop1" ? 2 : static_cast<unsigned>(std::stoul(spec.substr(6)));
    return matrix_semidirect(example1_brace(), prop1_group(p)).brace;
  }
  if (spec.rfind("trivial:", 0) == 0) return lift_group_to_brace(named_group(spec.substr(8)), LiftMode::Trivial);
  if (spec.rfind("almost-trivial:", 0) == 0)
    return lift_group_to_brace(named_group(spec.substr(15)), LiftMode::AlmostTrivial);
  return std::nullopt;
}

/// A brace given as a .sbr path or a builtin name.
inline SkewBrace load_brace(const std::string& source, const CheckPolicy& policy = {}) {
  if (std::filesystem::exists(source)) return io::parse_brace(read_file(source), policy).brace;
  if (auto b = builtin_brace(source)) return *b;
  throw UsageError("no such file or builtin brace: " + source);
}

inline std::vector<Elem> parse_index_list(const std::string& s) {
  std::vector<Elem> out;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    tok.erase(std::remove(tok.begin(), tok.end(), ' '), tok.end());
    if (tok.empty()) continue;
    try {
      out.push_back(static_cast<Elem>(std::stoul(tok)));
    } catch (const std::exception&) {
      throw UsageError("bad element index '" + tok + "'");
    }
  }
  return out;
}

inline io::Json info_json(const SkewBrace& a, const CheckPolicy& policy) {
  const auto inv = compute_invariants(a);
  io::Json j;
  j["order"] = a.order();
  j["dot_abelian"] = is_abelian(a.dot_group());
  j["circ_abelian"] = is_abelian(a.circ_group());
  j["trivial"] = is_trivial_brace(a);
  j["derived_order"] = inv.derived.size();
  j["socle_order"] = inv.socle.size();
  j["ann_order"] = inv.ann.size();
  j["ann2_order"] = inv.ann2.size();
  j["perfect"] = inv.derived.is_whole();
  CheckPolicy p = policy;
  p.max_witnesses = 1;
  j["two_sided"] = is_two_sided(a, p).passed();
  return j;
}

/// `auto` enumerates exhaustively when all n x n matrices number at most
/// 4096, and samples otherwise.
inline bool auto_strategy_is_exhaustive(std::size_t n, unsigned p) {
  double space = 1;
  for (std::size_t i = 0; i < n * n; ++i) space *= p;
  return space <= 4096;
}

struct Output {
  std::string format = "text";
  std::string path;
};

inline void emit(const Output& o, const std::string& text, std::ostream& out) {
  if (o.path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + o.path);
  f << text;
}

inline void emit_json(const Output& o, const io::Json& j, std::ostream& out) {
  emit(o, o.format == "structured" ? j.dump(2) + "\n" : io::to_text(j), out);
}

/// Runs the command line `args` (without the program name). Returns the exit
/// code: 0 success, 1 mathematical failure, 2 usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite skew brace toolkit", "bracelab"};
  app.require_subcommand(1);
  Output o;
  std::uint64_t seed = 0;
  bool seed_given = false;
  app.add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--out", o.path, "write the report to a file");
  app.add_option_function<std::uint64_t>("--seed", [&](std::uint64_t s) { seed = s, seed_given = true; },
                                         "RNG seed (default: BRACELAB_SEED or 0)");

  auto fallthrough = [](CLI::App* s) { s->fallthrough(); return s; };

  std::string source, source2, ideal, kind, group, c_source, matrices_path, table = "dot", construct_name;
  unsigned p = 2;
  std::size_t n = 2, max_gens = 2, stop_after = 64;
  std::uint64_t budget = 10'000'000;
  std::string strategy = "auto";
  bool sampled = false;

  auto* validate = fallthrough(app.add_subcommand("validate", "validate a .sbr brace file"));
  validate->add_option("brace", source, "brace file or builtin")->required();

  auto* info = fallthrough(app.add_subcommand("info", "orders of Soc, Ann, Ann2, A*A; perfect; two-sided"));
  info->add_option("brace", source)->required();

  auto* quotient = fallthrough(app.add_subcommand("quotient", "quotient by an ideal, as a .sbr document"));
  quotient->add_option("brace", source)->required();
  quotient->add_option("--ideal", ideal, "comma-separated element indices")->required();

  auto* construct = fallthrough(app.add_subcommand("construct", "build a brace and print it as .sbr"));
  construct->add_option("kind", kind)
      ->required()
      ->check(CLI::IsMember({"trivial", "almost-trivial", "semidirect", "example1", "prop1", "prop3"}));
  construct->add_option("--group", group, "group name for trivial/almost-trivial");
  construct->add_option("--c", c_source, "acting brace for semidirect");
  construct->add_option("--matrices", matrices_path, "matrix file generating the image for semidirect");
  construct->add_option("--p", p, "prime for prop1");

  auto* grun = fallthrough(app.add_subcommand("grun", "Grun defect report"));
  grun->add_option("brace", source);
  grun->add_option("--construct", construct_name, "example1, prop1, prop3 or another builtin");

  auto* identities = fallthrough(app.add_subcommand("identities", "run the identity suite"));
  identities->add_option("brace", source)->required();
  identities->add_flag("--sampled", sampled, "sample instead of scanning exhaustively");

  auto* rcheck = fallthrough(app.add_subcommand("recipe-check", "check the two recipe conditions"));
  rcheck->add_option("--matrices", matrices_path)->required();

  auto* rsearch = fallthrough(app.add_subcommand("recipe-search", "search GL_n(F_p) for recipe generator sets"));
  rsearch->add_option("--n", n)->required();
  rsearch->add_option("--p", p)->required();
  rsearch->add_option("--budget", budget);
  rsearch->add_option("--strategy", strategy)->check(CLI::IsMember({"auto", "exhaustive", "random"}));
  rsearch->add_option("--max-gens", max_gens);
  rsearch->add_option("--stop-after", stop_after, "random strategy: stop after this many qualifying sets");

  auto* iso = fallthrough(app.add_subcommand("iso", "test two groups for isomorphism"));
  iso->add_option("first", source, "group name or .sbr file")->required();
  iso->add_option("second", source2, "group name or .sbr file")->required();
  iso->add_option("--table", table, "which table of a brace file")->check(CLI::IsMember({"dot", "circ"}));
  iso->add_option("--budget", budget);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  try {
    CheckPolicy policy;
    policy.seed = seed_given ? seed : default_seed();

    if (*validate) {
      io::Json j;
      j["source"] = source;
      try {
        const auto b = load_brace(source, policy);
        j["valid"] = true;
        j["order"] = b.order();
        emit_json(o, j, out);
        return kOk;
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::SyntaxError) throw;
        j["valid"] = false;
        j["error"] = std::string(to_string(e.kind()));
        j["detail"] = e.what();
        j["witnesses"] = e.witnesses();
        emit_json(o, j, out);
        return kFail;
      }
    }
    if (*info) {
      emit_json(o, info_json(load_brace(source, policy), policy), out);
      return kOk;
    }
    if (*quotient) {
      const auto b = load_brace(source, policy);
      const auto members = parse_index_list(ideal);
      for (Elem x : members)
        if (x >= b.order()) throw UsageError("element index out of range: " + std::to_string(x));
      auto rep = is_ideal(b, members);
      if (!rep.passed()) {
        emit_json(o, io::to_json(rep), out);
        return kFail;
      }
      const auto q = quotient_brace(b, members);
      if (o.format == "structured") {
        io::Json j;
        j["order"] = q.brace.order();
        j["projection"] = q.projection;
        j["document"] = io::serialize_brace(q.brace);
        emit(o, j.dump(2) + "\n", out);
      } else {
        emit(o, io::serialize_brace(q.brace), out);
      }
      return kOk;
    }
    if (*construct) {
      SkewBrace b;
      std::map<std::string, std::string> meta{{"name", kind}};
      if (kind == "trivial" || kind == "almost-trivial") {
        if (group.empty()) throw UsageError("construct " + kind + " needs --group");
        b = lift_group_to_brace(named_group(group), kind == "trivial" ? LiftMode::Trivial : LiftMode::AlmostTrivial);
        meta["name"] = kind + ":" + group;
      } else if (kind == "semidirect") {
        if (c_source.empty() || matrices_path.empty()) throw UsageError("construct semidirect needs --c and --matrices");
        b = matrix_semidirect(load_brace(c_source, policy), matrix_group_closure(io::parse_matrices(read_file(matrices_path))))
                .brace;
      } else if (kind == "prop1") {
        b = *builtin_brace("prop1:" + std::to_string(p));
      } else {
        b = *builtin_brace(kind);
      }
      if (o.format == "structured") {
        io::Json j;
        j["name"] = meta["name"];
        j["order"] = b.order();
        j["document"] = io::serialize_brace(b, meta);
        emit(o, j.dump(2) + "\n", out);
      } else {
        emit(o, io::serialize_brace(b, meta), out);
      }
      return kOk;
    }
    if (*grun) {
      if (source.empty() == construct_name.empty()) throw UsageError("grun needs exactly one of a brace or --construct");
      GrunReport g;
      if (!construct_name.empty()) {
        if (construct_name == "prop3") {
          g = build_counterexample(example1_brace(), prop3_group(), "prop3").report;
        } else if (construct_name == "prop1") {
          g = build_counterexample(example1_brace(), prop1_group(2), "prop1").report;
        } else {
          auto b = builtin_brace(construct_name);
          if (!b) throw UsageError("unknown construction " + construct_name);
          g = grun_defect(*b, construct_name, policy);
        }
      } else {
        g = grun_defect(load_brace(source, policy), source, policy);
      }
      emit_json(o, io::to_json(g), out);
      return kOk;
    }
    if (*identities) {
      const auto r = identity_suite(load_brace(source, policy), sampled ? ScanMode::Sampled : ScanMode::Exhaustive, policy);
      emit_json(o, io::to_json(r), out);
      return r.passed() ? kOk : kFail;
    }
    if (*rcheck) {
      const auto r = recipe_check(io::parse_matrices(read_file(matrices_path)));
      emit_json(o, io::to_json(r), out);
      return r.cond1 && r.cond2 ? kOk : kFail;
    }
    if (*rsearch) {
      RecipeSearchOptions opt;
      if (strategy == "auto") strategy = auto_strategy_is_exhaustive(n, p) ? "exhaustive" : "random";
      opt.strategy = strategy == "random" ? SearchStrategy::Random : SearchStrategy::Exhaustive;
      opt.budget = budget;
      opt.seed = policy.seed;
      opt.max_generators = max_gens;
      opt.stop_after = stop_after;
      const auto r = search_recipe(n, p, opt);
      io::Json j;
      j["n"] = n;
      j["p"] = p;
      j["strategy"] = strategy;
      j["seed"] = opt.seed;
      j["budget"] = budget;
      const auto body = io::to_json(r);
      for (const auto& [k, v] : body.items()) j[k] = v;
      emit_json(o, j, out);
      if (opt.strategy == SearchStrategy::Random) return r.catalog.empty() ? kFail : kOk;
      return r.budget_exceeded ? kFail : kOk;
    }
    if (*iso) {
      auto load_group = [&](const std::string& s) {
        if (std::filesystem::exists(s)) {
          const auto b = io::parse_brace(read_file(s), policy).brace;
          return table == "dot" ? b.dot_group() : b.circ_group();
        }
        return named_group(s);
      };
      const auto g = load_group(source), h = load_group(source2);
      const auto r = find_isomorphism(g, h, budget);
      io::Json j;
      j["first"] = source;
      j["second"] = source2;
      j["outcome"] = r.outcome == SearchOutcome::Found ? "isomorphic"
                     : r.outcome == SearchOutcome::None ? "not-isomorphic"
                                                        : "budget-exceeded";
      j["isomorphic"] = r.outcome == SearchOutcome::Found;
      j["nodes"] = r.nodes;
      if (r.map) j["map"] = r.map->image_of;
      emit_json(o, j, out);
      return r.outcome == SearchOutcome::Found ? kOk : kFail;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::SyntaxError:
      case ErrorKind::NonPrimeModulus:
      case ErrorKind::DimensionMismatch:
      case ErrorKind::SizeExceeded:
        return kUsage;
      default:
        return kFail;
    }
  }
  err << app.help();
  return kUsage;
}

}  // namespace bracelab::cli
