// Acceptance run: one PASS/FAIL line per criterion, with wall-clock limits.
#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "bracelab_cli.hpp"
#include "corpus.hpp"

using namespace bracelab;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

bool run_criterion(int id, const std::string& title, double limit_s, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(o);
  } catch (const std::exception& e) {
    o.ok = false;
    o.note += std::string("exception: ") + e.what();
  }
  const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (s >= limit_s) o.require(false, "time limit exceeded");
  std::ostringstream line;
  line.setf(std::ios::fixed);
  line.precision(2);
  line << "criterion " << id << ": " << (o.ok ? "PASS" : "FAIL") << "  " << title << "  (" << s << " s, limit "
       << limit_s << " s)";
  if (!o.note.empty()) line << "  [" << o.note << "]";
  std::cout << line.str() << std::endl;
  return o.ok;
}

std::vector<Elem> sorted(std::vector<Elem> v) {
  std::sort(v.begin(), v.end());
  return v;
}

int invoke(std::vector<std::string> args, std::string* out = nullptr) {
  std::ostringstream o, e;
  const int code = cli::run_cli(args, o, e);
  if (out) *out = o.str();
  return code;
}

}  // namespace

int main() {
  bool all = true;

  all &= run_criterion(1, "order-24 brace on F3 x F2^3", 2.0, [](Outcome& o) {
    std::string text;
    o.require(invoke({"construct", "example1"}, &text) == 0, "construct example1 exit code");
    const auto c = io::parse_brace(text).brace;
    o.require(c.order() == 24, "order 24");
    CheckPolicy exhaustive;
    exhaustive.max_witnesses = 1;
    const auto rel = check_left_brace_relation(c.dot_group(), c.circ_group(), exhaustive);
    o.require(rel.status == Status::Pass && rel.checked == 13824, "exhaustive left-brace check over 13824 triples");
    o.require(is_perfect(c), "perfect");
    o.require(annihilator(c).is_trivial(), "|Ann| = 1");
    const auto& d = c.dot_group();
    o.require(is_abelian(d) && exponent(d) == 6, "(C,.) abelian of exponent 6");
    o.require(order_profile(d) == (OrderProfile{{1, 1}, {2, 7}, {3, 2}, {6, 14}}), "order profile of F3 x F2^3");
    o.require(find_isomorphism(c.circ_group(), groups::symmetric(4)).outcome == SearchOutcome::Found, "(C,o) = S4");
  });

  all &= run_criterion(2, "F2^2 counterexample of order 96", 20.0, [](Outcome& o) {
    const auto sd = matrix_semidirect(example1_brace(), matrix_group_closure(prop1_matrices(2)));
    const auto& A = sd.brace;
    o.require(A.order() == 96, "order 96");
    const auto inv = compute_invariants(A);
    std::vector<Elem> e1_times_c;
    for (Elem c = 0; c < 24; ++c) {
      e1_times_c.push_back(corpus::sd_index(2, {0, 0}, c));
      e1_times_c.push_back(corpus::sd_index(2, {1, 0}, c));
    }
    o.require(inv.derived.size() == 48 && inv.derived.members() == sorted(e1_times_c), "A*A = <e1> x C");
    o.require(inv.ann.members() == std::vector<Elem>{0, corpus::sd_index(2, {1, 0}, 0)}, "Ann = <e1> x {1}");
    o.require(inv.ann2.size() > inv.ann.size(), "Ann2 strictly contains Ann");
    o.require(inv.ann2.contains(corpus::sd_index(2, {0, 1}, 0)), "(e2, 1) in Ann2");
    const auto defect = star_subgroup(A, inv.derived.members(), inv.ann2.members());
    o.require(!defect.is_trivial(), "(A*A)*Ann2 != 1");
    const auto t = verify_theorem1(A, inv);
    o.require(t.passed(), "theorem 1");
  });

  all &= run_criterion(3, "F2^4 counterexample of order 384", 120.0, [](Outcome& o) {
    const auto sd = matrix_semidirect(example1_brace(), matrix_group_closure(prop3_matrices()));
    const auto& A = sd.brace;
    o.require(A.order() == 384, "order 384");
    const auto inv = compute_invariants(A);
    o.require(inv.derived.is_whole(), "perfect");
    o.require(inv.ann.members() == std::vector<Elem>{0, corpus::sd_index(2, {1, 0, 1, 0}, 0)},
              "Ann = {1, ((1,0,1,0),1)}");
    o.require(inv.ann2.contains(corpus::sd_index(2, {1, 0, 0, 1}, 0)), "((1,0,0,1),1) in Ann2");
    const auto q = quotient_brace(A, inv.ann);
    o.require(!annihilator(q.brace).is_trivial(), "Ann(A/Ann(A)) != 1");
    CheckPolicy p;
    p.max_witnesses = 1;
    o.require(!is_two_sided(A, p).passed(), "not two-sided");
    o.require(is_abelian(A.dot_group()), "(A,.) abelian");
  });

  all &= run_criterion(4, "Grun recovery on A5 and SL(2,5)", 10.0, [](Outcome& o) {
    for (const auto& [name, g] : {std::pair{"A5", groups::alternating(5)}, std::pair{"SL(2,5)", groups::special_linear_2(5)}}) {
      const auto r = grun_defect(lift_group_to_brace(g, LiftMode::AlmostTrivial), name);
      const std::string n = name;
      o.require(r.is_perfect, n + " perfect");
      o.require(r.is_two_sided, n + " two-sided");
      o.require(r.ann_order == 1 && r.ann2_order == 1, n + " Ann = Ann2 = 1 (measured |Ann| = " +
                                                           std::to_string(r.ann_order) + ", |Ann2| = " +
                                                           std::to_string(r.ann2_order) + ", |Z(G)| = " +
                                                           std::to_string(center(g).size()) + ")");
      o.require(r.defect_trivial(), n + " defect trivial");
      o.require(r.grun_holds, n + " Ann(A/Ann) = 1");
    }
  });

  all &= run_criterion(5, "F3^3 kernels, images and fixed space", 1.0, [](Outcome& o) {
    const unsigned p = 3;
    auto sp = [&](std::vector<FpVector> vs) { return FpSubspace::span(p, 3, vs); };
    const auto gens = prop2_matrices(p);
    o.require(kernel_image(gens[0].minus_identity()).kernel == sp({{1, 0, 0}, {0, 1, 0}}), "kernel <e1,e2>");
    o.require(kernel_image(gens[1].minus_identity()).kernel == sp({{1, 0, 0}, {0, 0, 1}}), "kernel <e1,e3>");
    for (long g = 0; g < 3; ++g) {
      const auto a = FpMatrix::from_rows(p, {{1, 0, g}, {0, 1, 0}, {0, 0, 1}});
      const auto b = FpMatrix::from_rows(p, {{1, 1, g}, {0, -1, 0}, {0, 0, 1}});
      const auto ge1 = FpVector{static_cast<std::uint8_t>(g), 0, 0};
      o.require(kernel_image(a.minus_identity()).image == sp({ge1}), "image <g e1>");
      // (1,-2,0) = (1,1,0) over F_3
      o.require(kernel_image(b.minus_identity()).image == sp({{1, 1, 0}, ge1}), "image <(1,-2,0), g e1>");
    }
    o.require(fixed_space(matrix_group_closure(gens)) == sp({{1, 0, 0}}), "fixed space <e1>");
  });

  all &= run_criterion(6, "recipe check on four 4x4 matrices over F2", 1.0, [](Outcome& o) {
    const auto r = recipe_check(prop3_matrices());
    o.require(r.cond1, "cond1");
    o.require(r.fixed == FpSubspace::span(2, 4, {{1, 0, 1, 0}}), "U = span{(1,0,1,0)}");
    const FpVector v{1, 0, 0, 1};
    o.require(r.cond2 && std::find(r.witnesses_v.begin(), r.witnesses_v.end(), v) != r.witnesses_v.end(),
              "v = (1,0,0,1) witnesses cond2");
    o.require(matrix_group_closure(prop3_matrices()).order() == 24, "closure order 24");
  });

  all &= run_criterion(7, "corpus property sweep", 60.0, [](Outcome& o) {
    auto entries = corpus::small_corpus();
    entries.push_back({"prop1", corpus::prop1_brace(2)});
    entries.push_back({"prop3", corpus::prop3_brace()});
    for (const auto& e : entries) {
      const auto inv = compute_invariants(e.brace);
      o.require(identity_suite(e.brace).passed(), e.name + ": identity suite");
      o.require(verify_theorem1(e.brace, inv).passed(), e.name + ": theorem 1");
      o.require(char_equivalences(e.brace, inv).report.passed(), e.name + ": characterization");
      CheckPolicy p;
      p.max_witnesses = 1;
      if (is_two_sided(e.brace, p).passed())
        o.require(star_subgroup(e.brace, inv.derived.members(), inv.ann2.members()).is_trivial(),
                  e.name + ": two-sided with nontrivial defect");
    }
    for (const auto& d : corpus::doctored()) {
      const auto r = validate_skew_brace(d.dot, d.circ);
      const bool witnessed = !r.brace.has_value() && !r.brace.report().witnesses.empty() &&
                             !r.brace.report().witnesses.front().empty();
      o.require(witnessed, d.name + ": rejected with a witness");
    }
  });

  all &= run_criterion(8, "recipe search", 120.0, [](Outcome& o) {
    std::string a, b, c;
    o.require(invoke({"--format", "structured", "recipe-search", "--n", "2", "--p", "2"}, &a) == 0, "n=2 exit code");
    invoke({"--format", "structured", "recipe-search", "--n", "2", "--p", "2"}, &b);
    const auto ja = io::Json::parse(a);
    o.require(ja.at("strategy") == "exhaustive", "n=2 exhaustive");
    o.require(a == b, "n=2 catalog stable across runs");
    o.require(invoke({"--format", "structured", "--seed", "0", "recipe-search", "--n", "4", "--p", "2"}, &c) == 0,
              "n=4 exit code");
    o.require(!io::Json::parse(c).at("catalog").empty(), "n=4 finds a qualifying set");
  });

  std::cout << (all ? "all criteria passed" : "some criteria failed") << std::endl;
  return all ? 0 : 1;
}
