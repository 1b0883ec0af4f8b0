#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bracelab_cli.hpp"

using namespace bracelab;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fx(const std::string& name) { return std::string(BRACELAB_FIXTURES) + "/" + name; }

io::Json structured(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "structured"});
  const auto r = run(args);
  return io::Json::parse(r.out);
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bracelab_test_" + name);
}

}  // namespace

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"validate"}).code, 2);
  EXPECT_EQ(run({"--format", "xml", "validate", "example1"}).code, 2);
  EXPECT_EQ(run({"validate", "/nonexistent/file.sbr"}).code, 2);
  EXPECT_EQ(run({"construct", "trivial"}).code, 2);
  EXPECT_EQ(run({"grun"}).code, 2);
  EXPECT_EQ(run({"recipe-search", "--n", "2", "--p", "4"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, ValidateFixtureAndDoctored) {
  EXPECT_EQ(run({"validate", fx("s3_almost_trivial.sbr")}).code, 0);
  const auto path = temp_file("bad.sbr");
  {
    std::ofstream f(path);
    f << "skewbrace v1 6\n";
    const auto s3 = groups::symmetric(3), c6 = groups::cyclic(6);
    for (const auto* g : {&s3, &c6}) {
      if (g == &c6) f << "circ\n";
      for (Elem a = 0; a < 6; ++a) {
        for (Elem b = 0; b < 6; ++b) f << (b ? " " : "") << g->mul(a, b);
        f << "\n";
      }
    }
  }
  const auto r = run({"validate", path.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("valid: false"), std::string::npos) << r.out;
  {
    std::ofstream f(path);
    f << "skewbrace v1 2\n0 1\n";
  }
  EXPECT_EQ(run({"validate", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, InfoMatchesLibrary) {
  const auto j = structured({"info", "prop1"});
  EXPECT_EQ(j.at("order"), 96);
  EXPECT_EQ(j.at("derived_order"), 48);
  EXPECT_EQ(j.at("ann_order"), 2);
  EXPECT_EQ(j.at("perfect"), false);
  const auto s3 = lift_group_to_brace(groups::symmetric(3), LiftMode::AlmostTrivial);
  EXPECT_EQ(structured({"info", fx("s3_almost_trivial.sbr")}), cli::info_json(s3, {}));
}

TEST(Cli, GrunConstructProp3) {
  const auto r = run({"grun", "--construct", "prop3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("perfect: true"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("grun_holds: false"), std::string::npos) << r.out;
  const auto j = structured({"grun", "--construct", "prop3"});
  const auto lib = build_counterexample(example1_brace(), matrix_group_closure(prop3_matrices()), "prop3").report;
  EXPECT_EQ(j, io::to_json(lib));
}

TEST(Cli, GrunOnFileMatchesLibrary) {
  const auto f = fx("s3_almost_trivial.sbr");
  const auto j = structured({"grun", f});
  const auto lib = grun_defect(lift_group_to_brace(groups::symmetric(3), LiftMode::AlmostTrivial), f);
  EXPECT_EQ(j, io::to_json(lib));
}

TEST(Cli, RecipeCheckProp3) {
  const auto r = run({"recipe-check", "--matrices", fx("prop3.mat")});
  EXPECT_EQ(r.code, 0);
  const auto j = structured({"recipe-check", "--matrices", fx("prop3.mat")});
  EXPECT_EQ(j, io::to_json(recipe_check(prop3_matrices())));
  EXPECT_EQ(j.at("cond1"), true);
  EXPECT_EQ(j.at("cond2"), true);
  bool found = false;
  for (const auto& v : j.at("witnesses_v")) found = found || v == io::Json::array({1, 0, 0, 1});
  EXPECT_TRUE(found) << j.dump();
  EXPECT_EQ(run({"recipe-check", "--matrices", fx("prop1.mat")}).code, 1);
}

TEST(Cli, IdentitiesAndIso) {
  EXPECT_EQ(run({"identities", "example1"}).code, 0);
  EXPECT_EQ(run({"identities", "--sampled", "prop1"}).code, 0);
  const auto j = structured({"identities", "example1"});
  EXPECT_EQ(j, io::to_json(identity_suite(example1_brace())));
  EXPECT_EQ(run({"iso", "S4", "S4"}).code, 0);
  EXPECT_EQ(run({"iso", "S4", "SL25"}).code, 1);
  EXPECT_EQ(run({"iso", "D8", "Q8"}).code, 1);
  EXPECT_EQ(run({"iso", fx("s3_almost_trivial.sbr"), "S3", "--table", "circ"}).code, 0);
}

TEST(Cli, ConstructAndQuotient) {
  const auto r = run({"construct", "almost-trivial", "--group", "S3"});
  ASSERT_EQ(r.code, 0);
  const auto doc = io::parse_brace(r.out);
  EXPECT_TRUE(doc.brace == lift_group_to_brace(groups::symmetric(3), LiftMode::AlmostTrivial));
  EXPECT_EQ(doc.metadata.at("name"), "almost-trivial:S3");
  const auto sd = run({"construct", "semidirect", "--c", "example1", "--matrices", fx("prop1.mat")});
  ASSERT_EQ(sd.code, 0);
  EXPECT_EQ(io::parse_brace(sd.out).brace.order(), 96u);
  const auto q = run({"quotient", "prop1", "--ideal", "0,1"});
  ASSERT_EQ(q.code, 0) << q.err;
  EXPECT_EQ(io::parse_brace(q.out).brace.order(), 48u);
  EXPECT_EQ(run({"quotient", "prop1", "--ideal", "0,2"}).code, 1);
  EXPECT_EQ(run({"quotient", "prop1", "--ideal", "0,500"}).code, 2);
}

TEST(Cli, OutWritesFile) {
  const auto path = temp_file("out.txt");
  const auto r = run({"--out", path.string(), "info", "example1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_NE(ss.str().find("order: 24"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, RecipeSearch) {
  const auto a = run({"--format", "structured", "recipe-search", "--n", "2", "--p", "2"});
  const auto b = run({"--format", "structured", "recipe-search", "--n", "2", "--p", "2"});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(io::Json::parse(a.out).at("strategy"), "exhaustive");
}

TEST(Cli, SeedFromEnvironment) {
  auto seed_of = [](std::vector<std::string> extra) {
    std::vector<std::string> args{"--format", "structured"};
    args.insert(args.end(), extra.begin(), extra.end());
    args.insert(args.end(), {"recipe-search", "--n", "3", "--p", "2", "--strategy", "random", "--stop-after", "1"});
    return io::Json::parse(run(args).out).at("seed").get<std::uint64_t>();
  };
  ::setenv("BRACELAB_SEED", "17", 1);
  EXPECT_EQ(seed_of({}), 17u);
  EXPECT_EQ(seed_of({"--seed", "5"}), 5u);
  ::setenv("BRACELAB_SEED", "junk", 1);
  EXPECT_EQ(run({"recipe-search", "--n", "2", "--p", "2"}).code, 2);
  ::unsetenv("BRACELAB_SEED");
  EXPECT_EQ(seed_of({}), 0u);
}
