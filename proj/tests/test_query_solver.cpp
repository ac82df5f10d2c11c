#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <set>

#include "oracles.hpp"
#include "slicelab/query_solver.hpp"

using namespace slicelab;

namespace {

SliceFunction dictator(SliceDomain d, int i) {
  return SliceFunction::tabulate(d, [i](SubsetMask s) { return (s & position_bit(i)) != 0; });
}

int brute_depth(const SliceFunction& f) {
  auto elems = oracle::slice(f.domain().n, f.domain().k);
  return oracle::depth(f.domain().n, elems, [&](std::uint64_t s) { return f(s); });
}

SliceFunction random_function(SliceDomain d, std::mt19937_64& rng) {
  std::vector<std::uint8_t> t(d.size());
  for (auto& b : t) b = rng() & 1;
  return SliceFunction::from_table(d, t);
}

}  // namespace

TEST_CASE("constant and dictator depths") {
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(solve_depth(SliceFunction::constant({n, k}, true)).depth == 0);
    }
  }
  auto r = solve_depth(dictator({4, 2}, 1));
  CHECK(r.depth == 1);
  CHECK(r.co_depth == 3);
}

TEST_CASE("[{1,2} subset of A] on (4,2) needs two queries") {
  auto f = SliceFunction::tabulate({4, 2}, [](SubsetMask s) { return (s & 3) == 3; });
  CHECK(brute_depth(f) == 2);
  CHECK(solve_depth(f).depth == 2);
}

TEST_CASE("solver matches unmemoized minimax on random functions") {
  std::mt19937_64 rng(11);
  for (int n = 1; n <= 6; ++n) {
    for (int k = 0; k <= n; ++k) {
      for (int rep = 0; rep < 6; ++rep) {
        auto f = random_function({n, k}, rng);
        CHECK(solve_depth(f).depth == brute_depth(f));
      }
    }
  }
}

TEST_CASE("threaded solve agrees with the sequential one") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 10; ++rep) {
    auto f = random_function({8, 4}, rng);
    SolveOptions par;
    par.threads = 4;
    CHECK(solve_depth(f, par).depth == solve_depth(f).depth);
  }
}

TEST_CASE("extracted trees verify with height D on every (4,2) and (3,1) function") {
  for (SliceDomain d : {SliceDomain{4, 2}, SliceDomain{3, 1}}) {
    int count = 0;
    for_each_function(d, [&](const SliceFunction& f) {
      SolveOptions o;
      o.extract_tree = true;
      auto r = solve_depth(f, o);
      REQUIRE(r.optimal_tree.has_value());
      auto c = verify_tree(*r.optimal_tree, f);
      CHECK(c.valid);
      CHECK(c.height == r.depth);
      ++count;
    });
    CHECK(count == (1 << d.size()));
  }
}

TEST_CASE("extracted trees verify on random functions up to n = 8") {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 20; ++rep) {
    int n = 5 + rep % 4;
    auto f = random_function({n, n / 2}, rng);
    SolveOptions o;
    o.extract_tree = true;
    auto r = solve_depth(f, o);
    auto c = verify_tree(*r.optimal_tree, f);
    CHECK(c.valid);
    CHECK(c.height == r.depth);
  }
}

TEST_CASE("verify_tree basic verdicts") {
  auto leaf0 = DecisionTree::leaf(false);
  auto c = verify_tree(leaf0, SliceFunction::constant({4, 2}, false));
  CHECK(c.valid);
  CHECK(c.height == 0);
  auto bad = verify_tree(leaf0, dictator({4, 2}, 1));
  CHECK_FALSE(bad.valid);
  CHECK(bad.height == 0);
  REQUIRE(bad.counterexample.has_value());
  CHECK((*bad.counterexample & 1) == 1);
}

TEST_CASE("verify_tree rejects malformed trees") {
  auto f = dictator({4, 2}, 1);
  // repeated query on a path
  auto rep = DecisionTree::internal(1, DecisionTree::leaf(false),
                                    DecisionTree::internal(1, DecisionTree::leaf(true), DecisionTree::leaf(true)));
  CHECK_THROWS_AS(verify_tree(rep, f), StructuralError);
  // cycle
  std::vector<TreeNode> nodes{{1, 1, 1, 0}, {2, 0, 0, 0}};
  CHECK_THROWS_AS(verify_tree(DecisionTree::from_nodes(nodes, 0), f), StructuralError);
  // dangling child
  std::vector<TreeNode> dangling{{1, 5, 5, 0}};
  CHECK_THROWS_AS(verify_tree(DecisionTree::from_nodes(dangling, 0), f), StructuralError);
  // position outside [n]
  auto out = DecisionTree::internal(9, DecisionTree::leaf(false), DecisionTree::leaf(true));
  CHECK_THROWS_AS(verify_tree(out, f), StructuralError);
}

TEST_CASE("tree JSON and DOT forms") {
  auto t = DecisionTree::internal(2, DecisionTree::leaf(false), DecisionTree::leaf(true));
  CHECK(t.to_json() == R"({"query":2,"no":{"leaf":0},"yes":{"leaf":1}})");
  CHECK(DecisionTree::from_json(t.to_json()).canonical() == t.canonical());
  const std::string dot = t.to_dot();
  CHECK(dot.find("digraph") != std::string::npos);
  CHECK(dot.find("shape=box") != std::string::npos);
  CHECK_THROWS_AS(DecisionTree::from_json(R"({"query":2})"), ParseError);
}

TEST_CASE("census with no height is the two constant leaves") {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k <= n; ++k) CHECK(census_trees({n, k}, 0) == 2);
  }
}

TEST_CASE("census values against the recursive count") {
  // (3,1) at height 2 is 48 padded trees.
  CHECK(census_trees({3, 1}, 2) == 48);
  for (SliceDomain d : {SliceDomain{3, 1}, SliceDomain{4, 2}, SliceDomain{5, 1}, SliceDomain{5, 2}}) {
    for (int h = 0; h <= d.n; ++h) {
      CHECK(census_trees(d, h) == oracle::padded_trees(d.n, d.k, h));
      CensusOptions early;
      early.mode = CensusMode::early_leaves;
      CHECK(census_trees(d, h, early) == oracle::early_trees(d.n, d.k, h));
    }
  }
  CensusOptions early;
  early.mode = CensusMode::early_leaves;
  CHECK(census_trees({4, 2}, 3, early) == 15378);
  CHECK(census_trees({3, 1}, 2, early) == 62);
}

TEST_CASE("enumerated trees are distinct and match the census") {
  for (SliceDomain d : {SliceDomain{3, 1}, SliceDomain{4, 2}}) {
    for (int h = 0; h <= d.n; ++h) {
      for (CensusMode mode : {CensusMode::padded, CensusMode::early_leaves}) {
        auto trees = enumerate_trees(d, h, mode);
        std::set<std::string> seen;
        for (const auto& t : trees) seen.insert(t.canonical());
        CHECK(seen.size() == trees.size());
        CensusOptions o;
        o.mode = mode;
        CHECK(BigInt(trees.size()) == census_trees(d, h, o));
      }
    }
  }
  CHECK_THROWS_AS(enumerate_trees({4, 2}, 4, CensusMode::padded, 100), ResourceError);
}

TEST_CASE("census respects its state budget") {
  CensusOptions o;
  o.max_states = 10;
  CHECK_THROWS_AS(census_trees({12, 6}, 12, o), ResourceError);
}

TEST_CASE("max_depth_all values") {
  // Exhaustive values: with 3 slice elements one value class is a singleton,
  // so a single query settles every function on (3,1) and (3,2).
  CHECK(max_depth_all({2, 1}).depth == 1);
  CHECK(max_depth_all({3, 1}).depth == 1);
  CHECK(max_depth_all({3, 2}).depth == 1);
  CHECK(max_depth_all({4, 2}).depth == 2);
  CHECK(max_depth_all({4, 1}).depth == 2);
  auto r = max_depth_all({4, 2});
  CHECK(solve_depth(r.witness).depth == r.depth);
  CHECK(r.functions_checked == 64);
  CHECK(r.co_depth == 2);
  CHECK_THROWS_AS(max_depth_all({7, 3}), ResourceError);
}

TEST_CASE("max_depth_all against the brute-force minimax") {
  for (SliceDomain d : {SliceDomain{3, 1}, SliceDomain{4, 2}, SliceDomain{4, 1}}) {
    int best = 0;
    for_each_function(d, [&](const SliceFunction& f) { best = std::max(best, brute_depth(f)); });
    CHECK(max_depth_all(d).depth == best);
  }
}

TEST_CASE("give-away monotonicity of D_k(n)") {
  auto D = [](int n, int k) { return max_depth_all({n, k}).depth; };
  CHECK(D(3, 1) >= D(2, 1));
  CHECK(D(3, 2) >= D(2, 1));
  CHECK(D(4, 2) >= D(3, 1));
  CHECK(D(4, 2) >= D(3, 2));
}

TEST_CASE("compose of constants is the block-count indicator") {
  auto one = SliceFunction::constant({2, 1}, true);
  auto one3 = SliceFunction::constant({3, 1}, true);
  auto c = compose(one, one3);
  CHECK(c.domain() == SliceDomain{5, 2});
  for (SubsetMask s : oracle::slice(5, 2)) CHECK(c(s) == (popcount(s & 0b11) == 1));
}

TEST_CASE("composed dictators need both component queries") {
  auto d1 = dictator({2, 1}, 1);
  auto c = compose(d1, d1);
  CHECK(c.domain() == SliceDomain{4, 2});
  CHECK(solve_depth(c).depth >= 2);
  CHECK(brute_depth(c) == solve_depth(c).depth);
}

TEST_CASE("composition is super-additive on random (4,2) pairs") {
  std::mt19937_64 rng(50);
  for (int rep = 0; rep < 50; ++rep) {
    auto f1 = random_function({4, 2}, rng);
    auto f2 = random_function({4, 2}, rng);
    CHECK(solve_depth(compose(f1, f2)).depth >= solve_depth(f1).depth + solve_depth(f2).depth);
  }
}

TEST_CASE("co-depth sub-additivity at (2,1)+(2,1) and (3,1)+(3,1)") {
  CHECK(max_depth_all({4, 2}).co_depth <= 2 * max_depth_all({2, 1}).co_depth);
  // (6,2) has 15 slice elements; exhaustive max over 2^15 functions.
  CHECK(max_depth_all({6, 2}).co_depth <= 2 * max_depth_all({3, 1}).co_depth);
}

TEST_CASE("solver budget is reported as a resource error") {
  SolveOptions o;
  o.max_states = 16;
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(solve_depth(random_function({10, 5}, rng), o), ResourceError);
}
