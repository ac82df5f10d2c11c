#pragma once

// Exact deterministic query complexity on a slice: the Questioner/Adversary
// minimax, optimal decision trees, tree census and the composition used for
// the sub-additivity of co-depth.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/slice_core.hpp"

namespace slicelab {

// Nodes live in a flat vector; children are indices into it. A leaf has
// query == 0.
struct TreeNode {
  int query = 0;
  int no = -1;
  int yes = -1;
  int value = 0;

  bool is_leaf() const { return query == 0; }
};

class DecisionTree {
 public:
  static DecisionTree leaf(bool value);
  static DecisionTree internal(int query, const DecisionTree& no, const DecisionTree& yes);
  // Takes nodes verbatim; structural checks happen in verify_tree.
  static DecisionTree from_nodes(std::vector<TreeNode> nodes, int root);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  int root() const { return root_; }
  const TreeNode& node(int idx) const { return nodes_.at(static_cast<std::size_t>(idx)); }

  // Nested {"query":i,"no":...,"yes":...} / {"leaf":0|1}.
  std::string to_json() const;
  static DecisionTree from_json(std::string_view text);
  std::string to_dot() const;

  // Canonical nested text, equal for equal labelled structure.
  std::string canonical() const;

 private:
  std::vector<TreeNode> nodes_;
  int root_ = -1;
};

struct DepthResult {
  int depth = 0;
  int co_depth = 0;
  std::optional<DecisionTree> optimal_tree;
  std::uint64_t nodes_expanded = 0;
};

struct SolveOptions {
  bool extract_tree = false;
  int threads = 1;
  std::uint64_t max_states = std::uint64_t{1} << 25;
};

// D(f) by memoized minimax over (queried, ones). Ties: lowest query
// position; among equal adversary answers, answer 0.
DepthResult solve_depth(const SliceFunction& f, const SolveOptions& opts = {});

struct TreeCheck {
  bool valid = false;
  int height = 0;
  // First slice element the tree misclassifies, when invalid.
  std::optional<SubsetMask> counterexample;
};

// Walks the answers of every slice element through the tree. Throws
// StructuralError on cycles, dangling children, out-of-range or repeated
// queries along a path.
TreeCheck verify_tree(const DecisionTree& t, const SliceFunction& f);

enum class CensusMode {
  // Padded trees: every undetermined node above depth hmax is a query,
  // leaves sit at determined nodes or at depth hmax.
  padded,
  // Any node may stop with a leaf; trees of height at most hmax.
  early_leaves,
};

struct CensusOptions {
  CensusMode mode = CensusMode::padded;
  std::uint64_t max_states = std::uint64_t{1} << 22;
};

BigInt census_trees(const SliceDomain& d, int hmax, const CensusOptions& opts = {});

// Materializes every tree counted by census_trees. Throws ResourceError once
// more than max_trees would be produced.
std::vector<DecisionTree> enumerate_trees(const SliceDomain& d, int hmax, CensusMode mode = CensusMode::padded,
                                          std::uint64_t max_trees = 1'000'000);

struct MaxDepthResult {
  int depth = 0;
  int co_depth = 0;
  SliceFunction witness;
  std::uint64_t functions_checked = 0;
};

// Every table function on the slice; binom(n,k) must not exceed
// max_slice_size.
MaxDepthResult max_depth_all(const SliceDomain& d, int max_slice_size = 20, int threads = 1);

// f(A) = 1 iff |A & [n1]| = k1 and f1(A & [n1]) = f2(A & [n1+1,n]) with the
// second block shifted down by n1.
SliceFunction compose(const SliceFunction& f1, const SliceFunction& f2);

// Calls visit(f) for each of the 2^binom(n,k) table functions in increasing
// order of the table read as a little-endian integer.
void for_each_function(const SliceDomain& d, const std::function<void(const SliceFunction&)>& visit,
                       int max_slice_size = 20);

}  // namespace slicelab
