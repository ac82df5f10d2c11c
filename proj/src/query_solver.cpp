#include "slicelab/query_solver.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <future>
#include <map>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

namespace slicelab {

// ---------------------------------------------------------------------------
// DecisionTree

namespace {

int append_subtree(std::vector<TreeNode>& out, const DecisionTree& t) {
  const int offset = static_cast<int>(out.size());
  for (TreeNode nd : t.nodes()) {
    if (!nd.is_leaf()) {
      nd.no += offset;
      nd.yes += offset;
    }
    out.push_back(nd);
  }
  return t.root() + offset;
}

}  // namespace

DecisionTree DecisionTree::leaf(bool value) {
  DecisionTree t;
  t.nodes_.push_back(TreeNode{0, -1, -1, value ? 1 : 0});
  t.root_ = 0;
  return t;
}

DecisionTree DecisionTree::internal(int query, const DecisionTree& no, const DecisionTree& yes) {
  DecisionTree t;
  t.nodes_.reserve(1 + no.nodes_.size() + yes.nodes_.size());
  t.nodes_.push_back(TreeNode{query, -1, -1, 0});
  int no_root = append_subtree(t.nodes_, no);
  int yes_root = append_subtree(t.nodes_, yes);
  t.nodes_[0].no = no_root;
  t.nodes_[0].yes = yes_root;
  t.root_ = 0;
  return t;
}

DecisionTree DecisionTree::from_nodes(std::vector<TreeNode> nodes, int root) {
  DecisionTree t;
  t.nodes_ = std::move(nodes);
  t.root_ = root;
  return t;
}

namespace {

nlohmann::ordered_json node_json(const DecisionTree& t, int idx, int depth) {
  if (depth > 64) throw StructuralError("tree deeper than 64 levels (cycle?)");
  const TreeNode& nd = t.node(idx);
  nlohmann::ordered_json j;
  if (nd.is_leaf()) {
    j["leaf"] = nd.value;
  } else {
    j["query"] = nd.query;
    j["no"] = node_json(t, nd.no, depth + 1);
    j["yes"] = node_json(t, nd.yes, depth + 1);
  }
  return j;
}

int parse_node(const nlohmann::json& j, std::vector<TreeNode>& out, int depth) {
  if (depth > 64) throw StructuralError("tree JSON nested deeper than 64 levels");
  if (!j.is_object()) throw ParseError("tree node must be a JSON object");
  const int idx = static_cast<int>(out.size());
  out.push_back({});
  if (j.contains("leaf")) {
    int v = j.at("leaf").get<int>();
    if (v != 0 && v != 1) throw ParseError("leaf value must be 0 or 1");
    out[idx] = TreeNode{0, -1, -1, v};
    return idx;
  }
  int q = j.at("query").get<int>();
  if (q < 1) throw ParseError("query position must be >= 1");
  int no = parse_node(j.at("no"), out, depth + 1);
  int yes = parse_node(j.at("yes"), out, depth + 1);
  out[idx] = TreeNode{q, no, yes, 0};
  return idx;
}

}  // namespace

std::string DecisionTree::to_json() const { return node_json(*this, root_, 0).dump(); }

DecisionTree DecisionTree::from_json(std::string_view text) {
  std::vector<TreeNode> nodes;
  try {
    int root = parse_node(nlohmann::json::parse(text), nodes, 0);
    return from_nodes(std::move(nodes), root);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("tree JSON: ") + e.what());
  }
}

std::string DecisionTree::to_dot() const {
  std::ostringstream os;
  os << "digraph decision_tree {\n";
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const TreeNode& nd = nodes_[i];
    if (nd.is_leaf()) {
      os << "  n" << i << " [shape=box, label=\"" << nd.value << "\"];\n";
    } else {
      os << "  n" << i << " [shape=ellipse, label=\"x" << nd.query << "\"];\n";
      os << "  n" << i << " -> n" << nd.no << " [label=\"0\"];\n";
      os << "  n" << i << " -> n" << nd.yes << " [label=\"1\"];\n";
    }
  }
  os << "}\n";
  return os.str();
}

std::string DecisionTree::canonical() const {
  std::string out;
  auto rec = [&](auto&& self, int idx) -> void {
    const TreeNode& nd = node(idx);
    if (nd.is_leaf()) {
      out += nd.value ? '1' : '0';
      return;
    }
    out += '(' + std::to_string(nd.query) + ' ';
    self(self, nd.no);
    out += ' ';
    self(self, nd.yes);
    out += ')';
  };
  rec(rec, root_);
  return out;
}

// ---------------------------------------------------------------------------
// solve_depth

namespace {

struct StateKey {
  SubsetMask queried;
  SubsetMask ones;
  friend bool operator==(const StateKey&, const StateKey&) = default;
};

struct StateKeyHash {
  std::size_t operator()(const StateKey& k) const noexcept {
    std::uint64_t h = k.queried * 0x9E3779B97F4A7C15ULL;
    h ^= (k.ones + 0x632BE59BD9B4E019ULL) * 0xC2B2AE3D27D4EB4FULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Sharded memo with insert-or-get semantics. Values are exact depths, so a
// racing duplicate insert stores the same number.
class DepthMemo {
 public:
  explicit DepthMemo(std::uint64_t max_states) : max_states_(max_states) {}

  std::optional<int> find(const StateKey& key) {
    Shard& s = shard(key);
    std::lock_guard lock(s.mu);
    auto it = s.map.find(key);
    if (it == s.map.end()) return std::nullopt;
    return it->second;
  }

  void insert(const StateKey& key, int value) {
    Shard& s = shard(key);
    std::lock_guard lock(s.mu);
    if (s.map.emplace(key, static_cast<std::int8_t>(value)).second) {
      std::uint64_t count = ++size_;
      if (count > max_states_) {
        throw ResourceError("solve_depth memo budget of " + std::to_string(max_states_) + " states exceeded", count);
      }
    }
  }

  std::uint64_t size() const { return size_.load(); }

 private:
  struct Shard {
    std::mutex mu;
    std::unordered_map<StateKey, std::int8_t, StateKeyHash> map;
  };
  static constexpr std::size_t kShards = 64;

  Shard& shard(const StateKey& key) { return shards_[StateKeyHash{}(key) % kShards]; }

  std::uint64_t max_states_;
  std::atomic<std::uint64_t> size_{0};
  std::array<Shard, kShards> shards_;
};

class DepthSolver {
 public:
  DepthSolver(const SliceFunction& f, std::uint64_t max_states) : f_(f), d_(f.domain()), memo_(max_states) {}

  int depth(const QueryState& st) {
    ++expanded_;
    ValueSet vals = consistent_values(f_, st);
    if (vals.singleton()) return 0;
    const StateKey key{st.queried, st.ones};
    if (auto hit = memo_.find(key)) return *hit;
    int best = d_.n + 1;
    for (int i = 1; i <= d_.n && best > 1; ++i) {
      if (st.is_queried(i)) continue;
      best = std::min(best, 1 + worst_answer(st, i, best - 1));
    }
    memo_.insert(key, best);
    return best;
  }

  // Max over feasible answers of the child depth; stops early once the
  // running max reaches `cutoff`, since the caller can no longer improve.
  int worst_answer(const QueryState& st, int i, int cutoff) {
    int worst = -1;
    for (bool a : {false, true}) {
      QueryState child = st.with(i, a);
      if (!child.consistent_with(d_)) continue;
      worst = std::max(worst, depth(child));
      if (worst >= cutoff) break;
    }
    return worst;
  }

  // Root value with the root's queries fanned out over worker threads.
  int parallel_root(int threads) {
    const QueryState root{};
    if (consistent_values(f_, root).singleton()) return 0;
    std::vector<int> queries;
    for (int i = 1; i <= d_.n; ++i) queries.push_back(i);
    std::vector<int> cost(queries.size(), d_.n + 1);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t idx = next++; idx < queries.size(); idx = next++) {
        cost[idx] = 1 + worst_answer(root, queries[idx], d_.n + 1);
      }
    };
    std::vector<std::future<void>> pool;
    for (int w = 0; w < threads; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& fut : pool) fut.get();
    int best = *std::min_element(cost.begin(), cost.end());
    memo_.insert({0, 0}, best);
    return best;
  }

  DecisionTree extract(const QueryState& st) {
    ValueSet vals = consistent_values(f_, st);
    if (vals.empty()) throw InternalError("adversary answered into an empty consistent set");
    if (vals.singleton()) return DecisionTree::leaf(vals.contains(true));
    const int target = depth(st);
    for (int i = 1; i <= d_.n; ++i) {
      if (st.is_queried(i)) continue;
      if (1 + worst_answer(st, i, d_.n + 1) != target) continue;
      DecisionTree branch[2] = {DecisionTree::leaf(false), DecisionTree::leaf(false)};
      for (bool a : {false, true}) {
        QueryState child = st.with(i, a);
        // An infeasible answer never occurs; its slot keeps a placeholder leaf.
        if (child.consistent_with(d_)) branch[a ? 1 : 0] = extract(child);
      }
      return DecisionTree::internal(i, branch[0], branch[1]);
    }
    throw InternalError("no query realizes the memoized depth");
  }

  std::uint64_t expanded() const { return expanded_.load(); }

 private:
  const SliceFunction& f_;
  SliceDomain d_;
  DepthMemo memo_;
  std::atomic<std::uint64_t> expanded_{0};
};

}  // namespace

DepthResult solve_depth(const SliceFunction& f, const SolveOptions& opts) {
  DepthSolver solver(f, opts.max_states);
  DepthResult out;
  out.depth = opts.threads > 1 ? solver.parallel_root(opts.threads) : solver.depth(QueryState{});
  out.co_depth = f.domain().n - out.depth;
  if (opts.extract_tree) out.optimal_tree = solver.extract(QueryState{});
  out.nodes_expanded = solver.expanded();
  return out;
}

// ---------------------------------------------------------------------------
// verify_tree

namespace {

void check_structure(const DecisionTree& t, int n) {
  const auto& nodes = t.nodes();
  const int count = static_cast<int>(nodes.size());
  if (t.root() < 0 || t.root() >= count) throw StructuralError("root index out of range");
  // on_path guards against cycles; path_queries against repeated queries.
  std::vector<char> on_path(nodes.size(), 0);
  auto rec = [&](auto&& self, int idx, SubsetMask path_queries) -> void {
    if (idx < 0 || idx >= count) throw StructuralError("child index " + std::to_string(idx) + " out of range");
    if (on_path[idx]) throw StructuralError("cycle through node " + std::to_string(idx));
    const TreeNode& nd = nodes[idx];
    if (nd.is_leaf()) {
      if (nd.value != 0 && nd.value != 1) throw StructuralError("leaf value must be 0 or 1");
      return;
    }
    if (nd.query < 1 || nd.query > n) {
      throw StructuralError("query position " + std::to_string(nd.query) + " outside [1," + std::to_string(n) + "]");
    }
    if (path_queries & position_bit(nd.query)) {
      throw StructuralError("position " + std::to_string(nd.query) + " queried twice on one path");
    }
    on_path[idx] = 1;
    self(self, nd.no, path_queries | position_bit(nd.query));
    self(self, nd.yes, path_queries | position_bit(nd.query));
    on_path[idx] = 0;
  };
  rec(rec, t.root(), 0);
}

}  // namespace

TreeCheck verify_tree(const DecisionTree& t, const SliceFunction& f) {
  const SliceDomain& d = f.domain();
  check_structure(t, d.n);
  TreeCheck out;
  out.valid = true;
  for_each_subset_of(d.full_mask(), d.k, [&](SubsetMask a) {
    int idx = t.root();
    int length = 0;
    while (!t.node(idx).is_leaf()) {
      const TreeNode& nd = t.node(idx);
      idx = (a & position_bit(nd.query)) ? nd.yes : nd.no;
      ++length;
    }
    out.height = std::max(out.height, length);
    if ((t.node(idx).value != 0) != f(a) && out.valid) {
      out.valid = false;
      out.counterexample = a;
    }
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// census_trees / enumerate_trees

namespace {

// The number of trees below a state depends only on the remaining positions,
// the ones still to be placed and the remaining height.
struct CensusKey {
  int remaining;
  int ones_left;
  int height;
  auto operator<=>(const CensusKey&) const = default;
};

bool census_is_leaf_only(int remaining, int ones_left, int height) {
  const int zeros_left = remaining - ones_left;
  return ones_left == 0 || zeros_left == 0 || height == 0;
}

}  // namespace

BigInt census_trees(const SliceDomain& d, int hmax, const CensusOptions& opts) {
  d.validate();
  if (hmax < 0) throw DomainError("hmax must be nonnegative");
  hmax = std::min(hmax, d.n);
  // Walks every query state reachable within hmax queries, multiplying the
  // independent choices of the two subtrees under each query.
  std::map<CensusKey, BigInt> memo;
  std::uint64_t visited = 0;
  auto count = [&](auto&& self, const QueryState& st, int height) -> BigInt {
    if (++visited > opts.max_states) {
      throw ResourceError("census_trees state budget exceeded", visited);
    }
    const int remaining = d.n - st.num_queried();
    const int ones_left = d.k - st.num_ones();
    if (census_is_leaf_only(remaining, ones_left, height)) return 2;
    const CensusKey key{remaining, ones_left, height};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    BigInt total = opts.mode == CensusMode::early_leaves ? 2 : 0;
    for (int i = 1; i <= d.n; ++i) {
      if (st.is_queried(i)) continue;
      total += self(self, st.with(i, false), height - 1) * self(self, st.with(i, true), height - 1);
    }
    memo.emplace(key, total);
    return total;
  };
  return count(count, QueryState{}, hmax);
}

std::vector<DecisionTree> enumerate_trees(const SliceDomain& d, int hmax, CensusMode mode, std::uint64_t max_trees) {
  d.validate();
  if (hmax < 0) throw DomainError("hmax must be nonnegative");
  auto rec = [&](auto&& self, const QueryState& st, int height) -> std::vector<DecisionTree> {
    std::vector<DecisionTree> out{DecisionTree::leaf(false), DecisionTree::leaf(true)};
    const int remaining = d.n - st.num_queried();
    const int ones_left = d.k - st.num_ones();
    if (census_is_leaf_only(remaining, ones_left, height)) return out;
    if (mode == CensusMode::padded) out.clear();
    for (int i = 1; i <= d.n; ++i) {
      if (st.is_queried(i)) continue;
      auto no = self(self, st.with(i, false), height - 1);
      auto yes = self(self, st.with(i, true), height - 1);
      if (out.size() + no.size() * yes.size() > max_trees) {
        throw ResourceError("enumerate_trees budget exceeded", out.size() + no.size() * yes.size());
      }
      for (const auto& a : no) {
        for (const auto& b : yes) out.push_back(DecisionTree::internal(i, a, b));
      }
    }
    return out;
  };
  return rec(rec, QueryState{}, std::min(hmax, d.n));
}

// ---------------------------------------------------------------------------
// max_depth_all / compose

void for_each_function(const SliceDomain& d, const std::function<void(const SliceFunction&)>& visit,
                       int max_slice_size) {
  d.validate();
  const std::uint64_t size = d.size();
  if (size > static_cast<std::uint64_t>(max_slice_size) || size >= 63) {
    throw ResourceError("2^binom(n,k) functions exceed the enumeration budget of 2^" + std::to_string(max_slice_size),
                        size);
  }
  const std::uint64_t total = std::uint64_t{1} << size;
  std::vector<std::uint8_t> table(size);
  for (std::uint64_t code = 0; code < total; ++code) {
    for (std::uint64_t r = 0; r < size; ++r) table[r] = (code >> r) & 1;
    visit(SliceFunction::from_table(d, table));
  }
}

MaxDepthResult max_depth_all(const SliceDomain& d, int max_slice_size, int threads) {
  MaxDepthResult out;
  out.depth = -1;
  SolveOptions opts;
  opts.threads = threads;
  for_each_function(
      d,
      [&](const SliceFunction& f) {
        ++out.functions_checked;
        int depth = solve_depth(f, opts).depth;
        if (depth > out.depth) {
          out.depth = depth;
          out.witness = f;
        }
      },
      max_slice_size);
  out.co_depth = d.n - out.depth;
  return out;
}

SliceFunction compose(const SliceFunction& f1, const SliceFunction& f2) {
  const SliceDomain d1 = f1.domain();
  const SliceDomain d2 = f2.domain();
  SliceDomain d{d1.n + d2.n, d1.k + d2.k};
  d.validate();
  std::uint64_t size = d.size();
  if (size > SliceFunction::kMaxTableEntries) throw ResourceError("composed table exceeds the table budget", size);
  const SubsetMask low = d1.full_mask();
  return SliceFunction::tabulate(d, [&](SubsetMask a) {
    SubsetMask first = a & low;
    if (popcount(first) != d1.k) return false;
    return f1(first) == f2(a >> d1.n);
  });
}

}  // namespace slicelab
