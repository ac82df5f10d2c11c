#pragma once

// Disc-max-d: the slice function on binom([n], n/2) that is true iff every
// prefix of the +1/-1 sequence has |disc| <= d. Includes an exact
// balanced-completion oracle, the four sufficient "game not over yet"
// conditions, and their constructive completions.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/query_solver.hpp"
#include "slicelab/slice_core.hpp"

namespace slicelab {

// Cells over {-1, 0, +1}; 0 means unqueried. Positions are 1-indexed.
class Board {
 public:
  Board() = default;
  explicit Board(int n);
  explicit Board(std::vector<std::int8_t> cells);

  // "+-.+.." ; throws ParseError on other characters.
  static Board parse(std::string_view text);
  // JSON array of -1/0/+1, or a JSON string in the +-. alphabet.
  static Board from_json(std::string_view text);
  // Queried positions as +1 (answer "in A") / -1, the rest 0.
  static Board from_state(int n, const QueryState& st);

  int n() const { return static_cast<int>(cells_.size()); }
  int at(int i) const { return cells_.at(static_cast<std::size_t>(i - 1)); }
  void set(int i, int v);
  const std::vector<std::int8_t>& cells() const { return cells_; }

  int count(int v) const;
  int unqueried() const { return count(0); }
  bool complete() const { return unqueried() == 0; }
  // count(+1) <= n/2 and count(-1) <= n/2.
  bool slice_consistent() const;
  bool balanced() const { return complete() && 2 * count(1) == n(); }

  std::string to_string() const;
  std::string to_json() const;

  friend bool operator==(const Board&, const Board&) = default;

 private:
  std::vector<std::int8_t> cells_;
};

struct IntervalStats {
  int disc = 0;
  int unq = 0;
  friend bool operator==(const IntervalStats&, const IntervalStats&) = default;
};

// 1 <= i <= j <= n, else DomainError.
IntervalStats interval_stats(const Board& b, int i, int j);

// Board must be complete.
bool eval_discmax(const Board& b, int d);

int max_prefix_disc(const Board& b);
int max_interval_disc(const Board& b);

enum class Target { true_value, false_value };

struct FeasibilityVerdict {
  bool feasible = false;
  std::optional<Board> witness;
};

// Balanced completion with all prefix |disc| <= d (true_value) or with some
// prefix |disc| > d (false_value). Requires an even-length slice-consistent
// board.
FeasibilityVerdict feasible_exact(const Board& b, int d, Target target);

// Both verdicts at once, as a value set; no witness.
ValueSet feasible_values(const Board& b, int d);

enum class ClaimVariant { i, ii, i_prime, ii_prime };
const char* to_string(ClaimVariant v);
ClaimVariant parse_claim_variant(std::string_view s);
// true_value for i and i', false_value for ii and ii'.
Target claim_target(ClaimVariant v);

// Exact evaluation of each hypothesis, half-integers in doubled arithmetic.
bool claim_condition(const Board& b, int d, ClaimVariant variant);

enum class CompletionMethod { alternating, even_interval };

struct Completion {
  Board board;
  bool balanced = false;
  int max_prefix_disc = 0;
  int max_interval_disc = 0;
};

// alternating needs hypothesis i and always yields a balanced board with
// prefix |disc| <= max(floor(d/2)+1, 2 floor(d/2)). even_interval needs
// hypothesis i', fills `order` (empty = left to right) and keeps every
// interval |disc| <= d; it may end unbalanced. Hypothesis violations throw
// PreconditionError; a blocked sign choice throws InternalError.
Completion complete_constructive(const Board& b, int d, CompletionMethod method, const std::vector<int>& order = {});

// The board showing hypothesis i cannot be relaxed to floor(d/2)+1: -1 on
// [1, floor(d/2)+1], unqueried up to d+1, +1 on [d+2, 2d+2], alternating
// (-1)^i beyond. n must be even and >= 2d+2.
Board remark_board(int d, int n);

// Disc-max-d as an oracle-backed slice function on binom([n], n/2) with the
// exact oracle as its feasibility hook.
SliceFunction discmax_function(int n, int d);

DepthResult e_discmax(int n, int d, const SolveOptions& opts = {});

// Visits every slice-consistent board of even length n.
void for_each_board(int n, const std::function<void(const Board&)>& visit);

struct ClaimFinding {
  ClaimVariant variant;
  int d = 0;
  std::string board;
};

struct ClaimSweep {
  int n = 0;
  int d = 0;
  // Indexed by ClaimVariant.
  std::uint64_t boards = 0;
  std::uint64_t hypothesis_true[4] = {0, 0, 0, 0};
  std::uint64_t sound[4] = {0, 0, 0, 0};
  std::vector<ClaimFinding> findings;
  // even_interval completions of i'-boards.
  std::uint64_t completions = 0;
  std::uint64_t completions_balanced = 0;
  std::uint64_t completions_unbalanced_but_feasible = 0;
  std::uint64_t completion_interval_violations = 0;
};

// Every slice-consistent board of length n against every claim variant at
// bound d; hypothesis-true boards are checked with feasible_exact and (for
// i') completed with even_interval in left-to-right order.
ClaimSweep claims_sweep(int n, int d);

}  // namespace slicelab
