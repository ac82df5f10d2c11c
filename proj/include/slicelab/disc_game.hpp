#pragma once

// Positioner/Signgiver discrepancy games. Positioner picks an unqueried
// position, Signgiver gives it a sign; the score of a run is the largest
// value the scoring function reaches on any intermediate board.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "slicelab/discmax.hpp"

namespace slicelab {

enum class Scoring {
  // max_j |disc(1,j)|, the game value d(n).
  prefix_max,
  // max_{i<=j} |disc(i,j)| - unq(i,j)/2, the game value d'(n).
  interval_minus_half_unq,
};
const char* to_string(Scoring s);
Scoring parse_scoring(std::string_view s);

struct GameSpec {
  int n = 1;
  Scoring scoring = Scoring::prefix_max;
};

// Scores are kept doubled so that unq/2 stays integral.
int peak_doubled(const Board& b, Scoring scoring);

struct Move {
  int position = 0;
  int sign = 0;
  int peak_doubled = 0;  // running peak after this move
};

struct MoveTrace {
  std::vector<Move> moves;

  int peak_doubled() const { return moves.empty() ? 0 : moves.back().peak_doubled; }
  // One {"move":t,"position":i,"sign":s,"peak":p} object per line.
  std::string to_json_lines() const;
};

struct GameResult {
  int value_doubled = 0;
  MoveTrace principal_line;
  std::uint64_t states_expanded = 0;

  double value() const { return value_doubled / 2.0; }
};

struct GameOptions {
  int threads = 1;
  // 3^n boards are memoized; n with 3^n above this aborts.
  std::uint64_t max_states = 4'782'969;  // 3^14
};

// Exact minimax value with the principal line under the deterministic
// tie-breaks (Positioner: lowest index, Signgiver: -1).
GameResult game_value(const GameSpec& spec, const GameOptions& opts = {});

enum class StrategyId { optimal, signgiver_sqrt_blocks, positioner_bisection, random };
const char* to_string(StrategyId s);
StrategyId parse_strategy(std::string_view s);

enum class Role { positioner, signgiver };
const char* to_string(Role r);
Role parse_role(std::string_view s);

// Fixed strategies; both are pure functions of the board.
int sqrt_blocks_sign(const Board& b, int pending_query);
int bisection_position(const Board& b);

using PositionerFn = std::function<int(const Board&)>;
using SigngiverFn = std::function<int(const Board&, int)>;

// Optimal strategies solve the game once on first use; random ones draw
// from a seeded generator.
PositionerFn make_positioner(StrategyId id, const GameSpec& spec, std::uint64_t seed = 0,
                             const GameOptions& opts = {});
SigngiverFn make_signgiver(StrategyId id, const GameSpec& spec, std::uint64_t seed = 0, const GameOptions& opts = {});

// Game value when `role` plays the fixed strategy `id` and the opponent
// answers with exact best responses.
int exploit_doubled(StrategyId id, Role role, const GameSpec& spec, const GameOptions& opts = {});

struct MatchResult {
  MoveTrace trace;
  Board final_board;
  bool aborted = false;
  std::string abort_reason;
  // The illegal move that aborted the match.
  std::optional<Move> offending;
};

MatchResult play_match(const PositionerFn& positioner, const SigngiverFn& signgiver, const GameSpec& spec);

// Incremental game state for interactive play and the C API.
class Match {
 public:
  explicit Match(GameSpec spec);

  const GameSpec& spec() const { return spec_; }
  const Board& board() const { return board_; }
  const MoveTrace& trace() const { return trace_; }
  bool finished() const { return board_.complete(); }

  // Why (position, sign) is illegal, or nullopt if it is legal.
  std::optional<std::string> check(int position, int sign) const;
  // Throws DomainError on illegal moves; the state is unchanged then.
  void apply(int position, int sign);

 private:
  GameSpec spec_;
  Board board_;
  MoveTrace trace_;
};

struct CorollaryReport {
  int n = 0;
  int d_n = 0;               // d(n)
  int d_prime_doubled = 0;   // 2 d'(n)
  int prefix_d = 0;          // 2 d(n)
  int prefix_E = 0;          // E_{n/2}(Disc-max-(2 d(n)))
  bool prefix_holds = false; // prefix_E <= 3 * prefix_d
  int interval_d_doubled = 0;  // 2 (d'(n) + 3)
  int interval_d_floor = 0;    // the integer bound the function actually uses
  int interval_E = 0;
  bool interval_holds = false;  // interval_E <= 6 (d'(n) + 3)
};

CorollaryReport corollary_pipeline(int n, const GameOptions& game_opts = {}, const SolveOptions& solve_opts = {});

}  // namespace slicelab
