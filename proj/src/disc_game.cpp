#include "slicelab/disc_game.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <future>
#include <mutex>
#include <random>

#include "json.hpp"

namespace slicelab {

const char* to_string(Scoring s) {
  return s == Scoring::prefix_max ? "prefix_max" : "interval_minus_half_unq";
}

Scoring parse_scoring(std::string_view s) {
  if (s == "prefix" || s == "prefix_max") return Scoring::prefix_max;
  if (s == "interval" || s == "interval_minus_half_unq") return Scoring::interval_minus_half_unq;
  throw ParseError("unknown scoring '" + std::string(s) + "' (prefix | interval)");
}

const char* to_string(StrategyId s) {
  switch (s) {
    case StrategyId::optimal: return "optimal";
    case StrategyId::signgiver_sqrt_blocks: return "signgiver_sqrt_blocks";
    case StrategyId::positioner_bisection: return "positioner_bisection";
    case StrategyId::random: return "random";
  }
  return "?";
}

StrategyId parse_strategy(std::string_view s) {
  if (s == "optimal") return StrategyId::optimal;
  if (s == "sqrt_blocks" || s == "signgiver_sqrt_blocks") return StrategyId::signgiver_sqrt_blocks;
  if (s == "bisection" || s == "positioner_bisection") return StrategyId::positioner_bisection;
  if (s == "random") return StrategyId::random;
  throw ParseError("unknown strategy '" + std::string(s) + "'");
}

const char* to_string(Role r) { return r == Role::positioner ? "positioner" : "signgiver"; }

Role parse_role(std::string_view s) {
  if (s == "positioner") return Role::positioner;
  if (s == "signgiver") return Role::signgiver;
  throw ParseError("unknown role '" + std::string(s) + "' (positioner | signgiver)");
}

int peak_doubled(const Board& b, Scoring scoring) {
  const int n = b.n();
  if (scoring == Scoring::prefix_max) return 2 * max_prefix_disc(b);
  int best = INT_MIN;
  for (int i = 1; i <= n; ++i) {
    int disc = 0, unq = 0;
    for (int j = i; j <= n; ++j) {
      disc += b.at(j);
      unq += b.at(j) == 0;
      best = std::max(best, 2 * std::abs(disc) - unq);
    }
  }
  return n == 0 ? 0 : best;
}

std::string MoveTrace::to_json_lines() const {
  std::string out;
  int t = 0;
  for (const Move& m : moves) {
    nlohmann::ordered_json j;
    j["move"] = ++t;
    j["position"] = m.position;
    j["sign"] = m.sign;
    if (m.peak_doubled % 2 == 0) {
      j["peak"] = m.peak_doubled / 2;
    } else {
      j["peak"] = m.peak_doubled / 2.0;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

constexpr std::int16_t kUnknown = INT16_MIN;

std::uint64_t pow3(int n) {
  std::uint64_t p = 1;
  for (int i = 0; i < n; ++i) p *= 3;
  return p;
}

void check_budget(int n, std::uint64_t max_states) {
  if (n < 1) throw DomainError("game needs n >= 1");
  if (n > 40 || pow3(n) > max_states) {
    throw ResourceError("game over n=" + std::to_string(n) + " needs 3^n memo entries, budget " +
                        std::to_string(max_states),
                        n > 40 ? UINT64_MAX : pow3(n));
  }
}

// Base-3 board index: digit 0 unqueried, 1 for +1, 2 for -1.
std::uint64_t board_index(const Board& b) {
  std::uint64_t idx = 0, p = 1;
  for (int i = 1; i <= b.n(); ++i) {
    int c = b.at(i);
    idx += p * (c == 0 ? 0 : (c > 0 ? 1 : 2));
    p *= 3;
  }
  return idx;
}

std::uint64_t digit_of(int sign) { return sign > 0 ? 1 : 2; }

// Exact solver. V(b) = max(peak(b), W(b)) with
//   W(b) = max_i min_s V(b + s@i),   W(full) = -inf.
// The running maximum m of a partial run never enters the key: for any
// continuation the final score is max(m, V(b)), and max(m, .) is monotone, so
// it commutes with both the max over i and the min over s. The optimal move
// at b is therefore independent of m and 3^n boards suffice.
class GameSolver {
 public:
  GameSolver(const GameSpec& spec, const GameOptions& opts) : spec_(spec), opts_(opts) {
    check_budget(spec.n, opts.max_states);
    const std::uint64_t size = pow3(spec.n);
    memo_ = std::make_unique<std::atomic<std::int16_t>[]>(size);
    for (std::uint64_t i = 0; i < size; ++i) memo_[i].store(kUnknown, std::memory_order_relaxed);
    pow3_.resize(static_cast<std::size_t>(spec.n) + 1);
    for (int i = 0; i <= spec.n; ++i) pow3_[i] = pow3(i);
  }

  int value_of(Board& b, std::uint64_t idx) {
    std::int16_t cached = memo_[idx].load(std::memory_order_relaxed);
    if (cached != kUnknown) return cached;
    ++expanded_;
    int v = peak_doubled(b, spec_.scoring);
    if (!b.complete()) v = std::max(v, best_reply(b, idx));
    memo_[idx].store(static_cast<std::int16_t>(v), std::memory_order_relaxed);
    return v;
  }

  // W(b): Positioner's best guaranteed future peak.
  int best_reply(Board& b, std::uint64_t idx) {
    int best = INT_MIN;
    for (int i = 1; i <= spec_.n; ++i) {
      if (b.at(i) != 0) continue;
      best = std::max(best, answer_value(b, idx, i));
    }
    return best;
  }

  // min over Signgiver's signs at position i.
  int answer_value(Board& b, std::uint64_t idx, int i) {
    int worst = INT_MAX;
    for (int s : {-1, 1}) {
      b.set(i, s);
      worst = std::min(worst, value_of(b, idx + pow3_[i - 1] * digit_of(s)));
      b.set(i, 0);
    }
    return worst;
  }

  int root_value() {
    Board empty(spec_.n);
    if (opts_.threads <= 1) return best_reply(empty, 0);
    std::vector<int> vals(static_cast<std::size_t>(spec_.n), INT_MIN);
    std::atomic<int> next{1};
    std::vector<std::future<void>> pool;
    for (int w = 0; w < opts_.threads; ++w) {
      pool.push_back(std::async(std::launch::async, [&] {
        Board local(spec_.n);
        for (int i = next++; i <= spec_.n; i = next++) vals[i - 1] = answer_value(local, 0, i);
      }));
    }
    for (auto& f : pool) f.get();
    return *std::max_element(vals.begin(), vals.end());
  }

  int best_position(const Board& board) {
    Board b = board;
    const std::uint64_t idx = board_index(b);
    int best = INT_MIN, pick = 0;
    for (int i = 1; i <= spec_.n; ++i) {
      if (b.at(i) != 0) continue;
      int v = answer_value(b, idx, i);
      if (v > best) {
        best = v;
        pick = i;
      }
    }
    if (pick == 0) throw DomainError("no unqueried position left");
    return pick;
  }

  int best_sign(const Board& board, int i) {
    Board b = board;
    const std::uint64_t idx = board_index(b);
    b.set(i, -1);
    int minus = value_of(b, idx + pow3_[i - 1] * 2);
    b.set(i, 1);
    int plus = value_of(b, idx + pow3_[i - 1]);
    return plus < minus ? 1 : -1;
  }

  std::uint64_t expanded() const { return expanded_.load(); }

 private:
  GameSpec spec_;
  GameOptions opts_;
  std::unique_ptr<std::atomic<std::int16_t>[]> memo_;
  std::vector<std::uint64_t> pow3_;
  std::atomic<std::uint64_t> expanded_{0};
};

}  // namespace

GameResult game_value(const GameSpec& spec, const GameOptions& opts) {
  GameSolver solver(spec, opts);
  GameResult out;
  out.value_doubled = solver.root_value();
  Match m(spec);
  while (!m.finished()) {
    int pos = solver.best_position(m.board());
    m.apply(pos, solver.best_sign(m.board(), pos));
  }
  out.principal_line = m.trace();
  if (out.principal_line.peak_doubled() != out.value_doubled) {
    throw InternalError("principal line does not realize the game value");
  }
  out.states_expanded = solver.expanded();
  return out;
}

// ---------------------------------------------------------------------------
// fixed strategies

int sqrt_blocks_sign(const Board& b, int pending_query) {
  const int n = b.n();
  if (pending_query < 1 || pending_query > n || b.at(pending_query) != 0) {
    throw DomainError("pending query " + std::to_string(pending_query) + " is not an unqueried position");
  }
  int block = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (block * block < n) ++block;
  while (block > 1 && (block - 1) * (block - 1) >= n) --block;
  const int first = ((pending_query - 1) / block) * block + 1;
  const int last = std::min(n, first + block - 1);
  int answered = 0;
  for (int i = first; i <= last; ++i) answered += b.at(i) != 0;
  return answered % 2 == 0 ? 1 : -1;
}

int bisection_position(const Board& b) {
  const int n = b.n();
  // Queried cells plus the sentinels x_0 = +1 and x_{n+1} = -1.
  std::vector<std::pair<int, int>> marks{{0, 1}};
  for (int i = 1; i <= n; ++i) {
    if (b.at(i) != 0) marks.emplace_back(i, b.at(i));
  }
  marks.emplace_back(n + 1, -1);
  int best_gap = INT_MAX, pick = 0;
  for (std::size_t m = 0; m + 1 < marks.size(); ++m) {
    auto [a, va] = marks[m];
    auto [c, vc] = marks[m + 1];
    if (va == vc || c - a < 2) continue;
    if (c - a < best_gap) {
      best_gap = c - a;
      pick = (a + c) / 2;
    }
  }
  if (pick != 0) return pick;
  // Every opposite pair is adjacent: fill the lowest remaining cell.
  for (int i = 1; i <= n; ++i) {
    if (b.at(i) == 0) return i;
  }
  throw DomainError("no unqueried position left");
}

PositionerFn make_positioner(StrategyId id, const GameSpec& spec, std::uint64_t seed, const GameOptions& opts) {
  switch (id) {
    case StrategyId::positioner_bisection:
      return [](const Board& b) { return bisection_position(b); };
    case StrategyId::optimal: {
      auto solver = std::make_shared<GameSolver>(spec, opts);
      return [solver](const Board& b) { return solver->best_position(b); };
    }
    case StrategyId::random: {
      auto rng = std::make_shared<std::mt19937_64>(seed);
      return [rng](const Board& b) {
        std::vector<int> free;
        for (int i = 1; i <= b.n(); ++i) {
          if (b.at(i) == 0) free.push_back(i);
        }
        if (free.empty()) throw DomainError("no unqueried position left");
        std::uniform_int_distribution<std::size_t> pick(0, free.size() - 1);
        return free[pick(*rng)];
      };
    }
    case StrategyId::signgiver_sqrt_blocks: break;
  }
  throw DomainError(std::string("strategy ") + to_string(id) + " cannot play Positioner");
}

SigngiverFn make_signgiver(StrategyId id, const GameSpec& spec, std::uint64_t seed, const GameOptions& opts) {
  switch (id) {
    case StrategyId::signgiver_sqrt_blocks:
      return [](const Board& b, int q) { return sqrt_blocks_sign(b, q); };
    case StrategyId::optimal: {
      auto solver = std::make_shared<GameSolver>(spec, opts);
      return [solver](const Board& b, int q) { return solver->best_sign(b, q); };
    }
    case StrategyId::random: {
      auto rng = std::make_shared<std::mt19937_64>(seed);
      return [rng](const Board&, int) { return ((*rng)() & 1) ? 1 : -1; };
    }
    case StrategyId::positioner_bisection: break;
  }
  throw DomainError(std::string("strategy ") + to_string(id) + " cannot play Signgiver");
}

// ---------------------------------------------------------------------------
// exploitation

namespace {

// Best response against a fixed, board-deterministic strategy. U(b) is the
// largest peak reachable from b (inclusive) under the opponent's best play.
class Exploiter {
 public:
  Exploiter(const GameSpec& spec, const GameOptions& opts) : spec_(spec) {
    check_budget(spec.n, opts.max_states);
    memo_.assign(pow3(spec.n), kUnknown);
    pow3_.resize(static_cast<std::size_t>(spec.n) + 1);
    for (int i = 0; i <= spec.n; ++i) pow3_[i] = pow3(i);
  }

  int against_signgiver(const SigngiverFn& sign) {
    Board b(spec_.n);
    return future_vs_signgiver(b, 0, sign);
  }

  int against_positioner(const PositionerFn& pick) {
    Board b(spec_.n);
    return future_vs_positioner(b, 0, pick);
  }

 private:
  int future_vs_signgiver(Board& b, std::uint64_t idx, const SigngiverFn& sign) {
    int best = INT_MIN;
    for (int i = 1; i <= spec_.n; ++i) {
      if (b.at(i) != 0) continue;
      int s = sign(b, i);
      if (s != 1 && s != -1) throw InternalError("signgiver strategy returned an illegal sign");
      b.set(i, s);
      const std::uint64_t child = idx + pow3_[i - 1] * digit_of(s);
      int v = memo_[child];
      if (v == kUnknown) {
        v = peak_doubled(b, spec_.scoring);
        if (!b.complete()) v = std::max(v, future_vs_signgiver(b, child, sign));
        memo_[child] = static_cast<std::int16_t>(v);
      }
      b.set(i, 0);
      best = std::max(best, v);
    }
    return best;
  }

  int future_vs_positioner(Board& b, std::uint64_t idx, const PositionerFn& pick) {
    int i = pick(b);
    if (i < 1 || i > spec_.n || b.at(i) != 0) throw InternalError("positioner strategy returned an illegal move");
    int worst = INT_MAX;
    for (int s : {-1, 1}) {
      b.set(i, s);
      const std::uint64_t child = idx + pow3_[i - 1] * digit_of(s);
      int v = memo_[child];
      if (v == kUnknown) {
        v = peak_doubled(b, spec_.scoring);
        if (!b.complete()) v = std::max(v, future_vs_positioner(b, child, pick));
        memo_[child] = static_cast<std::int16_t>(v);
      }
      b.set(i, 0);
      worst = std::min(worst, v);
    }
    return worst;
  }

  GameSpec spec_;
  std::vector<std::int16_t> memo_;
  std::vector<std::uint64_t> pow3_;
};

}  // namespace

int exploit_doubled(StrategyId id, Role role, const GameSpec& spec, const GameOptions& opts) {
  if (id == StrategyId::random) throw DomainError("random strategies have no deterministic exploitation value");
  if (id == StrategyId::optimal) return game_value(spec, opts).value_doubled;
  Exploiter ex(spec, opts);
  if (role == Role::signgiver) return ex.against_signgiver(make_signgiver(id, spec, 0, opts));
  return ex.against_positioner(make_positioner(id, spec, 0, opts));
}

// ---------------------------------------------------------------------------
// matches

Match::Match(GameSpec spec) : spec_(spec), board_(spec.n) {
  if (spec.n < 1) throw DomainError("game needs n >= 1");
}

std::optional<std::string> Match::check(int position, int sign) const {
  if (position < 1 || position > spec_.n) {
    return "position " + std::to_string(position) + " outside [1," + std::to_string(spec_.n) + "]";
  }
  if (board_.at(position) != 0) return "position " + std::to_string(position) + " was already queried";
  if (sign != 1 && sign != -1) return "sign must be +1 or -1";
  return std::nullopt;
}

void Match::apply(int position, int sign) {
  if (auto why = check(position, sign)) throw DomainError(*why);
  board_.set(position, sign);
  const int peak = std::max(trace_.peak_doubled(), peak_doubled(board_, spec_.scoring));
  trace_.moves.push_back({position, sign, trace_.moves.empty() ? peak_doubled(board_, spec_.scoring) : peak});
}

MatchResult play_match(const PositionerFn& positioner, const SigngiverFn& signgiver, const GameSpec& spec) {
  Match m(spec);
  MatchResult out;
  while (!m.finished()) {
    const int pos = positioner(m.board());
    if (auto why = m.check(pos, 1)) {
      out.aborted = true;
      out.abort_reason = "positioner: " + *why;
      out.offending = Move{pos, 0, m.trace().peak_doubled()};
      break;
    }
    const int sign = signgiver(m.board(), pos);
    if (auto why = m.check(pos, sign)) {
      out.aborted = true;
      out.abort_reason = "signgiver: " + *why;
      out.offending = Move{pos, sign, m.trace().peak_doubled()};
      break;
    }
    m.apply(pos, sign);
  }
  out.trace = m.trace();
  out.final_board = m.board();
  return out;
}

CorollaryReport corollary_pipeline(int n, const GameOptions& game_opts, const SolveOptions& solve_opts) {
  if (n < 2 || n % 2 != 0) throw DomainError("corollary pipeline needs even n >= 2");
  CorollaryReport r;
  r.n = n;
  r.d_n = game_value({n, Scoring::prefix_max}, game_opts).value_doubled / 2;
  r.d_prime_doubled = game_value({n, Scoring::interval_minus_half_unq}, game_opts).value_doubled;

  r.prefix_d = 2 * r.d_n;
  r.prefix_E = e_discmax(n, r.prefix_d, solve_opts).co_depth;
  r.prefix_holds = r.prefix_E <= 3 * r.prefix_d;

  r.interval_d_doubled = r.d_prime_doubled + 6;
  r.interval_d_floor = r.interval_d_doubled / 2;
  r.interval_E = e_discmax(n, r.interval_d_floor, solve_opts).co_depth;
  r.interval_holds = r.interval_E <= 3 * r.interval_d_doubled;
  return r;
}

}  // namespace slicelab
