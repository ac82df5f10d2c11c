#include "slicelab/discmax.hpp"

#include <algorithm>
#include <cstdlib>

#include "json.hpp"

namespace slicelab {

// ---------------------------------------------------------------------------
// Board

Board::Board(int n) {
  if (n < 0 || n > 63) throw DomainError("board length must lie in [0,63]");
  cells_.assign(static_cast<std::size_t>(n), 0);
}

Board::Board(std::vector<std::int8_t> cells) : cells_(std::move(cells)) {
  if (cells_.size() > 63) throw DomainError("board length must lie in [0,63]");
  for (auto c : cells_) {
    if (c < -1 || c > 1) throw DomainError("board cells must be -1, 0 or +1");
  }
}

Board Board::parse(std::string_view text) {
  std::vector<std::int8_t> cells;
  for (char c : text) {
    switch (c) {
      case '+': cells.push_back(1); break;
      case '-': cells.push_back(-1); break;
      case '.': cells.push_back(0); break;
      default: throw ParseError(std::string("board strings use '+', '-', '.'; got '") + c + "'");
    }
  }
  return Board(std::move(cells));
}

Board Board::from_json(std::string_view text) {
  try {
    auto j = nlohmann::json::parse(text);
    if (j.is_string()) return parse(j.get<std::string>());
    if (!j.is_array()) throw ParseError("board JSON must be an array or a string");
    std::vector<std::int8_t> cells;
    for (const auto& v : j) {
      int c = v.get<int>();
      if (c < -1 || c > 1) throw ParseError("board JSON entries must be -1, 0 or 1");
      cells.push_back(static_cast<std::int8_t>(c));
    }
    return Board(std::move(cells));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("board JSON: ") + e.what());
  }
}

Board Board::from_state(int n, const QueryState& st) {
  Board b(n);
  for (int i = 1; i <= n; ++i) {
    if (st.is_queried(i)) b.cells_[i - 1] = (st.ones & position_bit(i)) ? 1 : -1;
  }
  return b;
}

void Board::set(int i, int v) {
  if (i < 1 || i > n()) throw DomainError("position " + std::to_string(i) + " outside the board");
  if (v < -1 || v > 1) throw DomainError("board cells must be -1, 0 or +1");
  cells_[static_cast<std::size_t>(i - 1)] = static_cast<std::int8_t>(v);
}

int Board::count(int v) const { return static_cast<int>(std::count(cells_.begin(), cells_.end(), v)); }

bool Board::slice_consistent() const { return 2 * count(1) <= n() && 2 * count(-1) <= n(); }

std::string Board::to_string() const {
  std::string out;
  out.reserve(cells_.size());
  for (auto c : cells_) out += c > 0 ? '+' : (c < 0 ? '-' : '.');
  return out;
}

std::string Board::to_json() const {
  nlohmann::json j = nlohmann::json::array();
  for (auto c : cells_) j.push_back(static_cast<int>(c));
  return j.dump();
}

// ---------------------------------------------------------------------------
// statistics

IntervalStats interval_stats(const Board& b, int i, int j) {
  if (i < 1 || j > b.n() || i > j) {
    throw DomainError("interval [" + std::to_string(i) + "," + std::to_string(j) + "] invalid for n=" +
                      std::to_string(b.n()));
  }
  IntervalStats s;
  for (int h = i; h <= j; ++h) {
    s.disc += b.at(h);
    s.unq += b.at(h) == 0;
  }
  return s;
}

int max_prefix_disc(const Board& b) {
  int disc = 0, peak = 0;
  for (int i = 1; i <= b.n(); ++i) {
    disc += b.at(i);
    peak = std::max(peak, std::abs(disc));
  }
  return peak;
}

int max_interval_disc(const Board& b) {
  // max |disc(i,j)| = max prefix sum - min prefix sum over prefixes 0..n.
  int disc = 0, lo = 0, hi = 0;
  for (int i = 1; i <= b.n(); ++i) {
    disc += b.at(i);
    lo = std::min(lo, disc);
    hi = std::max(hi, disc);
  }
  return hi - lo;
}

bool eval_discmax(const Board& b, int d) {
  if (!b.complete()) throw DomainError("eval_discmax needs a complete board, got " + b.to_string());
  return max_prefix_disc(b) <= d;
}

// ---------------------------------------------------------------------------
// exact oracle

namespace {

// Reachable running discs are bitsets over disc + kOffset.
using DiscSet = unsigned __int128;
constexpr int kOffset = 63;

constexpr DiscSet bit(int disc) { return DiscSet{1} << (disc + kOffset); }

DiscSet violation_mask(int d) {
  DiscSet m = 0;
  for (int disc = -63; disc <= 63; ++disc) {
    if (std::abs(disc) > d) m |= bit(disc);
  }
  return m;
}

DiscSet step(DiscSet s, int cell) {
  if (cell > 0) return s << 1;
  if (cell < 0) return s >> 1;
  return (s << 1) | (s >> 1);
}

// clean[j] / dirty[j]: discs reachable after j cells with all prefixes so
// far within d / with some prefix already above d.
struct Reach {
  std::vector<DiscSet> clean;
  std::vector<DiscSet> dirty;
};

void require_slice_board(const Board& b) {
  if (b.n() % 2 != 0) throw DomainError("slice boards need even n, got " + std::to_string(b.n()));
  if (!b.slice_consistent()) throw DomainError("board " + b.to_string() + " is not slice-consistent");
}

Reach forward(const Board& b, int d) {
  const DiscSet viol = violation_mask(d);
  Reach r;
  r.clean.assign(static_cast<std::size_t>(b.n()) + 1, 0);
  r.dirty.assign(static_cast<std::size_t>(b.n()) + 1, 0);
  r.clean[0] = bit(0);
  for (int j = 1; j <= b.n(); ++j) {
    DiscSet c = step(r.clean[j - 1], b.at(j));
    r.clean[j] = c & ~viol;
    r.dirty[j] = (c & viol) | step(r.dirty[j - 1], b.at(j));
  }
  return r;
}

Board backtrack(const Board& b, const Reach& r, int d, bool dirty_end) {
  Board w = b;
  int disc = 0;
  bool dirty = dirty_end;
  for (int j = b.n(); j >= 1; --j) {
    const int candidates[2] = {1, -1};
    bool moved = false;
    for (int v : candidates) {
      if (b.at(j) != 0 && b.at(j) != v) continue;
      const int prev = disc - v;
      if (prev < -63 || prev > 63) continue;
      // A dirty state at j came from a dirty predecessor, or from a clean one
      // if this step itself broke the bound.
      bool ok = false;
      bool prev_dirty = false;
      if (!dirty) {
        ok = (r.clean[j - 1] & bit(prev)) != 0;
      } else if ((r.dirty[j - 1] & bit(prev)) != 0) {
        ok = true;
        prev_dirty = true;
      } else if (std::abs(disc) > d && (r.clean[j - 1] & bit(prev)) != 0) {
        ok = true;
      }
      if (!ok) continue;
      w.set(j, v);
      disc = prev;
      dirty = prev_dirty;
      moved = true;
      break;
    }
    if (!moved) throw InternalError("feasibility backtrack lost its path at position " + std::to_string(j));
  }
  return w;
}

}  // namespace

FeasibilityVerdict feasible_exact(const Board& b, int d, Target target) {
  require_slice_board(b);
  const Reach r = forward(b, d);
  const bool dirty_end = target == Target::false_value;
  const DiscSet end = dirty_end ? r.dirty.back() : r.clean.back();
  FeasibilityVerdict v;
  v.feasible = (end & bit(0)) != 0;
  if (v.feasible) v.witness = backtrack(b, r, d, dirty_end);
  return v;
}

ValueSet feasible_values(const Board& b, int d) {
  require_slice_board(b);
  const DiscSet viol = violation_mask(d);
  DiscSet clean = bit(0), dirty = 0;
  for (int j = 1; j <= b.n(); ++j) {
    DiscSet c = step(clean, b.at(j));
    dirty = (c & viol) | step(dirty, b.at(j));
    clean = c & ~viol;
  }
  ValueSet out = ValueSet::none();
  if (clean & bit(0)) out = out | ValueSet::only(true);
  if (dirty & bit(0)) out = out | ValueSet::only(false);
  return out;
}

// ---------------------------------------------------------------------------
// claims

const char* to_string(ClaimVariant v) {
  switch (v) {
    case ClaimVariant::i: return "i";
    case ClaimVariant::ii: return "ii";
    case ClaimVariant::i_prime: return "i_prime";
    case ClaimVariant::ii_prime: return "ii_prime";
  }
  return "?";
}

ClaimVariant parse_claim_variant(std::string_view s) {
  if (s == "i") return ClaimVariant::i;
  if (s == "ii") return ClaimVariant::ii;
  if (s == "i_prime" || s == "i'") return ClaimVariant::i_prime;
  if (s == "ii_prime" || s == "ii'") return ClaimVariant::ii_prime;
  throw ParseError("unknown claim variant '" + std::string(s) + "'");
}

Target claim_target(ClaimVariant v) {
  return (v == ClaimVariant::i || v == ClaimVariant::i_prime) ? Target::true_value : Target::false_value;
}

bool claim_condition(const Board& b, int d, ClaimVariant variant) {
  if (!b.slice_consistent()) throw DomainError("board " + b.to_string() + " is not slice-consistent");
  const int n = b.n();
  switch (variant) {
    case ClaimVariant::i: {
      if (d <= 0) return false;
      int disc = 0;
      for (int j = 1; j <= n; ++j) {
        disc += b.at(j);
        if (2 * std::abs(disc) > d) return false;
      }
      return true;
    }
    case ClaimVariant::ii: {
      if (b.unqueried() < 3 * d + 1) return false;
      int disc = 0;
      for (int j = 1; j <= n; ++j) {
        disc += b.at(j);
        if (std::abs(disc) > d) return false;
      }
      return true;
    }
    case ClaimVariant::i_prime: {
      if (d <= 0) return false;
      for (int i = 1; i <= n; ++i) {
        int disc = 0, unq = 0;
        for (int j = i; j <= n; ++j) {
          disc += b.at(j);
          unq += b.at(j) == 0;
          if (std::abs(disc) > d + unq - 3) return false;
        }
      }
      return true;
    }
    case ClaimVariant::ii_prime: {
      if (b.unqueried() < 6 * d + 1) return false;
      int disc = 0, unq = 0;
      for (int j = 1; j <= n; ++j) {
        disc += b.at(j);
        unq += b.at(j) == 0;
        if (2 * std::abs(disc) > 2 * d + unq) return false;
      }
      return true;
    }
  }
  return false;
}

// ---------------------------------------------------------------------------
// constructive completions

namespace {

Completion finish(Board board) {
  Completion c;
  c.balanced = board.balanced();
  c.max_prefix_disc = max_prefix_disc(board);
  c.max_interval_disc = max_interval_disc(board);
  c.board = std::move(board);
  return c;
}

Completion complete_alternating(const Board& b, int d) {
  if (!claim_condition(b, d, ClaimVariant::i)) {
    throw PreconditionError("alternating completion needs |disc(j)| <= d/2 for all j; board " + b.to_string());
  }
  // Normalize so the queried part has at least as many -1 as +1.
  const int flip = b.count(1) > b.count(-1) ? -1 : 1;
  const int half = b.n() / 2;
  int plus_left = half - (flip > 0 ? b.count(1) : b.count(-1));
  int minus_left = half - (flip > 0 ? b.count(-1) : b.count(1));
  Board out = b;
  // Alternate +1,-1 while both are available, then the surplus +1 values.
  int next = 1;
  for (int i = 1; i <= b.n(); ++i) {
    if (b.at(i) != 0) continue;
    int v;
    if (minus_left == 0) {
      v = 1;
    } else if (plus_left == 0) {
      v = -1;
    } else {
      v = next;
      next = -next;
    }
    (v > 0 ? plus_left : minus_left)--;
    out.set(i, v * flip);
  }
  Completion c = finish(std::move(out));
  const int h = d / 2;
  if (c.max_prefix_disc > std::max(h + 1, 2 * h) || !c.balanced) {
    throw InternalError("alternating completion broke its guarantee: " + c.board.to_string());
  }
  return c;
}

std::vector<int> resolve_order(const Board& b, const std::vector<int>& order) {
  std::vector<int> out;
  if (order.empty()) {
    for (int i = 1; i <= b.n(); ++i) {
      if (b.at(i) == 0) out.push_back(i);
    }
    return out;
  }
  std::vector<char> seen(static_cast<std::size_t>(b.n()) + 1, 0);
  for (int p : order) {
    if (p < 1 || p > b.n() || b.at(p) != 0 || seen[p]) {
      throw DomainError("completion order must list each unqueried position exactly once");
    }
    seen[p] = 1;
  }
  if (static_cast<int>(order.size()) != b.unqueried()) {
    throw DomainError("completion order must list each unqueried position exactly once");
  }
  return order;
}

Completion complete_even_interval(const Board& b, int d, const std::vector<int>& order) {
  if (!claim_condition(b, d, ClaimVariant::i_prime)) {
    throw PreconditionError("even-interval completion needs |disc(i,j)| <= d + unq(i,j) - 3; board " + b.to_string());
  }
  // Maintained bound on even intervals (i odd, j even): |disc| <= slack + unq.
  const int slack = d % 2 == 0 ? d - 2 : d - 3;
  const int n = b.n();
  Board out = b;
  for (int p : resolve_order(b, order)) {
    bool strict_positive = false;
    bool strict_negative = false;
    for (int i = 1; i <= p; i += 2) {
      int disc = 0, unq = 0;
      for (int h = i; h < p; ++h) {
        disc += out.at(h);
        unq += out.at(h) == 0;
      }
      for (int j = p; j <= n; ++j) {
        disc += out.at(j);
        unq += out.at(j) == 0;
        if (j % 2 != 0) continue;
        if (std::abs(disc) > slack + unq) {
          throw InternalError("even interval [" + std::to_string(i) + "," + std::to_string(j) +
                              "] no longer good on " + out.to_string());
        }
        if (std::abs(disc) == slack + unq) {
          (disc > 0 ? strict_positive : strict_negative) = true;
        }
      }
    }
    if (strict_positive && strict_negative) {
      throw InternalError("position " + std::to_string(p) + " lies in strict intervals of both signs on " +
                          out.to_string());
    }
    int v;
    if (strict_positive) {
      v = -1;
    } else if (strict_negative) {
      v = 1;
    } else {
      v = 2 * out.count(1) < n ? 1 : -1;
    }
    out.set(p, v);
  }
  Completion c = finish(std::move(out));
  if (c.max_interval_disc > d) {
    throw InternalError("even-interval completion exceeded d on " + c.board.to_string());
  }
  return c;
}

}  // namespace

Completion complete_constructive(const Board& b, int d, CompletionMethod method, const std::vector<int>& order) {
  if (!b.slice_consistent()) throw DomainError("board " + b.to_string() + " is not slice-consistent");
  return method == CompletionMethod::alternating ? complete_alternating(b, d) : complete_even_interval(b, d, order);
}

Board remark_board(int d, int n) {
  if (d < 1) throw DomainError("remark board needs d >= 1");
  if (n % 2 != 0 || n < 2 * d + 2) throw DomainError("remark board needs even n >= 2d+2");
  Board b(n);
  for (int i = 1; i <= n; ++i) {
    if (i <= d / 2 + 1) {
      b.set(i, -1);
    } else if (i <= d + 1) {
      b.set(i, 0);
    } else if (i <= 2 * d + 2) {
      b.set(i, 1);
    } else {
      b.set(i, i % 2 == 0 ? 1 : -1);
    }
  }
  return b;
}

// ---------------------------------------------------------------------------
// query complexity

SliceFunction discmax_function(int n, int d) {
  if (n % 2 != 0 || n < 0) throw DomainError("Disc-max-d lives on binom([n], n/2) with even n");
  SliceDomain dom{n, n / 2};
  auto eval = [n, d](SubsetMask a) {
    int disc = 0;
    for (int i = 1; i <= n; ++i) {
      disc += (a & position_bit(i)) ? 1 : -1;
      if (std::abs(disc) > d) return false;
    }
    return true;
  };
  auto hook = [n, d](const QueryState& st) { return feasible_values(Board::from_state(n, st), d); };
  return SliceFunction::from_oracle(dom, eval, hook);
}

DepthResult e_discmax(int n, int d, const SolveOptions& opts) {
  return solve_depth(discmax_function(n, d), opts);
}

void for_each_board(int n, const std::function<void(const Board&)>& visit) {
  if (n % 2 != 0 || n < 0 || n > 20) throw DomainError("board enumeration needs even n <= 20");
  std::vector<std::int8_t> cells(static_cast<std::size_t>(n), -1);
  // Odometer over {-1,0,+1}^n.
  while (true) {
    Board b(cells);
    if (b.slice_consistent()) visit(b);
    int i = 0;
    while (i < n && cells[i] == 1) cells[i++] = -1;
    if (i == n) return;
    ++cells[i];
  }
}

ClaimSweep claims_sweep(int n, int d) {
  ClaimSweep s;
  s.n = n;
  s.d = d;
  const ClaimVariant variants[4] = {ClaimVariant::i, ClaimVariant::ii, ClaimVariant::i_prime, ClaimVariant::ii_prime};
  for_each_board(n, [&](const Board& b) {
    ++s.boards;
    ValueSet possible = ValueSet::none();
    bool have_values = false;
    for (ClaimVariant v : variants) {
      if (!claim_condition(b, d, v)) continue;
      const auto idx = static_cast<std::size_t>(v);
      ++s.hypothesis_true[idx];
      if (!have_values) {
        possible = feasible_values(b, d);
        have_values = true;
      }
      if (possible.contains(claim_target(v) == Target::true_value)) {
        ++s.sound[idx];
      } else {
        s.findings.push_back({v, d, b.to_string()});
      }
      if (v == ClaimVariant::i_prime) {
        Completion c = complete_constructive(b, d, CompletionMethod::even_interval);
        ++s.completions;
        if (c.balanced) {
          ++s.completions_balanced;
        } else if (possible.contains(true)) {
          ++s.completions_unbalanced_but_feasible;
        }
        if (c.max_interval_disc > d) ++s.completion_interval_violations;
      }
    }
  });
  return s;
}

}  // namespace slicelab
