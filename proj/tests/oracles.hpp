#pragma once

// Brute-force reference implementations. They share no code with the
// library beyond the plain data types and are only usable at tiny sizes.

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

namespace oracle {

inline mpz_class binom(long a, long b) {
  if (a < 0 || b < 0 || b > a) return 0;
  mpz_class r = 1;
  for (long i = 1; i <= b; ++i) {
    r *= a - b + i;
    r /= i;
  }
  return r;
}

inline mpz_class central(long m) { return m < 0 ? mpz_class(0) : binom(m, m / 2); }

inline mpz_class ipow(long base, const mpz_class& e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), mpz_class(base).get_mpz_t(), e.get_ui());
  return r;
}

// The counting bound read straight off its product form.
inline mpz_class g_value(int n, int k, int t) {
  auto S = [&](int l) {
    mpz_class s = 0;
    for (int i = std::max(0, k - l); i <= k; ++i) s += binom(n - l, i);
    return s;
  };
  mpz_class g = ipow(2, S(t));
  for (int l = t + 1; l <= n; ++l) {
    mpz_class leaves = binom(n - l - 1, k - 1) + binom(n - l - 1, n - k + 1);
    g *= ipow(l, S(l) - leaves) * ipow(2, leaves);
  }
  return g;
}

// Trees where every undetermined node above the height cap is a query; m free
// positions, r of them still ones.
inline mpz_class padded_trees(int m, int r, int h) {
  if (r == 0 || r == m || h == 0) return 2;
  return m * padded_trees(m - 1, r - 1, h - 1) * padded_trees(m - 1, r, h - 1);
}

// Same, but any node may stop with a leaf.
inline mpz_class early_trees(int m, int r, int h) {
  if (r == 0 || r == m || h == 0) return 2;
  return 2 + m * early_trees(m - 1, r - 1, h - 1) * early_trees(m - 1, r, h - 1);
}

// Slice elements as plain index vectors.
inline std::vector<std::uint64_t> slice(int n, int k) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    if (__builtin_popcountll(s) == k) out.push_back(s);
  }
  return out;
}

// Query complexity by unmemoized minimax over the consistent set itself.
inline int depth(int n, const std::vector<std::uint64_t>& elems, const std::function<bool(std::uint64_t)>& f,
                 std::uint64_t queried = 0) {
  bool seen[2] = {false, false};
  for (auto e : elems) seen[f(e)] = true;
  if (!(seen[0] && seen[1])) return 0;
  int best = INT_MAX;
  for (int i = 0; i < n; ++i) {
    if (queried >> i & 1) continue;
    std::vector<std::uint64_t> part[2];
    for (auto e : elems) part[e >> i & 1].push_back(e);
    int worst = 0;
    for (auto& p : part) {
      if (!p.empty()) worst = std::max(worst, depth(n, p, f, queried | std::uint64_t{1} << i));
    }
    best = std::min(best, 1 + worst);
  }
  return best;
}

// Prefix/interval scores of a partial board, doubled.
inline int prefix_peak2(const std::vector<int>& b) {
  int s = 0, m = 0;
  for (int x : b) {
    s += x;
    m = std::max(m, std::abs(s));
  }
  return 2 * m;
}

inline int interval_peak2(const std::vector<int>& b) {
  int best = INT_MIN;
  for (std::size_t i = 0; i < b.size(); ++i) {
    int d = 0, u = 0;
    for (std::size_t j = i; j < b.size(); ++j) {
      d += b[j];
      u += b[j] == 0;
      best = std::max(best, 2 * std::abs(d) - u);
    }
  }
  return best;
}

// Game value carrying the running maximum explicitly, no memo.
inline int game2(std::vector<int>& b, bool interval, int running) {
  bool any = false;
  int best = INT_MIN;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] != 0) continue;
    any = true;
    int worst = INT_MAX;
    for (int s : {-1, 1}) {
      b[i] = s;
      int p = interval ? interval_peak2(b) : prefix_peak2(b);
      worst = std::min(worst, game2(b, interval, std::max(running, p)));
      b[i] = 0;
    }
    best = std::max(best, worst);
  }
  return any ? best : running;
}

inline int game_value2(int n, bool interval) {
  std::vector<int> b(static_cast<std::size_t>(n), 0);
  return game2(b, interval, INT_MIN);
}

// Every balanced completion of a partial board.
inline void completions(std::vector<int> b, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<std::size_t> free;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i] == 0) free.push_back(i);
  }
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << free.size()); ++m) {
    for (std::size_t j = 0; j < free.size(); ++j) b[free[j]] = (m >> j & 1) ? 1 : -1;
    int sum = 0;
    for (int x : b) sum += x;
    if (sum == 0) visit(b);
  }
}

inline bool prefix_ok(const std::vector<int>& b, int d) {
  int s = 0;
  for (int x : b) {
    s += x;
    if (std::abs(s) > d) return false;
  }
  return true;
}

inline bool feasible(const std::vector<int>& b, int d, bool want_true) {
  bool found = false;
  completions(b, [&](const std::vector<int>& c) { found = found || prefix_ok(c, d) == want_true; });
  return found;
}

// Claim hypotheses evaluated with plain double arithmetic.
inline bool hyp_i(const std::vector<int>& b, int d) {
  if (d <= 0) return false;
  int s = 0;
  for (int x : b) {
    s += x;
    if (std::abs(s) > d / 2.0) return false;
  }
  return true;
}

inline int zeros(const std::vector<int>& b) { return static_cast<int>(std::count(b.begin(), b.end(), 0)); }

inline bool hyp_ii(const std::vector<int>& b, int d) {
  if (zeros(b) < 3 * d + 1) return false;
  int s = 0;
  for (int x : b) {
    s += x;
    if (std::abs(s) > d) return false;
  }
  return true;
}

inline bool hyp_i_prime(const std::vector<int>& b, int d) {
  if (d <= 0) return false;
  for (std::size_t i = 0; i < b.size(); ++i) {
    int s = 0, u = 0;
    for (std::size_t j = i; j < b.size(); ++j) {
      s += b[j];
      u += b[j] == 0;
      if (std::abs(s) > d + u - 3) return false;
    }
  }
  return true;
}

inline bool hyp_ii_prime(const std::vector<int>& b, int d) {
  if (zeros(b) < 6 * d + 1) return false;
  int s = 0, u = 0;
  for (int x : b) {
    s += x;
    u += x == 0;
    if (std::abs(s) > d + u / 2.0) return false;
  }
  return true;
}

// f(n,t) in long double.
inline long double kozep(int n, int t) {
  auto C = [](int m) { return m < 0 ? 0.0L : std::exp(std::lgamma((long double)m + 1) - std::lgamma((long double)(m / 2) + 1) - std::lgamma((long double)(m - m / 2) + 1)); };
  long double num = (t + 1) * C(n - t);
  for (int l = t + 1; l <= n; ++l) num += (l * std::log2((long double)l) + 2) * C(n - l);
  return num / C(n);
}

}  // namespace oracle
