#pragma once

// Certified evaluation of the decision-tree counting bound g(n,k,t), the
// central-binomial ratio f(n,t), and the finite-parameter log-binomial
// inequality behind E_{alpha n}(n) <= C. Everything that involves a
// logarithm is carried as an interval with outward (directed) rounding.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "slicelab/bigfloat.hpp"
#include "slicelab/slice_core.hpp"

namespace slicelab {

// Exactly 2^pow2 * prod base^exponent. Bases are >= 3; powers of two with
// base 2 are folded into pow2 and base 1 is dropped.
struct LogMass {
  BigInt pow2 = 0;
  std::map<long, BigInt> factors;

  // Plain integer value; only sensible for tiny parameters.
  BigInt expand() const;
  friend bool operator==(const LogMass&, const LogMass&) = default;
};

// Enclosure lo <= value <= hi.
struct RatioInterval {
  BigFloat lo;
  BigFloat hi;
  int precision_bits = 0;

  RatioInterval() = default;
  explicit RatioInterval(int bits) : lo(bits), hi(bits), precision_bits(bits) {}

  bool certainly_below(double x) const { return hi.compare(x) < 0; }
  bool certainly_at_least(double x) const { return lo.compare(x) >= 0; }
};

// Central binomial coefficient binom(m, floor(m/2)); zero for m < 0.
BigInt central_binom(long m);

// The counting bound as an exact product. Throws InternalError if any
// level exponent comes out negative.
LogMass g_logmass(int n, int k, int t);

// Enclosure of log2 of the represented integer.
RatioInterval log2_interval(const LogMass& m, int precision_bits);

// f(n,t) = ((t+1)C(n-t) + sum_{l=t+1}^{n} (l log2 l + 2) C(n-l)) / C(n).
// Requires 0 <= t <= n and precision_bits >= 64.
RatioInterval kozep_ratio(int n, int t, int precision_bits);

enum class Verdict { certified, not_certified, indeterminate };
const char* to_string(Verdict v);

struct PrecisionPolicy {
  int start_bits = 128;
  int max_bits = 4096;
};

struct KozepRow {
  int n = 0;
  Verdict verdict = Verdict::indeterminate;
  RatioInterval ratio;
};

struct KozepReport {
  int t = 0;
  std::vector<KozepRow> rows;
  BigFloat max_hi;
  int certified = 0;
  int not_certified = 0;
  int indeterminate = 0;

  bool all_certified() const { return certified == static_cast<int>(rows.size()); }
};

// Certifies f(n,t) < 1 for n in [n_lo, n_hi], doubling precision while the
// interval straddles 1. Rows whose upper end stays >= 1 with a lower end
// >= 1 are not_certified; rows still straddling at max_bits are
// indeterminate.
KozepReport verify_kozep_range(int t, int n_lo, int n_hi, const PrecisionPolicy& policy = {}, int threads = 1);

// The three-stage bound on f(n,5) for n >= 100, evaluated at n' = 99.
struct KozepChain {
  RatioInterval first;   // 6 C(94)/C(99), claimed < 0.2
  RatioInterval middle;  // sum_{l=6}^{15} (l log2 l + 2) C(99-l)/C(99), claimed < 0.71
  RatioInterval tail;    // 66 * 3 * C(83)/C(99)
  RatioInterval stated_total;  // 0.2 + 0.71 + tail, claimed < 0.92
  RatioInterval actual_total;  // first + middle + tail
};
KozepChain kozep_chain(int precision_bits);

enum class AlfaVerdict { holds, fails, indeterminate };
const char* to_string(AlfaVerdict v);

struct AlfaResult {
  AlfaVerdict verdict = AlfaVerdict::indeterminate;
  int k = 0;
  RatioInterval lhs;
  BigInt rhs;
};

// sum_{l=C}^{n} log2(l) sum_{i=max(0,k-l)}^{k} binom(n-l, i) < binom(n,k)
// with k = floor(alpha n), alpha = alpha_num / alpha_den in (0, 1/2).
AlfaResult alfa_inequality(long alpha_num, long alpha_den, int C, int n, int precision_bits = 256);

struct BoundCertificate {
  int n = 0;
  int k = 0;
  int t = -1;  // minimal certified t, -1 when none
  Verdict verdict = Verdict::not_certified;
  RatioInterval margin;  // log2 g(n,k,t) - binom(n,k) at the reported t
  BigInt binom;
  std::vector<int> certified_ts;
  // Every scanned t above a certified t is also certified.
  bool upward_closed = true;
};

// Scans t = 0..n; a certified t proves E_k(n) <= t.
BoundCertificate certify_E_upper(int n, int k, const PrecisionPolicy& policy = {});

// Per-level majorization used to reduce g to f(n,t):
//   (S_l - L_l) log2 l + L_l <= (l log2 l + 2) C(n-l)
// Returns the levels l for which the inequality could not be certified.
std::vector<int> level_majorization_failures(int n, int k, int precision_bits = 256);

// First-term majorization: sum_{i=max(0,k-t)}^{k} binom(n-t,i) <= (t+1) C(n-t).
bool first_term_majorized(int n, int k, int t);

}  // namespace slicelab
