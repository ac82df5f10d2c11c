#include "slicelab/counting_bounds.hpp"

#include <algorithm>
#include <atomic>
#include <future>

namespace slicelab {

namespace {

// Exponent data of the counting bound for one (n, k):
//   S[l] = sum_{i=max(0,k-l)}^{k} binom(n-l, i)     nodes on level n-l
//   L[l] = binom(n-l-1, k-1) + binom(n-l-1, n-k+1)  leaves on level n-l
struct Levels {
  int n;
  int k;
  std::vector<BigInt> S;
  std::vector<BigInt> L;

  Levels(int n_, int k_) : n(n_), k(k_), S(n_ + 1), L(n_ + 1) {
    for (int l = 0; l <= n; ++l) {
      S[l] = level_sum(l);
      L[l] = binom_ext(n - l - 1, k - 1) + binom_ext(n - l - 1, n - k + 1);
    }
  }

  BigInt level_sum(int l) const {
    BigInt s = 0;
    for (int i = std::max(0, k - l); i <= k; ++i) s += binom_ext(n - l, i);
    return s;
  }

  BigInt internal_exponent(int l) const {
    BigInt e = S[l] - L[l];
    if (sgn(e) < 0) {
      throw InternalError("negative exponent at level l=" + std::to_string(l) + " for n=" + std::to_string(n) +
                          ", k=" + std::to_string(k));
    }
    return e;
  }

  LogMass mass(int t) const {
    LogMass m;
    m.pow2 = level_sum(t);
    for (int l = t + 1; l <= n; ++l) {
      BigInt e = internal_exponent(l);
      m.pow2 += L[l];
      if (sgn(e) == 0 || l == 1) continue;
      if (l == 2) {
        m.pow2 += e;
      } else {
        m.factors[l] += e;
      }
    }
    return m;
  }
};

void validate_params(int n, int k, int t) {
  if (n < 0 || k < 0 || k > n) {
    throw DomainError("need 0 <= k <= n (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  }
  if (t < 0 || t > n) throw DomainError("need 0 <= t <= n (got t=" + std::to_string(t) + ")");
}

// [lo, hi] enclosing log2(x) for a positive integer x.
void log2_bounds(unsigned long x, BigFloat& lo, BigFloat& hi) {
  mpfr_set_ui(lo.get(), x, MPFR_RNDD);
  mpfr_log2(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_ui(hi.get(), x, MPFR_RNDU);
  mpfr_log2(hi.get(), hi.get(), MPFR_RNDU);
}

// Exact rational num/den as an enclosure.
RatioInterval rational(const BigInt& num, const BigInt& den, int bits) {
  RatioInterval r(bits);
  mpfr_set_z(r.lo.get(), num.get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(r.lo.get(), r.lo.get(), den.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi.get(), num.get_mpz_t(), MPFR_RNDU);
  mpfr_div_z(r.hi.get(), r.hi.get(), den.get_mpz_t(), MPFR_RNDU);
  return r;
}

// acc += (l log2 l + 2) * weight, outward rounded; all terms nonnegative.
void add_level_term(RatioInterval& acc, long l, const BigInt& weight) {
  const int bits = acc.precision_bits;
  BigFloat lo(bits), hi(bits);
  log2_bounds(static_cast<unsigned long>(l), lo, hi);
  mpfr_mul_ui(lo.get(), lo.get(), static_cast<unsigned long>(l), MPFR_RNDD);
  mpfr_mul_ui(hi.get(), hi.get(), static_cast<unsigned long>(l), MPFR_RNDU);
  mpfr_add_ui(lo.get(), lo.get(), 2, MPFR_RNDD);
  mpfr_add_ui(hi.get(), hi.get(), 2, MPFR_RNDU);
  mpfr_mul_z(lo.get(), lo.get(), weight.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_z(hi.get(), hi.get(), weight.get_mpz_t(), MPFR_RNDU);
  mpfr_add(acc.lo.get(), acc.lo.get(), lo.get(), MPFR_RNDD);
  mpfr_add(acc.hi.get(), acc.hi.get(), hi.get(), MPFR_RNDU);
}

void divide(RatioInterval& r, const BigInt& den) {
  mpfr_div_z(r.lo.get(), r.lo.get(), den.get_mpz_t(), MPFR_RNDD);
  mpfr_div_z(r.hi.get(), r.hi.get(), den.get_mpz_t(), MPFR_RNDU);
}

void add(RatioInterval& acc, const RatioInterval& x) {
  mpfr_add(acc.lo.get(), acc.lo.get(), x.lo.get(), MPFR_RNDD);
  mpfr_add(acc.hi.get(), acc.hi.get(), x.hi.get(), MPFR_RNDU);
}

void add_decimal(RatioInterval& acc, const char* literal) {
  BigFloat lo(acc.precision_bits), hi(acc.precision_bits);
  mpfr_set_str(lo.get(), literal, 10, MPFR_RNDD);
  mpfr_set_str(hi.get(), literal, 10, MPFR_RNDU);
  mpfr_add(acc.lo.get(), acc.lo.get(), lo.get(), MPFR_RNDD);
  mpfr_add(acc.hi.get(), acc.hi.get(), hi.get(), MPFR_RNDU);
}

void require_precision(int bits) {
  if (bits < 64) throw DomainError("precision_bits must be >= 64");
  if (bits > (1 << 20)) throw DomainError("precision_bits unreasonably large");
}

}  // namespace

BigInt LogMass::expand() const {
  BigInt out;
  if (!pow2.fits_ulong_p()) throw ResourceError("LogMass too large to expand", 0);
  mpz_ui_pow_ui(out.get_mpz_t(), 2, pow2.get_ui());
  for (const auto& [base, e] : factors) {
    if (!e.fits_ulong_p()) throw ResourceError("LogMass too large to expand", 0);
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), static_cast<unsigned long>(base), e.get_ui());
    out *= p;
  }
  return out;
}

BigInt central_binom(long m) { return m < 0 ? BigInt(0) : binom_ext(m, m / 2); }

LogMass g_logmass(int n, int k, int t) {
  validate_params(n, k, t);
  return Levels(n, k).mass(t);
}

RatioInterval log2_interval(const LogMass& m, int precision_bits) {
  require_precision(precision_bits);
  RatioInterval r(precision_bits);
  mpfr_set_z(r.lo.get(), m.pow2.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi.get(), m.pow2.get_mpz_t(), MPFR_RNDU);
  BigFloat lo(precision_bits), hi(precision_bits);
  for (const auto& [base, e] : m.factors) {
    log2_bounds(static_cast<unsigned long>(base), lo, hi);
    mpfr_mul_z(lo.get(), lo.get(), e.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), hi.get(), e.get_mpz_t(), MPFR_RNDU);
    mpfr_add(r.lo.get(), r.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_add(r.hi.get(), r.hi.get(), hi.get(), MPFR_RNDU);
  }
  return r;
}

RatioInterval kozep_ratio(int n, int t, int precision_bits) {
  require_precision(precision_bits);
  if (t < 0 || t > n) throw DomainError("kozep_ratio needs 0 <= t <= n");
  BigInt first = BigInt(t + 1) * central_binom(n - t);
  RatioInterval r(precision_bits);
  mpfr_set_z(r.lo.get(), first.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(r.hi.get(), first.get_mpz_t(), MPFR_RNDU);
  for (int l = t + 1; l <= n; ++l) add_level_term(r, l, central_binom(n - l));
  divide(r, central_binom(n));
  return r;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::certified: return "certified";
    case Verdict::not_certified: return "not_certified";
    case Verdict::indeterminate: return "indeterminate";
  }
  return "?";
}

namespace {

KozepRow kozep_row(int n, int t, const PrecisionPolicy& policy) {
  KozepRow row;
  row.n = n;
  for (int bits = policy.start_bits;; bits *= 2) {
    row.ratio = kozep_ratio(n, t, bits);
    if (row.ratio.certainly_below(1.0)) {
      row.verdict = Verdict::certified;
      return row;
    }
    if (row.ratio.certainly_at_least(1.0)) {
      row.verdict = Verdict::not_certified;
      return row;
    }
    if (bits * 2 > policy.max_bits) break;
  }
  row.verdict = Verdict::indeterminate;
  return row;
}

}  // namespace

KozepReport verify_kozep_range(int t, int n_lo, int n_hi, const PrecisionPolicy& policy, int threads) {
  if (t < 0) throw DomainError("t must be nonnegative");
  if (n_lo < t) throw DomainError("range must start at n >= t");
  if (n_hi < n_lo) throw DomainError("empty n range");
  require_precision(policy.start_bits);
  KozepReport report;
  report.t = t;
  const int count = n_hi - n_lo + 1;
  report.rows.resize(static_cast<std::size_t>(count));
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) report.rows[i] = kozep_row(n_lo + i, t, policy);
  } else {
    std::vector<std::future<void>> pool;
    std::atomic<int> next{0};
    for (int w = 0; w < threads; ++w) {
      pool.push_back(std::async(std::launch::async, [&] {
        for (int i = next++; i < count; i = next++) report.rows[i] = kozep_row(n_lo + i, t, policy);
      }));
    }
    for (auto& f : pool) f.get();
  }
  report.max_hi = BigFloat(policy.start_bits);
  mpfr_set_inf(report.max_hi.get(), -1);
  for (const auto& row : report.rows) {
    if (row.ratio.hi.compare(report.max_hi) > 0) {
      report.max_hi = BigFloat(row.ratio.hi.precision());
      mpfr_set(report.max_hi.get(), row.ratio.hi.get(), MPFR_RNDU);
    }
    switch (row.verdict) {
      case Verdict::certified: ++report.certified; break;
      case Verdict::not_certified: ++report.not_certified; break;
      case Verdict::indeterminate: ++report.indeterminate; break;
    }
  }
  return report;
}

KozepChain kozep_chain(int precision_bits) {
  require_precision(precision_bits);
  const BigInt c99 = central_binom(99);
  KozepChain chain;
  chain.first = rational(6 * central_binom(94), c99, precision_bits);

  chain.middle = RatioInterval(precision_bits);
  for (int l = 6; l <= 15; ++l) add_level_term(chain.middle, l, central_binom(99 - l));
  divide(chain.middle, c99);

  // (16 log2 16 + 2) = 66 exactly; the geometric series with ratio 2/3 sums to 3.
  chain.tail = rational(BigInt(66 * 3) * central_binom(83), c99, precision_bits);

  chain.stated_total = chain.tail;
  add_decimal(chain.stated_total, "0.2");
  add_decimal(chain.stated_total, "0.71");

  chain.actual_total = chain.first;
  add(chain.actual_total, chain.middle);
  add(chain.actual_total, chain.tail);
  return chain;
}

const char* to_string(AlfaVerdict v) {
  switch (v) {
    case AlfaVerdict::holds: return "holds";
    case AlfaVerdict::fails: return "fails";
    case AlfaVerdict::indeterminate: return "indeterminate";
  }
  return "?";
}

AlfaResult alfa_inequality(long alpha_num, long alpha_den, int C, int n, int precision_bits) {
  require_precision(precision_bits);
  if (alpha_den <= 0 || alpha_num <= 0 || 2 * alpha_num >= alpha_den) {
    throw DomainError("alpha must lie strictly between 0 and 1/2");
  }
  if (C < 2) throw DomainError("C must be >= 2");
  if (n < 1) throw DomainError("n must be positive");
  AlfaResult out;
  out.k = static_cast<int>((static_cast<long long>(alpha_num) * n) / alpha_den);
  out.rhs = binom_ext(n, out.k);
  out.lhs = RatioInterval(precision_bits);
  BigFloat lo(precision_bits), hi(precision_bits);
  for (int l = C; l <= n; ++l) {
    BigInt inner = 0;
    for (int i = std::max(0, out.k - l); i <= out.k; ++i) inner += binom_ext(n - l, i);
    log2_bounds(static_cast<unsigned long>(l), lo, hi);
    mpfr_mul_z(lo.get(), lo.get(), inner.get_mpz_t(), MPFR_RNDD);
    mpfr_mul_z(hi.get(), hi.get(), inner.get_mpz_t(), MPFR_RNDU);
    mpfr_add(out.lhs.lo.get(), out.lhs.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_add(out.lhs.hi.get(), out.lhs.hi.get(), hi.get(), MPFR_RNDU);
  }
  if (out.lhs.hi.compare(out.rhs) < 0) {
    out.verdict = AlfaVerdict::holds;
  } else if (out.lhs.lo.compare(out.rhs) >= 0) {
    out.verdict = AlfaVerdict::fails;
  } else {
    out.verdict = AlfaVerdict::indeterminate;
  }
  return out;
}

BoundCertificate certify_E_upper(int n, int k, const PrecisionPolicy& policy) {
  if (k < 1 || k > n - 1) throw DomainError("certify_E_upper needs 1 <= k <= n-1");
  require_precision(policy.start_bits);
  const Levels levels(n, k);
  BoundCertificate cert;
  cert.n = n;
  cert.k = k;
  cert.binom = binom_ext(n, k);

  auto margin_at = [&](int t, Verdict& verdict) {
    const LogMass mass = levels.mass(t);
    for (int bits = policy.start_bits;; bits *= 2) {
      RatioInterval m = log2_interval(mass, bits);
      mpfr_sub_z(m.lo.get(), m.lo.get(), cert.binom.get_mpz_t(), MPFR_RNDD);
      mpfr_sub_z(m.hi.get(), m.hi.get(), cert.binom.get_mpz_t(), MPFR_RNDU);
      if (m.hi.compare(0.0) < 0) {
        verdict = Verdict::certified;
        return m;
      }
      if (m.lo.compare(0.0) >= 0 || bits * 2 > policy.max_bits) {
        verdict = m.lo.compare(0.0) >= 0 ? Verdict::not_certified : Verdict::indeterminate;
        return m;
      }
    }
  };

  std::vector<RatioInterval> margins;
  std::vector<bool> ok;
  for (int t = 0; t <= n; ++t) {
    Verdict v = Verdict::not_certified;
    margins.push_back(margin_at(t, v));
    ok.push_back(v == Verdict::certified);
    if (v == Verdict::certified) cert.certified_ts.push_back(t);
  }
  for (int t = 0; t <= n; ++t) {
    if (!ok[t]) continue;
    if (cert.t < 0) cert.t = t;
    for (int u = t + 1; u <= n; ++u) cert.upward_closed = cert.upward_closed && ok[u];
  }
  if (cert.t >= 0) {
    cert.verdict = Verdict::certified;
    cert.margin = margins[cert.t];
  } else {
    cert.margin = margins.back();
  }
  return cert;
}

std::vector<int> level_majorization_failures(int n, int k, int precision_bits) {
  require_precision(precision_bits);
  validate_params(n, k, 0);
  const Levels levels(n, k);
  std::vector<int> failures;
  BigFloat lhs_lo(precision_bits), lhs_hi(precision_bits);
  for (int l = 1; l <= n; ++l) {
    BigInt e = levels.internal_exponent(l);
    log2_bounds(static_cast<unsigned long>(l), lhs_lo, lhs_hi);
    mpfr_mul_z(lhs_hi.get(), lhs_hi.get(), e.get_mpz_t(), MPFR_RNDU);
    mpfr_add_z(lhs_hi.get(), lhs_hi.get(), levels.L[l].get_mpz_t(), MPFR_RNDU);
    RatioInterval rhs(precision_bits);
    add_level_term(rhs, l, central_binom(n - l));
    if (lhs_hi.compare(rhs.lo) > 0) failures.push_back(l);
  }
  return failures;
}

bool first_term_majorized(int n, int k, int t) {
  validate_params(n, k, t);
  return Levels(n, k).level_sum(t) <= BigInt(t + 1) * central_binom(n - t);
}

}  // namespace slicelab
