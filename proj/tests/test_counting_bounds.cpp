#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "oracles.hpp"
#include "slicelab/counting_bounds.hpp"
#include "slicelab/query_solver.hpp"

using namespace slicelab;

TEST_CASE("g at t = n is 2") {
  for (int n = 1; n <= 12; ++n) {
    for (int k = 0; k <= n; ++k) {
      LogMass m = g_logmass(n, k, n);
      CHECK(m.pow2 == 1);
      CHECK(m.factors.empty());
      CHECK(m.expand() == 2);
    }
  }
}

TEST_CASE("g matches the direct product evaluation") {
  CHECK(g_logmass(3, 1, 1).expand() == 96);
  CHECK(g_logmass(3, 1, 0).expand() == 192);
  CHECK(g_logmass(4, 2, 1).expand() == 36864);
  CHECK(g_logmass(4, 2, 0).expand() == 147456);
  for (int n = 1; n <= 8; ++n) {
    for (int k = 0; 2 * k <= n; ++k) {
      for (int t = 0; t <= n; ++t) CHECK(g_logmass(n, k, t).expand() == oracle::g_value(n, k, t));
    }
  }
}

TEST_CASE("g level exponents go negative above the middle slice") {
  // The leaf term binom(n-l-1, n-k+1) outgrows the level size once k > n/2.
  CHECK_THROWS_AS(g_logmass(4, 4, 0), InternalError);
  CHECK_THROWS_AS(g_logmass(6, 5, 0), InternalError);
  for (int n = 1; n <= 40; ++n) {
    for (int k = 0; 2 * k <= n; ++k) CHECK_NOTHROW(g_logmass(n, k, 0));
  }
}

TEST_CASE("census never exceeds g on (3,1) and (4,2)") {
  for (SliceDomain d : {SliceDomain{3, 1}, SliceDomain{4, 2}}) {
    for (int t = 0; t <= d.n; ++t) CHECK(census_trees(d, d.n - t) <= g_logmass(d.n, d.k, t).expand());
  }
}

TEST_CASE("log2 enclosure brackets the exact value") {
  for (int n = 2; n <= 9; ++n) {
    for (int t = 0; t <= n; ++t) {
      LogMass m = g_logmass(n, n / 2, t);
      RatioInterval r = log2_interval(m, 128);
      BigInt v = m.expand();
      // 2^lo <= v <= 2^hi, checked through floor/ceil of log2 bounds
      const long bits = static_cast<long>(mpz_sizeinbase(v.get_mpz_t(), 2));
      CHECK(r.lo.compare(static_cast<double>(bits)) <= 0);
      CHECK(r.hi.compare(static_cast<double>(bits - 1)) >= 0);
      CHECK(r.lo.compare(r.hi) <= 0);
    }
  }
}

TEST_CASE("kozep ratio agrees with a long double evaluation") {
  for (int n = 7; n <= 99; n += 4) {
    RatioInterval r = kozep_ratio(n, 7, 128);
    const double approx = static_cast<double>(oracle::kozep(n, 7));
    CHECK(r.lo.to_double(MPFR_RNDD) <= approx * (1 + 1e-12));
    CHECK(r.hi.to_double(MPFR_RNDU) >= approx * (1 - 1e-12));
  }
}

TEST_CASE("kozep intervals nest as precision grows") {
  for (int n : {10, 50, 99, 150}) {
    RatioInterval a = kozep_ratio(n, 5, 64);
    RatioInterval b = kozep_ratio(n, 5, 128);
    RatioInterval c = kozep_ratio(n, 5, 256);
    CHECK(a.lo.compare(c.lo) <= 0);
    CHECK(a.hi.compare(c.hi) >= 0);
    CHECK(b.lo.compare(c.lo) <= 0);
    CHECK(b.hi.compare(c.hi) >= 0);
  }
}

TEST_CASE("kozep at the diagonal") {
  // f(7,7) = 8 C(0) / C(7) = 8/35
  RatioInterval r = kozep_ratio(7, 7, 128);
  CHECK(r.lo.compare(8.0 / 35 - 1e-12) > 0);
  CHECK(r.hi.compare(8.0 / 35 + 1e-12) < 0);
  CHECK_THROWS_AS(kozep_ratio(6, 7, 128), DomainError);
  CHECK_THROWS_AS(kozep_ratio(10, 5, 32), DomainError);
}

TEST_CASE("f(n,7) < 1 on [7,99]") {
  KozepReport r = verify_kozep_range(7, 7, 99);
  CHECK(r.rows.size() == 93);
  CHECK(r.all_certified());
  CHECK(r.indeterminate == 0);
  CHECK(r.max_hi.compare(1.0) < 0);
}

TEST_CASE("f(n,5) < 1 on [100,500]") {
  KozepReport r = verify_kozep_range(5, 100, 500, {}, 2);
  CHECK(r.all_certified());
}

TEST_CASE("f(n,5) is not below 1 everywhere on [7,99]") {
  KozepReport r = verify_kozep_range(5, 7, 99);
  CHECK(r.not_certified > 0);
  CHECK(r.indeterminate == 0);
}

TEST_CASE("the three-stage chain constants") {
  KozepChain c = kozep_chain(256);
  CHECK(c.first.certainly_below(0.2));
  CHECK(c.middle.certainly_below(0.71));
  CHECK(c.stated_total.certainly_below(0.92));
  CHECK(c.actual_total.certainly_below(0.92));
  // first = 6 C(94) / C(99)
  const double first = 6 * oracle::central(94).get_d() / oracle::central(99).get_d();
  CHECK(c.first.lo.to_double(MPFR_RNDD) <= first * (1 + 1e-12));
  CHECK(c.first.hi.to_double(MPFR_RNDU) >= first * (1 - 1e-12));
}

TEST_CASE("alfa inequality") {
  CHECK(alfa_inequality(1, 4, 201, 200).verdict == AlfaVerdict::holds);
  AlfaResult r = alfa_inequality(1, 4, 40, 200);
  CHECK(r.k == 50);
  CHECK(r.rhs == oracle::binom(200, 50));
  // Pinned from the direct evaluation below.
  CHECK(r.verdict == AlfaVerdict::holds);
  CHECK(alfa_inequality(1, 4, 2, 200).verdict == AlfaVerdict::fails);
  CHECK_THROWS_AS(alfa_inequality(1, 2, 40, 200), DomainError);
  CHECK_THROWS_AS(alfa_inequality(1, 4, 1, 200), DomainError);
}

TEST_CASE("alfa left side against a double evaluation") {
  // sum_{l=C}^{n} log2(l) sum_{i=max(0,k-l)}^{k} binom(n-l,i), relative to binom(n,k)
  const int n = 200, k = 50;
  for (int C : {2, 10, 20, 40}) {
    long double lhs = 0;
    for (int l = C; l <= n; ++l) {
      long double inner = 0;
      for (int i = std::max(0, k - l); i <= k; ++i) inner += oracle::binom(n - l, i).get_d();
      lhs += std::log2((long double)l) * inner;
    }
    const bool holds = lhs < oracle::binom(n, k).get_d();
    CHECK((alfa_inequality(1, 4, C, n).verdict == AlfaVerdict::holds) == holds);
  }
}

TEST_CASE("alfa verdict is monotone in C") {
  for (int n : {60, 120, 200}) {
    bool held = false;
    for (int C = 2; C <= n + 1; C += 3) {
      bool h = alfa_inequality(1, 5, C, n).verdict == AlfaVerdict::holds;
      if (held) CHECK(h);
      held = held || h;
    }
  }
}

TEST_CASE("certify_E_upper at n = 100, 20 and 50") {
  BoundCertificate a = certify_E_upper(100, 50);
  CHECK(a.verdict == Verdict::certified);
  CHECK(a.t >= 0);
  CHECK(a.t <= 5);
  CHECK(a.margin.hi.compare(0.0) < 0);
  CHECK(a.upward_closed);
  BoundCertificate b = certify_E_upper(20, 10);
  CHECK(b.t >= 0);
  CHECK(b.t <= 7);
  BoundCertificate c = certify_E_upper(50, 12);
  CHECK(c.verdict == Verdict::certified);
  CHECK(c.t >= 0);
  CHECK_THROWS_AS(certify_E_upper(10, 0), DomainError);
}

TEST_CASE("certificates agree with exact arithmetic where g is expandable") {
  for (int n = 4; n <= 10; ++n) {
    const int k = n / 2;
    BoundCertificate cert = certify_E_upper(n, k);
    const mpz_class full = oracle::ipow(2, oracle::binom(n, k));
    for (int t = 0; t <= n; ++t) {
      const bool exact = oracle::g_value(n, k, t) < full;
      const bool listed =
          std::find(cert.certified_ts.begin(), cert.certified_ts.end(), t) != cert.certified_ts.end();
      CHECK(listed == exact);
    }
  }
}

TEST_CASE("certified t values are upward closed for even n up to 60") {
  for (int n = 4; n <= 60; n += 2) CHECK(certify_E_upper(n, n / 2).upward_closed);
}

TEST_CASE("level majorization holds for n <= 30") {
  for (int n = 2; n <= 30; ++n) {
    CHECK(level_majorization_failures(n, n / 2).empty());
    for (int t = 0; t <= n; ++t) CHECK(first_term_majorized(n, n / 2, t));
  }
}

TEST_CASE("central binomial") {
  CHECK(central_binom(0) == 1);
  CHECK(central_binom(5) == 10);
  CHECK(central_binom(-1) == 0);
  CHECK(central_binom(99) == oracle::binom(99, 49));
}
