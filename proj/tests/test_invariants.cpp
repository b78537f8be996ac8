#include <doctest.h>

#include <random>

#include "kato/invariants.hpp"
#include "test_util.hpp"

using namespace kato;
using kato::testutil::cycle3;
using kato::testutil::fig2_data;
using kato::testutil::hopf_data;
using kato::testutil::ih_data;
using kato::testutil::inoue_data;
using kato::testutil::iv;
using kato::testutil::random_kato_data;
using kato::testutil::threefold_data;
using kato::testutil::unit_ell;

namespace {

std::vector<Int> bvec(std::initializer_list<long> xs) {
  std::vector<Int> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

KatoData blowup_data3() {
  // single point blow-up of C^3, chart at <c, e2, e3>
  Fan f = star_subdivide(c0_fan(3), iv({1, 1, 1}));
  return make_kato_data(f, IntMat::from_ints({{1, 0, 0}, {1, 1, 0}, {1, 0, 1}}), unit_ell(3));
}

KatoData ih_neg_data() {  // n = 2 hyperbolic with det A = -1
  Fan f = star_subdivide(star_subdivide(c0_fan(2), iv({1, 1})), iv({2, 1}));
  return make_kato_data(f, IntMat::from_ints({{1, 2}, {1, 1}}), unit_ell(2));
}

}  // namespace

TEST_CASE("betti worked values") {
  CHECK(betti(inoue_data()) == bvec({1, 1, 1, 1, 1}));
  CHECK(betti(blowup_data3()) == bvec({1, 1, 1, 0, 1, 1, 1}));
  // Inoue-Hirzebruch: a = (1,4,3), b_2 = 2 = a_1 - n
  CHECK(betti(ih_data()) == bvec({1, 1, 2, 1, 1}));
}

TEST_CASE("betti properties on random modifications") {
  std::mt19937 rng(61);
  for (int t = 0; t < 50; ++t) {
    int n = 2 + t % 3;
    KatoData d = random_kato_data(n, 1 + t % 6, rng);
    std::vector<Int> b = betti(d);
    std::vector<long> a = d.sigma_hat.cone_counts();
    REQUIRE(static_cast<int>(b.size()) == 2 * n + 1);
    CHECK(b[0] == 1);
    CHECK(b[1] == 1);
    CHECK(b[2 * n - 1] == 1);
    CHECK(b[2 * n] == 1);
    for (int j = 1; j <= n - 2; ++j) CHECK(b[2 * j + 1] == 0);
    // Poincare duality
    for (int j = 1; j <= n - 1; ++j) CHECK(b[2 * j] == b[2 * (n - j)]);
    // alternating sum equals the Euler characteristic a_n - 1
    Int alt = 0;
    for (int k = 0; k <= 2 * n; ++k) alt += (k % 2 == 0) ? b[k] : -b[k];
    CHECK(alt == Int(a[n]) - 1);
    CHECK(alt == euler(d));
    // b_2 counts exceptional rays
    CHECK(b[2] == Int(a[1]) - n);
  }
}

TEST_CASE("euler examples") {
  CHECK(euler(inoue_data()) == 1);
  CHECK(euler(blowup_data3()) == 2);
  CHECK(euler(hopf_data(cycle3())) == 0);
}

TEST_CASE("hodge tables") {
  SUBCASE("hyperbolic: exact table") {
    HodgeTable t = hodge(fig2_data());
    CHECK(t.status == HodgeStatus::Exact);
    long sharp_d = fig2_data().sigma_hat.cone_counts()[1] - 3;
    CHECK(t.h[0][0] == 1);
    CHECK(t.h[0][1] == 1);
    CHECK(t.h[0][2] == 0);
    CHECK(t.h[1][1] == sharp_d);
    CHECK(t.h[1][0] == 0);
    CHECK(t.h[1][2] == 0);
    CHECK(sharp_d == 2);
  }
  SUBCASE("parabolic: conditional") {
    HodgeTable t = hodge(inoue_data());
    CHECK(t.status == HodgeStatus::ConditionalParabolic);
    CHECK(t.h[1][1] == 1);
  }
  SUBCASE("primary Hopf: exact with no exceptional divisor") {
    HodgeTable t = hodge(hopf_data(cycle3()));
    CHECK(t.status == HodgeStatus::Exact);
    CHECK(t.h[1][1] == 0);
  }
  SUBCASE("non-primary Hopf: not computed") {
    IntMat perm = IntMat::from_ints({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
    HodgeTable t = hodge(hopf_data(perm));
    CHECK(t.status == HodgeStatus::NotComputed);
  }
  SUBCASE("betti consistency for exact tables: b_k = sum h^{p,q}, k <= 2") {
    KatoData d = fig2_data();
    HodgeTable t = hodge(d);
    std::vector<Int> b = betti(d);
    CHECK(b[0] == t.h[0][0]);
    CHECK(b[1] == t.h[0][1] + t.h[1][0]);
    CHECK(b[2] == t.h[0][2] + t.h[1][1] + t.h[2][0]);
  }
}

TEST_CASE("log sheaf cohomology") {
  SUBCASE("parabolic a=1: h0 = 1, no hyperbolic clause") {
    LogCohomology lc = log_sheaf_cohomology(inoue_data());
    CHECK(lc.h0 == 1);
    CHECK_FALSE(lc.h1.has_value());
  }
  SUBCASE("threefold with 1 in the spectrum: h0 = h1 = 1") {
    LogCohomology lc = log_sheaf_cohomology(threefold_data());
    CHECK(lc.h0 == 1);
    REQUIRE(lc.h1.has_value());
    CHECK(*lc.h1 == 1);
    CHECK(lc.higher_vanish);
  }
  SUBCASE("Inoue-Hirzebruch: det(A - id) = -1, everything vanishes") {
    LogCohomology lc = log_sheaf_cohomology(ih_data());
    CHECK(lc.h0 == 0);
    REQUIRE(lc.h1.has_value());
    CHECK(*lc.h1 == 0);
  }
}

TEST_CASE("canonical report") {
  SUBCASE("Hopf 3-cycle") {
    CanonicalReport r = canonical_report(hopf_data(cycle3()));
    CHECK(r.sharp_d == 0);
    CHECK(r.sharp_dt == 1);  // one cycle
    CHECK(r.det_sign == 1);
    CHECK(r.kodaira == "negative");
  }
  SUBCASE("figure-2: P(A) = {1}, s = id") {
    CanonicalReport r = canonical_report(fig2_data());
    CHECK(r.sharp_d == fig2_data().sigma_hat.cone_counts()[1] - 3);
    CHECK(r.sharp_dt == r.sharp_d + 1);
  }
  SUBCASE("Inoue-Hirzebruch: no cycles") {
    CanonicalReport r = canonical_report(ih_data());
    CHECK(r.sharp_dt == r.sharp_d);
    CHECK(r.det_sign == 1);
  }
}

TEST_CASE("curve census") {
  SUBCASE("Hopf 3-cycle: one elliptic orbit, no rational curves") {
    CensusResult c = curve_census(hopf_data(cycle3()));
    CHECK(c.elliptic >= 1);
    CHECK(c.rational == 0);
    CHECK(c.hopf_orbit_caveat);
  }
  SUBCASE("Hopf identity: n elliptic curves") {
    CensusResult c = curve_census(hopf_data(IntMat::identity(3)));
    CHECK(c.elliptic == 3);
    CHECK(c.rational == 0);
    CHECK_FALSE(c.hopf_orbit_caveat);
  }
  SUBCASE("parabolic Inoue a=1: (1, 1)") {
    CensusResult c = curve_census(inoue_data());
    CHECK(c.elliptic == 1);
    CHECK(c.rational == 1);
  }
  SUBCASE("figure-2 hyperbolic: no elliptic, positive rational count") {
    CensusResult c = curve_census(fig2_data());
    CHECK(c.elliptic == 0);
    CHECK(c.rational > 0);
  }
}

TEST_CASE("divisor connectivity") {
  SUBCASE("n = 3 always connected") {
    ConnectivityReport r = divisor_connectivity(fig2_data());
    CHECK(r.components_d == 1);
    CHECK(r.components_dt == 1);
  }
  SUBCASE("n = 2 hyperbolic, det +1: two components") {
    ConnectivityReport r = divisor_connectivity(ih_data());
    CHECK(r.components_d == 2);
    CHECK(r.components_dt == 2);
  }
  SUBCASE("n = 2 hyperbolic, det -1: connected") {
    KatoData d = ih_neg_data();
    REQUIRE(validate_kato_data(d).ok);
    CHECK(det(d.a.mat()) == -1);
    ConnectivityReport r = divisor_connectivity(d);
    CHECK(r.components_d == 1);
    CHECK(r.components_dt == 1);
  }
  SUBCASE("n = 2 parabolic: D_T gains the elliptic component") {
    ConnectivityReport r = divisor_connectivity(inoue_data());
    CHECK(r.components_d == 1);
    CHECK(r.components_dt == 2);
  }
  SUBCASE("Hopf rejected") {
    CHECK_THROWS_AS(divisor_connectivity(hopf_data(cycle3())), std::invalid_argument);
  }
}

TEST_CASE("divisor connectivity agrees with the truncation dual graph") {
  std::vector<KatoData> fixtures{ih_data(), inoue_data(), fig2_data(), threefold_data(),
                                 ih_neg_data()};
  for (const KatoData& d : fixtures) {
    ConnectivityReport closed = divisor_connectivity(d);
    ConnectivityReport graph = divisor_connectivity_truncated(d, 3);
    CHECK(closed.components_d == graph.components_d);
    CHECK(closed.components_dt == graph.components_dt);
  }
}

TEST_CASE("metric verdicts") {
  SUBCASE("blow-up scripts are lcK") {
    std::mt19937 rng(67);
    for (int t = 0; t < 4; ++t) {
      KatoData d = random_kato_data(2 + t % 2, 1 + t % 3, rng, true);
      MetricVerdicts v = metric_report(d);
      CHECK(v.lck);
      CHECK(v.balanced == "nonexistent");
      CHECK(v.strongly_gauduchon == "nonexistent");
      CHECK(v.hermitian_symplectic == "nonexistent");
    }
  }
  SUBCASE("pluriclosed verdict by type and dimension") {
    CHECK(metric_report(fig2_data()).pluriclosed == "nonexistent");
    CHECK(metric_report(ih_data()).pluriclosed.find("unknown") == 0);
    CHECK(metric_report(hopf_data(cycle3())).pluriclosed == "unknown");
  }
}

TEST_CASE("covering consistency under power_data") {
  std::mt19937 rng(71);
  int done = 0;
  for (int t = 0; done < 10; ++t) {
    int n = 2 + t % 2;
    KatoData d = random_kato_data(n, 1 + t % 3, rng, true);
    int k = 2 + t % 2;
    KatoData p = power_data(d, k);
    CHECK(euler(p) == Int(k) * euler(d));
    long sd = d.sigma_hat.cone_counts()[1] - n;
    long sdp = p.sigma_hat.cone_counts()[1] - n;
    CHECK(sdp == k * sd);
    ++done;
  }
}

TEST_CASE("lcK verdict invariant under power_data") {
  KatoData d = inoue_data();
  MetricVerdicts v1 = metric_report(d);
  MetricVerdicts v2 = metric_report(power_data(d, 2));
  CHECK(v1.lck == v2.lck);
}

TEST_CASE("full invariant report") {
  InvariantReport rep = invariant_report(fig2_data());
  CHECK(rep.betti == bvec({1, 1, 2, 0, 2, 1, 1}));
  CHECK(rep.euler == 4);
  CHECK(rep.sharp_d == 2);
  CHECK(rep.sharp_dt == 3);
  CHECK(rep.hodge.status == HodgeStatus::Exact);
  CHECK(rep.connectivity.has_value());
  CHECK(rep.metrics.lck);
}
