#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "kato/kato_data.hpp"
#include "test_util.hpp"

using namespace kato;
using kato::testutil::iv;
using kato::testutil::random_kato_data;

using kato::testutil::cycle3;
using kato::testutil::fig2_data;
using kato::testutil::hopf_data;
using kato::testutil::ih_data;
using kato::testutil::inoue_data;

namespace {

const IntMat kFig2 = IntMat::from_ints({{1, 1, 1}, {0, 2, 1}, {0, 1, 1}});
const IntMat kIH = IntMat::from_ints({{1, 1}, {1, 2}});
const IntMat kInoue = IntMat::from_ints({{1, 1}, {0, 1}});

}  // namespace

TEST_CASE("is_kato_matrix") {
  CHECK(is_kato_matrix(cycle3()));
  CHECK(is_kato_matrix(IntMat::from_ints({{3, 2, 3}, {2, 1, 2}, {2, 2, 1}})));
  CHECK_FALSE(is_kato_matrix(IntMat::from_ints({{1, -1}, {0, 1}})));
  CHECK_FALSE(is_kato_matrix(IntMat::from_ints({{1, 1}, {1, 1}})));  // det 0
  CHECK(is_kato_matrix(IntMat::from_ints({{1, 1}, {2, 1}})));
}

TEST_CASE("pa_set examples") {
  PaData p = pa_set(kFig2);
  CHECK(p.p == std::vector<int>{0});
  CHECK(p.s.at(0) == 0);

  p = pa_set(cycle3());
  CHECK(p.p == std::vector<int>{0, 1, 2});
  CHECK(p.s.at(0) == 1);
  CHECK(p.s.at(1) == 2);
  CHECK(p.s.at(2) == 0);

  p = pa_set(IntMat::from_ints({{3, 2, 3}, {2, 1, 2}, {2, 2, 1}}));
  CHECK(p.p.empty());
}

TEST_CASE("pa_set agrees with the power-positivity oracle") {
  std::mt19937 rng(43);
  int tested = 0;
  for (int t = 0; tested < 100; ++t) {
    int n = 2 + t % 3;
    KatoData d = random_kato_data(n, 1 + t % 4, rng);
    const IntMat& a = d.a.mat();
    bool small = true;
    for (int i = 0; i < n && small; ++i)
      for (int j = 0; j < n && small; ++j)
        if (a.at(i, j) > 5) small = false;
    if (!small) continue;
    ++tested;
    PaData p = pa_set(a);
    // oracle: j in P(A) iff column j of A^m stays a standard vector
    IntMat am = mat_pow(a, n * p.m0 + 1);
    for (int j = 0; j < n; ++j) {
      int ones = 0, nonzero = 0;
      for (int i = 0; i < n; ++i) {
        if (am.at(i, j) != 0) ++nonzero;
        if (am.at(i, j) == 1) ++ones;
      }
      bool standard = nonzero == 1 && ones == 1;
      CHECK(standard == std::binary_search(p.p.begin(), p.p.end(), j));
    }
  }
}

TEST_CASE("classify") {
  CHECK(classify(cycle3()) == KatoKind::Hopf);
  CHECK(classify(kInoue) == KatoKind::Parabolic);
  CHECK(classify(kFig2) == KatoKind::Hyperbolic);
  CHECK(classify(kIH) == KatoKind::Hyperbolic);
}

TEST_CASE("perron on the figure-2 matrix") {
  PerronResult r = perron(KatoMatrix(kFig2));
  REQUIRE(r.data.has_value());
  const PerronData& pd = *r.data;
  double xi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::fabs(pd.alpha - (3 + std::sqrt(5.0)) / 2) < 1e-9);
  CHECK(pd.residual_f < 1e-12);
  CHECK(pd.residual_f_star < 1e-12);
  // f parallel to (xi, xi, 1)
  double scale = pd.f[2];
  CHECK(std::fabs(pd.f[0] / scale - xi) < 1e-8);
  CHECK(std::fabs(pd.f[1] / scale - xi) < 1e-8);
  // f* vanishes on P(A) = {1} and is positive elsewhere
  CHECK(std::fabs(pd.f_star[0]) < 1e-8);
  CHECK(pd.f_star[1] > 1e-6);
  CHECK(pd.f_star[2] > 1e-6);
  // f* parallel to (0, xi, 1)
  CHECK(std::fabs(pd.f_star[1] / pd.f_star[2] - xi) < 1e-8);
}

TEST_CASE("perron on a 2x2 and the non-hyperbolic markers") {
  PerronResult r = perron(KatoMatrix(kIH));
  REQUIRE(r.data.has_value());
  CHECK(std::fabs(r.data->alpha - (3 + std::sqrt(5.0)) / 2) < 1e-9);
  double xi = (1 + std::sqrt(5.0)) / 2;
  CHECK(std::fabs(r.data->f[1] / r.data->f[0] - xi) < 1e-8);

  PerronResult h = perron(KatoMatrix(cycle3()));
  CHECK(h.kind == KatoKind::Hopf);
  CHECK_FALSE(h.data.has_value());

  PerronResult p = perron(KatoMatrix(kInoue));
  CHECK(p.kind == KatoKind::Parabolic);
  CHECK_FALSE(p.data.has_value());
  CHECK(p.parabolic_j == 1);
}

TEST_CASE("sub_kato") {
  KatoMatrix a(kFig2);
  IntMat sub = sub_kato(a, {0});
  CHECK(sub == IntMat::from_ints({{2, 1}, {1, 1}}));
  CHECK(is_kato_matrix(sub));
  CHECK(sub_kato(a, {}) == kFig2);
  KatoMatrix c3(cycle3());
  CHECK_THROWS_AS(sub_kato(c3, {0}), std::invalid_argument);  // {0} not s-invariant
}

TEST_CASE("validate_kato_data") {
  SUBCASE("single blow-up parabolic data is valid") {
    CHECK(validate_kato_data(inoue_data()).ok);
  }
  SUBCASE("contraction criterion rejects Im l = 0 on a row of sum 1") {
    KatoData d = inoue_data(std::vector<GaussRat>{{Rat(0), Rat(1)}, {Rat(0), Rat(0)}});
    CHECK_FALSE(validate_kato_data(d).ok);
  }
  SUBCASE("tau_A must be a cone of the fan") {
    Fan f = star_subdivide(c0_fan(2), iv({1, 1}));
    KatoData d = make_kato_data(f, IntMat::identity(2), std::nullopt);
    CHECK_FALSE(validate_kato_data(d).ok);
  }
  SUBCASE("trivial modification requires a permutation matrix") {
    CHECK(validate_kato_data(hopf_data(cycle3())).ok);
  }
  SUBCASE("figure-2 data is valid hyperbolic") {
    KatoData d = fig2_data();
    CHECK(validate_kato_data(d).ok);
    CHECK(d.a.kind() == KatoKind::Hyperbolic);
    CHECK(d.a.pa().p == std::vector<int>{0});
  }
}

TEST_CASE("power_data") {
  SUBCASE("k = 1 is the identity") {
    KatoData d = ih_data();
    KatoData p = power_data(d, 1);
    CHECK(p.sigma_hat == d.sigma_hat);
    CHECK(p.a.mat() == d.a.mat());
    CHECK(p.ell == d.ell);
  }
  SUBCASE("Inoue-Hirzebruch square has 6 rays and 5 top cones") {
    KatoData p = power_data(ih_data(), 2);
    CHECK(validate_kato_data(p).ok);
    std::vector<IntVec> rays = p.sigma_hat.rays();
    std::set<IntVec> expect{iv({1, 0}), iv({0, 1}), iv({1, 1}), iv({1, 2}), iv({2, 3}),
                            iv({3, 5})};
    CHECK(std::set<IntVec>(rays.begin(), rays.end()) == expect);
    CHECK(p.sigma_hat.max_cones().size() == 5);
    CHECK(p.a.mat() == mat_pow(kIH, 2));
  }
  SUBCASE("parabolic square: 4 rays, 3 top cones (degree-2 covering)") {
    KatoData p = power_data(inoue_data(), 2);
    CHECK(validate_kato_data(p).ok);
    CHECK(p.sigma_hat.rays().size() == 4);
    CHECK(p.sigma_hat.max_cones().size() == 3);
  }
  SUBCASE("power composition") {
    std::mt19937 rng(47);
    for (int t = 0; t < 6; ++t) {
      KatoData d = random_kato_data(2 + t % 2, 2, rng, true);
      KatoData p6 = power_data(d, 6);
      KatoData p23 = power_data(power_data(d, 2), 3);
      CHECK(p6.sigma_hat == p23.sigma_hat);
      CHECK(p6.a.mat() == p23.a.mat());
      CHECK(p6.ell == p23.ell);
    }
  }
}

TEST_CASE("collapsed_fan") {
  KatoData d = ih_data();
  SUBCASE("l = m = 0 is the orthant fan") { CHECK(collapsed_fan(d, 0, 0) == c0_fan(2)); }
  SUBCASE("l = 0, m = 1 is the modification fan") {
    CHECK(collapsed_fan(d, 0, 1) == d.sigma_hat);
  }
  SUBCASE("negative l pulls back by the inverse") {
    Fan f = collapsed_fan(d, -1, 1);
    FanReport rep = fan_validate(f);
    CHECK(rep.ok);
    CHECK(rep.all_regular);
    IntMat ainv = inverse_unimodular(kIH);
    std::set<IntVec> expect;
    for (const IntVec& r : d.sigma_hat.rays()) {
      expect.insert(ainv * r);
      expect.insert(r);
    }
    expect.insert(kIH * iv({1, 0}));
    expect.insert(kIH * iv({0, 1}));
    std::vector<IntVec> rays = f.rays();
    CHECK(std::set<IntVec>(rays.begin(), rays.end()) == expect);
  }
  SUBCASE("every window cone lies in the support of the shorter window") {
    Fan narrow = collapsed_fan(d, -1, 1);
    Fan wide = collapsed_fan(d, -1, 3);
    for (const Cone& c : wide.max_cones())
      for (const IntVec& g : c.gens) {
        bool inside = false;
        for (const Cone& m : narrow.max_cones())
          if (cone_contains(m, g) != Region::Outside) inside = true;
        CHECK(inside);
      }
  }
}

TEST_CASE("support membership") {
  SUBCASE("figure-2 hyperbolic examples") {
    KatoData d = fig2_data();
    CHECK(support_membership(d, iv({0, 1, 0})) == Membership::In);
    CHECK(support_membership(d, iv({0, -1, 0})) == Membership::Out);
    CHECK(support_membership(d, iv({1, 0, 0})) == Membership::In);
  }
  SUBCASE("A-invariance of In answers") {
    KatoData d = fig2_data();
    std::mt19937 rng(53);
    std::uniform_int_distribution<int> coord(-4, 4);
    for (int t = 0; t < 60; ++t) {
      IntVec v{Int(coord(rng)), Int(coord(rng)), Int(coord(rng))};
      if (is_zero(v)) continue;
      if (support_membership(d, v) == Membership::In)
        CHECK(support_membership(d, d.a.mat() * v) == Membership::In);
    }
  }
  SUBCASE("parabolic support") {
    KatoData d = inoue_data();
    CHECK(support_membership(d, iv({-3, 1})) == Membership::In);  // H(A): v_2 > 0
    CHECK(support_membership(d, iv({2, 0})) == Membership::In);   // tau_P
    CHECK(support_membership(d, iv({-1, 0})) == Membership::Out);
    CHECK(support_membership(d, iv({0, -1})) == Membership::Out);
  }
  SUBCASE("Hopf support is the orthant boundary") {
    KatoData d = hopf_data(cycle3());
    CHECK(support_membership(d, iv({1, 1, 0})) == Membership::In);
    CHECK(support_membership(d, iv({1, 1, 1})) == Membership::Out);
    CHECK(support_membership(d, iv({-1, 0, 0})) == Membership::Out);
  }
}

TEST_CASE("germ report") {
  SUBCASE("Hopf") {
    GermReport g = germ_report(hopf_data(cycle3()));
    CHECK(g.p_complement.empty());
    CHECK(g.h_infty == "empty");
    CHECK(g.inv == "C^3");
  }
  SUBCASE("figure-2") {
    GermReport g = germ_report(fig2_data());
    CHECK(g.p_complement == std::vector<int>{1, 2});
    CHECK(g.inv.find("z_2 != 0") != std::string::npos);
    CHECK(g.inv.find("z_3 != 0") != std::string::npos);
    CHECK(g.b == IntMat::from_ints({{2, 1}, {1, 1}}));
  }
  SUBCASE("parabolic splitting") {
    GermReport g = germ_report(inoue_data());
    CHECK(g.splitting.find("T_N") != std::string::npos);
  }
}

TEST_CASE("random kato data validates") {
  std::mt19937 rng(59);
  for (int t = 0; t < 12; ++t) {
    KatoData d = random_kato_data(2 + t % 3, 1 + t % 4, rng, true);
    CHECK(validate_kato_data(d).ok);
  }
}
