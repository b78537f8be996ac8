#include <doctest.h>

#include <random>

#include "kato/iso.hpp"
#include "test_util.hpp"

using namespace kato;
using kato::testutil::fig2_data;
using kato::testutil::ih_data;
using kato::testutil::inoue_data;
using kato::testutil::iv;
using kato::testutil::threefold_data;

namespace {

const IntMat kInoue = IntMat::from_ints({{1, 1}, {0, 1}});

std::vector<GaussRat> gauss(std::initializer_list<std::pair<const char*, const char*>> xs) {
  std::vector<GaussRat> v;
  for (const auto& [re, im] : xs) v.push_back({parse_rat(re), parse_rat(im)});
  return v;
}

bool lattice_contains(const std::vector<IntMat>& basis, const IntMat& q) {
  // solve sum c_i basis_i = q over Q entrywise and check integrality
  int n = q.rows();
  RatMat m(n * n, static_cast<int>(basis.size()));
  RatVec rhs(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rhs[i * n + j] = Rat(q.at(i, j));
      for (size_t b = 0; b < basis.size(); ++b)
        m.at(i * n + j, static_cast<int>(b)) = Rat(basis[b].at(i, j));
    }
  auto sol = rat_solve(m, rhs);
  if (!sol) return false;
  // the basis is linearly independent, so the solution is unique
  for (const Rat& c : *sol)
    if (c.get_den() != 1) return false;
  // verify exactly
  IntMat rec(n, n);
  for (size_t b = 0; b < basis.size(); ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) rec.at(i, j) += (*sol)[b].get_num() * basis[b].at(i, j);
  return rec == q;
}

}  // namespace

TEST_CASE("commutant of the parabolic Inoue matrix is the A_k family") {
  std::vector<IntMat> basis = commutant_basis(kInoue, kInoue);
  REQUIRE(basis.size() == 2);
  CHECK(lattice_contains(basis, IntMat::identity(2)));
  CHECK(lattice_contains(basis, IntMat::from_ints({{0, 1}, {0, 0}})));
  for (const IntMat& b : basis) CHECK(b * kInoue == kInoue * b);
}

TEST_CASE("commutant always contains the identity when A = B") {
  IntMat a = IntMat::from_ints({{1, 1}, {1, 2}});
  std::vector<IntMat> basis = commutant_basis(a, a);
  CHECK(lattice_contains(basis, IntMat::identity(2)));
}

TEST_CASE("disjoint spectra give a trivial commutant lattice") {
  // det(A) = 1 with trace 3 vs trace 4: characteristic polynomials differ,
  // eigenvalues are disjoint quadratic irrationals
  IntMat a = IntMat::from_ints({{1, 1}, {1, 2}});
  IntMat b = IntMat::from_ints({{1, 1}, {2, 3}});
  CHECK(commutant_basis(a, b).empty());
}

TEST_CASE("lambda condition for the parabolic Inoue pair") {
  // condition reduces to l_2 - m_2 integral, for any Q = A_k
  auto ell = gauss({{"0", "1"}, {"0", "1"}});
  SUBCASE("equal second components: true") {
    auto m = gauss({{"1/2", "1"}, {"0", "1"}});
    CHECK(lambda_condition(IntMat::identity(2), ell, m, kInoue));
    CHECK(lambda_condition(IntMat::from_ints({{1, 3}, {0, 1}}), ell, m, kInoue));
  }
  SUBCASE("half-integer difference: false") {
    auto m = gauss({{"0", "1"}, {"1/2", "1"}});
    CHECK_FALSE(lambda_condition(IntMat::identity(2), ell, m, kInoue));
    CHECK_FALSE(lambda_condition(IntMat::from_ints({{1, 3}, {0, 1}}), ell, m, kInoue));
  }
  SUBCASE("imaginary part must stay in the span") {
    auto m = gauss({{"0", "1"}, {"0", "2"}});
    // Im(l - m) = (0, -1), not in Im(A_1 - id) = span{e_1}
    CHECK_FALSE(lambda_condition(IntMat::identity(2), ell, m, kInoue));
  }
}

TEST_CASE("lambda condition for the threefold: l2 - l3 - (m2 - m3) integral") {
  IntMat a = IntMat::from_ints({{1, 1, 1}, {2, 2, 1}, {2, 1, 2}});
  auto ell = gauss({{"0", "1"}, {"1/5", "1"}, {"0", "1"}});
  SUBCASE("true when the difference is integral") {
    auto m = gauss({{"1/3", "1"}, {"6/5", "1"}, {"1", "1"}});
    // l2 - l3 - (m2 - m3) = 1/5 - (6/5 - 1) = 0
    CHECK(lambda_condition(IntMat::identity(3), ell, m, a));
  }
  SUBCASE("false otherwise") {
    auto m = gauss({{"0", "1"}, {"1/2", "1"}, {"0", "1"}});
    CHECK_FALSE(lambda_condition(IntMat::identity(3), ell, m, a));
  }
}

TEST_CASE("fast path: same data with 1 not in the spectrum") {
  KatoData d = ih_data();
  CHECK(det(d.a.mat() - IntMat::identity(2)) != 0);
  IsoVerdict v = find_equivariant_iso(d, d);
  CHECK(v.answer == IsoAnswer::Yes);
  REQUIRE(v.witness_q.has_value());
  CHECK(*v.witness_q == IntMat::identity(2));
}

TEST_CASE("parabolic Inoue pairs: Yes iff l2 - m2 is integral") {
  auto make = [&](const char* re2) {
    return inoue_data(gauss({{"0", "1"}, {re2, "1"}}));
  };
  KatoData base = make("0");
  SUBCASE("six parameter choices") {
    struct Case {
      const char* re2;
      bool iso;
    } cases[] = {{"0", true},    {"1", true},  {"-3", true},
                 {"1/2", false}, {"1/3", false}, {"-5/2", false}};
    for (const auto& c : cases) {
      CAPTURE(c.re2);
      IsoVerdict v = find_equivariant_iso(base, make(c.re2));
      if (c.iso) {
        CHECK(v.answer == IsoAnswer::Yes);
        REQUIRE(v.witness_q.has_value());
        // verify the witness completely
        CHECK(*v.witness_q * base.a.mat() == base.a.mat() * *v.witness_q);
        CHECK(lambda_condition(*v.witness_q, *base.ell, *make(c.re2).ell, base.a.mat()));
      } else {
        CHECK(v.answer == IsoAnswer::No);
        CHECK(v.certificate.find("lattice condition fails") != std::string::npos);
      }
    }
  }
}

TEST_CASE("threefold with symmetric fan: swap witness when lambda mu = 1") {
  // lambda = exp(2 pi i (l2 - l3)), mu likewise; the permutation swapping
  // coordinates 2 and 3 preserves the fan and conjugates A to itself
  KatoData dx = threefold_data(gauss({{"0", "1"}, {"1/5", "1"}, {"0", "1"}}));
  KatoData dy = threefold_data(gauss({{"0", "1"}, {"-1/5", "1"}, {"0", "1"}}));
  IsoVerdict v = find_equivariant_iso(dx, dy);
  CHECK(v.answer == IsoAnswer::Yes);
  REQUIRE(v.witness_q.has_value());
  IntMat swap = IntMat::from_ints({{1, 0, 0}, {0, 0, 1}, {0, 1, 0}});
  CHECK(*v.witness_q == swap);

  SUBCASE("identity does not satisfy the condition but the swap does") {
    CHECK_FALSE(lambda_condition(IntMat::identity(3), *dx.ell, *dy.ell, dy.a.mat()));
    CHECK(lambda_condition(swap, *dx.ell, *dy.ell, dy.a.mat()));
  }
}

TEST_CASE("threefold pairs with equal lambda are isomorphic via the identity") {
  KatoData dx = threefold_data(gauss({{"0", "1"}, {"1/5", "1"}, {"0", "1"}}));
  KatoData dy = threefold_data(gauss({{"2/5", "1"}, {"7/5", "1"}, {"1/5", "1"}}));
  // l2 - l3 - (m2 - m3) = 1/5 - (7/5 - 1/5) = -1: integral
  IsoVerdict v = find_equivariant_iso(dx, dy);
  CHECK(v.answer == IsoAnswer::Yes);
}

TEST_CASE("reflexivity on all fixtures") {
  std::vector<KatoData> fixtures{inoue_data(), ih_data(), fig2_data(), threefold_data()};
  for (const KatoData& d : fixtures) {
    IsoVerdict v = find_equivariant_iso(d, d);
    CHECK(v.answer == IsoAnswer::Yes);
  }
}

TEST_CASE("symmetry of Yes verdicts") {
  auto ellx = gauss({{"0", "1"}, {"2", "1"}});
  auto elly = gauss({{"1/2", "1"}, {"-1", "1"}});
  KatoData dx = inoue_data(ellx), dy = inoue_data(elly);
  IsoVerdict xy = find_equivariant_iso(dx, dy);
  IsoVerdict yx = find_equivariant_iso(dy, dx);
  CHECK(xy.answer == IsoAnswer::Yes);
  CHECK(yx.answer == IsoAnswer::Yes);
}

TEST_CASE("No answers are stable under doubled bounds") {
  KatoData base = inoue_data(gauss({{"0", "1"}, {"0", "1"}}));
  KatoData other = inoue_data(gauss({{"0", "1"}, {"1/2", "1"}}));
  IsoVerdict v1 = find_equivariant_iso(base, other, 8, -1);
  IsoVerdict v2 = find_equivariant_iso(base, other, 16, 12);
  CHECK(v1.answer == IsoAnswer::No);
  CHECK(v2.answer == IsoAnswer::No);
}

TEST_CASE("different fan shapes give No via orbit counts") {
  KatoData one_blowup = inoue_data();
  Fan f = star_subdivide(star_subdivide(c0_fan(2), iv({1, 1})), iv({2, 1}));
  KatoData two_blowups =
      make_kato_data(f, IntMat::from_ints({{1, 2}, {1, 1}}), kato::testutil::unit_ell(2));
  IsoVerdict v = find_equivariant_iso(one_blowup, two_blowups);
  CHECK(v.answer == IsoAnswer::No);
}

TEST_CASE("dimension mismatch is refused outright") {
  IsoVerdict v = find_equivariant_iso(inoue_data(), fig2_data());
  CHECK(v.answer == IsoAnswer::No);
}
