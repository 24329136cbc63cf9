#include "curlspec/torus.hpp"

#include "curlspec/errors.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <random>

using namespace curlspec;

TEST_CASE("basis constructors") {
  const LatticeBasis id = LatticeBasis::identity(3);
  CHECK(id.n == 3);
  CHECK(id.exact);
  CHECK(id.rows[0][0] == 1);
  CHECK(id.rows[0][1] == 0);

  const LatticeBasis b = LatticeBasis::from_strings({{"1/2", "0"}, {"-3", "2/3"}});
  CHECK(b.n == 2);
  CHECK(b.exact);
  CHECK(b.rows[0][0] == Rational(1, 2));
  CHECK(b.rows[1][1] == Rational(2, 3));

  // 0.5 and -2.25 are dyadic: still exact
  const LatticeBasis d = LatticeBasis::from_doubles({{0.5, 0.0}, {0.0, -2.25}});
  CHECK(d.exact);
  CHECK(d.rows[1][1] == Rational(-9, 4));

  // 1/3 as a double has a 2^52-scale denominator: flagged non-exact
  const LatticeBasis a = LatticeBasis::from_doubles({{1.0 / 3.0, 0.0}, {0.0, 1.0}});
  CHECK_FALSE(a.exact);

  CHECK_THROWS_AS(LatticeBasis::identity(0), ValidationError);
  CHECK_THROWS_AS(LatticeBasis::from_strings({{"1", "0"}, {"1"}}), ValidationError);
  CHECK_THROWS_AS(LatticeBasis::from_strings({{"x", "0"}, {"0", "1"}}), ValidationError);
}

TEST_CASE("determinant and dual") {
  CHECK(lattice_det(LatticeBasis::identity(4)) == 1);
  CHECK(lattice_det(LatticeBasis::from_strings({{"2", "1", "0"}, {"0", "1", "0"}, {"0", "0", "3"}})) == 6);
  CHECK(lattice_det(LatticeBasis::from_strings({{"0", "1"}, {"1", "0"}})) == -1);
  CHECK(lattice_det(LatticeBasis::from_strings({{"1", "0"}, {"2", "0"}})) == 0);

  const LatticeBasis b = LatticeBasis::from_strings({{"2", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1"}});
  const LatticeBasis dual = dual_lattice(b);
  CHECK(dual.rows[0][0] == Rational(1, 2));
  CHECK(dual.rows[1][1] == 1);
  CHECK(dual.rows[0][1] == 0);

  CHECK_THROWS_AS(dual_lattice(LatticeBasis::from_strings({{"1", "0"}, {"2", "0"}})),
                  ValidationError);
  // condition estimate far beyond the default limit
  CHECK_THROWS_AS(dual_lattice(LatticeBasis::from_strings(
                      {{"1000000", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1/1000000"}})),
                  ValidationError);
}

TEST_CASE("dual satisfies the defining relation on random bases") {
  std::mt19937 rng(20240811);
  for (int trial = 0; trial < 10; ++trial) {
    const LatticeBasis b = oracles::random_rational_basis(rng);
    const LatticeBasis d = dual_lattice(b);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        Rational dot(0);
        for (int k = 0; k < 3; ++k) dot += d.rows[i][k] * b.rows[j][k];
        CHECK(dot == (i == j ? 1 : 0));
      }
  }
}

TEST_CASE("cubic lattice shells") {
  const LatticeBasis z3 = LatticeBasis::identity(3);

  auto t = enumerate_shells(z3, 1.0);
  CHECK_FALSE(t.approximate);
  REQUIRE(t.shells.size() == 1);
  CHECK(t.shells[0].q == 1);
  CHECK(t.shells[0].count == 6);

  t = enumerate_shells(z3, std::sqrt(3.0));
  REQUIRE(t.shells.size() == 3);
  CHECK(t.shells[0].q == 1);
  CHECK(t.shells[0].count == 6);
  CHECK(t.shells[1].q == 2);
  CHECK(t.shells[1].count == 12);
  CHECK(t.shells[2].q == 3);
  CHECK(t.shells[2].count == 8);

  // just below the first shell: nothing
  CHECK(enumerate_shells(z3, 0.999999).shells.empty());

  auto t5 = enumerate_shells(LatticeBasis::identity(5), 1.0);
  REQUIRE(t5.shells.size() == 1);
  CHECK(t5.shells[0].q == 1);
  CHECK(t5.shells[0].count == 10);
}

TEST_CASE("rational basis shells") {
  const LatticeBasis b =
      LatticeBasis::from_strings({{"1", "0", "0"}, {"0", "1", "0"}, {"0", "0", "1/2"}});
  const auto t = enumerate_shells(b, 0.6);
  REQUIRE(t.shells.size() == 1);
  CHECK(t.shells[0].q == Rational(1, 4));
  CHECK(t.shells[0].count == 2);
}

TEST_CASE("shell enumeration errors") {
  CHECK_THROWS_AS(enumerate_shells(LatticeBasis::identity(3), 0.0), ValidationError);
  CHECK_THROWS_AS(enumerate_shells(LatticeBasis::identity(3), -1.0), ValidationError);
  CHECK_THROWS_AS(
      enumerate_shells(LatticeBasis::from_strings({{"1", "0"}, {"1", "0"}}), 1.0),
      ValidationError);

  TorusOptions tight;
  tight.vector_cap = 10;
  CHECK_THROWS_AS(enumerate_shells(LatticeBasis::identity(3), 2.0, tight), ValidationError);
}

TEST_CASE("shells match exhaustive box enumeration") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 10; ++trial) {
    const LatticeBasis b = oracles::random_rational_basis(rng);
    const auto table = enumerate_shells(b, 3.5);
    const auto expected = oracles::box_shells(b.rows, 3.5);
    REQUIRE(table.shells.size() == expected.size());
    std::size_t i = 0;
    for (const auto& [q, count] : expected) {
      CHECK(table.shells[i].q == q);
      CHECK(table.shells[i].count == count);
      ++i;
    }
  }
}

TEST_CASE("near-degenerate shells merge for non-exact input") {
  const LatticeBasis b =
      LatticeBasis::from_doubles({{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0 + 1e-13}});
  REQUIRE_FALSE(b.exact);
  const auto t = enumerate_shells(b, 1.1);
  CHECK(t.approximate);
  REQUIRE(t.shells.size() == 1);  // q = 1 and q = (1 + 1e-13)^2 cluster
  CHECK(t.shells[0].count == 6);
}

TEST_CASE("cubic torus spectrum") {
  const Spectrum s = torus_spectrum(LatticeBasis::identity(3), 7.0);
  CHECK(s.descriptor.family == Family::torus);
  CHECK(s.descriptor.n == 3);
  CHECK(s.descriptor.volume == PiRational{Rational(1), 0});
  CHECK(s.descriptor.betti == std::vector<long long>{1, 3});
  CHECK_FALSE(s.approximate_shells);
  REQUIRE(s.lines.size() == 2);  // only the q = 1 shell fits below 7 < 2*pi*sqrt(2)
  CHECK(s.lines[0].lambda.str() == "-2*pi*sqrt(1)");
  CHECK(s.lines[0].multiplicity == 6);
  CHECK(s.lines[1].lambda.str() == "2*pi*sqrt(1)");
  CHECK(s.lines[1].multiplicity == 6);

  // wider window: shells q = 1, 2, 3, 4, 5 carry 6, 12, 8, 6, 24 vectors
  const Spectrum w = torus_spectrum(LatticeBasis::identity(3), 15.0);
  REQUIRE(w.lines.size() == 10);
  CHECK(counting(w, +1, 15.0) == 6 + 12 + 8 + 6 + 24);
  CHECK(counting(w, -1, 15.0) == 56);
  CHECK(symmetry_defect(w).empty());
}

TEST_CASE("five-dimensional torus spectrum") {
  // factor binom(4, 2)/2 = 3, so the q = 1 shell of Z^5 carries 3 * 10 = 30
  const Spectrum s = torus_spectrum(LatticeBasis::identity(5), 6.3);
  REQUIRE(s.lines.size() == 2);
  CHECK(s.lines[1].multiplicity == 30);
  CHECK(s.descriptor.betti == std::vector<long long>{1, 5, 10});
}

TEST_CASE("rescaled lattice shifts shells by the square of the factor") {
  const LatticeBasis doubled =
      LatticeBasis::from_strings({{"2", "0", "0"}, {"0", "2", "0"}, {"0", "0", "2"}});
  const Spectrum a = torus_spectrum(doubled, 7.0);
  const Spectrum b = torus_spectrum(LatticeBasis::identity(3), 14.0);
  REQUIRE(a.lines.size() == b.lines.size());
  for (std::size_t i = 0; i < a.lines.size(); ++i) {
    CHECK(a.lines[i].multiplicity == b.lines[i].multiplicity);
    CHECK(a.lines[i].lambda.sqrt_arg() * 4 == b.lines[i].lambda.sqrt_arg());
    CHECK(a.lines[i].lambda.sqrt_sign() == b.lines[i].lambda.sqrt_sign());
  }
  CHECK(a.descriptor.volume == PiRational{Rational(8), 0});
}

TEST_CASE("torus spectrum dimension checks") {
  CHECK_THROWS_AS(torus_spectrum(LatticeBasis::identity(2), 7.0), ValidationError);
  CHECK_THROWS_AS(torus_spectrum(LatticeBasis::identity(4), 7.0), ValidationError);
  CHECK_THROWS_AS(torus_spectrum(LatticeBasis::identity(1), 7.0), ValidationError);
  CHECK_THROWS_AS(torus_spectrum(LatticeBasis::identity(3), 0.0), ValidationError);
}

TEST_CASE("non-exact basis marks the spectrum approximate") {
  const LatticeBasis b = LatticeBasis::from_doubles(
      {{1.0 / 3.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  const Spectrum s = torus_spectrum(b, 7.0);
  CHECK(s.approximate_shells);
  CHECK(spectrum_to_json(s)["approximate_shells"] == true);
}
