#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "generators.hpp"
#include "lenstor/forms.hpp"

using namespace lenstor;
using lenstor::testing::Gen;

namespace {

Rational r(long n, long d = 1) { return Rational(BigInt(n), BigInt(d)); }

IntMatrix int_matrix(std::initializer_list<std::initializer_list<long>> rows) {
  std::vector<BigInt> entries;
  std::size_t cols = 0;
  for (const auto& row : rows) {
    cols = row.size();
    for (long v : row) entries.emplace_back(v);
  }
  return IntMatrix(rows.size(), cols, std::move(entries));
}

QuadraticFormQZ cyclic_form(std::int64_t p, long num, long den) {
  return QuadraticFormQZ(ResidueFunction::tabulate(FinAbGroup::cyclic(p), [&](const GroupElement& h) {
    const long n = h.residue(0);
    return qz_reduce(r(num * n * n, den));
  }));
}

BilinearFormQZ cyclic_bilinear(std::int64_t p, long num) {
  return BilinearFormQZ(FinAbGroup::cyclic(p), {qz_reduce(r(num, p))});
}

std::vector<long> in_32nds(const QuadraticFormQZ& q) {
  std::vector<long> out;
  for (const QZ& v : q.values().values()) out.push_back((v.representative() * Rational(32)).numerator().get_si());
  return out;
}

// Some generator u of Z/p with q(n u) = expected(n) for every n.
template <class F>
bool has_generator_with(const QuadraticFormQZ& q, std::int64_t p, F expected) {
  const FinAbGroup& g = q.group();
  for (std::int64_t u = 1; u < p; ++u) {
    if (std::gcd(u, p) != 1) continue;
    bool all = true;
    for (std::int64_t n = 0; n < p && all; ++n) all = q(g.reduce(std::vector<std::int64_t>{u * n})) == expected(n);
    if (all) return true;
  }
  return false;
}

BilinearFormQZ random_bilinear(Gen& gen, const FinAbGroup& g) {
  const auto n = g.invariant_factors();
  const std::size_t k = g.rank();
  std::vector<QZ> gram(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const std::int64_t d = std::gcd(n[i], n[j]);
      gram[i * k + j] = gram[j * k + i] = qz_reduce(r(static_cast<long>(gen.integer(0, d - 1)), d));
    }
  return BilinearFormQZ(g, std::move(gram));
}

}  // namespace

TEST_CASE("bilinear form construction") {
  const FinAbGroup z8 = FinAbGroup::cyclic(8);
  const BilinearFormQZ b(z8, {qz_reduce(r(3, 8))});
  const GroupElement x = z8.generator(0);
  CHECK(b(2 * x, 3 * x) == qz_reduce(r(18, 8)));
  CHECK((-b).gram(0, 0) == qz_reduce(r(5, 8)));
  CHECK_THROWS_AS(BilinearFormQZ(z8, {qz_reduce(r(1, 16))}), InvalidForm);
  const FinAbGroup g({2, 4});
  CHECK_THROWS_AS(BilinearFormQZ(g, {QZ(), qz_reduce(r(1, 4)), QZ(), QZ()}), InvalidForm);
  CHECK_THROWS_AS(BilinearFormQZ(g, {QZ(), qz_reduce(r(1, 2)), QZ(), QZ()}), InvalidForm);
}

TEST_CASE("delta_quadratic") {
  const FinAbGroup z5 = FinAbGroup::cyclic(5);
  CHECK(delta_quadratic(QuadraticFormQZ(ResidueFunction(z5))) == BilinearFormQZ::zero(z5));

  const BilinearFormQZ d8 = delta_quadratic(cyclic_form(8, -3, 16));
  CHECK(d8.gram(0, 0) == qz_reduce(r(5, 8)));

  const BilinearFormQZ d7 = delta_quadratic(cyclic_form(7, -2, 7));
  CHECK(d7.gram(0, 0) == qz_reduce(r(3, 7)));

  // A character has Delta = 0 but fails q(2x) = 4 q(x); n^2/16 on Z/4 has no
  // biadditive Delta.
  const QuadraticFormQZ linear(
      ResidueFunction::tabulate(FinAbGroup::cyclic(8), [](const GroupElement& h) { return qz_reduce(r(h.residue(0), 8)); }));
  CHECK_FALSE(linear.satisfies_quadratic_axioms());
  CHECK(delta_quadratic(linear) == BilinearFormQZ::zero(FinAbGroup::cyclic(8)));
  CHECK_THROWS_AS(delta_quadratic(cyclic_form(4, 1, 16)), NotQuadratic);
}

TEST_CASE("is_nonsingular") {
  CHECK(is_nonsingular(cyclic_bilinear(8, 3)));
  CHECK_FALSE(is_nonsingular(BilinearFormQZ::zero(FinAbGroup::cyclic(2))));
  CHECK_FALSE(is_nonsingular(BilinearFormQZ(FinAbGroup::cyclic(4), {qz_reduce(r(1, 2))})));
  CHECK(is_nonsingular(BilinearFormQZ::zero(FinAbGroup())));
}

TEST_CASE("hirzebruch_jung_expansion") {
  CHECK(hirzebruch_jung_expansion(8, 3) == std::vector<std::int64_t>{3, 3});
  CHECK(hirzebruch_jung_expansion(7, 2) == std::vector<std::int64_t>{4, 2});
  CHECK(hirzebruch_jung_expansion(9, 2) == std::vector<std::int64_t>{5, 2});
  CHECK(hirzebruch_jung_expansion(7, 1) == std::vector<std::int64_t>{7});
  CHECK(hirzebruch_jung_expansion(7, 6) == std::vector<std::int64_t>{2, 2, 2, 2, 2, 2});
  CHECK_THROWS_AS(hirzebruch_jung_expansion(8, 2), BadParameters);
  CHECK_THROWS_AS(hirzebruch_jung_expansion(1, 1), BadParameters);
  CHECK_THROWS_AS(hirzebruch_jung_expansion(5, 5), BadParameters);
}

TEST_CASE("lens_resolution") {
  const LatticeResolution a = lens_resolution(8, 3);
  CHECK(a.matrix() == int_matrix({{-3, 1}, {1, -3}}));
  CHECK(a.order() == 8);
  CHECK(lens_resolution(7, 2).matrix() == int_matrix({{-4, 1}, {1, -2}}));
  CHECK(lens_resolution(9, 2).matrix() == int_matrix({{-5, 1}, {1, -2}}));
  CHECK(lens_resolution(9, 2).order() == 9);
  CHECK_THROWS_AS(LatticeResolution(int_matrix({{1, 2}, {3, 4}})), BadParameters);
  CHECK_THROWS_AS(LatticeResolution(int_matrix({{1, 1}, {1, 1}})), SingularMatrix);
}

TEST_CASE("plumbing lattices present Z/p") {
  for (std::int64_t p = 2; p <= 40; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const LatticeResolution res = lens_resolution(p, q);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(evaluate_continued_fraction(res.continued_fraction()) == r(p, q));
      const SmithForm s = smith_normal_form(res.matrix());
      std::size_t nontrivial = 0;
      for (std::size_t i = 0; i < s.D.rows(); ++i)
        if (s.D(i, i) != 1) {
          ++nontrivial;
          CHECK(s.D(i, i) == p);
        }
      CHECK(nontrivial == 1);
    }
}

TEST_CASE("discriminant_form") {
  const DiscriminantForm unimodular = discriminant_form(LatticeResolution(int_matrix({{-1}})));
  CHECK(unimodular.group.order() == 1);
  CHECK(unimodular.quadratic.values().values()[0].is_zero());

  const DiscriminantForm d8 = discriminant_form(lens_resolution(8, 3));
  REQUIRE(d8.group == FinAbGroup::cyclic(8));
  CHECK(has_generator_with(d8.quadratic, 8, [](std::int64_t n) { return qz_reduce(r(-3 * n * n, 16)); }));
  const std::set<QZ> values(d8.quadratic.values().values().begin(), d8.quadratic.values().values().end());
  CHECK(values == std::set<QZ>{QZ(), qz_reduce(r(-3, 16)), qz_reduce(r(4, 16)), qz_reduce(r(5, 16))});

  const DiscriminantForm d7 = discriminant_form(lens_resolution(7, 2));
  REQUIRE(d7.group == FinAbGroup::cyclic(7));
  CHECK(has_generator_with(d7.quadratic, 7, [](std::int64_t n) { return qz_reduce(r(-2 * n * n, 7)); }));

  // The pairing is read off B^-1: the class of e1* pairs to (B^-1)_11.
  const GroupElement e1 = d8.project(std::vector<BigInt>{1, 0});
  CHECK(d8.bilinear(e1, e1) == qz_reduce(r(-3, 8)));
}

TEST_CASE("discriminant forms of random lattices are refinements") {
  Gen gen(31);
  int tested = 0;
  while (tested < 40) {
    const auto m = static_cast<std::size_t>(gen.integer(1, 3));
    IntMatrix b(m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i; j < m; ++j) b(i, j) = b(j, i) = BigInt(gen.integer(-4, 4));
    const BigInt det = determinant(b);
    if (det == 0 || abs(det) > 60) continue;
    ++tested;
    const DiscriminantForm d = discriminant_form(LatticeResolution(b));
    CHECK(d.group.order() == BigInt(abs(det)).get_si());
    CHECK(d.quadratic.satisfies_quadratic_axioms());
    CHECK(delta_quadratic(d.quadratic) == d.bilinear);
    CHECK(is_nonsingular(d.bilinear));
    for (std::size_t i = 0; i < d.group.rank(); ++i) {
      std::vector<BigInt> lift;
      for (std::size_t r = 0; r < m; ++r) lift.push_back(d.generator_lifts(r, i));
      CHECK(d.project(lift) == d.group.generator(i));
    }
  }
}

TEST_CASE("cyclic_refinement") {
  CHECK(cyclic_refinement(8, 3, -1) == cyclic_form(8, -3, 16));
  CHECK(cyclic_refinement(7, 4, -1) == cyclic_form(7, -2, 7));
  CHECK(cyclic_refinement(11, 5, 1).values()[0].is_zero());
  CHECK_THROWS_AS(cyclic_refinement(8, 2, 1), BadParameters);
  CHECK_THROWS_AS(cyclic_refinement(8, 3, 0), BadParameters);

  for (std::int64_t p = 2; p <= 30; ++p)
    for (std::int64_t a = 1; a < p; ++a) {
      if (std::gcd(a, p) != 1) continue;
      for (int sign : {1, -1}) {
        const QuadraticFormQZ q = cyclic_refinement(p, a, sign);
        CHECK(q.satisfies_quadratic_axioms());
        CHECK(delta_quadratic(q) == cyclic_bilinear(p, sign * a));
      }
    }
}

TEST_CASE("cyclic_refinement matches the plumbing discriminant form up to isometry of the pairing") {
  for (std::int64_t p = 2; p <= 25; ++p)
    for (std::int64_t q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      const DiscriminantForm d = discriminant_form(lens_resolution(p, q));
      const std::int64_t a = (Rational(p) * d.bilinear.gram(0, 0).representative()).numerator().get_si();
      const QuadraticFormQZ closed = cyclic_refinement(p, a, 1);
      CAPTURE(p);
      CAPTURE(q);
      CHECK(find_isometry(d.bilinear, delta_quadratic(closed)).has_value());
      // Same pairing, so the two refinements lie in one orbit.
      const auto orbit = refinement_orbit(closed);
      CHECK(std::find(orbit.begin(), orbit.end(), d.quadratic) != orbit.end());
    }
}

TEST_CASE("refinement_orbit") {
  CHECK(refinement_orbit(cyclic_form(7, -2, 7)).size() == 1);

  const auto orbit = refinement_orbit(cyclic_form(8, -3, 16));
  REQUIRE(orbit.size() == 2);
  CHECK(in_32nds(orbit[0]) == std::vector<long>{0, 26, 8, 10, 0, 10, 8, 26});
  CHECK(in_32nds(orbit[1]) == std::vector<long>{0, 10, 8, 26, 0, 26, 8, 10});

  const FinAbGroup v4({2, 2});
  CHECK(refinement_orbit(standard_refinement(BilinearFormQZ::zero(v4))).size() == 4);
}

TEST_CASE("standard_refinement and the orbit refine the same pairing") {
  Gen gen(32);
  for (int trial = 0; trial < 60; ++trial) {
    const FinAbGroup g = gen.group(48);
    const BilinearFormQZ b = random_bilinear(gen, g);
    const QuadraticFormQZ q = standard_refinement(b);
    CHECK(q.satisfies_quadratic_axioms());
    CHECK(delta_quadratic(q) == b);
    const auto orbit = refinement_orbit(q);
    CHECK(orbit.size() == two_torsion_characters(g).size());
    std::set<std::vector<QZ>> distinct;
    for (const auto& member : orbit) {
      CHECK(delta_quadratic(member) == b);
      distinct.insert({member.values().values().begin(), member.values().values().end()});
    }
    CHECK(distinct.size() == orbit.size());
  }
}

TEST_CASE("find_isometry") {
  // a/7 and a'/7 are isometric iff a/a' is a square mod 7.
  CHECK(find_isometry(cyclic_bilinear(7, 1), cyclic_bilinear(7, 2)).has_value());
  CHECK_FALSE(find_isometry(cyclic_bilinear(7, 1), cyclic_bilinear(7, 3)).has_value());
  CHECK_FALSE(find_isometry(cyclic_bilinear(8, 1), cyclic_bilinear(8, 3)).has_value());
  CHECK_FALSE(find_isometry(cyclic_bilinear(8, 1), cyclic_bilinear(7, 1)).has_value());

  const auto phi = find_isometry(cyclic_bilinear(7, 1), cyclic_bilinear(7, 2));
  REQUIRE(phi);
  CHECK(phi->is_bijective());
  const GroupElement x = phi->source().generator(0);
  CHECK(cyclic_bilinear(7, 2)((*phi)(x), (*phi)(x)) == qz_reduce(r(1, 7)));

  // x -> 3x exchanges the two refinements of 5/8 (9 = 1 mod 8 but not mod 16).
  const auto orbit = refinement_orbit(cyclic_form(8, -3, 16));
  const auto swap = find_isometry(orbit[0], orbit[1]);
  REQUIRE(swap);
  const GroupElement y = swap->source().generator(0);
  for (std::int64_t n = 0; n < 8; ++n) CHECK(orbit[1]((*swap)(n * y)) == orbit[0](n * y));

  // On Z/12 no automorphism does: u^2 = 1 mod 24 for every unit u.
  const auto orbit12 = refinement_orbit(cyclic_refinement(12, 5, 1));
  REQUIRE(orbit12.size() == 2);
  CHECK(find_isometry(orbit12[0], orbit12[0]).has_value());
  CHECK_FALSE(find_isometry(orbit12[0], orbit12[1]).has_value());
}
