#include <doctest.h>

#include <sstream>

#include "liesys/errors.hpp"
#include "liesys/registry.hpp"
#include "support.hpp"

using namespace liesys;
using testing_support::random_vec;
using testing_support::series_exp;

namespace {

const StructureConstants& sc_of(const std::string& key) { return find_algebra(key).constants; }

Vec basis(int r, std::initializer_list<int> one_based) {
  Vec v = Vec::Zero(r);
  for (int i : one_based) v(i - 1) = 1.0;
  return v;
}

}  // namespace

TEST_CASE("every builtin algebra is antisymmetric and satisfies Jacobi") {
  CHECK(builtin_algebras().size() >= 8);
  for (const auto& e : builtin_algebras()) {
    INFO(e.key);
    const auto rep = check_consistency(e.constants);
    CHECK(rep.ok());
    CHECK(rep.max_antisymmetry < 1e-12);
    CHECK(rep.max_jacobi < 1e-12);
  }
}

TEST_CASE("hsp2 Jacobi identity checked by brute force") {
  // Independent triple loop over basis elements using the bracket table only.
  const auto& sc = sc_of("hsp2");
  const int r = sc.dim();
  double worst = 0.0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b)
      for (int c = 0; c < r; ++c) {
        const Vec x = basis_vector(r, a), y = basis_vector(r, b), z = basis_vector(r, c);
        const Vec j = bracket(x, bracket(y, z, sc), sc) + bracket(y, bracket(z, x, sc), sc) +
                      bracket(z, bracket(x, y, sc), sc);
        worst = std::max(worst, j.norm());
      }
  CHECK(worst < 1e-14);
}

TEST_CASE("a broken table reports Jacobi and antisymmetry violations") {
  StructureConstants sc("broken", 3);
  sc.set_bracket(0, 1, 2, 1.0);
  sc.set_bracket(1, 2, 0, 1.0);
  sc.set_bracket(0, 2, 0, 1.0);
  sc.set_raw(2, 1, 0, 0.5);
  const auto rep = check_consistency(sc);
  CHECK_FALSE(rep.ok());
  CHECK(rep.max_antisymmetry > 0.1);
  bool saw_antisym = false;
  for (const auto& v : rep.violations)
    saw_antisym |= v.kind == ConsistencyViolation::Kind::Antisymmetry;
  CHECK(saw_antisym);
}

TEST_CASE("ad matrices") {
  SUBCASE("h3 centre has zero ad") { CHECK(ad_matrix(2, sc_of("h3")).norm() == 0.0); }
  SUBCASE("ad(a_b) e_b vanishes") {
    for (const auto& e : builtin_algebras())
      for (int b = 0; b < e.constants.dim(); ++b)
        CHECK((ad_matrix(b, e.constants) * basis_vector(e.constants.dim(), b)).norm() == 0.0);
  }
  SUBCASE("g_eps(1): ad(a2) a3 = a1") {
    const Vec y = ad_matrix(1, sc_of("g_eps(1)")) * basis_vector(3, 2);
    CHECK(y(0) == doctest::Approx(1.0));
    CHECK(std::abs(y(1)) + std::abs(y(2)) == 0.0);
  }
  SUBCASE("index out of range throws") {
    CHECK_THROWS_AS(ad_matrix(3, sc_of("h3")), IndexOutOfRange);
    CHECK_THROWS_AS(ad_matrix(-1, sc_of("h3")), IndexOutOfRange);
  }
  SUBCASE("ad is a representation on random pairs") {
    std::mt19937_64 rng(7);
    for (const auto& e : builtin_algebras()) {
      const int r = e.constants.dim();
      double worst = 0.0;
      for (int k = 0; k < 100; ++k) {
        const Vec x = random_vec(rng, r), y = random_vec(rng, r);
        const Mat ax = ad_matrix(x, e.constants), ay = ad_matrix(y, e.constants);
        worst = std::max(worst, (ad_matrix(bracket(x, y, e.constants), e.constants) -
                                 (ax * ay - ay * ax))
                                    .norm());
      }
      INFO(e.key);
      CHECK(worst < 1e-10);
    }
  }
}

TEST_CASE("exp_ad") {
  SUBCASE("v = 0 gives the identity") {
    CHECK((exp_ad(0.0, 1, sc_of("se2")) - Mat::Identity(3, 3)).norm() == 0.0);
  }
  SUBCASE("h3: nilpotent truncation equals the series") {
    const auto& sc = sc_of("h3");
    for (double v : {-3.0, 0.4, 2.5}) {
      const Mat expect = series_exp(-v * ad_matrix(0, sc));
      const Mat got = exp_ad(v, 0, sc);
      CHECK((got - expect).norm() < 1e-15);
      CHECK((got - (Mat::Identity(3, 3) - v * ad_matrix(0, sc))).norm() == 0.0);
    }
  }
  SUBCASE("se2: a1 rotates span{a2,a3} by v") {
    const auto& sc = sc_of("se2");
    for (double v : {-2.0, 0.3, 1.7}) {
      const Mat got = exp_ad(v, 0, sc);
      CHECK((got - series_exp(-v * ad_matrix(0, sc))).norm() < 1e-13);
      // exp(-v ad a1) a2 = cos v a2 + sin v a3 for [a1,a2]=a3, [a1,a3]=-a2.
      CHECK(got(1, 1) == doctest::Approx(std::cos(v)).epsilon(1e-14));
      CHECK(got(2, 1) == doctest::Approx(-std::sin(v)).epsilon(1e-14));
      CHECK(got(0, 0) == doctest::Approx(1.0));
    }
  }
  SUBCASE("exp_ad(v) exp_ad(-v) = I for |v| <= 10") {
    for (const auto& e : builtin_algebras()) {
      const int r = e.constants.dim();
      for (int b = 0; b < r; ++b)
        for (double v : {-10.0, -3.3, 0.7, 5.0, 10.0}) {
          const Mat p = exp_ad(v, b, e.constants) * exp_ad(-v, b, e.constants);
          INFO(e.key << " b=" << b << " v=" << v);
          CHECK((p - Mat::Identity(r, r)).norm() / std::max(1.0, exp_ad(v, b, e.constants).norm()) <
                1e-12);
        }
    }
  }
}

TEST_CASE("solvability") {
  auto dims = [](const std::string& key) { return is_solvable(sc_of(key)).dims; };
  CHECK(is_solvable(sc_of("h3")).solvable);
  CHECK(dims("h3") == std::vector<int>{3, 1, 0});
  CHECK(is_solvable(sc_of("se2")).solvable);
  CHECK(is_solvable(sc_of("h3-ext4")).solvable);
  CHECK(is_solvable(sc_of("h3-classical")).solvable);
  CHECK(is_solvable(sc_of("r2")).solvable);
  CHECK(dims("r2") == std::vector<int>{2, 0});
  CHECK(is_solvable(sc_of("g_eps(0)")).solvable);
  CHECK_FALSE(is_solvable(sc_of("sl2")).solvable);
  CHECK(dims("sl2").at(0) == 3);
  CHECK(dims("sl2").at(1) == 3);
  CHECK_FALSE(is_solvable(sc_of("g_eps(1)")).solvable);
  CHECK_FALSE(is_solvable(sc_of("g_eps(-1)")).solvable);
  CHECK_FALSE(is_solvable(sc_of("g5")).solvable);

  Mat sub(5, 3);
  sub << basis(5, {1}), basis(5, {4}), basis(5, {5});
  CHECK(is_solvable(sc_of("g5"), sub).solvable);
}

TEST_CASE("generated subalgebra") {
  const auto& se2 = sc_of("se2");
  const auto& h3 = sc_of("h3");
  CHECK(generated_subalgebra({basis(3, {1}), basis(3, {2})}, se2).cols() == 3);
  CHECK(generated_subalgebra({basis(3, {1}), basis(3, {2})}, h3).cols() == 3);
  const Mat centre = generated_subalgebra({basis(3, {3})}, h3);
  CHECK(centre.cols() == 1);
  CHECK(std::abs(centre(2, 0)) == doctest::Approx(1.0));
  CHECK(generated_subalgebra({basis(3, {1})}, h3).cols() == 1);

  SUBCASE("closure is idempotent") {
    for (const auto& e : builtin_algebras()) {
      const int r = e.constants.dim();
      std::mt19937_64 rng(11);
      const Mat s = generated_subalgebra({random_vec(rng, r)}, e.constants);
      std::vector<Vec> cols;
      for (int k = 0; k < s.cols(); ++k) cols.push_back(s.col(k));
      const Mat again = generated_subalgebra(cols, e.constants);
      CHECK(again.cols() == s.cols());
      Mat both(r, s.cols() + again.cols());
      both << s, again;
      CHECK(numerical_rank(both) == s.cols());
    }
  }
}

TEST_CASE("algebra definition files") {
  SUBCASE("round trip of every builtin") {
    for (const auto& e : builtin_algebras()) {
      std::istringstream in(format_algebra_definition(e));
      const auto parsed = parse_algebra_definitions(in);
      REQUIRE(parsed.size() == 1);
      CHECK(parsed[0].key == e.key);
      CHECK(parsed[0].default_order == e.default_order);
      const int r = e.constants.dim();
      for (int g = 0; g < r; ++g)
        for (int a = 0; a < r; ++a)
          for (int b = 0; b < r; ++b) CHECK(parsed[0].constants(g, a, b) == e.constants(g, a, b));
    }
  }
  SUBCASE("duplicates rejected with line numbers") {
    std::istringstream in("name x\ndim 3\n1 2 3 1.0\n1 2 3 2.0\n");
    try {
      parse_algebra_definitions(in);
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 4);
    }
  }
  SUBCASE("unknown registry key lists valid keys") {
    try {
      find_algebra("so3");
      FAIL("expected UnknownKey");
    } catch (const UnknownKey& e) {
      CHECK(std::string(e.what()).find("se2") != std::string::npos);
    }
  }
}
