#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slmc/core/errors.hpp"
#include "slmc/core/model_io.hpp"
#include "slmc/core/properties.hpp"

using namespace slmc;

namespace {

PolyForm f(int dim, const char* text) { return parse_form(dim, text); }

int sign_of(int a, int b) { return (a * b) % 2 == 0 ? 1 : -1; }

// Value of a 0-form at t = (t_1, ..., t_n).
Rational evaluate(const PolyForm& a, const std::vector<Rational>& t) {
  Rational total = 0;
  for (const auto& [key, c] : a.terms()) {
    REQUIRE(key.dt == 0u);
    Rational term = c;
    for (std::size_t i = 0; i < key.exponents.size(); ++i)
      for (int e = 0; e < key.exponents[i]; ++e) term *= t[i];
    total += term;
  }
  return total;
}

// Random point of the n-simplex as barycentric (u_0, ..., u_n).
std::vector<Rational> random_point(Random& rng, int n) {
  std::vector<Rational> u;
  Rational sum = 0;
  for (int i = 0; i <= n; ++i) {
    Rational r(1 + rng.below(7), 1 + rng.below(5));
    r.canonicalize();
    u.push_back(r);
    sum += r;
  }
  for (auto& r : u) r /= sum;
  return u;
}

std::vector<Rational> coordinates(const std::vector<Rational>& bary) { return {bary.begin() + 1, bary.end()}; }

}  // namespace

TEST_CASE("wedge and differential on monomials") {
  CHECK(wedge(f(1, "1 t1"), f(1, "1 dt1")) == f(1, "1 t1 dt1"));
  CHECK(wedge(f(1, "1 dt1"), f(1, "1 dt1")).is_zero());
  CHECK(wedge(f(2, "1 dt1"), f(2, "1 dt2")) == -wedge(f(2, "1 dt2"), f(2, "1 dt1")));
  CHECK(d(f(1, "1 t1^2")) == f(1, "2 t1 dt1"));
  CHECK(d(PolyForm::constant(2, 5)).is_zero());
  CHECK(d(f(2, "1 t1 t2 dt1")) == f(2, "-1 t1 dt1 dt2"));
  CHECK(d(f(2, "1 t1 t2 dt1")) == wedge(f(2, "1 t1"), wedge(f(2, "1 dt2"), f(2, "1 dt1"))));
  CHECK(render(f(1, "3/2 t1^2 dt1")) == "3/2 t1^2 dt1");
  CHECK(dt_wedge_sign(0b10, 0b01) == -1);
  CHECK(dt_wedge_sign(0b01, 0b01) == 0);
  CHECK_THROWS_AS(wedge(f(1, "1 t1^4"), f(1, "1 t1^3"), 6), ResourceError);
}

TEST_CASE("faces on the 1-simplex") {
  // face i sets the i-th barycentric coordinate to 0, and t_0 = 1 - t_1
  CHECK(face(f(1, "1 t1"), 0) == PolyForm::constant(0, 1));
  CHECK(face(f(1, "1 t1"), 1).is_zero());
  CHECK(face(f(1, "1 dt1"), 0).is_zero());
  CHECK(face(f(1, "1 dt1"), 1).is_zero());
  CHECK(face(f(2, "1 t1"), 0) == f(1, "1 + -1 t1"));
  CHECK(degeneracy(PolyForm::constant(1, 3), 0) == PolyForm::constant(2, 3));
  CHECK_THROWS_AS(face(f(1, "1 t1"), 2), InputError);
  CHECK_THROWS_AS(face(PolyForm::constant(0, 1), 0), InputError);
}

TEST_CASE("faces and degeneracies agree with pointwise pullback") {
  Random rng(61);
  for (int n = 1; n <= 3; ++n)
    for (int trial = 0; trial < 30; ++trial) {
      const PolyForm a = rng.form(n, 4, 0);
      const auto u = random_point(rng, n - 1);
      for (int i = 0; i <= n; ++i) {
        std::vector<Rational> inserted = u;
        inserted.insert(inserted.begin() + i, Rational(0));
        CHECK(evaluate(face(a, i), coordinates(u)) == evaluate(a, coordinates(inserted)));
      }
      const auto v = random_point(rng, n + 1);
      for (int j = 0; j <= n; ++j) {
        std::vector<Rational> merged = v;
        merged[static_cast<std::size_t>(j)] += merged[static_cast<std::size_t>(j) + 1];
        merged.erase(merged.begin() + j + 1);
        CHECK(evaluate(degeneracy(a, j), coordinates(v)) == evaluate(a, coordinates(merged)));
      }
    }
}

TEST_CASE("dg algebra identities on random forms") {
  Random rng(67);
  int forms = 0;
  for (int n = 0; n <= 3; ++n)
    for (int trial = 0; trial < 40; ++trial) {
      const int pa = n == 0 ? 0 : rng.below(n + 1);
      const int pb = n == 0 ? 0 : rng.below(n + 1);
      const PolyForm a = rng.form(n, 3, pa), b = rng.form(n, 3, pb);
      forms += 2;
      CHECK(d(d(a)).is_zero());
      CHECK(d(wedge(a, b)) == wedge(d(a), b) + Rational(sign_of(pa, 1)) * wedge(a, d(b)));
      CHECK(wedge(a, b) == Rational(sign_of(pa, pb)) * wedge(b, a));
      if (n >= 1)
        for (int i = 0; i <= n; ++i) {
          CHECK(face(d(a), i) == d(face(a, i)));
          CHECK(face(wedge(a, b), i) == wedge(face(a, i), face(b, i)));
        }
      for (int j = 0; j <= n; ++j) {
        CHECK(degeneracy(d(a), j) == d(degeneracy(a, j)));
        CHECK(degeneracy(wedge(a, b), j) == wedge(degeneracy(a, j), degeneracy(b, j)));
      }
    }
  CHECK(forms >= 100);
}

TEST_CASE("simplicial identities") {
  Random rng(71);
  for (int n = 0; n <= 3; ++n)
    for (int trial = 0; trial < 25; ++trial) {
      const PolyForm a = rng.form(n, 6 - n, n == 0 ? 0 : rng.below(n + 1));
      for (int j = 0; j <= n; ++j) {
        CHECK(face(degeneracy(a, j), j) == a);
        CHECK(face(degeneracy(a, j), j + 1) == a);
        for (int i = 0; i <= n + 1; ++i) {
          if (i < j) CHECK(face(degeneracy(a, j), i) == degeneracy(face(a, i), j - 1));
          if (i > j + 1) CHECK(face(degeneracy(a, j), i) == degeneracy(face(a, i - 1), j));
        }
        for (int i = 0; i <= j; ++i) CHECK(degeneracy(degeneracy(a, j), i) == degeneracy(degeneracy(a, i), j + 1));
      }
      if (n >= 2)
        for (int j = 0; j <= n; ++j)
          for (int i = 0; i < j; ++i) CHECK(face(face(a, j), i) == face(face(a, i), j - 1));
    }
}

TEST_CASE("form basis sizes") {
  // monomials of degree <= 2 in two variables: 6; times the two 1-form generators
  CHECK(form_basis(2, 2, 0).size() == 6);
  CHECK(form_basis(2, 2, 1).size() == 12);
  CHECK(form_basis(2, 2, 2).size() == 6);
  CHECK(form_basis(0, 3, 0).size() == 1);
}
