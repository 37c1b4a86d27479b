#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slmc/core/fixtures.hpp"
#include "slmc/core/model_io.hpp"
#include "slmc/core/properties.hpp"

using namespace slmc;
namespace fx = slmc::fixtures;

namespace {

Element el(const SLAlgebra& alg, const char* text) { return parse_element(alg.space(), text); }
TensorElement tn(const SLAlgebra& alg, int dim, const char* text) { return parse_tensor(alg.space(), dim, text); }

Polynomial var(const MCSystem& sys, const std::string& name) {
  for (std::size_t i = 0; i < sys.names.size(); ++i)
    if (sys.names[i] == name) return Polynomial::variable(static_cast<int>(i));
  FAIL("no unknown named " << name);
  return {};
}

// Equations of the system keyed by "SYM[key]".
std::map<std::string, Polynomial> equations(const SLAlgebra& alg, const MCSystem& sys) {
  std::map<std::string, Polynomial> out;
  for (const auto& eq : sys.equations)
    out[alg.space()[eq.basis].symbol + "[" + render_key(sys.dim, eq.key) + "]"] = eq.poly;
  return out;
}

std::string monomial(int k) {
  if (k == 0) return "1";
  if (k == 1) return "t1";
  return "t1^" + std::to_string(k);
}

}  // namespace

TEST_CASE("tensor brackets on constants and the differential") {
  const SLAlgebra a2 = fx::a2();
  const auto x = TensorElement::constant(2, el(a2, "1 x"));
  const auto y = TensorElement::constant(2, el(a2, "1 y"));
  CHECK(tensor_bracket(a2, std::vector<TensorElement>{x, y}) == TensorElement::constant(2, el(a2, "1 z")));

  // dv (x) w + (-1)^|v| v (x) dw with |h| = -1
  const SLAlgebra c = fx::contractible();
  CHECK(tensor_differential(c, tn(c, 1, "(1 t1) h")) == tn(c, 1, "(1 t1) e + (-1 dt1) h"));
  CHECK(tensor_differential(c, tn(c, 1, "(1 t1^2) e")) == tn(c, 1, "(2 t1 dt1) e"));
}

TEST_CASE("forms pass odd vectors with a sign") {
  const SLAlgebra o = fx::odd();
  // dt1 moves right past the odd vector v
  CHECK(tensor_bracket(o, std::vector<TensorElement>{tn(o, 1, "(1 dt1) u"), tn(o, 1, "(1) v")}) ==
        tn(o, 1, "(-1 dt1) c"));
  CHECK(tensor_bracket(o, std::vector<TensorElement>{tn(o, 1, "(1) u"), tn(o, 1, "(1 dt1) v")}) ==
        tn(o, 1, "(1 dt1) c"));
  // {u dt1, v dt2} = -c dt1 dt2, and d(c (x) g) = -c (x) dg, so with
  // g = -t1 dt2 the curvature -c dt1 dt2 - c dg vanishes.
  CHECK(tensor_curvature(o, tn(o, 2, "(1 dt1) u + (1 dt2) v + (-1 t1 dt2) c")).is_zero());
  CHECK(tensor_curvature(o, tn(o, 2, "(1 dt1) u + (1 dt2) v + (1 t1 dt2) c")) == tn(o, 2, "(-2 dt1 dt2) c"));
}

TEST_CASE("curvature of simplices") {
  const SLAlgebra a2 = fx::a2();
  CHECK(tensor_curvature(a2, TensorElement::constant(1, el(a2, "1 x"))).is_zero());
  // f x + g y  ->  f' dt x + g' dt y + f g z
  Random rng(73);
  for (int trial = 0; trial < 20; ++trial) {
    const PolyForm f = rng.form(1, 3, 0), g = rng.form(1, 3, 0);
    TensorElement x(1);
    x.add(0, f);
    x.add(1, g);
    TensorElement expected(1);
    expected.add(0, d(f));
    expected.add(1, d(g));
    expected.add(2, wedge(f, g));
    CHECK(tensor_curvature(a2, x) == expected);
  }
  const SLAlgebra ab = fx::abelian();
  for (int trial = 0; trial < 10; ++trial) {
    TensorElement x(1);
    x.add(0, rng.form(1, 3, 0));
    x.add(2, rng.form(1, 3, 0));
    CHECK(tensor_curvature(ab, x) == tensor_differential(ab, x));
  }
  CHECK_THROWS_AS(tensor_curvature(a2, TensorElement::constant(1, el(a2, "1 z"))), InputError);
}

TEST_CASE("simplicial structure on MC simplices") {
  const SLAlgebra a2 = fx::a2();
  const auto alpha = TensorElement::constant(0, el(a2, "2 x"));
  const auto line = simplicial_degeneracy(alpha, 0);
  CHECK(line == TensorElement::constant(1, el(a2, "2 x")));
  CHECK(simplicial_face(line, 0) == alpha);
  CHECK(simplicial_face(line, 1) == alpha);

  Random rng(79);
  for (const auto& alg : {fx::contractible(), fx::odd(), fx::rich(), fx::transported()}) {
    const auto s = random_mc_simplex(alg, 2, 3, rng);
    REQUIRE(s);
    CHECK(is_mc_simplex(alg, *s));
    for (int i = 0; i <= 2; ++i) CHECK(is_mc_simplex(alg, simplicial_face(*s, i)));
    for (int j = 0; j <= 2; ++j) CHECK(is_mc_simplex(alg, simplicial_degeneracy(*s, j)));
    CHECK(simplicial_face(simplicial_face(*s, 2), 0) == simplicial_face(simplicial_face(*s, 0), 1));
  }
}

TEST_CASE("functoriality of MC maps") {
  const InftyMorphism phi = fx::transport_phi();
  const SLAlgebra& t = phi.source();
  Random rng(83);
  const auto p = TensorElement::constant(0, el(t, "1 a"));
  CHECK(mc_map(identity_morphism(t), p) == p);
  CHECK(mc_map(phi, p).as_element() == pushforward(phi, el(t, "1 a")));
  for (int trial = 0; trial < 5; ++trial) {
    const auto s = random_mc_simplex(t, 1, 3, rng);
    REQUIRE(s);
    const auto image = mc_map(phi, *s);
    CHECK(is_mc_simplex(phi.target(), image));
    for (int i = 0; i <= 1; ++i) CHECK(mc_map(phi, simplicial_face(*s, i)) == simplicial_face(image, i));
    CHECK(mc_map(fx::transport_psi(), image) == *s);
  }
}

TEST_CASE("shift isomorphisms") {
  const SLAlgebra c = fx::contractible();
  const Element alpha = el(c, "3 e");
  const auto zero = TensorElement(0);
  CHECK(shift_iso(c, Element{}, tn(c, 1, "(1 t1) e + (-1 dt1) h")) == tn(c, 1, "(1 t1) e + (-1 dt1) h"));
  CHECK(shift_iso(c, alpha, zero) == TensorElement::constant(0, alpha));
  CHECK(shift_iso_inverse(c, alpha, shift_iso(c, alpha, zero)) == zero);

  // curv(a + b) = 0 iff b is MC in L^a
  const SLAlgebra a2 = fx::a2();
  const Element a = el(a2, "1 x");
  const SLAlgebra ax = twist_algebra(a2, a);
  Random rng(89);
  for (int trial = 0; trial < 30; ++trial) {
    const Element b = rng.element(a2.space(), 0);
    CHECK(is_mc(a2, a + b) == is_mc(ax, b));
  }
  CHECK_THROWS_AS(shift_iso(a2, el(a2, "1 x + 1 y"), TensorElement(0)), NotMaurerCartan);
}

TEST_CASE("enhanced morphisms on simplices") {
  const SLAlgebra c = fx::contractible();
  const auto s = tn(c, 1, "(2 + 1 t1) e + (-1 dt1) h");
  REQUIRE(is_mc_simplex(c, s));
  CHECK(mc_enhanced(identity_enhanced(c), s) == s);

  // Hom(0, L) = MC(L): (alpha, 0) sends the unique point to alpha
  const SLAlgebra a2 = fx::a2();
  for (const char* point : {"0", "1 x", "-2/3 y"}) {
    const Element alpha = el(a2, point);
    const EnhancedMorphism e("pt", alpha, zero_morphism(zero_algebra(), twist_algebra(a2, alpha)), a2);
    CHECK(mc_enhanced(e, TensorElement(0)).as_element() == alpha);
  }

  Random rng(97);
  for (int trial = 0; trial < 5; ++trial) {
    const auto f = random_x_endomorphism(rng, "f");
    const auto g = random_x_endomorphism(rng, "g");
    const auto x = random_mc_simplex(f.source(), 1, 2, rng);
    REQUIRE(x);
    CHECK(mc_enhanced(compose_enhanced(g, f), *x) == mc_enhanced(g, mc_enhanced(f, *x)));
  }
}

TEST_CASE("MC system of A2 at a point") {
  const SLAlgebra a2 = fx::a2();
  const MCSystem sys = mc_system(a2, 0, 0);
  REQUIRE(sys.names == std::vector<std::string>{"x[1]", "y[1]"});
  // s x + t y is MC iff s t = 0
  const auto eqs = equations(a2, sys);
  REQUIRE(eqs.size() == 1);
  CHECK(eqs.at("z[1]") == var(sys, "x[1]") * var(sys, "y[1]"));
  CHECK(sys.accepts({Rational(0), Rational(5)}));
  CHECK_FALSE(sys.accepts({Rational(1), Rational(5)}));
}

TEST_CASE("MC system of A2 on the 1-simplex") {
  // f = sum f_k t^k, g = sum g_k t^k with k <= 3:
  //   x[t^k dt]: (k+1) f_{k+1} = 0, y likewise, z[t^m]: sum_{i+j=m} f_i g_j = 0
  const SLAlgebra a2 = fx::a2();
  const MCSystem sys = mc_system(a2, 1, 3);
  std::map<std::string, Polynomial> expected;
  for (int k = 0; k < 3; ++k) {
    const std::string dt = k == 0 ? "dt1" : monomial(k) + " dt1";
    expected["x[" + dt + "]"] = Rational(k + 1) * var(sys, "x[" + monomial(k + 1) + "]");
    expected["y[" + dt + "]"] = Rational(k + 1) * var(sys, "y[" + monomial(k + 1) + "]");
  }
  for (int m = 0; m <= 6; ++m) {
    Polynomial p;
    for (int i = 0; i <= 3; ++i)
      if (m - i >= 0 && m - i <= 3) p += var(sys, "x[" + monomial(i) + "]") * var(sys, "y[" + monomial(m - i) + "]");
    expected["z[" + monomial(m) + "]"] = p;
  }
  CHECK(equations(a2, sys) == expected);
  CHECK(sys.unknowns.size() == 8);
  // constants with f g = 0 are accepted, anything else is not
  std::vector<Rational> v(8, Rational(0));
  const auto at = [&](const std::string& name) {
    for (std::size_t i = 0; i < sys.names.size(); ++i)
      if (sys.names[i] == name) return i;
    return sys.names.size();
  };
  v[at("x[1]")] = 2;
  CHECK(sys.accepts(v));
  v[at("y[1]")] = 1;
  CHECK_FALSE(sys.accepts(v));
  v[at("y[1]")] = 0;
  v[at("x[t1]")] = 1;
  CHECK_FALSE(sys.accepts(v));
}

TEST_CASE("MC system of an abelian algebra is linear") {
  const SLAlgebra ab = fx::abelian();
  for (int n = 0; n <= 2; ++n) {
    const MCSystem sys = mc_system(ab, n, 2);
    for (const auto& eq : sys.equations) CHECK(eq.poly.degree() <= 1);
    Random rng(101);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<Rational> v;
      for (std::size_t i = 0; i < sys.unknowns.size(); ++i) v.push_back(rng.coefficient());
      CHECK(sys.accepts(v) == tensor_differential(ab, sys.element(v)).is_zero());
    }
  }
}

TEST_CASE("lifting along the filtration") {
  const SLAlgebra a2 = fx::a2();
  const auto mc = TensorElement::constant(1, el(a2, "1 x"));
  const LiftResult same = lift_to_mc(a2, mc, 2);
  REQUIRE(same.ok);
  CHECK(same.value == mc);
  // the weight-2 stage has to kill s t z using degree-0 unknowns only
  Random rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const Rational s = rng.coefficient(), t = rng.coefficient();
    const auto seed = TensorElement::constant(0, s * el(a2, "1 x") + t * el(a2, "1 y"));
    const LiftResult r = lift_mc(a2, seed, 2, 2);
    CHECK(r.ok == (s * t == 0));
    if (!r.ok) CHECK(r.obstruction == TensorElement::constant(0, (s * t) * el(a2, "1 z")));
  }
  const SLAlgebra ab = fx::abelian();
  for (int trial = 0; trial < 10; ++trial) {
    TensorElement seed(1);
    seed.add(0, rng.form(1, 2, 0));
    CHECK(lift_to_mc(ab, seed, 3).ok);
  }
}

TEST_CASE("horn filling") {
  const SLAlgebra c = fx::contractible();
  const auto p = TensorElement::constant(0, el(c, "2 e"));
  const LiftResult l1 = fill_horn(c, 1, 0, {{1, p}}, 2);
  REQUIRE(l1.ok);
  CHECK(l1.value == simplicial_degeneracy(p, 0));

  const auto edge = simplicial_degeneracy(p, 0);
  const LiftResult l2 = fill_horn(c, 2, 1, {{0, edge}, {2, edge}}, 2);
  REQUIRE(l2.ok);
  CHECK(l2.value == simplicial_degeneracy(edge, 0));

  // Two given edges of a random triangle; the filler matches them exactly.
  Random rng(107);
  for (const auto& alg : {fx::contractible(), fx::odd(), fx::rich()}) {
    const auto s = random_mc_simplex(alg, 2, 2, rng);
    REQUIRE(s);
    for (int i = 0; i <= 2; ++i) {
      std::map<int, TensorElement> faces;
      for (int j = 0; j <= 2; ++j)
        if (j != i) faces.emplace(j, simplicial_face(*s, j));
      const LiftResult r = fill_horn(alg, 2, i, faces, 3);
      REQUIRE(r.ok);
      CHECK(is_mc_simplex(alg, r.value));
      for (const auto& [j, x] : faces) CHECK(simplicial_face(r.value, j) == x);
    }
  }
  CHECK_THROWS_AS(fill_horn(c, 2, 1, {{0, edge}}, 2), InputError);
  CHECK_THROWS_AS(fill_horn(c, 2, 1, {{0, edge}, {2, tn(c, 1, "(1) e")}}, 2), InputError);
}

TEST_CASE("connected components") {
  // e f + h w is MC iff w = -df; the path from c0 e to c1 e is linear
  const SLAlgebra c = fx::contractible();
  const LiftResult path = connect_points(c, el(c, "1/2 e"), el(c, "3 e"), 1);
  REQUIRE(path.ok);
  const PolyForm f = path.value.component(0);
  CHECK(path.value.component(1) == -d(f));
  CHECK(simplicial_face(path.value, 1).as_element() == el(c, "1/2 e"));
  CHECK(simplicial_face(path.value, 0).as_element() == el(c, "3 e"));

  const Pi0Result one = pi0(c, {Element{}, el(c, "1 e"), el(c, "-5/2 e")}, 1);
  CHECK(one.classes() == 1);
  CHECK(one.certificates.size() == 2);
  CHECK(pi0(c, {el(c, "1 e")}, 1).classes() == 1);

  // An MC 1-simplex of A2 has d f = d g = 0 in weight 1, so its endpoints agree.
  const SLAlgebra a2 = fx::a2();
  for (int D = 1; D <= 6; ++D) {
    const Pi0Result r = pi0(a2, {el(a2, "1 x"), el(a2, "1 y"), Element{}}, D);
    CHECK(r.classes() == 3);
    CHECK(r.certificates.empty());
  }
  CHECK_THROWS_AS(pi0(a2, {el(a2, "1 x + 1 y")}, 1), InputError);
}
