#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "slmc/core/fixtures.hpp"
#include "slmc/core/model_io.hpp"
#include "slmc/core/properties.hpp"

using namespace slmc;
namespace fx = slmc::fixtures;

namespace {

Element el(const SLAlgebra& alg, const char* text) { return parse_element(alg.space(), text); }

// Generalized Jacobi expression summed over all of S_m with weight
// 1/(k!(m-k)!) instead of over unshuffles.
Element relation_by_permutations(const SLAlgebra& alg, const SymWord& word) {
  const auto& s = alg.space();
  const int m = static_cast<int>(word.length());
  std::vector<int> deg;
  for (int f : word.factors) deg.push_back(s.degree(f));
  Element total;
  Permutation p(static_cast<std::size_t>(m));
  std::iota(p.begin(), p.end(), 0);
  do {
    std::vector<int> arranged(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) arranged[static_cast<std::size_t>(p[static_cast<std::size_t>(i)])] = word.factors[static_cast<std::size_t>(i)];
    const int sign = koszul_sign(p, deg);
    for (int k = 1; k <= m; ++k) {
      std::vector<Element> inner;
      for (int i = 0; i < k; ++i) inner.push_back(Element::basis(arranged[static_cast<std::size_t>(i)]));
      std::vector<Element> outer{eval_bracket(alg, inner)};
      for (int i = k; i < m; ++i) outer.push_back(Element::basis(arranged[static_cast<std::size_t>(i)]));
      const Rational w = Rational(sign) / (factorial(static_cast<unsigned>(k)) * factorial(static_cast<unsigned>(m - k)));
      total += w * eval_bracket(alg, outer);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  return total;
}

Element curvature_by_powers(const SLAlgebra& alg, const Element& a) {
  Element total;
  for (int m = 1; m <= alg.max_arity(); ++m) {
    const std::vector<Element> args(static_cast<std::size_t>(m), a);
    total += Rational(1) / factorial(static_cast<unsigned>(m)) * eval_bracket(alg, args);
  }
  return total;
}

}  // namespace

TEST_CASE("brackets of the A2 fixture") {
  const SLAlgebra a2 = fx::a2();
  CHECK(eval_bracket(a2, std::vector<Element>{el(a2, "1 x"), el(a2, "1 y")}) == el(a2, "1 z"));
  CHECK(eval_bracket(a2, std::vector<Element>{el(a2, "1 y"), el(a2, "1 x")}) == el(a2, "1 z"));
  CHECK(eval_bracket(a2, std::vector<Element>{Element{}, el(a2, "1 y")}).is_zero());
  CHECK(eval_bracket(a2, std::vector<Element>{el(a2, "2 x + 1 y"), el(a2, "3 y")}) == el(a2, "6 z"));
  CHECK(eval_bracket(a2, std::vector<Element>{el(a2, "1 x")}).is_zero());
}

TEST_CASE("odd vectors bracket antisymmetrically") {
  const SLAlgebra o = fx::odd();
  CHECK(eval_bracket(o, std::vector<Element>{el(o, "1 u"), el(o, "1 v")}) == el(o, "1 c"));
  CHECK(eval_bracket(o, std::vector<Element>{el(o, "1 v"), el(o, "1 u")}) == el(o, "-1 c"));
  CHECK(eval_bracket(o, std::vector<Element>{el(o, "1 u"), el(o, "1 u")}).is_zero());
}

TEST_CASE("coderivation on short words") {
  const SLAlgebra a2 = fx::a2();
  const SymWord xy{{0, 1}};
  CHECK(apply_coderivation(a2, xy) == WordSum::word(SymWord{{2}}));
  const SLAlgebra c = fx::contractible();
  CHECK(apply_coderivation(c, SymWord{{1}}) == WordSum::word(SymWord{{0}}));
  // Q(h.h) vanishes in S(L) since h.h = 0; Q(e.h) = e.e
  CHECK(apply_coderivation(c, SymWord{{0, 1}}) == WordSum::word(SymWord{{0, 0}}));
}

TEST_CASE("Q squares to zero on valid fixtures") {
  for (const auto& alg : fx::valid_algebras()) {
    for (const auto& w : enumerate_words(alg.space(), 4, alg.nilpotency())) {
      const WordSum q = apply_coderivation(alg, w);
      CHECK_MESSAGE(apply_coderivation(alg, q).truncated(alg.space(), alg.nilpotency()).is_zero(),
                    alg.name() << " " << render_word(alg.space(), w));
    }
  }
}

TEST_CASE("relation residual agrees with the permutation-sum expression") {
  std::vector<SLAlgebra> algs = fx::valid_algebras();
  algs.push_back(fx::mutant());
  for (const auto& alg : algs)
    for (const auto& w : enumerate_words(alg.space(), 4, alg.nilpotency()))
      CHECK_MESSAGE(relation_residual(alg, w) == relation_by_permutations(alg, w),
                    alg.name() << " " << render_word(alg.space(), w));
}

TEST_CASE("relation reports") {
  CHECK(check_relations(fx::abelian(), 5).ok());
  CHECK(check_relations(fx::a2(), 5).ok());
  for (const auto& alg : fx::valid_algebras()) CHECK_MESSAGE(check_relations(alg, 5).ok(), alg.name());

  // {{x,x},y} + 2 {{x,y},x} = 2 {z,x} = 2 w; nothing else breaks.
  const SLAlgebra mutant = fx::mutant();
  const RelationReport r = check_relations(mutant, 5);
  REQUIRE(r.violations.size() == 1);
  CHECK(r.violations[0].arity == 3);
  CHECK(render_word(mutant.space(), r.violations[0].word) == "x.x.y");
  CHECK(r.violations[0].residual == el(mutant, "2 w"));
}

TEST_CASE("curvature and MC elements") {
  const SLAlgebra a2 = fx::a2();
  CHECK(curvature(a2, Element{}).is_zero());
  Random rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const Rational s = rng.coefficient(), t = rng.coefficient();
    const Element a = s * el(a2, "1 x") + t * el(a2, "1 y");
    CHECK(curvature(a2, a) == (s * t) * el(a2, "1 z"));
  }
  CHECK(is_mc(a2, el(a2, "1 x")));
  CHECK_FALSE(is_mc(a2, el(a2, "1 x + 1 y")));
  CHECK(is_mc(a2, Element{}));
  const SLAlgebra ab = fx::abelian();
  CHECK(is_mc(ab, el(ab, "3 u + -1 v")));
  const SLAlgebra c = fx::contractible();
  CHECK(curvature(c, el(c, "2 e")).is_zero());
  CHECK_THROWS_AS(curvature(a2, el(a2, "1 z")), InputError);

  for (const auto& alg : fx::valid_algebras())
    for (int trial = 0; trial < 10; ++trial) {
      const Element a = rng.element(alg.space(), 0);
      CHECK(curvature(alg, a) == curvature_by_powers(alg, a));
    }
}

TEST_CASE("twisting") {
  const SLAlgebra a2 = fx::a2();
  CHECK(twist_algebra(a2, Element{}) == a2);
  const SLAlgebra ax = twist_algebra(a2, el(a2, "1 x"));
  CHECK(ax.bracket(SymWord{{1}}) == el(a2, "1 z"));
  CHECK(ax.bracket(SymWord{{0}}).is_zero());
  CHECK(ax.bracket(SymWord{{0, 1}}) == el(a2, "1 z"));
  CHECK(check_relations(ax, 4).ok());

  try {
    twist_algebra(a2, el(a2, "1 x + 1 y"));
    FAIL("expected NotMaurerCartan");
  } catch (const NotMaurerCartan& e) {
    CHECK(e.witness() == el(a2, "1 z"));
  }

  // (L^a)^b = L^(a+b) for b MC in L^a
  Random rng(23);
  for (const auto& alg : {fx::rich(), fx::transported(), fx::a2_plus_kernel()}) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto alpha = random_mc_point(alg, rng);
      REQUIRE(alpha);
      const SLAlgebra la = twist_algebra(alg, *alpha);
      const auto beta = random_mc_point(la, rng);
      REQUIRE(beta);
      CHECK(twist_algebra(la, *beta) == twist_algebra(alg, *alpha + *beta));
    }
  }
}

TEST_CASE("direct sums") {
  const SLAlgebra a2 = fx::a2();
  const SLAlgebra sq = fx::square();
  CHECK(direct_sum(a2, zero_algebra()) == a2);
  CHECK(direct_sum(zero_algebra(), a2) == a2);
  const SLAlgebra sum = direct_sum(a2, sq);
  CHECK(sum.space().dim() == 5);
  CHECK(sum.nilpotency() == 3);
  // mixed brackets vanish
  CHECK(eval_bracket(sum, std::vector<Element>{Element::basis(0), Element::basis(3)}).is_zero());
  CHECK(eval_bracket(sum, std::vector<Element>{Element::basis(3), Element::basis(3)}) == Element::basis(4));
  CHECK(is_mc(sum, shift_indices(el(a2, "1 x"), 0) + shift_indices(Element{}, 3)));
  // colliding symbols are renamed
  const SLAlgebra aa = direct_sum(a2, a2);
  CHECK(aa.space()[0].symbol == "left.x");
  CHECK(aa.space()[3].symbol == "right.x");
  CHECK(check_relations(aa, 4).ok());
  CHECK(restrict_indices(Element::basis(4, 2), 3, 3) == Element::basis(1, 2));
}

TEST_CASE("construction rejects tables breaking degree or filtration") {
  const GradedSpace s({{"x", 0, 2}, {"z", 1, 1}});
  CHECK_THROWS_AS(SLAlgebra("bad", s, {{SymWord{{0, 0}}, Element::basis(1)}}, 4), InputError);
  CHECK_THROWS_AS(SLAlgebra("bad", s, {{SymWord{{0}}, Element::basis(0)}}, 4), InputError);
  CHECK_THROWS_AS(SLAlgebra("bad", s, {}, 2), InputError);
}
