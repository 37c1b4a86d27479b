#include "slmc/core/fixtures.hpp"

#include <string>

namespace slmc::fixtures {

namespace {

SymWord word(const GradedSpace& space, std::initializer_list<const char*> symbols) {
  std::vector<std::string> names(symbols.begin(), symbols.end());
  auto canon = canonicalize(space, names);
  return canon.word;
}

Element vec(const GradedSpace& space, const char* symbol, const Rational& c = 1) {
  return Element::basis(space.index_of(symbol), c);
}

GradedSpace rich_space() {
  return GradedSpace({{"a", 0, 1},
                      {"h", -1, 1},
                      {"e", 0, 1},
                      {"b", 1, 2},
                      {"c", 0, 2},
                      {"k", -1, 2},
                      {"m", 0, 2},
                      {"p", 1, 3},
                      {"q", 0, 3},
                      {"g", -1, 3},
                      {"r", 0, 3}});
}

TaylorTable transport_table(const GradedSpace& s) {
  TaylorTable t;
  for (int i = 0; i < s.dim(); ++i) t.emplace(SymWord{{i}}, Element::basis(i));
  t[word(s, {"a", "h"})] = vec(s, "k");
  t[word(s, {"a", "a"})] = vec(s, "c");
  t[word(s, {"a", "e"})] = vec(s, "m");
  t[word(s, {"h", "e"})] = vec(s, "k");
  t[word(s, {"a", "a", "h"})] = vec(s, "g");
  t[word(s, {"a", "a", "a"})] = vec(s, "q");
  return t;
}

}  // namespace

SLAlgebra abelian() {
  return SLAlgebra("abelian", GradedSpace({{"u", 0, 1}, {"w", 1, 1}, {"v", 0, 2}}), {}, 3);
}

SLAlgebra a2() {
  GradedSpace s({{"x", 0, 1}, {"y", 0, 1}, {"z", 1, 2}});
  OperationTable t;
  t[word(s, {"x", "y"})] = vec(s, "z");
  return SLAlgebra("A2", s, std::move(t), 3);
}

SLAlgebra square() {
  GradedSpace s({{"a", 0, 1}, {"b", 1, 2}});
  OperationTable t;
  t[word(s, {"a", "a"})] = vec(s, "b");
  return SLAlgebra("sq", s, std::move(t), 3);
}

SLAlgebra contractible() {
  GradedSpace s({{"e", 0, 1}, {"h", -1, 1}});
  OperationTable t;
  t[word(s, {"h"})] = vec(s, "e");
  return SLAlgebra("contractible", s, std::move(t), 2);
}

SLAlgebra odd() {
  GradedSpace s({{"u", -1, 1}, {"v", -1, 1}, {"c", -1, 2}});
  OperationTable t;
  t[word(s, {"u", "v"})] = vec(s, "c");
  return SLAlgebra("odd", s, std::move(t), 3);
}

SLAlgebra mutant() {
  GradedSpace s({{"x", 0, 1}, {"y", 0, 1}, {"z", 1, 2}, {"w", 2, 3}});
  OperationTable t;
  t[word(s, {"x", "y"})] = vec(s, "z");
  t[word(s, {"x", "z"})] = vec(s, "w");
  return SLAlgebra("mutant", s, std::move(t), 4);
}

SLAlgebra rich() {
  GradedSpace s = rich_space();
  OperationTable t;
  t[word(s, {"h"})] = vec(s, "e");
  t[word(s, {"c"})] = vec(s, "b");
  t[word(s, {"k"})] = vec(s, "m");
  t[word(s, {"q"})] = vec(s, "p");
  t[word(s, {"g"})] = vec(s, "r");
  t[word(s, {"a", "a"})] = vec(s, "b");
  t[word(s, {"a", "h"})] = vec(s, "m");
  return SLAlgebra("B", s, std::move(t), 4);
}

TaylorTable inverse_taylor(const InftyMorphism& f) {
  const auto& space = f.source().space();
  if (!(space == f.target().space())) throw InputError("inverse: source and target spaces differ");
  for (int i = 0; i < space.dim(); ++i)
    if (!(f.coefficient(SymWord{{i}}) == Element::basis(i))) throw InputError("inverse: linear part is not the identity");
  const int bound = f.weight_bound();
  CoalgebraExtension ext(f);
  TaylorTable psi;
  for (const auto& w : enumerate_words(space, bound - 1, bound)) {
    if (w.length() == 1) {
      psi.emplace(w, Element::basis(w.factors[0]));
      continue;
    }
    WordSum rest = ext(w);
    rest.add(w, -1);
    Element value;
    for (const auto& [u, c] : rest.terms()) {
      auto it = psi.find(u);
      if (it != psi.end()) value -= c * it->second;
    }
    if (!value.is_zero()) psi.emplace(w, std::move(value));
  }
  return psi;
}

SLAlgebra transported() {
  const SLAlgebra base = rich();
  const GradedSpace& s = base.space();
  const int n = base.nilpotency();
  const SLAlgebra flat("flat", s, {}, n);
  const InftyMorphism phi("phi", flat, flat, transport_table(s));
  const InftyMorphism psi("psi", flat, flat, inverse_taylor(phi));
  CoalgebraExtension ext(phi);
  OperationTable t;
  for (const auto& w : enumerate_words(s, n - 1, n)) {
    Element value = apply_taylor(psi, apply_coderivation(base, ext(w)));
    if (!value.is_zero()) t.emplace(w, std::move(value));
  }
  return SLAlgebra("T", s, std::move(t), n);
}

InftyMorphism transport_phi() { return InftyMorphism("phi", transported(), rich(), transport_table(rich_space())); }

InftyMorphism transport_psi() {
  const InftyMorphism phi = transport_phi();
  return InftyMorphism("psi", rich(), transported(), inverse_taylor(phi));
}

SLAlgebra kernel() {
  return SLAlgebra("K", GradedSpace({{"k1", 0, 1}, {"k2", 0, 2}, {"k3", -1, 1}, {"k4", -1, 2}}), {}, 3);
}

SLAlgebra a2_plus_kernel() { return direct_sum(a2(), kernel()).renamed("X"); }

std::vector<SLAlgebra> valid_algebras() {
  return {abelian(),
          a2(),
          square(),
          contractible(),
          odd(),
          rich(),
          transported(),
          kernel(),
          a2_plus_kernel(),
          direct_sum(a2(), square()).renamed("A2_sq"),
          direct_sum(contractible(), abelian()).renamed("contractible_abelian"),
          direct_sum(square(), zero_algebra()).renamed("sq_zero")};
}

}  // namespace slmc::fixtures
