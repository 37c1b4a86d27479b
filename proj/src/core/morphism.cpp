#include "slmc/core/morphism.hpp"

#include <algorithm>
#include <functional>

namespace slmc {

namespace {

const Element& zero_element() {
  static const Element zero;
  return zero;
}

// Compositions k_1 + ... + k_t = n with every k_i >= 1.
void for_each_composition(int n, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> parts;
  std::function<void(int)> rec = [&](int left) {
    if (left == 0) {
      fn(parts);
      return;
    }
    for (int k = 1; k <= left; ++k) {
      parts.push_back(k);
      rec(left - k);
      parts.pop_back();
    }
  };
  rec(n);
}

}  // namespace

InftyMorphism::InftyMorphism(std::string name, SLAlgebra source, SLAlgebra target, TaylorTable taylor)
    : name_(std::move(name)), source_(std::move(source)), target_(std::move(target)) {
  const auto& src = source_.space();
  const auto& tgt = target_.space();
  const int bound = target_.nilpotency();
  for (auto& [word, value] : taylor) {
    if (value.is_zero()) continue;
    if (word.empty()) throw InputError("taylor: coefficient on the empty word");
    for (int f : word.factors)
      if (f < 0 || f >= src.dim()) throw InputError("taylor: word refers to an unknown source basis index");
    auto canon = canonicalize(src, word.factors);
    if (canon.word != word || canon.sign == 0)
      throw InputError("taylor: word " + render_word(src, word) + " is not canonical or vanishes");
    const int wd = word_degree(src, word);
    const int ww = word_weight(src, word);
    if (ww >= bound)
      throw InputError("taylor on " + render_word(src, word) + ": word weight " + std::to_string(ww) +
                       " >= target nilpotency order " + std::to_string(bound));
    for (const auto& [i, c] : value.terms()) {
      if (i < 0 || i >= tgt.dim()) throw InputError("taylor: value refers to an unknown target basis index");
      if (tgt.degree(i) != wd)
        throw InputError("taylor on " + render_word(src, word) + ": output '" + tgt[i].symbol + "' has degree " +
                         std::to_string(tgt.degree(i)) + ", expected " + std::to_string(wd));
      if (tgt.weight(i) < ww)
        throw InputError("taylor on " + render_word(src, word) + ": output '" + tgt[i].symbol +
                         "' lowers filtration weight");
    }
    taylor_.emplace(word, std::move(value));
  }
}

InftyMorphism InftyMorphism::renamed(std::string name) const {
  InftyMorphism copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

const Element& InftyMorphism::coefficient(const SymWord& canonical) const {
  auto it = taylor_.find(canonical);
  return it == taylor_.end() ? zero_element() : it->second;
}

InftyMorphism identity_morphism(const SLAlgebra& alg) {
  TaylorTable table;
  for (int i = 0; i < alg.space().dim(); ++i) table.emplace(SymWord{{i}}, Element::basis(i));
  return InftyMorphism("id_" + alg.name(), alg, alg, std::move(table));
}

InftyMorphism zero_morphism(const SLAlgebra& source, const SLAlgebra& target) {
  return InftyMorphism("zero", source, target, {});
}

Element apply_taylor(const InftyMorphism& f, const WordSum& s) {
  Element out;
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) continue;
    const Element& value = f.coefficient(w);
    if (!value.is_zero()) out += c * value;
  }
  return out;
}

// --- coalgebra extension -----------------------------------------------------

CoalgebraExtension::CoalgebraExtension(const InftyMorphism& f) : CoalgebraExtension(f, f.weight_bound()) {}

CoalgebraExtension::CoalgebraExtension(const InftyMorphism& f, int weight_bound) : f_(f), bound_(weight_bound) {}

const WordSum& CoalgebraExtension::operator()(const SymWord& word) {
  auto it = cache_.find(word);
  if (it != cache_.end()) return it->second;
  const auto& src = f_.source().space();
  const auto& tgt = f_.target().space();
  WordSum out;
  const std::size_t n = word.length();
  if (n == 0) {
    out = WordSum::unit();
  } else {
    if (n > 30) throw ResourceError("coalgebra extension: word too long");
    // Subsets always containing position 0; the remaining positions vary.
    for (unsigned long bits = 0; bits < (1UL << (n - 1)); ++bits) {
      const unsigned long mask = (bits << 1) | 1UL;
      SymWord head, rest;
      int parity = 0;
      int odd_rest_before = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const int f = word.factors[i];
        if (mask & (1UL << i)) {
          if (src.odd(f)) parity ^= (odd_rest_before & 1);
          head.factors.push_back(f);
        } else {
          if (src.odd(f)) ++odd_rest_before;
          rest.factors.push_back(f);
        }
      }
      const Element& value = f_.coefficient(head);
      if (value.is_zero()) continue;
      WordSum tail = (*this)(rest);
      WordSum term = multiply(tgt, WordSum::from_element(value), tail, bound_);
      if (parity) term *= Rational(-1);
      out += term;
    }
    out = out.truncated(tgt, bound_);
  }
  return cache_.emplace(word, std::move(out)).first->second;
}

WordSum CoalgebraExtension::operator()(const WordSum& s) {
  WordSum out;
  for (const auto& [w, c] : s.terms()) out += c * (*this)(w);
  return out;
}

WordSum extend_to_coalgebra(const InftyMorphism& f, const SymWord& word) {
  CoalgebraExtension ext(f);
  return ext(word);
}

WordSum extend_to_coalgebra(const InftyMorphism& f, const WordSum& s) {
  CoalgebraExtension ext(f);
  return ext(s);
}

WordSum extend_by_stairway(const InftyMorphism& f, const SymWord& word, const Caps& caps) {
  const auto& src = f.source().space();
  const auto& tgt = f.target().space();
  const int bound = f.weight_bound();
  const int n = static_cast<int>(word.length());
  if (n == 0) return WordSum::unit();
  std::vector<int> degrees;
  for (int x : word.factors) degrees.push_back(src.degree(x));
  WordSum out;
  for_each_composition(n, [&](const std::vector<int>& parts) {
    for (const auto& sigma : stairway_shuffles(parts, caps)) {
      const int sign = koszul_sign(inverse(sigma), degrees);
      WordSum product = WordSum::unit();
      int pos = 0;
      for (int k : parts) {
        std::vector<int> block;
        for (int i = 0; i < k; ++i) block.push_back(word.factors[static_cast<std::size_t>(sigma[static_cast<std::size_t>(pos + i)])]);
        pos += k;
        auto canon = canonicalize(src, block);
        if (canon.sign == 0) {
          product = WordSum{};
          break;
        }
        const Element& value = f.coefficient(canon.word);
        product = multiply(tgt, product, Rational(canon.sign) * WordSum::from_element(value), bound);
        if (product.is_zero()) break;
      }
      out += Rational(sign) * product;
    }
  });
  return out;
}

// --- morphism equation -------------------------------------------------------

namespace {

Element residual_with(const InftyMorphism& f, CoalgebraExtension& ext, const SymWord& word) {
  Element lhs = bracket_sum(f.target(), ext(word));
  Element rhs = apply_taylor(f, apply_coderivation(f.source(), word));
  return lhs - rhs;
}

}  // namespace

Element morphism_residual(const InftyMorphism& f, const SymWord& word) {
  CoalgebraExtension ext(f);
  return residual_with(f, ext, word);
}

MorphismReport check_morphism(const InftyMorphism& f, int max_arity, const Caps& caps) {
  if (max_arity > caps.max_arity)
    throw ResourceError("check_morphism: max arity " + std::to_string(max_arity) + " exceeds arity cap " +
                        std::to_string(caps.max_arity));
  MorphismReport report;
  CoalgebraExtension ext(f);
  const int bound = std::max(f.source().nilpotency(), f.target().nilpotency());
  for (const auto& w : enumerate_words(f.source().space(), max_arity, bound, caps)) {
    ++report.instances_checked;
    Element r = residual_with(f, ext, w);
    if (!r.is_zero()) report.violations.push_back({w, std::move(r)});
  }
  return report;
}

InftyMorphism compose_infty(const InftyMorphism& g, const InftyMorphism& f) {
  if (!(f.target() == g.source()))
    throw InputError("compose: target of '" + f.name() + "' does not match source of '" + g.name() + "'");
  const int bound = g.weight_bound();
  CoalgebraExtension ext(f, bound);
  TaylorTable table;
  for (const auto& w : enumerate_words(f.source().space(), bound - 1, bound)) {
    Element value = apply_taylor(g, ext(w));
    if (!value.is_zero()) table.emplace(w, std::move(value));
  }
  return InftyMorphism(g.name() + "." + f.name(), f.source(), g.target(), std::move(table));
}

Element pushforward(const InftyMorphism& f, const Element& a) {
  const auto& src = f.source().space();
  if (!a.has_degree(src, 0)) throw InputError("pushforward: element must have degree 0");
  for (const auto& [i, c] : a.terms())
    if (i < 0 || i >= src.dim()) throw InputError("pushforward: element uses a foreign basis index");
  return apply_taylor(f, exp_word(src, a, f.weight_bound()));
}

InftyMorphism twist_morphism_unchecked(const InftyMorphism& f, const Element& a) {
  const auto& src = f.source().space();
  const int bound = f.weight_bound();
  SLAlgebra source = twist_unchecked(f.source(), a);
  SLAlgebra target = twist_unchecked(f.target(), pushforward(f, a));
  const WordSum ea = exp_word(src, a, bound);
  TaylorTable table;
  for (const auto& w : enumerate_words(src, bound - 1, bound)) {
    Element value = apply_taylor(f, multiply(src, ea, WordSum::word(w), bound));
    if (!value.is_zero()) table.emplace(w, std::move(value));
  }
  return InftyMorphism(f.name(), std::move(source), std::move(target), std::move(table));
}

InftyMorphism twist_morphism(const InftyMorphism& f, const Element& alpha) {
  if (!alpha.has_degree(f.source().space(), 0)) throw InputError("twist: MC element must have degree 0");
  Element curv = curvature(f.source(), alpha);
  if (!curv.is_zero())
    throw NotMaurerCartan("twist: element is not Maurer-Cartan in the source; curvature = " +
                              render(f.source().space(), curv),
                          curv);
  return twist_morphism_unchecked(f, alpha);
}

InftyMorphism tensor_morphism(const InftyMorphism& f, const InftyMorphism& g) {
  SLAlgebra source = direct_sum(f.source(), g.source());
  SLAlgebra target = direct_sum(f.target(), g.target());
  const int src_offset = f.source().space().dim();
  const int tgt_offset = f.target().space().dim();
  TaylorTable table = f.taylor();
  for (const auto& [w, v] : g.taylor()) {
    SymWord shifted;
    for (int x : w.factors) shifted.factors.push_back(x + src_offset);
    table.emplace(std::move(shifted), shift_indices(v, tgt_offset));
  }
  return InftyMorphism(f.name() + "_" + g.name(), std::move(source), std::move(target), std::move(table));
}

// --- enhanced morphisms ------------------------------------------------------

EnhancedMorphism::EnhancedMorphism(std::string name, Element alpha, InftyMorphism morphism, SLAlgebra target)
    : name_(std::move(name)), alpha_(std::move(alpha)), morphism_(std::move(morphism)), target_(std::move(target)) {
  for (const auto& [i, c] : alpha_.terms())
    if (i < 0 || i >= target_.space().dim()) throw InputError("enhanced: MC element uses a foreign basis index");
  if (!alpha_.has_degree(target_.space(), 0)) throw InputError("enhanced: MC element must have degree 0");
  SLAlgebra twisted = twist_algebra(target_, alpha_);
  if (!(twisted == morphism_.target()))
    throw InputError("enhanced '" + name_ + "': morphism target is not the twist of '" + target_.name() +
                     "' by the MC element");
}

EnhancedMorphism EnhancedMorphism::renamed(std::string name) const {
  EnhancedMorphism copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

EnhancedMorphism identity_enhanced(const SLAlgebra& alg) {
  return EnhancedMorphism("id_" + alg.name(), Element{}, identity_morphism(alg), alg);
}

EnhancedMorphism compose_enhanced(const EnhancedMorphism& g, const EnhancedMorphism& f) {
  if (!(f.target() == g.source()))
    throw InputError("compose: target of '" + f.name() + "' does not match source of '" + g.name() + "'");
  const InftyMorphism& big_g = g.morphism();
  Element alpha = g.alpha() + pushforward(big_g, f.alpha());
  InftyMorphism composite = compose_infty(twist_morphism(big_g, f.alpha()), f.morphism());
  return EnhancedMorphism(g.name() + "." + f.name(), std::move(alpha), std::move(composite), g.target());
}

EnhancedMorphism tensor_enhanced(const EnhancedMorphism& f, const EnhancedMorphism& g) {
  const int offset = f.target().space().dim();
  Element alpha = f.alpha() + shift_indices(g.alpha(), offset);
  return EnhancedMorphism(f.name() + "_" + g.name(), std::move(alpha), tensor_morphism(f.morphism(), g.morphism()),
                          direct_sum(f.target(), g.target()));
}

WordSum u_map(const EnhancedMorphism& e, const WordSum& x, int weight_bound) {
  const auto& tgt = e.target().space();
  CoalgebraExtension ext(e.morphism(), weight_bound);
  return multiply(tgt, exp_word(tgt, e.alpha(), weight_bound), ext(x), weight_bound);
}

WordSum u_map(const EnhancedMorphism& e, const WordSum& x) { return u_map(e, x, e.target().nilpotency()); }

MorphismReport check_enhanced(const EnhancedMorphism& e, int max_arity, const Caps& caps) {
  return check_morphism(e.morphism(), max_arity, caps);
}

}  // namespace slmc
