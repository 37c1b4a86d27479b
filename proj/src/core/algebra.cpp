#include "slmc/core/algebra.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace slmc {

namespace {

const Element& zero_element() {
  static const Element zero;
  return zero;
}

void validate_table(const std::string& what, const GradedSpace& space, const OperationTable& table, int nilpotency,
                    int degree_shift) {
  for (const auto& [word, value] : table) {
    if (word.empty()) throw InputError(what + ": operation on the empty word");
    for (int f : word.factors)
      if (f < 0 || f >= space.dim()) throw InputError(what + ": word refers to an unknown basis index");
    auto canon = canonicalize(space, word.factors);
    if (canon.word != word || canon.sign == 0)
      throw InputError(what + ": word " + render_word(space, word) + " is not canonical or vanishes");
    const int wd = word_degree(space, word);
    const int ww = word_weight(space, word);
    for (const auto& [i, c] : value.terms()) {
      if (i < 0 || i >= space.dim()) throw InputError(what + ": value refers to an unknown basis index");
      if (space.degree(i) != wd + degree_shift)
        throw InputError(what + " on " + render_word(space, word) + ": output '" + space[i].symbol +
                         "' has degree " + std::to_string(space.degree(i)) + ", expected " +
                         std::to_string(wd + degree_shift));
      if (space.weight(i) < ww)
        throw InputError(what + " on " + render_word(space, word) + ": output '" + space[i].symbol +
                         "' lowers filtration weight (brackets must be compatible with the filtration)");
    }
  }
  (void)nilpotency;
}

}  // namespace

SLAlgebra::SLAlgebra(std::string name, GradedSpace space, OperationTable brackets, int nilpotency)
    : name_(std::move(name)), space_(std::move(space)), nilpotency_(nilpotency) {
  if (nilpotency_ < 2) throw InputError("nilpotency order must be >= 2");
  for (const auto& b : space_.basis())
    if (b.weight >= nilpotency_)
      throw InputError("basis vector '" + b.symbol + "' has weight " + std::to_string(b.weight) +
                       " >= nilpotency order " + std::to_string(nilpotency_));
  for (auto& [w, v] : brackets)
    if (!v.is_zero()) brackets_.emplace(w, std::move(v));
  validate_table("bracket", space_, brackets_, nilpotency_, 1);
}

SLAlgebra SLAlgebra::renamed(std::string name) const {
  SLAlgebra copy = *this;
  copy.name_ = std::move(name);
  return copy;
}

int SLAlgebra::max_arity() const {
  int m = 0;
  for (const auto& [w, v] : brackets_) m = std::max(m, static_cast<int>(w.length()));
  return m;
}

const Element& SLAlgebra::bracket(const SymWord& canonical) const {
  auto it = brackets_.find(canonical);
  return it == brackets_.end() ? zero_element() : it->second;
}

SLAlgebra zero_algebra() { return SLAlgebra("zero", GradedSpace{}, {}, 2); }

Element eval_bracket(const SLAlgebra& alg, std::span<const Element> args) {
  if (args.empty()) throw InputError("eval_bracket: arity must be >= 1");
  const auto& space = alg.space();
  for (const auto& a : args)
    for (const auto& [i, c] : a.terms())
      if (i < 0 || i >= space.dim()) throw InputError("eval_bracket: argument uses a foreign basis index");
  Element out;
  std::vector<int> raw(args.size());
  std::function<void(std::size_t, const Rational&)> expand = [&](std::size_t pos, const Rational& coeff) {
    if (pos == args.size()) {
      auto canon = canonicalize(space, raw);
      if (canon.sign == 0) return;
      const Element& value = alg.bracket(canon.word);
      if (value.is_zero()) return;
      out += Rational(canon.sign) * coeff * value;
      return;
    }
    for (const auto& [i, c] : args[pos].terms()) {
      raw[pos] = i;
      expand(pos + 1, coeff * c);
    }
  };
  expand(0, Rational(1));
  return out;
}

Element bracket_sum(const SLAlgebra& alg, const WordSum& s) {
  Element out;
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) continue;
    const Element& value = alg.bracket(w);
    if (!value.is_zero()) out += c * value;
  }
  return out;
}

WordSum apply_coderivation(const SLAlgebra& alg, const SymWord& word) {
  const auto& space = alg.space();
  const std::size_t n = word.length();
  WordSum out;
  if (n == 0) return out;
  if (n > 30) throw ResourceError("apply_coderivation: word too long");
  for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
    SymWord head, rest;
    int parity = 0;
    int odd_rest_before = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const int f = word.factors[i];
      if (mask & (1UL << i)) {
        // f jumps over every earlier factor left in `rest`.
        if (space.odd(f)) parity ^= (odd_rest_before & 1);
        head.factors.push_back(f);
      } else {
        if (space.odd(f)) ++odd_rest_before;
        rest.factors.push_back(f);
      }
    }
    const Element& value = alg.bracket(head);
    if (value.is_zero()) continue;
    const Rational sign = parity ? -1 : 1;
    for (const auto& [i, c] : value.terms()) {
      auto p = multiply_words(space, SymWord{{i}}, rest);
      if (p.sign == 0) continue;
      out.add(p.word, sign * p.sign * c);
    }
  }
  return out;
}

WordSum apply_coderivation(const SLAlgebra& alg, const WordSum& s) {
  WordSum out;
  for (const auto& [w, c] : s.terms()) {
    if (w.empty()) continue;
    out += c * apply_coderivation(alg, w);
  }
  return out;
}

Element relation_residual(const SLAlgebra& alg, const SymWord& word, const Caps& caps) {
  const auto& space = alg.space();
  const int m = static_cast<int>(word.length());
  std::vector<int> degrees;
  for (int f : word.factors) degrees.push_back(space.degree(f));
  Element total;
  for (int k = 1; k <= m; ++k) {
    const int blocks[2] = {k, m - k};
    for (const auto& sigma : shuffles(blocks, caps)) {
      // Reordering (v_1..v_m) into (v_s(1)..v_s(m)) moves element a to
      // position sigma^{-1}(a).
      const int sign = koszul_sign(inverse(sigma), degrees);
      std::vector<int> inner;
      for (int i = 0; i < k; ++i) inner.push_back(word.factors[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])]);
      auto canon = canonicalize(space, inner);
      if (canon.sign == 0) continue;
      Element inner_value = Rational(canon.sign) * alg.bracket(canon.word);
      if (inner_value.is_zero()) continue;
      std::vector<Element> outer{inner_value};
      for (int i = k; i < m; ++i)
        outer.push_back(Element::basis(word.factors[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)])]));
      total += Rational(sign) * eval_bracket(alg, outer);
    }
  }
  return total;
}

RelationReport check_relations(const SLAlgebra& alg, int max_arity, const Caps& caps) {
  if (max_arity > caps.max_arity)
    throw ResourceError("check_relations: max arity " + std::to_string(max_arity) + " exceeds arity cap " +
                        std::to_string(caps.max_arity));
  RelationReport report;
  for (const auto& w : enumerate_words(alg.space(), max_arity, alg.nilpotency(), caps)) {
    ++report.instances_checked;
    Element r = relation_residual(alg, w, caps);
    if (!r.is_zero()) report.violations.push_back({static_cast<int>(w.length()), w, std::move(r)});
  }
  return report;
}

Element curvature(const SLAlgebra& alg, const Element& a) {
  if (!a.has_degree(alg.space(), 0)) throw InputError("curvature: element must have degree 0");
  return bracket_sum(alg, exp_word(alg.space(), a, alg.nilpotency()).without_constant());
}

bool is_mc(const SLAlgebra& alg, const Element& a) {
  for (const auto& [i, c] : a.terms())
    if (i < 0 || i >= alg.space().dim()) return false;
  if (!a.has_degree(alg.space(), 0)) return false;
  return curvature(alg, a).is_zero();
}

Element twisted_bracket(const SLAlgebra& alg, const Element& a, std::span<const Element> args) {
  const auto& space = alg.space();
  const int n = alg.nilpotency();
  WordSum product = WordSum::unit();
  for (const auto& arg : args) product = multiply(space, product, WordSum::from_element(arg), n);
  return bracket_sum(alg, multiply(space, exp_word(space, a, n), product, n));
}

SLAlgebra twist_unchecked(const SLAlgebra& alg, const Element& a) {
  const auto& space = alg.space();
  const int n = alg.nilpotency();
  const WordSum ea = exp_word(space, a, n);
  OperationTable table;
  for (const auto& w : enumerate_words(space, n - 1, n)) {
    Element value = bracket_sum(alg, multiply(space, ea, WordSum::word(w), n));
    if (!value.is_zero()) table.emplace(w, std::move(value));
  }
  return SLAlgebra(alg.name(), space, std::move(table), n);
}

SLAlgebra twist_algebra(const SLAlgebra& alg, const Element& alpha) {
  if (!alpha.has_degree(alg.space(), 0)) throw InputError("twist: MC element must have degree 0");
  Element curv = curvature(alg, alpha);
  if (!curv.is_zero())
    throw NotMaurerCartan("twist: element is not Maurer-Cartan; curvature = " + render(alg.space(), curv), curv);
  return twist_unchecked(alg, alpha);
}

Element shift_indices(const Element& e, int offset) {
  Element out;
  for (const auto& [i, c] : e.terms()) out.add_term(i + offset, c);
  return out;
}

Element restrict_indices(const Element& e, int offset, int dim) {
  Element out;
  for (const auto& [i, c] : e.terms())
    if (i >= offset && i < offset + dim) out.add_term(i - offset, c);
  return out;
}

SLAlgebra direct_sum(const SLAlgebra& left, const SLAlgebra& right) {
  std::set<std::string> left_names, right_names;
  for (const auto& b : left.space().basis()) left_names.insert(b.symbol);
  for (const auto& b : right.space().basis()) right_names.insert(b.symbol);
  std::vector<BasisVector> basis;
  for (auto b : left.space().basis()) {
    if (right_names.count(b.symbol)) b.symbol = "left." + b.symbol;
    basis.push_back(std::move(b));
  }
  for (auto b : right.space().basis()) {
    if (left_names.count(b.symbol)) b.symbol = "right." + b.symbol;
    basis.push_back(std::move(b));
  }
  const int offset = left.space().dim();
  OperationTable table = left.brackets();
  for (const auto& [w, v] : right.brackets()) {
    SymWord shifted;
    for (int f : w.factors) shifted.factors.push_back(f + offset);
    table.emplace(std::move(shifted), shift_indices(v, offset));
  }
  return SLAlgebra(left.name() + "_" + right.name(), GradedSpace(std::move(basis)), std::move(table),
                   std::max(left.nilpotency(), right.nilpotency()));
}

}  // namespace slmc
