#pragma once

#include <map>
#include <string>
#include <vector>

#include "slmc/core/algebra.hpp"

namespace slmc {

/// Canonical source word -> value in the target. Absent entries are zero.
using TaylorTable = std::map<SymWord, Element>;

/// An infinity-morphism given by its Taylor coefficients F'. Construction
/// checks degree preservation, filtration monotonicity, and that no entry
/// sits on a word of weight >= N_target. It does not check the morphism
/// equation; see check_morphism.
class InftyMorphism {
 public:
  InftyMorphism(std::string name, SLAlgebra source, SLAlgebra target, TaylorTable taylor);

  const std::string& name() const { return name_; }
  InftyMorphism renamed(std::string name) const;
  const SLAlgebra& source() const { return source_; }
  const SLAlgebra& target() const { return target_; }
  const TaylorTable& taylor() const { return taylor_; }
  const Element& coefficient(const SymWord& canonical) const;

  /// Bound on word weights at which series over this morphism are cut.
  int weight_bound() const { return target_.nilpotency(); }

  friend bool operator==(const InftyMorphism& a, const InftyMorphism& b) {
    return a.source_ == b.source_ && a.target_ == b.target_ && a.taylor_ == b.taylor_;
  }

 private:
  std::string name_;
  SLAlgebra source_;
  SLAlgebra target_;
  TaylorTable taylor_;
};

InftyMorphism identity_morphism(const SLAlgebra& alg);
InftyMorphism zero_morphism(const SLAlgebra& source, const SLAlgebra& target);

/// F' extended linearly to sums of words; the constant term is ignored.
Element apply_taylor(const InftyMorphism& f, const WordSum& s);

/// The coalgebra map F on S(source), memoized. F(1) = 1 and
/// F(w) = sum over position subsets B containing the first factor of
/// +-F'(w_B) F(w minus B). Words of weight >= bound are dropped.
class CoalgebraExtension {
 public:
  explicit CoalgebraExtension(const InftyMorphism& f);
  CoalgebraExtension(const InftyMorphism& f, int weight_bound);

  const WordSum& operator()(const SymWord& word);
  WordSum operator()(const WordSum& s);

 private:
  const InftyMorphism& f_;
  int bound_;
  std::map<SymWord, WordSum> cache_;
};

WordSum extend_to_coalgebra(const InftyMorphism& f, const SymWord& word);
WordSum extend_to_coalgebra(const InftyMorphism& f, const WordSum& s);

/// The same map from the closed formula: sum over compositions
/// k_1 + ... + k_t = n and stairway shuffles of products of Taylor values.
WordSum extend_by_stairway(const InftyMorphism& f, const SymWord& word, const Caps& caps = {});

struct MorphismViolation {
  SymWord word;
  Element residual;
};

struct MorphismReport {
  int instances_checked = 0;
  std::vector<MorphismViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// p Q_target F(w) - F'(Q_source(w)) on one source word.
Element morphism_residual(const InftyMorphism& f, const SymWord& word);
/// Runs morphism_residual on every source word of length <= max_arity and
/// weight below max(N_source, N_target).
MorphismReport check_morphism(const InftyMorphism& f, int max_arity, const Caps& caps = {});

/// G o F. Throws InputError unless F.target() == G.source().
InftyMorphism compose_infty(const InftyMorphism& g, const InftyMorphism& f);

/// F_*(a) = sum_{k>=1} F'(a^k) / k!. Any degree-0 a is accepted.
Element pushforward(const InftyMorphism& f, const Element& a);

/// Taylor table of F^a for any degree-0 a, between the unchecked twists.
InftyMorphism twist_morphism_unchecked(const InftyMorphism& f, const Element& a);
/// F^alpha : L^alpha -> target^{F_* alpha}. Throws NotMaurerCartan.
InftyMorphism twist_morphism(const InftyMorphism& f, const Element& alpha);

/// F (x) F~ between direct sums; vanishes on mixed words.
InftyMorphism tensor_morphism(const InftyMorphism& f, const InftyMorphism& g);

/// A pair (alpha, F) with alpha MC in `target` and F : source -> target^alpha.
class EnhancedMorphism {
 public:
  /// Throws NotMaurerCartan when alpha is not MC and InputError when the
  /// morphism's target is not target^alpha.
  EnhancedMorphism(std::string name, Element alpha, InftyMorphism morphism, SLAlgebra target);

  const std::string& name() const { return name_; }
  EnhancedMorphism renamed(std::string name) const;
  const Element& alpha() const { return alpha_; }
  const InftyMorphism& morphism() const { return morphism_; }
  const SLAlgebra& source() const { return morphism_.source(); }
  const SLAlgebra& target() const { return target_; }

  friend bool operator==(const EnhancedMorphism& a, const EnhancedMorphism& b) {
    return a.alpha_ == b.alpha_ && a.target_ == b.target_ && a.morphism_ == b.morphism_;
  }

 private:
  std::string name_;
  Element alpha_;
  InftyMorphism morphism_;
  SLAlgebra target_;
};

/// (0, id).
EnhancedMorphism identity_enhanced(const SLAlgebra& alg);

/// g o f = (alpha_3 + G_*(alpha_2), G^{alpha_2} o F).
EnhancedMorphism compose_enhanced(const EnhancedMorphism& g, const EnhancedMorphism& f);

/// (alpha + alpha~, F (x) F~) between direct sums.
EnhancedMorphism tensor_enhanced(const EnhancedMorphism& f, const EnhancedMorphism& g);

/// U(X) = e^alpha F(X) in S(target), words of weight >= bound dropped.
WordSum u_map(const EnhancedMorphism& e, const WordSum& x, int weight_bound);
WordSum u_map(const EnhancedMorphism& e, const WordSum& x);

/// Morphism equation check of the underlying F against source and target^alpha.
MorphismReport check_enhanced(const EnhancedMorphism& e, int max_arity, const Caps& caps = {});

}  // namespace slmc
