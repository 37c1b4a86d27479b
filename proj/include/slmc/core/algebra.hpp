#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "slmc/core/errors.hpp"
#include "slmc/core/graded.hpp"

namespace slmc {

/// Canonical word -> value. Absent entries are zero.
using OperationTable = std::map<SymWord, Element>;

/// A filtered shifted L-infinity algebra truncated at F_N = 0. The unary
/// bracket is the differential.
///
/// Invariants checked on construction: every bracket raises degree by one,
/// never lowers filtration weight, and every basis weight is below N (so
/// all brackets vanish on words of weight >= N).
class SLAlgebra {
 public:
  SLAlgebra(std::string name, GradedSpace space, OperationTable brackets, int nilpotency);

  const std::string& name() const { return name_; }
  SLAlgebra renamed(std::string name) const;

  const GradedSpace& space() const { return space_; }
  int nilpotency() const { return nilpotency_; }
  const OperationTable& brackets() const { return brackets_; }
  int max_arity() const;

  /// Bracket on a canonical word (zero when absent).
  const Element& bracket(const SymWord& canonical) const;

  /// Table equality; the name is ignored.
  friend bool operator==(const SLAlgebra& a, const SLAlgebra& b) {
    return a.nilpotency_ == b.nilpotency_ && a.space_ == b.space_ && a.brackets_ == b.brackets_;
  }

 private:
  std::string name_;
  GradedSpace space_;
  OperationTable brackets_;
  int nilpotency_ = 2;
};

/// Twisting or using an element that is required to be Maurer-Cartan but
/// is not. The witness is its curvature.
class NotMaurerCartan : public PreconditionError {
 public:
  NotMaurerCartan(const std::string& what, Element witness)
      : PreconditionError(what), witness_(std::move(witness)) {}
  const Element& witness() const { return witness_; }

 private:
  Element witness_;
};

/// The zero algebra (empty basis), the unit of the direct sum.
SLAlgebra zero_algebra();

/// Multilinear graded-symmetric extension of the bracket table; arity 1 is
/// the differential.
Element eval_bracket(const SLAlgebra& alg, std::span<const Element> args);

/// p_L o Q: applies the bracket of matching arity to every word of `s`.
/// The constant term is ignored (Q(1) = 0).
Element bracket_sum(const SLAlgebra& alg, const WordSum& s);

/// Full coderivation image Q(w): sum over (k, n-k)-shuffles of
/// +-{v_s(1), ..., v_s(k)} v_s(k+1) ... v_s(n).
WordSum apply_coderivation(const SLAlgebra& alg, const SymWord& word);
WordSum apply_coderivation(const SLAlgebra& alg, const WordSum& s);

struct RelationViolation {
  int arity = 0;
  SymWord word;
  Element residual;
};

struct RelationReport {
  int instances_checked = 0;
  std::vector<RelationViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Left side of the generalized Jacobi identity on one basis word, computed
/// from the double sum over k and Sh_{k,m-k}.
Element relation_residual(const SLAlgebra& alg, const SymWord& word, const Caps& caps = {});

/// Evaluates every basis word of length <= max_arity and weight < N.
RelationReport check_relations(const SLAlgebra& alg, int max_arity, const Caps& caps = {});

/// curv(a) = sum_{m>=1} {a, ..., a}_m / m!, with {.}_1 the differential.
/// Throws InputError unless a has degree 0.
Element curvature(const SLAlgebra& alg, const Element& a);
bool is_mc(const SLAlgebra& alg, const Element& a);

/// sum_{k>=0} {a^k, args...} / k! for any degree-0 a (no MC requirement).
Element twisted_bracket(const SLAlgebra& alg, const Element& a, std::span<const Element> args);

/// Table of the a-twisted operations for any degree-0 a. When a is not MC
/// the result is generally not an L-infinity algebra; it is still a valid
/// table (degrees and weights are preserved).
SLAlgebra twist_unchecked(const SLAlgebra& alg, const Element& a);

/// L^alpha. Throws NotMaurerCartan (witness = curv(alpha)) unless alpha is MC.
SLAlgebra twist_algebra(const SLAlgebra& alg, const Element& alpha);

/// Disjoint union of bases (left first), brackets vanish on mixed words,
/// nilpotency order max(N1, N2). Colliding symbols become "left.s" /
/// "right.s".
SLAlgebra direct_sum(const SLAlgebra& left, const SLAlgebra& right);

/// Re-indexes an element of a summand into the direct sum.
Element shift_indices(const Element& e, int offset);
/// Restricts an element of the direct sum to [offset, offset + dim).
Element restrict_indices(const Element& e, int offset, int dim);

}  // namespace slmc
