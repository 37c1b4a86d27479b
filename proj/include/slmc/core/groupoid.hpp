#pragma once

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "slmc/core/derham.hpp"
#include "slmc/core/linsolve.hpp"
#include "slmc/core/morphism.hpp"

namespace slmc {

/// An element of L (x) Omega_n, stored as basis index -> form coefficient.
class TensorElement {
 public:
  explicit TensorElement(int dim = 0) : dim_(dim) {}
  static TensorElement pure(int dim, int basis, PolyForm form);
  /// e (x) 1.
  static TensorElement constant(int dim, const Element& e);

  int dim() const { return dim_; }
  const std::map<int, PolyForm>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  PolyForm component(int basis) const;

  void add(int basis, const PolyForm& form);
  TensorElement& operator+=(const TensorElement& other);
  TensorElement& operator-=(const TensorElement& other);
  TensorElement& operator*=(const Rational& s);
  friend TensorElement operator+(TensorElement a, const TensorElement& b) { return a += b; }
  friend TensorElement operator-(TensorElement a, const TensorElement& b) { return a -= b; }
  friend TensorElement operator*(const Rational& s, TensorElement a) { return a *= s; }
  friend bool operator==(const TensorElement&, const TensorElement&) = default;

  /// True when every term has deg(basis) + form degree == k.
  bool has_total_degree(const GradedSpace& space, int k) const;
  int poly_degree() const;
  TensorElement of_weight(const GradedSpace& space, int w) const;
  TensorElement below_weight(const GradedSpace& space, int bound) const;
  /// Value at a vertex-free simplex: the Element when dim() == 0.
  Element as_element() const;

 private:
  int dim_ = 0;
  std::map<int, PolyForm> terms_;
};

/// "(1 t1) x + (-1 dt1) h"; "0" for zero.
std::string render(const GradedSpace& space, const TensorElement& x);

/// Multilinear extension of a table of multilinear maps on L to L (x) Omega_n:
/// {v_1 w_1, ..., v_m w_m} = +-op(v_1 ... v_m) (x) w_1 ... w_m, where the sign
/// comes from moving every form to the right past the later vectors.
TensorElement tensor_apply(const GradedSpace& source, int dim, std::span<const TensorElement> args,
                           const std::function<const Element&(const SymWord&)>& table, const Caps& caps = {});

/// Bracket of L (x) Omega_n. Arity 1 is the differential dv (x) w + (-1)^|v| v (x) dw.
TensorElement tensor_bracket(const SLAlgebra& alg, std::span<const TensorElement> args, const Caps& caps = {});
TensorElement tensor_differential(const SLAlgebra& alg, const TensorElement& x);

/// curv(x) for x of total degree 0. Throws InputError otherwise.
TensorElement tensor_curvature(const SLAlgebra& alg, const TensorElement& x, const Caps& caps = {});
bool is_mc_simplex(const SLAlgebra& alg, const TensorElement& x, const Caps& caps = {});

/// Face and degeneracy applied to every form coefficient.
TensorElement simplicial_face(const TensorElement& x, int i);
TensorElement simplicial_degeneracy(const TensorElement& x, int j, const Caps& caps = {});

/// F^{(n)}_*(x) = sum_k F^{(n)}'(x^k) / k!.
TensorElement mc_map(const InftyMorphism& f, const TensorElement& x, const Caps& caps = {});

/// Shift_alpha: x |-> alpha (x) 1 + x. Throws NotMaurerCartan.
TensorElement shift_iso(const SLAlgebra& alg, const Element& alpha, const TensorElement& x);
TensorElement shift_iso_inverse(const SLAlgebra& alg, const Element& alpha, const TensorElement& x);

/// Shift_alpha o F_*.
TensorElement mc_enhanced(const EnhancedMorphism& e, const TensorElement& x, const Caps& caps = {});

/// Polynomial system for a generic degree-0 element with polynomial degree
/// <= D: one unknown per (basis, monomial) pair of total degree 0.
struct MCSystem {
  struct Unknown {
    int basis = 0;
    FormKey key;
  };
  struct Equation {
    int basis = 0;  // the coefficient of basis (x) key in the curvature
    FormKey key;
    Polynomial poly;
  };
  int dim = 0;
  std::vector<Unknown> unknowns;
  std::vector<std::string> names;
  std::vector<Equation> equations;

  TensorElement element(const std::vector<Rational>& values) const;
  bool accepts(const std::vector<Rational>& values) const;
};

MCSystem mc_system(const SLAlgebra& alg, int dim, int poly_degree, const Caps& caps = {});

struct FaceConstraint {
  int index = 0;
  TensorElement value;
};

struct LiftResult {
  bool ok = false;
  TensorElement value;
  /// Weight of the failing stage and the weight-k curvature left over.
  int stage = 0;
  TensorElement obstruction;
  std::string message;
};

/// One filtration stage: given x with curvature vanishing in weights < k,
/// finds a weight-k correction of polynomial degree <= D so that the
/// curvature also vanishes in weight k and the listed faces match in
/// weight k. Throws InputError when the lower-weight precondition fails.
/// `free` picks the free unknowns of the stage (0 when empty).
LiftResult lift_mc(const SLAlgebra& alg, const TensorElement& x, int k, int poly_degree,
                   const std::vector<FaceConstraint>& faces = {}, const Caps& caps = {}, const FreeValues& free = {});

/// Runs lift_mc for k = 1 .. N-1.
LiftResult lift_to_mc(const SLAlgebra& alg, const TensorElement& seed, int poly_degree,
                      const std::vector<FaceConstraint>& faces = {}, const Caps& caps = {},
                      const FreeValues& free = {});

/// Fills the horn Lambda^n_i (n = 1 or 2) given faces j != i, seeding the
/// lift with each degeneracy of each given face in turn. Throws
/// InputError on bad indices, non-MC faces, or incompatible faces.
LiftResult fill_horn(const SLAlgebra& alg, int n, int i, const std::map<int, TensorElement>& faces, int poly_degree,
                     const Caps& caps = {});

/// Searches a 1-simplex from p to q (face 1 = p, face 0 = q).
LiftResult connect_points(const SLAlgebra& alg, const Element& p, const Element& q, int poly_degree,
                          const Caps& caps = {});

struct Pi0Result {
  struct Certificate {
    int from = 0;
    int to = 0;
    TensorElement path;
  };
  /// Class label per point: the smallest point index in its class.
  std::vector<int> component;
  std::vector<Certificate> certificates;
  int classes() const;
};

/// Points are merged only through explicit 1-simplices of polynomial degree
/// <= D; separate classes mean "not connected at degree <= D".
Pi0Result pi0(const SLAlgebra& alg, const std::vector<Element>& points, int poly_degree, const Caps& caps = {});

}  // namespace slmc
