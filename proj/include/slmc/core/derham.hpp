#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slmc/core/caps.hpp"
#include "slmc/core/rational.hpp"

namespace slmc {

/// A monomial t^e dt_S of Omega_n. Coordinates are t_1..t_n (t_0 is
/// eliminated through t_0 = 1 - sum t_i); bit i-1 of `dt` stands for dt_i,
/// and the dt factors are kept in increasing index order.
struct FormKey {
  std::vector<int> exponents;
  unsigned dt = 0;

  int form_degree() const;
  int poly_degree() const;
  auto operator<=>(const FormKey&) const = default;
  bool operator==(const FormKey&) const = default;
};

/// Polynomial differential form on the n-simplex with rational coefficients.
class PolyForm {
 public:
  explicit PolyForm(int dim = 0) : dim_(dim) {}

  static PolyForm constant(int dim, const Rational& c);
  /// t_i, 1 <= i <= dim.
  static PolyForm coordinate(int dim, int i);
  /// dt_i, 1 <= i <= dim.
  static PolyForm differential(int dim, int i);
  static PolyForm monomial(int dim, FormKey key, const Rational& c = 1);

  int dim() const { return dim_; }
  const std::map<FormKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add(const FormKey& key, const Rational& c);
  PolyForm& operator+=(const PolyForm& other);
  PolyForm& operator-=(const PolyForm& other);
  PolyForm& operator*=(const Rational& s);
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, const PolyForm& b) { return a -= b; }
  friend PolyForm operator*(const Rational& s, PolyForm a) { return a *= s; }
  friend PolyForm operator-(PolyForm a) { return a *= Rational(-1); }
  friend bool operator==(const PolyForm&, const PolyForm&) = default;

  /// Common form degree; nullopt for zero or mixed-degree forms.
  std::optional<int> form_degree() const;
  bool has_form_degree(int k) const;
  /// Largest total polynomial degree (0 for the zero form).
  int poly_degree() const;
  /// Parts of a given form degree.
  PolyForm form_degree_part(int k) const;

 private:
  int dim_ = 0;
  std::map<FormKey, Rational> terms_;
};

/// Every key on the dim-simplex with polynomial degree <= max_poly_degree
/// and the given number of dt factors, in key order.
std::vector<FormKey> form_basis(int dim, int max_poly_degree, int form_degree);

/// Sign of dt_a ^ dt_b brought into increasing index order (bitmask
/// arguments); 0 when they share a factor.
int dt_wedge_sign(unsigned a, unsigned b);

/// Graded-commutative product. Throws ResourceError when the product has
/// polynomial degree above max_degree.
PolyForm wedge(const PolyForm& a, const PolyForm& b, int max_degree);
PolyForm wedge(const PolyForm& a, const PolyForm& b, const Caps& caps = {});

/// de Rham differential.
PolyForm d(const PolyForm& a);

/// An affine substitution t_k = constant + sum_j linear[j] u_{j+1}.
struct AffineCoordinate {
  Rational constant;
  std::vector<Rational> linear;
};

/// Pullback along the affine map given by one AffineCoordinate per source
/// coordinate, landing in forms on the `new_dim`-simplex.
PolyForm pullback(const PolyForm& a, int new_dim, const std::vector<AffineCoordinate>& map);

/// Pullback along the i-th coface Delta^{n-1} -> Delta^n, which sets the
/// i-th barycentric coordinate to 0. Throws InputError unless 0 <= i <= n,
/// n >= 1.
PolyForm face(const PolyForm& a, int i);

/// Pullback along the j-th codegeneracy Delta^{n+1} -> Delta^n
/// (barycentric s_j: t_j = u_j + u_{j+1}). Throws InputError unless
/// 0 <= j <= n; ResourceError when a exceeds max_degree.
PolyForm degeneracy(const PolyForm& a, int j, const Caps& caps = {});

/// "3/2 t1^2 dt1 + -1 t2"; "0" for zero.
std::string render(const PolyForm& a);
/// A monomial without its coefficient: "t1^2 dt1", or "1".
std::string render_key(int dim, const FormKey& key);

}  // namespace slmc
