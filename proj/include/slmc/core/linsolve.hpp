#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "slmc/core/rational.hpp"

namespace slmc {

using SparseRow = std::map<int, Rational>;

/// A x = b over Q with sparse rows.
struct LinearSystem {
  int unknowns = 0;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;

  void add_equation(SparseRow row, const Rational& value);
};

struct LinearSolution {
  bool consistent = false;
  /// One solution (empty if inconsistent). Free unknowns are 0 unless a
  /// value source is passed to solve().
  std::vector<Rational> values;
  /// Index of an equation found inconsistent, or -1.
  int failing_row = -1;
  int rank = 0;
};

/// Value assigned to free unknown j.
using FreeValues = std::function<Rational(int)>;

/// Exact Gaussian elimination.
LinearSolution solve(const LinearSystem& system, const FreeValues& free = {});

/// Sparse polynomial over Q in numbered unknowns. A monomial is the sorted
/// list of unknown indices with repetition.
class Polynomial {
 public:
  using Monomial = std::vector<int>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(int index);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(const Monomial& m, const Rational& c);
  int degree() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial&, const Polynomial&) = default;

  Rational evaluate(const std::vector<Rational>& values) const;
  /// Substitutes unknown i -> replacement[i].
  Polynomial substitute(const std::vector<Polynomial>& replacement) const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// "2 a*b^2 + -1 c"; "0" for zero.
std::string render(const Polynomial& p, const std::vector<std::string>& names);

}  // namespace slmc
