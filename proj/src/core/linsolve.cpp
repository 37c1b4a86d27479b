#include "slmc/core/linsolve.hpp"

#include <algorithm>

#include "slmc/core/errors.hpp"

namespace slmc {

void LinearSystem::add_equation(SparseRow row, const Rational& value) {
  for (auto it = row.begin(); it != row.end();) {
    if (it->first < 0 || it->first >= unknowns) throw InputError("linear system: unknown index out of range");
    it = it->second == 0 ? row.erase(it) : std::next(it);
  }
  rows.push_back(std::move(row));
  rhs.push_back(value);
}

namespace {

// row += factor * other (for both coefficient maps and right-hand sides).
void axpy(SparseRow& row, Rational& value, const Rational& factor, const SparseRow& other, const Rational& other_value) {
  for (const auto& [j, c] : other) {
    auto [it, inserted] = row.try_emplace(j, factor * c);
    if (!inserted) {
      it->second += factor * c;
      if (it->second == 0) row.erase(it);
    }
  }
  value += factor * other_value;
}

}  // namespace

LinearSolution solve(const LinearSystem& system, const FreeValues& free) {
  struct Pivot {
    SparseRow row;
    Rational value;
  };
  std::map<int, Pivot> pivots;  // leading column -> row with leading coefficient 1
  LinearSolution result;
  for (std::size_t r = 0; r < system.rows.size(); ++r) {
    SparseRow row = system.rows[r];
    Rational value = system.rhs[r];
    while (!row.empty()) {
      auto lead = row.begin();
      auto p = pivots.find(lead->first);
      if (p == pivots.end()) break;
      const Rational factor = -lead->second;
      axpy(row, value, factor, p->second.row, p->second.value);
    }
    if (row.empty()) {
      if (value != 0) {
        result.failing_row = static_cast<int>(r);
        return result;
      }
      continue;
    }
    const Rational inv = 1 / row.begin()->second;
    for (auto& [j, c] : row) c *= inv;
    value *= inv;
    const int col = row.begin()->first;
    pivots.emplace(col, Pivot{std::move(row), std::move(value)});
  }
  result.consistent = true;
  result.rank = static_cast<int>(pivots.size());
  result.values.assign(static_cast<std::size_t>(system.unknowns), Rational(0));
  if (free)
    for (int j = 0; j < system.unknowns; ++j)
      if (!pivots.count(j)) result.values[static_cast<std::size_t>(j)] = free(j);
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    Rational x = it->second.value;
    for (const auto& [j, c] : it->second.row)
      if (j != it->first) x -= c * result.values[static_cast<std::size_t>(j)];
    result.values[static_cast<std::size_t>(it->first)] = x;
  }
  return result;
}

// --- polynomials -------------------------------------------------------------

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add({}, c);
  return p;
}

Polynomial Polynomial::variable(int index) {
  Polynomial p;
  p.add({index}, 1);
  return p;
}

void Polynomial::add(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  for (const auto& [m, c] : other.terms_) add(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      Polynomial::Monomial m;
      m.reserve(ma.size() + mb.size());
      std::merge(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(m));
      out.add(m, ca * cb);
    }
  return out;
}

Rational Polynomial::evaluate(const std::vector<Rational>& values) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (int v : m) {
      if (v < 0 || v >= static_cast<int>(values.size())) throw InputError("evaluate: unknown index out of range");
      term *= values[static_cast<std::size_t>(v)];
    }
    total += term;
  }
  return total;
}

Polynomial Polynomial::substitute(const std::vector<Polynomial>& replacement) const {
  Polynomial out;
  for (const auto& [m, c] : terms_) {
    Polynomial term = constant(c);
    for (int v : m) term = term * replacement.at(static_cast<std::size_t>(v));
    out += term;
  }
  return out;
}

std::string render(const Polynomial& p, const std::vector<std::string>& names) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c);
    std::string mono;
    for (std::size_t i = 0; i < m.size();) {
      std::size_t j = i;
      while (j < m.size() && m[j] == m[i]) ++j;
      if (!mono.empty()) mono += "*";
      mono += names.at(static_cast<std::size_t>(m[i]));
      if (j - i > 1) mono += "^" + std::to_string(j - i);
      i = j;
    }
    if (!mono.empty()) out += " " + mono;
  }
  return out;
}

}  // namespace slmc
