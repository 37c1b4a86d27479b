#include "slmc/core/derham.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <numeric>

#include "slmc/core/errors.hpp"

namespace slmc {

int FormKey::form_degree() const { return std::popcount(dt); }

int FormKey::poly_degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

PolyForm PolyForm::constant(int dim, const Rational& c) {
  PolyForm f(dim);
  f.add(FormKey{std::vector<int>(static_cast<std::size_t>(dim), 0), 0}, c);
  return f;
}

PolyForm PolyForm::coordinate(int dim, int i) {
  if (i < 1 || i > dim) throw InputError("coordinate t" + std::to_string(i) + " out of range");
  FormKey key{std::vector<int>(static_cast<std::size_t>(dim), 0), 0};
  key.exponents[static_cast<std::size_t>(i - 1)] = 1;
  return monomial(dim, std::move(key));
}

PolyForm PolyForm::differential(int dim, int i) {
  if (i < 1 || i > dim) throw InputError("differential dt" + std::to_string(i) + " out of range");
  return monomial(dim, FormKey{std::vector<int>(static_cast<std::size_t>(dim), 0), 1u << (i - 1)});
}

PolyForm PolyForm::monomial(int dim, FormKey key, const Rational& c) {
  if (static_cast<int>(key.exponents.size()) != dim) throw InputError("monomial: exponent vector length mismatch");
  for (int e : key.exponents)
    if (e < 0) throw InputError("monomial: negative exponent");
  if (dim < 32 && (key.dt >> dim) != 0) throw InputError("monomial: dt index out of range");
  PolyForm f(dim);
  f.add(key, c);
  return f;
}

void PolyForm::add(const FormKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyForm& PolyForm::operator+=(const PolyForm& other) {
  if (other.dim_ != dim_) throw InputError("forms live on simplices of different dimension");
  for (const auto& [k, c] : other.terms_) add(k, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& other) {
  if (other.dim_ != dim_) throw InputError("forms live on simplices of different dimension");
  for (const auto& [k, c] : other.terms_) add(k, -c);
  return *this;
}

PolyForm& PolyForm::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, c] : terms_) c *= s;
  return *this;
}

std::optional<int> PolyForm::form_degree() const {
  std::optional<int> deg;
  for (const auto& [k, c] : terms_) {
    if (deg && *deg != k.form_degree()) return std::nullopt;
    deg = k.form_degree();
  }
  return deg;
}

bool PolyForm::has_form_degree(int k) const {
  for (const auto& [key, c] : terms_)
    if (key.form_degree() != k) return false;
  return true;
}

int PolyForm::poly_degree() const {
  int m = 0;
  for (const auto& [k, c] : terms_) m = std::max(m, k.poly_degree());
  return m;
}

PolyForm PolyForm::form_degree_part(int k) const {
  PolyForm out(dim_);
  for (const auto& [key, c] : terms_)
    if (key.form_degree() == k) out.terms_.emplace(key, c);
  return out;
}

std::vector<FormKey> form_basis(int dim, int max_poly_degree, int form_degree) {
  std::vector<FormKey> out;
  if (form_degree < 0 || form_degree > dim) return out;
  std::vector<std::vector<int>> exponents;
  std::vector<int> e(static_cast<std::size_t>(dim), 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == dim) {
      exponents.push_back(e);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      e[static_cast<std::size_t>(pos)] = k;
      rec(pos + 1, left - k);
    }
    e[static_cast<std::size_t>(pos)] = 0;
  };
  rec(0, max_poly_degree);
  for (const auto& ex : exponents)
    for (unsigned dt = 0; dt < (1u << dim); ++dt)
      if (std::popcount(dt) == form_degree) out.push_back(FormKey{ex, dt});
  std::sort(out.begin(), out.end());
  return out;
}

int dt_wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int parity = 0;
  // Each dt in b passes every dt in a with a larger index.
  for (unsigned rest = b; rest; rest &= rest - 1) {
    const unsigned bit = rest & (~rest + 1);
    parity += std::popcount(a & ~((bit << 1) - 1));
  }
  return (parity & 1) ? -1 : 1;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b, int max_degree) {
  if (a.dim() != b.dim()) throw InputError("wedge: forms live on simplices of different dimension");
  PolyForm out(a.dim());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      const int sign = dt_wedge_sign(ka.dt, kb.dt);
      if (sign == 0) continue;
      FormKey key{ka.exponents, ka.dt | kb.dt};
      for (std::size_t i = 0; i < key.exponents.size(); ++i) key.exponents[i] += kb.exponents[i];
      if (key.poly_degree() > max_degree)
        throw ResourceError("wedge: polynomial degree " + std::to_string(key.poly_degree()) + " exceeds cap " +
                            std::to_string(max_degree));
      out.add(key, sign * ca * cb);
    }
  return out;
}

PolyForm wedge(const PolyForm& a, const PolyForm& b, const Caps& caps) { return wedge(a, b, caps.max_poly_degree); }

PolyForm d(const PolyForm& a) {
  PolyForm out(a.dim());
  for (const auto& [key, c] : a.terms())
    for (int k = 0; k < a.dim(); ++k) {
      const int e = key.exponents[static_cast<std::size_t>(k)];
      const unsigned bit = 1u << k;
      if (e == 0 || (key.dt & bit)) continue;
      FormKey next = key;
      next.exponents[static_cast<std::size_t>(k)] -= 1;
      next.dt |= bit;
      // dt_k moves in front of the dt factors with smaller index.
      const int below = std::popcount(key.dt & (bit - 1));
      out.add(next, (below & 1 ? -1 : 1) * c * e);
    }
  return out;
}

PolyForm pullback(const PolyForm& a, int new_dim, const std::vector<AffineCoordinate>& map) {
  if (static_cast<int>(map.size()) != a.dim()) throw InputError("pullback: one substitution per coordinate required");
  const int unbounded = 1 << 20;
  std::vector<PolyForm> coord, dcoord;
  for (const auto& m : map) {
    if (static_cast<int>(m.linear.size()) != new_dim) throw InputError("pullback: substitution has wrong arity");
    PolyForm value = PolyForm::constant(new_dim, m.constant);
    PolyForm dvalue(new_dim);
    for (int j = 0; j < new_dim; ++j) {
      value += m.linear[static_cast<std::size_t>(j)] * PolyForm::coordinate(new_dim, j + 1);
      dvalue += m.linear[static_cast<std::size_t>(j)] * PolyForm::differential(new_dim, j + 1);
    }
    coord.push_back(std::move(value));
    dcoord.push_back(std::move(dvalue));
  }
  PolyForm out(new_dim);
  for (const auto& [key, c] : a.terms()) {
    PolyForm term = PolyForm::constant(new_dim, c);
    for (int k = 0; k < a.dim(); ++k)
      for (int e = 0; e < key.exponents[static_cast<std::size_t>(k)]; ++e)
        term = wedge(term, coord[static_cast<std::size_t>(k)], unbounded);
    for (int k = 0; k < a.dim(); ++k)
      if (key.dt & (1u << k)) term = wedge(term, dcoord[static_cast<std::size_t>(k)], unbounded);
    out += term;
  }
  return out;
}

PolyForm face(const PolyForm& a, int i) {
  const int n = a.dim();
  if (n < 1) throw InputError("face: the 0-simplex has no faces");
  if (i < 0 || i > n) throw InputError("face index " + std::to_string(i) + " out of range 0.." + std::to_string(n));
  const int m = n - 1;
  std::vector<AffineCoordinate> map(static_cast<std::size_t>(n),
                                    AffineCoordinate{0, std::vector<Rational>(static_cast<std::size_t>(m), 0)});
  for (int k = 1; k <= n; ++k) {
    auto& t = map[static_cast<std::size_t>(k - 1)];
    if (i == 0) {
      if (k == 1) {
        t.constant = 1;
        for (auto& q : t.linear) q = -1;
      } else {
        t.linear[static_cast<std::size_t>(k - 2)] = 1;
      }
    } else if (k < i) {
      t.linear[static_cast<std::size_t>(k - 1)] = 1;
    } else if (k > i) {
      t.linear[static_cast<std::size_t>(k - 2)] = 1;
    }
  }
  return pullback(a, m, map);
}

PolyForm degeneracy(const PolyForm& a, int j, const Caps& caps) {
  const int n = a.dim();
  if (j < 0 || j > n)
    throw InputError("degeneracy index " + std::to_string(j) + " out of range 0.." + std::to_string(n));
  if (a.poly_degree() > caps.max_poly_degree)
    throw ResourceError("degeneracy: polynomial degree exceeds cap " + std::to_string(caps.max_poly_degree));
  const int m = n + 1;
  std::vector<AffineCoordinate> map(static_cast<std::size_t>(n),
                                    AffineCoordinate{0, std::vector<Rational>(static_cast<std::size_t>(m), 0)});
  for (int k = 1; k <= n; ++k) {
    auto& t = map[static_cast<std::size_t>(k - 1)];
    if (k < j) {
      t.linear[static_cast<std::size_t>(k - 1)] = 1;
    } else if (k == j) {
      t.linear[static_cast<std::size_t>(k - 1)] = 1;
      t.linear[static_cast<std::size_t>(k)] = 1;
    } else {
      t.linear[static_cast<std::size_t>(k)] = 1;
    }
  }
  return pullback(a, m, map);
}

std::string render(const PolyForm& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (const auto& [key, c] : a.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c);
    for (std::size_t i = 0; i < key.exponents.size(); ++i) {
      const int e = key.exponents[i];
      if (e == 0) continue;
      out += " t" + std::to_string(i + 1);
      if (e > 1) out += "^" + std::to_string(e);
    }
    for (std::size_t i = 0; i < key.exponents.size(); ++i)
      if (key.dt & (1u << i)) out += " dt" + std::to_string(i + 1);
  }
  return out;
}

std::string render_key(int dim, const FormKey& key) {
  const std::string text = render(PolyForm::monomial(dim, key));
  return text == "1" ? text : text.substr(2);
}

}  // namespace slmc
