#include "slmc/core/groupoid.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>

namespace slmc {

// --- tensor elements ---------------------------------------------------------

TensorElement TensorElement::pure(int dim, int basis, PolyForm form) {
  TensorElement x(dim);
  x.add(basis, form);
  return x;
}

TensorElement TensorElement::constant(int dim, const Element& e) {
  TensorElement x(dim);
  for (const auto& [i, c] : e.terms()) x.add(i, PolyForm::constant(dim, c));
  return x;
}

PolyForm TensorElement::component(int basis) const {
  auto it = terms_.find(basis);
  return it == terms_.end() ? PolyForm(dim_) : it->second;
}

void TensorElement::add(int basis, const PolyForm& form) {
  if (form.dim() != dim_) throw InputError("tensor element: form lives on the wrong simplex");
  if (form.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(basis, form);
  if (!inserted) {
    it->second += form;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

TensorElement& TensorElement::operator+=(const TensorElement& other) {
  if (other.dim_ != dim_) throw InputError("tensor elements live on simplices of different dimension");
  for (const auto& [b, f] : other.terms_) add(b, f);
  return *this;
}

TensorElement& TensorElement::operator-=(const TensorElement& other) {
  if (other.dim_ != dim_) throw InputError("tensor elements live on simplices of different dimension");
  for (const auto& [b, f] : other.terms_) add(b, -f);
  return *this;
}

TensorElement& TensorElement::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [b, f] : terms_) f *= s;
  return *this;
}

bool TensorElement::has_total_degree(const GradedSpace& space, int k) const {
  for (const auto& [b, f] : terms_)
    if (!f.has_form_degree(k - space.degree(b))) return false;
  return true;
}

int TensorElement::poly_degree() const {
  int m = 0;
  for (const auto& [b, f] : terms_) m = std::max(m, f.poly_degree());
  return m;
}

TensorElement TensorElement::of_weight(const GradedSpace& space, int w) const {
  TensorElement out(dim_);
  for (const auto& [b, f] : terms_)
    if (space.weight(b) == w) out.terms_.emplace(b, f);
  return out;
}

TensorElement TensorElement::below_weight(const GradedSpace& space, int bound) const {
  TensorElement out(dim_);
  for (const auto& [b, f] : terms_)
    if (space.weight(b) < bound) out.terms_.emplace(b, f);
  return out;
}

Element TensorElement::as_element() const {
  if (dim_ != 0) throw InputError("as_element: not a 0-simplex");
  Element e;
  for (const auto& [b, f] : terms_)
    for (const auto& [key, c] : f.terms()) e.add_term(b, c);
  return e;
}

std::string render(const GradedSpace& space, const TensorElement& x) {
  if (x.is_zero()) return "0";
  std::string out;
  for (const auto& [b, f] : x.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + render(f) + ") " + space[b].symbol;
  }
  return out;
}

namespace {

struct Term {
  int basis = 0;
  FormKey key;
  Rational coeff;
};

std::vector<Term> flatten(const TensorElement& x) {
  std::vector<Term> out;
  for (const auto& [b, f] : x.terms())
    for (const auto& [key, c] : f.terms()) out.push_back({b, key, c});
  return out;
}

TensorElement unit_term(int dim, const Term& t) { return TensorElement::pure(dim, t.basis, PolyForm::monomial(dim, t.key)); }

void check_indices(const GradedSpace& space, const TensorElement& x) {
  for (const auto& [b, f] : x.terms())
    if (b < 0 || b >= space.dim()) throw InputError("tensor element uses a foreign basis index");
}

// Multisets {u_1 <= ... <= u_k} of term indices with 1 <= k <= max_size and
// total basis weight < bound. `fn` receives the indices and 1/(multiplicities!).
void for_each_multiset(const std::vector<Term>& terms, const GradedSpace& space, int bound, int max_size,
                       const std::function<void(const std::vector<int>&, const Rational&)>& fn) {
  std::vector<int> chosen;
  std::function<void(int, int)> rec = [&](int start, int weight) {
    if (!chosen.empty()) {
      Rational inv = 1;
      for (std::size_t i = 0; i < chosen.size();) {
        std::size_t j = i;
        while (j < chosen.size() && chosen[j] == chosen[i]) ++j;
        inv /= factorial(static_cast<unsigned>(j - i));
        i = j;
      }
      fn(chosen, inv);
    }
    if (static_cast<int>(chosen.size()) == max_size) return;
    for (int u = start; u < static_cast<int>(terms.size()); ++u) {
      const int w = weight + space.weight(terms[static_cast<std::size_t>(u)].basis);
      if (w >= bound) continue;
      chosen.push_back(u);
      rec(u, w);
      chosen.pop_back();
    }
  };
  rec(0, 0);
}

}  // namespace

TensorElement tensor_apply(const GradedSpace& source, int dim, std::span<const TensorElement> args,
                           const std::function<const Element&(const SymWord&)>& table, const Caps& caps) {
  const int m = static_cast<int>(args.size());
  if (m == 0) throw InputError("tensor_apply: arity must be >= 1");
  for (const auto& a : args) {
    if (a.dim() != dim) throw InputError("tensor_apply: arguments live on different simplices");
    check_indices(source, a);
  }
  const int cap = m * caps.max_poly_degree;
  std::vector<std::vector<Term>> flat;
  for (const auto& a : args) flat.push_back(flatten(a));
  TensorElement out(dim);
  std::vector<int> raw(static_cast<std::size_t>(m));
  std::function<void(int, FormKey, int, int, Rational)> rec = [&](int pos, FormKey key, int form_deg_sum,
                                                                   int parity, Rational coeff) {
    if (pos == m) {
      auto canon = canonicalize(source, raw);
      if (canon.sign == 0) return;
      const Element& value = table(canon.word);
      if (value.is_zero()) return;
      if (key.poly_degree() > cap)
        throw ResourceError("tensor operation: polynomial degree " + std::to_string(key.poly_degree()) +
                            " exceeds cap " + std::to_string(cap));
      Rational c = coeff * canon.sign * ((parity & 1) ? -1 : 1);
      for (const auto& [i, v] : value.terms()) out.add(i, PolyForm::monomial(dim, key, c * v));
      return;
    }
    for (const auto& t : flat[static_cast<std::size_t>(pos)]) {
      const int sign = dt_wedge_sign(key.dt, t.key.dt);
      if (sign == 0) continue;
      FormKey next{key.exponents, key.dt | t.key.dt};
      for (std::size_t i = 0; i < next.exponents.size(); ++i) next.exponents[i] += t.key.exponents[i];
      // The forms collected so far move right past this vector.
      const int p = parity + form_deg_sum * source.degree(t.basis) + (sign < 0 ? 1 : 0);
      raw[static_cast<std::size_t>(pos)] = t.basis;
      rec(pos + 1, std::move(next), form_deg_sum + t.key.form_degree(), p & 1, coeff * t.coeff);
    }
  };
  rec(0, FormKey{std::vector<int>(static_cast<std::size_t>(dim), 0), 0}, 0, 0, Rational(1));
  return out;
}

TensorElement tensor_differential(const SLAlgebra& alg, const TensorElement& x) {
  const auto& space = alg.space();
  check_indices(space, x);
  TensorElement out(x.dim());
  for (const auto& [b, f] : x.terms()) {
    for (const auto& [i, c] : alg.bracket(SymWord{{b}}).terms()) out.add(i, c * f);
    PolyForm df = d(f);
    if (space.odd(b)) df *= Rational(-1);
    out.add(b, df);
  }
  return out;
}

TensorElement tensor_bracket(const SLAlgebra& alg, std::span<const TensorElement> args, const Caps& caps) {
  if (args.empty()) throw InputError("tensor_bracket: arity must be >= 1");
  if (args.size() == 1) return tensor_differential(alg, args[0]);
  return tensor_apply(alg.space(), args[0].dim(), args,
                      [&](const SymWord& w) -> const Element& { return alg.bracket(w); }, caps);
}

TensorElement tensor_curvature(const SLAlgebra& alg, const TensorElement& x, const Caps& caps) {
  const auto& space = alg.space();
  check_indices(space, x);
  if (!x.has_total_degree(space, 0)) throw InputError("tensor curvature: element must have total degree 0");
  const int dim = x.dim();
  const auto terms = flatten(x);
  TensorElement out(dim);
  out += tensor_differential(alg, x);
  const int max_arity = alg.max_arity();
  if (max_arity < 2) return out;
  for_each_multiset(terms, space, alg.nilpotency(), max_arity, [&](const std::vector<int>& chosen, const Rational& inv) {
    if (chosen.size() < 2) return;
    Rational coeff = inv;
    std::vector<TensorElement> args;
    for (int u : chosen) {
      coeff *= terms[static_cast<std::size_t>(u)].coeff;
      args.push_back(unit_term(dim, terms[static_cast<std::size_t>(u)]));
    }
    out += coeff * tensor_bracket(alg, args, caps);
  });
  return out;
}

bool is_mc_simplex(const SLAlgebra& alg, const TensorElement& x, const Caps& caps) {
  for (const auto& [b, f] : x.terms())
    if (b < 0 || b >= alg.space().dim()) return false;
  if (!x.has_total_degree(alg.space(), 0)) return false;
  return tensor_curvature(alg, x, caps).is_zero();
}

TensorElement simplicial_face(const TensorElement& x, int i) {
  if (x.dim() < 1) throw InputError("face: the 0-simplex has no faces");
  if (i < 0 || i > x.dim()) throw InputError("face index " + std::to_string(i) + " out of range");
  TensorElement out(x.dim() - 1);
  for (const auto& [b, f] : x.terms()) out.add(b, face(f, i));
  return out;
}

TensorElement simplicial_degeneracy(const TensorElement& x, int j, const Caps& caps) {
  if (j < 0 || j > x.dim()) throw InputError("degeneracy index " + std::to_string(j) + " out of range");
  TensorElement out(x.dim() + 1);
  for (const auto& [b, f] : x.terms()) out.add(b, degeneracy(f, j, caps));
  return out;
}

TensorElement mc_map(const InftyMorphism& f, const TensorElement& x, const Caps& caps) {
  const auto& src = f.source().space();
  check_indices(src, x);
  if (!x.has_total_degree(src, 0)) throw InputError("mc_map: element must have total degree 0");
  const int dim = x.dim();
  const auto terms = flatten(x);
  int max_arity = 0;
  for (const auto& [w, v] : f.taylor()) max_arity = std::max(max_arity, static_cast<int>(w.length()));
  TensorElement out(dim);
  if (max_arity == 0) return out;
  for_each_multiset(terms, src, f.weight_bound(), max_arity, [&](const std::vector<int>& chosen, const Rational& inv) {
    Rational coeff = inv;
    std::vector<TensorElement> args;
    for (int u : chosen) {
      coeff *= terms[static_cast<std::size_t>(u)].coeff;
      args.push_back(unit_term(dim, terms[static_cast<std::size_t>(u)]));
    }
    out += coeff * tensor_apply(src, dim, args, [&](const SymWord& w) -> const Element& { return f.coefficient(w); },
                                caps);
  });
  return out;
}

namespace {

void require_mc(const SLAlgebra& alg, const Element& alpha) {
  if (!alpha.has_degree(alg.space(), 0)) throw InputError("shift: MC element must have degree 0");
  Element curv = curvature(alg, alpha);
  if (!curv.is_zero())
    throw NotMaurerCartan("shift: element is not Maurer-Cartan; curvature = " + render(alg.space(), curv), curv);
}

}  // namespace

TensorElement shift_iso(const SLAlgebra& alg, const Element& alpha, const TensorElement& x) {
  require_mc(alg, alpha);
  return TensorElement::constant(x.dim(), alpha) + x;
}

TensorElement shift_iso_inverse(const SLAlgebra& alg, const Element& alpha, const TensorElement& x) {
  require_mc(alg, alpha);
  return x - TensorElement::constant(x.dim(), alpha);
}

TensorElement mc_enhanced(const EnhancedMorphism& e, const TensorElement& x, const Caps& caps) {
  return shift_iso(e.target(), e.alpha(), mc_map(e.morphism(), x, caps));
}

// --- MC system ---------------------------------------------------------------

namespace {

std::vector<MCSystem::Unknown> degree_zero_unknowns(const SLAlgebra& alg, int dim, int poly_degree,
                                                    const std::function<bool(int)>& keep) {
  std::vector<MCSystem::Unknown> out;
  const auto& space = alg.space();
  for (int b = 0; b < space.dim(); ++b) {
    if (!keep(b)) continue;
    const int s = -space.degree(b);
    for (auto& key : form_basis(dim, poly_degree, s)) out.push_back({b, std::move(key)});
  }
  return out;
}

}  // namespace

TensorElement MCSystem::element(const std::vector<Rational>& values) const {
  if (values.size() != unknowns.size()) throw InputError("MC system: wrong number of values");
  TensorElement x(dim);
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    x.add(unknowns[u].basis, PolyForm::monomial(dim, unknowns[u].key, values[u]));
  return x;
}

bool MCSystem::accepts(const std::vector<Rational>& values) const {
  for (const auto& eq : equations)
    if (eq.poly.evaluate(values) != 0) return false;
  return true;
}

MCSystem mc_system(const SLAlgebra& alg, int dim, int poly_degree, const Caps& caps) {
  if (dim < 0 || dim > 3) throw InputError("mc-system: simplex dimension must be in 0..3");
  if (poly_degree < 0 || poly_degree > caps.max_poly_degree)
    throw ResourceError("mc-system: polynomial degree " + std::to_string(poly_degree) + " exceeds cap " +
                        std::to_string(caps.max_poly_degree));
  const auto& space = alg.space();
  MCSystem sys;
  sys.dim = dim;
  sys.unknowns = degree_zero_unknowns(alg, dim, poly_degree, [](int) { return true; });
  for (const auto& u : sys.unknowns) sys.names.push_back(space[u.basis].symbol + "[" + render_key(dim, u.key) + "]");

  std::vector<Term> terms;
  for (const auto& u : sys.unknowns) terms.push_back({u.basis, u.key, Rational(1)});
  std::map<std::pair<int, FormKey>, Polynomial> eqs;
  auto collect = [&](const TensorElement& value, const Polynomial& poly) {
    for (const auto& [b, f] : value.terms())
      for (const auto& [key, c] : f.terms()) eqs[{b, key}] += c * poly;
  };
  const int max_arity = std::max(1, alg.max_arity());
  for_each_multiset(terms, space, alg.nilpotency(), max_arity, [&](const std::vector<int>& chosen, const Rational& inv) {
    std::vector<TensorElement> args;
    Polynomial mono = Polynomial::constant(inv);
    for (int u : chosen) {
      args.push_back(unit_term(dim, terms[static_cast<std::size_t>(u)]));
      mono = mono * Polynomial::variable(u);
    }
    collect(tensor_bracket(alg, args, caps), mono);
  });
  for (auto& [k, poly] : eqs)
    if (!poly.is_zero()) sys.equations.push_back({k.first, k.second, std::move(poly)});
  return sys;
}

// --- lifting, horns, components ---------------------------------------------

LiftResult lift_mc(const SLAlgebra& alg, const TensorElement& x, int k, int poly_degree,
                   const std::vector<FaceConstraint>& faces, const Caps& caps, const FreeValues& free) {
  const auto& space = alg.space();
  const int dim = x.dim();
  check_indices(space, x);
  if (!x.has_total_degree(space, 0)) throw InputError("lift: element must have total degree 0");
  if (k < 1) throw InputError("lift: stage must be >= 1");
  for (const auto& fc : faces) {
    if (fc.index < 0 || fc.index > dim || dim == 0) throw InputError("lift: face index out of range");
    if (fc.value.dim() != dim - 1) throw InputError("lift: prescribed face has the wrong dimension");
  }
  const TensorElement curv = tensor_curvature(alg, x, caps);
  if (!curv.below_weight(space, k).is_zero())
    throw InputError("lift: curvature does not vanish below weight " + std::to_string(k));

  // Row keys: (-1, basis, key) for the curvature, (c, basis, key) for face c.
  using RowKey = std::tuple<int, int, FormKey>;
  std::map<RowKey, int> row_index;
  std::vector<SparseRow> rows;
  std::vector<Rational> rhs;
  auto row_of = [&](const RowKey& key) {
    auto [it, inserted] = row_index.try_emplace(key, static_cast<int>(rows.size()));
    if (inserted) {
      rows.emplace_back();
      rhs.emplace_back(0);
    }
    return it->second;
  };

  const auto unknowns = degree_zero_unknowns(alg, dim, poly_degree, [&](int b) { return space.weight(b) == k; });
  for (std::size_t u = 0; u < unknowns.size(); ++u) {
    const TensorElement e = TensorElement::pure(dim, unknowns[u].basis, PolyForm::monomial(dim, unknowns[u].key));
    const TensorElement de = tensor_differential(alg, e).of_weight(space, k);
    for (const auto& [b, f] : de.terms())
      for (const auto& [key, c] : f.terms()) rows[static_cast<std::size_t>(row_of({-1, b, key}))][static_cast<int>(u)] += c;
    for (std::size_t c = 0; c < faces.size(); ++c) {
      const TensorElement fe = simplicial_face(e, faces[c].index);
      for (const auto& [b, f] : fe.terms())
        for (const auto& [key, q] : f.terms())
          rows[static_cast<std::size_t>(row_of({static_cast<int>(c), b, key}))][static_cast<int>(u)] += q;
    }
  }
  const TensorElement curv_k = curv.of_weight(space, k);
  for (const auto& [b, f] : curv_k.terms())
    for (const auto& [key, c] : f.terms()) rhs[static_cast<std::size_t>(row_of({-1, b, key}))] -= c;
  for (std::size_t c = 0; c < faces.size(); ++c) {
    const TensorElement gap = faces[c].value - simplicial_face(x, faces[c].index);
    if (!gap.below_weight(space, k).is_zero())
      throw InputError("lift: face " + std::to_string(faces[c].index) + " does not match below weight " +
                       std::to_string(k));
    const TensorElement gap_k = gap.of_weight(space, k);
    for (const auto& [b, f] : gap_k.terms())
      for (const auto& [key, q] : f.terms()) rhs[static_cast<std::size_t>(row_of({static_cast<int>(c), b, key}))] += q;
  }

  LinearSystem system;
  system.unknowns = static_cast<int>(unknowns.size());
  for (std::size_t r = 0; r < rows.size(); ++r) system.add_equation(std::move(rows[r]), rhs[r]);
  const LinearSolution sol = solve(system, free);

  LiftResult result;
  result.stage = k;
  if (!sol.consistent) {
    result.value = x;
    result.obstruction = curv.of_weight(space, k);
    RowKey failing{};
    for (const auto& [key, idx] : row_index)
      if (idx == sol.failing_row) failing = key;
    const int which = std::get<0>(failing);
    result.message = "no weight-" + std::to_string(k) + " correction of polynomial degree <= " +
                     std::to_string(poly_degree) +
                     (which < 0 ? " solves the curvature equation"
                                : " matches face " + std::to_string(faces[static_cast<std::size_t>(which)].index));
    return result;
  }
  TensorElement out = x;
  for (std::size_t u = 0; u < unknowns.size(); ++u)
    out.add(unknowns[u].basis, PolyForm::monomial(dim, unknowns[u].key, sol.values[u]));
  result.ok = true;
  result.value = std::move(out);
  return result;
}

LiftResult lift_to_mc(const SLAlgebra& alg, const TensorElement& seed, int poly_degree,
                      const std::vector<FaceConstraint>& faces, const Caps& caps, const FreeValues& free) {
  TensorElement x = seed;
  for (int k = 1; k < alg.nilpotency(); ++k) {
    LiftResult r = lift_mc(alg, x, k, poly_degree, faces, caps, free);
    if (!r.ok) return r;
    x = std::move(r.value);
  }
  LiftResult done;
  done.ok = true;
  done.stage = alg.nilpotency();
  done.value = std::move(x);
  return done;
}

LiftResult fill_horn(const SLAlgebra& alg, int n, int i, const std::map<int, TensorElement>& faces, int poly_degree,
                     const Caps& caps) {
  if (n < 1 || n > 2) throw InputError("fill-horn: only horns of dimension 1 and 2 are supported");
  if (i < 0 || i > n) throw InputError("fill-horn: horn index out of range");
  std::set<int> expected;
  for (int j = 0; j <= n; ++j)
    if (j != i) expected.insert(j);
  std::set<int> given;
  for (const auto& [j, x] : faces) given.insert(j);
  if (given != expected) throw InputError("fill-horn: faces must be given for exactly the indices j != " + std::to_string(i));
  for (const auto& [j, x] : faces) {
    if (x.dim() != n - 1) throw InputError("fill-horn: face " + std::to_string(j) + " has the wrong dimension");
    if (!is_mc_simplex(alg, x, caps)) throw InputError("fill-horn: face " + std::to_string(j) + " is not Maurer-Cartan");
  }
  for (const auto& [j, xj] : faces)
    for (const auto& [l, xl] : faces) {
      if (j >= l || n < 2) continue;
      // d_j d_l = d_{l-1} d_j
      if (!(simplicial_face(xl, j) == simplicial_face(xj, l - 1)))
        throw InputError("fill-horn: faces " + std::to_string(j) + " and " + std::to_string(l) + " are incompatible");
    }
  std::vector<FaceConstraint> constraints;
  for (const auto& [j, x] : faces) constraints.push_back({j, x});
  // Every degeneracy of every given face is a candidate seed; the first
  // that lifts wins.
  LiftResult last;
  for (const auto& [j, xj] : faces)
    for (int k = 0; k < n; ++k) {
      last = lift_to_mc(alg, simplicial_degeneracy(xj, k, caps), poly_degree, constraints, caps);
      if (last.ok) return last;
    }
  return last;
}

LiftResult connect_points(const SLAlgebra& alg, const Element& p, const Element& q, int poly_degree,
                          const Caps& caps) {
  TensorElement seed(1);
  const PolyForm t = PolyForm::coordinate(1, 1);
  const PolyForm one_minus_t = PolyForm::constant(1, 1) - t;
  for (const auto& [b, c] : p.terms()) seed.add(b, c * one_minus_t);
  for (const auto& [b, c] : q.terms()) seed.add(b, c * t);
  std::vector<FaceConstraint> constraints{{0, TensorElement::constant(0, q)}, {1, TensorElement::constant(0, p)}};
  return lift_to_mc(alg, seed, poly_degree, constraints, caps);
}

int Pi0Result::classes() const {
  std::set<int> labels(component.begin(), component.end());
  return static_cast<int>(labels.size());
}

Pi0Result pi0(const SLAlgebra& alg, const std::vector<Element>& points, int poly_degree, const Caps& caps) {
  for (std::size_t i = 0; i < points.size(); ++i)
    if (!is_mc(alg, points[i])) throw InputError("pi0: point " + std::to_string(i) + " is not Maurer-Cartan");
  std::vector<int> parent(points.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int a) { return parent[static_cast<std::size_t>(a)] == a ? a : parent[static_cast<std::size_t>(a)] = find(parent[static_cast<std::size_t>(a)]); };
  Pi0Result result;
  const int count = static_cast<int>(points.size());
  for (int i = 0; i < count; ++i)
    for (int j = i + 1; j < count; ++j) {
      if (find(i) == find(j)) continue;
      LiftResult r = connect_points(alg, points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)],
                                    poly_degree, caps);
      if (!r.ok) continue;
      result.certificates.push_back({i, j, std::move(r.value)});
      const int a = find(i), b = find(j);
      parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  for (int i = 0; i < count; ++i) result.component.push_back(find(i));
  return result;
}

}  // namespace slmc
