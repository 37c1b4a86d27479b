#include "slmc/core/properties.hpp"

#include <algorithm>
#include <functional>
#include <utility>

#include "slmc/core/fixtures.hpp"

namespace slmc {

std::string CheckLine::text() const {
  std::string out = (pass ? "PASS " : "FAIL ") + suite;
  if (!key.empty()) out += " " + key;
  if (!pass && !witness.empty()) out += " witness=" + witness;
  return out;
}

void PropertyReport::add(std::string suite, std::string key, bool pass, std::string witness) {
  lines.push_back({std::move(suite), std::move(key), pass, std::move(witness)});
}

void PropertyReport::append(const PropertyReport& other) {
  lines.insert(lines.end(), other.lines.begin(), other.lines.end());
}

bool PropertyReport::ok() const { return failed() == 0; }

int PropertyReport::passed() const {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(), [](const CheckLine& l) { return l.pass; }));
}

int PropertyReport::failed() const { return static_cast<int>(lines.size()) - passed(); }

int PropertyReport::count(const std::string& suite) const {
  return static_cast<int>(std::count_if(lines.begin(), lines.end(), [&](const CheckLine& l) { return l.suite == suite; }));
}

bool PropertyReport::suite_ok(const std::string& suite) const {
  return std::none_of(lines.begin(), lines.end(), [&](const CheckLine& l) { return l.suite == suite && !l.pass; });
}

std::string PropertyReport::render() const {
  std::vector<std::string> rows;
  rows.reserve(lines.size());
  for (const auto& l : lines) rows.push_back(l.text());
  std::sort(rows.begin(), rows.end());
  std::string out;
  for (const auto& r : rows) out += r + "\n";
  return out;
}

// --- random draws ------------------------------------------------------------

Rational Random::coefficient() {
  const int p = below(7) - 3;
  const int q = below(3) + 1;
  Rational c(p, q);
  c.canonicalize();
  return c;
}

Rational Random::nonzero_coefficient() {
  Rational c;
  do c = coefficient();
  while (c == 0);
  return c;
}

Element Random::element(const GradedSpace& space, int degree) {
  Element out;
  for (int i = 0; i < space.dim(); ++i)
    if (space.degree(i) == degree && coin()) out.add_term(i, coefficient());
  return out;
}

Element Random::homogeneous_element(const GradedSpace& space) {
  if (space.dim() == 0) return {};
  return element(space, space.degree(below(space.dim())));
}

PolyForm Random::form(int dim, int max_poly_degree, int form_degree) {
  PolyForm out(dim);
  if (form_degree < 0 || form_degree > dim) return out;
  for (const auto& key : form_basis(dim, max_poly_degree, form_degree))
    if (below(3) == 0) out.add(key, coefficient());
  return out;
}

namespace {

using fixtures::a2_plus_kernel;

// --- small helpers -----------------------------------------------------------

std::string trial_key(const std::string& what, const std::string& name, int trial) {
  return what + "=" + name + " trial=" + std::to_string(trial);
}

std::string witness(const GradedSpace& space, const Element& residual) { return render(space, residual); }
std::string witness(const GradedSpace& space, const WordSum& residual) { return render(space, residual); }
std::string witness(const GradedSpace& space, const TensorElement& residual) { return render(space, residual); }

void expect_zero(PropertyReport& r, const std::string& suite, const std::string& key, const GradedSpace& space,
                 const Element& residual) {
  r.add(suite, key, residual.is_zero(), residual.is_zero() ? "" : witness(space, residual));
}

void expect_zero(PropertyReport& r, const std::string& suite, const std::string& key, const GradedSpace& space,
                 const WordSum& residual) {
  r.add(suite, key, residual.is_zero(), residual.is_zero() ? "" : witness(space, residual));
}

void expect_equal(PropertyReport& r, const std::string& suite, const std::string& key, const GradedSpace& space,
                  const TensorElement& lhs, const TensorElement& rhs) {
  const bool same = lhs == rhs && lhs.dim() == rhs.dim();
  r.add(suite, key, same, same ? "" : witness(space, lhs - rhs));
}

Element scaled_series(const SLAlgebra& alg, const Element& a, const Element& last) {
  // sum_{m>=0} (1/m!) {a,...,a,last}_{m+1}
  Element out;
  const int top = std::min(alg.max_arity(), alg.nilpotency());
  std::vector<Element> args;
  for (int m = 0; m + 1 <= top; ++m) {
    args.assign(static_cast<std::size_t>(m), a);
    args.push_back(last);
    out += Rational(1) / factorial(static_cast<unsigned>(m)) * eval_bracket(alg, args);
  }
  return out;
}

TensorElement embed(const TensorElement& x, int offset) {
  TensorElement out(x.dim());
  for (const auto& [b, f] : x.terms()) out.add(b + offset, f);
  return out;
}

TensorElement restrict_tensor(const TensorElement& x, int offset, int dim) {
  TensorElement out(x.dim());
  for (const auto& [b, f] : x.terms())
    if (b >= offset && b < offset + dim) out.add(b - offset, f);
  return out;
}

/// sum over nonempty I of +-{{x_I}, x_J} for homogeneous tensor arguments of
/// the given total degrees; the sign moves x_I to the front.
TensorElement tensor_relation(const SLAlgebra& alg, const std::vector<TensorElement>& xs,
                              const std::vector<int>& degrees, const Caps& caps) {
  const std::size_t n = xs.size();
  TensorElement out(xs.front().dim());
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<TensorElement> inner, outer;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (1u << j)) {
        inner.push_back(xs[j]);
        for (std::size_t i = 0; i < j; ++i)
          if (!(mask & (1u << i)) && (degrees[i] & 1) && (degrees[j] & 1)) sign = -sign;
      } else {
        outer.push_back(xs[j]);
      }
    }
    std::vector<TensorElement> args{tensor_bracket(alg, inner, caps)};
    args.insert(args.end(), outer.begin(), outer.end());
    out += Rational(sign) * tensor_bracket(alg, args, caps);
  }
  return out;
}

/// Coproduct on S(L) with the unshuffle signs, as pairs of canonical words.
using WordPair = std::pair<SymWord, SymWord>;
using PairSum = std::map<WordPair, Rational>;

PairSum coproduct(const GradedSpace& space, const WordSum& s) {
  PairSum out;
  for (const auto& [w, c] : s.terms()) {
    const std::size_t n = w.length();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      SymWord left, right;
      int sign = 1;
      for (std::size_t j = 0; j < n; ++j) {
        const int fj = w.factors[j];
        if (mask & (1u << j)) {
          left.factors.push_back(fj);
          if (space.odd(fj))
            for (std::size_t i = 0; i < j; ++i)
              if (!(mask & (1u << i)) && space.odd(w.factors[i])) sign = -sign;
        } else {
          right.factors.push_back(fj);
        }
      }
      auto& slot = out[{left, right}];
      slot += Rational(sign) * c;
      if (slot == 0) out.erase({left, right});
    }
  }
  return out;
}

PairSum tensor_words(const GradedSpace& space, const WordSum& a, const WordSum& b, int bound) {
  PairSum out;
  for (const auto& [u, cu] : a.terms())
    for (const auto& [v, cv] : b.terms()) {
      if ((u.empty() ? 0 : word_weight(space, u)) + (v.empty() ? 0 : word_weight(space, v)) >= bound) continue;
      auto& slot = out[{u, v}];
      slot += cu * cv;
      if (slot == 0) out.erase({u, v});
    }
  return out;
}

std::string render_pairs(const GradedSpace& space, const PairSum& p) {
  std::string out;
  for (const auto& [uv, c] : p) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " (" + (uv.first.empty() ? "1" : render_word(space, uv.first)) + ")|(" +
           (uv.second.empty() ? "1" : render_word(space, uv.second)) + ")";
  }
  return out.empty() ? "0" : out;
}

WordSum without_unit(WordSum s) { return s.without_constant(); }

std::vector<SymWord> short_words(const SLAlgebra& alg, const Caps& caps) {
  return enumerate_words(alg.space(), 3, alg.nilpotency(), caps);
}

// --- fixture families --------------------------------------------------------

struct NamedMorphism {
  std::string label;
  InftyMorphism f;
};

std::vector<NamedMorphism> sample_morphisms(Random& rng, int random_count) {
  std::vector<NamedMorphism> out;
  for (const auto& alg : fixtures::valid_algebras()) out.push_back({"id_" + alg.name(), identity_morphism(alg)});
  out.push_back({"phi", fixtures::transport_phi()});
  out.push_back({"psi", fixtures::transport_psi()});
  for (int i = 0; i < random_count; ++i) {
    auto e = random_x_endomorphism(rng, "F" + std::to_string(i));
    out.push_back({e.name(), e.morphism()});
  }
  return out;
}

struct NamedEnhanced {
  std::string label;
  EnhancedMorphism e;
};

std::vector<NamedEnhanced> sample_enhanced(Random& rng, int random_count, const Caps& caps) {
  std::vector<NamedEnhanced> out;
  for (const auto& alg : fixtures::valid_algebras()) out.push_back({"id_" + alg.name(), identity_enhanced(alg)});
  for (const auto& alg : {fixtures::a2(), fixtures::rich(), fixtures::transported()}) {
    auto alpha = random_mc_point(alg, rng, caps);
    if (!alpha) continue;
    const SLAlgebra twisted = twist_algebra(alg, *alpha);
    out.push_back({"shift_" + alg.name(), EnhancedMorphism("shift", *alpha, identity_morphism(twisted), alg)});
  }
  out.push_back({"phi", EnhancedMorphism("phi", Element{}, fixtures::transport_phi(), fixtures::rich())});
  out.push_back({"psi", EnhancedMorphism("psi", Element{}, fixtures::transport_psi(), fixtures::transported())});
  for (int i = 0; i < random_count; ++i) {
    auto e = random_x_endomorphism(rng, "E" + std::to_string(i));
    out.push_back({e.name(), e});
  }
  return out;
}

}  // namespace

// --- generators --------------------------------------------------------------

namespace {

FreeValues sparse_values(Random& rng) {
  return [&rng](int) { return rng.coin() ? rng.coefficient() : Rational(0); };
}

}  // namespace

EnhancedMorphism random_x_endomorphism(Random& rng, const std::string& name) {
  static const SLAlgebra X = a2_plus_kernel();
  const auto& s = X.space();
  const int x = s.index_of("x"), y = s.index_of("y"), z = s.index_of("z");
  const int k1 = s.index_of("k1"), k2 = s.index_of("k2");

  for (int attempt = 0;; ++attempt) {
    // MC element: a multiple of x or of y (or neither) plus anything in K^0.
    const int mode = rng.below(3);
    Element alpha;
    if (mode == 1) alpha.add_term(x, rng.nonzero_coefficient());
    if (mode == 2) alpha.add_term(y, rng.nonzero_coefficient());
    alpha.add_term(k1, rng.coefficient());
    alpha.add_term(k2, rng.coefficient());

    // Linear A2 part: identity, collapse onto x, collapse onto y, or zero.
    int shape = 3;
    if (mode == 0) shape = rng.below(4);
    if (mode == 1) shape = rng.coin() ? 1 : 3;
    if (mode == 2) shape = rng.coin() ? 2 : 3;
    TaylorTable t;
    auto put = [&](const SymWord& w, const Element& v) {
      if (!v.is_zero()) t[w] += v;
      if (t.count(w) && t[w].is_zero()) t.erase(w);
    };
    if (shape == 0) {
      put(SymWord{{x}}, Element::basis(x));
      put(SymWord{{y}}, Element::basis(y));
      put(SymWord{{z}}, Element::basis(z));
    } else if (shape == 1 || shape == 2) {
      const int target = shape == 1 ? x : y;
      put(SymWord{{x}}, Element::basis(target));
      put(SymWord{{y}}, Element::basis(target));
    }
    // K-valued entries on words avoiding z, weight below N.
    for (const auto& w : enumerate_words(s, 2, X.nilpotency())) {
      if (std::find(w.factors.begin(), w.factors.end(), z) != w.factors.end()) continue;
      if (rng.below(3) != 0) continue;
      Element v;
      const int deg = word_degree(s, w), wt = word_weight(s, w);
      for (const char* kname : {"k1", "k2", "k3", "k4"}) {
        const int k = s.index_of(kname);
        if (s.degree(k) == deg && s.weight(k) >= wt && rng.coin()) v.add_term(k, rng.coefficient());
      }
      put(w, v);
    }
    for (const char* kname : {"k1", "k2", "k3", "k4"}) {
      const int k = s.index_of(kname);
      if (rng.below(4) != 0) put(SymWord{{k}}, Element::basis(k));
    }
    const SLAlgebra twisted = twist_algebra(X, alpha);
    InftyMorphism f(name, X, twisted, std::move(t));
    if (check_morphism(f, 3).ok() || attempt > 20) return EnhancedMorphism(name, alpha, std::move(f), X);
  }
}

std::optional<Element> random_mc_point(const SLAlgebra& alg, Random& rng, const Caps& caps) {
  const auto& s = alg.space();
  std::vector<int> slots;
  for (int i = 0; i < s.dim(); ++i)
    if (s.degree(i) == 0 && s.weight(i) == 1) slots.push_back(i);
  for (int attempt = 0; attempt < 8; ++attempt) {
    // Odd attempts seed a single direction, which avoids most quadratic
    // obstructions; the last one lifts zero, which always succeeds.
    Element seed;
    if (attempt == 7) {
      LiftResult r = lift_to_mc(alg, TensorElement::constant(0, seed), 0, {}, caps);
      if (r.ok) return r.value.as_element();
      break;
    }
    if (attempt % 2 == 1 && !slots.empty())
      seed.add_term(slots[static_cast<std::size_t>(rng.below(static_cast<int>(slots.size())))], rng.nonzero_coefficient());
    else
      for (int i : slots)
        if (rng.coin()) seed.add_term(i, rng.coefficient());
    LiftResult r = lift_to_mc(alg, TensorElement::constant(0, seed), 0, {}, caps, sparse_values(rng));
    if (r.ok) return r.value.as_element();
  }
  return std::nullopt;
}

std::optional<TensorElement> random_mc_simplex(const SLAlgebra& alg, int dim, int poly_degree, Random& rng,
                                               const Caps& caps, int attempts) {
  const auto& s = alg.space();
  for (int attempt = 0; attempt < attempts; ++attempt) {
    TensorElement seed(dim);
    const bool last = attempt + 1 == attempts;
    for (int i = 0; i < s.dim() && !last; ++i) {
      if (s.weight(i) != 1) continue;
      const int fd = -s.degree(i);
      if (fd < 0 || fd > dim) continue;
      seed.add(i, rng.form(dim, 1, fd));
    }
    // The last attempt lifts the zero seed with zero free unknowns, which
    // always succeeds; earlier ones randomize both.
    LiftResult r = lift_to_mc(alg, seed, poly_degree, {}, caps, last ? FreeValues{} : sparse_values(rng));
    if (r.ok) return r.value;
  }
  return std::nullopt;
}

// --- suites ------------------------------------------------------------------

PropertyReport relation_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0x5245ull);
  for (const auto& alg : fixtures::valid_algebras()) {
    const int arity = std::min(alg.nilpotency() + 1, 6);
    const RelationReport rel = check_relations(alg, arity, opt.caps);
    r.add("eq:relations", "fixture=" + alg.name() + " arity<=" + std::to_string(arity), rel.ok(),
          rel.ok() ? "" : render_word(alg.space(), rel.violations.front().word) + " -> " +
                              render(alg.space(), rel.violations.front().residual));
    std::string qq;
    int words = 0;
    for (const auto& w : enumerate_words(alg.space(), 4, alg.nilpotency(), opt.caps)) {
      ++words;
      const WordSum twice = apply_coderivation(alg, apply_coderivation(alg, w));
      if (!twice.is_zero() && qq.empty()) qq = render_word(alg.space(), w) + ": " + render(alg.space(), twice);
    }
    r.add("eq:Q-squared", "fixture=" + alg.name() + " words=" + std::to_string(words), qq.empty(), qq);

    const int twists = std::max(1, opt.trials / 10);
    for (int t = 0; t < twists; ++t) {
      auto alpha = random_mc_point(alg, rng, opt.caps);
      if (!alpha) {
        r.add("twist:relations", trial_key("fixture", alg.name(), t), false, "no MC element found");
        continue;
      }
      const SLAlgebra tw = twist_algebra(alg, *alpha);
      const RelationReport trel = check_relations(tw, arity, opt.caps);
      bool additive = true;
      for (const auto& [w, v] : tw.brackets())
        if (v.weight(tw.space()) < word_weight(tw.space(), w)) additive = false;
      r.add("twist:relations", trial_key("fixture", alg.name(), t), trel.ok() && additive,
            trel.ok() ? (additive ? "" : "weight drops") : render(tw.space(), trel.violations.front().residual));
    }
  }
  return r;
}

PropertyReport curvature_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed);
  for (const auto& alg : fixtures::valid_algebras()) {
    const auto& s = alg.space();
    const int n = alg.nilpotency();
    for (int t = 0; t < opt.trials; ++t) {
      const std::string key = trial_key("fixture", alg.name(), t);
      const Element a = rng.element(s, 0);
      const Element b = rng.element(s, 0);
      const Element v = rng.homogeneous_element(s);
      const Element ca = curvature(alg, a);

      expect_zero(r, "eq:Bianchi", key, s, scaled_series(alg, a, ca));

      const Element dd = twisted_bracket(alg, a, std::vector<Element>{twisted_bracket(alg, a, std::vector<Element>{v})});
      const Element rhs = -twisted_bracket(alg, a, std::vector<Element>{ca, v});
      expect_zero(r, "eq:square-curv", key, s, dd - rhs);

      Element sum = ca;
      std::vector<Element> bs;
      for (int m = 1; m < n; ++m) {
        bs.push_back(b);
        sum += Rational(1) / factorial(static_cast<unsigned>(m)) * twisted_bracket(alg, a, bs);
      }
      expect_zero(r, "eq:curv-sum", key, s, curvature(alg, a + b) - sum);
    }
  }
  for (const auto& [label, f] : sample_morphisms(rng, std::max(4, opt.trials / 5))) {
    const auto& src = f.source().space();
    const int bound = f.weight_bound();
    for (int t = 0; t < opt.trials; ++t) {
      const Element a = rng.element(src, 0);
      const Element lhs = curvature(f.target(), pushforward(f, a));
      const Element rhs =
          apply_taylor(f, multiply(src, exp_word(src, a, bound), WordSum::from_element(curvature(f.source(), a)), bound));
      expect_zero(r, "eq:U-star-curv", trial_key("morphism", label, t), f.target().space(), lhs - rhs);
    }
  }
  return r;
}

PropertyReport coalgebra_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0xC0A1ull);
  for (const auto& alg : fixtures::valid_algebras()) {
    const auto& s = alg.space();
    const int n = alg.nilpotency();
    for (int t = 0; t < opt.trials; ++t) {
      const Element b = rng.element(s, 0);
      const WordSum e = exp_word(s, b, n);
      const WordSum lhs = apply_coderivation(alg, without_unit(e)).truncated(s, n);
      const WordSum rhs = multiply(s, e, WordSum::from_element(curvature(alg, b)), n);
      expect_zero(r, "eq:ti-Q-cxp-beta", trial_key("fixture", alg.name(), t), s, lhs - rhs);
    }
  }

  for (const auto& [label, f] : sample_morphisms(rng, std::max(4, opt.trials / 5))) {
    const auto& src = f.source().space();
    const auto& tgt = f.target().space();
    const int bound = f.weight_bound();
    CoalgebraExtension ext(f);
    auto ext_or_unit = [&](const SymWord& w) { return w.empty() ? WordSum::unit() : ext(w); };

    int words = 0;
    std::string delta_fail, stair_fail;
    for (const auto& w : short_words(f.source(), opt.caps)) {
      ++words;
      const WordSum fw = ext(w);
      const PairSum lhs = coproduct(tgt, fw);
      PairSum rhs;
      for (const auto& [uv, c] : coproduct(src, WordSum::word(w)))
        for (const auto& [pq, d] : tensor_words(tgt, ext_or_unit(uv.first), ext_or_unit(uv.second), bound)) {
          auto& slot = rhs[pq];
          slot += c * d;
          if (slot == 0) rhs.erase(pq);
        }
      if (lhs != rhs && delta_fail.empty()) {
        PairSum diff = lhs;
        for (const auto& [pq, c] : rhs) {
          diff[pq] -= c;
          if (diff[pq] == 0) diff.erase(pq);
        }
        delta_fail = render_word(src, w) + ": " + render_pairs(tgt, diff);
      }
      const WordSum stair = extend_by_stairway(f, w, opt.caps).truncated(tgt, bound);
      if (!(stair == fw) && stair_fail.empty()) stair_fail = render_word(src, w) + ": " + render(tgt, stair - fw);
    }
    const std::string key = "morphism=" + label + " words=" + std::to_string(words);
    r.add("eq:new-F-Delta", key, delta_fail.empty(), delta_fail);
    r.add("eq:F-stairway", key, stair_fail.empty(), stair_fail);

    for (int t = 0; t < opt.trials; ++t) {
      const Element a = rng.element(src, 0);
      const WordSum lhs = ext(without_unit(exp_word(src, a, bound)));
      const WordSum rhs = without_unit(exp_word(tgt, pushforward(f, a), bound));
      expect_zero(r, "eq:U-cxp-al", trial_key("morphism", label, t), tgt, lhs - rhs);
    }
  }

  for (const auto& [label, e] : sample_enhanced(rng, std::max(4, opt.trials / 5), opt.caps)) {
    const auto& tgt = e.target().space();
    const int bound = e.target().nilpotency();
    int words = 0;
    std::string fail;
    for (const auto& w : short_words(e.source(), opt.caps)) {
      ++words;
      const WordSum lhs = apply_coderivation(e.target(), u_map(e, WordSum::word(w))).truncated(tgt, bound);
      const WordSum rhs = u_map(e, apply_coderivation(e.source(), w));
      if (!(lhs == rhs) && fail.empty()) fail = render_word(e.source().space(), w) + ": " + render(tgt, lhs - rhs);
    }
    r.add("eq:F-Q1-Q2-al", "enhanced=" + label + " words=" + std::to_string(words), fail.empty(), fail);
  }
  return r;
}

PropertyReport morphism_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0x3012ull);
  const InftyMorphism phi = fixtures::transport_phi();
  const InftyMorphism psi = fixtures::transport_psi();
  const SLAlgebra T = fixtures::transported();
  const SLAlgebra B = fixtures::rich();

  struct Pair {
    std::string label;
    InftyMorphism g, f;
  };
  std::vector<Pair> pairs = {{"psi.phi", psi, phi},
                             {"phi.psi", phi, psi},
                             {"phi.id", phi, identity_morphism(T)},
                             {"id.phi", identity_morphism(B), phi}};
  for (int i = 0; i < std::max(2, opt.trials / 10); ++i) {
    auto e = random_x_endomorphism(rng, "F" + std::to_string(i));
    pairs.push_back({"id." + e.name(), identity_morphism(e.morphism().target()), e.morphism()});
  }

  for (const auto& [label, g, f] : pairs) {
    const InftyMorphism gf = compose_infty(g, f);
    const MorphismReport mr = check_morphism(gf, 4, opt.caps);
    r.add("morphism:compose", "pair=" + label, mr.ok(),
          mr.ok() ? "" : render_word(gf.source().space(), mr.violations.front().word) + " -> " +
                             render(gf.target().space(), mr.violations.front().residual));
    for (int t = 0; t < std::max(1, opt.trials / 5); ++t) {
      const Element a = rng.element(f.source().space(), 0);
      expect_zero(r, "morphism:pushforward", trial_key("pair", label, t), gf.target().space(),
                  pushforward(gf, a) - pushforward(g, pushforward(f, a)));
    }
    for (int t = 0; t < std::max(1, opt.trials / 10); ++t) {
      auto alpha = random_mc_point(f.source(), rng, opt.caps);
      if (!alpha) continue;
      const InftyMorphism lhs = twist_morphism(gf, *alpha);
      const InftyMorphism rhs = compose_infty(twist_morphism(g, pushforward(f, *alpha)), twist_morphism(f, *alpha));
      std::string w;
      if (!(lhs == rhs)) {
        for (const auto& [word, v] : lhs.taylor())
          if (!(rhs.coefficient(word) == v)) {
            w = render_word(lhs.source().space(), word) + " -> " + render(lhs.target().space(), v - rhs.coefficient(word));
            break;
          }
        if (w.empty()) w = "tables differ";
      }
      r.add("morphism:twist-compose", trial_key("pair", label, t), lhs == rhs, w);
    }
  }
  const InftyMorphism round = compose_infty(psi, phi);
  r.add("morphism:inverse", "pair=psi.phi", round == identity_morphism(T), "");
  r.add("morphism:inverse", "pair=phi.psi", compose_infty(phi, psi) == identity_morphism(B), "");
  return r;
}

PropertyReport enhanced_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0xE4ull);
  const SLAlgebra X = a2_plus_kernel();
  const EnhancedMorphism id = identity_enhanced(X);
  const int triples = std::max(20, opt.trials);
  for (int t = 0; t < triples; ++t) {
    const auto f = random_x_endomorphism(rng, "f");
    const auto g = random_x_endomorphism(rng, "g");
    const auto h = random_x_endomorphism(rng, "h");
    const std::string key = "triple=" + std::to_string(t);

    const auto left = compose_enhanced(compose_enhanced(h, g), f);
    const auto right = compose_enhanced(h, compose_enhanced(g, f));
    std::string w;
    if (!(left.alpha() == right.alpha())) w = "alpha: " + render(X.space(), left.alpha() - right.alpha());
    else if (!(left == right)) w = "Taylor tables differ";
    r.add("enhanced:assoc", key, left == right, w);
    r.add("enhanced:unit", key, compose_enhanced(id, f) == f && compose_enhanced(f, id) == f, "");

    const auto gf = compose_enhanced(g, f);
    const int bound = X.nilpotency();
    std::string fail;
    int words = 0;
    for (const auto& word : short_words(X, opt.caps)) {
      ++words;
      const WordSum two_step = u_map(g, u_map(f, WordSum::word(word), bound), bound);
      const WordSum one_step = u_map(gf, WordSum::word(word), bound);
      if (!(two_step == one_step) && fail.empty()) fail = render_word(X.space(), word) + ": " + render(X.space(), two_step - one_step);
    }
    r.add("eq:composition", key + " words=" + std::to_string(words), fail.empty(), fail);
  }
  return r;
}

PropertyReport derham_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0xD3ull);
  const int per_dim = std::max(25, opt.trials);
  for (int n = 0; n <= 3; ++n) {
    for (int t = 0; t < per_dim; ++t) {
      const std::string key = "dim=" + std::to_string(n) + " trial=" + std::to_string(t);
      const int ka = rng.below(n + 1), kb = rng.below(n + 1);
      const PolyForm a = rng.form(n, 3, ka);
      const PolyForm b = rng.form(n, 3, kb);
      auto fail_text = [](const PolyForm& diff) { return diff.is_zero() ? std::string() : render(diff); };

      r.add("derham:d2", key, d(d(a)).is_zero(), fail_text(d(d(a))));

      const PolyForm sign_a = (ka % 2 ? Rational(-1) : Rational(1)) * wedge(a, d(b), opt.caps);
      const PolyForm leibniz = d(wedge(a, b, opt.caps)) - wedge(d(a), b, opt.caps) - sign_a;
      r.add("derham:leibniz", key, leibniz.is_zero(), fail_text(leibniz));

      std::string dg;
      for (int i = 0; n >= 1 && i <= n && dg.empty(); ++i) {
        const PolyForm c1 = face(d(a), i) - d(face(a, i));
        const PolyForm c2 = face(wedge(a, b, opt.caps), i) - wedge(face(a, i), face(b, i), opt.caps);
        if (!c1.is_zero()) dg = "face " + std::to_string(i) + " vs d: " + render(c1);
        else if (!c2.is_zero()) dg = "face " + std::to_string(i) + " vs wedge: " + render(c2);
      }
      for (int j = 0; n <= 2 && j <= n && dg.empty(); ++j) {
        const PolyForm c1 = degeneracy(d(a), j, opt.caps) - d(degeneracy(a, j, opt.caps));
        const PolyForm c2 = degeneracy(wedge(a, b, opt.caps), j, opt.caps) -
                            wedge(degeneracy(a, j, opt.caps), degeneracy(b, j, opt.caps), opt.caps);
        if (!c1.is_zero()) dg = "degeneracy " + std::to_string(j) + " vs d: " + render(c1);
        else if (!c2.is_zero()) dg = "degeneracy " + std::to_string(j) + " vs wedge: " + render(c2);
      }
      r.add("derham:dg-maps", key, dg.empty(), dg);

      std::string simp;
      auto note = [&](const std::string& what, const PolyForm& diff) {
        if (simp.empty() && !diff.is_zero()) simp = what + ": " + render(diff);
      };
      for (int i = 0; n >= 2 && i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
          note("d" + std::to_string(i) + "d" + std::to_string(j), face(face(a, j), i) - face(face(a, i), j - 1));
      for (int i = 0; n <= 1 && i <= n; ++i)
        for (int j = i; j <= n; ++j)
          note("s" + std::to_string(i) + "s" + std::to_string(j),
               degeneracy(degeneracy(a, j, opt.caps), i, opt.caps) - degeneracy(degeneracy(a, i, opt.caps), j + 1, opt.caps));
      for (int j = 0; n <= 2 && j <= n; ++j) {
        const PolyForm sj = degeneracy(a, j, opt.caps);
        for (int i = 0; i <= n + 1; ++i) {
          const std::string tag = "d" + std::to_string(i) + "s" + std::to_string(j);
          if (i < j)
            note(tag, face(sj, i) - degeneracy(face(a, i), j - 1, opt.caps));
          else if (i == j || i == j + 1)
            note(tag, face(sj, i) - a);
          else
            note(tag, face(sj, i) - degeneracy(face(a, i - 1), j, opt.caps));
        }
      }
      r.add("derham:simplicial", key, simp.empty(), simp);
    }
  }
  return r;
}

PropertyReport integration_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0x1A7ull);
  const int count = std::max(2, opt.trials / 10);
  const int D = 3;
  const SLAlgebra X = a2_plus_kernel();

  // Shift diagram: MC(F) o Shift_alpha = Shift_{F_* alpha} o MC(F^alpha).
  struct Case {
    std::string label;
    InftyMorphism f;
  };
  std::vector<Case> cases = {{"phi", fixtures::transport_phi()}, {"psi", fixtures::transport_psi()}};
  for (int i = 0; i < count; ++i) {
    auto e = random_x_endomorphism(rng, "F" + std::to_string(i));
    cases.push_back({e.name(), e.morphism()});
  }
  for (const auto& [label, f] : cases) {
    for (int t = 0; t < count; ++t) {
      auto alpha = random_mc_point(f.source(), rng, opt.caps);
      if (!alpha) continue;
      const SLAlgebra tw = twist_algebra(f.source(), *alpha);
      const InftyMorphism fa = twist_morphism(f, *alpha);
      const Element pushed = pushforward(f, *alpha);
      for (int dim = 0; dim <= 2; ++dim) {
        auto beta = random_mc_simplex(tw, dim, D, rng, opt.caps);
        const std::string key = trial_key("morphism", label, t) + " dim=" + std::to_string(dim);
        if (!beta) {
          r.add("eq:diag-Shift", key, false, "no MC simplex found");
          continue;
        }
        const TensorElement lhs = mc_map(f, shift_iso(f.source(), *alpha, *beta), opt.caps);
        const TensorElement rhs = shift_iso(f.target(), pushed, mc_map(fa, *beta, opt.caps));
        expect_equal(r, "eq:diag-Shift", key, f.target().space(), lhs, rhs);
        const TensorElement back = shift_iso_inverse(f.source(), *alpha, shift_iso(f.source(), *alpha, *beta));
        expect_equal(r, "shift:inverse", key, tw.space(), back, *beta);
      }
    }
  }

  // L (x) Omega_n satisfies the relations for homogeneous pure arguments.
  for (const auto& alg : {fixtures::a2(), fixtures::contractible(), fixtures::odd(), fixtures::rich(),
                          fixtures::transported(), X}) {
    const auto& s = alg.space();
    for (int t = 0; t < count; ++t)
      for (int dim = 1; dim <= 2; ++dim)
        for (int arity = 1; arity <= 3; ++arity) {
          std::vector<TensorElement> xs;
          std::vector<int> degrees;
          for (int i = 0; i < arity; ++i) {
            const int b = rng.below(s.dim());
            const int k = rng.below(dim + 1);
            PolyForm f = rng.form(dim, 2, k);
            if (f.is_zero()) f = PolyForm::monomial(dim, form_basis(dim, 0, k).front());
            xs.push_back(TensorElement::pure(dim, b, f));
            degrees.push_back(s.degree(b) + k);
          }
          const TensorElement res = tensor_relation(alg, xs, degrees, opt.caps);
          r.add("tensor:relations",
                trial_key("fixture", alg.name(), t) + " dim=" + std::to_string(dim) + " arity=" + std::to_string(arity),
                res.is_zero(), res.is_zero() ? "" : render(s, res));
        }
  }

  // Functoriality and simplicial naturality on X.
  for (int t = 0; t < count; ++t) {
    const auto f = random_x_endomorphism(rng, "f");
    const auto g = random_x_endomorphism(rng, "g");
    const auto gf = compose_enhanced(g, f);
    for (int dim = 0; dim <= 2; ++dim) {
      const std::string key = "trial=" + std::to_string(t) + " dim=" + std::to_string(dim);
      auto x = random_mc_simplex(X, dim, D, rng, opt.caps);
      if (!x) {
        r.add("eq:functor", key, false, "no MC simplex found");
        continue;
      }
      const TensorElement fx = mc_enhanced(f, *x, opt.caps);
      expect_equal(r, "eq:functor", key, X.space(), mc_enhanced(gf, *x, opt.caps), mc_enhanced(g, fx, opt.caps));
      r.add("mc:image", key, is_mc_simplex(X, fx, opt.caps), "");

      std::string nat;
      for (int i = 0; dim >= 1 && i <= dim && nat.empty(); ++i) {
        if (!(mc_enhanced(f, simplicial_face(*x, i), opt.caps) == simplicial_face(fx, i)))
          nat = "face " + std::to_string(i);
        if (!(mc_map(f.morphism(), simplicial_face(*x, i), opt.caps) ==
              simplicial_face(mc_map(f.morphism(), *x, opt.caps), i)))
          nat = "mc_map face " + std::to_string(i);
      }
      for (int j = 0; dim <= 1 && j <= dim && nat.empty(); ++j) {
        if (!(mc_enhanced(f, simplicial_degeneracy(*x, j, opt.caps), opt.caps) ==
              simplicial_degeneracy(fx, j, opt.caps)))
          nat = "degeneracy " + std::to_string(j);
      }
      r.add("simplicial:naturality", key, nat.empty(), nat);
    }
  }

  // Strong monoidality for n <= 1.
  struct SumCase {
    SLAlgebra left, right;
  };
  const std::vector<SumCase> sums = {{fixtures::a2(), fixtures::square()},
                                     {fixtures::contractible(), fixtures::abelian()},
                                     {fixtures::a2(), fixtures::contractible()}};
  for (const auto& [left, right] : sums) {
    const SLAlgebra sum = direct_sum(left, right);
    const int off = left.space().dim();
    for (int dim = 0; dim <= 1; ++dim)
      for (int t = 0; t < count; ++t) {
        const std::string key = "sum=" + sum.name() + " dim=" + std::to_string(dim) + " trial=" + std::to_string(t);
        auto z = random_mc_simplex(sum, dim, D, rng, opt.caps);
        auto x = random_mc_simplex(left, dim, D, rng, opt.caps);
        auto y = random_mc_simplex(right, dim, D, rng, opt.caps);
        if (!z || !x || !y) {
          r.add("monoidal:bijection", key, false, "no MC simplex found");
          continue;
        }
        const TensorElement zl = restrict_tensor(*z, 0, off);
        const TensorElement zr = restrict_tensor(*z, off, right.space().dim());
        const bool split = is_mc_simplex(left, zl, opt.caps) && is_mc_simplex(right, zr, opt.caps) &&
                           embed(zl, 0) + embed(zr, off) == *z;
        const bool joined = is_mc_simplex(sum, embed(*x, 0) + embed(*y, off), opt.caps);
        r.add("monoidal:bijection", key, split && joined, split ? (joined ? "" : "pair is not MC") : "split is not MC");
      }
  }
  for (int t = 0; t < count; ++t) {
    const auto f = random_x_endomorphism(rng, "f");
    const auto g = random_x_endomorphism(rng, "g");
    const auto fg = tensor_enhanced(f, g);
    const int off = X.space().dim();
    for (int dim = 0; dim <= 1; ++dim) {
      const std::string key = "trial=" + std::to_string(t) + " dim=" + std::to_string(dim);
      auto x = random_mc_simplex(X, dim, D, rng, opt.caps);
      auto y = random_mc_simplex(X, dim, D, rng, opt.caps);
      if (!x || !y) {
        r.add("monoidal:naturality", key, false, "no MC simplex found");
        continue;
      }
      const TensorElement lhs = mc_enhanced(fg, embed(*x, 0) + embed(*y, off), opt.caps);
      const TensorElement rhs = embed(mc_enhanced(f, *x, opt.caps), 0) + embed(mc_enhanced(g, *y, opt.caps), off);
      expect_equal(r, "monoidal:naturality", key, fg.target().space(), lhs, rhs);
    }
  }
  return r;
}

PropertyReport horn_suite(const PropertyOptions& opt) {
  PropertyReport r;
  Random rng(opt.seed ^ 0x40ull);
  const int count = std::max(2, opt.trials / 10);
  const int D = 3;
  const std::vector<SLAlgebra> algs = {fixtures::a2(),   fixtures::square(),      fixtures::contractible(),
                                       fixtures::odd(),  fixtures::rich(),        fixtures::transported(),
                                       fixtures::a2_plus_kernel()};
  auto certify = [&](const SLAlgebra& alg, const LiftResult& res, const std::map<int, TensorElement>& faces,
                     const std::string& suite, const std::string& key) {
    if (!res.ok) {
      r.add(suite, key, false, res.message);
      return;
    }
    const TensorElement curv = tensor_curvature(alg, res.value, opt.caps);
    std::string w;
    if (!curv.is_zero()) w = "curvature " + render(alg.space(), curv);
    for (const auto& [j, x] : faces)
      if (w.empty() && !(simplicial_face(res.value, j) == x))
        w = "face " + std::to_string(j) + ": " + render(alg.space(), simplicial_face(res.value, j) - x);
    r.add(suite, key, w.empty(), w);
  };
  for (const auto& alg : algs) {
    for (int t = 0; t < count; ++t) {
      auto p = random_mc_simplex(alg, 0, D, rng, opt.caps);
      if (p) {
        for (int i = 0; i <= 1; ++i) {
          std::map<int, TensorElement> faces{{1 - i, *p}};
          certify(alg, fill_horn(alg, 1, i, faces, D, opt.caps), faces, "horn:1",
                  trial_key("fixture", alg.name(), t) + " index=" + std::to_string(i));
        }
      }
      auto sigma = random_mc_simplex(alg, 2, D, rng, opt.caps);
      auto edge = random_mc_simplex(alg, 1, D, rng, opt.caps);
      for (int i = 0; i <= 2; ++i) {
        const std::string key = trial_key("fixture", alg.name(), t) + " index=" + std::to_string(i);
        if (sigma) {
          std::map<int, TensorElement> faces;
          for (int j = 0; j <= 2; ++j)
            if (j != i) faces.emplace(j, simplicial_face(*sigma, j));
          certify(alg, fill_horn(alg, 2, i, faces, D, opt.caps), faces, "horn:2", key);
        } else {
          r.add("horn:2", key, false, "no MC 2-simplex found");
        }
        if (edge) {
          const TensorElement degenerate = simplicial_degeneracy(*edge, rng.below(2), opt.caps);
          std::map<int, TensorElement> faces;
          for (int j = 0; j <= 2; ++j)
            if (j != i) faces.emplace(j, simplicial_face(degenerate, j));
          certify(alg, fill_horn(alg, 2, i, faces, D, opt.caps), faces, "horn:2-degenerate", key);
        }
      }
    }
  }
  return r;
}

PropertyReport run_properties(const PropertyOptions& opt) {
  PropertyReport r;
  r.append(relation_suite(opt));
  r.append(curvature_suite(opt));
  r.append(coalgebra_suite(opt));
  r.append(morphism_suite(opt));
  r.append(enhanced_suite(opt));
  r.append(derham_suite(opt));
  r.append(integration_suite(opt));
  r.append(horn_suite(opt));
  return r;
}

}  // namespace slmc
