#include "slmc/core/commands.hpp"

#include <algorithm>
#include <variant>

#include "slmc/core/properties.hpp"

namespace slmc {

namespace {

class Lines {
 public:
  void note(const std::string& text) { notes_ += "# " + text + "\n"; }
  void check(bool pass, const std::string& what, const std::string& witness = {}) {
    std::string line = (pass ? "PASS " : "FAIL ") + what;
    if (!pass && !witness.empty()) line += " witness=" + witness;
    checks_.push_back(std::move(line));
    if (!pass) failed_ = true;
  }
  void raw(const std::string& text) { body_ += text; }

  CommandResult done() {
    std::sort(checks_.begin(), checks_.end());
    CommandResult r;
    r.status = failed_ ? 1 : 0;
    r.text = notes_ + body_;
    for (const auto& c : checks_) r.text += c + "\n";
    return r;
  }

 private:
  std::string notes_, body_;
  std::vector<std::string> checks_;
  bool failed_ = false;
};

const SLAlgebra& need_algebra(const ModelFile& file) {
  const SLAlgebra* a = file.first_algebra();
  if (!a) throw InputError("the model file declares no algebra");
  return *a;
}

std::string words_key(const GradedSpace& space, const SymWord& w) {
  return "arity=" + std::to_string(w.length()) + " word=" + render_word(space, w);
}

void morphism_lines(Lines& out, const InftyMorphism& f, const std::string& label, const Caps& caps) {
  const int bound = std::max(f.source().nilpotency(), f.target().nilpotency());
  const auto words = enumerate_words(f.source().space(), std::min(bound - 1, caps.max_arity), bound, caps);
  for (const auto& w : words) {
    const Element res = morphism_residual(f, w);
    out.check(res.is_zero(), "eq:morphism " + label + " " + words_key(f.source().space(), w),
              render(f.target().space(), res));
  }
  out.note(label + ": " + std::to_string(words.size()) + " source words checked");
}

std::vector<std::pair<std::string, Element>> collect_points(const SLAlgebra& alg, const std::vector<ModelFile>& files) {
  std::vector<std::pair<std::string, Element>> out;
  for (const auto& file : files)
    for (const auto& entry : file.entries) {
      if (const auto* e = std::get_if<NamedElement>(&entry)) {
        if (!(e->algebra == alg)) throw InputError("point '" + e->name + "' lives in a different algebra");
        out.emplace_back(e->name, e->value);
      } else if (const auto* s = std::get_if<NamedSimplex>(&entry)) {
        if (!(s->algebra == alg)) throw InputError("point '" + s->name + "' lives in a different algebra");
        if (s->value.dim() != 0) throw InputError("point '" + s->name + "' is not a 0-simplex");
        out.emplace_back(s->name, s->value.as_element());
      }
    }
  return out;
}

}  // namespace

CommandResult check_algebra_command(const ModelFile& file, std::optional<int> max_arity, const Caps& caps) {
  Lines out;
  bool any = false;
  for (const auto& entry : file.entries) {
    const auto* alg = std::get_if<SLAlgebra>(&entry);
    if (!alg) continue;
    any = true;
    const int arity = max_arity.value_or(std::min(alg->nilpotency() + 1, caps.max_arity));
    if (arity < 1) throw InputError("--max-arity must be >= 1");
    if (arity > caps.max_arity)
      throw ResourceError("arity " + std::to_string(arity) + " exceeds the cap " + std::to_string(caps.max_arity));
    const auto words = enumerate_words(alg->space(), arity, alg->nilpotency(), caps);
    int bad = 0;
    for (const auto& w : words) {
      const Element res = relation_residual(*alg, w, caps);
      if (!res.is_zero()) ++bad;
      out.check(res.is_zero(), "eq:relations algebra=" + alg->name() + " " + words_key(alg->space(), w),
                render(alg->space(), res));
    }
    out.note("algebra " + alg->name() + ": " + std::to_string(words.size()) + " words up to arity " +
             std::to_string(arity) + ", " + std::to_string(bad) + " violations");
  }
  if (!any) throw InputError("the model file declares no algebra");
  return out.done();
}

CommandResult check_morphism_command(const ModelFile& file, const Caps& caps) {
  Lines out;
  bool any = false;
  for (const auto& entry : file.entries) {
    if (const auto* f = std::get_if<InftyMorphism>(&entry)) {
      any = true;
      morphism_lines(out, *f, "morphism=" + f->name(), caps);
    } else if (const auto* e = std::get_if<EnhancedMorphism>(&entry)) {
      any = true;
      const Element curv = curvature(e->target(), e->alpha());
      out.check(curv.is_zero(), "eq:MC enhanced=" + e->name(), render(e->target().space(), curv));
      morphism_lines(out, e->morphism(), "enhanced=" + e->name(), caps);
    }
  }
  if (!any) throw InputError("the model file declares no morphism");
  return out.done();
}

CommandResult curvature_command(const ModelFile& file, std::string_view element) {
  const SLAlgebra& alg = need_algebra(file);
  const Element a = parse_element(alg.space(), element);
  if (!a.has_degree(alg.space(), 0)) throw InputError("curv: element must have degree 0");
  Lines out;
  out.note("curvature in " + alg.name() + " of " + render(alg.space(), a));
  out.raw(render(alg.space(), curvature(alg, a)) + "\n");
  return out.done();
}

CommandResult twist_command(const ModelFile& file, std::string_view mc) {
  const SLAlgebra& alg = need_algebra(file);
  const Element alpha = parse_element(alg.space(), mc);
  Lines out;
  if (!alpha.has_degree(alg.space(), 0)) throw InputError("twist: element must have degree 0");
  const Element curv = curvature(alg, alpha);
  if (!curv.is_zero()) {
    out.check(false, "mc:twist algebra=" + alg.name(), render(alg.space(), curv));
    return out.done();
  }
  const SLAlgebra twisted = twist_algebra(alg, alpha).renamed(alg.name() + "_twisted");
  out.note(alg.name() + " twisted by " + render(alg.space(), alpha));
  out.raw(render_block(twisted));
  return out.done();
}

CommandResult compose_command(const ModelFile& f, const ModelFile& g, bool enhanced, const Caps& caps) {
  Lines out;
  if (enhanced) {
    const EnhancedMorphism* ef = f.first_enhanced();
    const EnhancedMorphism* eg = g.first_enhanced();
    if (!ef || !eg) throw InputError("compose --enhanced: both files need an enhanced block");
    const EnhancedMorphism gf = compose_enhanced(*eg, *ef);
    out.note("composite " + gf.name() + " : " + gf.source().name() + " -> " + gf.target().name());
    out.raw(render_with_dependencies(gf));
    const MorphismReport rep = check_enhanced(gf, caps.max_arity, caps);
    out.note(std::string("morphism equation of the composite: ") + (rep.ok() ? "holds" : "fails"));
    if (!rep.ok()) return {1, out.done().text + "FAIL eq:morphism enhanced=" + gf.name() + " " +
                                  words_key(gf.source().space(), rep.violations.front().word) + "\n"};
  } else {
    const InftyMorphism* mf = f.first_morphism();
    const InftyMorphism* mg = g.first_morphism();
    if (!mf || !mg) throw InputError("compose: both files need a morphism block");
    const InftyMorphism gf = compose_infty(*mg, *mf);
    out.note("composite " + gf.name() + " : " + gf.source().name() + " -> " + gf.target().name());
    out.raw(render_with_dependencies(gf));
    const MorphismReport rep = check_morphism(gf, caps.max_arity, caps);
    out.note(std::string("morphism equation of the composite: ") + (rep.ok() ? "holds" : "fails"));
    if (!rep.ok()) return {1, out.done().text + "FAIL eq:morphism morphism=" + gf.name() + " " +
                                  words_key(gf.source().space(), rep.violations.front().word) + "\n"};
  }
  return out.done();
}

CommandResult push_command(const ModelFile& file, std::string_view element, const Caps& caps) {
  Lines out;
  if (const InftyMorphism* f = file.first_morphism()) {
    const Element a = parse_element(f->source().space(), element);
    const Element image = pushforward(*f, a);
    out.note("pushforward along " + f->name());
    out.raw(render(f->target().space(), image) + "\n");
    if (is_mc(f->source(), a))
      out.check(is_mc(f->target(), image), "mc:image morphism=" + f->name(),
                render(f->target().space(), curvature(f->target(), image)));
    return out.done();
  }
  if (const EnhancedMorphism* e = file.first_enhanced()) {
    const Element a = parse_element(e->source().space(), element);
    const TensorElement image = mc_enhanced(*e, TensorElement::constant(0, a), caps);
    out.note("alpha + F_* along " + e->name());
    out.raw(render(e->target().space(), image.as_element()) + "\n");
    if (is_mc(e->source(), a))
      out.check(is_mc(e->target(), image.as_element()), "mc:image enhanced=" + e->name(),
                render(e->target().space(), curvature(e->target(), image.as_element())));
    return out.done();
  }
  throw InputError("push: the model file declares no morphism");
}

CommandResult mc_system_command(const ModelFile& file, int dim, int poly_degree, const Caps& caps) {
  const SLAlgebra& alg = need_algebra(file);
  const MCSystem sys = mc_system(alg, dim, poly_degree, caps);
  Lines out;
  out.note("MC system of " + alg.name() + " on the " + std::to_string(dim) + "-simplex, polynomial degree <= " +
           std::to_string(poly_degree));
  std::string unknowns = "unknowns";
  for (const auto& n : sys.names) unknowns += " " + n;
  out.raw(unknowns + "\n");
  for (const auto& eq : sys.equations)
    out.raw("equation " + alg.space()[eq.basis].symbol + "[" + render_key(dim, eq.key) + "]: " +
            render(eq.poly, sys.names) + " = 0\n");
  out.note(std::to_string(sys.unknowns.size()) + " unknowns, " + std::to_string(sys.equations.size()) + " equations");
  return out.done();
}

CommandResult mc_check_command(const ModelFile& file, const ModelFile& simplices, const Caps& caps) {
  (void)file;
  Lines out;
  bool any = false;
  for (const auto& entry : simplices.entries) {
    const auto* s = std::get_if<NamedSimplex>(&entry);
    if (!s) continue;
    any = true;
    if (!s->value.has_total_degree(s->algebra.space(), 0)) throw InputError("simplex '" + s->name + "' is not of total degree 0");
    const TensorElement curv = tensor_curvature(s->algebra, s->value, caps);
    out.check(curv.is_zero(), "mc simplex=" + s->name + " dim=" + std::to_string(s->value.dim()),
              render(s->algebra.space(), curv));
  }
  if (!any) throw InputError("mc-check: no simplex block found");
  return out.done();
}

CommandResult fill_horn_command(const ModelFile& file, int dim, int index, const std::vector<ModelFile>& faces,
                                int poly_degree, const Caps& caps) {
  const SLAlgebra& alg = need_algebra(file);
  if (static_cast<int>(faces.size()) != dim)
    throw InputError("fill-horn: a horn of dimension " + std::to_string(dim) + " needs " + std::to_string(dim) + " faces");
  std::map<int, TensorElement> given;
  int j = 0;
  for (const auto& f : faces) {
    if (j == index) ++j;
    const NamedSimplex* s = f.first_simplex();
    if (!s) throw InputError("fill-horn: face file without a simplex block");
    if (!(s->algebra == alg)) throw InputError("fill-horn: face '" + s->name + "' lives in a different algebra");
    given.emplace(j++, s->value);
  }
  const LiftResult r = fill_horn(alg, dim, index, given, poly_degree, caps);
  Lines out;
  out.note("horn Lambda^" + std::to_string(dim) + "_" + std::to_string(index) + " in " + alg.name() +
           ", polynomial degree <= " + std::to_string(poly_degree));
  if (!r.ok) {
    out.check(false, "horn:fill stage=" + std::to_string(r.stage), render(alg.space(), r.obstruction));
    out.note(r.message);
    return out.done();
  }
  out.raw(render_block(NamedSimplex{"filler", alg, r.value}));
  const TensorElement curv = tensor_curvature(alg, r.value, caps);
  out.check(curv.is_zero(), "horn:curvature", render(alg.space(), curv));
  for (const auto& [k, x] : given) {
    const TensorElement gap = simplicial_face(r.value, k) - x;
    out.check(gap.is_zero(), "horn:face index=" + std::to_string(k), render(alg.space(), gap));
  }
  return out.done();
}

CommandResult pi0_command(const ModelFile& file, const std::vector<ModelFile>& points, int poly_degree,
                          const Caps& caps) {
  const SLAlgebra& alg = need_algebra(file);
  const auto named = collect_points(alg, points);
  if (named.empty()) throw InputError("pi0: no points given");
  std::vector<Element> values;
  for (const auto& [n, v] : named) {
    if (!is_mc(alg, v)) throw InputError("pi0: point '" + n + "' is not Maurer-Cartan");
    values.push_back(v);
  }
  const Pi0Result r = pi0(alg, values, poly_degree, caps);
  Lines out;
  out.note("components of MC(" + alg.name() + ") among " + std::to_string(named.size()) +
           " points; paths of polynomial degree <= " + std::to_string(poly_degree));
  for (std::size_t i = 0; i < named.size(); ++i)
    out.raw("component " + named[i].first + " = " + named[static_cast<std::size_t>(r.component[i])].first + "\n");
  for (const auto& c : r.certificates) {
    out.raw("certificate " + named[static_cast<std::size_t>(c.from)].first + " -> " +
            named[static_cast<std::size_t>(c.to)].first + " : " + render(alg.space(), c.path) + "\n");
    const TensorElement curv = tensor_curvature(alg, c.path, caps);
    const bool ends = simplicial_face(c.path, 1).as_element() == values[static_cast<std::size_t>(c.from)] &&
                      simplicial_face(c.path, 0).as_element() == values[static_cast<std::size_t>(c.to)];
    out.check(curv.is_zero() && ends,
              "pi0:certificate from=" + named[static_cast<std::size_t>(c.from)].first +
                  " to=" + named[static_cast<std::size_t>(c.to)].first,
              curv.is_zero() ? "endpoints differ" : render(alg.space(), curv));
  }
  out.raw("classes " + std::to_string(r.classes()) + "\n");
  if (r.classes() > 1)
    out.note("separate classes are not joined by any 1-simplex of polynomial degree <= " + std::to_string(poly_degree));
  return out.done();
}

CommandResult properties_command(std::uint64_t seed, int trials, const Caps& caps) {
  if (trials < 1) throw InputError("--trials must be >= 1");
  PropertyOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  opt.caps = caps;
  const PropertyReport rep = run_properties(opt);
  CommandResult r;
  r.status = rep.ok() ? 0 : 1;
  r.text = "# property suites, seed " + std::to_string(seed) + ", " + std::to_string(trials) + " trials: " +
           std::to_string(rep.passed()) + " passed, " + std::to_string(rep.failed()) + " failed\n" + rep.render();
  return r;
}

}  // namespace slmc
