#include "slmc/core/model_io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

namespace slmc {

// --- lookups -----------------------------------------------------------------

const SLAlgebra* ModelFile::find_algebra(std::string_view name) const {
  for (const auto& e : entries)
    if (const auto* a = std::get_if<SLAlgebra>(&e); a && a->name() == name) return a;
  return nullptr;
}

namespace {

template <class T>
const T* first_of(const std::vector<ModelEntry>& entries) {
  for (const auto& e : entries)
    if (const auto* p = std::get_if<T>(&e)) return p;
  return nullptr;
}

}  // namespace

const SLAlgebra* ModelFile::first_algebra() const { return first_of<SLAlgebra>(entries); }
const InftyMorphism* ModelFile::first_morphism() const { return first_of<InftyMorphism>(entries); }
const EnhancedMorphism* ModelFile::first_enhanced() const { return first_of<EnhancedMorphism>(entries); }
const NamedElement* ModelFile::first_element() const { return first_of<NamedElement>(entries); }
const NamedSimplex* ModelFile::first_simplex() const { return first_of<NamedSimplex>(entries); }

// --- expression parsing ------------------------------------------------------

namespace {

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

Rational rational_token(const std::string& tok) {
  auto q = parse_rational(tok);
  if (!q) throw InputError("expected a rational number, got '" + tok + "'");
  return *q;
}

Element element_from_tokens(const GradedSpace& space, const std::vector<std::string>& toks, std::size_t begin) {
  Element out;
  if (toks.size() == begin + 1 && toks[begin] == "0") return out;
  std::size_t i = begin;
  if (i >= toks.size()) throw InputError("expected 'RAT SYM {+ RAT SYM}' or '0'");
  while (true) {
    if (i + 1 >= toks.size()) throw InputError("expected 'RAT SYM' term");
    const Rational c = rational_token(toks[i]);
    const auto idx = space.find(toks[i + 1]);
    if (!idx) throw InputError("undeclared symbol '" + toks[i + 1] + "'");
    out.add_term(*idx, c);
    i += 2;
    if (i == toks.size()) break;
    if (toks[i] != "+") throw InputError("expected '+' between terms, got '" + toks[i] + "'");
    ++i;
  }
  return out;
}

std::optional<std::pair<int, int>> factor_token(const std::string& tok, bool& is_dt) {
  std::string_view s = tok;
  is_dt = false;
  if (s.starts_with("dt")) {
    is_dt = true;
    s.remove_prefix(2);
  } else if (s.starts_with("t")) {
    s.remove_prefix(1);
  } else {
    return std::nullopt;
  }
  auto caret = s.find('^');
  std::string_view idx = s.substr(0, caret);
  std::string_view pow = caret == std::string_view::npos ? std::string_view{"1"} : s.substr(caret + 1);
  if (is_dt && caret != std::string_view::npos) return std::nullopt;
  auto digits = [](std::string_view v) {
    return !v.empty() && v.size() < 6 && std::all_of(v.begin(), v.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
  };
  if (!digits(idx) || !digits(pow)) return std::nullopt;
  return std::make_pair(std::stoi(std::string(idx)), std::stoi(std::string(pow)));
}

}  // namespace

Element parse_element(const GradedSpace& space, std::string_view text) {
  return element_from_tokens(space, tokenize(text), 0);
}

PolyForm parse_form(int dim, std::string_view text) {
  const auto toks = tokenize(text);
  PolyForm out(dim);
  if (toks.size() == 1 && toks[0] == "0") return out;
  if (toks.empty()) throw InputError("empty form");
  std::size_t i = 0;
  while (i < toks.size()) {
    const Rational c = rational_token(toks[i++]);
    PolyForm term = PolyForm::constant(dim, c);
    std::vector<int> exps(static_cast<std::size_t>(dim), 0);
    std::vector<int> dts;
    while (i < toks.size() && toks[i] != "+") {
      bool is_dt = false;
      auto f = factor_token(toks[i], is_dt);
      if (!f) throw InputError("bad form factor '" + toks[i] + "'");
      if (f->first < 1 || f->first > dim)
        throw InputError("form factor '" + toks[i] + "' is out of range on the " + std::to_string(dim) + "-simplex");
      if (is_dt)
        dts.push_back(f->first);
      else
        exps[static_cast<std::size_t>(f->first - 1)] += f->second;
      ++i;
    }
    term = PolyForm::monomial(dim, FormKey{exps, 0}, c);
    for (int k : dts) term = wedge(term, PolyForm::differential(dim, k), 1 << 20);
    out += term;
    if (i < toks.size()) {
      ++i;
      if (i == toks.size()) throw InputError("dangling '+' in form");
    }
  }
  return out;
}

TensorElement parse_tensor(const GradedSpace& space, int dim, std::string_view text) {
  TensorElement out(dim);
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  skip_ws();
  if (text.substr(pos) == "0") return out;
  while (true) {
    skip_ws();
    if (pos >= text.size() || text[pos] != '(') throw InputError("expected '(FORM) SYM' term");
    const auto close = text.find(')', pos);
    if (close == std::string_view::npos) throw InputError("unbalanced '(' in simplex value");
    PolyForm form = parse_form(dim, text.substr(pos + 1, close - pos - 1));
    pos = close + 1;
    skip_ws();
    std::size_t end = pos;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string sym(text.substr(pos, end - pos));
    auto idx = space.find(sym);
    if (!idx) throw InputError("undeclared symbol '" + sym + "'");
    out.add(*idx, form);
    pos = end;
    skip_ws();
    if (pos == text.size()) break;
    if (text[pos] != '+') throw InputError("expected '+' between terms");
    ++pos;
  }
  return out;
}

std::string render_tensor_line(const GradedSpace& space, const TensorElement& x) { return render(space, x); }

// --- block parser ------------------------------------------------------------

namespace {

struct Line {
  int number = 0;
  std::vector<std::string> toks;
  std::string rest_after(std::size_t k) const {
    std::string out;
    for (std::size_t i = k; i < toks.size(); ++i) {
      if (!out.empty()) out += ' ';
      out += toks[i];
    }
    return out;
  }
};

[[noreturn]] void fail(int line, const std::string& msg) { throw InputError("line " + std::to_string(line) + ": " + msg); }

int int_token(const Line& l, std::size_t k) {
  if (k >= l.toks.size()) fail(l.number, "missing integer");
  const auto& s = l.toks[k];
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size() || s.size() > 9 ||
      !std::all_of(s.begin() + static_cast<long>(start), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    fail(l.number, "expected an integer, got '" + s + "'");
  return std::stoi(s);
}

void expect(const Line& l, std::size_t k, const char* word) {
  if (k >= l.toks.size() || l.toks[k] != word) fail(l.number, std::string("expected '") + word + "'");
}

std::string name_token(const Line& l, std::size_t k) {
  if (k >= l.toks.size()) fail(l.number, "missing name");
  if (!valid_symbol(l.toks[k])) fail(l.number, "invalid name '" + l.toks[k] + "'");
  return l.toks[k];
}

// Parses "M [S1 ... SM] -> EXPR" starting at token k (or "SYM -> EXPR" when
// `differential` is set). Returns the canonical word with the expression
// already multiplied by the canonicalization sign.
std::pair<SymWord, Element> operation_line(const Line& l, std::size_t k, const GradedSpace& src,
                                           const GradedSpace& tgt, bool differential) {
  std::vector<std::string> syms;
  std::size_t arrow = 0;
  if (differential) {
    if (k >= l.toks.size()) fail(l.number, "missing symbol");
    syms.push_back(l.toks[k]);
    arrow = k + 1;
  } else {
    const int m = int_token(l, k);
    if (k + 1 >= l.toks.size() || l.toks[k + 1].empty() || l.toks[k + 1][0] != '[') fail(l.number, "expected '[SYMS]'");
    std::string joined;
    std::size_t j = k + 1;
    for (; j < l.toks.size(); ++j) {
      joined += (joined.empty() ? "" : " ") + l.toks[j];
      if (l.toks[j].back() == ']') break;
    }
    if (j == l.toks.size()) fail(l.number, "unterminated '['");
    syms = tokenize(joined.substr(1, joined.size() - 2));
    if (static_cast<int>(syms.size()) != m)
      fail(l.number, "arity " + std::to_string(m) + " does not match " + std::to_string(syms.size()) + " symbols");
    arrow = j + 1;
  }
  if (syms.empty()) fail(l.number, "operation on the empty word");
  for (const auto& s : syms)
    if (!src.find(s)) fail(l.number, "undeclared symbol '" + s + "'");
  expect(l, arrow, "->");
  CanonicalWord canon;
  Element value;
  try {
    canon = canonicalize(src, syms);
    value = element_from_tokens(tgt, l.toks, arrow + 1);
  } catch (const InputError& e) {
    fail(l.number, e.what());
  }
  if (canon.sign == 0) fail(l.number, "word repeats an odd-degree symbol and vanishes");
  return {canon.word, Rational(canon.sign) * value};
}

void check_operation(const Line& l, const GradedSpace& src, const GradedSpace& tgt, const SymWord& w,
                     const Element& value, int degree_shift, const char* what) {
  const int wd = word_degree(src, w) + degree_shift;
  const int ww = word_weight(src, w);
  for (const auto& [i, c] : value.terms()) {
    if (tgt.degree(i) != wd)
      fail(l.number, std::string(what) + " output '" + tgt[i].symbol + "' has degree " + std::to_string(tgt.degree(i)) +
                         ", expected " + std::to_string(wd));
    if (tgt.weight(i) < ww)
      fail(l.number, std::string(what) + " output '" + tgt[i].symbol + "' has weight " + std::to_string(tgt.weight(i)) +
                         " below the input weight " + std::to_string(ww) +
                         " (operations must be compatible with the filtration)");
  }
}

class Parser {
 public:
  Parser(std::string_view text, const ModelFile* context) : context_(context) {
    std::istringstream in{std::string(text)};
    std::string raw;
    int n = 0;
    while (std::getline(in, raw)) {
      ++n;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.erase(hash);
      auto toks = tokenize(raw);
      if (!toks.empty()) lines_.push_back({n, std::move(toks)});
    }
  }

  ModelFile run() {
    std::size_t i = 0;
    while (i < lines_.size()) {
      const Line& head = lines_[i];
      std::size_t j = i + 1;
      while (j < lines_.size() && !is_header(lines_[j].toks[0])) ++j;
      std::vector<Line> body(lines_.begin() + static_cast<long>(i) + 1, lines_.begin() + static_cast<long>(j));
      const auto& kw = head.toks[0];
      if (kw == "algebra")
        algebra_block(head, body);
      else if (kw == "morphism")
        morphism_block(head, body, false);
      else if (kw == "enhanced")
        morphism_block(head, body, true);
      else if (kw == "element")
        element_block(head, body);
      else if (kw == "simplex")
        simplex_block(head, body);
      else
        fail(head.number, "expected a block header (algebra, morphism, enhanced, element, simplex), got '" + kw + "'");
      i = j;
    }
    return std::move(file_);
  }

 private:
  static bool is_header(const std::string& t) {
    return t == "algebra" || t == "morphism" || t == "enhanced" || t == "element" || t == "simplex";
  }

  void check_fresh(const Line& l, const std::string& name) {
    for (const auto& n : names_)
      if (n == name) fail(l.number, "duplicate block name '" + name + "'");
    names_.push_back(name);
  }

  const SLAlgebra& algebra_ref(const Line& l, const std::string& name) {
    const SLAlgebra* a = file_.find_algebra(name);
    if (!a && context_) a = context_->find_algebra(name);
    if (!a) fail(l.number, "undeclared algebra '" + name + "'");
    return *a;
  }

  void algebra_block(const Line& head, const std::vector<Line>& body) {
    if (head.toks.size() != 2) fail(head.number, "expected 'algebra NAME'");
    const std::string name = name_token(head, 1);
    check_fresh(head, name);
    std::vector<BasisVector> basis;
    std::optional<int> nilpotency;
    int nil_line = head.number;
    OperationTable table;
    for (const auto& l : body) {
      const auto& kw = l.toks[0];
      if (kw == "basis") {
        if (l.toks.size() != 6) fail(l.number, "expected 'basis SYM deg INT wt INT'");
        const std::string sym = l.toks[1];
        if (!valid_symbol(sym)) fail(l.number, "invalid symbol '" + sym + "'");
        expect(l, 2, "deg");
        expect(l, 4, "wt");
        BasisVector b{sym, int_token(l, 3), int_token(l, 5)};
        if (b.weight < 1) fail(l.number, "filtration weight must be >= 1");
        for (const auto& other : basis)
          if (other.symbol == sym) fail(l.number, "duplicate basis symbol '" + sym + "'");
        basis.push_back(std::move(b));
      } else if (kw == "nilpotency") {
        if (l.toks.size() != 2) fail(l.number, "expected 'nilpotency INT'");
        if (nilpotency) fail(l.number, "nilpotency declared twice");
        nilpotency = int_token(l, 1);
        nil_line = l.number;
        if (*nilpotency < 2) fail(l.number, "nilpotency order must be >= 2");
      } else if (kw == "bracket" || kw == "differential") {
        GradedSpace space(basis);
        auto [w, v] = operation_line(l, 1, space, space, kw == "differential");
        check_operation(l, space, space, w, v, 1, "bracket");
        if (table.count(w)) fail(l.number, "operation on " + render_word(space, w) + " declared twice");
        table.emplace(std::move(w), std::move(v));
      } else {
        fail(l.number, "unexpected '" + kw + "' in algebra block");
      }
    }
    if (!nilpotency) fail(head.number, "algebra '" + name + "' has no nilpotency line");
    for (const auto& b : basis)
      if (b.weight >= *nilpotency)
        fail(nil_line, "basis vector '" + b.symbol + "' has weight " + std::to_string(b.weight) +
                           " >= nilpotency order " + std::to_string(*nilpotency));
    try {
      SLAlgebra alg(name, GradedSpace(std::move(basis)), std::move(table), *nilpotency);
      if (const SLAlgebra* known = context_ ? context_->find_algebra(name) : nullptr) {
        if (!(*known == alg)) fail(head.number, "algebra '" + name + "' differs from the one already loaded");
        return;
      }
      file_.entries.emplace_back(std::move(alg));
    } catch (const InputError& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      fail(head.number, e.what());
    }
  }

  void morphism_block(const Line& head, const std::vector<Line>& body, bool enhanced) {
    if (head.toks.size() != 6 || head.toks[2] != ":" || head.toks[4] != "->")
      fail(head.number, std::string("expected '") + (enhanced ? "enhanced" : "morphism") + " NAME : SRC -> TGT'");
    const std::string name = name_token(head, 1);
    check_fresh(head, name);
    const SLAlgebra& src = algebra_ref(head, head.toks[3]);
    const SLAlgebra& tgt = algebra_ref(head, head.toks[5]);
    Element alpha;
    bool have_mc = false;
    TaylorTable table;
    for (const auto& l : body) {
      const auto& kw = l.toks[0];
      if (kw == "mc" && enhanced) {
        if (have_mc) fail(l.number, "mc declared twice");
        have_mc = true;
        try {
          alpha = element_from_tokens(tgt.space(), l.toks, 1);
        } catch (const InputError& e) {
          fail(l.number, e.what());
        }
        if (!alpha.has_degree(tgt.space(), 0)) fail(l.number, "MC element must have degree 0");
      } else if (kw == "taylor") {
        auto [w, v] = operation_line(l, 1, src.space(), tgt.space(), false);
        check_operation(l, src.space(), tgt.space(), w, v, 0, "taylor");
        if (table.count(w)) fail(l.number, "taylor coefficient on " + render_word(src.space(), w) + " declared twice");
        table.emplace(std::move(w), std::move(v));
      } else {
        fail(l.number, "unexpected '" + kw + "' in " + (enhanced ? "enhanced" : "morphism") + " block");
      }
    }
    try {
      if (!enhanced) {
        file_.entries.emplace_back(InftyMorphism(name, src, tgt, std::move(table)));
      } else {
        SLAlgebra twisted = twist_algebra(tgt, alpha);
        InftyMorphism f(name, src, std::move(twisted), std::move(table));
        file_.entries.emplace_back(EnhancedMorphism(name, alpha, std::move(f), tgt));
      }
    } catch (const NotMaurerCartan& e) {
      throw NotMaurerCartan("line " + std::to_string(head.number) + ": " + e.what(), e.witness());
    } catch (const InputError& e) {
      fail(head.number, e.what());
    }
  }

  void element_block(const Line& head, const std::vector<Line>& body) {
    if (head.toks.size() != 4 || head.toks[2] != ":") fail(head.number, "expected 'element NAME : ALG'");
    const std::string name = name_token(head, 1);
    check_fresh(head, name);
    const SLAlgebra& alg = algebra_ref(head, head.toks[3]);
    if (body.size() != 1 || body[0].toks[0] != "value") fail(head.number, "element block needs exactly one 'value' line");
    Element value;
    try {
      value = element_from_tokens(alg.space(), body[0].toks, 1);
    } catch (const InputError& e) {
      fail(body[0].number, e.what());
    }
    file_.entries.emplace_back(NamedElement{name, alg, std::move(value)});
  }

  void simplex_block(const Line& head, const std::vector<Line>& body) {
    if (head.toks.size() != 6 || head.toks[2] != ":" || head.toks[4] != "dim")
      fail(head.number, "expected 'simplex NAME : ALG dim N'");
    const std::string name = name_token(head, 1);
    check_fresh(head, name);
    const SLAlgebra& alg = algebra_ref(head, head.toks[3]);
    const int dim = int_token(head, 5);
    if (dim < 0 || dim > 3) fail(head.number, "simplex dimension must be in 0..3");
    if (body.size() != 1 || body[0].toks[0] != "value") fail(head.number, "simplex block needs exactly one 'value' line");
    TensorElement value;
    try {
      value = parse_tensor(alg.space(), dim, body[0].rest_after(1));
    } catch (const InputError& e) {
      fail(body[0].number, e.what());
    }
    file_.entries.emplace_back(NamedSimplex{name, alg, std::move(value)});
  }

  const ModelFile* context_ = nullptr;
  std::vector<Line> lines_;
  std::vector<std::string> names_;
  ModelFile file_;
};

// --- rendering ---------------------------------------------------------------

std::vector<std::pair<SymWord, Element>> by_arity(const std::map<SymWord, Element>& table) {
  std::vector<std::pair<SymWord, Element>> out(table.begin(), table.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.length() != b.first.length()) return a.first.length() < b.first.length();
    return a.first < b.first;
  });
  return out;
}

std::string bracket_word(const GradedSpace& space, const SymWord& w) {
  std::string out = std::to_string(w.length()) + " [";
  for (std::size_t i = 0; i < w.length(); ++i) {
    if (i) out += ' ';
    out += space[w.factors[i]].symbol;
  }
  return out + "]";
}

}  // namespace

ModelFile parse_model(std::string_view text) { return Parser(text, nullptr).run(); }

ModelFile parse_model(std::string_view text, const ModelFile& context) { return Parser(text, &context).run(); }

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

template <class... Ctx>
ModelFile load_with(const std::string& path, const Ctx&... ctx) {
  const std::string text = read_file(path);
  try {
    return parse_model(text, ctx...);
  } catch (const NotMaurerCartan& e) {
    throw NotMaurerCartan(path + ": " + e.what(), e.witness());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace

ModelFile load_model(const std::string& path) { return load_with(path); }

ModelFile load_model(const std::string& path, const ModelFile& context) { return load_with(path, context); }

std::string render_block(const SLAlgebra& alg) {
  const auto& s = alg.space();
  std::string out = "algebra " + alg.name() + "\n";
  for (const auto& b : s.basis())
    out += "basis " + b.symbol + " deg " + std::to_string(b.degree) + " wt " + std::to_string(b.weight) + "\n";
  out += "nilpotency " + std::to_string(alg.nilpotency()) + "\n";
  for (const auto& [w, v] : by_arity(alg.brackets())) {
    if (w.length() == 1)
      out += "differential " + s[w.factors[0]].symbol + " -> " + render(s, v) + "\n";
    else
      out += "bracket " + bracket_word(s, w) + " -> " + render(s, v) + "\n";
  }
  return out;
}

namespace {

std::string taylor_lines(const InftyMorphism& f) {
  std::string out;
  for (const auto& [w, v] : by_arity(f.taylor()))
    out += "taylor " + bracket_word(f.source().space(), w) + " -> " + render(f.target().space(), v) + "\n";
  return out;
}

}  // namespace

std::string render_block(const InftyMorphism& f) {
  return "morphism " + f.name() + " : " + f.source().name() + " -> " + f.target().name() + "\n" + taylor_lines(f);
}

std::string render_block(const EnhancedMorphism& e) {
  return "enhanced " + e.name() + " : " + e.source().name() + " -> " + e.target().name() + "\n" + "mc " +
         render(e.target().space(), e.alpha()) + "\n" + taylor_lines(e.morphism());
}

std::string render_block(const NamedElement& e) {
  return "element " + e.name + " : " + e.algebra.name() + "\nvalue " + render(e.algebra.space(), e.value) + "\n";
}

std::string render_block(const NamedSimplex& s) {
  return "simplex " + s.name + " : " + s.algebra.name() + " dim " + std::to_string(s.value.dim()) + "\nvalue " +
         render(s.algebra.space(), s.value) + "\n";
}

std::string render_model(const ModelFile& file) {
  std::string out;
  for (const auto& e : file.entries) {
    if (!out.empty()) out += "\n";
    out += std::visit([](const auto& v) { return render_block(v); }, e);
  }
  return out;
}

namespace {

std::string algebras_for(const SLAlgebra& src, const SLAlgebra& tgt) {
  if (src.name() == tgt.name()) {
    if (!(src == tgt)) throw InputError("source and target share the name '" + src.name() + "' but differ");
    return render_block(src) + "\n";
  }
  return render_block(src) + "\n" + render_block(tgt) + "\n";
}

}  // namespace

std::string render_with_dependencies(const InftyMorphism& f) {
  return algebras_for(f.source(), f.target()) + render_block(f);
}

std::string render_with_dependencies(const EnhancedMorphism& e) {
  return algebras_for(e.source(), e.target()) + render_block(e);
}

}  // namespace slmc
