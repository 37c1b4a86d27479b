#include "slmc/core/graded.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "slmc/core/errors.hpp"

namespace slmc {

bool valid_symbol(std::string_view symbol) {
  if (symbol.empty()) return false;
  auto first = static_cast<unsigned char>(symbol.front());
  if (!std::isalpha(first) && first != '_') return false;
  for (char c : symbol) {
    auto u = static_cast<unsigned char>(c);
    if (!std::isalnum(u) && c != '_' && c != '.' && c != '\'') return false;
  }
  return true;
}

GradedSpace::GradedSpace(std::vector<BasisVector> basis) : basis_(std::move(basis)) {
  for (int i = 0; i < dim(); ++i) {
    const auto& b = basis_[static_cast<std::size_t>(i)];
    if (!valid_symbol(b.symbol)) throw InputError("invalid basis symbol '" + b.symbol + "'");
    if (b.weight < 1) throw InputError("basis vector '" + b.symbol + "' has filtration weight < 1");
    if (!index_.emplace(b.symbol, i).second) throw InputError("duplicate basis symbol '" + b.symbol + "'");
  }
}

std::optional<int> GradedSpace::find(std::string_view symbol) const {
  auto it = index_.find(std::string(symbol));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GradedSpace::index_of(std::string_view symbol) const {
  auto i = find(symbol);
  if (!i) throw InputError("unknown symbol '" + std::string(symbol) + "'");
  return *i;
}

// --- Element -------------------------------------------------------------------

Element Element::basis(int index, const Rational& coefficient) {
  Element e;
  e.add_term(index, coefficient);
  return e;
}

Rational Element::coefficient(int index) const {
  auto it = terms_.find(index);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Element::add_term(int index, const Rational& coefficient) {
  if (coefficient == 0) return;
  auto [it, inserted] = terms_.emplace(index, coefficient);
  if (inserted) {
    it->second.canonicalize();
    return;
  }
  it->second += coefficient;
  if (it->second == 0) terms_.erase(it);
}

Element& Element::operator+=(const Element& other) {
  for (const auto& [i, c] : other.terms_) add_term(i, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  for (const auto& [i, c] : other.terms_) add_term(i, -c);
  return *this;
}

Element& Element::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [i, c] : terms_) c *= scalar;
  return *this;
}

std::optional<int> Element::degree(const GradedSpace& space) const {
  std::optional<int> d;
  for (const auto& [i, c] : terms_) {
    if (d && *d != space.degree(i)) return std::nullopt;
    d = space.degree(i);
  }
  return d;
}

bool Element::has_degree(const GradedSpace& space, int degree) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const auto& t) { return space.degree(t.first) == degree; });
}

int Element::weight(const GradedSpace& space) const {
  int w = kInfiniteWeight;
  for (const auto& [i, c] : terms_) w = std::min(w, space.weight(i));
  return w;
}

Element Element::below_weight(const GradedSpace& space, int bound) const {
  Element out;
  for (const auto& [i, c] : terms_)
    if (space.weight(i) < bound) out.terms_.emplace(i, c);
  return out;
}

Element Element::of_weight(const GradedSpace& space, int w) const {
  Element out;
  for (const auto& [i, c] : terms_)
    if (space.weight(i) == w) out.terms_.emplace(i, c);
  return out;
}

std::string render(const GradedSpace& space, const Element& e) {
  if (e.is_zero()) return "0";
  std::string out;
  for (const auto& [i, c] : e.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " " + space[i].symbol;
  }
  return out;
}

// --- permutations --------------------------------------------------------------

namespace {

void check_permutation(std::span<const int> sigma) {
  std::vector<bool> seen(sigma.size(), false);
  for (int s : sigma) {
    if (s < 0 || static_cast<std::size_t>(s) >= sigma.size() || seen[static_cast<std::size_t>(s)])
      throw InputError("koszul_sign: sigma is not a permutation");
    seen[static_cast<std::size_t>(s)] = true;
  }
}

int checked_total(std::span<const int> blocks, const Caps& caps) {
  int n = 0;
  for (int p : blocks) {
    if (p < 0) throw InputError("shuffles: negative block size");
    n += p;
  }
  if (n > caps.max_word_length)
    throw ResourceError("shuffles: total " + std::to_string(n) + " exceeds word-length cap " +
                        std::to_string(caps.max_word_length));
  return n;
}

}  // namespace

int koszul_sign(std::span<const int> sigma, std::span<const int> degrees) {
  if (sigma.size() != degrees.size()) throw InputError("koszul_sign: length mismatch between sigma and degrees");
  check_permutation(sigma);
  int parity = 0;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    for (std::size_t j = i + 1; j < sigma.size(); ++j)
      if (sigma[i] > sigma[j]) parity ^= (degrees[i] & degrees[j] & 1);
  return parity ? -1 : 1;
}

Permutation inverse(std::span<const int> sigma) {
  Permutation inv(sigma.size());
  for (std::size_t i = 0; i < sigma.size(); ++i) inv[static_cast<std::size_t>(sigma[i])] = static_cast<int>(i);
  return inv;
}

std::vector<Permutation> shuffles(std::span<const int> blocks, const Caps& caps) {
  const int n = checked_total(blocks, caps);
  std::vector<Permutation> out;
  Permutation current;
  std::vector<bool> used(static_cast<std::size_t>(n), false);

  // Block b takes an increasing set of unused images; recursion in
  // lexicographic order yields lexicographically sorted image vectors.
  std::function<void(std::size_t, int, int)> place = [&](std::size_t block, int remaining, int min_image) {
    if (block == blocks.size()) {
      out.push_back(current);
      return;
    }
    if (remaining == 0) {
      place(block + 1, block + 1 < blocks.size() ? blocks[block + 1] : 0, 0);
      return;
    }
    for (int v = min_image; v < n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      current.push_back(v);
      place(block, remaining - 1, v + 1);
      current.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  place(0, blocks.empty() ? 0 : blocks[0], 0);
  return out;
}

std::vector<Permutation> stairway_shuffles(std::span<const int> blocks, const Caps& caps) {
  std::vector<Permutation> out;
  for (auto& sigma : shuffles(blocks, caps)) {
    int offset = 0;
    int last_leader = -1;
    bool ok = true;
    for (int p : blocks) {
      if (p == 0) continue;
      int leader = sigma[static_cast<std::size_t>(offset)];
      if (leader < last_leader) {
        ok = false;
        break;
      }
      last_leader = leader;
      offset += p;
    }
    if (ok) out.push_back(std::move(sigma));
  }
  return out;
}

// --- words ---------------------------------------------------------------------

int word_degree(const GradedSpace& space, const SymWord& w) {
  int d = 0;
  for (int f : w.factors) d += space.degree(f);
  return d;
}

int word_weight(const GradedSpace& space, const SymWord& w) {
  int wt = 0;
  for (int f : w.factors) wt += space.weight(f);
  return wt;
}

namespace {

bool has_repeated_odd(const GradedSpace& space, const std::vector<int>& sorted) {
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (sorted[i] == sorted[i - 1] && space.odd(sorted[i])) return true;
  return false;
}

}  // namespace

CanonicalWord canonicalize(const GradedSpace& space, std::span<const int> factors) {
  for (int f : factors)
    if (f < 0 || f >= space.dim()) throw InputError("canonicalize: factor index out of range");
  // Stable insertion sort, accumulating the Koszul sign of each adjacent swap.
  std::vector<int> v(factors.begin(), factors.end());
  int parity = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
      parity ^= (space.degree(v[j - 1]) & space.degree(v[j]) & 1);
      std::swap(v[j - 1], v[j]);
    }
  CanonicalWord out{SymWord{std::move(v)}, parity ? -1 : 1};
  if (has_repeated_odd(space, out.word.factors)) out.sign = 0;
  return out;
}

CanonicalWord canonicalize(const GradedSpace& space, std::span<const std::string> symbols) {
  std::vector<int> idx;
  idx.reserve(symbols.size());
  for (const auto& s : symbols) idx.push_back(space.index_of(s));
  return canonicalize(space, idx);
}

std::string render_word(const GradedSpace& space, const SymWord& w) {
  if (w.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (i) out += '.';
    out += space[w.factors[i]].symbol;
  }
  return out;
}

std::vector<SymWord> enumerate_words(const GradedSpace& space, int max_length, int weight_bound,
                                     const Caps& caps) {
  std::vector<SymWord> out;
  std::vector<int> current;
  std::function<void(int, int)> grow = [&](int start, int weight) {
    if (!current.empty()) out.push_back(SymWord{current});
    if (static_cast<int>(current.size()) == max_length) return;
    for (int i = start; i < space.dim(); ++i) {
      if (weight + space.weight(i) >= weight_bound) continue;
      if (!current.empty() && current.back() == i && space.odd(i)) continue;
      if (static_cast<int>(current.size()) + 1 > caps.max_word_length)
        throw ResourceError("word enumeration exceeds word-length cap " + std::to_string(caps.max_word_length));
      current.push_back(i);
      grow(i, weight + space.weight(i));
      current.pop_back();
    }
  };
  grow(0, 0);
  std::stable_sort(out.begin(), out.end(), [](const SymWord& a, const SymWord& b) {
    if (a.length() != b.length()) return a.length() < b.length();
    return a.factors < b.factors;
  });
  return out;
}

// --- WordSum -------------------------------------------------------------------

WordSum WordSum::unit() { return word(SymWord{}, 1); }

WordSum WordSum::word(const SymWord& w, const Rational& c) {
  WordSum s;
  s.add(w, c);
  return s;
}

WordSum WordSum::from_element(const Element& e) {
  WordSum s;
  for (const auto& [i, c] : e.terms()) s.add(SymWord{{i}}, c);
  return s;
}

void WordSum::add(const SymWord& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(w, c);
  if (inserted) {
    it->second.canonicalize();
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

WordSum& WordSum::operator+=(const WordSum& other) {
  for (const auto& [w, c] : other.terms_) add(w, c);
  return *this;
}

WordSum& WordSum::operator-=(const WordSum& other) {
  for (const auto& [w, c] : other.terms_) add(w, -c);
  return *this;
}

WordSum& WordSum::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [w, c] : terms_) c *= s;
  return *this;
}

WordSum WordSum::truncated(const GradedSpace& space, int weight_bound) const {
  WordSum out;
  for (const auto& [w, c] : terms_)
    if (word_weight(space, w) < weight_bound) out.terms_.emplace(w, c);
  return out;
}

Element WordSum::linear_part() const {
  Element e;
  for (const auto& [w, c] : terms_)
    if (w.length() == 1) e.add_term(w.factors[0], c);
  return e;
}

Rational WordSum::constant_term() const {
  auto it = terms_.find(SymWord{});
  return it == terms_.end() ? Rational(0) : it->second;
}

WordSum WordSum::without_constant() const {
  WordSum out = *this;
  out.terms_.erase(SymWord{});
  return out;
}

CanonicalWord multiply_words(const GradedSpace& space, const SymWord& a, const SymWord& b) {
  // Merge; a factor of b jumps over every strictly larger factor of a.
  std::vector<int> merged;
  merged.reserve(a.length() + b.length());
  int parity = 0;
  std::size_t i = 0, j = 0;
  int odd_remaining_a = 0;
  for (int f : a.factors) odd_remaining_a += space.odd(f) ? 1 : 0;
  while (i < a.length() || j < b.length()) {
    if (j == b.length() || (i < a.length() && a.factors[i] <= b.factors[j])) {
      if (space.odd(a.factors[i])) --odd_remaining_a;
      merged.push_back(a.factors[i++]);
    } else {
      if (space.odd(b.factors[j])) parity ^= (odd_remaining_a & 1);
      merged.push_back(b.factors[j++]);
    }
  }
  CanonicalWord out{SymWord{std::move(merged)}, parity ? -1 : 1};
  if (has_repeated_odd(space, out.word.factors)) out.sign = 0;
  return out;
}

WordSum multiply(const GradedSpace& space, const WordSum& a, const WordSum& b, int weight_bound) {
  WordSum out;
  for (const auto& [wa, ca] : a.terms()) {
    int weight_a = word_weight(space, wa);
    if (weight_a >= weight_bound) continue;
    for (const auto& [wb, cb] : b.terms()) {
      if (weight_a + word_weight(space, wb) >= weight_bound) continue;
      auto p = multiply_words(space, wa, wb);
      if (p.sign == 0) continue;
      out.add(p.word, p.sign * ca * cb);
    }
  }
  return out;
}

WordSum exp_word(const GradedSpace& space, const Element& a, int weight_bound) {
  if (!a.has_degree(space, 0)) throw InputError("exp: element must have degree 0");
  WordSum result = WordSum::unit();
  WordSum power = WordSum::unit();
  const WordSum base = WordSum::from_element(a);
  // power holds a^k / k!
  for (unsigned k = 1;; ++k) {
    power = multiply(space, power, base, weight_bound);
    if (power.is_zero()) break;
    power *= Rational(1, k);
    result += power;
  }
  return result.truncated(space, weight_bound);
}

std::string render(const GradedSpace& space, const WordSum& s) {
  if (s.is_zero()) return "0";
  std::string out;
  for (const auto& [w, c] : s.terms()) {
    if (!out.empty()) out += " + ";
    out += to_string(c) + " " + render_word(space, w);
  }
  return out;
}

}  // namespace slmc
