#include "slmc/core/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <sstream>
#include <string>

#include "slmc/core/caps.hpp"
#include "slmc/core/errors.hpp"

namespace slmc {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) return std::nullopt;
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) return std::nullopt;
  Rational q(negative ? mpz_class(-n) : n, d);
  q.canonicalize();
  return q;
}

Rational factorial(unsigned k) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), k);
  return Rational(f);
}

// --- caps --------------------------------------------------------------------

Caps Caps::parse(std::string_view spec) {
  Caps caps;
  std::string text(spec);
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("SLMC_CAPS: expected key=value, got '" + item + "'");
    std::string key = item.substr(0, eq);
    std::string value = item.substr(eq + 1);
    if (!all_digits(value)) throw InputError("SLMC_CAPS: bad value for '" + key + "'");
    int v = std::stoi(value);
    if (key == "word")
      caps.max_word_length = v;
    else if (key == "arity")
      caps.max_arity = v;
    else if (key == "poly")
      caps.max_poly_degree = v;
    else
      throw InputError("SLMC_CAPS: unknown key '" + key + "'");
  }
  return caps;
}

Caps Caps::from_env() {
  const char* env = std::getenv("SLMC_CAPS");
  if (env == nullptr) return Caps{};
  return parse(env);
}

}  // namespace slmc
