#include "jetcheck/normal_form.hpp"

#include <algorithm>
#include <cstdlib>
#include <utility>
#include <vector>

#include "jetcheck/error.hpp"

namespace jetcheck {
namespace {

constexpr long kMaxMultipleAngle = 16;

int degree(const PolyForm::Monomial& m) {
  int d = 0;
  for (const auto& [g, e] : m) d += e;
  return d;
}

PolyForm::Monomial multiply(const PolyForm::Monomial& a, const PolyForm::Monomial& b) {
  PolyForm::Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      const int e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  return out;
}

bool is_sine_atom(const Expr& g) { return g.kind() == Expr::Kind::Function && g.fn() == Fn::Sin; }

void reduce_into(PolyForm::Monomial m, const Rational& c, PolyForm& out);

}  // namespace

bool PolyForm::MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  const int da = degree(a);
  const int db = degree(b);
  if (da != db) return da < db;
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    if (auto c = a[i].first <=> b[i].first; c != 0) return c > 0;
    if (a[i].second != b[i].second) return a[i].second < b[i].second;
  }
  return a.size() < b.size();
}

PolyForm PolyForm::constant(const Rational& c) {
  PolyForm p;
  if (c != 0) p.terms_.emplace(Monomial{}, c);
  return p;
}

PolyForm PolyForm::generator(const Expr& g, int exponent) {
  PolyForm p;
  if (exponent == 0) {
    p.terms_.emplace(Monomial{}, Rational(1));
  } else {
    p.terms_.emplace(Monomial{{g, exponent}}, Rational(1));
  }
  return p;
}

std::optional<Rational> PolyForm::as_constant() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_.begin()->first.empty()) return terms_.begin()->second;
  return std::nullopt;
}

void PolyForm::add(const Monomial& m, const Rational& c) { add_term(m, c); }

void PolyForm::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

PolyForm& PolyForm::operator+=(const PolyForm& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

PolyForm& PolyForm::operator-=(const PolyForm& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

PolyForm operator*(const PolyForm& a, const PolyForm& b) {
  PolyForm out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  }
  return out;
}

PolyForm PolyForm::scaled(const Rational& c) const {
  if (c == 0) return {};
  PolyForm out = *this;
  for (auto& [m, v] : out.terms_) v *= c;
  return out;
}

PolyForm PolyForm::pow(unsigned long n) const {
  PolyForm result = constant(1);
  PolyForm base = *this;
  while (n > 0) {
    if (n & 1UL) result = (result * base).reduced_trig();
    n >>= 1;
    if (n > 0) base = (base * base).reduced_trig();
  }
  return result;
}

namespace {

void reduce_into(PolyForm::Monomial m, const Rational& c, PolyForm& out) {
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (is_sine_atom(m[i].first) && m[i].second >= 2) {
      const Expr cosine = cos(m[i].first.argument());
      PolyForm::Monomial lowered = m;
      lowered[i].second -= 2;
      if (lowered[i].second == 0) lowered.erase(lowered.begin() + static_cast<long>(i));
      reduce_into(lowered, c, out);
      reduce_into(multiply(lowered, {{cosine, 2}}), -c, out);
      return;
    }
  }
  out.add(m, c);
}

}  // namespace

PolyForm PolyForm::reduced_trig() const {
  bool needs = false;
  for (const auto& [m, c] : terms_) {
    for (const auto& [g, e] : m) {
      if (e >= 2 && is_sine_atom(g)) needs = true;
    }
  }
  if (!needs) return *this;
  PolyForm out;
  for (const auto& [m, c] : terms_) reduce_into(m, c, out);
  return out;
}

PolyForm PolyForm::with_even_powers_replaced(const Expr& g, const PolyForm& replacement) const {
  PolyForm out;
  for (const auto& [m, c] : terms_) {
    Monomial rest;
    int e = 0;
    for (const auto& [gen, ex] : m) {
      if (gen == g) e = ex;
      else rest.emplace_back(gen, ex);
    }
    if (e % 2 != 0 || e < 0) {
      throw Error("odd or negative power " + std::to_string(e) + " of " + render(g) + " cannot be replaced");
    }
    PolyForm term;
    term.add_term(rest, c);
    out += (term * replacement.pow(static_cast<unsigned long>(e / 2))).reduced_trig();
  }
  return out;
}

Expr PolyForm::to_expr() const {
  std::vector<Expr> terms;
  terms.reserve(terms_.size());
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    std::vector<Expr> factors;
    factors.reserve(it->first.size() + 1);
    factors.push_back(Expr::number(it->second));
    for (const auto& [g, e] : it->first) factors.push_back(jetcheck::pow(g, e));
    terms.push_back(Expr::product(std::move(factors)));
  }
  return Expr::sum(std::move(terms));
}

namespace {

// Splits a nonzero form A into content * B, where content is a positive
// rational and B has integer coprime coefficients with a positive leading
// coefficient. Returns (content, sign, B).
struct ContentSplit {
  Rational content;
  int sign;
  PolyForm primitive;
};

ContentSplit split_content(const PolyForm& a) {
  mpz_class g = 0;
  mpz_class l = 1;
  for (const auto& [m, c] : a.terms()) {
    mpz_class num = abs(c.get_num());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), num.get_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(g, l);
  content.canonicalize();
  const int sign = a.terms().rbegin()->second < 0 ? -1 : 1;
  Rational inv = 1 / content;
  if (sign < 0) inv = -inv;
  return {content, sign, a.scaled(inv)};
}

PolyForm trig_of(Fn fn, const PolyForm& arg) {
  if (arg.is_zero()) return PolyForm::constant(fn == Fn::Cos ? 1 : 0);
  auto [content, sign, primitive] = split_content(arg);
  if (is_integer(content) && content <= kMaxMultipleAngle) {
    const long n = content.get_num().get_si();
    const Expr b = primitive.to_expr();
    const PolyForm s1 = PolyForm::generator(sin(b));
    const PolyForm c1 = PolyForm::generator(cos(b));
    PolyForm s = s1;
    PolyForm c = c1;
    for (long k = 1; k < n; ++k) {
      PolyForm s_next = (s * c1 + c * s1).reduced_trig();
      PolyForm c_next = (c * c1 - s * s1).reduced_trig();
      s = std::move(s_next);
      c = std::move(c_next);
    }
    if (fn == Fn::Cos) return c;
    return sign < 0 ? s.scaled(-1) : s;
  }
  // Non-integer multiple: keep the argument as an atom, canonical up to sign.
  const PolyForm canonical = sign < 0 ? arg.scaled(-1) : arg;
  const Expr b = canonical.to_expr();
  if (fn == Fn::Cos) return PolyForm::generator(cos(b));
  return PolyForm::generator(sin(b)).scaled(sign);
}

PolyForm reciprocal(const PolyForm& b, long n, const Expr& original) {
  if (b.is_zero()) throw Error("division by zero in " + render(original));
  if (b.term_count() == 1) {
    const auto& [m, c] = *b.terms().begin();
    PolyForm inv = PolyForm::constant(1 / c);
    for (const auto& [g, e] : m) inv = inv * PolyForm::generator(g, -e);
    return inv.pow(static_cast<unsigned long>(n));
  }
  const Rational lead = b.terms().rbegin()->second;
  const PolyForm monic = b.scaled(1 / lead);
  PolyForm atom = PolyForm::generator(jetcheck::pow(monic.to_expr(), -1));
  atom = atom.scaled(1 / lead);
  return atom.pow(static_cast<unsigned long>(n));
}

PolyForm normalize_impl(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number: return PolyForm::constant(e.value());
    case Expr::Kind::Symbol: return PolyForm::generator(e);
    case Expr::Kind::Sum: {
      PolyForm out;
      for (const auto& t : e.args()) out += normalize_impl(t);
      return out;
    }
    case Expr::Kind::Product: {
      // A divisor that is a sum cancels against a proportional factor.
      std::vector<std::pair<PolyForm, long>> fs;
      for (const auto& f : e.args()) {
        if (f.kind() == Expr::Kind::Power) {
          fs.emplace_back(normalize_impl(f.base()), f.exponent());
        } else {
          fs.emplace_back(normalize_impl(f), 1);
        }
      }
      Rational scale = 1;
      for (auto& [den, de] : fs) {
        if (de >= 0 || den.term_count() < 2) continue;
        const Rational dl = den.terms().rbegin()->second;
        for (auto& [nu, ne] : fs) {
          if (ne <= 0 || nu.term_count() != den.term_count()) continue;
          const Rational nl = nu.terms().rbegin()->second;
          if (!(nu.scaled(dl / nl) == den)) continue;
          const long k = std::min(-de, ne);
          for (long i = 0; i < k; ++i) scale *= nl / dl;
          de += k;
          ne -= k;
          if (de == 0) break;
        }
      }
      PolyForm out = PolyForm::constant(scale);
      for (std::size_t i = 0; i < fs.size() && !out.is_zero(); ++i) {
        const auto& [b, n] = fs[i];
        if (n == 0) continue;
        const PolyForm f = n > 0 ? b.pow(static_cast<unsigned long>(n)) : reciprocal(b, -n, e.args()[i]);
        out = (out * f).reduced_trig();
      }
      return out;
    }
    case Expr::Kind::Power: {
      const long n = e.exponent();
      if (n > 0) return normalize_impl(e.base()).pow(static_cast<unsigned long>(n));
      return reciprocal(normalize_impl(e.base()), -n, e);
    }
    case Expr::Kind::Function: {
      const Fn fn = e.fn();
      if (fn == Fn::Sqrt || fn == Fn::Arctan) {
        throw UnsupportedNodeError(std::string(fn_name(fn)) + " cannot be normalized", render(e));
      }
      return trig_of(fn, normalize_impl(e.argument()));
    }
  }
  return {};
}

}  // namespace

PolyForm normalize(const Expr& e) { return normalize_impl(e); }

Expr simplify(const Expr& e) { return normalize(e).to_expr(); }

Expr simplify_if_possible(const Expr& e) {
  try {
    return simplify(e);
  } catch (const UnsupportedNodeError&) {
    return e;
  }
}

}  // namespace jetcheck
