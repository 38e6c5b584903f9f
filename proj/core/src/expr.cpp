#include "jetcheck/expr.hpp"

#include <algorithm>
#include <utility>

#include "jetcheck/error.hpp"

namespace jetcheck {

struct Expr::Node {
  Kind kind = Kind::Number;
  Rational value;
  Symbol sym;
  std::vector<Expr> args;
  long exponent = 0;
  Fn fn = Fn::Sin;
  std::size_t size = 1;
};

std::string_view fn_name(Fn fn) {
  switch (fn) {
    case Fn::Sin: return "sin";
    case Fn::Cos: return "cos";
    case Fn::Sqrt: return "sqrt";
    case Fn::Arctan: return "arctan";
  }
  return "?";
}

Expr::Expr() {
  static const auto zero = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Number;
    n->value = 0;
    return std::shared_ptr<const Node>(n);
  }();
  node_ = zero;
}

Expr Expr::number(Rational value) {
  value.canonicalize();
  if (value == 0) return Expr();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Number;
  n->value = std::move(value);
  return Expr(std::move(n));
}

Expr Expr::symbol(Symbol s) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Symbol;
  n->sym = std::move(s);
  return Expr(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
  std::vector<Expr> flat;
  flat.reserve(terms.size());
  Rational constant = 0;
  for (auto& t : terms) {
    switch (t.kind()) {
      case Kind::Number: constant += t.value(); break;
      case Kind::Sum:
        for (const auto& a : t.args()) {
          if (a.is_number()) constant += a.value();
          else flat.push_back(a);
        }
        break;
      default: flat.push_back(std::move(t)); break;
    }
  }
  if (constant != 0) flat.push_back(number(constant));
  if (flat.empty()) return Expr();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  for (const auto& a : flat) n->size += a.size();
  n->args = std::move(flat);
  return Expr(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  std::vector<Expr> flat;
  flat.reserve(factors.size());
  Rational constant = 1;
  for (auto& f : factors) {
    switch (f.kind()) {
      case Kind::Number: constant *= f.value(); break;
      case Kind::Product:
        for (const auto& a : f.args()) {
          if (a.is_number()) constant *= a.value();
          else flat.push_back(a);
        }
        break;
      default: flat.push_back(std::move(f)); break;
    }
    if (constant == 0) return Expr();
  }
  if (flat.empty()) return number(constant);
  if (constant == 1 && flat.size() == 1) return flat.front();
  if (constant != 1) flat.insert(flat.begin(), number(constant));
  auto n = std::make_shared<Node>();
  n->kind = Kind::Product;
  for (const auto& a : flat) n->size += a.size();
  n->args = std::move(flat);
  return Expr(std::move(n));
}

Expr Expr::power(Expr base, long exponent) {
  if (exponent == 0) return number(1);
  if (exponent == 1) return base;
  if (base.is_number()) {
    const Rational& b = base.value();
    if (b == 0) {
      if (exponent < 0) throw Error("division by zero");
      return Expr();
    }
    mpz_class num = b.get_num();
    mpz_class den = b.get_den();
    const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
    mpz_class pn, pd;
    mpz_pow_ui(pn.get_mpz_t(), num.get_mpz_t(), e);
    mpz_pow_ui(pd.get_mpz_t(), den.get_mpz_t(), e);
    Rational out = exponent > 0 ? Rational(pn, pd) : Rational(pd, pn);
    return number(out);
  }
  if (base.kind() == Kind::Power) return power(base.base(), base.exponent() * exponent);
  auto n = std::make_shared<Node>();
  n->kind = Kind::Power;
  n->exponent = exponent;
  n->size = 1 + base.size();
  n->args = {std::move(base)};
  return Expr(std::move(n));
}

Expr Expr::function(Fn fn, Expr argument) {
  if (argument.is_number()) {
    const Rational& a = argument.value();
    if (a == 0) {
      if (fn == Fn::Cos) return number(1);
      return Expr();
    }
    if (a == 1 && fn == Fn::Sqrt) return number(1);
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Function;
  n->fn = fn;
  n->size = 1 + argument.size();
  n->args = {std::move(argument)};
  return Expr(std::move(n));
}

Expr::Kind Expr::kind() const noexcept { return node_->kind; }

const Rational& Expr::value() const {
  if (kind() != Kind::Number) throw Error("expression is not a number");
  return node_->value;
}

const Symbol& Expr::symbol() const {
  if (kind() != Kind::Symbol) throw Error("expression is not a symbol");
  return node_->sym;
}

std::span<const Expr> Expr::args() const noexcept { return node_->args; }

const Expr& Expr::base() const {
  if (kind() != Kind::Power) throw Error("expression is not a power");
  return node_->args.front();
}

long Expr::exponent() const {
  if (kind() != Kind::Power) throw Error("expression is not a power");
  return node_->exponent;
}

Fn Expr::fn() const {
  if (kind() != Kind::Function) throw Error("expression is not a function application");
  return node_->fn;
}

const Expr& Expr::argument() const {
  if (kind() != Kind::Function) throw Error("expression is not a function application");
  return node_->args.front();
}

bool Expr::is_zero() const noexcept { return kind() == Kind::Number && node_->value == 0; }
bool Expr::is_one() const noexcept { return kind() == Kind::Number && node_->value == 1; }
std::size_t Expr::size() const noexcept { return node_->size; }

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator/(const Expr& a, const Expr& b) { return Expr::product({a, Expr::power(b, -1)}); }
Expr operator-(const Expr& a) { return Expr::product({Expr::number(-1), a}); }

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  if (auto c = a.kind() <=> b.kind(); c != 0) return c;
  switch (a.kind()) {
    case Expr::Kind::Number: {
      const int c = cmp(a.value(), b.value());
      return c < 0 ? std::strong_ordering::less
                   : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
    }
    case Expr::Kind::Symbol: return a.symbol() <=> b.symbol();
    case Expr::Kind::Function:
      if (auto c = a.fn() <=> b.fn(); c != 0) return c;
      return a.argument() <=> b.argument();
    case Expr::Kind::Power:
      if (auto c = a.base() <=> b.base(); c != 0) return c;
      return a.exponent() <=> b.exponent();
    case Expr::Kind::Product:
    case Expr::Kind::Sum: {
      const auto aa = a.args();
      const auto bb = b.args();
      const std::size_t n = std::min(aa.size(), bb.size());
      for (std::size_t i = 0; i < n; ++i) {
        if (auto c = aa[i] <=> bb[i]; c != 0) return c;
      }
      return aa.size() <=> bb.size();
    }
  }
  return std::strong_ordering::equal;
}

bool operator==(const Expr& a, const Expr& b) { return (a <=> b) == 0; }

Expr pow(const Expr& base, long exponent) { return Expr::power(base, exponent); }
Expr sin(const Expr& e) { return Expr::function(Fn::Sin, e); }
Expr cos(const Expr& e) { return Expr::function(Fn::Cos, e); }
Expr sqrt(const Expr& e) { return Expr::function(Fn::Sqrt, e); }
Expr arctan(const Expr& e) { return Expr::function(Fn::Arctan, e); }

namespace {

bool is_negative_term(const Expr& t) {
  if (t.is_number()) return t.value() < 0;
  if (t.kind() == Expr::Kind::Product) {
    const auto& lead = t.args().front();
    return lead.is_number() && lead.value() < 0;
  }
  return false;
}

Expr negate_term(const Expr& t) {
  if (t.is_number()) return Expr::number(-t.value());
  std::vector<Expr> f(t.args().begin(), t.args().end());
  f.front() = Expr::number(-f.front().value());
  return Expr::product(std::move(f));
}

bool is_atomic(const Expr& e) {
  return e.kind() == Expr::Kind::Symbol || e.kind() == Expr::Kind::Function ||
         (e.is_number() && e.value() > 0 && is_integer(e.value()));
}

std::string render_impl(const Expr& e);

// Rendering of an operand that follows '/'.
std::string render_divisor(const Expr& positive_power) {
  const auto k = positive_power.kind();
  if (k == Expr::Kind::Sum || k == Expr::Kind::Product ||
      (positive_power.is_number() && !is_atomic(positive_power))) {
    return "(" + render_impl(positive_power) + ")";
  }
  return render_impl(positive_power);
}

std::string render_factor(const Expr& f) {
  if (f.kind() == Expr::Kind::Sum) return "(" + render_impl(f) + ")";
  return render_impl(f);
}

std::string render_product(const Expr& e) {
  const auto args = e.args();
  std::string out;
  std::size_t i = 0;
  bool have_operand = false;
  if (args.front().is_number()) {
    const Rational& c = args.front().value();
    if (c == -1) {
      out = "-";
    } else {
      out = c.get_str();
      have_operand = true;
    }
    i = 1;
  }
  for (; i < args.size(); ++i) {
    const Expr& f = args[i];
    if (f.kind() == Expr::Kind::Power && f.exponent() < 0) {
      if (!have_operand) out += "1";
      out += "/" + render_divisor(Expr::power(f.base(), -f.exponent()));
    } else {
      if (have_operand) out += "*";
      out += render_factor(f);
    }
    have_operand = true;
  }
  return out;
}

std::string render_impl(const Expr& e) {
  switch (e.kind()) {
    case Expr::Kind::Number: return e.value().get_str();
    case Expr::Kind::Symbol: return e.symbol().str();
    case Expr::Kind::Function:
      return std::string(fn_name(e.fn())) + "(" + render_impl(e.argument()) + ")";
    case Expr::Kind::Power: {
      if (e.exponent() < 0) return "1/" + render_divisor(Expr::power(e.base(), -e.exponent()));
      const Expr& b = e.base();
      std::string bs = is_atomic(b) ? render_impl(b) : "(" + render_impl(b) + ")";
      return bs + "^" + std::to_string(e.exponent());
    }
    case Expr::Kind::Product: return render_product(e);
    case Expr::Kind::Sum: {
      std::string out;
      bool first = true;
      for (const auto& t : e.args()) {
        if (first) {
          out = render_impl(t);
          first = false;
        } else if (is_negative_term(t)) {
          const Expr n = negate_term(t);
          out += " - " + (n.kind() == Expr::Kind::Sum ? "(" + render_impl(n) + ")" : render_impl(n));
        } else {
          out += " + " + render_impl(t);
        }
      }
      return out;
    }
  }
  return {};
}

void collect_symbols(const Expr& e, std::set<Symbol>& out) {
  if (e.kind() == Expr::Kind::Symbol) {
    out.insert(e.symbol());
    return;
  }
  for (const auto& a : e.args()) collect_symbols(a, out);
}

}  // namespace

std::string render(const Expr& e) { return render_impl(e); }

std::set<Symbol> symbols_of(const Expr& e) {
  std::set<Symbol> out;
  collect_symbols(e, out);
  return out;
}

bool depends_on(const Expr& e, const Symbol& s) {
  if (e.kind() == Expr::Kind::Symbol) return e.symbol() == s;
  for (const auto& a : e.args()) {
    if (depends_on(a, s)) return true;
  }
  return false;
}

int jet_order(const Expr& e) {
  if (e.kind() == Expr::Kind::Symbol) return e.symbol().is_jet() ? e.symbol().order() : 0;
  int m = 0;
  for (const auto& a : e.args()) m = std::max(m, jet_order(a));
  return m;
}

}  // namespace jetcheck
