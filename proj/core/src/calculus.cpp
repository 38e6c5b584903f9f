#include "jetcheck/calculus.hpp"

#include <functional>
#include <set>

#include "jetcheck/error.hpp"

namespace jetcheck {

Expr partial(const Expr& e, const Symbol& g) {
  switch (e.kind()) {
    case Expr::Kind::Number: return Expr();
    case Expr::Kind::Symbol: return e.symbol() == g ? num(1) : Expr();
    case Expr::Kind::Sum: {
      std::vector<Expr> terms;
      for (const auto& t : e.args()) {
        if (depends_on(t, g)) terms.push_back(partial(t, g));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Product: {
      const auto f = e.args();
      std::vector<Expr> terms;
      for (std::size_t i = 0; i < f.size(); ++i) {
        if (!depends_on(f[i], g)) continue;
        std::vector<Expr> factors(f.begin(), f.end());
        factors[i] = partial(f[i], g);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Expr::Kind::Power: {
      if (!depends_on(e.base(), g)) return Expr();
      const long n = e.exponent();
      return Expr::product({num(n), pow(e.base(), n - 1), partial(e.base(), g)});
    }
    case Expr::Kind::Function: {
      const Expr& a = e.argument();
      if (!depends_on(a, g)) return Expr();
      const Expr da = partial(a, g);
      switch (e.fn()) {
        case Fn::Sin: return cos(a) * da;
        case Fn::Cos: return -(sin(a) * da);
        case Fn::Sqrt: return Expr::product({num(1, 2), da, pow(e, -1)});
        case Fn::Arctan: return da * pow(num(1) + pow(a, 2), -1);
      }
    }
  }
  return Expr();
}

namespace {

void check_acyclic(const Bindings& bindings) {
  std::map<Symbol, std::vector<Symbol>> edges;
  for (const auto& [k, v] : bindings) {
    for (const auto& s : symbols_of(v)) {
      if (bindings.count(s)) edges[k].push_back(s);
    }
  }
  enum class Mark { None, Active, Done };
  std::map<Symbol, Mark> mark;
  std::function<void(const Symbol&)> visit = [&](const Symbol& s) {
    auto& m = mark[s];
    if (m == Mark::Done) return;
    if (m == Mark::Active) throw CyclicBindingError("cyclic binding through " + s.str());
    m = Mark::Active;
    for (const auto& next : edges[s]) visit(next);
    mark[s] = Mark::Done;
  };
  for (const auto& [k, v] : bindings) visit(k);
}

Expr substitute_impl(const Expr& e, const Bindings& bindings) {
  switch (e.kind()) {
    case Expr::Kind::Number: return e;
    case Expr::Kind::Symbol: {
      auto it = bindings.find(e.symbol());
      return it == bindings.end() ? e : it->second;
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Product: {
      std::vector<Expr> args;
      args.reserve(e.args().size());
      for (const auto& a : e.args()) args.push_back(substitute_impl(a, bindings));
      return e.kind() == Expr::Kind::Sum ? Expr::sum(std::move(args)) : Expr::product(std::move(args));
    }
    case Expr::Kind::Power: return pow(substitute_impl(e.base(), bindings), e.exponent());
    case Expr::Kind::Function: return Expr::function(e.fn(), substitute_impl(e.argument(), bindings));
  }
  return e;
}

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
  if (bindings.empty()) return e;
  check_acyclic(bindings);
  return substitute_impl(e, bindings);
}

}  // namespace jetcheck
