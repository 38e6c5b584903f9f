#include "jetcheck/system.hpp"

#include <algorithm>

#include "jetcheck/error.hpp"
#include "jetcheck/jet.hpp"
#include "jetcheck/normal_form.hpp"

namespace jetcheck {

PDESystem::PDESystem(Context ctx, std::vector<Expr> equations, Bindings evolution)
    : ctx_(std::move(ctx)), equations_(std::move(equations)), evolution_(std::move(evolution)) {
  if (ctx_.independents().size() != 2) throw ConfigError("system needs exactly two independent variables");
  if (ctx_.dependents().size() != 2) throw ConfigError("system needs exactly two dependent variables");
  if (equations_.size() != ctx_.dependents().size()) {
    throw ConfigError("expected one equation per dependent variable");
  }
  const char t = time_letter();
  for (const auto& d : ctx_.dependents()) {
    if (!evolution_.count(dependent(d, std::string(1, t)))) {
      throw ConfigError("missing evolution law for " + d + "_" + std::string(1, t));
    }
  }
  for (const auto& [lhs, rhs] : evolution_) {
    if (!lhs.is_jet() || lhs.derivs != std::string(1, t)) {
      throw ConfigError("evolution keys must be first time derivatives, got " + lhs.str());
    }
    for (const auto& s : symbols_of(rhs)) {
      if (s.is_jet() && s.order_in(t) > 0) {
        throw ConfigError("evolution law for " + lhs.str() + " contains time derivative " + s.str());
      }
    }
  }
  for (std::size_t i = 0; i < equations_.size(); ++i) {
    if (!is_identically_zero(substitute(equations_[i], evolution_))) {
      throw ConfigError("equation " + std::to_string(i + 1) + " does not vanish under the evolution laws");
    }
  }
}

namespace {

class OnShell {
 public:
  explicit OnShell(const PDESystem& sys) : sys_(sys), t_(sys.time_letter()) {}

  Expr reduce(const Expr& e) {
    Bindings b;
    for (const auto& s : symbols_of(e)) {
      if (s.is_jet() && s.order_in(t_) > 0) b.emplace(s, value_of(s));
    }
    return simplify_if_possible(substitute(e, b));
  }

 private:
  // Value of a jet variable with at least one time derivative, free of
  // time derivatives.
  Expr value_of(const Symbol& s) {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const int m = s.order_in(t_);
    std::string rest;
    for (char c : s.derivs) {
      if (c != t_) rest.push_back(c);
    }
    Expr out;
    const Expr& law = sys_.evolution().at(dependent(s.name, std::string(1, t_)));
    if (m == 1) {
      out = total_derivative_multi(law, rest, sys_.context());
    } else {
      Symbol lower = s;
      lower.derivs.erase(lower.derivs.find(t_), 1);
      out = reduce(total_derivative(value_of(lower), sys_.time(), sys_.context()));
    }
    out = simplify_if_possible(out);
    memo_.emplace(s, out);
    return out;
  }

  const PDESystem& sys_;
  char t_;
  std::map<Symbol, Expr> memo_;
};

}  // namespace

Expr on_shell_reduce(const Expr& e, const PDESystem& sys) { return OnShell(sys).reduce(e); }

}  // namespace jetcheck
