#include "jetcheck/evaluate.hpp"

#include <algorithm>
#include <cmath>

#include "jetcheck/error.hpp"

namespace jetcheck {
namespace {

double checked(double v, const Expr& e) {
  if (!std::isfinite(v)) throw EvalError("non-finite value while evaluating " + render(e));
  return v;
}

double eval_impl(const Expr& e, const NumericPoint& point) {
  switch (e.kind()) {
    case Expr::Kind::Number: return e.value().get_d();
    case Expr::Kind::Symbol: {
      auto it = point.find(e.symbol());
      if (it == point.end()) throw EvalError("unbound generator " + e.symbol().str());
      if (!std::isfinite(it->second)) throw EvalError("non-finite binding for " + e.symbol().str());
      return it->second;
    }
    case Expr::Kind::Sum: {
      double acc = 0.0;
      for (const auto& t : e.args()) acc += eval_impl(t, point);
      return acc;
    }
    case Expr::Kind::Product: {
      double acc = 1.0;
      for (const auto& f : e.args()) acc *= eval_impl(f, point);
      return acc;
    }
    case Expr::Kind::Power: {
      const double b = eval_impl(e.base(), point);
      if (b == 0.0 && e.exponent() < 0) throw EvalError("division by zero in " + render(e));
      return checked(std::pow(b, static_cast<double>(e.exponent())), e);
    }
    case Expr::Kind::Function: {
      const double a = eval_impl(e.argument(), point);
      switch (e.fn()) {
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Sqrt:
          if (a < 0.0) throw EvalError("sqrt of negative value " + std::to_string(a) + " in " + render(e));
          return std::sqrt(a);
        case Fn::Arctan: return std::atan(a);
      }
    }
  }
  return 0.0;
}

}  // namespace

double eval_numeric(const Expr& e, const NumericPoint& point) { return checked(eval_impl(e, point), e); }

CompiledExpr::CompiledExpr(const Expr& e, const std::vector<Symbol>& slots) { root_ = build(e, slots); }

int CompiledExpr::build(const Expr& e, const std::vector<Symbol>& slots) {
  Node n{e.kind()};
  switch (e.kind()) {
    case Expr::Kind::Number: n.value = e.value().get_d(); break;
    case Expr::Kind::Symbol: {
      const auto it = std::find(slots.begin(), slots.end(), e.symbol());
      if (it == slots.end()) throw EvalError("unbound generator " + e.symbol().str());
      n.slot = static_cast<int>(it - slots.begin());
      break;
    }
    case Expr::Kind::Sum:
    case Expr::Kind::Product:
      for (const auto& a : e.args()) n.children.push_back(build(a, slots));
      break;
    case Expr::Kind::Power:
      n.exponent = e.exponent();
      n.children.push_back(build(e.base(), slots));
      break;
    case Expr::Kind::Function:
      n.fn = e.fn();
      n.children.push_back(build(e.argument(), slots));
      break;
  }
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

double CompiledExpr::eval(int node, std::span<const double> values) const {
  const Node& n = nodes_[static_cast<std::size_t>(node)];
  switch (n.kind) {
    case Expr::Kind::Number: return n.value;
    case Expr::Kind::Symbol: return values[static_cast<std::size_t>(n.slot)];
    case Expr::Kind::Sum: {
      double acc = 0.0;
      for (int c : n.children) acc += eval(c, values);
      return acc;
    }
    case Expr::Kind::Product: {
      double acc = 1.0;
      for (int c : n.children) acc *= eval(c, values);
      return acc;
    }
    case Expr::Kind::Power: {
      const double b = eval(n.children[0], values);
      long k = n.exponent < 0 ? -n.exponent : n.exponent;
      double acc = 1.0;
      for (double f = b; k > 0; k >>= 1, f *= f) {
        if (k & 1) acc *= f;
      }
      return n.exponent < 0 ? 1.0 / acc : acc;
    }
    case Expr::Kind::Function: {
      const double a = eval(n.children[0], values);
      switch (n.fn) {
        case Fn::Sin: return std::sin(a);
        case Fn::Cos: return std::cos(a);
        case Fn::Sqrt: return std::sqrt(a);
        case Fn::Arctan: return std::atan(a);
      }
    }
  }
  return 0.0;
}

}  // namespace jetcheck
