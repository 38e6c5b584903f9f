#pragma once

#include <random>
#include <string>
#include <vector>

#include "jetcheck/expr.hpp"
#include "jetcheck/parser.hpp"
#include "jetcheck/problem.hpp"
#include "jetcheck/symbol.hpp"

namespace testing {

using namespace jetcheck;

inline Context nlse_context(int max_order = Context::kDefaultMaxOrder) {
  return Context({"t", "x"}, {"u", "v"}, {"beta", "gamma", "delta"}, max_order);
}

inline Expr P(const Context& ctx, const std::string& text) { return parse(text, ctx); }

inline const Problem& shipped_problem() {
  static const Problem p = load_problem(JETCHECK_DATA_FILE);
  return p;
}

inline const Problem& printed_problem() {
  static const Problem p = load_problem(JETCHECK_DATA_FILE, true);
  return p;
}

/// Random polynomial in jets of order <= max_jet, parameters and x, t.
class ExprGen {
 public:
  ExprGen(const Context& ctx, std::uint64_t seed, int max_jet) : ctx_(ctx), rng_(seed), max_jet_(max_jet) {}

  Symbol jet() {
    const auto& deps = ctx_.dependents();
    std::string d = deps[pick(deps.size())];
    std::string suffix;
    const int order = static_cast<int>(pick(static_cast<std::size_t>(max_jet_) + 1));
    for (int i = 0; i < order; ++i) suffix += ctx_.independents()[pick(ctx_.independents().size())];
    return ctx_.jet(d, suffix);
  }

  Expr factor() {
    switch (pick(6)) {
      case 0:
        return sym(parameter(ctx_.parameters()[pick(ctx_.parameters().size())]));
      case 1:
        return sym(independent(ctx_.independents()[pick(ctx_.independents().size())]));
      default:
        return sym(jet());
    }
  }

  Expr polynomial(int terms = 3, int max_factors = 3) {
    std::vector<Expr> out;
    for (int i = 0; i < terms; ++i) {
      std::vector<Expr> fs{num(static_cast<long>(pick(7)) - 3, static_cast<long>(pick(3)) + 1)};
      const int n = 1 + static_cast<int>(pick(static_cast<std::size_t>(max_factors)));
      for (int k = 0; k < n; ++k) fs.push_back(factor());
      out.push_back(Expr::product(fs));
    }
    return Expr::sum(out);
  }

  /// Polynomials decorated with powers, quotients by monomials and trig.
  Expr general(int depth = 2) {
    if (depth == 0) return pick(2) ? factor() : num(static_cast<long>(pick(9)) - 4, static_cast<long>(pick(4)) + 1);
    switch (pick(6)) {
      case 0:
        return general(depth - 1) + general(depth - 1);
      case 1:
        return general(depth - 1) * general(depth - 1);
      case 2:
        return pow(general(depth - 1), static_cast<long>(pick(3)) + 1);
      case 3:
        return sin(general(depth - 1));
      case 4:
        return cos(general(depth - 1)) - general(depth - 1);
      default:
        return general(depth - 1) / factor();
    }
  }

  std::mt19937_64& rng() { return rng_; }

 private:
  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  Context ctx_;
  std::mt19937_64 rng_;
  int max_jet_;
};

}  // namespace testing
