#include "jetcheck/symbol.hpp"

#include <algorithm>

#include "jetcheck/error.hpp"

namespace jetcheck {

ParseError::ParseError(const std::string& message, std::size_t position, std::size_t line)
    : Error(line > 0 ? "line " + std::to_string(line) + ", column " + std::to_string(position + 1) +
                           ": " + message
                     : "at position " + std::to_string(position) + ": " + message),
      detail_(message),
      position_(position),
      line_(line) {}

int Symbol::order_in(char independent) const noexcept {
  return static_cast<int>(std::count(derivs.begin(), derivs.end(), independent));
}

std::map<char, int> Symbol::orders() const {
  std::map<char, int> out;
  for (char c : derivs) ++out[c];
  return out;
}

Symbol Symbol::differentiated(char independent) const {
  if (kind != SymbolKind::Dependent) throw Error("cannot take a jet derivative of " + str());
  Symbol out = *this;
  out.derivs.insert(std::upper_bound(out.derivs.begin(), out.derivs.end(), independent), independent);
  return out;
}

Symbol Symbol::base() const {
  Symbol out = *this;
  out.derivs.clear();
  return out;
}

std::string Symbol::str() const { return derivs.empty() ? name : name + "_" + derivs; }

std::strong_ordering operator<=>(const Symbol& a, const Symbol& b) {
  if (auto c = a.kind <=> b.kind; c != 0) return c;
  if (auto c = a.name <=> b.name; c != 0) return c;
  if (auto c = a.derivs.size() <=> b.derivs.size(); c != 0) return c;
  return a.derivs <=> b.derivs;
}

Symbol parameter(std::string name) { return {SymbolKind::Parameter, std::move(name), {}}; }
Symbol independent(std::string name) { return {SymbolKind::Independent, std::move(name), {}}; }
Symbol dependent(std::string name, std::string derivs) {
  std::sort(derivs.begin(), derivs.end());
  return {SymbolKind::Dependent, std::move(name), std::move(derivs)};
}

Context::Context(std::vector<std::string> independents, std::vector<std::string> dependents,
                 std::vector<std::string> parameters, int max_order)
    : max_order_(max_order) {
  for (auto& n : independents) add_independent(std::move(n));
  for (auto& n : dependents) add_dependent(std::move(n));
  for (auto& n : parameters) add_parameter(std::move(n));
}

void Context::check_fresh(const std::string& name) const {
  if (kind_of(name)) throw Error("name declared twice: " + name);
  if (name.empty() || name[0] < 'a' || name[0] > 'z') throw Error("invalid identifier: " + name);
  for (char c : name) {
    if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9'))) throw Error("invalid identifier: " + name);
  }
}

void Context::add_independent(std::string name) {
  check_fresh(name);
  if (name.size() != 1) throw Error("independent variables must be single letters: " + name);
  independents_.push_back(std::move(name));
}

void Context::add_dependent(std::string name) {
  check_fresh(name);
  dependents_.push_back(std::move(name));
}

void Context::add_parameter(std::string name) {
  check_fresh(name);
  parameters_.push_back(std::move(name));
}

std::optional<SymbolKind> Context::kind_of(std::string_view name) const {
  auto has = [&](const std::vector<std::string>& v) {
    return std::find(v.begin(), v.end(), name) != v.end();
  };
  if (has(independents_)) return SymbolKind::Independent;
  if (has(dependents_)) return SymbolKind::Dependent;
  if (has(parameters_)) return SymbolKind::Parameter;
  return std::nullopt;
}

bool Context::is_independent_letter(char c) const {
  return std::any_of(independents_.begin(), independents_.end(),
                     [c](const std::string& n) { return n.size() == 1 && n[0] == c; });
}

Context Context::with_max_order(int max_order) const {
  Context out = *this;
  out.max_order_ = max_order;
  return out;
}

Context Context::merged(const Context& other) const {
  Context out = *this;
  for (const auto& n : other.independents_) if (!out.kind_of(n)) out.add_independent(n);
  for (const auto& n : other.dependents_) if (!out.kind_of(n)) out.add_dependent(n);
  for (const auto& n : other.parameters_) if (!out.kind_of(n)) out.add_parameter(n);
  out.max_order_ = std::max(max_order_, other.max_order_);
  return out;
}

Symbol Context::jet(std::string_view dep, std::string_view derivs) const {
  if (kind_of(dep) != SymbolKind::Dependent) throw Error("not a dependent variable: " + std::string(dep));
  for (char c : derivs) {
    if (!is_independent_letter(c)) {
      throw Error(std::string("'") + c + "' is not a declared independent variable");
    }
  }
  if (static_cast<int>(derivs.size()) > max_order_) {
    throw JetOrderOverflowError("jet order " + std::to_string(derivs.size()) + " of " + std::string(dep) +
                                "_" + std::string(derivs) + " exceeds maximum " + std::to_string(max_order_));
  }
  return dependent(std::string(dep), std::string(derivs));
}

Symbol Context::symbol(std::string_view name) const {
  auto kind = kind_of(name);
  if (!kind) throw Error("unknown identifier: " + std::string(name));
  return {*kind, std::string(name), {}};
}

}  // namespace jetcheck
