#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace jetcheck {

enum class SymbolKind { Parameter, Independent, Dependent };

/// A generator of the jet space: a parameter, an independent variable, or a
/// dependent variable together with a multiset of derivative letters.
/// `derivs` is kept sorted, so u_xt and u_tx are the same symbol.
struct Symbol {
  SymbolKind kind = SymbolKind::Parameter;
  std::string name;
  std::string derivs;

  [[nodiscard]] int order() const noexcept { return static_cast<int>(derivs.size()); }
  [[nodiscard]] int order_in(char independent) const noexcept;
  [[nodiscard]] std::map<char, int> orders() const;
  [[nodiscard]] bool is_jet() const noexcept { return kind == SymbolKind::Dependent; }

  /// The same dependent variable with one more derivative in `independent`.
  [[nodiscard]] Symbol differentiated(char independent) const;
  /// The underlying dependent variable (derivs cleared).
  [[nodiscard]] Symbol base() const;
  /// Rendering in the expression grammar: `beta`, `x`, `u`, `u_tx`.
  [[nodiscard]] std::string str() const;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend std::strong_ordering operator<=>(const Symbol& a, const Symbol& b);
};

[[nodiscard]] Symbol parameter(std::string name);
[[nodiscard]] Symbol independent(std::string name);
[[nodiscard]] Symbol dependent(std::string name, std::string derivs = {});

/// The declared names of a problem: which identifiers are independent
/// variables, dependent variables and parameters, plus the maximum jet order.
class Context {
 public:
  static constexpr int kDefaultMaxOrder = 4;

  Context() = default;
  Context(std::vector<std::string> independents, std::vector<std::string> dependents,
          std::vector<std::string> parameters, int max_order = kDefaultMaxOrder);

  [[nodiscard]] const std::vector<std::string>& independents() const noexcept { return independents_; }
  [[nodiscard]] const std::vector<std::string>& dependents() const noexcept { return dependents_; }
  [[nodiscard]] const std::vector<std::string>& parameters() const noexcept { return parameters_; }
  [[nodiscard]] int max_order() const noexcept { return max_order_; }

  [[nodiscard]] std::optional<SymbolKind> kind_of(std::string_view name) const;
  [[nodiscard]] bool is_independent_letter(char c) const;

  void add_independent(std::string name);
  void add_dependent(std::string name);
  void add_parameter(std::string name);

  /// A copy with a different jet-order ceiling.
  [[nodiscard]] Context with_max_order(int max_order) const;
  /// A copy extended with every name declared in `other` that is missing here.
  [[nodiscard]] Context merged(const Context& other) const;

  /// Builds the jet variable `dep_derivs`, sorting the suffix and checking
  /// both the declared letters and the order ceiling.
  [[nodiscard]] Symbol jet(std::string_view dep, std::string_view derivs = {}) const;
  [[nodiscard]] Symbol symbol(std::string_view name) const;

 private:
  void check_fresh(const std::string& name) const;

  std::vector<std::string> independents_;
  std::vector<std::string> dependents_;
  std::vector<std::string> parameters_;
  int max_order_ = kDefaultMaxOrder;
};

}  // namespace jetcheck
