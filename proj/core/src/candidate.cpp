#include "jetcheck/candidate.hpp"

namespace jetcheck {

std::string render_constraints(const std::map<std::string, Rational>& constraints) {
  std::string out;
  for (const auto& [name, value] : constraints) {
    if (!out.empty()) out += ", ";
    out += name + "=" + value.get_str();
  }
  return out;
}

}  // namespace jetcheck
