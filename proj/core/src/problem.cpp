#include "jetcheck/problem.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>

#include "jetcheck/error.hpp"
#include "jetcheck/parser.hpp"

namespace jetcheck {
namespace {

const std::vector<std::string> kSections{"params",  "independents", "dependents", "equations", "evolution",
                                         "multipliers", "conserved", "symmetries", "candidates", "printed"};

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

struct Entry {
  std::string name;
  std::string value;
  std::size_t line = 0;
  std::size_t value_column = 0;
  bool has_value = false;
};

struct RawFile {
  std::map<std::string, std::vector<Entry>> sections;
};

bool valid_entry_name(std::string_view n) {
  if (n.empty()) return false;
  return std::all_of(n.begin(), n.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '-';
  });
}

RawFile split(std::string_view text) {
  RawFile raw;
  std::string current;
  std::size_t line_no = 0;
  std::size_t start = 0;
  bool any_content = false;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const std::string t = trim(line);
    if (t.empty()) {
      if (end == text.size()) break;
      continue;
    }
    any_content = true;
    if (t.front() == '[') {
      if (t.back() != ']') throw ParseError("malformed section header", 0, line_no);
      current = trim(std::string_view(t).substr(1, t.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), current) == kSections.end()) {
        throw ParseError("unknown section [" + current + "]", 0, line_no);
      }
      raw.sections[current];
      continue;
    }
    if (current.empty()) throw ParseError("entry outside of any section", 0, line_no);
    Entry entry;
    entry.line = line_no;
    if (current == "candidates") {
      entry.value = t;
      entry.has_value = true;
      entry.value_column = static_cast<std::size_t>(line.find(t.front()));
    } else if (auto eq = line.find('='); eq != std::string_view::npos) {
      entry.name = trim(line.substr(0, eq));
      entry.value = std::string(line.substr(eq + 1));
      entry.value_column = eq + 1;
      entry.has_value = true;
    } else {
      entry.name = t;
    }
    if (current != "candidates" && !valid_entry_name(entry.name)) {
      throw ParseError("invalid entry name '" + entry.name + "'", 0, line_no);
    }
    raw.sections[current].push_back(std::move(entry));
    if (end == text.size()) break;
  }
  if (!any_content) throw ParseError("empty problem file", 0, 1);
  return raw;
}

Expr parse_entry(const Entry& e, const Context& ctx) {
  if (!e.has_value) throw ParseError("entry '" + e.name + "' needs '= expression'", 0, e.line);
  try {
    return parse(e.value, ctx);
  } catch (const UnknownIdentifierError& err) {
    throw UnknownIdentifierError(err.detail(), e.value_column + err.position(), e.line);
  } catch (const ParseError& err) {
    throw ParseError(err.detail(), e.value_column + err.position(), e.line);
  }
}

Rational parse_rational_literal(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  try {
    Rational q(t);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw ParseError("expected a rational literal, got '" + t + "'", 0, line);
  }
}

std::pair<std::string, std::string> split_component(const Entry& e) {
  const auto dot = e.name.rfind('.');
  if (dot == std::string::npos || dot == 0 || dot + 1 == e.name.size()) {
    throw ParseError("expected 'label.component', got '" + e.name + "'", 0, e.line);
  }
  return {e.name.substr(0, dot), e.name.substr(dot + 1)};
}

// Groups label.component entries preserving first-appearance order.
std::vector<std::pair<std::string, std::map<std::string, const Entry*>>> group(const std::vector<Entry>& entries) {
  std::vector<std::pair<std::string, std::map<std::string, const Entry*>>> out;
  for (const auto& e : entries) {
    auto [label, comp] = split_component(e);
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& p) { return p.first == label; });
    if (it == out.end()) {
      out.emplace_back(label, std::map<std::string, const Entry*>{});
      it = std::prev(out.end());
    }
    if (!it->second.emplace(comp, &e).second) {
      throw ParseError("duplicate entry '" + e.name + "'", 0, e.line);
    }
  }
  return out;
}

void apply_printed(RawFile& raw) {
  auto it = raw.sections.find("printed");
  if (it == raw.sections.end()) return;
  for (const auto& p : it->second) {
    bool found = false;
    for (auto& [name, entries] : raw.sections) {
      if (name == "printed" || name == "candidates") continue;
      for (auto& e : entries) {
        if (e.name == p.name) {
          e.value = p.value;
          e.value_column = p.value_column;
          e.line = p.line;
          e.has_value = p.has_value;
          found = true;
        }
      }
    }
    if (!found) throw ParseError("printed override '" + p.name + "' matches no entry", 0, p.line);
  }
}

}  // namespace

std::map<std::string, double> Problem::numeric_parameters() const {
  std::map<std::string, double> out;
  for (const auto& [k, v] : parameter_values) out.emplace(k, v.get_d());
  return out;
}

SolutionCandidate parse_candidate(std::string_view line, const Context& ctx) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t colon = line.find(':', start);
    fields.push_back(trim(line.substr(start, colon == std::string_view::npos ? std::string_view::npos : colon - start)));
    if (colon == std::string_view::npos) break;
    start = colon + 1;
  }
  if (fields.size() < 4 || fields.size() > 5) {
    throw ParseError("candidate needs 'label : constraints : u = expr : v = expr [: suspect]'", 0);
  }
  SolutionCandidate c;
  c.label = fields[0];
  if (c.label.empty()) throw ParseError("candidate label is empty", 0);
  std::stringstream cs(fields[1]);
  std::string item;
  while (std::getline(cs, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ParseError("constraint must be 'name=value': " + item, 0);
    const std::string name = trim(std::string_view(item).substr(0, eq));
    if (ctx.kind_of(name) != SymbolKind::Parameter) {
      throw UnknownIdentifierError("constraint on undeclared parameter '" + name + "'", 0);
    }
    Rational q(trim(std::string_view(item).substr(eq + 1)));
    q.canonicalize();
    c.constraints[name] = q;
  }
  auto rhs = [&](const std::string& field, const std::string& var) {
    const auto eq = field.find('=');
    if (eq == std::string::npos || trim(std::string_view(field).substr(0, eq)) != var) {
      throw ParseError("expected '" + var + " = expression' in candidate " + c.label, 0);
    }
    return parse(std::string_view(field).substr(eq + 1), ctx);
  };
  c.u_expr = rhs(fields[2], ctx.dependents().at(0));
  c.v_expr = rhs(fields[3], ctx.dependents().at(1));
  if (fields.size() == 5) {
    if (fields[4] != "suspect") throw ParseError("unknown candidate flag '" + fields[4] + "'", 0);
    c.suspect = true;
  }
  c.q_form = "(" + render(c.u_expr) + ") + i*(" + render(c.v_expr) + ")";
  return c;
}

Problem parse_problem(std::string_view text, bool printed_variants) {
  RawFile raw = split(text);
  if (printed_variants) apply_printed(raw);
  auto section = [&](const std::string& name) -> const std::vector<Entry>& {
    static const std::vector<Entry> empty;
    auto it = raw.sections.find(name);
    return it == raw.sections.end() ? empty : it->second;
  };

  Context ctx;
  std::map<std::string, Rational> values;
  try {
    for (const auto& e : section("independents")) ctx.add_independent(e.name);
    for (const auto& e : section("dependents")) ctx.add_dependent(e.name);
    for (const auto& e : section("params")) {
      ctx.add_parameter(e.name);
      if (e.has_value) values[e.name] = parse_rational_literal(e.value, e.line);
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& err) {
    throw ParseError(err.what(), 0, 1);
  }
  if (ctx.independents().size() != 2) throw ParseError("[independents] must declare time and space", 0, 1);
  if (ctx.dependents().size() != 2) throw ParseError("[dependents] must declare two variables", 0, 1);

  std::vector<Expr> equations;
  for (const auto& e : section("equations")) equations.push_back(parse_entry(e, ctx));

  Bindings evolution;
  for (const auto& e : section("evolution")) {
    Expr lhs;
    try {
      lhs = parse(e.name, ctx);
    } catch (const ParseError& err) {
      throw ParseError(err.detail(), err.position(), e.line);
    }
    if (lhs.kind() != Expr::Kind::Symbol || !lhs.symbol().is_jet()) {
      throw ParseError("evolution entry must be a jet variable, got '" + e.name + "'", 0, e.line);
    }
    evolution.emplace(lhs.symbol(), parse_entry(e, ctx));
  }

  std::optional<PDESystem> system;
  try {
    system.emplace(ctx, equations, evolution);
  } catch (const ConfigError& err) {
    throw ParseError(err.what(), 0, section("equations").empty() ? 1 : section("equations").front().line);
  }

  Problem p{ctx, values, *system, {}, {}, {}, {}, {}, printed_variants};

  for (const auto& [label, comps] : group(section("multipliers"))) {
    for (const char* need : {"q1", "q2"}) {
      if (!comps.count(need)) throw ParseError("multiplier " + label + " lacks " + need, 0, comps.begin()->second->line);
    }
    for (const auto& [k, e] : comps) {
      if (k != "q1" && k != "q2") throw ParseError("unknown multiplier component '" + k + "'", 0, e->line);
    }
    MultiplierPair m{label, parse_entry(*comps.at("q1"), ctx), parse_entry(*comps.at("q2"), ctx)};
    if (std::max(jet_order(m.q1), jet_order(m.q2)) > 1) {
      p.warnings.push_back("multiplier " + label + " has jet order above 1");
    }
    p.multipliers.push_back(std::move(m));
  }

  const std::string t = ctx.independents()[0];
  const std::string x = ctx.independents()[1];
  for (const auto& [label, comps] : group(section("conserved"))) {
    for (const auto& need : {t, x}) {
      if (!comps.count(need)) throw ParseError("conserved vector " + label + " lacks component " + need, 0, comps.begin()->second->line);
    }
    for (const auto& [k, e] : comps) {
      if (k != t && k != x) throw ParseError("unknown conserved-vector component '" + k + "'", 0, e->line);
    }
    ConservedVector cv{label, parse_entry(*comps.at(t), ctx), parse_entry(*comps.at(x), ctx)};
    if (std::max(jet_order(cv.density), jet_order(cv.flux)) > 2) {
      p.warnings.push_back("conserved vector " + label + " has jet order above 2");
    }
    p.conserved.push_back(std::move(cv));
  }
  if (!p.conserved.empty() && p.conserved.size() != p.multipliers.size()) {
    throw ParseError("each conserved vector needs a matching multiplier pair", 0, 1);
  }

  const std::string u = ctx.dependents()[0];
  const std::string v = ctx.dependents()[1];
  for (const auto& [label, comps] : group(section("symmetries"))) {
    VectorField X{label, {}, {}, {}, {}};
    for (const auto& [k, e] : comps) {
      Expr value = parse_entry(*e, ctx);
      if (k == t) X.xi_t = value;
      else if (k == x) X.xi_x = value;
      else if (k == u) X.eta_u = value;
      else if (k == v) X.eta_v = value;
      else throw ParseError("unknown vector-field component '" + k + "'", 0, e->line);
    }
    if (!X.is_point_symmetry()) p.warnings.push_back("vector field " + label + " depends on derivatives");
    p.symmetries.push_back(std::move(X));
  }

  for (const auto& e : section("candidates")) {
    try {
      p.candidates.push_back(parse_candidate(e.value, ctx));
    } catch (const UnknownIdentifierError& err) {
      throw UnknownIdentifierError(err.detail(), e.value_column + err.position(), e.line);
    } catch (const ParseError& err) {
      throw ParseError(err.detail(), e.value_column + err.position(), e.line);
    }
  }
  return p;
}

Problem load_problem(const std::filesystem::path& path, bool printed_variants) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open problem file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_problem(ss.str(), printed_variants);
}

}  // namespace jetcheck
