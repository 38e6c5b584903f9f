#include "jetcheck/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>

#include "jetcheck/error.hpp"
#include "jetcheck/reduction.hpp"

namespace jetcheck {

namespace {

bool all_finite(const FieldState& s) {
  auto finite = [](double d) { return std::isfinite(d); };
  return std::all_of(s.u.begin(), s.u.end(), finite) && std::all_of(s.v.begin(), s.v.end(), finite);
}

void check_finite(const FieldState& s, long step) {
  if (!all_finite(s)) {
    throw BlowupError("integration blew up at step " + std::to_string(step) + " (t = " + std::to_string(s.time) +
                          "); reduce dt",
                      step, s.time);
  }
}

void check_size(const FieldState& s, const Grid& grid) {
  const auto n = static_cast<std::size_t>(grid.size());
  if (s.u.size() != n || s.v.size() != n) throw ConfigError("field length does not match the grid");
}

// s + h * (du, dv)
FieldState axpy(const FieldState& s, double h, const std::pair<std::vector<double>, std::vector<double>>& d) {
  FieldState out = s;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    out.u[i] += h * d.first[i];
    out.v[i] += h * d.second[i];
  }
  return out;
}

}  // namespace

Grid::Grid(double L, int N) : L_(L), N_(N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw ConfigError("domain length must be positive");
  if (N < 16 || (N & (N - 1)) != 0) throw ConfigError("N must be >= 16 and a power of two");
}

NlseParams NlseParams::from(const std::map<std::string, double>& values) {
  NlseParams p;
  if (auto it = values.find("beta"); it != values.end()) p.beta = it->second;
  if (auto it = values.find("gamma"); it != values.end()) p.gamma = it->second;
  if (auto it = values.find("delta"); it != values.end()) p.delta = it->second;
  return p;
}

std::vector<double> spatial_derivative(std::span<const double> f, const Grid& grid, int order) {
  const int n = static_cast<int>(f.size());
  if (n < 8) throw ConfigError("spatial_derivative needs at least 8 points");
  if (order != 1 && order != 2) throw ConfigError("derivative order must be 1 or 2");
  const double dx = grid.dx();
  std::vector<double> out(f.size());
  auto at = [&](int i) { return f[static_cast<std::size_t>((i % n + n) % n)]; };
  for (int i = 0; i < n; ++i) {
    const double fm2 = at(i - 2), fm1 = at(i - 1), f0 = at(i), fp1 = at(i + 1), fp2 = at(i + 2);
    out[static_cast<std::size_t>(i)] = order == 1 ? (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * dx)
                                                  : (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * dx * dx);
  }
  return out;
}

std::pair<std::vector<double>, std::vector<double>> rhs(const FieldState& s, const Grid& grid, const NlseParams& p) {
  check_size(s, grid);
  const auto ux = spatial_derivative(s.u, grid, 1);
  const auto vx = spatial_derivative(s.v, grid, 1);
  const auto uxx = spatial_derivative(s.u, grid, 2);
  const auto vxx = spatial_derivative(s.v, grid, 2);
  std::vector<double> du(s.u.size()), dv(s.u.size());
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    const double R = s.u[i] * s.u[i] + s.v[i] * s.v[i];
    du[i] = -p.beta * ux[i] + p.gamma * vxx[i] - p.delta * s.v[i] * R;
    dv[i] = -p.beta * vx[i] - p.gamma * uxx[i] + p.delta * s.u[i] * R;
  }
  return {std::move(du), std::move(dv)};
}

FieldState step_rk4(const FieldState& s, const Grid& grid, const NlseParams& p, double dt, long step) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const auto k1 = rhs(s, grid, p);
  const auto k2 = rhs(axpy(s, dt / 2, k1), grid, p);
  const auto k3 = rhs(axpy(s, dt / 2, k2), grid, p);
  const auto k4 = rhs(axpy(s, dt, k3), grid, p);
  FieldState out = s;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    out.u[i] += dt / 6 * (k1.first[i] + 2 * k2.first[i] + 2 * k3.first[i] + k4.first[i]);
    out.v[i] += dt / 6 * (k1.second[i] + 2 * k2.second[i] + 2 * k3.second[i] + k4.second[i]);
  }
  out.time = s.time + dt;
  check_finite(out, step);
  return out;
}

std::pair<double, double> difference_symbols(const Grid& grid, double k) {
  const double dx = grid.dx();
  const double th = k * dx;
  return {(8.0 * std::sin(th) - std::sin(2 * th)) / (6.0 * dx),
          (30.0 - 32.0 * std::cos(th) + 2.0 * std::cos(2 * th)) / (12.0 * dx * dx)};
}

double discrete_frequency(const Grid& grid, const NlseParams& p, double a, double k) {
  const auto [s1, s2] = difference_symbols(grid, k);
  return p.beta * s1 - p.gamma * s2 - p.delta * a * a;
}

double continuum_frequency(const NlseParams& p, double a, double k) {
  return p.beta * k - p.gamma * k * k - p.delta * a * a;
}

LawsonStepper::LawsonStepper(const Grid& grid, const NlseParams& p, double dt) : grid_(grid), p_(p), dt_(dt) {
  if (!(dt > 0.0)) throw ConfigError("dt must be positive");
  const int n = grid.size();
  std::vector<std::complex<double>> multiplier(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) {
    const double k = 2.0 * std::numbers::pi * m / grid.length();
    const auto [s1, s2] = difference_symbols(grid, k);
    const std::complex<double> lambda(0.0, -p.beta * s1 + p.gamma * s2);
    multiplier[static_cast<std::size_t>(m)] = std::exp(lambda * (dt / 2));
  }
  half_kernel_.assign(static_cast<std::size_t>(n), {});
  for (int l = 0; l < n; ++l) {
    std::complex<double> acc;
    for (int m = 0; m < n; ++m) {
      acc += multiplier[static_cast<std::size_t>(m)] *
             std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((static_cast<long>(m) * l) % n) / n);
    }
    half_kernel_[static_cast<std::size_t>(l)] = acc / static_cast<double>(n);
  }
}

LawsonStepper::Field LawsonStepper::half_propagate(const Field& q) const {
  const std::size_t n = q.size();
  Field out(n);
  for (std::size_t j = 0; j < n; ++j) {
    std::complex<double> acc;
    for (std::size_t l = 0; l < n; ++l) acc += half_kernel_[l] * q[(j + n - l) % n];
    out[j] = acc;
  }
  return out;
}

LawsonStepper::Field LawsonStepper::nonlinear(const Field& q) const {
  Field out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = std::complex<double>(0.0, p_.delta * std::norm(q[i])) * q[i];
  return out;
}

FieldState LawsonStepper::step(const FieldState& s, long step) const {
  check_size(s, grid_);
  const std::size_t n = s.u.size();
  Field q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = {s.u[i], s.v[i]};
  auto combine = [n](const Field& a, double h, const Field& b) {
    Field out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + h * b[i];
    return out;
  };
  const double h = dt_;
  const Field k1 = nonlinear(q);
  const Field eq = half_propagate(q);
  const Field ek1 = half_propagate(k1);
  const Field k2 = nonlinear(combine(eq, h / 2, ek1));
  const Field k3 = nonlinear(combine(eq, h / 2, k2));
  const Field eeq = half_propagate(eq);
  const Field k4 = nonlinear(combine(eeq, h, half_propagate(k3)));
  const Field eek1 = half_propagate(ek1);
  const Field ek23 = half_propagate(combine(k2, 1.0, k3));
  FieldState out;
  out.u.resize(n);
  out.v.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto next = eeq[i] + h / 6 * (eek1[i] + 2.0 * ek23[i] + k4[i]);
    out.u[i] = next.real();
    out.v[i] = next.imag();
  }
  out.time = s.time + h;
  check_finite(out, step);
  return out;
}

FieldState plane_wave(const Grid& grid, double a, double k, double omega, double t) {
  FieldState s;
  s.time = t;
  for (int i = 0; i < grid.size(); ++i) {
    const double ph = k * grid.x(i) - omega * t;
    s.u.push_back(a * std::cos(ph));
    s.v.push_back(a * std::sin(ph));
  }
  return s;
}

FieldState random_trig_state(const Grid& grid, std::mt19937_64& rng, int modes, double amplitude) {
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  FieldState s;
  s.u.assign(static_cast<std::size_t>(grid.size()), 0.0);
  s.v.assign(static_cast<std::size_t>(grid.size()), 0.0);
  for (int m = 1; m <= modes; ++m) {
    const double k = 2.0 * std::numbers::pi * m / grid.length();
    const double a = coef(rng), b = coef(rng), c = coef(rng), d = coef(rng);
    for (int i = 0; i < grid.size(); ++i) {
      const double x = grid.x(i);
      s.u[static_cast<std::size_t>(i)] += a * std::cos(k * x) + b * std::sin(k * x);
      s.v[static_cast<std::size_t>(i)] += c * std::cos(k * x) + d * std::sin(k * x);
    }
  }
  double peak = 0.0;
  for (std::size_t i = 0; i < s.u.size(); ++i) peak = std::max(peak, std::hypot(s.u[i], s.v[i]));
  if (peak > 0.0) {
    for (std::size_t i = 0; i < s.u.size(); ++i) {
      s.u[i] *= amplitude / peak;
      s.v[i] *= amplitude / peak;
    }
  }
  return s;
}

FieldState candidate_state(const SolutionCandidate& cand, const PDESystem& sys, const Grid& grid, double t,
                           const std::map<std::string, double>& params) {
  check_constraints(cand, params);
  std::vector<Symbol> slots{sys.space(), sys.time()};
  std::vector<double> values{0.0, t};
  for (const auto& [name, value] : params) {
    slots.push_back(parameter(name));
    values.push_back(value);
  }
  const CompiledExpr u(cand.u_expr, slots);
  const CompiledExpr v(cand.v_expr, slots);
  FieldState s;
  s.time = t;
  for (int i = 0; i < grid.size(); ++i) {
    values[0] = grid.x(i);
    s.u.push_back(u(values));
    s.v.push_back(v(values));
  }
  return s;
}

double max_difference(const FieldState& a, const FieldState& b) {
  if (a.u.size() != b.u.size()) throw ConfigError("states have different lengths");
  double m = 0.0;
  for (std::size_t i = 0; i < a.u.size(); ++i) {
    m = std::max({m, std::abs(a.u[i] - b.u[i]), std::abs(a.v[i] - b.v[i])});
  }
  return m;
}

namespace {

enum Slot { kT, kX, kU, kV, kUx, kVx, kUxx, kVxx, kUt, kVt, kFirstParam };

std::vector<Symbol> density_slots(const PDESystem& sys, const std::map<std::string, double>& params) {
  const std::string sx(1, sys.space_letter());
  const std::string st(1, sys.time_letter());
  const auto& deps = sys.context().dependents();
  std::vector<Symbol> slots{sys.time(),
                            sys.space(),
                            dependent(deps[0]),
                            dependent(deps[1]),
                            dependent(deps[0], sx),
                            dependent(deps[1], sx),
                            dependent(deps[0], sx + sx),
                            dependent(deps[1], sx + sx),
                            dependent(deps[0], st),
                            dependent(deps[1], st)};
  for (const auto& [name, value] : params) slots.push_back(parameter(name));
  return slots;
}

void check_slots(const Expr& e, const std::string& what, const std::vector<Symbol>& slots) {
  for (const Symbol& s : symbols_of(e)) {
    if (std::find(slots.begin(), slots.end(), s) == slots.end()) {
      throw Error(what + " uses " + s.str() + ", which has no grid value");
    }
  }
}

CompiledExpr compile_density(const ConservedVector& T, const std::vector<Symbol>& slots) {
  check_slots(T.density, "density of " + T.label, slots);
  return CompiledExpr(T.density, slots);
}

}  // namespace

DensityIntegral::DensityIntegral(const ConservedVector& T, const PDESystem& sys,
                                 const std::map<std::string, double>& params)
    : slots_(density_slots(sys, params)), density_(compile_density(T, slots_)), p_(NlseParams::from(params)) {
  for (const auto& [name, value] : params) fixed_.push_back(value);
  needs_time_derivative_ = depends_on(T.density, slots_[kUt]) || depends_on(T.density, slots_[kVt]);
  density_has_x_ = depends_on(T.density, slots_[kX]);
  if (depends_on(T.flux, slots_[kX])) {
    check_slots(T.flux, "flux of " + T.label, slots_);
    flux_.emplace(T.flux, slots_);
  }
}

std::vector<double> DensityIntegral::values_at(const FieldState& s, const Grid& grid, std::size_t i,
                                               bool with_time_derivative) const {
  // Point-local stencils; callers needing every point use operator().
  std::vector<double> values(slots_.size(), 0.0);
  std::copy(fixed_.begin(), fixed_.end(), values.begin() + kFirstParam);
  const int n = grid.size();
  auto at = [&](const std::vector<double>& f, int k) { return f[static_cast<std::size_t>(((k % n) + n) % n)]; };
  const int j = static_cast<int>(i);
  auto d1 = [&](const std::vector<double>& f) {
    return (-at(f, j + 2) + 8.0 * at(f, j + 1) - 8.0 * at(f, j - 1) + at(f, j - 2)) / (12.0 * grid.dx());
  };
  auto d2 = [&](const std::vector<double>& f) {
    return (-at(f, j + 2) + 16.0 * at(f, j + 1) - 30.0 * at(f, j) + 16.0 * at(f, j - 1) - at(f, j - 2)) /
           (12.0 * grid.dx() * grid.dx());
  };
  values[kT] = s.time;
  values[kX] = grid.x(j);
  values[kU] = s.u[i];
  values[kV] = s.v[i];
  values[kUx] = d1(s.u);
  values[kVx] = d1(s.v);
  values[kUxx] = d2(s.u);
  values[kVxx] = d2(s.v);
  if (with_time_derivative) {
    const double R = s.u[i] * s.u[i] + s.v[i] * s.v[i];
    values[kUt] = -p_.beta * values[kUx] + p_.gamma * values[kVxx] - p_.delta * s.v[i] * R;
    values[kVt] = -p_.beta * values[kVx] - p_.gamma * values[kUxx] + p_.delta * s.u[i] * R;
  }
  return values;
}

double DensityIntegral::operator()(const FieldState& s, const Grid& grid) const {
  check_size(s, grid);
  const auto ux = spatial_derivative(s.u, grid, 1);
  const auto vx = spatial_derivative(s.v, grid, 1);
  const auto uxx = spatial_derivative(s.u, grid, 2);
  const auto vxx = spatial_derivative(s.v, grid, 2);
  std::pair<std::vector<double>, std::vector<double>> dt;
  if (needs_time_derivative_) dt = rhs(s, grid, p_);
  std::vector<double> values(slots_.size(), 0.0);
  std::copy(fixed_.begin(), fixed_.end(), values.begin() + kFirstParam);
  values[kT] = s.time;
  std::vector<double> seam(density_has_x_ ? s.u.size() : 0);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.u.size(); ++i) {
    values[kX] = grid.x(static_cast<int>(i));
    values[kU] = s.u[i];
    values[kV] = s.v[i];
    values[kUx] = ux[i];
    values[kVx] = vx[i];
    values[kUxx] = uxx[i];
    values[kVxx] = vxx[i];
    if (needs_time_derivative_) {
      values[kUt] = dt.first[i];
      values[kVt] = dt.second[i];
    }
    acc += density_(values);
    if (density_has_x_) {
      const double g = density_(values);
      values[kX] += grid.length();
      seam[i] = density_(values) - g;
    }
  }
  acc *= grid.dx();
  if (density_has_x_) {
    // Euler-Maclaurin end corrections: the integrand is periodic except for
    // its explicit x, so only seam differences of g and its odd derivatives enter.
    const double h = grid.dx();
    const auto d1 = spatial_derivative(seam, grid, 1);
    const auto d3 = spatial_derivative(spatial_derivative(seam, grid, 2), grid, 1);
    acc += h / 2 * seam[0] - h * h / 12 * d1[0] + h * h * h * h / 720 * d3[0];
  }
  return acc;
}

double DensityIntegral::boundary_jump(const FieldState& s, const Grid& grid) const {
  if (!flux_) return 0.0;
  check_size(s, grid);
  auto values = values_at(s, grid, 0, true);
  const double at_zero = (*flux_)(values);
  values[kX] = grid.length();
  return (*flux_)(values) - at_zero;
}

double conserved_quantity(const ConservedVector& T, const PDESystem& sys, const FieldState& s, const Grid& grid,
                          const std::map<std::string, double>& params) {
  return DensityIntegral(T, sys, params)(s, grid);
}

double QuantitySeries::drift(std::size_t quantity) const {
  if (values.empty()) return 0.0;
  const double q0 = values.front().at(quantity);
  double m = 0.0;
  for (const auto& row : values) m = std::max(m, std::abs(row.at(quantity) - q0));
  return m / std::max(1.0, std::abs(q0));
}

double QuantitySeries::balance_drift(std::size_t quantity) const {
  if (values.empty()) return 0.0;
  const double q0 = values.front().at(quantity) + outflow.front().at(quantity);
  double m = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    m = std::max(m, std::abs(values[i].at(quantity) + outflow[i].at(quantity) - q0));
  }
  return m / std::max(1.0, std::abs(values.front().at(quantity)));
}

std::vector<double> QuantitySeries::drifts() const {
  std::vector<double> out;
  for (std::size_t q = 0; q < labels.size(); ++q) out.push_back(drift(q));
  return out;
}

void QuantitySeries::write_csv(std::ostream& out) const {
  out << "time";
  for (std::size_t q = 0; q < labels.size(); ++q) out << ",Q" << q + 1;
  out << '\n';
  char buf[64];
  for (std::size_t i = 0; i < times.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", times[i]);
    out << buf;
    for (double v : values[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

SimResult run(const Grid& grid, const FieldState& initial, const SimConfig& cfg,
              const std::vector<ConservedVector>& laws, const PDESystem& sys,
              const std::map<std::string, double>& params) {
  if (!(cfg.dt > 0.0)) throw ConfigError("dt must be positive");
  if (!(cfg.t_end >= 0.0)) throw ConfigError("T must be non-negative");
  if (cfg.sample_every < 1) throw ConfigError("sample_every must be >= 1");
  check_size(initial, grid);
  const long steps = std::lround(cfg.t_end / cfg.dt);
  if (std::abs(static_cast<double>(steps) * cfg.dt - cfg.t_end) > 1e-9 * std::max(1.0, cfg.t_end)) {
    throw ConfigError("T must be a whole number of steps of size dt");
  }

  const NlseParams p = NlseParams::from(params);
  std::vector<DensityIntegral> integrals;
  SimResult result;
  for (const auto& T : laws) {
    integrals.emplace_back(T, sys, params);
    result.series.labels.push_back(T.label);
  }
  std::vector<double> outflow(integrals.size(), 0.0);
  auto sample = [&](const FieldState& s) {
    std::vector<double> row;
    for (const auto& I : integrals) row.push_back(I(s, grid));
    result.series.times.push_back(s.time);
    result.series.values.push_back(std::move(row));
    result.series.outflow.push_back(outflow);
  };
  auto jumps = [&](const FieldState& s) {
    std::vector<double> j;
    for (const auto& I : integrals) j.push_back(I.boundary_jump(s, grid));
    return j;
  };

  std::optional<LawsonStepper> lawson;
  if (cfg.scheme == Scheme::Lawson) lawson.emplace(grid, p, cfg.dt);

  FieldState s = initial;
  const double t0 = initial.time;
  sample(s);
  auto prev_jump = jumps(s);
  for (long n = 1; n <= steps; ++n) {
    s = lawson ? lawson->step(s, n) : step_rk4(s, grid, p, cfg.dt, n);
    s.time = t0 + static_cast<double>(n) * cfg.dt;
    const auto jump = jumps(s);
    for (std::size_t q = 0; q < outflow.size(); ++q) outflow[q] += cfg.dt / 2 * (prev_jump[q] + jump[q]);
    prev_jump = jump;
    if (n % cfg.sample_every == 0 || n == steps) sample(s);
  }
  result.final_state = std::move(s);
  result.steps = steps;
  return result;
}

std::pair<double, double> residual_on_grid(const SolutionCandidate& cand, const Grid& grid,
                                           std::span<const double> times,
                                           const std::map<std::string, double>& params, const PDESystem& sys) {
  check_constraints(cand, params);
  const CandidateEquations eqs(cand, sys);
  double g1 = 0.0, g2 = 0.0;
  for (double t : times) {
    for (int i = 0; i < grid.size(); ++i) {
      const auto r = eqs.evaluate(grid.x(i), t, params);
      g1 = std::max(g1, std::abs(r[0]));
      g2 = std::max(g2, std::abs(r[1]));
    }
  }
  return {g1, g2};
}

}  // namespace jetcheck
