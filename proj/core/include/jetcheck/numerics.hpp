#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jetcheck/candidate.hpp"
#include "jetcheck/conservation.hpp"
#include "jetcheck/evaluate.hpp"
#include "jetcheck/system.hpp"

namespace jetcheck {

/// Periodic grid x_i = i L / N, i = 0..N-1.
class Grid {
 public:
  /// Throws ConfigError unless L > 0 and N is a power of two >= 16.
  Grid(double L, int N);

  [[nodiscard]] double length() const noexcept { return L_; }
  [[nodiscard]] int size() const noexcept { return N_; }
  [[nodiscard]] double dx() const noexcept { return L_ / N_; }
  [[nodiscard]] double x(int i) const noexcept { return i * dx(); }

 private:
  double L_;
  int N_;
};

struct FieldState {
  std::vector<double> u;
  std::vector<double> v;
  double time = 0.0;
};

/// Coefficients of q_t = -beta q_x - i gamma q_xx + i delta |q|^2 q, q = u + i v.
struct NlseParams {
  double beta = 1.0;
  double gamma = 0.5;
  double delta = 1.0;

  /// Reads beta, gamma and delta; missing names keep their defaults.
  [[nodiscard]] static NlseParams from(const std::map<std::string, double>& values);
};

/// Fourth-order periodic central difference of order 1 or 2.
[[nodiscard]] std::vector<double> spatial_derivative(std::span<const double> f, const Grid& grid, int order);

/// (u_t, v_t) from the evolution form.
[[nodiscard]] std::pair<std::vector<double>, std::vector<double>> rhs(const FieldState& s, const Grid& grid,
                                                                      const NlseParams& p);

/// One classical RK4 step. Stable roughly for dt <= 0.2 dx^2 / |gamma|.
/// Throws BlowupError (naming `step`) if the result is not finite.
[[nodiscard]] FieldState step_rk4(const FieldState& s, const Grid& grid, const NlseParams& p, double dt,
                                  long step = 0);

/// RK4 in the interaction picture: the linear difference operator is
/// propagated exactly through its circulant exponential, so the step size is
/// limited only by the cubic term.
class LawsonStepper {
 public:
  LawsonStepper(const Grid& grid, const NlseParams& p, double dt);

  /// Throws BlowupError if the result is not finite.
  [[nodiscard]] FieldState step(const FieldState& s, long step = 0) const;

 private:
  using Field = std::vector<std::complex<double>>;
  [[nodiscard]] Field half_propagate(const Field& q) const;
  [[nodiscard]] Field nonlinear(const Field& q) const;

  Grid grid_;
  NlseParams p_;
  double dt_;
  Field half_kernel_;
};

/// Fourier symbols of the first and second difference operators at
/// wavenumber k: D1 -> i s1, D2 -> -s2.
[[nodiscard]] std::pair<double, double> difference_symbols(const Grid& grid, double k);

/// Frequency of the plane wave a e^{i(kx - wt)} under the semi-discrete
/// system: w = beta s1 - gamma s2 - delta a^2.
[[nodiscard]] double discrete_frequency(const Grid& grid, const NlseParams& p, double a, double k);

/// Continuum dispersion relation w = beta k - gamma k^2 - delta a^2.
[[nodiscard]] double continuum_frequency(const NlseParams& p, double a, double k);

/// u = a cos(kx - wt), v = a sin(kx - wt) on the grid.
[[nodiscard]] FieldState plane_wave(const Grid& grid, double a, double k, double omega = 0.0, double t = 0.0);

/// Sum of `modes` Fourier modes with random coefficients, scaled so that
/// max |q| equals `amplitude`.
[[nodiscard]] FieldState random_trig_state(const Grid& grid, std::mt19937_64& rng, int modes = 3,
                                           double amplitude = 0.5);

/// Evaluates a closed-form candidate on the grid at time t.
[[nodiscard]] FieldState candidate_state(const SolutionCandidate& cand, const PDESystem& sys, const Grid& grid,
                                         double t, const std::map<std::string, double>& params);

[[nodiscard]] double max_difference(const FieldState& a, const FieldState& b);

/// Rectangle-rule integral of a conserved density, with Euler-Maclaurin
/// seam corrections when the density depends explicitly on x. Jets up to second order
/// in space come from spatial_derivative, first time derivatives from rhs;
/// the space and time variables are bound to the grid and state.time.
///
/// A flux with explicit x dependence does not cancel across the periodic
/// seam; boundary_jump gives F(L) - F(0) so the balance can be closed.
class DensityIntegral {
 public:
  DensityIntegral(const ConservedVector& T, const PDESystem& sys, const std::map<std::string, double>& params);

  [[nodiscard]] double operator()(const FieldState& s, const Grid& grid) const;
  [[nodiscard]] bool has_boundary_jump() const noexcept { return flux_.has_value(); }
  /// F(x = L) - F(x = 0) with the fields at grid point 0; zero when the flux
  /// has no explicit x.
  [[nodiscard]] double boundary_jump(const FieldState& s, const Grid& grid) const;

 private:
  [[nodiscard]] std::vector<double> values_at(const FieldState& s, const Grid& grid, std::size_t i,
                                              bool with_time_derivative) const;

  std::vector<Symbol> slots_;
  std::vector<double> fixed_;
  CompiledExpr density_;
  std::optional<CompiledExpr> flux_;
  NlseParams p_;
  bool needs_time_derivative_ = false;
  bool density_has_x_ = false;
};

[[nodiscard]] double conserved_quantity(const ConservedVector& T, const PDESystem& sys, const FieldState& s,
                                        const Grid& grid, const std::map<std::string, double>& params);

struct QuantitySeries {
  std::vector<std::string> labels;
  std::vector<double> times;
  /// values[sample][quantity]
  std::vector<std::vector<double>> values;
  /// Time integral of the seam flux jump up to each sample, same shape as values.
  std::vector<std::vector<double>> outflow;

  /// max |Q - Q(0)| / max(1, |Q(0)|)
  [[nodiscard]] double drift(std::size_t quantity) const;
  [[nodiscard]] std::vector<double> drifts() const;
  /// Drift of Q + outflow, which vanishes when the only loss is through the seam.
  [[nodiscard]] double balance_drift(std::size_t quantity) const;
  /// Header `time,Q1,...`, 17 significant digits.
  void write_csv(std::ostream& out) const;
};

enum class Scheme { Rk4, Lawson };

struct SimConfig {
  double t_end = 1.0;
  double dt = 1e-3;
  int sample_every = 1;
  Scheme scheme = Scheme::Lawson;
};

struct SimResult {
  QuantitySeries series;
  FieldState final_state;
  long steps = 0;
};

/// Integrates to t_end, sampling every conserved density of `laws`.
/// Throws ConfigError when t_end is not a whole number of steps and
/// BlowupError when the state stops being finite.
[[nodiscard]] SimResult run(const Grid& grid, const FieldState& initial, const SimConfig& cfg,
                            const std::vector<ConservedVector>& laws, const PDESystem& sys,
                            const std::map<std::string, double>& params);

/// (max |G1|, max |G2|) of a candidate over grid points x times.
[[nodiscard]] std::pair<double, double> residual_on_grid(const SolutionCandidate& cand, const Grid& grid,
                                                         std::span<const double> times,
                                                         const std::map<std::string, double>& params,
                                                         const PDESystem& sys);

}  // namespace jetcheck
