#pragma once

#include <functional>
#include <optional>
#include <string>

#include "fracburgers/grid.hpp"
#include "fracburgers/kernels.hpp"

namespace fracburgers {

enum class Scheme { ExplicitRk4, Imex };
enum class Form { USpectral, UQuadrature, WDivergence, Linear };

std::string to_string(Scheme s);
std::string to_string(Form f);
Scheme parse_scheme(const std::string& s);
Form parse_form(const std::string& s);

struct SolverConfig {
  Scheme scheme = Scheme::ExplicitRk4;
  // Exactly one of dt / cfl_safety is set.
  std::optional<double> dt;
  std::optional<double> cfl_safety = 0.5;
  double snapshot_interval = 1e-2;
  Form form = Form::USpectral;
  bool dealias = false;
  // w-form: build m once per step from the step's initial state.
  bool lag_coefficient = false;
  // Second-order IMEX (implicit trapezoid + explicit midpoint).
  bool imex_midpoint = false;

  // Throws ConfigError.
  void validate() const;
};

// safety * h / (pi * Lambda * (1 + log N)); Lambda in the units of m.
double cfl_dt(const TorusGrid& grid, double Lambda, double safety);

// Right-hand side evaluated at the state's time.
using FieldRhs = std::function<Field(const Field&)>;

// Classical RK4. Stage fields carry the stage times.
Field step_rk4(const Field& state, const FieldRhs& rhs, double dt);

// m(t, x_i, x_i) for the current state.
using DiagFn = std::function<std::vector<double>(const Field&)>;

// Linearly implicit step for u_t = F(u). The stiff part mbar * S, with S the
// m == 1 quadrature operator and mbar the grid mean of frozen_diag, is taken
// implicitly and F - mbar * S explicitly.
Field imex_step(const Field& state, const DiagFn& frozen_diag, const FieldRhs& full_rhs,
                double dt, bool midpoint = false);

struct RunInfo {
  double dt = 0.0;
  std::size_t steps = 0;
  // Extremes over every step, not only the stored snapshots.
  double min_value = 0.0;
  double max_value = 0.0;
  bool certified = false;
};

struct RunResult {
  Trajectory trajectory;
  RunInfo info;
};

// Called with every stored snapshot as soon as it is produced.
using SnapshotSink = std::function<void(const Field&)>;

// form must be one of the Burgers forms. The trajectory always holds u.
RunResult solve_burgers(const Field& u0, double t_final, const SolverConfig& cfg,
                        const SnapshotSink& sink = {});

struct LinearProblem {
  CoefficientPtr even;
  OddKernelPtr odd;  // may be null
  std::function<double(double, double)> source;  // may be empty
  std::optional<Field> u0;
  // Set after the kernels passed validate_assumptions.
  bool certified = false;
};

// u_t = pv(u; even) + g(u; odd) + f.
Field linear_rhs(const LinearProblem& prob, const Field& u);

RunResult solve_linear(const LinearProblem& prob, double t_final, const SolverConfig& cfg,
                       const SnapshotSink& sink = {});

}  // namespace fracburgers
