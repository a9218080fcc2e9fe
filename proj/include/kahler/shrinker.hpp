#pragma once

// Self-shrinker residual H + x^perp, the Gaussian area
// F = int e^{-|x|^2/2} dV, and a critical-point search for F over
// finite-dimensional families of closed surfaces.

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "kahler/parallel.hpp"
#include "kahler/quadrature.hpp"
#include "kahler/surface_file.hpp"
#include "kahler/surface_point.hpp"

namespace kahler {

struct ShrinkerResidual {
  AmbientVector R;
  double norm = 0.0;
};

ShrinkerResidual shrinker_residual(const SurfacePoint& sp);
ShrinkerResidual shrinker_residual(const ImmersionSpec& spec, ParamPoint p);

/// F over the grid; needs only first derivatives at each node.
double gaussian_area(const ImmersionSpec& spec, const QuadratureGrid& grid,
                     Execution exec = Execution::serial);

struct Family {
  std::string name;
  std::vector<std::string> param_names;
  std::vector<Interval> box;
  std::vector<double> default_init;
  std::function<ImmersionSpec(std::span<const double>)> build;
};

/// product_torus(r, s), box [0.1, 5]^2.
Family product_family();
/// product_torus(r, r), box [0.1, 5].
Family scaling_family();
/// perturbed_torus(c0..c3), box [-0.19, 0.19]^4.
Family fourier_family();
/// "product", "scaling" or "fourier". Throws ParamError.
Family family_by_name(const std::string& name);

struct FamilyGrid {
  int n_u = 32;
  int n_v = 32;
  Execution exec = Execution::serial;
};

double gaussian_area(const Family& family, std::span<const double> pi, const FamilyGrid& grid);

/// Central-difference gradient of F in the family parameters.
std::vector<double> family_gradient(const Family& family, std::span<const double> pi,
                                    const FamilyGrid& grid, double step = 1e-5);

/// |D_d F - (-int <H + x^perp, V> e^{-|x|^2/2} dV)| with V = dx/d(pi) along
/// the unit direction d, both sides by central differences of step `step`.
double first_variation_residual(const Family& family, std::span<const double> pi,
                                std::span<const double> direction, const FamilyGrid& grid,
                                double step = 1e-5);

struct OptimizerConfig {
  int max_iter = 200;
  double tol = 1e-6;
  double fd_step = 1e-5;
  double hessian_step = 1e-3;
  double max_step = 0.5;
  double shrink = 0.5;
  double sufficient_decrease = 1e-4;
  FamilyGrid grid;
};

struct TraceEntry {
  std::vector<double> pi;
  double F = 0.0;
  double grad_norm = 0.0;
  /// Direction that produced this iterate ("start" for the initial point).
  std::string step;
};

struct OptimizerResult {
  std::vector<double> pi;
  double F = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<TraceEntry> trace;
};

/// Drives ||grad F|| to zero by backtracking on the merit ||grad F||^2.
/// Each iteration tries, in order, Newton (when the Hessian of F is negative
/// definite), ascent along grad F, Newton (otherwise), descent along
/// -grad F, and the steepest-descent direction of the merit, -Hess F grad F;
/// the first one giving sufficient decrease of the merit is taken. Iterates
/// are projected onto the family box. Never throws on non-convergence; the
/// flag is false instead.
OptimizerResult find_critical(const Family& family, std::vector<double> pi0,
                              const OptimizerConfig& config);

} // namespace kahler
