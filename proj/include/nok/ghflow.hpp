#pragma once

#include "nok/degen.hpp"

#include <Eigen/Dense>

#include <complex>
#include <vector>

// Gradient-Hamiltonian flow of pi = t on the smooth fibers of a family in
// E x C, with Newton projection back onto the variety, frame transport and
// invariant diagnostics.

namespace nok {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

struct CTerm {
  cplx coeff;
  std::vector<int> exponents;  // over z_1..z_n
  int t_exponent = 0;
};

struct NumericFamily {
  std::size_t n = 0;                          // number of z coordinates
  std::vector<std::vector<CTerm>> generators;
  /// Conserved moment data: psi_k = 1/2 sum_i |z_i|^2 weights(k, i).
  Eigen::MatrixXd weights;
  /// Full torus values v(z_i) as columns, for Psi.
  Eigen::MatrixXd values;
};

/// Flow data of a Rees family. The conserved quantity is (a o Psi, c o Psi);
/// without an a-map only c o Psi.
NumericFamily numeric_family(const FamilyIdeal& family);
/// E x C with no equations.
NumericFamily free_family(std::size_t n);

struct FlowState {
  CVec z;
  cplx t;
  std::vector<CVec> frame;  // vectors in C^{n+1}, last entry is the t-direction
};

struct FlowOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double newton_tol = 1e-12;
  double blowup = 1e-10;          // threshold on |P grad Re pi|^2
  double zero_threshold = 1e-9;   // stratum monitoring
  double epsilon = 1e-3;          // closest approach to the zero fiber
  double fd_step = 1e-6;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  int max_steps = 200000;
  bool project = true;

  /// Reads NOK_RTOL, NOK_ATOL, NOK_NEWTON_TOL, NOK_BLOWUP, NOK_EPSILON.
  static FlowOptions from_environment();
};

/// Rows: generators; columns: d/dz_1 .. d/dz_n, d/dt.
CMat jacobian(const NumericFamily& fam, const CVec& z, cplx t);
CVec residuals(const NumericFamily& fam, const CVec& z, cplx t);

/// Orthonormal basis (columns) of ker J in C^{n+1}. Throws
/// NumericalError("singular point") when J is rank deficient.
CMat tangent_projection(const NumericFamily& fam, const FlowState& state);
/// Orthonormal basis of the fiber tangent space ker J ∩ {dt = 0}.
CMat fiber_tangent(const NumericFamily& fam, const FlowState& state);

/// V = -P e_t / |P e_t|^2. Throws NumericalError("flow blow-up imminent").
CVec gh_vector_field(const NumericFamily& fam, const FlowState& state,
                     const FlowOptions& opts = {});

std::vector<double> conserved(const NumericFamily& fam, const CVec& z);
double symplectic_pairing(const CVec& u, const CVec& v);

struct StepDiagnostics {
  double elapsed = 0;
  double t = 0;
  double residual = 0;
  double psi_drift = 0;
  double pi_error = 0;
  double omega_drift = 0;
  std::vector<std::size_t> zero_coordinates;
};

struct Trajectory {
  std::vector<FlowState> states;
  std::vector<StepDiagnostics> diagnostics;
  std::vector<double> elapsed;
};

/// Adaptive Dormand-Prince integration from start.t down to t_end.
Trajectory integrate(const NumericFamily& fam, const FlowState& start, double t_end,
                     const FlowOptions& opts = {});

struct LimitResult {
  CVec z;
  double error = 0;
  double order = 0;
  double residual = 0;  // max |g_j(z, 0)|
  std::vector<CVec> samples;  // states at epsilon, epsilon/2, epsilon/4
};
LimitResult limit_point(const NumericFamily& fam, const FlowState& start,
                        const FlowOptions& opts = {});

struct InvariantReport {
  double pi_drift = 0;
  double psi_drift = 0;
  std::vector<double> psi_component_drift;
  double omega_drift = 0;
  double residual = 0;
};
InvariantReport check_invariants(const Trajectory& traj, const NumericFamily& fam);

/// A 2-frame {u, i u} with u a unit fiber tangent vector.
std::vector<CVec> fiber_frame(const NumericFamily& fam, const FlowState& state);

}  // namespace nok
