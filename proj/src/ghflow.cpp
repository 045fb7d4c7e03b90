#include "nok/ghflow.hpp"

#include "nok/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

namespace nok {

namespace {

cplx power(cplx x, int e) {
  cplx out = 1.0;
  for (int k = 0; k < e; ++k) out *= x;
  return out;
}

// Residuals and the holomorphic Jacobian in one pass.
void evaluate(const NumericFamily& fam, const CVec& z, cplx t, CVec* g, CMat* jac) {
  const std::size_t k = fam.generators.size();
  const auto n = static_cast<Eigen::Index>(fam.n);
  if (g) *g = CVec::Zero(static_cast<Eigen::Index>(k));
  if (jac) *jac = CMat::Zero(static_cast<Eigen::Index>(k), n + 1);
  for (std::size_t j = 0; j < k; ++j) {
    const auto row = static_cast<Eigen::Index>(j);
    for (const auto& term : fam.generators[j]) {
      std::vector<cplx> pw(fam.n);
      cplx mono = term.coeff * power(t, term.t_exponent);
      for (std::size_t i = 0; i < fam.n; ++i) {
        pw[i] = power(z[static_cast<Eigen::Index>(i)], term.exponents[i]);
        mono *= pw[i];
      }
      if (g) (*g)[row] += mono;
      if (!jac) continue;
      for (std::size_t i = 0; i < fam.n; ++i) {
        const int e = term.exponents[i];
        if (e == 0) continue;
        cplx d = term.coeff * power(t, term.t_exponent) * static_cast<double>(e) *
                 power(z[static_cast<Eigen::Index>(i)], e - 1);
        for (std::size_t l = 0; l < fam.n; ++l)
          if (l != i) d *= pw[l];
        (*jac)(row, static_cast<Eigen::Index>(i)) += d;
      }
      if (term.t_exponent > 0) {
        cplx d = term.coeff * static_cast<double>(term.t_exponent) * power(t, term.t_exponent - 1);
        for (std::size_t l = 0; l < fam.n; ++l) d *= pw[l];
        (*jac)(row, n) += d;
      }
    }
  }
}

// Orthonormal basis of ker(a), a of full row rank.
CMat kernel_basis(const CMat& a, Eigen::Index cols) {
  if (a.rows() == 0) return CMat::Identity(cols, cols);
  Eigen::ColPivHouseholderQR<CMat> qr(a.adjoint());
  qr.setThreshold(1e-10);
  if (qr.rank() < a.rows()) throw NumericalError("singular point: Jacobian is rank deficient");
  CMat q = qr.householderQ() * CMat::Identity(cols, cols);
  return q.rightCols(cols - a.rows());
}

double read_env(const char* name, double fallback) {
  const char* raw = std::getenv(name);
  if (!raw) return fallback;
  double v = 0;
  try {
    std::size_t used = 0;
    v = std::stod(raw, &used);
    if (used != std::string(raw).size()) throw std::invalid_argument(raw);
  } catch (const std::exception&) {
    throw ValidationError(std::string("environment variable ") + name + " is not a number");
  }
  if (!(v > 0)) throw ValidationError(std::string("environment variable ") + name + " must be positive");
  return v;
}

double max_abs(const CVec& v) { return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff(); }

// Layout of the integrated vector: z, t, then each frame vector.
CVec pack(const FlowState& s) {
  const auto n = s.z.size();
  CVec y(n + 1 + static_cast<Eigen::Index>(s.frame.size()) * (n + 1));
  y.head(n) = s.z;
  y[n] = s.t;
  for (std::size_t f = 0; f < s.frame.size(); ++f)
    y.segment(n + 1 + static_cast<Eigen::Index>(f) * (n + 1), n + 1) = s.frame[f];
  return y;
}

FlowState unpack(const CVec& y, Eigen::Index n, std::size_t frames) {
  FlowState s;
  s.z = y.head(n);
  s.t = y[n];
  for (std::size_t f = 0; f < frames; ++f)
    s.frame.push_back(y.segment(n + 1 + static_cast<Eigen::Index>(f) * (n + 1), n + 1));
  return s;
}

CVec field_at(const NumericFamily& fam, const CVec& zt, const FlowOptions& opts) {
  const auto n = static_cast<Eigen::Index>(fam.n);
  FlowState s;
  s.z = zt.head(n);
  s.t = zt[n];
  return gh_vector_field(fam, s, opts);
}

CVec rhs(const NumericFamily& fam, const CVec& y, std::size_t frames, const FlowOptions& opts) {
  const auto n = static_cast<Eigen::Index>(fam.n);
  CVec out(y.size());
  CVec zt = y.head(n + 1);
  out.head(n + 1) = field_at(fam, zt, opts);
  for (std::size_t f = 0; f < frames; ++f) {
    auto off = n + 1 + static_cast<Eigen::Index>(f) * (n + 1);
    CVec u = y.segment(off, n + 1);
    double norm = u.norm();
    if (norm == 0) {
      out.segment(off, n + 1).setZero();
      continue;
    }
    CVec dir = u / norm;
    double h = opts.fd_step;
    CVec plus = field_at(fam, zt + h * dir, opts);
    CVec minus = field_at(fam, zt - h * dir, opts);
    out.segment(off, n + 1) = (plus - minus) * (norm / (2 * h));
  }
  return out;
}

// Minimal-norm Newton correction of z at fixed t.
void project(const NumericFamily& fam, CVec& z, cplx t, const FlowOptions& opts) {
  if (fam.generators.empty()) return;
  const auto n = static_cast<Eigen::Index>(fam.n);
  CVec g;
  CMat jac;
  for (int it = 0; it < 30; ++it) {
    evaluate(fam, z, t, &g, &jac);
    if (max_abs(g) < opts.newton_tol) return;
    Eigen::CompleteOrthogonalDecomposition<CMat> cod(jac.leftCols(n));
    CVec dz = cod.solve(g);
    z -= dz;
    if (dz.norm() < 1e-16 * std::max(1.0, z.norm())) break;
  }
  evaluate(fam, z, t, &g, nullptr);
  if (!(max_abs(g) < 1e-8)) throw NumericalError("residual divergence in Newton projection");
}

std::vector<std::size_t> zero_coords(const CVec& z, double threshold) {
  std::vector<std::size_t> out;
  for (Eigen::Index i = 0; i < z.size(); ++i)
    if (std::abs(z[i]) < threshold) out.push_back(static_cast<std::size_t>(i));
  return out;
}

double max_drift(const std::vector<double>& a, const std::vector<double>& b) {
  double d = 0;
  for (std::size_t k = 0; k < a.size(); ++k) d = std::max(d, std::abs(a[k] - b[k]));
  return d;
}

}  // namespace

FlowOptions FlowOptions::from_environment() {
  FlowOptions o;
  o.rtol = read_env("NOK_RTOL", o.rtol);
  o.atol = read_env("NOK_ATOL", o.atol);
  o.newton_tol = read_env("NOK_NEWTON_TOL", o.newton_tol);
  o.blowup = read_env("NOK_BLOWUP", o.blowup);
  o.epsilon = read_env("NOK_EPSILON", o.epsilon);
  return o;
}

NumericFamily numeric_family(const FamilyIdeal& family) {
  NumericFamily fam;
  const auto& vd = family.valuation;
  fam.n = family.num_coordinates();
  const std::size_t dim = vd.m + vd.rank;
  Mat diffs;
  for (std::size_t j = 0; j < family.relations.size(); ++j) {
    std::vector<CTerm> terms;
    auto poly = family_polynomial(family, j);
    Vec first;
    for (const auto& [term, texp] : poly) {
      CTerm ct;
      ct.coeff = term.coeff.get_d();
      for (auto e : term.exponents) ct.exponents.push_back(static_cast<int>(e));
      ct.t_exponent = static_cast<int>(texp);
      terms.push_back(ct);
      Vec val = monomial_value(vd, term.exponents);
      if (first.empty())
        first = val;
      else
        diffs.push_back(val - first);
    }
    fam.generators.push_back(std::move(terms));
  }
  // Functionals on L that make every family polynomial homogeneous: their
  // moment components are conserved by the flow.
  Mat conserved = linalg::nullspace(diffs, dim);
  fam.weights = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(conserved.size()),
                                      static_cast<Eigen::Index>(fam.n));
  fam.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(fam.n));
  for (std::size_t i = 0; i < fam.n; ++i) {
    const Vec& v = vd.generators[i].value;
    for (std::size_t k = 0; k < conserved.size(); ++k)
      fam.weights(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = dot(conserved[k], v).get_d();
    for (std::size_t d = 0; d < dim; ++d)
      fam.values(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(i)) = v[d].get_d();
  }
  return fam;
}

NumericFamily free_family(std::size_t n) {
  NumericFamily fam;
  fam.n = n;
  fam.weights = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  fam.values = fam.weights;
  return fam;
}

CMat jacobian(const NumericFamily& fam, const CVec& z, cplx t) {
  CMat jac;
  evaluate(fam, z, t, nullptr, &jac);
  return jac;
}

CVec residuals(const NumericFamily& fam, const CVec& z, cplx t) {
  CVec g;
  evaluate(fam, z, t, &g, nullptr);
  return g;
}

CMat tangent_projection(const NumericFamily& fam, const FlowState& state) {
  if (static_cast<std::size_t>(state.z.size()) != fam.n)
    throw ValidationError("state has " + std::to_string(state.z.size()) + " coordinates, family has " +
                          std::to_string(fam.n));
  return kernel_basis(jacobian(fam, state.z, state.t), static_cast<Eigen::Index>(fam.n) + 1);
}

CMat fiber_tangent(const NumericFamily& fam, const FlowState& state) {
  const auto n = static_cast<Eigen::Index>(fam.n);
  CMat jac = jacobian(fam, state.z, state.t);
  CMat a(jac.rows() + 1, n + 1);
  a.topRows(jac.rows()) = jac;
  a.row(jac.rows()).setZero();
  a(jac.rows(), n) = 1.0;
  return kernel_basis(a, n + 1);
}

CVec gh_vector_field(const NumericFamily& fam, const FlowState& state, const FlowOptions& opts) {
  CMat k = tangent_projection(fam, state);
  const auto last = k.rows() - 1;
  // P e_t = K K^H e_t.
  CVec coeffs = k.row(last).adjoint();
  CVec p = k * coeffs;
  double norm2 = coeffs.squaredNorm();
  if (norm2 < opts.blowup) throw NumericalError("flow blow-up imminent: gradient of Re t nearly vanishes on the tangent space");
  return -p / norm2;
}

std::vector<double> conserved(const NumericFamily& fam, const CVec& z) {
  std::vector<double> out(static_cast<std::size_t>(fam.weights.rows()), 0.0);
  for (Eigen::Index k = 0; k < fam.weights.rows(); ++k) {
    double s = 0;
    for (Eigen::Index i = 0; i < z.size(); ++i) s += 0.5 * std::norm(z[i]) * fam.weights(k, i);
    out[static_cast<std::size_t>(k)] = s;
  }
  return out;
}

double symplectic_pairing(const CVec& u, const CVec& v) {
  cplx s = 0;
  for (Eigen::Index k = 0; k < u.size(); ++k) s += u[k] * std::conj(v[k]);
  return -s.imag();
}

std::vector<CVec> fiber_frame(const NumericFamily& fam, const FlowState& state) {
  CMat k = fiber_tangent(fam, state);
  if (k.cols() == 0) return {};
  CVec u = k.col(0);
  return {u, cplx(0, 1) * u};
}

Trajectory integrate(const NumericFamily& fam, const FlowState& start, double t_end,
                     const FlowOptions& opts) {
  const auto n = static_cast<Eigen::Index>(fam.n);
  if (static_cast<std::size_t>(start.z.size()) != fam.n)
    throw ValidationError("start point has the wrong number of coordinates");
  if (std::abs(start.t.imag()) > 0 || !(start.t.real() > 0) || start.t.real() > 1)
    throw ValidationError("start time must be real and in (0, 1]");
  if (!(t_end > 0) || !(t_end < start.t.real()))
    throw ValidationError("t_end must satisfy 0 < t_end < start.t");
  for (const auto& f : start.frame)
    if (f.size() != n + 1) throw ValidationError("frame vectors must have n + 1 coordinates");

  FlowState s0 = start;
  if (max_abs(residuals(fam, s0.z, s0.t)) > 1e-6)
    throw ValidationError("start point does not lie on the family");
  if (opts.project) project(fam, s0.z, s0.t, opts);

  const std::size_t frames = s0.frame.size();
  const double total = start.t.real() - t_end;
  const auto psi0 = conserved(fam, s0.z);
  const double omega0 = frames >= 2 ? symplectic_pairing(s0.frame[0], s0.frame[1]) : 0.0;

  Trajectory traj;
  auto record = [&](const FlowState& s, double elapsed) {
    StepDiagnostics d;
    d.elapsed = elapsed;
    d.t = s.t.real();
    d.residual = max_abs(residuals(fam, s.z, s.t));
    d.psi_drift = max_drift(conserved(fam, s.z), psi0);
    d.pi_error = std::abs(s.t - (start.t - elapsed));
    if (frames >= 2) d.omega_drift = std::abs(symplectic_pairing(s.frame[0], s.frame[1]) - omega0);
    d.zero_coordinates = zero_coords(s.z, opts.zero_threshold);
    traj.states.push_back(s);
    traj.diagnostics.push_back(std::move(d));
    traj.elapsed.push_back(elapsed);
  };
  record(s0, 0.0);

  // Dormand-Prince 5(4).
  static const double a[7][6] = {
      {0, 0, 0, 0, 0, 0},
      {1.0 / 5, 0, 0, 0, 0, 0},
      {3.0 / 40, 9.0 / 40, 0, 0, 0, 0},
      {44.0 / 45, -56.0 / 15, 32.0 / 9, 0, 0, 0},
      {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729, 0, 0},
      {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656, 0},
      {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
  static const double b[7] = {35.0 / 384, 0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84, 0};
  static const double bs[7] = {5179.0 / 57600, 0, 7571.0 / 16695, 393.0 / 640,
                               -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

  CVec y = pack(s0);
  double elapsed = 0;
  double h = std::min(opts.initial_step, total);
  int steps = 0;
  while (elapsed < total) {
    if (++steps > opts.max_steps) throw NumericalError("step limit exceeded");
    h = std::min(h, total - elapsed);
    std::vector<CVec> k(7);
    for (int st = 0; st < 7; ++st) {
      CVec yi = y;
      for (int j = 0; j < st; ++j)
        if (a[st][j] != 0) yi += h * a[st][j] * k[static_cast<std::size_t>(j)];
      k[static_cast<std::size_t>(st)] = rhs(fam, yi, frames, opts);
    }
    CVec ynew = y, err = CVec::Zero(y.size());
    for (int st = 0; st < 7; ++st) {
      ynew += h * b[st] * k[static_cast<std::size_t>(st)];
      err += h * (b[st] - bs[st]) * k[static_cast<std::size_t>(st)];
    }
    double e = 0;
    for (Eigen::Index i = 0; i <= n; ++i) {
      double scale = opts.atol + opts.rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      e = std::max(e, std::abs(err[i]) / scale);
    }
    if (!std::isfinite(e)) throw NumericalError("non-finite state during integration");
    double factor = e == 0 ? 5.0 : std::clamp(0.9 * std::pow(e, -0.2), 0.2, 5.0);
    if (e <= 1) {
      // Land exactly on the requested end time.
      elapsed = (total - elapsed <= h * (1 + 1e-12)) ? total : elapsed + h;
      FlowState s = unpack(ynew, n, frames);
      if (opts.project) project(fam, s.z, s.t, opts);
      y = pack(s);
      record(s, elapsed);
      h *= std::min(factor, 5.0);
    } else {
      h *= factor;
    }
    if (elapsed < total && h < opts.min_step) throw NumericalError("step-size underflow near a singularity");
  }
  return traj;
}

LimitResult limit_point(const NumericFamily& fam, const FlowState& start, const FlowOptions& opts) {
  const double eps = opts.epsilon;
  if (!(start.t.real() > eps)) throw ValidationError("start time must exceed the extrapolation epsilon");
  FlowState s = start;
  s.frame.clear();
  LimitResult out;
  for (double target : {eps, eps / 2, eps / 4}) {
    auto traj = integrate(fam, s, target, opts);
    s = traj.states.back();
    s.t = target;
    out.samples.push_back(s.z);
  }
  const CVec& z1 = out.samples[0];
  const CVec& z2 = out.samples[1];
  const CVec& z4 = out.samples[2];
  CVec d1 = z1 - z2, d2 = z2 - z4;
  const double n1 = d1.norm(), n2 = d2.norm();
  double estimate;
  if (n1 == 0 && n2 == 0) {
    out.z = z4;
    out.order = std::numeric_limits<double>::infinity();
    estimate = 0;
  } else {
    const double r = n2 == 0 ? std::numeric_limits<double>::infinity() : n1 / n2;
    if (!(r > 1.05)) throw NumericalError("non-convergent extrapolation: successive differences do not shrink");
    out.order = std::log2(r);
    const double p = out.order;
    if (std::isinf(r)) {
      out.z = z4;
      estimate = 0;
    } else if (p > 0.9 && std::abs(p - std::round(p)) < 0.1) {
      // Quadratic extrapolation in t through (eps, eps/2, eps/4).
      out.z = z1 / 3.0 - 2.0 * z2 + (8.0 / 3.0) * z4;
      CVec linear = 2.0 * z4 - z2;
      estimate = (out.z - linear).norm();
    } else {
      out.z = z4 - d2 / (r - 1);
      estimate = (out.z - z4).norm();
    }
  }
  out.residual = max_abs(residuals(fam, out.z, 0.0));
  out.error = std::max(estimate, out.residual);
  return out;
}

InvariantReport check_invariants(const Trajectory& traj, const NumericFamily& fam) {
  InvariantReport rep;
  if (traj.states.empty()) return rep;
  const auto& s0 = traj.states.front();
  const auto psi0 = conserved(fam, s0.z);
  rep.psi_component_drift.assign(psi0.size(), 0.0);
  const bool framed = s0.frame.size() >= 2;
  const double omega0 = framed ? symplectic_pairing(s0.frame[0], s0.frame[1]) : 0.0;
  for (std::size_t k = 0; k < traj.states.size(); ++k) {
    const auto& s = traj.states[k];
    const double elapsed = k < traj.elapsed.size() ? traj.elapsed[k] : 0.0;
    rep.pi_drift = std::max(rep.pi_drift, std::abs(s.t - (s0.t - elapsed)));
    auto psi = conserved(fam, s.z);
    for (std::size_t c = 0; c < psi.size(); ++c) {
      double d = std::abs(psi[c] - psi0[c]);
      rep.psi_component_drift[c] = std::max(rep.psi_component_drift[c], d);
      rep.psi_drift = std::max(rep.psi_drift, d);
    }
    if (framed && s.frame.size() >= 2)
      rep.omega_drift = std::max(rep.omega_drift, std::abs(symplectic_pairing(s.frame[0], s.frame[1]) - omega0));
    rep.residual = std::max(rep.residual, max_abs(residuals(fam, s.z, s.t)));
  }
  return rep;
}

}  // namespace nok
