#include "leafflow/brockett.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace leafflow {

namespace {

double offdiag_norm(int n, const std::vector<double>& a) {
  double s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) s += a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

void symmetrize(int n, std::vector<double>& a) {
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double m = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = m;
    }
}

double spectrum_drift(const std::vector<double>& ref,
                      const std::vector<double>& cur) {
  double worst = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i)
    worst = std::fmax(worst, std::fabs(ref[i] - cur[i]));
  return worst;
}

}  // namespace

SymMatrixState SymMatrixState::from_matrix(int n, std::vector<double> l,
                                           std::vector<double> n_diag) {
  if (n < 2) throw std::invalid_argument("matrix dimension must be >= 2");
  if (static_cast<int>(l.size()) != n * n || static_cast<int>(n_diag.size()) != n)
    throw std::invalid_argument("dimension mismatch");
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::fabs(l[i * n + j] - l[j * n + i]) > 1e-12)
        throw std::invalid_argument("L must be symmetric");
  const bool inc = n_diag[1] > n_diag[0];
  for (int i = 0; i + 1 < n; ++i) {
    const bool step_inc = n_diag[i + 1] > n_diag[i];
    if (n_diag[i + 1] == n_diag[i] || step_inc != inc)
      throw std::invalid_argument(
          "N diagonal must be strictly monotone with distinct entries");
  }
  return {n, std::move(l), std::move(n_diag)};
}

BrockettTrajectory brockett_flow(const SymMatrixState& state,
                                 const BrockettOptions& opts) {
  const int n = state.n;
  const std::vector<double>& nd = state.n_diag;

  // [L, [L, N]] with N diagonal: K_ij = L_ij (N_jj - N_ii),
  // dL = L K - K L.
  auto deriv = [&](double, const std::vector<double>& l,
                   std::vector<double>& dl) {
    static thread_local std::vector<double> k;
    k.assign(n * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        k[i * n + j] = l[i * n + j] * (nd[j] - nd[i]);
    dl.assign(n * n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double s = 0.0;
        for (int m = 0; m < n; ++m)
          s += l[i * n + m] * k[m * n + j] - k[i * n + m] * l[m * n + j];
        dl[i * n + j] = s;
      }
  };

  BrockettTrajectory traj;
  std::vector<double> y = state.l;
  const std::vector<double> spectrum0 = jacobi_eigenvalues(n, y);

  auto record = [&](double t) {
    BrockettSample s;
    s.t = t;
    s.l = y;
    s.offdiag_norm = offdiag_norm(n, y);
    s.eigenvalue_drift = spectrum_drift(spectrum0, jacobi_eigenvalues(n, y));
    traj.samples.push_back(std::move(s));
  };

  double t = 0.0;
  record(t);
  Rkf45Stepper stepper(deriv, opts.rtol, opts.atol);
  double h = 1e-3;
  for (long step = 0; step < opts.max_steps && t < opts.t_max; ++step) {
    double h_try = std::fmin(h, opts.t_max - t);
    bool ok = false;
    for (int rej = 0; rej < 64 && !ok; ++rej) {
      if (h_try < 1e-14)
        throw NumericalAbort("brockett flow: step size underflow");
      ok = stepper.step(t, y, h_try);
    }
    if (!ok) throw NumericalAbort("brockett flow: step repeatedly rejected");
    h = h_try;
    symmetrize(n, y);
    record(t);
    if (traj.samples.back().offdiag_norm < opts.offdiag_tol) {
      traj.converged = true;
      break;
    }
  }

  traj.final_diagonal.resize(n);
  for (int i = 0; i < n; ++i) traj.final_diagonal[i] = y[i * n + i];
  return traj;
}

std::vector<double> jacobi_eigenvalues(int n, std::vector<double> a) {
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
    if (off < 1e-30) break;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (std::fabs(apq) < 1e-300) continue;
        const double theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
        const double tsign = theta >= 0.0 ? 1.0 : -1.0;
        const double tval =
            tsign / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(tval * tval + 1.0);
        const double s = tval * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          a[k * n + p] = c * akp - s * akq;
          a[k * n + q] = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a[p * n + k];
          const double aqk = a[q * n + k];
          a[p * n + k] = c * apk - s * aqk;
          a[q * n + k] = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (int i = 0; i < n; ++i) ev[i] = a[i * n + i];
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace leafflow
