#pragma once

#include <vector>

#include "leafflow/flow.hpp"

namespace leafflow {

// Dense symmetric matrix state for the isospectral flow
// dL/dt = [L, [L, N]] with N diagonal.
struct SymMatrixState {
  int n = 0;
  std::vector<double> l;       // n*n row-major, symmetric
  std::vector<double> n_diag;  // strictly monotone diagonal of N

  static SymMatrixState from_matrix(int n, std::vector<double> l,
                                    std::vector<double> n_diag);
};

struct BrockettSample {
  double t = 0.0;
  std::vector<double> l;
  double offdiag_norm = 0.0;
  double eigenvalue_drift = 0.0;  // vs the initial spectrum
};

struct BrockettOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double t_max = 100.0;
  long max_steps = 1000000;
  double offdiag_tol = 1e-8;
};

struct BrockettTrajectory {
  std::vector<BrockettSample> samples;
  bool converged = false;
  std::vector<double> final_diagonal;
};

BrockettTrajectory brockett_flow(const SymMatrixState& state,
                                 const BrockettOptions& opts = {});

// Eigenvalues of a dense symmetric matrix (cyclic Jacobi), ascending.
std::vector<double> jacobi_eigenvalues(int n, std::vector<double> a);

}  // namespace leafflow
