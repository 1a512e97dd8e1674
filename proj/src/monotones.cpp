// Copyright 2026 The qasym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qasym/monotones.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "qasym/error.hpp"

namespace qasym {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kCommuteTolerance = 1e-9;

struct JointSpectrum {
  std::vector<double> p;
  std::vector<double> g;
};

// Diagonalizes gamma, then rho inside each eigenspace of gamma. Valid because
// the two commute.
JointSpectrum joint_spectrum(const Matrix& rho, const Matrix& gamma) {
  Eigen::SelfAdjointEigenSolver<Matrix> gs(hermitian_part(gamma));
  const Eigen::VectorXd& gvals = gs.eigenvalues();
  const Matrix& gvecs = gs.eigenvectors();
  const Matrix rotated = gvecs.adjoint() * rho * gvecs;

  JointSpectrum out;
  Eigen::Index start = 0;
  const Eigen::Index d = gvals.size();
  while (start < d) {
    Eigen::Index end = start + 1;
    while (end < d && std::abs(gvals(end) - gvals(start)) <= 1e-12 * std::max(1.0, gvals(start))) {
      ++end;
    }
    const Eigen::Index len = end - start;
    Eigen::SelfAdjointEigenSolver<Matrix> block(
        hermitian_part(rotated.block(start, start, len, len)), Eigen::EigenvaluesOnly);
    const double g = gvals.segment(start, len).mean();
    for (Eigen::Index k = 0; k < len; ++k) {
      out.p.push_back(std::max(block.eigenvalues()(k), 0.0));
      out.g.push_back(std::max(g, 0.0));
    }
    start = end;
  }
  return out;
}

bool in_support(double x) { return x > kSupportCutoff; }

double classical_relative_entropy(const JointSpectrum& s) {
  double sum = 0.0;
  for (std::size_t k = 0; k < s.p.size(); ++k) {
    if (!in_support(s.p[k])) continue;
    if (!in_support(s.g[k])) return kInf;
    sum += s.p[k] * (std::log(s.p[k]) - std::log(s.g[k]));
  }
  return std::max(sum, 0.0);
}

double classical_renyi(const JointSpectrum& s, double alpha) {
  const std::size_t n = s.p.size();
  if (alpha == 1.0) return classical_relative_entropy(s);
  if (alpha == 0.0) {
    double weight = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (in_support(s.p[k])) weight += s.g[k];
    }
    return weight > 0.0 ? -std::log(weight) : kInf;
  }
  if (std::isinf(alpha) && alpha > 0) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!in_support(s.p[k])) continue;
      if (!in_support(s.g[k])) return kInf;
      best = std::max(best, s.p[k] / s.g[k]);
    }
    return std::log(best);
  }
  if (std::isinf(alpha)) {
    double best = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (!in_support(s.g[k])) continue;
      if (!in_support(s.p[k])) return kInf;
      best = std::max(best, s.g[k] / s.p[k]);
    }
    return std::log(best);
  }

  double sum = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const bool p_in = in_support(s.p[k]);
    const bool g_in = in_support(s.g[k]);
    if (p_in && g_in) {
      sum += std::pow(s.p[k], alpha) * std::pow(s.g[k], 1.0 - alpha);
    } else if (alpha > 1.0 && p_in) {
      return kInf;  // g^(1-a) blows up
    } else if (alpha < 0.0 && g_in) {
      return kInf;  // p^a blows up
    }
  }
  if (sum <= 0.0) return kInf;  // 0 < a < 1 with disjoint supports
  const double sign = alpha > 0.0 ? 1.0 : -1.0;
  return sign / (alpha - 1.0) * std::log(sum);
}

}  // namespace

double qfi(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(rho.matrix()));
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  const Matrix& v = solver.eigenvectors();
  const Matrix h_eig = v.adjoint() * rho.hamiltonian().diagonal().cast<Complex>().asDiagonal() * v;

  double sum = 0.0;
  const Eigen::Index d = lambda.size();
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = 0; l < d; ++l) {
      const double denom = lambda(k) + lambda(l);
      if (denom < 1e-12) continue;
      const double diff = lambda(k) - lambda(l);
      sum += diff * diff / denom * std::norm(h_eig(k, l));
    }
  }
  return std::max(2.0 * sum, 0.0);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& gamma) {
  if (rho.dimension() != gamma.dimension()) {
    throw DimensionMismatch("relative entropy of states with different dimensions");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> rs(hermitian_part(rho.matrix()), Eigen::EigenvaluesOnly);
  Eigen::SelfAdjointEigenSolver<Matrix> gs(hermitian_part(gamma.matrix()));

  const Matrix rotated = gs.eigenvectors().adjoint() * rho.matrix() * gs.eigenvectors();
  double cross = 0.0;  // Tr rho log gamma
  for (Eigen::Index k = 0; k < rotated.rows(); ++k) {
    const double weight = rotated(k, k).real();
    const double g = gs.eigenvalues()(k);
    if (in_support(g)) {
      cross += weight * std::log(g);
    } else if (weight > kSupportCutoff) {
      return kInf;
    }
  }
  double neg_entropy = 0.0;  // Tr rho log rho
  for (double lam : rs.eigenvalues()) {
    if (in_support(lam)) neg_entropy += lam * std::log(lam);
  }
  return std::max(neg_entropy - cross, 0.0);
}

double renyi_free_energy(const DensityMatrix& p, const DensityMatrix& gamma, double alpha) {
  if (p.dimension() != gamma.dimension()) {
    throw DimensionMismatch("Renyi free energy of states with different dimensions");
  }
  if (std::isnan(alpha)) throw InvalidArgument("alpha is NaN");
  const Matrix comm = p.matrix() * gamma.matrix() - gamma.matrix() * p.matrix();
  const double defect = trace_norm(comm);
  if (defect > kCommuteTolerance) {
    throw InvalidArgument("Renyi free energy needs commuting states (||[p, gamma]||_1 = " +
                          std::to_string(defect) + ")");
  }
  if (alpha == 1.0) return relative_entropy(p, gamma);
  return classical_renyi(joint_spectrum(p.matrix(), gamma.matrix()), alpha);
}

double qfi_continuity_bound(const Hamiltonian& h, double eps) {
  if (!(eps >= 0.0)) throw InvalidArgument("trace distance must be >= 0");
  const double norm = h.operator_norm();
  return 32.0 * norm * norm * std::sqrt(eps);
}

MonotoneReport monotone_report(const DensityMatrix& rho, double beta,
                               std::span<const double> alphas) {
  const DensityMatrix gamma = gibbs_state(rho.hamiltonian(), beta);
  MonotoneReport report;
  report.beta = beta;
  report.qfi = qfi(rho);
  report.relative_entropy = relative_entropy(rho, gamma);
  const Matrix comm = rho.matrix() * gamma.matrix() - gamma.matrix() * rho.matrix();
  if (trace_norm(comm) <= kCommuteTolerance) {
    for (double a : alphas) report.renyi_values[a] = renyi_free_energy(rho, gamma, a);
  }
  return report;
}

}  // namespace qasym
