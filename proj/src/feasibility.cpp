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

#include "qasym/feasibility.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <map>
#include <vector>

#include "qasym/monotones.hpp"

namespace qasym {

const char* to_string(FeasibilityStatus status) {
  switch (status) {
    case FeasibilityStatus::kFeasible: return "feasible";
    case FeasibilityStatus::kInfeasible: return "infeasible";
    case FeasibilityStatus::kUndetermined: return "undetermined";
  }
  return "unknown";
}

const char* to_string(Certificate certificate) {
  switch (certificate) {
    case Certificate::kModeSupport: return "mode-support";
    case Certificate::kQfiDecrease: return "qfi-decrease";
    case Certificate::kSolverResidual: return "solver-residual";
  }
  return "unknown";
}

namespace {

using Index = Eigen::Index;

// Covariant Choi operators are block diagonal once the Choi indices (i, a)
// are grouped by E'_a - E_i. The free variables are the entries of these
// Hermitian blocks, flattened block by block, column-major.
class CovariantChoiSpace {
 public:
  CovariantChoiSpace(const Hamiltonian& h_in, const Hamiltonian& h_out)
      : d_in_(h_in.dimension()), d_out_(h_out.dimension()) {
    std::map<Rational, std::vector<Index>> groups;
    for (std::size_t i = 0; i < d_in_; ++i) {
      for (std::size_t a = 0; a < d_out_; ++a) {
        groups[h_out.energy(a) - h_in.energy(i)].push_back(static_cast<Index>(i * d_out_ + a));
      }
    }
    Index offset = 0;
    for (auto& [key, members] : groups) {
      offsets_.push_back(offset);
      offset += static_cast<Index>(members.size() * members.size());
      blocks_.push_back(std::move(members));
    }
    size_ = offset;
  }

  Index size() const { return size_; }
  std::size_t d_in() const { return d_in_; }
  std::size_t d_out() const { return d_out_; }

  // Calls f(variable, choi_row, choi_col) for every free variable.
  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto& m = blocks_[b];
      const auto n = static_cast<Index>(m.size());
      for (Index c = 0; c < n; ++c) {
        for (Index r = 0; r < n; ++r) f(offsets_[b] + c * n + r, m[r], m[c]);
      }
    }
  }

  Matrix to_choi(const Vector& x) const {
    const auto d = static_cast<Index>(d_in_ * d_out_);
    Matrix choi = Matrix::Zero(d, d);
    for_each([&](Index v, Index r, Index c) { choi(r, c) = x(v); });
    return choi;
  }

  Vector from_choi(const Matrix& choi) const {
    Vector x(size_);
    for_each([&](Index v, Index r, Index c) { x(v) = choi(r, c); });
    return x;
  }

  // Blockwise projection onto the PSD cone.
  Vector project_psd(const Vector& x) const {
    Vector out(size_);
    for (std::size_t b = 0; b < blocks_.size(); ++b) {
      const auto n = static_cast<Index>(blocks_[b].size());
      const Eigen::Map<const Matrix> block(x.data() + offsets_[b], n, n);
      Eigen::Map<Matrix>(out.data() + offsets_[b], n, n) = qasym::project_psd(block);
    }
    return out;
  }

 private:
  std::size_t d_in_;
  std::size_t d_out_;
  std::vector<std::vector<Index>> blocks_;
  std::vector<Index> offsets_;
  Index size_ = 0;
};

// Affine constraints A x = b: trace preservation and C(rho) = sigma.
struct AffineSet {
  Matrix a;
  Vector b;
  Matrix pinv;

  Vector project(const Vector& x) const { return x - pinv * (a * x - b); }
  double distance(const Vector& x) const { return (pinv * (a * x - b)).norm(); }
};

AffineSet build_affine_set(const CovariantChoiSpace& space, const DensityMatrix& rho,
                           const DensityMatrix& sigma) {
  const std::size_t d_in = space.d_in();
  const std::size_t d_out = space.d_out();
  const auto n_tp = static_cast<Index>(d_in * d_in);
  const auto n_out = static_cast<Index>(d_out * d_out);
  AffineSet set;
  set.a = Matrix::Zero(n_tp + n_out, space.size());
  set.b = Vector::Zero(n_tp + n_out);
  for (std::size_t i = 0; i < d_in; ++i) set.b(static_cast<Index>(i * d_in + i)) = 1.0;
  for (std::size_t a = 0; a < d_out; ++a) {
    for (std::size_t b = 0; b < d_out; ++b) {
      set.b(n_tp + static_cast<Index>(a * d_out + b)) =
          sigma.matrix()(static_cast<Index>(a), static_cast<Index>(b));
    }
  }
  const Matrix& r = rho.matrix();
  space.for_each([&](Index v, Index row, Index col) {
    const auto i = static_cast<std::size_t>(row) / d_out;
    const auto a = static_cast<std::size_t>(row) % d_out;
    const auto j = static_cast<std::size_t>(col) / d_out;
    const auto b = static_cast<std::size_t>(col) % d_out;
    if (a == b) set.a(static_cast<Index>(i * d_in + j), v) += 1.0;
    set.a(n_tp + static_cast<Index>(a * d_out + b), v) +=
        r(static_cast<Index>(i), static_cast<Index>(j));
  });
  Eigen::CompleteOrthogonalDecomposition<Matrix> cod(set.a);
  cod.setThreshold(1e-10);
  set.pinv = cod.pseudoInverse();
  return set;
}

double solution_error(const Matrix& choi, const DensityMatrix& rho, const DensityMatrix& sigma) {
  const std::size_t d_in = rho.dimension();
  const std::size_t d_out = sigma.dimension();
  const Matrix image = apply_choi(choi, d_in, d_out, rho.matrix());
  const double reproduce = trace_norm(Matrix(image - sigma.matrix()));
  const Matrix tp = trace_preservation_defect(choi, d_in, d_out);
  return std::max(reproduce, tp.cwiseAbs().maxCoeff());
}

FeasibilityVerdict infeasible(Certificate certificate) {
  FeasibilityVerdict v;
  v.status = FeasibilityStatus::kInfeasible;
  v.certificate = certificate;
  return v;
}

}  // namespace

FeasibilityVerdict covariant_convertible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         const FeasibilityOptions& options) {
  const CoherenceSet i_rho = available_coherences(rho, options.coherence_tol);
  const CoherenceSet i_sigma = available_coherences(sigma, options.coherence_tol);
  const Lattice j_rho = reachable_lattice(i_rho);
  for (const Rational& delta : i_sigma.deltas) {
    if (!lattice_member(j_rho, delta)) return infeasible(Certificate::kModeSupport);
  }
  if (qfi(sigma) > qfi(rho) + options.tol) return infeasible(Certificate::kQfiDecrease);
  if (!i_sigma.subset_of(i_rho)) return infeasible(Certificate::kModeSupport);

  const CovariantChoiSpace space(rho.hamiltonian(), sigma.hamiltonian());
  const AffineSet affine = build_affine_set(space, rho, sigma);

  // Start from the completely depolarizing channel, which is covariant.
  const auto d_in = static_cast<Index>(rho.dimension());
  const auto d_out = static_cast<Index>(sigma.dimension());
  const Matrix depolarizing =
      kron(Matrix::Identity(d_in, d_in), Matrix::Identity(d_out, d_out) / static_cast<double>(d_out));
  // Douglas-Rachford splitting between the blockwise PSD cone and the affine
  // set. The shadow sequence x = P_psd(z) is the candidate solution.
  Vector z = space.from_choi(depolarizing);
  Vector x = z;

  FeasibilityVerdict verdict;
  double distance = affine.distance(x);
  int it = 0;
  while (it < options.max_iter) {
    ++it;
    x = space.project_psd(z);
    z += affine.project(2.0 * x - z) - x;
    distance = affine.distance(x);
    if (distance < options.tol) {
      const double err = solution_error(space.to_choi(x), rho, sigma);
      if (err < options.tol) {
        verdict.status = FeasibilityStatus::kFeasible;
        verdict.certificate = Certificate::kSolverResidual;
        verdict.residual = std::max(distance, err);
        break;
      }
    }
  }
  verdict.iterations = it;
  verdict.witness = space.to_choi(x);
  if (verdict.status != FeasibilityStatus::kFeasible) {
    verdict.status = FeasibilityStatus::kUndetermined;
    verdict.residual = std::max(distance, solution_error(*verdict.witness, rho, sigma));
  }
  return verdict;
}

FeasibilityVerdict covariant_convertible(const DensityMatrix& rho, const DensityMatrix& sigma,
                                         double tol, int max_iter) {
  FeasibilityOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return covariant_convertible(rho, sigma, options);
}

}  // namespace qasym
