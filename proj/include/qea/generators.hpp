#pragma once

// Seeded random structure generators used by the property suites and the
// scenario runner. All draws go through a caller-owned mt19937_64 so scenario
// reports are reproducible bit-for-bit from the seed.

#include "qea/effects.hpp"
#include "qea/observables.hpp"

#include <random>
#include <vector>

namespace qea {

inline cmat random_ginibre(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  cmat g(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) g(r, c) = complexd(gauss(rng), gauss(rng));
  return g;
}

// Haar-distributed unitary: QR of a Ginibre matrix with the phase convention
// fixed by the R diagonal.
inline cmat random_unitary(int dim, std::mt19937_64& rng) {
  const cmat g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<cmat> qr(g);
  cmat q = qr.householderQ();
  const cmat r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int i = 0; i < dim; ++i) {
    const complexd d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : complexd(1, 0);
  }
  return q;
}

inline cvec random_unit_vector(int dim, std::mt19937_64& rng) {
  cvec v = random_ginibre(dim, 1, rng).col(0);
  return v / v.norm();
}

// Effect with uniform eigenvalues; pass rank < dim for a singular one.
inline Effect random_effect(int dim, std::mt19937_64& rng, int rank = -1) {
  if (rank < 0 || rank > dim) rank = dim;
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  rvec ev = rvec::Zero(dim);
  for (int i = 0; i < rank; ++i) ev(i) = uni(rng);
  const cmat u = random_unitary(dim, rng);
  return Effect(u * ev.asDiagonal() * u.adjoint());
}

inline Projection random_projection(int dim, int rank, std::mt19937_64& rng) {
  const cmat u = random_unitary(dim, rng);
  return Projection::onto_span(u.leftCols(rank));
}

// Contraction with uniform singular values bounded away from the rank
// threshold; pass rank < min(rows, cols) for an exactly rank-deficient one.
inline Contraction random_contraction(int rows, int cols, std::mt19937_64& rng,
                                      int rank = -1) {
  const int full = std::min(rows, cols);
  if (rank < 0 || rank > full) rank = full;
  std::uniform_real_distribution<double> uni(1e-2, 1.0);
  rvec sv = rvec::Zero(full);
  for (int i = 0; i < rank; ++i) sv(i) = uni(rng);
  const cmat u = random_unitary(rows, rng);
  const cmat v = random_unitary(cols, rng);
  cmat sigma = cmat::Zero(rows, cols);
  for (int i = 0; i < full; ++i) sigma(i, i) = sv(i);
  return Contraction(u * sigma * v.adjoint());
}

// Wishart-normalised POVM: E_i = S^{-1/2} A_i A_i* S^{-1/2} with S = Σ A_i A_i*.
// Per-outcome ranks are honoured exactly (the normalisation has full rank as
// long as the ranks cover the space).
inline DiscreteObservable random_povm(int dim, int outcomes, std::mt19937_64& rng,
                                      const std::vector<int>& ranks = {}) {
  if (outcomes < 2) throw PreconditionError("random_povm: need at least 2 outcomes");
  std::vector<int> r = ranks;
  if (r.empty()) r.assign(outcomes, dim);
  if (static_cast<int>(r.size()) != outcomes)
    throw PreconditionError("random_povm: rank list size mismatch");
  int total = 0;
  for (int v : r) total += v;
  if (total < dim)
    throw PreconditionError("random_povm: ranks too small to cover the space");
  std::vector<cmat> gram;
  cmat s = cmat::Zero(dim, dim);
  for (int i = 0; i < outcomes; ++i) {
    const cmat a = random_ginibre(dim, std::max(1, r[i]), rng);
    cmat g = r[i] == 0 ? cmat::Zero(dim, dim) : cmat(a * a.adjoint());
    gram.push_back(g);
    s += g;
  }
  const SpectralDecomposition sd = eig_hermitian(s);
  rvec inv_sqrt = sd.eigenvalues.cwiseMax(1e-300).cwiseSqrt().cwiseInverse();
  const cmat w = sd.eigenvectors * inv_sqrt.asDiagonal() * sd.eigenvectors.adjoint();
  std::vector<Effect> effects;
  std::vector<std::string> labels;
  for (int i = 0; i < outcomes; ++i) {
    effects.emplace_back(w * gram[i] * w);
    labels.push_back(std::to_string(i));
  }
  return DiscreteObservable(std::move(labels), std::move(effects));
}

// Projective observable whose outcome blocks partition a random orthonormal
// basis; block i receives sizes[i] basis vectors.
inline DiscreteObservable random_partition_observable(int dim,
                                                      const std::vector<int>& sizes,
                                                      const cmat& basis) {
  int total = 0;
  for (int s : sizes) total += s;
  if (total != dim)
    throw PreconditionError("random_partition_observable: sizes must sum to dim");
  std::vector<Effect> effects;
  std::vector<std::string> labels;
  int offset = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const cmat block = basis.middleCols(offset, sizes[i]);
    effects.emplace_back(block * block.adjoint());
    labels.push_back(std::to_string(i));
    offset += sizes[i];
  }
  return DiscreteObservable(std::move(labels), std::move(effects));
}

} // namespace qea
