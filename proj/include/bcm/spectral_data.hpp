#pragma once

#include <optional>
#include <vector>

#include "bcm/lattice_core.hpp"
#include "bcm/linalg.hpp"

namespace bcm {

/// Eigenvalues and norming constants {lambda_k, rho_k} of the Dirichlet
/// Hamiltonian H_N, optionally with the eigenvectors phi^k normalised so that
/// phi^k_1 = 1 (row k-1 of `eigenvectors` holds phi^k_1..phi^k_N).
class SpectralData {
 public:
  /// Requires strictly increasing eigenvalues and positive norming constants.
  SpectralData(Sequence eigenvalues, Sequence norming, std::optional<Matrix> eigenvectors = {});

  int order() const noexcept { return static_cast<int>(eigenvalues_.size()); }
  const Sequence& eigenvalues() const noexcept { return eigenvalues_; }
  const Sequence& norming() const noexcept { return norming_; }
  bool has_eigenvectors() const noexcept { return eigenvectors_.has_value(); }
  /// Throws PreconditionError when the eigenvectors were not supplied.
  const Matrix& eigenvectors() const;

  /// sum_k 1/rho_k; equals 1 for data coming from a Hamiltonian.
  double total_mass() const;

 private:
  Sequence eigenvalues_;
  Sequence norming_;
  std::optional<Matrix> eigenvectors_;
};

}  // namespace bcm
