#pragma once

#include <Eigen/Dense>
#include <complex>

#include "bellcomm/util.hpp"

namespace bellcomm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

struct HermitianEig {
    Eigen::VectorXd eigenvalues;   ///< ascending
    ComplexMatrix eigenvectors;    ///< orthonormal columns, aligned with eigenvalues
};

/// Eigendecomposition of a Hermitian matrix. Rejects inputs whose
/// anti-Hermitian part exceeds 1e-10 in max norm.
HermitianEig hermitian_eig(const ComplexMatrix& m);

/// Haar-distributed unitary: complex Gaussian matrix, QR, then the phase fix
/// that makes the R diagonal positive. Deterministic for a given generator
/// state.
ComplexMatrix random_unitary(int d, Rng& rng);
ComplexMatrix random_unitary(int d, std::uint64_t seed);

/// Modified Gram-Schmidt with a second pass; columns must be independent.
void orthonormalize_columns(ComplexMatrix& m);

/// max |m(i,j)| over all entries.
double max_abs(const ComplexMatrix& m);

}  // namespace bellcomm
