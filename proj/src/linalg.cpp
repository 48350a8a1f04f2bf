#include "bellcomm/linalg.hpp"

#include <stdexcept>

namespace bellcomm {

double max_abs(const ComplexMatrix& m) {
    return m.cwiseAbs().maxCoeff();
}

HermitianEig hermitian_eig(const ComplexMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("hermitian_eig: matrix must be square");
    if (m.size() > 0 && max_abs(m - m.adjoint()) > 1e-10) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("hermitian_eig: eigensolver failed to converge");
    }
    return HermitianEig{solver.eigenvalues(), solver.eigenvectors()};
}

ComplexMatrix random_unitary(int d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("random_unitary: dimension must be positive");
    ComplexMatrix g(d, d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            const double re = rng.next_gaussian();
            const double im = rng.next_gaussian();
            g(r, c) = Complex(re, im);
        }
    }
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the diagonal phases so the distribution is Haar rather than
    // QR-convention dependent.
    for (int c = 0; c < d; ++c) {
        const Complex rc = r(c, c);
        const double mag = std::abs(rc);
        if (mag > 0.0) q.col(c) *= rc / mag;
    }
    return q;
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
    Rng rng(seed);
    return random_unitary(d, rng);
}

void orthonormalize_columns(ComplexMatrix& m) {
    const int n = static_cast<int>(m.cols());
    for (int pass = 0; pass < 2; ++pass) {
        for (int c = 0; c < n; ++c) {
            for (int prev = 0; prev < c; ++prev) {
                m.col(c) -= m.col(prev).dot(m.col(c)) * m.col(prev);
            }
            const double norm = m.col(c).norm();
            if (norm < 1e-12) {
                throw std::runtime_error("orthonormalize_columns: dependent columns");
            }
            m.col(c) /= norm;
        }
    }
}

}  // namespace bellcomm
