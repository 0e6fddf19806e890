#pragma once

#include "types.hpp"

#ifdef FFC_USE_LAPACKE
#include <lapacke.h>
#endif

namespace ffc {

struct EigenSystem {
    RealVector values;  // ascending
    Matrix vectors;     // orthonormal columns
};

// Full Hermitian eigendecomposition. Real-symmetric inputs (every effective
// Hamiltonian here is one) are routed to the real divide-and-conquer solver.
inline EigenSystem hermitian_eigensystem(const Matrix& H) {
    const std::int64_t n = H.rows();
    if (H.cols() != n) throw std::invalid_argument("hermitian_eigensystem: square matrix required");
    double scale = max_abs(H);
    bool real_sym = H.imag().cwiseAbs().maxCoeff() <= 1e-14 * std::max(scale, 1.0);

#ifdef FFC_USE_LAPACKE
    if (real_sym) {
        RealMatrix A = H.real();
        RealVector w(n);
        int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n), A.data(),
                                  static_cast<lapack_int>(n), w.data());
        if (info != 0) throw std::runtime_error("dsyevd failed, info=" + std::to_string(info));
        return {w, A.cast<cxd>()};
    }
    Matrix A = H;
    RealVector w(n);
    int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(n),
                              reinterpret_cast<lapack_complex_double*>(A.data()),
                              static_cast<lapack_int>(n), w.data());
    if (info != 0) throw std::runtime_error("zheevd failed, info=" + std::to_string(info));
    return {w, A};
#else
    if (real_sym) {
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(H.real());
        if (es.info() != Eigen::Success)
            throw std::runtime_error("eigensolver failed");
        return {es.eigenvalues(), es.eigenvectors().cast<cxd>()};
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
    return {es.eigenvalues(), es.eigenvectors()};
#endif
}

}  // namespace ffc
