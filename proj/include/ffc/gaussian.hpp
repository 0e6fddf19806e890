#pragma once

#include <Eigen/QR>
#include <Eigen/SVD>

#include "fock.hpp"
#include "rng.hpp"

namespace ffc {
namespace gaussian {

// point on O(2k); haar_so always returns the det = +1 component
struct OrthogonalPoint {
    RealMatrix R;
    int det_sign = +1;

    OrthogonalPoint(RealMatrix r, int expected_sign = 0) : R(std::move(r)) {
        if (R.rows() != R.cols() || R.rows() % 2 != 0)
            throw std::invalid_argument("OrthogonalPoint: even square matrix required");
        if ((R * R.transpose() - RealMatrix::Identity(R.rows(), R.cols())).cwiseAbs().maxCoeff() >=
            1e-12)
            throw std::invalid_argument("OrthogonalPoint: not orthogonal");
        double det = R.determinant();
        det_sign = det > 0 ? +1 : -1;
        if (std::abs(det - det_sign) > 1e-10)
            throw std::invalid_argument("OrthogonalPoint: determinant not +-1");
        if (expected_sign != 0 && det_sign != expected_sign)
            throw std::invalid_argument("OrthogonalPoint: unexpected determinant sign");
    }
};

// QR of a Gaussian matrix with R-diagonal sign fixing gives Haar on O(2k);
// a flip of the last column moves the det = -1 component onto SO(2k)
inline OrthogonalPoint haar_so(int k2, RngStream& stream) {
    if (k2 < 2 || k2 % 2 != 0) throw std::invalid_argument("haar_so: even dimension >= 2 required");
    RealMatrix G(k2, k2);
    for (int r = 0; r < k2; ++r)
        for (int c = 0; c < k2; ++c) G(r, c) = stream.next_normal();
    Eigen::HouseholderQR<RealMatrix> qr(G);
    RealMatrix Q = qr.householderQ();
    RealMatrix Rm = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int c = 0; c < k2; ++c)
        if (Rm(c, c) < 0) Q.col(c) = -Q.col(c);
    if (Q.determinant() < 0) Q.col(k2 - 1) = -Q.col(k2 - 1);
    return OrthogonalPoint(std::move(Q), +1);
}

// complex k x k blocks of T R T^{-1} with T = [[1, i1],[1, -i1]]/2; rows/cols
// of R are ordered (odd Majorana modes; even Majorana modes)
struct BogoliubovBlocks {
    Matrix A, B;

    BogoliubovBlocks(Matrix a, Matrix b, double tol = 1e-10) : A(std::move(a)), B(std::move(b)) {
        const auto k = A.rows();
        if (A.cols() != k || B.rows() != k || B.cols() != k)
            throw std::invalid_argument("BogoliubovBlocks: square blocks of equal size required");
        if (max_abs(A * A.adjoint() + B * B.adjoint() - Matrix::Identity(k, k)) >= tol ||
            max_abs(A * B.transpose() + B * A.transpose()) >= tol)
            throw std::invalid_argument("BogoliubovBlocks: unitarity constraints violated");
    }

    int k() const { return static_cast<int>(A.rows()); }
};

inline BogoliubovBlocks bogoliubov_blocks(const OrthogonalPoint& pt) {
    const int k = static_cast<int>(pt.R.rows()) / 2;
    Matrix R11 = pt.R.topLeftCorner(k, k).cast<cxd>();
    Matrix R12 = pt.R.topRightCorner(k, k).cast<cxd>();
    Matrix R21 = pt.R.bottomLeftCorner(k, k).cast<cxd>();
    Matrix R22 = pt.R.bottomRightCorner(k, k).cast<cxd>();
    const cxd im(0, 1);
    return BogoliubovBlocks(0.5 * (R11 + im * R21 - im * R12 + R22),
                            0.5 * (R11 + im * R21 + im * R12 - R22));
}

// pseudo-permutation C with C^k = -1: cyclic shift with a -1 corner entry
inline RealMatrix eta_permutation(int k) {
    RealMatrix C = RealMatrix::Zero(k, k);
    for (int m = 0; m + 1 < k; ++m) C(m, m + 1) = 1.0;
    C(k - 1, 0) = -1.0;
    return C;
}

// boundary blocks of the cyclic-trace state: A = -(C-1)/2, B = -(C+1)/2
inline BogoliubovBlocks eta_blocks(int k) {
    if (k < 1) throw std::invalid_argument("eta_blocks: k >= 1");
    RealMatrix C = eta_permutation(k);
    RealMatrix I = RealMatrix::Identity(k, k);
    return BogoliubovBlocks((-0.5 * (C - I)).cast<cxd>(), (-0.5 * (C + I)).cast<cxd>());
}

// two-site boundary blocks of the replicated on-site reference state
inline BogoliubovBlocks zero_blocks(int k) {
    if (k < 1) throw std::invalid_argument("zero_blocks: k >= 1");
    Matrix A(2 * k, 2 * k), B(2 * k, 2 * k);
    Matrix I = Matrix::Identity(k, k);
    const cxd im(0, 1);
    A << 0.5 * I, 0.5 * im * I, -0.5 * im * I, -0.5 * I;
    B << 0.5 * I, 0.5 * im * I, 0.5 * im * I, 0.5 * I;
    return BogoliubovBlocks(std::move(A), std::move(B));
}

enum class OverlapKind { e, eta, zero };

// squared coherent-state overlaps; pure determinants, no square-root branch
inline cxd omega_sq(OverlapKind which, const BogoliubovBlocks& blocks) {
    const int k = blocks.k();
    switch (which) {
        case OverlapKind::e:
            return blocks.A.determinant();
        case OverlapKind::eta: {
            BogoliubovBlocks eb = eta_blocks(k);
            return (eb.A.adjoint() * blocks.A + eb.B.transpose() * blocks.B.conjugate())
                .determinant();
        }
        case OverlapKind::zero:
            return ((blocks.A.conjugate() - blocks.B) * (blocks.A.conjugate() + blocks.B))
                .determinant();
    }
    throw std::logic_error("omega_sq: bad kind");
}

struct ZMatrix {
    Matrix Z;

    explicit ZMatrix(Matrix z, double tol = 1e-10) : Z(std::move(z)) {
        if (max_abs(Z + Z.transpose()) >= tol * std::max(1.0, max_abs(Z)))
            throw std::invalid_argument("ZMatrix: not antisymmetric");
    }
};

inline ZMatrix z_from_blocks(const BogoliubovBlocks& blocks, double singular_tol = 1e-8) {
    Eigen::JacobiSVD<Matrix> svd(blocks.A);
    if (svd.singularValues().minCoeff() < singular_tol)
        throw resample_signal("thouless: singular A block, redraw");
    return ZMatrix(-blocks.A.partialPivLu().solve(blocks.B));
}

// pairing ladder operators on m qubits: d_q = (mu_{2q-1} + i mu_{2q})/2
inline PauliSum ladder_creator(int q, int m) {
    PauliSum d(m);
    d += fock::jw_mode(2 * q - 1, m) * PauliString(m, cxd(0.5, 0));
    d += fock::jw_mode(2 * q, m) * PauliString(m, cxd(0, -0.5));
    return d;
}

// exp(1/2 sum Z_mn d+_m d+_n)|vac>, normalized, vacuum amplitude positive real.
// The exponent raises particle number by two, so the series terminates.
inline PureState thouless_state(const BogoliubovBlocks& blocks) {
    const int k = blocks.k();
    ZMatrix zm = z_from_blocks(blocks);
    FockLayout lay(k, 1, ModeKind::majorana);
    PauliSum raise(k);
    for (int m = 0; m < k; ++m)
        for (int n = 0; n < k; ++n) {
            if (zm.Z(m, n) == cxd(0, 0)) continue;
            raise += ladder_creator(m + 1, k) * ladder_creator(n + 1, k) * (0.5 * zm.Z(m, n));
        }
    raise.simplify();
    Vector state = Vector::Zero(lay.dim());
    state[0] = 1.0;
    Vector term = state;
    for (int order = 1; order <= k / 2 + 1; ++order) {
        term = raise.apply(term) / double(order);
        if (term.norm() < 1e-300) break;
        state += term;
    }
    state /= state.norm();
    // vacuum amplitude is 1/norm > 0 already; guard against a stray phase anyway
    cxd v0 = state[0];
    if (std::abs(v0) > 1e-14) state *= std::conj(v0) / std::abs(v0);
    return PureState(std::move(state), lay);
}

// annihilators of the rotated vacuum: f_m = sum_n A_mn d_n + B_mn d+_n
inline PauliSum rotated_annihilator(const BogoliubovBlocks& blocks, int m) {
    const int k = blocks.k();
    PauliSum f(k);
    for (int n = 0; n < k; ++n) {
        PauliSum d = ladder_creator(n + 1, k).adjoint();
        if (blocks.A(m, n) != cxd(0, 0)) f += d * blocks.A(m, n);
        if (blocks.B(m, n) != cxd(0, 0)) f += ladder_creator(n + 1, k) * blocks.B(m, n);
    }
    f.simplify();
    return f;
}

// Gaussianity witness Lambda = sum_a mu_a ot mu_a on the doubled space
inline FockOperator lambda_op(int n_maj) {
    if (n_maj < 2 || n_maj % 2 != 0) throw std::invalid_argument("lambda_op: even mode count");
    const int m = n_maj / 2;  // qubits per copy
    FockLayout lay(m, 2, ModeKind::majorana);
    PauliSum lam(2 * m);
    for (int a = 1; a <= n_maj; ++a) {
        PauliString s = fock::jw_mode(a, m);
        PauliString both(2 * m, s.coeff * s.coeff);
        both.x = s.x | (s.x << m);
        both.z = s.z | (s.z << m);
        lam += both;
    }
    return FockOperator(lam.to_dense(), lay, true);
}

inline double lambda_residual(const FockOperator& lam, const Vector& v) {
    Vector w(v.size() * v.size());
    for (std::int64_t i = 0; i < v.size(); ++i) w.segment(i * v.size(), v.size()) = v[i] * v;
    return (lam.matrix * w).norm();
}

struct EmbeddingReport {
    double lambda_2k_residual = 0.0;   // Gaussianity of v itself
    double number_residual = 0.0;      // || N (v ot v) - k (v ot v) ||
    double lambda_4k_residual = 0.0;   // Gaussianity of v ot v
    bool passed(double tol = 1e-10) const {
        return lambda_2k_residual < tol && number_residual < tol && lambda_4k_residual < tol;
    }
};

// App-style embedding: a Majorana-Gaussian v on 2k modes doubles to a
// half-filled, Gaussian state on 4k modes under the paired-mode convention
// c_a = (mu_a ot 1 + i * (parity ot mu_a))/2
inline EmbeddingReport embedding_check(const PureState& v) {
    const int kq = v.layout.n_qubits();
    EmbeddingReport rep;
    rep.lambda_2k_residual = lambda_residual(lambda_op(2 * kq), v.amplitudes);
    const int nq = 2 * kq;
    Vector w(v.amplitudes.size() * v.amplitudes.size());
    for (std::int64_t i = 0; i < v.amplitudes.size(); ++i)
        w.segment(i * v.amplitudes.size(), v.amplitudes.size()) = v.amplitudes[i] * v.amplitudes;
    PauliSum N(nq);
    for (int a = 1; a <= 2 * kq; ++a) {
        PauliSum c(nq);
        c += fock::jw_mode(a, nq) * PauliString(nq, cxd(0.5, 0));
        c += fock::jw_mode(2 * kq + a, nq) * PauliString(nq, cxd(0, 0.5));
        N += c.adjoint() * c;
    }
    N.simplify();
    Vector Nw = N.apply(w);
    rep.number_residual = (Nw - double(kq) * w).norm();
    rep.lambda_4k_residual = lambda_residual(lambda_op(4 * kq), w);
    return rep;
}

}  // namespace gaussian
}  // namespace ffc
