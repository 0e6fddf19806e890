#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ffc {

using cxd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

constexpr double kHermTol = 1e-12;

// thrown when a requested instance would exceed the dense-matrix budget
struct resource_cap_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// thrown when the zero/excited eigenvalue split is not clean enough to certify a kernel
struct ambiguous_kernel_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// raised by the Thouless construction on (measure-zero) singular draws; callers redraw
struct resample_signal : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ModeKind { majorana, complex_fermion };

// Replicated lattice bookkeeping. Qubits are replica-major: replica 1 holds
// qubits 0..M-1 (site-major, flavor innermost), replica 2 the next M, and so on,
// with M = L*N qubits per replica. Qubit 0 is the leftmost Kronecker factor.
struct FockLayout {
    int n_phys_sites = 1;    // L
    int n_replicas = 2;      // 2k, even
    int n_flavors = 1;       // N
    ModeKind mode_kind = ModeKind::majorana;

    FockLayout() = default;
    // replicas = 1 is allowed for bare single-copy operators; replicated layouts
    // must have an even count >= 2
    FockLayout(int L, int replicas, ModeKind kind, int N = 1)
        : n_phys_sites(L), n_replicas(replicas), n_flavors(N), mode_kind(kind) {
        if (L < 1 || N < 1) throw std::invalid_argument("FockLayout: L and N must be >= 1");
        if (replicas < 1 || (replicas > 1 && replicas % 2 != 0))
            throw std::invalid_argument("FockLayout: replica count must be 1 or even");
    }

    bool replicated() const { return n_replicas >= 2 && n_replicas % 2 == 0; }

    int qubits_per_replica() const { return n_phys_sites * n_flavors; }
    int n_qubits() const { return n_replicas * qubits_per_replica(); }
    std::int64_t dim() const { return std::int64_t(1) << n_qubits(); }
    int k() const { return n_replicas / 2; }
    // Majorana sites per replica (2L for the matchgate case)
    int n_majorana_sites() const { return 2 * n_phys_sites; }

    // qubit index (0-based) of (replica a, physical site j, flavor alpha), all 1-based
    int qubit(int a, int j, int alpha = 1) const {
        return (a - 1) * qubits_per_replica() + (j - 1) * n_flavors + (alpha - 1);
    }

    bool operator==(const FockLayout& o) const {
        return n_phys_sites == o.n_phys_sites && n_replicas == o.n_replicas &&
               n_flavors == o.n_flavors && mode_kind == o.mode_kind;
    }
};

// Dense many-body operator together with its layout.
struct FockOperator {
    Matrix matrix;
    FockLayout layout;
    bool hermitian_hint = false;

    FockOperator() = default;
    FockOperator(Matrix m, FockLayout lay, bool herm = false)
        : matrix(std::move(m)), layout(lay), hermitian_hint(herm) {
        if (matrix.rows() != matrix.cols() || matrix.rows() != layout.dim())
            throw std::invalid_argument("FockOperator: matrix dimension does not match layout");
        if (hermitian_hint && (matrix - matrix.adjoint()).cwiseAbs().maxCoeff() >= kHermTol)
            throw std::invalid_argument("FockOperator: hermitian_hint set on a non-Hermitian matrix");
    }

    std::int64_t dim() const { return matrix.rows(); }
};

struct PureState {
    Vector amplitudes;
    FockLayout layout;

    PureState() = default;
    PureState(Vector v, FockLayout lay) : amplitudes(std::move(v)), layout(lay) {
        if (amplitudes.size() != layout.dim())
            throw std::invalid_argument("PureState: length does not match layout");
    }

    double norm() const { return amplitudes.norm(); }
};

inline double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

}  // namespace ffc
