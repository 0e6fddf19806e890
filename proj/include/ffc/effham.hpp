#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "eig.hpp"
#include "fock.hpp"
#include "liealg.hpp"
#include "product_basis.hpp"

namespace ffc {
namespace effham {

using liealg::EnsembleKind;

inline bool is_majorana_kind(EnsembleKind k) {
    return k == EnsembleKind::MG || k == EnsembleKind::MGstar || k == EnsembleKind::MG_flavored;
}
inline bool is_flavored(EnsembleKind k) {
    return k == EnsembleKind::MG_flavored || k == EnsembleKind::NC_flavored;
}

// Ensemble description: kind, flavor count, and the bond graph. Matchgate
// bonds pair Majorana sites 1..2L, number-conserving bonds pair physical
// sites 1..L. The graph must be connected.
struct EnsembleSpec {
    EnsembleKind kind = EnsembleKind::MG;
    int n_flavors = 1;
    std::vector<std::pair<int, int>> bonds;

    static EnsembleSpec chain(EnsembleKind kind, int L, int n_flavors = 1) {
        EnsembleSpec s;
        s.kind = kind;
        s.n_flavors = n_flavors;
        int n = is_majorana_kind(kind) ? 2 * L : L;
        for (int i = 1; i < n; ++i) s.bonds.emplace_back(i, i + 1);
        s.validate(L);
        return s;
    }

    static EnsembleSpec all_to_all(EnsembleKind kind, int L, int n_flavors = 1) {
        EnsembleSpec s;
        s.kind = kind;
        s.n_flavors = n_flavors;
        int n = is_majorana_kind(kind) ? 2 * L : L;
        for (int i = 1; i <= n; ++i)
            for (int j = i + 1; j <= n; ++j) s.bonds.emplace_back(i, j);
        s.validate(L);
        return s;
    }

    int n_bond_sites(int L) const { return is_majorana_kind(kind) ? 2 * L : L; }

    void validate(int L) const {
        if (n_flavors < 1) throw std::invalid_argument("EnsembleSpec: n_flavors >= 1");
        if (is_flavored(kind) && n_flavors < 2)
            throw std::invalid_argument("EnsembleSpec: flavored ensembles need N >= 2");
        int n = n_bond_sites(L);
        if (n == 1) return;
        // connectivity via union-find
        std::vector<int> parent(n + 1);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (auto [i, j] : bonds) {
            if (i < 1 || j < 1 || i > n || j > n || i == j)
                throw std::invalid_argument("EnsembleSpec: bad bond");
            parent[find(i)] = find(j);
        }
        for (int i = 2; i <= n; ++i)
            if (find(i) != find(1))
                throw std::invalid_argument("EnsembleSpec: bond graph not connected");
    }

    FockLayout layout(int k, int L) const {
        return FockLayout(L, 2 * k,
                          is_majorana_kind(kind) ? ModeKind::majorana : ModeKind::complex_fermion,
                          n_flavors);
    }
};

enum class TermId { mg, s_on_site, r_hop, c_hop };

// ---- Liouvillian (adjoint operator) sums ---------------------------------

inline PauliSum liouvillian_sum(const EnsembleSpec& spec, TermId term, int i, int j,
                                const FockLayout& lay) {
    PauliSum out(lay.n_qubits());
    const int reps = lay.n_replicas;
    if (term == TermId::mg) {
        if (!is_majorana_kind(spec.kind)) throw std::invalid_argument("mg term on a U(1) ensemble");
        for (int a = 1; a <= reps; ++a)
            for (int al = 1; al <= lay.n_flavors; ++al)
                out += fock::gamma_tilde(i, a, lay, al) * fock::gamma_tilde(j, a, lay, al) *
                       PauliString(lay.n_qubits(), cxd(0, 1));
        out.simplify();
        return out;
    }
    if (is_majorana_kind(spec.kind)) throw std::invalid_argument("U(1) term on a matchgate ensemble");
    for (int a = 1; a <= reps; ++a)
        for (int al = 1; al <= lay.n_flavors; ++al) {
            PauliSum ci = fock::c_tilde(i, a, lay, al);
            switch (term) {
                case TermId::s_on_site: {
                    out += ci.adjoint() * ci;
                    out += identity_sum(lay.n_qubits(), cxd(-0.5, 0));
                    break;
                }
                case TermId::r_hop: {
                    PauliSum hop = ci.adjoint() * fock::c_tilde(j, a, lay, al);
                    out += hop;
                    out += hop.adjoint();
                    break;
                }
                case TermId::c_hop: {
                    PauliSum hop = ci.adjoint() * fock::c_tilde(j, a, lay, al) * cxd(0, 1);
                    out += hop;
                    out += hop.adjoint();
                    break;
                }
                default:
                    throw std::invalid_argument("bad term id");
            }
        }
    out.simplify();
    return out;
}

inline FockOperator liouvillian(const EnsembleSpec& spec, TermId term, int i, int j, int k, int L) {
    FockLayout lay = spec.layout(k, L);
    return FockOperator(liouvillian_sum(spec, term, i, j, lay).to_dense(), lay, true);
}

// ---- effective Hamiltonian ------------------------------------------------

inline int default_qubit_cap() { return 14; }

inline FockOperator effective_hamiltonian(const EnsembleSpec& spec, int k, int L,
                                          int qubit_cap = default_qubit_cap()) {
    spec.validate(L);
    FockLayout lay = spec.layout(k, L);
    if (lay.n_qubits() > qubit_cap)
        throw resource_cap_error("effective_hamiltonian: " + std::to_string(lay.n_qubits()) +
                                 " qubits exceeds cap " + std::to_string(qubit_cap));
    Matrix P = Matrix::Zero(lay.dim(), lay.dim());
    auto add_sq = [&P](const PauliSum& t) {
        PauliSum sq = t * t;
        sq.add_to_dense(P);
    };
    if (is_majorana_kind(spec.kind)) {
        for (auto [i, j] : spec.bonds) add_sq(liouvillian_sum(spec, TermId::mg, i, j, lay));
    } else {
        for (int i = 1; i <= L; ++i) add_sq(liouvillian_sum(spec, TermId::s_on_site, i, i, lay));
        for (auto [i, j] : spec.bonds) {
            add_sq(liouvillian_sum(spec, TermId::r_hop, i, j, lay));
            add_sq(liouvillian_sum(spec, TermId::c_hop, i, j, lay));
        }
    }
    return FockOperator(std::move(P), lay, true);
}

// ---- kernel extraction -----------------------------------------------------

struct TolerancePolicy {
    double zero_scale = 100.0;     // tau = dim * eps * ||P||_2 * zero_scale
    double min_gap_ratio = 1e3;
};

struct SpectrumSplit {
    std::vector<double> zero_cluster;
    double first_excited = 0.0;
    double gap_ratio = 0.0;
    double tau = 0.0;
    bool all_zero = false;  // degenerate-but-valid: the operator vanishes
};

struct KernelResult {
    Matrix basis;  // orthonormal columns spanning the certified kernel
    SpectrumSplit split;
    FockLayout layout;

    int dim() const { return static_cast<int>(basis.cols()); }

    std::vector<PureState> states() const {
        std::vector<PureState> out;
        out.reserve(basis.cols());
        for (int c = 0; c < basis.cols(); ++c) out.emplace_back(basis.col(c), layout);
        return out;
    }
};

inline KernelResult kernel_basis(const FockOperator& P, TolerancePolicy policy = {}) {
    EigenSystem es = hermitian_eigensystem(P.matrix);
    const std::int64_t n = es.values.size();
    double lam_max = std::max(std::abs(es.values(0)), std::abs(es.values(n - 1)));
    SpectrumSplit split;
    split.tau = static_cast<double>(n) * std::numeric_limits<double>::epsilon() *
                std::max(lam_max, 1.0) * policy.zero_scale;
    std::int64_t nz = 0;
    while (nz < n && es.values(nz) < split.tau) ++nz;
    split.zero_cluster.assign(es.values.data(), es.values.data() + nz);
    if (nz == n) {
        split.all_zero = true;
        split.first_excited = 0.0;
        split.gap_ratio = std::numeric_limits<double>::infinity();
    } else {
        split.first_excited = es.values(nz);
        double zmax = 0.0;
        for (double v : split.zero_cluster) zmax = std::max(zmax, std::abs(v));
        double floor = std::numeric_limits<double>::epsilon() * std::max(lam_max, 1.0);
        split.gap_ratio = split.first_excited / std::max(zmax, floor);
        if (nz > 0 && split.gap_ratio < policy.min_gap_ratio)
            throw ambiguous_kernel_error("kernel_basis: gap ratio " +
                                         std::to_string(split.gap_ratio) + " below threshold");
    }
    KernelResult res;
    res.basis = es.vectors.leftCols(nz);
    res.split = std::move(split);
    res.layout = P.layout;
    return res;
}

// ---- MG* restriction and chirality ----------------------------------------

// orthonormal basis of the +1 eigenspace of a Hermitian involution restricted
// to the span of `basis`
inline Matrix restrict_to_plus_sector(const Matrix& basis, const Matrix& gate, double tol = 1e-8) {
    Matrix M = basis.adjoint() * gate * basis;
    EigenSystem es = hermitian_eigensystem(M);
    for (std::int64_t i = 0; i < es.values.size(); ++i)
        if (std::abs(std::abs(es.values(i)) - 1.0) > tol)
            throw std::runtime_error("restriction gate eigenvalue " +
                                     std::to_string(es.values(i)) + " not +-1 on the kernel");
    std::int64_t first_plus = 0;
    while (first_plus < es.values.size() && es.values(first_plus) < 0) ++first_plus;
    return basis * es.vectors.rightCols(es.values.size() - first_plus);
}

inline KernelResult mgstar_restrict(const KernelResult& mg_kernel, int k, int L) {
    FockLayout lay = mg_kernel.layout;
    Matrix gate = PauliSum(fock::parity_flip_gate(1, lay)).to_dense();
    KernelResult res = mg_kernel;
    res.basis = restrict_to_plus_sector(mg_kernel.basis, gate);
    return res;
}

// chirality-resolved kernel: rotate the basis into +-1 eigenvectors of Gamma-bar_1
struct ChiralitySplit {
    Matrix plus;
    Matrix minus;
    double max_offdiag = 0.0;
};

inline ChiralitySplit chirality_resolve(const KernelResult& kernel) {
    const FockLayout& lay = kernel.layout;
    fock::KleinCache kc(lay);
    Matrix g = PauliSum(fock::chirality_string(1, lay, kc)).to_dense();
    Matrix M = kernel.basis.adjoint() * g * kernel.basis;
    EigenSystem es = hermitian_eigensystem(M);
    ChiralitySplit out;
    std::int64_t first_plus = 0;
    while (first_plus < es.values.size() && es.values(first_plus) < 0) ++first_plus;
    Matrix rotated = kernel.basis * es.vectors;
    out.minus = rotated.leftCols(first_plus);
    out.plus = rotated.rightCols(es.values.size() - first_plus);
    for (std::int64_t i = 0; i < es.values.size(); ++i)
        out.max_offdiag = std::max(out.max_offdiag, std::abs(std::abs(es.values(i)) - 1.0));
    return out;
}

// ---- structural checks -----------------------------------------------------

// max over bonds of || P_ij - (c0 - c1 C_ij) ||_max; NC variant is evaluated on
// the half-filled sector of the two sites involved
inline double casimir_identity_residual(const EnsembleSpec& spec, int k, int L,
                                        std::pair<int, int> bond) {
    FockLayout lay = spec.layout(k, L);
    fock::KleinCache kc(lay);
    auto [i, j] = bond;
    const std::int64_t d = lay.dim();
    if (is_majorana_kind(spec.kind)) {
        PauliSum lop = liouvillian_sum(spec, TermId::mg, i, j, lay);
        Matrix P = (lop * lop).to_dense();
        PauliSum cas(lay.n_qubits());
        for (int a = 1; a <= 2 * k; ++a)
            for (int b = a + 1; b <= 2 * k; ++b) {
                PauliSum Jij(lay.n_qubits());
                for (int site : {i, j})
                    Jij += fock::gamma_bar(site, a, lay, kc) * fock::gamma_bar(site, b, lay, kc) *
                           PauliString(lay.n_qubits(), cxd(0, -0.5));
                cas += Jij * Jij;
            }
        cas.simplify();
        Matrix rhs = -4.0 * cas.to_dense();
        rhs += 4.0 * double(k) * double(k) * Matrix::Identity(d, d);
        return max_abs(P - rhs);
    }
    PauliSum lr = liouvillian_sum(spec, TermId::r_hop, i, j, lay);
    PauliSum lc = liouvillian_sum(spec, TermId::c_hop, i, j, lay);
    Matrix P = (lr * lr).to_dense() + (lc * lc).to_dense();
    PauliSum cas(lay.n_qubits());
    for (int a = 1; a <= 2 * k; ++a)
        for (int b = 1; b <= 2 * k; ++b) {
            PauliSum Sab(lay.n_qubits()), Sba(lay.n_qubits());
            for (int site : {i, j}) {
                PauliSum ca = fock::c_bar(site, a, lay, kc), cb = fock::c_bar(site, b, lay, kc);
                Sab += ca.adjoint() * cb;
                Sba += cb.adjoint() * ca;
                if (a == b) {
                    Sab += identity_sum(lay.n_qubits(), cxd(-0.5, 0));
                    Sba += identity_sum(lay.n_qubits(), cxd(-0.5, 0));
                }
            }
            cas += Sab * Sba;
        }
    cas.simplify();
    Matrix rhs = -2.0 * cas.to_dense();
    rhs += 4.0 * double(k) * double(k + 1) * Matrix::Identity(d, d);
    Matrix diff = P - rhs;
    // project both sites to half filling (the number operators are diagonal)
    RealVector ni = fock::number_op(i, lay, kc).to_dense().diagonal().real();
    RealVector nj = fock::number_op(j, lay, kc).to_dense().diagonal().real();
    double worst = 0.0;
    for (std::int64_t r = 0; r < d; ++r) {
        if (std::abs(ni(r) - k) > 1e-9 || std::abs(nj(r) - k) > 1e-9) continue;
        for (std::int64_t c = 0; c < d; ++c) {
            if (std::abs(ni(c) - k) > 1e-9 || std::abs(nj(c) - k) > 1e-9) continue;
            worst = std::max(worst, std::abs(diff(r, c)));
        }
    }
    return worst;
}

struct Lemma1Report {
    double max_residual = 0.0;
    int n_transpositions = 0;
};

// every kernel vector must be fixed by every site transposition; residuals are
// computed in the abstract product basis where swaps are plain permutations
inline Lemma1Report lemma1_check(const KernelResult& kernel) {
    const FockLayout& lay = kernel.layout;
    fock::SiteBasis basis(lay, lay.mode_kind == ModeKind::majorana
                                   ? fock::SiteBasis::Kind::majorana_sites
                                   : fock::SiteBasis::Kind::phys_sites);
    Matrix phi = basis.phi();
    Matrix W = phi.adjoint() * kernel.basis;
    Lemma1Report rep;
    const std::int64_t d = W.rows();
    Matrix PW(W.rows(), W.cols());
    for (int s1 = 1; s1 <= basis.n_sites(); ++s1)
        for (int s2 = s1 + 1; s2 <= basis.n_sites(); ++s2) {
            for (std::int64_t r = 0; r < d; ++r) PW.row(basis.swap_index(r, s1, s2)) = W.row(r);
            double res = (PW - W).colwise().norm().maxCoeff();
            rep.max_residual = std::max(rep.max_residual, res);
            ++rep.n_transpositions;
        }
    return rep;
}

// largest principal angle between two subspaces given by orthonormal bases,
// computed through the sine (stable near zero)
inline double max_principal_angle(const Matrix& B1, const Matrix& B2) {
    Matrix resid = B1 - B2 * (B2.adjoint() * B1);
    Eigen::JacobiSVD<Matrix> svd(resid);
    double s = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
    return std::asin(std::min(1.0, s));
}

struct FlavorEquivalenceRow {
    EnsembleKind flavored_kind;
    int k, n_flavors, L;
    int flavored_dim, plain_dim;
    bool match() const { return flavored_dim == plain_dim; }
};

inline FlavorEquivalenceRow flavor_equivalence(EnsembleKind flavored_kind, int k, int n_flavors,
                                               int L, int qubit_cap = default_qubit_cap()) {
    if (!is_flavored(flavored_kind)) throw std::invalid_argument("flavor_equivalence: flavored kind required");
    EnsembleKind plain_kind =
        flavored_kind == EnsembleKind::MG_flavored ? EnsembleKind::MG : EnsembleKind::NC;
    FlavorEquivalenceRow row{flavored_kind, k, n_flavors, L, 0, 0};
    if (n_flavors == 1) {
        EnsembleSpec plain = EnsembleSpec::chain(plain_kind, L);
        row.flavored_dim = row.plain_dim =
            kernel_basis(effective_hamiltonian(plain, k, L, qubit_cap)).dim();
        return row;
    }
    EnsembleSpec flav = EnsembleSpec::chain(flavored_kind, L, n_flavors);
    row.flavored_dim = kernel_basis(effective_hamiltonian(flav, k, L, qubit_cap)).dim();
    EnsembleSpec plain = EnsembleSpec::chain(plain_kind, L);
    row.plain_dim = kernel_basis(effective_hamiltonian(plain, k * n_flavors, L, qubit_cap)).dim();
    return row;
}

}  // namespace effham
}  // namespace ffc
