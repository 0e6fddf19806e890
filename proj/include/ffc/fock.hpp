#pragma once

#include <utility>
#include <vector>

#include "pauli.hpp"
#include "types.hpp"

namespace ffc {
namespace fock {

// ---- single-replica Jordan-Wigner strings -------------------------------
//
// Within one replica of M qubits, Majorana modes are numbered 1..2M with
// mu_{2q-1} = Z^(q-1) X, mu_{2q} = Z^(q-1) Y on qubit q. A Majorana site
// i in 1..2L with flavor alpha maps to mode 2*((j-1)N+alpha) - (i odd ? 1:0),
// j = ceil(i/2), so flavors sit innermost.

inline PauliString jw_mode(int m, int M) {
    if (m < 1 || m > 2 * M) throw std::out_of_range("jw_mode: Majorana index out of range");
    int q = (m + 1) / 2;  // 1-based qubit
    PauliString s(M);
    for (int p = 0; p < q - 1; ++p) s.set(p, PAULI_Z);
    s.set(q - 1, m % 2 == 1 ? PAULI_X : PAULI_Y);
    return s;
}

inline int mode_index(const FockLayout& lay, int i, int alpha) {
    int j = (i + 1) / 2;
    int q = (j - 1) * lay.n_flavors + alpha;  // 1-based qubit within replica
    return 2 * q - (i % 2 == 1 ? 1 : 0);
}

// embed a single-replica string into replica a of the full layout;
// even replicas carry the complex-conjugated copy
inline PauliString embed_replica(const PauliString& s, int a, const FockLayout& lay) {
    if (a < 1 || a > lay.n_replicas) throw std::out_of_range("embed_replica: bad replica index");
    PauliString r(lay.n_qubits(), s.coeff);
    int off = (a - 1) * lay.qubits_per_replica();
    r.x = s.x << off;
    r.z = s.z << off;
    return a % 2 == 0 ? r.conjugated() : r;
}

// gamma-tilde: gamma_i embedded in replica a (conjugated when a is even)
inline PauliString gamma_tilde(int i, int a, const FockLayout& lay, int alpha = 1) {
    if (i < 1 || i > lay.n_majorana_sites())
        throw std::out_of_range("gamma_tilde: Majorana site out of range");
    if (alpha < 1 || alpha > lay.n_flavors) throw std::out_of_range("gamma_tilde: bad flavor");
    return embed_replica(jw_mode(mode_index(lay, i, alpha), lay.qubits_per_replica()), a, lay);
}

// replica parity Gamma-tilde^b = (-i)^M prod_j gamma_tilde_j^b (all modes, flavors included)
inline PauliString replica_parity(int b, const FockLayout& lay) {
    int M = lay.qubits_per_replica();
    PauliString s(lay.n_qubits());
    cxd c = 1.0;
    for (int p = 0; p < M; ++p) c *= cxd(0, -1);
    s.coeff = c;
    for (int i = 1; i <= lay.n_majorana_sites(); ++i)
        for (int al = 1; al <= lay.n_flavors; ++al) s = s * gamma_tilde(i, b, lay, al);
    return s;
}

// Klein strings: prefix products prod_{b<a} Gamma-tilde^b, one per replica
struct KleinCache {
    std::vector<PauliString> prefix;  // prefix[a-1] multiplies gamma_tilde in replica a
    explicit KleinCache(const FockLayout& lay) {
        prefix.reserve(lay.n_replicas);
        PauliString acc(lay.n_qubits());
        for (int a = 1; a <= lay.n_replicas; ++a) {
            prefix.push_back(acc);
            acc = acc * replica_parity(a, lay);
        }
    }
};

inline PauliString gamma_bar(int i, int a, const FockLayout& lay, const KleinCache& kc,
                             int alpha = 1) {
    return kc.prefix[a - 1] * gamma_tilde(i, a, lay, alpha);
}

inline PauliString gamma_bar(int i, int a, const FockLayout& lay, int alpha = 1) {
    PauliString s = gamma_tilde(i, a, lay, alpha);
    for (int b = a - 1; b >= 1; --b) s = replica_parity(b, lay) * s;
    return s;
}

// local chirality Gamma-bar_i = (-i)^k prod_a gamma_bar_i^a
inline PauliString chirality_string(int i, const FockLayout& lay, const KleinCache& kc) {
    int k = lay.k();
    PauliString s(lay.n_qubits());
    for (int p = 0; p < k; ++p) s.coeff *= cxd(0, -1);
    for (int a = 1; a <= lay.n_replicas; ++a) s = s * gamma_bar(i, a, lay, kc);
    return s;
}

// replicated annihilator c-tilde_i^a = (gt_{2i-1} + i gt_{2i})/2 (transposed copy on even a)
inline PauliSum c_tilde(int i, int a, const FockLayout& lay, int alpha = 1) {
    PauliSum s(lay.n_qubits());
    s += gamma_tilde(2 * i - 1, a, lay, alpha) * PauliString(lay.n_qubits(), cxd(0.5, 0));
    s += gamma_tilde(2 * i, a, lay, alpha) * PauliString(lay.n_qubits(), cxd(0, 0.5));
    return s;
}

// Klein-dressed annihilator c-bar_i^a
inline PauliSum c_bar(int i, int a, const FockLayout& lay, const KleinCache& kc, int alpha = 1) {
    PauliSum s(lay.n_qubits());
    s += gamma_bar(2 * i - 1, a, lay, kc, alpha) * PauliString(lay.n_qubits(), cxd(0.5, 0));
    s += gamma_bar(2 * i, a, lay, kc, alpha) * PauliString(lay.n_qubits(), cxd(0, 0.5));
    return s;
}

// on-site replica number operator n_i = sum_a cbar_i^a+ cbar_i^a
inline PauliSum number_op(int i, const FockLayout& lay, const KleinCache& kc) {
    PauliSum n(lay.n_qubits());
    for (int a = 1; a <= lay.n_replicas; ++a)
        for (int al = 1; al <= lay.n_flavors; ++al) {
            PauliSum c = c_bar(i, a, lay, kc, al);
            n += c.adjoint() * c;
        }
    n.simplify();
    return n;
}

// replicated parity-flip gate (Q ot Q*)^{ot k} for Q = gamma_i: plain product of
// the replica embeddings (modes on different replicas commute, order immaterial)
inline PauliString parity_flip_gate(int i, const FockLayout& lay) {
    PauliString s(lay.n_qubits());
    for (int a = 1; a <= lay.n_replicas; ++a) s = s * gamma_tilde(i, a, lay);
    return s;
}

// W_k = prod_{a odd} exp(i pi/4 Gamma-tilde^a); each factor is (1 + i Gamma)/sqrt(2)
inline PauliSum basis_change_w(const FockLayout& lay) {
    PauliSum w = identity_sum(lay.n_qubits());
    const double inv_sqrt2 = 0.70710678118654752440;
    for (int a = 1; a <= lay.n_replicas; a += 2) {
        PauliSum factor(lay.n_qubits());
        factor += PauliString(lay.n_qubits(), cxd(inv_sqrt2, 0));
        factor += replica_parity(a, lay) * PauliString(lay.n_qubits(), cxd(0, inv_sqrt2));
        w = w * factor;
    }
    return w;
}

// ---- spec-facing dense constructors --------------------------------------

inline FockOperator majorana(int i, int L) {
    FockLayout lay(L, 1, ModeKind::majorana);
    if (i < 1 || i > 2 * L) throw std::out_of_range("majorana: index out of range");
    return FockOperator(PauliSum(jw_mode(i, L)).to_dense(), lay, true);
}

inline FockOperator replica_mode(int i, int a, const FockLayout& lay) {
    if (lay.mode_kind != ModeKind::majorana)
        throw std::invalid_argument("replica_mode: majorana layout required");
    return FockOperator(PauliSum(gamma_tilde(i, a, lay)).to_dense(), lay, true);
}

inline FockOperator klein_mode(int i, int a, const FockLayout& lay) {
    if (lay.mode_kind != ModeKind::majorana)
        throw std::invalid_argument("klein_mode: majorana layout required");
    KleinCache kc(lay);
    return FockOperator(PauliSum(gamma_bar(i, a, lay, kc)).to_dense(), lay, true);
}

inline FockOperator chirality(int i, const FockLayout& lay) {
    KleinCache kc(lay);
    return FockOperator(PauliSum(chirality_string(i, lay, kc)).to_dense(), lay, true);
}

inline std::pair<FockOperator, FockOperator> complex_modes(int i, const FockLayout& lay) {
    if (i < 1 || i > lay.n_phys_sites) throw std::out_of_range("complex_modes: bad site");
    KleinCache kc(lay);
    PauliSum c = c_bar(i, 1, lay, kc);
    return {FockOperator(c.to_dense(), lay), FockOperator(c.adjoint().to_dense(), lay)};
}

}  // namespace fock
}  // namespace ffc
