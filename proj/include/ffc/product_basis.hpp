#pragma once

#include <vector>

#include "fock.hpp"

namespace ffc {
namespace fock {

// Normal-ordered Fock factorization of the replicated space.
//
// The replicated lattice splits into "sites" carrying mutually anticommuting
// mode groups: Majorana sites with k modes d_{m,s} = (gbar_s^{2m-1} + i gbar_s^{2m})/2
// in the matchgate case, or physical sites with 2k modes cbar_s^a in the
// number-conserving case. Creation monomials over a fixed site-major order
// applied to the joint vacuum give an orthonormal basis; this realizes the
// abstract tensor factorization H_loc^{ot n} in which ferromagnetic product
// states and site permutations are defined.
class SiteBasis {
  public:
    enum class Kind { majorana_sites, phys_sites };

    SiteBasis(const FockLayout& lay, Kind kind) : lay_(lay), kind_(kind) {
        if (lay.n_flavors != 1)
            throw std::invalid_argument("SiteBasis: flavored layouts not supported");
        KleinCache kc(lay);
        int k = lay.k();
        if (kind == Kind::majorana_sites) {
            n_sites_ = lay.n_majorana_sites();
            modes_per_site_ = k;
            for (int s = 1; s <= n_sites_; ++s) {
                std::vector<PauliSum> cr;
                for (int m = 1; m <= k; ++m) {
                    PauliSum d(lay.n_qubits());
                    d += gamma_bar(s, 2 * m - 1, lay, kc) * PauliString(lay.n_qubits(), cxd(0.5, 0));
                    d += gamma_bar(s, 2 * m, lay, kc) * PauliString(lay.n_qubits(), cxd(0, -0.5));
                    cr.push_back(d);  // d^dagger = (g^{2m-1} - i g^{2m})/2
                }
                creators_.push_back(std::move(cr));
            }
            vacuum_ = stabilizer_vacuum(kc);
        } else {
            n_sites_ = lay.n_phys_sites;
            modes_per_site_ = 2 * k;
            for (int s = 1; s <= n_sites_; ++s) {
                std::vector<PauliSum> cr;
                for (int a = 1; a <= 2 * k; ++a) cr.push_back(c_bar(s, a, lay, kc).adjoint());
                creators_.push_back(std::move(cr));
            }
            // joint kernel of the c-tilde annihilators: odd replicas empty, even full
            Vector v = Vector::Zero(lay.dim());
            std::int64_t idx = 0;
            for (int a = 1; a <= lay.n_replicas; ++a)
                if (a % 2 == 0)
                    for (int q = 0; q < lay.qubits_per_replica(); ++q)
                        idx |= std::int64_t(1) << (lay.n_qubits() - 1 - lay.qubit(a, 1) - q);
            v[idx] = 1.0;
            vacuum_ = v;
        }
    }

    int n_sites() const { return n_sites_; }
    int modes_per_site() const { return modes_per_site_; }
    std::int64_t local_dim() const { return std::int64_t(1) << modes_per_site_; }
    const Vector& vacuum() const { return vacuum_; }
    const FockLayout& layout() const { return lay_; }

    // Phi(v_1 ot ... ot v_n): expand each site vector as a creation polynomial,
    // multiply site-major (site 1 leftmost), apply to the vacuum
    Vector product_state(const std::vector<Vector>& site_vectors) const {
        if (static_cast<int>(site_vectors.size()) != n_sites_)
            throw std::invalid_argument("product_state: wrong number of site vectors");
        Vector out = vacuum_;
        for (int s = n_sites_; s >= 1; --s) {
            const Vector& v = site_vectors[s - 1];
            if (v.size() != local_dim())
                throw std::invalid_argument("product_state: bad site vector length");
            Vector acc = Vector::Zero(lay_.dim());
            for (std::int64_t n = 0; n < local_dim(); ++n) {
                if (v[n] == cxd(0, 0)) continue;
                Vector term = out;
                // apply creators for the set bits, highest mode first so that the
                // operator product reads D_1^+ D_2^+ ... left to right
                for (int m = modes_per_site_; m >= 1; --m)
                    if (n >> (modes_per_site_ - m) & 1) term = creators_[s - 1][m - 1].apply(term);
                acc += v[n] * term;
            }
            out = std::move(acc);
        }
        return out;
    }

    Vector uniform_product_state(const Vector& v) const {
        return product_state(std::vector<Vector>(n_sites_, v));
    }

    // full isomorphism; column = image of the abstract basis vector
    // (site-major bits, mode 1 of site 1 most significant)
    Matrix phi() const {
        std::int64_t d = lay_.dim();
        Matrix out(d, d);
        int nq = lay_.n_qubits();
        for (std::int64_t idx = 0; idx < d; ++idx) {
            Vector col = vacuum_;
            for (int s = n_sites_; s >= 1; --s)
                for (int m = modes_per_site_; m >= 1; --m) {
                    int bit = nq - 1 - ((s - 1) * modes_per_site_ + (m - 1));
                    if (idx >> bit & 1) col = creators_[s - 1][m - 1].apply(col);
                }
            out.col(idx) = col;
        }
        return out;
    }

    // abstract index with the occupation blocks of sites s1,s2 exchanged
    std::int64_t swap_index(std::int64_t idx, int s1, int s2) const {
        int w = modes_per_site_;
        int nq = lay_.n_qubits();
        int sh1 = nq - s1 * w, sh2 = nq - s2 * w;
        std::uint64_t mask = (std::uint64_t(1) << w) - 1;
        std::uint64_t u = static_cast<std::uint64_t>(idx);
        std::uint64_t b1 = (u >> sh1) & mask, b2 = (u >> sh2) & mask;
        u &= ~(mask << sh1);
        u &= ~(mask << sh2);
        u |= b1 << sh2;
        u |= b2 << sh1;
        return static_cast<std::int64_t>(u);
    }

  private:
    Vector stabilizer_vacuum(const KleinCache& kc) const {
        // joint +1 eigenstate of -i gbar^{2m-1} gbar^{2m} on every Majorana site
        std::vector<PauliString> stabs;
        for (int s = 1; s <= n_sites_; ++s)
            for (int m = 1; m <= lay_.k(); ++m)
                stabs.push_back(PauliString(lay_.n_qubits(), cxd(0, -1)) *
                                gamma_bar(s, 2 * m - 1, lay_, kc) * gamma_bar(s, 2 * m, lay_, kc));
        for (std::int64_t seed = 0; seed < lay_.dim(); ++seed) {
            Vector v = Vector::Zero(lay_.dim());
            v[seed] = 1.0;
            for (const auto& S : stabs) {
                Vector sv = Vector::Zero(lay_.dim());
                S.apply(v, sv);
                v = 0.5 * (v + sv);
            }
            double nrm = v.norm();
            if (nrm > 1e-9) {
                v /= nrm;
                for (std::int64_t i = 0; i < v.size(); ++i)
                    if (std::abs(v[i]) > 1e-12) {
                        v *= std::conj(v[i]) / std::abs(v[i]);
                        break;
                    }
                return v;
            }
        }
        throw std::runtime_error("SiteBasis: stabilizer vacuum not found");
    }

    FockLayout lay_;
    Kind kind_;
    int n_sites_ = 0;
    int modes_per_site_ = 0;
    std::vector<std::vector<PauliSum>> creators_;
    Vector vacuum_;
};

// unitary exchanging the full replicated local spaces of two sites
inline FockOperator site_swap(int i, int j, const FockLayout& lay) {
    if (i == j) throw std::invalid_argument("site_swap: sites must differ");
    SiteBasis basis(lay, lay.mode_kind == ModeKind::majorana ? SiteBasis::Kind::majorana_sites
                                                             : SiteBasis::Kind::phys_sites);
    if (i < 1 || j < 1 || i > basis.n_sites() || j > basis.n_sites())
        throw std::out_of_range("site_swap: site out of range");
    Matrix phi = basis.phi();
    Matrix out(lay.dim(), lay.dim());
    for (std::int64_t c = 0; c < lay.dim(); ++c) out.col(c) = phi.col(basis.swap_index(c, i, j));
    return FockOperator(out * phi.adjoint(), lay, false);
}

}  // namespace fock
}  // namespace ffc
