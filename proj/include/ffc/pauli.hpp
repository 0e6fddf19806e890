#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "types.hpp"

namespace ffc {

// Sparse Pauli-string algebra. Every operator the replica construction needs
// (Majorana modes, Klein strings, Liouvillians) is a short sum of Pauli
// strings, so products and dense accumulation stay cheap even at 2^14.

enum : unsigned { PAULI_I = 0, PAULI_Z = 1, PAULI_X = 2, PAULI_Y = 3 };

struct PauliString {
    cxd coeff{1.0, 0.0};
    std::uint64_t x = 0;  // bit q set: X-component on qubit q
    std::uint64_t z = 0;  // bit q set: Z-component on qubit q
    int n_qubits = 0;

    PauliString() = default;
    explicit PauliString(int n, cxd c = cxd(1.0, 0.0)) : coeff(c), n_qubits(n) {}

    unsigned code(int q) const {
        return ((x >> q & 1ull) << 1) | (z >> q & 1ull);
    }
    void set(int q, unsigned p) {
        x = (x & ~(1ull << q)) | (std::uint64_t(p >> 1 & 1u) << q);
        z = (z & ~(1ull << q)) | (std::uint64_t(p & 1u) << q);
    }

    int weight_y() const {
        std::uint64_t y = x & z;
        int n = 0;
        while (y) { y &= y - 1; ++n; }
        return n;
    }

    // entrywise complex conjugation in the computational basis: Y* = -Y
    PauliString conjugated() const {
        PauliString r = *this;
        r.coeff = std::conj(coeff);
        if (weight_y() % 2 == 1) r.coeff = -r.coeff;
        return r;
    }

    PauliString adjoint() const {
        PauliString r = *this;
        r.coeff = std::conj(coeff);  // Pauli strings are Hermitian up to the coefficient
        return r;
    }

    friend PauliString operator*(const PauliString& a, const PauliString& b) {
        // per-qubit phases of literal products, codes {I=0,Z=1,X=2,Y=3}:
        // ZX=iY, XZ=-iY, XY=iZ, YX=-iZ, YZ=iX, ZY=-iX
        static const cxd phase[4][4] = {
            {{1, 0}, {1, 0}, {1, 0}, {1, 0}},
            {{1, 0}, {1, 0}, {0, 1}, {0, -1}},
            {{1, 0}, {0, -1}, {1, 0}, {0, 1}},
            {{1, 0}, {0, 1}, {0, -1}, {1, 0}},
        };
        PauliString r(a.n_qubits, a.coeff * b.coeff);
        r.x = a.x ^ b.x;
        r.z = a.z ^ b.z;
        std::uint64_t both = (a.x | a.z) & (b.x | b.z);
        for (int q = 0; q < a.n_qubits; ++q) {
            if (both >> q & 1ull) r.coeff *= phase[a.code(q)][b.code(q)];
        }
        return r;
    }

    friend PauliString operator*(PauliString a, cxd c) {
        a.coeff *= c;
        return a;
    }
    friend PauliString operator*(cxd c, PauliString a) {
        a.coeff *= c;
        return a;
    }

    // same string content (x,z) regardless of coefficient
    bool same_body(const PauliString& o) const { return x == o.x && z == o.z; }

    // action on a computational basis state: returns flipped index, sets phase
    std::int64_t apply_basis(std::int64_t idx, cxd& ph) const {
        ph = coeff;
        int n = n_qubits;
        for (int q = 0; q < n; ++q) {
            unsigned c = code(q);
            if (c == PAULI_I) continue;
            int bitpos = n - 1 - q;  // qubit 0 = most significant
            int bit = (idx >> bitpos) & 1;
            switch (c) {
                case PAULI_Z:
                    if (bit) ph = -ph;
                    break;
                case PAULI_X:
                    idx ^= (std::int64_t(1) << bitpos);
                    break;
                case PAULI_Y:
                    ph *= bit ? cxd(0, -1) : cxd(0, 1);
                    idx ^= (std::int64_t(1) << bitpos);
                    break;
            }
        }
        return idx;
    }

    void add_to_dense(Matrix& m) const {
        std::int64_t d = m.cols();
        for (std::int64_t c = 0; c < d; ++c) {
            cxd ph;
            std::int64_t r = apply_basis(c, ph);
            m(r, c) += ph;
        }
    }

    void apply(const Vector& in, Vector& out) const {
        for (std::int64_t c = 0; c < in.size(); ++c) {
            if (in[c] == cxd(0, 0)) continue;
            cxd ph;
            std::int64_t r = apply_basis(c, ph);
            out[r] += ph * in[c];
        }
    }
};

class PauliSum {
  public:
    PauliSum() = default;
    explicit PauliSum(int n) : n_qubits_(n) {}
    PauliSum(const PauliString& s) : n_qubits_(s.n_qubits) { terms_.push_back(s); }

    int n_qubits() const { return n_qubits_; }
    const std::vector<PauliString>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    PauliSum& operator+=(const PauliString& s) {
        terms_.push_back(s);
        return *this;
    }
    PauliSum& operator+=(const PauliSum& o) {
        terms_.insert(terms_.end(), o.terms_.begin(), o.terms_.end());
        return *this;
    }
    friend PauliSum operator+(PauliSum a, const PauliSum& b) { return a += b; }
    friend PauliSum operator-(PauliSum a, const PauliSum& b) { return a += (b * cxd(-1.0, 0.0)); }

    friend PauliSum operator*(const PauliSum& a, const PauliSum& b) {
        PauliSum r(a.n_qubits_);
        r.terms_.reserve(a.terms_.size() * b.terms_.size());
        for (const auto& s : a.terms_)
            for (const auto& t : b.terms_) r.terms_.push_back(s * t);
        r.simplify();
        return r;
    }
    friend PauliSum operator*(PauliSum a, cxd c) {
        for (auto& t : a.terms_) t.coeff *= c;
        return a;
    }
    friend PauliSum operator*(cxd c, PauliSum a) { return std::move(a) * c; }

    PauliSum adjoint() const {
        PauliSum r(n_qubits_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back(t.adjoint());
        return r;
    }

    PauliSum conjugated() const {
        PauliSum r(n_qubits_);
        r.terms_.reserve(terms_.size());
        for (const auto& t : terms_) r.terms_.push_back(t.conjugated());
        return r;
    }

    void simplify(double tol = 1e-15) {
        if (terms_.empty()) return;
        std::sort(terms_.begin(), terms_.end(), [](const PauliString& a, const PauliString& b) {
            return a.x != b.x ? a.x < b.x : a.z < b.z;
        });
        std::vector<PauliString> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            if (!out.empty() && out.back().same_body(t))
                out.back().coeff += t.coeff;
            else
                out.push_back(t);
        }
        out.erase(std::remove_if(out.begin(), out.end(),
                                 [tol](const PauliString& s) { return std::abs(s.coeff) <= tol; }),
                  out.end());
        terms_ = std::move(out);
    }

    Matrix to_dense() const {
        std::int64_t d = std::int64_t(1) << n_qubits_;
        Matrix m = Matrix::Zero(d, d);
        for (const auto& t : terms_) t.add_to_dense(m);
        return m;
    }

    void add_to_dense(Matrix& m) const {
        for (const auto& t : terms_) t.add_to_dense(m);
    }

    Vector apply(const Vector& in) const {
        Vector out = Vector::Zero(in.size());
        for (const auto& t : terms_) t.apply(in, out);
        return out;
    }

  private:
    int n_qubits_ = 0;
    std::vector<PauliString> terms_;
};

inline PauliSum identity_sum(int n, cxd c = cxd(1.0, 0.0)) {
    return PauliSum(PauliString(n, c));
}

}  // namespace ffc
