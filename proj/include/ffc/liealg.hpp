#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <vector>

#include "types.hpp"

namespace ffc {
namespace liealg {

using bigint = boost::multiprecision::cpp_int;
using bigrat = boost::multiprecision::cpp_rational;

enum class AlgebraFamily { so_even, su };

// so(2k) (type D_k) or su(2k) (type A_{2k-1}); parameter stores 2k in both cases
struct AlgebraTag {
    AlgebraFamily family;
    int parameter;

    AlgebraTag(AlgebraFamily f, int p) : family(f), parameter(p) {
        if (p < 2) throw std::invalid_argument("AlgebraTag: parameter must be >= 2");
        if (f == AlgebraFamily::so_even && p % 2 != 0)
            throw std::invalid_argument("AlgebraTag: so family needs an even parameter");
    }

    int rank_vectors() const {
        // length of the epsilon-basis tuples: k for so(2k), 2k (overcomplete) for su(2k)
        return family == AlgebraFamily::so_even ? parameter / 2 : parameter;
    }
};

// weights and roots live in the epsilon-basis; the su basis is overcomplete
// with inner product (e_a, e_b) = delta_ab - 1/(2k)
using WeightVector = std::vector<bigrat>;

inline bigrat inner(const WeightVector& a, const WeightVector& b, const AlgebraTag& tag) {
    if (a.size() != b.size() || static_cast<int>(a.size()) != tag.rank_vectors())
        throw std::invalid_argument("weight inner product: length mismatch");
    bigrat dot = 0;
    for (size_t i = 0; i < a.size(); ++i) dot += a[i] * b[i];
    if (tag.family == AlgebraFamily::su) {
        bigrat sa = 0, sb = 0;
        for (const auto& x : a) sa += x;
        for (const auto& x : b) sb += x;
        dot -= sa * sb / tag.parameter;
    }
    return dot;
}

struct HighestWeight {
    WeightVector components;
    AlgebraTag algebra;

    HighestWeight(WeightVector c, AlgebraTag t) : components(std::move(c)), algebra(t) {
        if (static_cast<int>(components.size()) != t.rank_vectors())
            throw std::invalid_argument("HighestWeight: component count mismatch");
    }

    bool dominant() const {
        int n = static_cast<int>(components.size());
        if (algebra.family == AlgebraFamily::so_even) {
            for (int i = 0; i + 1 < n - 1; ++i)
                if (components[i] < components[i + 1]) return false;
            if (n >= 2 && components[n - 2] < boost::multiprecision::abs(components[n - 1]))
                return false;
            return true;
        }
        for (int i = 0; i + 1 < n; ++i)
            if (components[i] < components[i + 1]) return false;
        return true;
    }
};

struct RootSystem {
    std::vector<WeightVector> positive_roots;
    WeightVector weyl_vector;  // half sum of the positive roots, exact
};

inline RootSystem positive_roots(const AlgebraTag& tag) {
    RootSystem rs;
    int d = tag.rank_vectors();
    auto unit = [d](int i, bigrat v) {
        WeightVector w(d, bigrat(0));
        w[i] = v;
        return w;
    };
    if (tag.family == AlgebraFamily::so_even) {
        int k = d;
        for (int m = 0; m < k; ++m)
            for (int n = m + 1; n < k; ++n) {
                WeightVector minus = unit(m, 1), plus = unit(m, 1);
                minus[n] = -1;
                plus[n] = 1;
                rs.positive_roots.push_back(minus);
                rs.positive_roots.push_back(plus);
            }
    } else {
        for (int a = 0; a < d; ++a)
            for (int b = a + 1; b < d; ++b) {
                WeightVector r = unit(a, 1);
                r[b] = -1;
                rs.positive_roots.push_back(r);
            }
    }
    rs.weyl_vector.assign(d, bigrat(0));
    for (const auto& r : rs.positive_roots)
        for (int i = 0; i < d; ++i) rs.weyl_vector[i] += r[i] / 2;
    return rs;
}

// quadratic Casimir C(lambda) = (lambda, lambda + 2 rho)
inline bigrat casimir_value(const HighestWeight& hw) {
    RootSystem rs = positive_roots(hw.algebra);
    WeightVector lam2rho = hw.components;
    for (size_t i = 0; i < lam2rho.size(); ++i) lam2rho[i] += 2 * rs.weyl_vector[i];
    return inner(hw.components, lam2rho, hw.algebra);
}

// Weyl dimension formula, exact rational arithmetic with asserted integrality
inline bigint weyl_dim(const HighestWeight& hw) {
    if (!hw.dominant()) throw std::invalid_argument("weyl_dim: weight is not dominant");
    RootSystem rs = positive_roots(hw.algebra);
    WeightVector lamrho = hw.components;
    for (size_t i = 0; i < lamrho.size(); ++i) lamrho[i] += rs.weyl_vector[i];
    bigrat prod = 1;
    for (const auto& alpha : rs.positive_roots)
        prod *= inner(lamrho, alpha, hw.algebra) / inner(rs.weyl_vector, alpha, hw.algebra);
    if (boost::multiprecision::denominator(prod) != 1)
        throw std::runtime_error("weyl_dim: non-integral result");
    return boost::multiprecision::numerator(prod);
}

enum class EnsembleKind { MG, MGstar, NC, MG_flavored, NC_flavored };

// commutant dimension formulas; flavored kinds map (k, N) onto plain kN
inline bigint commutant_dim(EnsembleKind kind, int k, int L, int n_flavors = 1) {
    if (k < 1 || L < 1) throw std::invalid_argument("commutant_dim: k, L >= 1 required");
    switch (kind) {
        case EnsembleKind::MG_flavored:
            return commutant_dim(EnsembleKind::MG, k * n_flavors, L);
        case EnsembleKind::NC_flavored:
            return commutant_dim(EnsembleKind::NC, k * n_flavors, L);
        case EnsembleKind::MG:
            return 2 * commutant_dim(EnsembleKind::MGstar, k, L);
        case EnsembleKind::MGstar: {
            bigrat prod = 1;
            for (int m = 1; m <= k; ++m)
                for (int n = m + 1; n <= k; ++n)
                    prod *= bigrat(2 * L + 2 * k - m - n, 2 * k - m - n);
            if (boost::multiprecision::denominator(prod) != 1)
                throw std::runtime_error("commutant_dim: non-integral product");
            return boost::multiprecision::numerator(prod);
        }
        case EnsembleKind::NC: {
            bigrat prod = 1;
            for (int a = 1; a <= k; ++a)
                for (int b = k + 1; b <= 2 * k; ++b) prod *= bigrat(L + b - a, b - a);
            if (boost::multiprecision::denominator(prod) != 1)
                throw std::runtime_error("commutant_dim: non-integral product");
            return boost::multiprecision::numerator(prod);
        }
    }
    throw std::logic_error("commutant_dim: unknown ensemble");
}

// common highest weights
inline HighestWeight mg_ground_weight(int k, int L) {
    // (L, ..., L) for so(2k): the even-chirality ferromagnetic irrep
    return HighestWeight(WeightVector(k, bigrat(L)), AlgebraTag(AlgebraFamily::so_even, 2 * k));
}

inline HighestWeight nc_ground_weight(int k, int L) {
    // L * sum_{a<=k} eps_a for su(2k)
    WeightVector w(2 * k, bigrat(0));
    for (int a = 0; a < k; ++a) w[a] = L;
    return HighestWeight(std::move(w), AlgebraTag(AlgebraFamily::su, 2 * k));
}

}  // namespace liealg
}  // namespace ffc
