#pragma once

#include <cmath>
#include <future>
#include <vector>

#include "effham.hpp"
#include "gaussian.hpp"
#include "product_basis.hpp"

namespace ffc {
namespace moments {

using liealg::bigint;
using liealg::bigrat;

enum class Method { oracle, coherent_mc, exact_k2, saddle };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::oracle: return "oracle";
        case Method::coherent_mc: return "coherent-mc";
        case Method::exact_k2: return "exact-k2";
        case Method::saddle: return "saddle";
    }
    return "?";
}

struct MomentEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::int64_t n_samples = 0;
    std::uint64_t master_seed = 0;
    Method method = Method::oracle;
    double mean_imag = 0.0;        // complex-valued intermediates only
    double stderr_imag = 0.0;
};

struct PageCurvePoint {
    int k = 0;
    int L = 0;
    int ell = 0;
    MomentEstimate estimate;
};

// ---- deterministic accumulation --------------------------------------------

// compensated sum in fixed index order; result is scheduling-independent
inline cxd kahan_sum(const std::vector<cxd>& xs) {
    cxd s = 0, c = 0;
    for (const cxd& x : xs) {
        cxd y = x - c;
        cxd t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}

inline MomentEstimate summarize(const std::vector<cxd>& vals, std::uint64_t seed, Method method) {
    const std::int64_t n = static_cast<std::int64_t>(vals.size());
    MomentEstimate est;
    est.n_samples = n;
    est.master_seed = seed;
    est.method = method;
    if (n == 0) return est;
    cxd mean = kahan_sum(vals) / double(n);
    est.mean = mean.real();
    est.mean_imag = mean.imag();
    if (n > 1) {
        double vr = 0, vi = 0;
        for (const cxd& x : vals) {
            vr += (x.real() - mean.real()) * (x.real() - mean.real());
            vi += (x.imag() - mean.imag()) * (x.imag() - mean.imag());
        }
        est.stderr_of_mean = std::sqrt(vr / double(n - 1) / double(n));
        est.stderr_imag = std::sqrt(vi / double(n - 1) / double(n));
    }
    return est;
}

// evaluate fn(sample_index) for 0..n-1 with a fixed block partition; blocks may
// run on different threads, results land in index order
template <typename F>
inline void for_each_sample(std::int64_t n, int threads, F&& fn) {
    threads = std::max(1, threads);
    if (threads == 1 || n < 64) {
        for (std::int64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    const std::int64_t block = (n + threads - 1) / threads;
    std::vector<std::future<void>> futs;
    for (int t = 0; t < threads; ++t) {
        std::int64_t lo = t * block, hi = std::min(n, lo + block);
        if (lo >= hi) break;
        futs.push_back(std::async(std::launch::async, [lo, hi, &fn] {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        }));
    }
    for (auto& f : futs) f.get();
}

// draw a Haar SO point, redrawing (deterministically) while the Thouless
// construction signals a singular block
template <typename F>
inline void with_thouless_sample(std::uint64_t seed, StreamDomain domain, std::int64_t index,
                                 int dim, F&& use) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        RngStream stream(seed, domain, static_cast<std::uint64_t>(index) * 64 + attempt);
        gaussian::OrthogonalPoint R = gaussian::haar_so(dim, stream);
        gaussian::BogoliubovBlocks blocks = gaussian::bogoliubov_blocks(R);
        try {
            use(blocks);
            return;
        } catch (const resample_signal&) {
            continue;
        }
    }
    throw std::runtime_error("thouless sampling: too many singular draws");
}

// ---- exact projector --------------------------------------------------------

inline FockOperator projector_exact(const effham::KernelResult& kernel) {
    Matrix pi = kernel.basis * kernel.basis.adjoint();
    return FockOperator(std::move(pi), kernel.layout, true);
}

// ---- coherent-state Monte Carlo projector -----------------------------------

struct CoherentProjectorEstimate {
    Matrix plus;   // estimate of the projector onto the even-chirality irrep
    Matrix full;   // plus + parity-conjugated copy
    MomentEstimate trace_estimate;
};

inline CoherentProjectorEstimate projector_coherent_mc(int k, int L, std::int64_t n_samples,
                                                       std::uint64_t seed, int threads = 1) {
    if (n_samples <= 0) throw std::invalid_argument("projector_coherent_mc: n_samples > 0");
    FockLayout lay(L, 2 * k, ModeKind::majorana);
    fock::SiteBasis basis(lay, fock::SiteBasis::Kind::majorana_sites);
    const double d_plus =
        liealg::commutant_dim(liealg::EnsembleKind::MGstar, k, L).convert_to<double>();
    const std::int64_t dim = lay.dim();

    const std::int64_t block_size = 256;
    const std::int64_t n_blocks = (n_samples + block_size - 1) / block_size;
    std::vector<Matrix> partial(n_blocks);
    std::vector<cxd> traces(n_samples);
    for_each_sample(n_blocks, threads, [&](std::int64_t b) {
        Matrix acc = Matrix::Zero(dim, dim);
        std::int64_t lo = b * block_size, hi = std::min(n_samples, lo + block_size);
        for (std::int64_t i = lo; i < hi; ++i) {
            with_thouless_sample(seed, StreamDomain::coherent_projector, i, 2 * k,
                                 [&](const gaussian::BogoliubovBlocks& blocks) {
                                     PureState site = gaussian::thouless_state(blocks);
                                     Vector big = basis.uniform_product_state(site.amplitudes);
                                     acc.noalias() += d_plus * big * big.adjoint();
                                     traces[i] = d_plus * big.squaredNorm();
                                 });
        }
        partial[b] = std::move(acc);
    });
    Matrix plus = Matrix::Zero(dim, dim);
    for (const Matrix& m : partial) plus += m;  // fixed block order
    plus /= double(n_samples);

    PauliSum parity(fock::replica_parity(1, lay));
    Matrix g = parity.to_dense();
    CoherentProjectorEstimate out;
    out.full = plus + g * plus * g.adjoint();
    out.plus = std::move(plus);
    out.trace_estimate = summarize(traces, seed, Method::coherent_mc);
    return out;
}

// ---- purities ----------------------------------------------------------------

// exact tr(rho_A^k) for a pure state, tracing out the first `ell` sites
inline double purity_state(const PureState& state, int ell, int k_pow) {
    const int Lq = state.layout.n_qubits();
    if (ell < 0 || ell > Lq) throw std::invalid_argument("purity_state: bad cut");
    if (k_pow < 1) throw std::invalid_argument("purity_state: k >= 1");
    const double n2 = state.amplitudes.squaredNorm();
    if (ell == 0 || ell == Lq) return std::pow(n2, k_pow);
    const std::int64_t rows = std::int64_t(1) << ell, cols = std::int64_t(1) << (Lq - ell);
    Eigen::Map<const Eigen::Matrix<cxd, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> view(
        state.amplitudes.data(), rows, cols);
    Matrix gram = view.adjoint() * view;  // same spectrum as rho_A
    Eigen::SelfAdjointEigenSolver<Matrix> es(gram, Eigen::EigenvaluesOnly);
    double tr = 0;
    for (std::int64_t i = 0; i < es.eigenvalues().size(); ++i)
        tr += std::pow(std::max(0.0, es.eigenvalues()(i)), k_pow);
    return tr;
}

inline int default_oracle_cap() { return 10; }

// brute-force reference: average purity of Haar-random Gaussian states built in
// real space by the Thouless construction
inline MomentEstimate purity_oracle(int k, int L, int ell, std::int64_t n_samples,
                                    std::uint64_t seed, int threads = 1,
                                    int cap = default_oracle_cap()) {
    if (L > cap) throw resource_cap_error("purity_oracle: L exceeds cap");
    if (ell < 0 || ell > L) throw std::invalid_argument("purity_oracle: bad cut");
    if (n_samples <= 0) throw std::invalid_argument("purity_oracle: n_samples > 0");
    std::vector<cxd> vals(n_samples);
    for_each_sample(n_samples, threads, [&](std::int64_t i) {
        with_thouless_sample(seed, StreamDomain::oracle, i, 2 * L,
                             [&](const gaussian::BogoliubovBlocks& blocks) {
                                 PureState psi = gaussian::thouless_state(blocks);
                                 vals[i] = purity_state(psi, ell, k);
                             });
    });
    MomentEstimate est = summarize(vals, seed, Method::oracle);
    return est;
}

// coherent-state Monte Carlo for the averaged purity; L must be even so the
// boundary factor enters as an integer power of the squared overlap
inline MomentEstimate purity_coherent_mc(int k, int L, int ell, std::int64_t n_samples,
                                         std::uint64_t seed, int threads = 1) {
    if (L % 2 != 0) throw std::invalid_argument("purity_coherent_mc: L must be even");
    if (ell < 0 || ell > L) throw std::invalid_argument("purity_coherent_mc: bad cut");
    if (n_samples <= 0) throw std::invalid_argument("purity_coherent_mc: n_samples > 0");
    const double d_plus =
        liealg::commutant_dim(liealg::EnsembleKind::MGstar, k, L).convert_to<double>();
    std::vector<cxd> vals(n_samples);
    for_each_sample(n_samples, threads, [&](std::int64_t i) {
        RngStream stream(seed, StreamDomain::coherent_purity, static_cast<std::uint64_t>(i));
        gaussian::OrthogonalPoint R = gaussian::haar_so(2 * k, stream);
        gaussian::BogoliubovBlocks blocks = gaussian::bogoliubov_blocks(R);
        cxd oe = gaussian::omega_sq(gaussian::OverlapKind::e, blocks);
        cxd oeta = gaussian::omega_sq(gaussian::OverlapKind::eta, blocks);
        cxd o0 = gaussian::omega_sq(gaussian::OverlapKind::zero, blocks);
        cxd v = d_plus;
        for (int p = 0; p < ell; ++p) v *= oe;
        for (int p = 0; p < L - ell; ++p) v *= oeta;
        for (int p = 0; p < L / 2; ++p) v *= o0;
        vals[i] = v;
    });
    MomentEstimate est = summarize(vals, seed, Method::coherent_mc);
    // the averaged purity is real; a nonvanishing imaginary mean signals a bug
    if (std::abs(est.mean_imag) > 6.0 * est.stderr_imag + 1e-12)
        throw std::runtime_error("purity_coherent_mc: imaginary part failed to vanish");
    return est;
}

inline bigint binomial(int n, int r) {
    if (r < 0 || r > n) return 0;
    bigint out = 1;
    for (int i = 0; i < r; ++i) {
        out *= (n - i);
        out /= (i + 1);
    }
    return out;
}

// closed-form averaged 2-purity: 2^{-(L-l)} sum_j C(2(L-l),2j) C(L,j) / C(2L,2j)
inline bigrat purity_exact_k2(int L, int ell) {
    if (ell < 0 || ell > L) throw std::invalid_argument("purity_exact_k2: bad cut");
    bigrat sum = 0;
    for (int j = 0; j <= L - ell; ++j)
        sum += bigrat(binomial(2 * (L - ell), 2 * j) * binomial(L, j), binomial(2 * L, 2 * j));
    bigint denom = bigint(1) << (L - ell);
    return sum / bigrat(denom);
}

// ---- saddle point -------------------------------------------------------------

inline void validate_momentum(double p, int k) {
    double twop = 2.0 * p;
    if (std::abs(twop - std::round(twop)) > 1e-12)
        throw std::invalid_argument("saddle: 2p must be an integer");
    int t = static_cast<int>(std::round(twop));
    if (t < 1 || t > k - 1) throw std::invalid_argument("saddle: momentum out of range");
    if (k % 2 == 0 && t % 2 == 0)
        throw std::invalid_argument("saddle: even k uses half-integer momenta");
    if (k % 2 == 1 && t % 2 == 1)
        throw std::invalid_argument("saddle: odd k uses integer momenta");
}

inline double pair_action(double p, double r, int k, double theta) {
    double om_half = M_PI / 2 - M_PI * p / k;
    double c = std::cos(theta), s = std::sin(theta - om_half);
    return -(r * std::log(c * c) + (1 - r) * std::log(s * s));
}

// root of r tan(theta) = (1-r) cot(theta - omega_p/2) minimizing the two-mode action
inline double saddle_theta(double p, double r, int k) {
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("saddle_theta: r in (0,1) required");
    validate_momentum(p, k);
    double w = std::tan(M_PI / 2 - M_PI * p / k);
    double disc = std::sqrt(w * w + 4 * r * (1 - r));
    double t_plus = (w + disc) / (2 * r), t_minus = (w - disc) / (2 * r);
    double th_plus = std::atan(t_plus), th_minus = std::atan(t_minus);
    return pair_action(p, r, k, th_plus) < pair_action(p, r, k, th_minus) ? th_plus : th_minus;
}

inline double saddle_residual(double p, double r, int k, double theta) {
    double om_half = M_PI / 2 - M_PI * p / k;
    return std::abs(r * std::tan(theta) -
                    (1 - r) * std::cos(theta - om_half) / std::sin(theta - om_half));
}

inline std::vector<double> positive_momenta(int k) {
    std::vector<double> ps;
    if (k % 2 == 0)
        for (int t = 1; t <= k - 1; t += 2) ps.push_back(t / 2.0);
    else
        for (int t = 2; t <= k - 1; t += 2) ps.push_back(t / 2.0);
    return ps;
}

// purity decay rate S*(r); the odd-k zero mode contributes nothing
inline double rate_function(int k, double r) {
    if (k < 2) throw std::invalid_argument("rate_function: k >= 2");
    if (!(r > 0.0 && r < 1.0)) throw std::invalid_argument("rate_function: r in (0,1) required");
    double total = 0.0;
    for (double p : positive_momenta(k)) total += pair_action(p, r, k, saddle_theta(p, r, k));
    return total;
}

// k = 2 closed form via t = tan(theta*)
inline double rate_function_k2_closed(double r) {
    double t = (1 - std::sqrt(1 + 4 * r - 4 * r * r)) / (2 * r);
    return std::log(1 + t * t) - (1 - r) * std::log((1 - t) * (1 - t) / 2);
}

struct ConvergenceRow {
    int L = 0;
    double exact_rate = 0.0;  // -(1/L) log E2(L, rL)
    double delta = 0.0;       // |exact_rate - S*(r)|
};

struct ConvergenceReport {
    double r = 0.0;
    double rate_value = 0.0;
    std::vector<ConvergenceRow> rows;
    bool monotone_decreasing = true;
    double envelope_constant = 0.0;       // least-squares C in Delta ~ C log(L)/L
    double max_envelope_deviation = 0.0;  // max |Delta - C log(L)/L| / (C log(L)/L)
};

inline ConvergenceReport rate_vs_exact_convergence(double r, const std::vector<int>& L_list) {
    ConvergenceReport rep;
    rep.r = r;
    rep.rate_value = rate_function(2, r);
    double prev = std::numeric_limits<double>::infinity();
    for (int L : L_list) {
        double rl = r * L;
        if (std::abs(rl - std::round(rl)) > 1e-9)
            throw std::invalid_argument("rate_vs_exact_convergence: r*L must be an integer");
        int ell = static_cast<int>(std::round(rl));
        bigrat e = purity_exact_k2(L, ell);
        ConvergenceRow row;
        row.L = L;
        row.exact_rate = -std::log(e.convert_to<double>()) / L;
        row.delta = std::abs(row.exact_rate - rep.rate_value);
        if (row.delta >= prev) rep.monotone_decreasing = false;
        prev = row.delta;
        rep.rows.push_back(row);
    }
    // least-squares fit of Delta(L) against log(L)/L
    double num = 0, den = 0;
    for (const auto& row : rep.rows) {
        double x = std::log(double(row.L)) / row.L;
        num += x * row.delta;
        den += x * x;
    }
    rep.envelope_constant = den > 0 ? num / den : 0.0;
    for (const auto& row : rep.rows) {
        double fit = rep.envelope_constant * std::log(double(row.L)) / row.L;
        if (fit > 0)
            rep.max_envelope_deviation =
                std::max(rep.max_envelope_deviation, std::abs(row.delta - fit) / fit);
    }
    return rep;
}

}  // namespace moments
}  // namespace ffc
