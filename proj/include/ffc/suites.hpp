#pragma once

#include <cstdio>
#include <functional>
#include <optional>

#include "moments.hpp"

namespace ffc {
namespace suites {

using effham::EnsembleSpec;
using liealg::EnsembleKind;

struct SuiteResult {
    std::string suite;
    std::string instance;
    bool passed = false;
    double metric = 0.0;   // residual or distance underlying the verdict
    std::string detail;
};

struct SuiteOptions {
    std::optional<EnsembleKind> ensemble;
    std::optional<int> k;
    std::optional<int> L;
    std::uint64_t seed = 1;
    int threads = 1;
};

namespace detail {

inline std::string kl_tag(EnsembleKind kind, int k, int L) {
    const char* name = "?";
    switch (kind) {
        case EnsembleKind::MG: name = "mg"; break;
        case EnsembleKind::MGstar: name = "mgstar"; break;
        case EnsembleKind::NC: name = "nc"; break;
        case EnsembleKind::MG_flavored: name = "mg-flavored"; break;
        case EnsembleKind::NC_flavored: name = "nc-flavored"; break;
    }
    return std::string(name) + " k=" + std::to_string(k) + " L=" + std::to_string(L);
}

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

inline SuiteResult residual_result(const std::string& suite, const std::string& inst, double res,
                                   double tol) {
    SuiteResult r{suite, inst, res < tol, res};
    r.detail = "residual " + sci(res) + " (tol " + sci(tol) + ")";
    return r;
}

}  // namespace detail

// full Klein-dressed anticommutation relations at desk sizes
inline std::vector<SuiteResult> suite_anticommutation(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    std::vector<std::pair<int, int>> cases = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
    if (opt.k && opt.L) cases = {{*opt.k, *opt.L}};
    for (auto [k, L] : cases) {
        FockLayout lay(L, 2 * k, ModeKind::majorana);
        fock::KleinCache kc(lay);
        std::vector<Matrix> bars;
        for (int i = 1; i <= 2 * L; ++i)
            for (int a = 1; a <= 2 * k; ++a)
                bars.push_back(PauliSum(fock::gamma_bar(i, a, lay, kc)).to_dense());
        double worst = 0.0;
        Matrix two = 2.0 * Matrix::Identity(lay.dim(), lay.dim());
        for (size_t p = 0; p < bars.size(); ++p)
            for (size_t q = p; q < bars.size(); ++q) {
                Matrix ac = bars[p] * bars[q] + bars[q] * bars[p];
                if (p == q) ac -= two;
                worst = std::max(worst, max_abs(ac));
            }
        out.push_back(detail::residual_result("anticommutation",
                                              detail::kl_tag(EnsembleKind::MG, k, L), worst,
                                              1e-12));
    }
    return out;
}

inline std::vector<SuiteResult> suite_casimir(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    struct Case {
        EnsembleKind kind;
        int k, L;
    };
    std::vector<Case> cases = {{EnsembleKind::MG, 1, 2},
                               {EnsembleKind::MG, 2, 2},
                               {EnsembleKind::NC, 1, 2},
                               {EnsembleKind::NC, 2, 2}};
    if (opt.ensemble && opt.k && opt.L) cases = {{*opt.ensemble, *opt.k, *opt.L}};
    for (const Case& c : cases) {
        EnsembleSpec spec = EnsembleSpec::chain(c.kind, c.L);
        double worst = 0.0;
        for (const auto& bond : spec.bonds)
            worst = std::max(worst, effham::casimir_identity_residual(spec, c.k, c.L, bond));
        out.push_back(detail::residual_result("casimir", detail::kl_tag(c.kind, c.k, c.L), worst,
                                              1e-10));
    }
    return out;
}

inline std::vector<SuiteResult> suite_lemma1(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    struct Case {
        EnsembleKind kind;
        int k, L;
    };
    std::vector<Case> cases = {{EnsembleKind::MG, 1, 2},
                               {EnsembleKind::MG, 2, 2},
                               {EnsembleKind::NC, 1, 3}};
    if (opt.ensemble && opt.k && opt.L) cases = {{*opt.ensemble, *opt.k, *opt.L}};
    for (const Case& c : cases) {
        EnsembleSpec spec = EnsembleSpec::chain(c.kind, c.L);
        effham::KernelResult kr = effham::kernel_basis(effham::effective_hamiltonian(spec, c.k, c.L));
        effham::Lemma1Report rep = effham::lemma1_check(kr);
        out.push_back(detail::residual_result("lemma1", detail::kl_tag(c.kind, c.k, c.L),
                                              rep.max_residual, 1e-10));
    }
    // geometry independence: chain and all-to-all kernels coincide
    if (!opt.ensemble) {
        int k = 2, L = 2;
        effham::KernelResult chain = effham::kernel_basis(
            effham::effective_hamiltonian(EnsembleSpec::chain(EnsembleKind::MG, L), k, L));
        effham::KernelResult full = effham::kernel_basis(
            effham::effective_hamiltonian(EnsembleSpec::all_to_all(EnsembleKind::MG, L), k, L));
        double angle = chain.dim() == full.dim()
                           ? effham::max_principal_angle(chain.basis, full.basis)
                           : 1.0;
        out.push_back(detail::residual_result("lemma1", "geometry mg k=2 L=2", angle, 1e-8));
    }
    return out;
}

inline std::vector<SuiteResult> suite_gaussianity(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    int k = opt.k.value_or(2);
    FockOperator lam = gaussian::lambda_op(2 * k);
    Vector vac = Vector::Zero(std::int64_t(1) << k);
    vac[0] = 1.0;
    double worst = gaussian::lambda_residual(lam, vac);
    for (int t = 0; t < 100; ++t) {
        RngStream rng(opt.seed, StreamDomain::haar_tests, 1000 + t);
        gaussian::OrthogonalPoint R = gaussian::haar_so(2 * k, rng);
        PureState psi = gaussian::thouless_state(gaussian::bogoliubov_blocks(R));
        worst = std::max(worst, gaussian::lambda_residual(lam, psi.amplitudes));
    }
    out.push_back(detail::residual_result("gaussianity", "lambda-null k=" + std::to_string(k),
                                          worst, 1e-10));
    if (k == 2) {
        Vector w(4);
        w << 1.0, 1.0, 1.0, 0.0;
        w /= w.norm();
        double witness = gaussian::lambda_residual(lam, w);
        SuiteResult r{"gaussianity", "non-gaussian witness", witness > 0.1, witness};
        r.detail = "witness norm " + detail::sci(witness) + " (must exceed 0.1)";
        out.push_back(r);
    }
    return out;
}

inline std::vector<SuiteResult> suite_embedding(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    int k = opt.k.value_or(2);
    double worst = 0.0;
    for (int t = 0; t < 50; ++t) {
        RngStream rng(opt.seed, StreamDomain::haar_tests, 2000 + t);
        gaussian::OrthogonalPoint R = gaussian::haar_so(2 * k, rng);
        PureState psi = gaussian::thouless_state(gaussian::bogoliubov_blocks(R));
        gaussian::EmbeddingReport rep = gaussian::embedding_check(psi);
        worst = std::max({worst, rep.lambda_2k_residual, rep.number_residual,
                          rep.lambda_4k_residual});
    }
    out.push_back(detail::residual_result(
        "embedding", "50 samples k=" + std::to_string(k), worst, 1e-10));
    return out;
}

inline std::vector<SuiteResult> suite_constraint(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    double worst = 0.0;
    for (int k = 1; k <= 4; ++k) {
        for (int t = 0; t < 25; ++t) {
            RngStream rng(opt.seed, StreamDomain::haar_tests, 3000 + 100 * k + t);
            gaussian::OrthogonalPoint R = gaussian::haar_so(2 * k, rng);
            gaussian::BogoliubovBlocks b = gaussian::bogoliubov_blocks(R);
            Matrix id = Matrix::Identity(k, k);
            worst = std::max(worst, max_abs(b.A * b.A.adjoint() + b.B * b.B.adjoint() - id));
            worst = std::max(worst, max_abs(b.A * b.B.transpose() + b.B * b.A.transpose()));
        }
        gaussian::eta_blocks(k);   // constructors re-check the constraints
        gaussian::zero_blocks(k);
    }
    out.push_back(detail::residual_result("constraint", "bogoliubov k<=4", worst, 1e-10));
    return out;
}

inline std::vector<SuiteResult> suite_normalization(const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> out;
    double worst = 0.0;
    bool ck_exact = true;
    for (int k = 1; k <= 4; ++k) {
        gaussian::BogoliubovBlocks id_blocks =
            gaussian::bogoliubov_blocks(gaussian::OrthogonalPoint(RealMatrix::Identity(2 * k, 2 * k)));
        worst = std::max(worst,
                         std::abs(gaussian::omega_sq(gaussian::OverlapKind::e, id_blocks) - 1.0));
        worst = std::max(worst, std::abs(gaussian::omega_sq(gaussian::OverlapKind::eta, id_blocks) -
                                         std::pow(2.0, 1 - k)));
        worst = std::max(
            worst, std::abs(gaussian::omega_sq(gaussian::OverlapKind::zero, id_blocks) - 1.0));
        RealMatrix C = gaussian::eta_permutation(k);
        RealMatrix Ck = RealMatrix::Identity(k, k);
        for (int p = 0; p < k; ++p) Ck = Ck * C;
        if ((Ck + RealMatrix::Identity(k, k)).cwiseAbs().maxCoeff() != 0.0) ck_exact = false;
    }
    SuiteResult r = detail::residual_result("normalization", "omega at identity, k<=4", worst,
                                            1e-12);
    r.passed = r.passed && ck_exact;
    if (!ck_exact) r.detail += "; C^k != -1";
    out.push_back(r);
    return out;
}

inline std::vector<SuiteResult> run_suites(const std::string& which, const SuiteOptions& opt = {}) {
    std::vector<SuiteResult> all;
    auto append = [&all](std::vector<SuiteResult> rs) {
        for (auto& r : rs) all.push_back(std::move(r));
    };
    bool everything = which == "all";
    if (everything || which == "anticommutation") append(suite_anticommutation(opt));
    if (everything || which == "casimir") append(suite_casimir(opt));
    if (everything || which == "lemma1") append(suite_lemma1(opt));
    if (everything || which == "gaussianity") append(suite_gaussianity(opt));
    if (everything || which == "embedding") append(suite_embedding(opt));
    if (everything || which == "constraint") append(suite_constraint(opt));
    if (everything || which == "normalization") append(suite_normalization(opt));
    if (all.empty()) throw std::invalid_argument("unknown suite: " + which);
    return all;
}

}  // namespace suites
}  // namespace ffc
