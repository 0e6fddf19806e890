#include "ffc/moments.hpp"

#include "test_helpers.hpp"

using namespace ffc;
using namespace ffc::moments;
using effham::EnsembleSpec;
using liealg::EnsembleKind;

namespace {

effham::KernelResult mg_kernel(int k, int L) {
    return effham::kernel_basis(
        effham::effective_hamiltonian(EnsembleSpec::chain(EnsembleKind::MG, L), k, L));
}

// many-body representation of a quadratic-Hamiltonian unitary on L qubits
Matrix random_matchgate(int L, RngStream& rng) {
    PauliSum h(L);
    for (int i = 1; i <= 2 * L; ++i)
        for (int j = i + 1; j <= 2 * L; ++j) {
            double kij = rng.next_normal();
            h += fock::jw_mode(i, L) * fock::jw_mode(j, L) * cxd(0, kij);
        }
    h.simplify();
    Eigen::SelfAdjointEigenSolver<Matrix> es(h.to_dense());
    Vector phases(es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i) phases[i] = std::polar(1.0, es.eigenvalues()(i));
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace

TEST_CASE("exact projector is an orthogonal projector of the right trace") {
    effham::KernelResult kr = mg_kernel(1, 2);
    FockOperator pi = projector_exact(kr);
    REQUIRE(std::abs(pi.matrix.trace().real() - 2.0) < 1e-10);
    REQUIRE(max_abs(pi.matrix * pi.matrix - pi.matrix) < 1e-10);
    REQUIRE(max_abs(pi.matrix - pi.matrix.adjoint()) < 1e-12);

    effham::KernelResult kr2 = mg_kernel(2, 2);
    REQUIRE(std::abs(projector_exact(kr2).matrix.trace().real() - 10.0) < 1e-9);
}

TEST_CASE("exact projector commutes with replicated matchgates") {
    int k = 2, L = 2;
    effham::KernelResult kr = mg_kernel(k, L);
    Matrix pi = projector_exact(kr).matrix;
    RngStream rng(77, StreamDomain::haar_tests, 21);
    Matrix u = random_matchgate(L, rng);
    Matrix w = Matrix::Identity(1, 1);
    for (int a = 1; a <= 2 * k; ++a) w = ffc_test::kron(w, a % 2 == 1 ? u : u.conjugate());
    REQUIRE(max_abs(pi * w - w * pi) < 1e-8);
}

TEST_CASE("coherent projector at k=1 has a point orbit") {
    CoherentProjectorEstimate one = projector_coherent_mc(1, 1, 1, 31);
    CoherentProjectorEstimate many = projector_coherent_mc(1, 1, 32, 31);
    REQUIRE(max_abs(one.plus - many.plus) < 1e-12);  // zero variance
    REQUIRE(std::abs(one.trace_estimate.mean - 1.0) < 1e-12);
    // the orbit point is the doubled reference vacuum
    effham::KernelResult kr = mg_kernel(1, 1);
    effham::ChiralitySplit split = effham::chirality_resolve(kr);
    Matrix pi_plus = split.plus * split.plus.adjoint();
    REQUIRE(max_abs(one.plus - pi_plus) < 1e-12);
}

TEST_CASE("coherent projector converges to the chirality-resolved projector") {
    int k = 2, L = 2;
    effham::KernelResult kr = mg_kernel(k, L);
    effham::ChiralitySplit split = effham::chirality_resolve(kr);
    Matrix pi_plus = split.plus * split.plus.adjoint();
    Matrix pi_full = projector_exact(kr).matrix;

    CoherentProjectorEstimate est = projector_coherent_mc(k, L, 3000, 2024, 2);
    REQUIRE(std::abs(est.trace_estimate.mean - 5.0) <
            3 * est.trace_estimate.stderr_of_mean + 1e-9);
    double d_plus = (est.plus - pi_plus).norm();
    double d_full = (est.full - pi_full).norm();
    REQUIRE(d_plus < 0.12);  // stderr-level bound at 3000 samples
    REQUIRE(d_full < 0.17);
}

TEST_CASE("state purities are exact at the endpoints and on product states") {
    FockLayout lay(3, 1, ModeKind::majorana);
    RngStream rng(13, StreamDomain::haar_tests, 22);
    Vector v = ffc_test::random_state(8, rng);
    PureState psi(v, lay);
    REQUIRE(purity_state(psi, 0, 3) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(purity_state(psi, 3, 2) == Catch::Approx(1.0).margin(1e-12));
    Vector prod = Vector::Zero(8);
    prod[0] = 1.0;
    for (int ell = 0; ell <= 3; ++ell)
        REQUIRE(purity_state(PureState(prod, lay), ell, 2) == Catch::Approx(1.0).margin(1e-12));
    // maximally entangled two-qubit state has purity 1/2 at the middle cut
    FockLayout lay2(2, 1, ModeKind::majorana);
    Vector bell = Vector::Zero(4);
    bell[0] = bell[3] = 1.0 / std::sqrt(2.0);
    REQUIRE(purity_state(PureState(bell, lay2), 1, 2) == Catch::Approx(0.5).margin(1e-12));
}

TEST_CASE("oracle endpoints are exact") {
    MomentEstimate at_l = purity_oracle(2, 2, 2, 100, 7);
    REQUIRE(std::abs(at_l.mean - 1.0) < 1e-12);
    REQUIRE(at_l.stderr_of_mean < 1e-12);
    MomentEstimate at_0 = purity_oracle(2, 2, 0, 100, 7);
    REQUIRE(std::abs(at_0.mean - 1.0) < 1e-12);
}

TEST_CASE("oracle matches the exact k=2 values") {
    MomentEstimate est = purity_oracle(2, 2, 1, 4000, 11, 2);
    REQUIRE(std::abs(est.mean - 2.0 / 3.0) < 3 * est.stderr_of_mean);
    MomentEstimate est42 = purity_oracle(2, 4, 2, 4000, 11, 2);
    REQUIRE(std::abs(est42.mean - 17.0 / 35.0) < 3 * est42.stderr_of_mean);
}

TEST_CASE("oracle rejects configurations beyond the cap") {
    REQUIRE_THROWS_AS(purity_oracle(2, 12, 1, 10, 1), resource_cap_error);
}

TEST_CASE("coherent-state purity integrates to the exact values") {
    SECTION("k=1 integrand is identically one") {
        MomentEstimate est = purity_coherent_mc(1, 2, 1, 64, 3);
        REQUIRE(std::abs(est.mean - 1.0) < 1e-12);
        REQUIRE(est.stderr_of_mean < 1e-12);
    }
    SECTION("k=2 targets") {
        MomentEstimate e22 = purity_coherent_mc(2, 2, 2, 6000, 5, 2);
        REQUIRE(std::abs(e22.mean - 1.0) < 3 * e22.stderr_of_mean);
        MomentEstimate e21 = purity_coherent_mc(2, 2, 1, 6000, 5, 2);
        REQUIRE(std::abs(e21.mean - 2.0 / 3.0) < 3 * e21.stderr_of_mean);
        MomentEstimate e42 = purity_coherent_mc(2, 4, 2, 6000, 5, 2);
        REQUIRE(std::abs(e42.mean - 17.0 / 35.0) < 3 * e42.stderr_of_mean);
        REQUIRE(std::abs(e21.mean_imag) < 3 * e21.stderr_imag + 1e-12);
    }
    SECTION("odd L is rejected") {
        REQUIRE_THROWS_AS(purity_coherent_mc(2, 3, 1, 10, 1), std::invalid_argument);
    }
}

TEST_CASE("closed-form 2-purity") {
    using liealg::bigrat;
    REQUIRE(purity_exact_k2(2, 1) == bigrat(2, 3));
    REQUIRE(purity_exact_k2(4, 2) == bigrat(17, 35));
    REQUIRE(purity_exact_k2(4, 1) == bigrat(4, 7));
    SECTION("endpoints are exactly one") {
        for (int L = 1; L <= 12; ++L) {
            REQUIRE(purity_exact_k2(L, L) == 1);
            REQUIRE(purity_exact_k2(L, 0) == 1);
        }
    }
    SECTION("complementarity symmetry") {
        for (int L = 1; L <= 20; ++L)
            for (int ell = 0; ell <= L; ++ell)
                REQUIRE(purity_exact_k2(L, ell) == purity_exact_k2(L, L - ell));
    }
}

TEST_CASE("estimators are deterministic and thread-count independent") {
    MomentEstimate a = purity_coherent_mc(2, 2, 1, 2000, 99, 1);
    MomentEstimate b = purity_coherent_mc(2, 2, 1, 2000, 99, 4);
    REQUIRE(a.mean == b.mean);
    REQUIRE(a.stderr_of_mean == b.stderr_of_mean);
    MomentEstimate c = purity_oracle(2, 2, 1, 500, 42, 1);
    MomentEstimate d = purity_oracle(2, 2, 1, 500, 42, 3);
    REQUIRE(c.mean == d.mean);
    REQUIRE(c.stderr_of_mean == d.stderr_of_mean);
}

TEST_CASE("purity estimates stay in the physical window") {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        MomentEstimate est = purity_oracle(2, 3, 1, 500, seed);
        REQUIRE(est.mean > 0.0);
        REQUIRE(est.mean <= 1.0 + 3 * est.stderr_of_mean);
    }
}

TEST_CASE("saddle momenta follow the parity of k") {
    REQUIRE(positive_momenta(2) == std::vector<double>{0.5});
    REQUIRE(positive_momenta(3) == std::vector<double>{1.0});
    REQUIRE(positive_momenta(4) == std::vector<double>{0.5, 1.5});
    REQUIRE(positive_momenta(5) == std::vector<double>{1.0, 2.0});
    REQUIRE_THROWS_AS(saddle_theta(1.0, 0.5, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(saddle_theta(0.5, 0.5, 3), std::invalid_argument);
    REQUIRE_THROWS_AS(saddle_theta(0.5, 1.5, 2), std::invalid_argument);
}

TEST_CASE("saddle root at k=2, r=1/2 is the minus branch") {
    double th = saddle_theta(0.5, 0.5, 2);
    REQUIRE(std::abs(std::tan(th) - (1.0 - std::sqrt(2.0))) < 1e-12);
}

TEST_CASE("saddle residuals vanish on a dense grid") {
    for (int k : {2, 3, 4}) {
        for (int g = 1; g <= 50; ++g) {
            double r = g / 51.0;
            for (double p : positive_momenta(k)) {
                double th = saddle_theta(p, r, k);
                REQUIRE(saddle_residual(p, r, k, th) < 1e-12);
            }
        }
    }
}

TEST_CASE("rate function matches the k=2 closed form") {
    for (int g = 1; g <= 50; ++g) {
        double r = g / 51.0;
        REQUIRE(std::abs(rate_function(2, r) - rate_function_k2_closed(r)) < 1e-12);
    }
    REQUIRE(std::abs(rate_function(2, 0.5) - std::log(4.0 - 2.0 * std::sqrt(2.0))) < 1e-12);
    // r -> 1 limit vanishes
    REQUIRE(rate_function(2, 0.999999) < 1e-4);
}

TEST_CASE("exact finite-size rates approach the saddle value") {
    SECTION("r = 1/2") {
        ConvergenceReport rep = rate_vs_exact_convergence(0.5, {20, 50, 100, 200});
        REQUIRE(rep.monotone_decreasing);
        REQUIRE(rep.rows.back().delta < 0.05);
        REQUIRE(rep.envelope_constant > 0.0);
    }
    SECTION("r = 1/4") {
        ConvergenceReport rep = rate_vs_exact_convergence(0.25, {40, 80, 160});
        REQUIRE(rep.monotone_decreasing);
    }
    SECTION("non-integer cuts are rejected") {
        REQUIRE_THROWS_AS(rate_vs_exact_convergence(0.5, {21}), std::invalid_argument);
    }
}
