#include "ffc/fock.hpp"

#include "ffc/product_basis.hpp"
#include "ffc/gaussian.hpp"
#include "test_helpers.hpp"

using namespace ffc;
using namespace ffc_test;

TEST_CASE("majorana modes satisfy the defining relations") {
    FockOperator g1 = fock::majorana(1, 1);
    REQUIRE(diff(g1.matrix * g1.matrix, Matrix::Identity(2, 2)) == 0.0);
    REQUIRE(diff(g1.matrix, g1.matrix.adjoint()) == 0.0);

    FockOperator a = fock::majorana(1, 2), b = fock::majorana(2, 2);
    REQUIRE(max_abs(a.matrix * b.matrix + b.matrix * a.matrix) == 0.0);
    REQUIRE(diff(a.matrix * a.matrix + a.matrix * a.matrix, 2 * Matrix::Identity(4, 4)) == 0.0);

    REQUIRE_THROWS_AS(fock::majorana(5, 2), std::out_of_range);
}

TEST_CASE("majorana modes match the hand-built L=2 Pauli table") {
    // gamma_1 = X I, gamma_2 = Y I, gamma_3 = Z X, gamma_4 = Z Y
    Matrix table[4] = {kron(pauli_x(), pauli_i()), kron(pauli_y(), pauli_i()),
                       kron(pauli_z(), pauli_x()), kron(pauli_z(), pauli_y())};
    for (int i = 1; i <= 4; ++i) REQUIRE(diff(fock::majorana(i, 2).matrix, table[i - 1]) == 0.0);
    for (int i = 1; i <= 2; ++i) {
        Matrix g3 = table[2];
        REQUIRE(max_abs(g3 * table[i - 1] + table[i - 1] * g3) == 0.0);
    }
}

TEST_CASE("replica modes embed and conjugate") {
    FockLayout lay(1, 2, ModeKind::majorana);
    Matrix g1 = fock::majorana(1, 1).matrix;
    Matrix g2 = fock::majorana(2, 1).matrix;
    Matrix id = Matrix::Identity(2, 2);

    REQUIRE(diff(fock::replica_mode(1, 1, lay).matrix, kron(g1, id)) == 0.0);
    // even replica: entrywise conjugate of the plain embedding
    REQUIRE(diff(fock::replica_mode(2, 2, lay).matrix, kron(id, g2).conjugate()) == 0.0);
    REQUIRE_THROWS_AS(fock::replica_mode(1, 3, lay), std::out_of_range);
}

TEST_CASE("replica modes square to one and commute across replicas") {
    FockLayout lay(1, 4, ModeKind::majorana);  // k=2, L=1
    for (int i = 1; i <= 2; ++i)
        for (int a = 1; a <= 4; ++a) {
            Matrix g = fock::replica_mode(i, a, lay).matrix;
            REQUIRE(diff(g * g, Matrix::Identity(16, 16)) == 0.0);
        }
    for (int a = 1; a <= 4; ++a)
        for (int b = a + 1; b <= 4; ++b) {
            Matrix ga = fock::replica_mode(1, a, lay).matrix;
            Matrix gb = fock::replica_mode(2, b, lay).matrix;
            REQUIRE(max_abs(ga * gb - gb * ga) == 0.0);
        }
}

TEST_CASE("replica parity anticommutes within its replica only") {
    FockLayout lay(2, 4, ModeKind::majorana);
    for (int b = 1; b <= 4; ++b) {
        Matrix G = PauliSum(fock::replica_parity(b, lay)).to_dense();
        REQUIRE(diff(G * G, Matrix::Identity(lay.dim(), lay.dim())) == 0.0);
        for (int i = 1; i <= 4; ++i)
            for (int bp = 1; bp <= 4; ++bp) {
                Matrix g = fock::replica_mode(i, bp, lay).matrix;
                if (bp == b)
                    REQUIRE(max_abs(G * g + g * G) == 0.0);
                else
                    REQUIRE(max_abs(G * g - g * G) == 0.0);
            }
    }
}

TEST_CASE("klein dressing produces full anticommutation") {
    SECTION("empty string on replica 1") {
        FockLayout lay(1, 2, ModeKind::majorana);
        REQUIRE(diff(fock::klein_mode(1, 1, lay).matrix, fock::replica_mode(1, 1, lay).matrix) ==
                0.0);
    }
    SECTION("k=2, L=1: bars anticommute where tildes commute") {
        FockLayout lay(1, 4, ModeKind::majorana);
        Matrix b1 = fock::klein_mode(1, 1, lay).matrix;
        Matrix b2 = fock::klein_mode(1, 2, lay).matrix;
        Matrix t1 = fock::replica_mode(1, 1, lay).matrix;
        Matrix t2 = fock::replica_mode(1, 2, lay).matrix;
        REQUIRE(max_abs(b1 * b2 + b2 * b1) == 0.0);
        REQUIRE(max_abs(t1 * t2 - t2 * t1) == 0.0);
    }
    SECTION("k=2, L=2: exhaustive CAR") {
        FockLayout lay(2, 4, ModeKind::majorana);
        fock::KleinCache kc(lay);
        std::vector<Matrix> bars;
        for (int i = 1; i <= 4; ++i)
            for (int a = 1; a <= 4; ++a)
                bars.push_back(PauliSum(fock::gamma_bar(i, a, lay, kc)).to_dense());
        Matrix id2 = 2 * Matrix::Identity(lay.dim(), lay.dim());
        for (size_t p = 0; p < bars.size(); ++p)
            for (size_t q = p; q < bars.size(); ++q) {
                Matrix ac = bars[p] * bars[q] + bars[q] * bars[p];
                REQUIRE(max_abs(ac - (p == q ? id2 : Matrix::Zero(lay.dim(), lay.dim()))) <
                        1e-12);
            }
    }
}

TEST_CASE("dressing is transparent on even products") {
    // parity-even operators need no Klein string: gbar_i^a gbar_j^a = gt_i^a gt_j^a
    FockLayout lay(1, 4, ModeKind::majorana);
    fock::KleinCache kc(lay);
    RngStream rng(5, StreamDomain::haar_tests, 2);
    for (int a = 1; a <= 4; ++a)
        for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
                Matrix dressed = PauliSum(fock::gamma_bar(i, a, lay, kc) *
                                          fock::gamma_bar(j, a, lay, kc))
                                     .to_dense();
                Matrix plain =
                    PauliSum(fock::gamma_tilde(i, a, lay) * fock::gamma_tilde(j, a, lay)).to_dense();
                REQUIRE(diff(dressed, plain) == 0.0);
            }
    // random even quadratics, dressed on two replicas, multiply consistently
    for (int trial = 0; trial < 4; ++trial) {
        cxd c1(rng.next_normal(), rng.next_normal()), c2(rng.next_normal(), rng.next_normal());
        PauliSum x(lay.n_qubits()), y(lay.n_qubits());
        x += fock::gamma_bar(1, 1, lay, kc) * fock::gamma_bar(2, 1, lay, kc) * c1;
        y += fock::gamma_bar(1, 3, lay, kc) * fock::gamma_bar(2, 3, lay, kc) * c2;
        PauliSum xp(lay.n_qubits()), yp(lay.n_qubits());
        xp += fock::gamma_tilde(1, 1, lay) * fock::gamma_tilde(2, 1, lay) * c1;
        yp += fock::gamma_tilde(1, 3, lay) * fock::gamma_tilde(2, 3, lay) * c2;
        REQUIRE(diff((x * y).to_dense(), (xp * yp).to_dense()) == 0.0);
    }
}

TEST_CASE("chirality operators square to one with eigenvalues +-1") {
    SECTION("k=1, L=1 explicit form") {
        FockLayout lay(1, 2, ModeKind::majorana);
        Matrix ch = fock::chirality(1, lay).matrix;
        Matrix b1 = fock::klein_mode(1, 1, lay).matrix;
        Matrix b2 = fock::klein_mode(1, 2, lay).matrix;
        REQUIRE(diff(ch, cxd(0, -1) * b1 * b2) == 0.0);
        Eigen::SelfAdjointEigenSolver<Matrix> es(ch);
        for (int i = 0; i < es.eigenvalues().size(); ++i)
            REQUIRE(std::abs(std::abs(es.eigenvalues()(i)) - 1.0) < 1e-12);
    }
    SECTION("k=2 squares to identity") {
        FockLayout lay(1, 4, ModeKind::majorana);
        Matrix ch = fock::chirality(2, lay).matrix;
        REQUIRE(diff(ch * ch, Matrix::Identity(lay.dim(), lay.dim())) == 0.0);
    }
}

TEST_CASE("complex modes satisfy canonical anticommutation") {
    FockLayout lay(2, 2, ModeKind::complex_fermion);
    auto [c1, c1d] = fock::complex_modes(1, lay);
    auto [c2, c2d] = fock::complex_modes(2, lay);
    Matrix id = Matrix::Identity(lay.dim(), lay.dim());
    REQUIRE(max_abs(c1.matrix * c1d.matrix + c1d.matrix * c1.matrix - id) < 1e-13);
    REQUIRE(max_abs(c1.matrix * c1.matrix) == 0.0);
    Matrix n1 = c1d.matrix * c1.matrix;
    Eigen::SelfAdjointEigenSolver<Matrix> es(n1);
    for (int i = 0; i < es.eigenvalues().size(); ++i) {
        double v = es.eigenvalues()(i);
        REQUIRE(std::min(std::abs(v), std::abs(v - 1.0)) < 1e-12);
    }
    // number operator commutes with the hopping term
    Matrix num = c1d.matrix * c1.matrix + c2d.matrix * c2.matrix;
    Matrix hop = c1d.matrix * c2.matrix + c2d.matrix * c1.matrix;
    REQUIRE(max_abs(num * hop - hop * num) < 1e-13);
}

TEST_CASE("site swap is an involution acting on product factors") {
    FockLayout lay(1, 4, ModeKind::majorana);  // k=2: two Majorana sites
    Matrix swap = fock::site_swap(1, 2, lay).matrix;
    REQUIRE(diff(swap * swap, Matrix::Identity(lay.dim(), lay.dim())) < 1e-12);
    REQUIRE_THROWS_AS(fock::site_swap(1, 1, lay), std::invalid_argument);

    fock::SiteBasis basis(lay, fock::SiteBasis::Kind::majorana_sites);
    RngStream rng(11, StreamDomain::haar_tests, 3);
    Vector v = random_state(4, rng), w = random_state(4, rng);
    Vector vw = basis.product_state({v, w});
    Vector wv = basis.product_state({w, v});
    REQUIRE((swap * vw - wv).norm() < 1e-12);

    // symmetric Gaussian products are fixed points
    RngStream stream(2, StreamDomain::haar_tests, 4);
    auto R = gaussian::haar_so(4, stream);
    PureState site = gaussian::thouless_state(gaussian::bogoliubov_blocks(R));
    Vector sym = basis.uniform_product_state(site.amplitudes);
    REQUIRE((swap * sym - sym).norm() < 1e-12);
}

TEST_CASE("product basis is unitary") {
    FockLayout lay(2, 2, ModeKind::majorana);
    fock::SiteBasis basis(lay, fock::SiteBasis::Kind::majorana_sites);
    Matrix phi = basis.phi();
    REQUIRE(diff(phi.adjoint() * phi, Matrix::Identity(lay.dim(), lay.dim())) < 1e-12);

    FockLayout layn(2, 2, ModeKind::complex_fermion);
    fock::SiteBasis basisn(layn, fock::SiteBasis::Kind::phys_sites);
    Matrix phin = basisn.phi();
    REQUIRE(diff(phin.adjoint() * phin, Matrix::Identity(layn.dim(), layn.dim())) < 1e-12);
}
