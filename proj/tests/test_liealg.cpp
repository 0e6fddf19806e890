#include "ffc/liealg.hpp"

#include "test_helpers.hpp"

using namespace ffc;
using namespace ffc::liealg;

TEST_CASE("positive roots and Weyl vectors") {
    SECTION("so(4)") {
        RootSystem rs = positive_roots(AlgebraTag(AlgebraFamily::so_even, 4));
        REQUIRE(rs.positive_roots.size() == 2);
        REQUIRE(rs.weyl_vector == WeightVector{1, 0});
    }
    SECTION("su(2)") {
        RootSystem rs = positive_roots(AlgebraTag(AlgebraFamily::su, 2));
        REQUIRE(rs.positive_roots.size() == 1);
        REQUIRE(rs.positive_roots[0] == WeightVector{1, -1});
    }
    SECTION("so(6): pair enumeration") {
        RootSystem rs = positive_roots(AlgebraTag(AlgebraFamily::so_even, 6));
        REQUIRE(rs.positive_roots.size() == 6);
        REQUIRE(rs.weyl_vector == WeightVector{2, 1, 0});
    }
    SECTION("weyl vector is the exact half-sum") {
        for (int k : {1, 2, 3, 4}) {
            RootSystem rs = positive_roots(AlgebraTag(AlgebraFamily::so_even, 2 * k));
            WeightVector half(k, 0);
            for (const auto& r : rs.positive_roots)
                for (int i = 0; i < k; ++i) half[i] += r[i] / 2;
            REQUIRE(half == rs.weyl_vector);
        }
    }
    REQUIRE_THROWS_AS(AlgebraTag(AlgebraFamily::so_even, 5), std::invalid_argument);
}

TEST_CASE("casimir values") {
    SECTION("so(4) half-spin weight matches the on-site constant at k=2") {
        HighestWeight hw({bigrat(1, 2), bigrat(1, 2)}, AlgebraTag(AlgebraFamily::so_even, 4));
        REQUIRE(casimir_value(hw) == bigrat(3, 2));
    }
    SECTION("su(2k) half-filled local weight gives k^2 + k/2") {
        for (int k : {1, 2, 3}) {
            WeightVector w(2 * k, 0);
            for (int a = 0; a < k; ++a) w[a] = 1;
            HighestWeight hw(std::move(w), AlgebraTag(AlgebraFamily::su, 2 * k));
            REQUIRE(casimir_value(hw) == bigrat(k) * bigrat(k) + bigrat(k, 2));
        }
    }
    SECTION("zero weight") {
        HighestWeight hw(WeightVector(3, 0), AlgebraTag(AlgebraFamily::so_even, 6));
        REQUIRE(casimir_value(hw) == 0);
    }
}

TEST_CASE("weyl dimension formula") {
    SECTION("so(4), (L, L) -> 2L+1") {
        for (int L : {1, 2, 5}) {
            HighestWeight hw({bigrat(L), bigrat(L)}, AlgebraTag(AlgebraFamily::so_even, 4));
            REQUIRE(weyl_dim(hw) == 2 * L + 1);
        }
    }
    SECTION("su(2) spin") {
        for (int L : {1, 2, 7}) {
            HighestWeight hw({bigrat(L), bigrat(0)}, AlgebraTag(AlgebraFamily::su, 2));
            REQUIRE(weyl_dim(hw) == L + 1);
        }
    }
    SECTION("so(6), (2,2,2) -> 35") {
        HighestWeight hw({2, 2, 2}, AlgebraTag(AlgebraFamily::so_even, 6));
        REQUIRE(weyl_dim(hw) == 35);
    }
    SECTION("zero weight has dimension one") {
        for (int k : {1, 2, 3}) {
            REQUIRE(weyl_dim(HighestWeight(WeightVector(k, 0),
                                           AlgebraTag(AlgebraFamily::so_even, 2 * k))) == 1);
            REQUIRE(weyl_dim(HighestWeight(WeightVector(2 * k, 0),
                                           AlgebraTag(AlgebraFamily::su, 2 * k))) == 1);
        }
    }
    SECTION("spinor irrep of so(2k) has dimension 2^{k-1}") {
        for (int k : {2, 3, 4}) {
            HighestWeight hw(WeightVector(k, bigrat(1, 2)),
                             AlgebraTag(AlgebraFamily::so_even, 2 * k));
            REQUIRE(weyl_dim(hw) == (bigint(1) << (k - 1)));
        }
    }
    SECTION("half-filled su(2k) local space has dimension C(2k, k)") {
        auto choose = [](int n, int r) {
            bigint c = 1;
            for (int i = 0; i < r; ++i) {
                c *= n - i;
                c /= i + 1;
            }
            return c;
        };
        for (int k : {1, 2, 3}) {
            WeightVector w(2 * k, 0);
            for (int a = 0; a < k; ++a) w[a] = 1;
            REQUIRE(weyl_dim(HighestWeight(std::move(w), AlgebraTag(AlgebraFamily::su, 2 * k))) ==
                    choose(2 * k, k));
        }
    }
    SECTION("non-dominant weights are rejected") {
        REQUIRE_THROWS_AS(weyl_dim(HighestWeight({1, 2}, AlgebraTag(AlgebraFamily::so_even, 4))),
                          std::invalid_argument);
    }
}

TEST_CASE("commutant dimension formulas") {
    SECTION("matchgate k=1 is identity plus parity") {
        for (int L : {1, 2, 5, 9}) REQUIRE(commutant_dim(EnsembleKind::MG, 1, L) == 2);
    }
    SECTION("matchgate k=2") {
        REQUIRE(commutant_dim(EnsembleKind::MG, 2, 3) == 14);
        REQUIRE(commutant_dim(EnsembleKind::MG, 2, 2) == 10);
    }
    SECTION("number conserving") {
        REQUIRE(commutant_dim(EnsembleKind::NC, 1, 2) == 3);
        REQUIRE(commutant_dim(EnsembleKind::NC, 1, 4) == 5);
        REQUIRE(commutant_dim(EnsembleKind::NC, 2, 2) == 20);
    }
    SECTION("MG is twice MG* for all k, L") {
        for (int k = 1; k <= 5; ++k)
            for (int L = 1; L <= 5; ++L)
                REQUIRE(commutant_dim(EnsembleKind::MG, k, L) ==
                        2 * commutant_dim(EnsembleKind::MGstar, k, L));
    }
    SECTION("formulas agree with the Weyl dimension route") {
        for (int k = 1; k <= 4; ++k)
            for (int L = 1; L <= 4; ++L) {
                REQUIRE(commutant_dim(EnsembleKind::MGstar, k, L) ==
                        weyl_dim(mg_ground_weight(k, L)));
                REQUIRE(commutant_dim(EnsembleKind::NC, k, L) == weyl_dim(nc_ground_weight(k, L)));
            }
    }
    SECTION("flavored kinds map to plain at kN") {
        REQUIRE(commutant_dim(EnsembleKind::MG_flavored, 1, 2, 2) ==
                commutant_dim(EnsembleKind::MG, 2, 2));
        REQUIRE(commutant_dim(EnsembleKind::NC_flavored, 1, 3, 2) ==
                commutant_dim(EnsembleKind::NC, 2, 3));
    }
}
