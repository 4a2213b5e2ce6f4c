#include <cmath>

#include "doctest.h"
#include "negtrans/errors.hpp"
#include "negtrans/negativity.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace negtrans;

TEST_CASE("negativity of reference states") {
    oracle::Rng rng(31);
    CHECK(negativity(kron(rng.density(2), rng.density(3)), {2, 3}).value < 1e-12);

    ComplexMatrix psi(4, 1);
    psi(0, 0) = psi(3, 0) = 1.0 / std::sqrt(2.0);
    const NegativityResult bell = negativity(psi * psi.adjoint(), {2, 2});
    CHECK(bell.value == doctest::Approx(0.5));
    CHECK(bell.negative_count == 1);

    const SchmidtPair s = purify(fx::rho_A_qubit());
    CHECK(negativity(s.projector(), {2, 2}).value == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("pure-state formula") {
    CHECK(pure_negativity({1.0, 0.0}) == doctest::Approx(0.0));
    CHECK(pure_negativity({1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)}) == doctest::Approx(0.5));
    const SchmidtPair s = purify(fx::rho_A_qutrit());
    const double expect = std::sqrt(0.18) + std::sqrt(0.06) + std::sqrt(0.03);
    CHECK(pure_negativity(s.coeffs) == doctest::Approx(expect).epsilon(1e-12));
    CHECK(pure_negativity(s.coeffs) == doctest::Approx(0.84243).epsilon(1e-5));
    CHECK(negativity(s.projector(), {3, 3}).value == doctest::Approx(expect).epsilon(1e-10));
    CHECK_THROWS_AS(pure_negativity({0.5, 0.5}), DomainError);
}

TEST_CASE("negativity properties on random states") {
    oracle::Rng rng(32);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t d1 = rng.index(2, 3), d2 = rng.index(2, 3);
        const ComplexMatrix rho = rng.density(d1 * d2);
        const NegativityResult r = negativity(rho, {d1, d2});
        CHECK(r.value >= -1e-12);
        CHECK(r.value == doctest::Approx(negativity_trace_norm(rho, {d1, d2})).epsilon(1e-10));
        CHECK(r.value == doctest::Approx(oracle::negativity2(rho, d1, d2)).epsilon(1e-10));
        // Transposing the second factor instead gives the same value.
        CHECK(r.value == doctest::Approx(oracle::negativity(rho, {d1, d2}, {false, true})).epsilon(1e-10));

        // Local unitaries leave negativity unchanged.
        const ComplexMatrix u = kron(rng.unitary(d1), rng.unitary(d2));
        CHECK(negativity(hermitian_part(u * rho * u.adjoint()), {d1, d2}).value ==
              doctest::Approx(r.value).epsilon(1e-10));

        // Random pure states: negativity equals the Schmidt formula.
        ComplexMatrix psi = rng.ginibre(d1 * d2, 1);
        psi *= 1.0 / psi.frobenius_norm();
        ComplexMatrix m(d1, d2);
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d2; ++j) m(i, j) = psi(i * d2 + j, 0);
        std::vector<double> alpha;
        const ComplexMatrix gram = d1 <= d2 ? oracle::mul(m, oracle::dag(m)) : oracle::mul(oracle::dag(m), m);
        for (double lam : oracle::eigvalsh(gram)) alpha.push_back(std::sqrt(std::max(0.0, lam)));
        CHECK(negativity(psi * psi.adjoint(), {d1, d2}).value == doctest::Approx(pure_negativity(alpha)).epsilon(1e-9));
    }
}

TEST_CASE("PPT conclusiveness") {
    CHECK(is_ppt_conclusive({2, 2}));
    CHECK(is_ppt_conclusive({2, 3}));
    CHECK(is_ppt_conclusive({3, 2}));
    CHECK_FALSE(is_ppt_conclusive({3, 3}));
    CHECK_FALSE(is_ppt_conclusive({2, 4}));
}

TEST_CASE("Gurvits ball") {
    const GurvitsResult g = gurvits_separable(fx::rho_A_qutrit(), fx::rho_B_qutrit_mixed());
    CHECK(g.product_purity == doctest::Approx(0.1587).epsilon(1e-12));
    CHECK(g.threshold == doctest::Approx(0.125));
    CHECK_FALSE(g.certified);

    const GurvitsResult mm = gurvits_separable(validate_density(ComplexMatrix::diag({1.0 / 3, 1.0 / 3, 1.0 / 3})),
                                               validate_density(ComplexMatrix::diag({1.0 / 3, 1.0 / 3, 1.0 / 3})));
    CHECK(mm.product_purity == doctest::Approx(1.0 / 9.0));
    CHECK(mm.certified);
}
