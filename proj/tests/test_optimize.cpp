#include <cmath>

#include "doctest.h"
#include "negtrans/errors.hpp"
#include "negtrans/optimize.hpp"
#include "negtrans/perturb.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"

using namespace negtrans;

namespace {

BlochVector random_bloch(oracle::Rng& rng, double rmax) {
    BlochVector b{rng.normal(), rng.normal(), rng.normal()};
    const double s = rng.uniform(1e-3, rmax) / b.r();
    return {b.ax * s, b.ay * s, b.az * s};
}

}  // namespace

TEST_CASE("qubit G_A in Bloch coordinates") {
    oracle::Rng rng(71);
    for (int trial = 0; trial < 200; ++trial) {
        const double a1 = rng.normal(), a2 = rng.normal();
        const BlochVector b = random_bloch(rng, 0.999);
        const double closed = qubit_GA_bloch(a1, a2, b);
        CHECK(std::abs(closed - amplitude_variance_GA(ComplexMatrix::diag({a1, a2}), bloch_to_density(b).mat)) <= 1e-12);
    }

    const double a1 = 1.3, a2 = -0.4, r = 0.6;
    const double pre = (a1 - a2) * (a1 - a2) / 4.0, s = std::sqrt(1.0 - r * r);
    CHECK(qubit_GA_bloch(a1, a2, {0.0, 0.0, r}) == doctest::Approx(pre * 2.0 * s));
    CHECK(qubit_GA_bloch(a1, a2, {0.0, 0.0, -r}) == doctest::Approx(pre * 2.0 * s));
    CHECK(qubit_GA_bloch(a1, a2, {r, 0.0, 0.0}) == doctest::Approx(pre * (s + 1.0)));
    CHECK(qubit_GA_bloch(a1, a2, {0.0, 0.0, 0.0}) == doctest::Approx(2.0 * pre));
    CHECK(qubit_GA_bloch(0.7, 0.7, {0.1, 0.2, 0.3}) == 0.0);
    CHECK_THROWS_AS(qubit_GA_bloch(1.0, 0.0, {0.9, 0.9, 0.0}), DomainError);

    // Scanning the polar angle on a fixed radius: extrema at the poles and the equator.
    double lo = 1e9, hi = -1e9, lo_z = 0.0, hi_z = 0.0;
    for (int k = 0; k <= 180; ++k) {
        const double th = M_PI * k / 180.0;
        const double v = qubit_GA_bloch(a1, a2, {r * std::sin(th), 0.0, r * std::cos(th)});
        if (v < lo) lo = v, lo_z = r * std::cos(th);
        if (v > hi) hi = v, hi_z = r * std::cos(th);
    }
    CHECK(std::abs(std::abs(lo_z) - r) < 1e-12);
    CHECK(std::abs(hi_z) < 1e-12);
}

TEST_CASE("spectrum-constrained family") {
    oracle::Rng rng(72);
    const SpectrumConstrainedFamily fam{{0.6, 0.3, 0.1}};
    CHECK(fam.n_params() == 9);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> th(9);
        for (auto& x : th) x = rng.uniform(-3.0, 3.0);
        const DensityMatrix rho = fam.at(th);
        CHECK_NOTHROW(validate_density(rho.mat));
        const auto ev = oracle::eigvalsh(rho.mat);
        CHECK(std::abs(ev[0] - 0.1) < 1e-10);
        CHECK(std::abs(ev[1] - 0.3) < 1e-10);
        CHECK(std::abs(ev[2] - 0.6) < 1e-10);
    }
    CHECK_THROWS_AS(fam.generator({1.0}), ShapeError);
}

TEST_CASE("extremize") {
    SUBCASE("constant functional") {
        const SpectrumConstrainedFamily fam{{0.8, 0.2}};
        OptimizeOptions opt;
        opt.budget = 100;
        const OptimizeResult r = extremize([](const DensityMatrix&) { return 1.5; }, fam, opt);
        CHECK(r.best_value == 1.5);
        CHECK(r.best_restart == 0);
        CHECK(r.best_theta == std::vector<double>(4, 0.0));
        for (double v : r.trace) CHECK(v == 1.5);
    }

    SUBCASE("G_A minimum on the qubit family hits the analytic value") {
        const SpectrumConstrainedFamily fam{{0.8, 0.2}};
        const ComplexMatrix a = ComplexMatrix::diag({1.0, -1.0});
        OptimizeOptions opt;
        opt.budget = 2000;
        opt.seed = 7;
        opt.initial_theta = {0.0, 0.0, 0.9, 0.4};
        const OptimizeResult r =
            extremize([&](const DensityMatrix& rho) { return amplitude_variance_GA(a, rho.mat); }, fam, opt);
        const double analytic = qubit_GA_bloch(1.0, -1.0, {0.0, 0.0, 0.6});
        CHECK(std::abs(r.best_value - analytic) <= 1e-6);
        CHECK(std::abs(std::abs(density_to_bloch(r.best_state).az) - 0.6) <= 1e-3);
        for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] <= r.trace[i - 1]);
    }

    SUBCASE("V maximum over the qubit family moves the Bloch vector to a pole") {
        TotalHamiltonian h;
        h.d_A = 2;
        h.d_B = 2;
        h.interaction = {{pauli_z(), pauli_x()}};
        const TripartiteScenario base = make_scenario(fx::rho_A_qubit(), pure_state(2, 0), h);
        const SpectrumConstrainedFamily fam{{0.8, 0.2}};
        OptimizeOptions opt;
        opt.direction = Direction::max;
        opt.budget = 1500;
        opt.seed = 3;
        opt.initial_theta = {0.0, 0.0, 0.7, -0.5};
        const OptimizeResult r = extremize(scenario_functional(Functional::V, base), fam, opt);
        CHECK(std::abs(std::abs(density_to_bloch(r.best_state).az) - 0.6) <= 1e-3);
        for (std::size_t i = 1; i < r.trace.size(); ++i) CHECK(r.trace[i] >= r.trace[i - 1]);
    }

    SUBCASE("maximizing T never ends below the start") {
        const TripartiteScenario base = fx::qutrit_pure();
        const SpectrumConstrainedFamily fam{{0.6, 0.3, 0.1}};
        OptimizeOptions opt;
        opt.direction = Direction::max;
        opt.budget = 300;
        opt.seed = 11;
        const ObjectiveFn fn = scenario_functional(Functional::T, base);
        const OptimizeResult r = extremize(fn, fam, opt);
        CHECK(r.best_value >= fn(fam.at(std::vector<double>(9, 0.0))));
        CHECK(r.trace.size() == 300);
    }

    SUBCASE("bit-for-bit reproducible") {
        const SpectrumConstrainedFamily fam{{0.6, 0.3, 0.1}};
        const ObjectiveFn fn = scenario_functional(Functional::V, fx::qutrit_pure());
        OptimizeOptions opt;
        opt.budget = 200;
        opt.seed = 99;
        const OptimizeResult a = extremize(fn, fam, opt), b = extremize(fn, fam, opt);
        CHECK(a.best_theta == b.best_theta);
        CHECK(a.best_value == b.best_value);
        CHECK(a.trace == b.trace);
    }

    SUBCASE("regime errors carry the offending parameters") {
        const SpectrumConstrainedFamily fam{{0.6, 0.3, 0.1}};
        OptimizeOptions opt;
        opt.budget = 20;
        try {
            extremize(scenario_functional(Functional::S, fx::qutrit_mixed()), fam, opt);
            FAIL("expected a regime error");
        } catch (const RegimeError& e) {
            CHECK(std::string(e.what()).find("theta=") != std::string::npos);
        }
    }

    SUBCASE("functional names") {
        CHECK(parse_functional("G_A") == Functional::G_A);
        CHECK(std::string(functional_name(Functional::T)) == "T");
        CHECK_THROWS_AS(parse_functional("W"), ValidationError);
    }
}
