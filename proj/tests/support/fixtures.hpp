#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>

#include "negtrans/hamiltonian.hpp"
#include "negtrans/states.hpp"
#include "support/oracle.hpp"

namespace fx {

using negtrans::ComplexMatrix;
using negtrans::cplx;

inline const cplx I{0.0, 1.0};

inline ComplexMatrix A1() { return {{2.0, 1.0 + I, 0.5}, {1.0 - I, 3.0, 4.0 + 2.0 * I}, {0.5, 4.0 - 2.0 * I, 1.0}}; }
inline ComplexMatrix B1() { return {{3.0, 2.0, 0.0}, {2.0, 1.0, 1.0}, {0.0, 1.0, 4.0}}; }
inline ComplexMatrix A2() { return {{1.0, 3.0, -0.25 * I}, {3.0, 2.0, 0.0}, {0.25 * I, 0.0, 3.0}}; }
inline ComplexMatrix B2() { return {{0.8, 2.0 - I, 1.0}, {2.0 + I, 1.0, 2.0 * I}, {1.0, -2.0 * I, 2.0}}; }
inline ComplexMatrix C3() { return {{1.0, 1.0, 3.0}, {1.0, 0.0, 2.0 * I}, {3.0, -2.0 * I, 0.5}}; }
inline ComplexMatrix D3() {
    return {{0.5, 2.0 + I, 8.0 + 3.0 * I}, {2.0 - I, 1.5, -4.0}, {8.0 - 3.0 * I, -4.0, 2.2}};
}
inline ComplexMatrix F2() { return {{0.0, 0.5 + 0.5 * I}, {0.5 - 0.5 * I, 1.0}}; }

inline negtrans::DensityMatrix rho_A_qutrit() { return negtrans::validate_density(ComplexMatrix::diag({0.6, 0.3, 0.1})); }
inline negtrans::DensityMatrix rho_B_qutrit_mixed() {
    return negtrans::validate_density(ComplexMatrix::diag({0.25, 0.4, 0.35}));
}
inline negtrans::DensityMatrix rho_A_qubit() { return negtrans::validate_density(ComplexMatrix::diag({0.8, 0.2})); }
inline negtrans::DensityMatrix rho_B_qubit() { return negtrans::validate_density(ComplexMatrix::diag({0.6, 0.4})); }

inline negtrans::TotalHamiltonian two_term_qutrit() {
    negtrans::TotalHamiltonian h;
    h.d_A = 3;
    h.d_B = 3;
    h.interaction = {{A1(), B1()}, {A2(), B2()}};
    return h;
}

inline negtrans::TotalHamiltonian swap_qubit() {
    negtrans::TotalHamiltonian h;
    h.d_A = 2;
    h.d_B = 2;
    h.interaction = {{negtrans::pauli_x(), negtrans::pauli_x()},
                     {negtrans::pauli_y(), negtrans::pauli_y()},
                     {negtrans::pauli_z(), negtrans::pauli_z()}};
    return h;
}

inline negtrans::TripartiteScenario qutrit_pure() {
    return negtrans::make_scenario(rho_A_qutrit(), negtrans::pure_state(3, 0), two_term_qutrit());
}
inline negtrans::TripartiteScenario qutrit_mixed() {
    return negtrans::make_scenario(rho_A_qutrit(), rho_B_qutrit_mixed(), two_term_qutrit());
}
inline negtrans::TripartiteScenario qutrit_pure_CD() {
    auto h = two_term_qutrit();
    h.free_C = C3();
    h.free_D = D3();
    return negtrans::make_scenario(rho_A_qutrit(), negtrans::pure_state(3, 0), h);
}
inline negtrans::TripartiteScenario qubit_swap() {
    return negtrans::make_scenario(rho_A_qubit(), rho_B_qubit(), swap_qubit());
}
inline negtrans::TripartiteScenario qubit_product_free() {
    negtrans::TotalHamiltonian h;
    h.d_A = 2;
    h.d_B = 2;
    h.interaction = {{negtrans::pauli_x(), negtrans::pauli_y()}};
    h.free_D = F2();
    return negtrans::make_scenario(rho_A_qubit(), negtrans::pure_state(2, 0), h);
}

struct RandomCase {
    negtrans::TripartiteScenario sc;
    std::vector<double> lambda;  // descending spectrum of rho_A
    ComplexMatrix u;             // rho_A = u diag(lambda) u^dagger
    ComplexMatrix rho_b;
    ComplexMatrix h_tot;         // assembled with the oracle's own tensor product
    ComplexMatrix rho_tri0;      // built from (lambda, u) without the library's purification
};

struct RandomOptions {
    std::size_t d_A = 3;
    std::size_t d_B = 3;
    std::size_t terms = 2;
    std::size_t rank_B = 0;  // 0 = full rank
    bool free_C = false;
    bool free_D = false;
};

inline RandomCase random_case(oracle::Rng& rng, const RandomOptions& o) {
    RandomCase rc;
    std::vector<double> w(o.d_A);
    double sum = 0.0;
    for (auto& x : w) sum += (x = rng.uniform(0.1, 1.0));
    for (auto& x : w) x /= sum;
    std::sort(w.begin(), w.end(), std::greater<>());
    rc.lambda = w;
    rc.u = rng.unitary(o.d_A);
    const ComplexMatrix rho_a = oracle::mul(oracle::mul(rc.u, ComplexMatrix::diag(w)), oracle::dag(rc.u));

    const std::size_t rank = o.rank_B == 0 ? o.d_B : o.rank_B;
    const ComplexMatrix g = rng.ginibre(o.d_B, rank);
    ComplexMatrix rb = oracle::mul(g, oracle::dag(g));
    cplx tr = 0.0;
    for (std::size_t i = 0; i < o.d_B; ++i) tr += rb(i, i);
    rc.rho_b = oracle::scale(rb, 1.0 / tr);

    negtrans::TotalHamiltonian h;
    h.d_A = o.d_A;
    h.d_B = o.d_B;
    rc.h_tot = ComplexMatrix(o.d_A * o.d_B, o.d_A * o.d_B);
    for (std::size_t p = 0; p < o.terms; ++p) {
        const ComplexMatrix a = rng.hermitian(o.d_A), b = rng.hermitian(o.d_B);
        h.interaction.push_back({a, b});
        rc.h_tot = oracle::add(rc.h_tot, oracle::tensor(a, b));
    }
    if (o.free_C) {
        h.free_C = rng.hermitian(o.d_A);
        rc.h_tot = oracle::add(rc.h_tot, oracle::tensor(*h.free_C, oracle::eye(o.d_B)));
    }
    if (o.free_D) {
        h.free_D = rng.hermitian(o.d_B);
        rc.h_tot = oracle::add(rc.h_tot, oracle::tensor(oracle::eye(o.d_A), *h.free_D));
    }
    rc.sc = negtrans::make_scenario(negtrans::validate_density(rho_a), negtrans::validate_density(rc.rho_b), h);
    rc.rho_tri0 = oracle::tri_initial(rc.lambda, rc.u, rc.rho_b);
    return rc;
}

// Negativities of the oracle-evolved tripartite state, in trajectory column order.
inline std::array<double, 5> oracle_negativities(const ComplexMatrix& tri, std::size_t dA, std::size_t dB) {
    const std::vector<std::size_t> dims{dA, dA, dB};
    return {oracle::negativity2(oracle::reduce(tri, dims, {false, true, true}), dA, dB),
            oracle::negativity2(oracle::reduce(tri, dims, {true, false, true}), dA, dB),
            oracle::negativity2(oracle::reduce(tri, dims, {true, true, false}), dA, dA),
            oracle::negativity(tri, dims, {true, false, false}),
            oracle::negativity(tri, dims, {false, false, true})};
}

}  // namespace fx
