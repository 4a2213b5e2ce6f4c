#pragma once

#include <vector>

#include "negtrans/hamiltonian.hpp"
#include "negtrans/states.hpp"

namespace negtrans {

struct SeparableDecomposition {
    std::vector<double> weights;
    std::vector<DensityMatrix> left_states;   // on A~
    std::vector<DensityMatrix> right_states;  // on B at time t
};

// rho_A~B(t) = sum_e p_e rho_A~^e (x) rho_B^e(t) for H_tot = A (x) B + C (x) I + I (x) D with [C, A] = 0.
// Throws NoCertificateError for any other Hamiltonian form.
SeparableDecomposition product_decomposition(const TripartiteScenario& sc, double t);

ComplexMatrix reconstruct(const SeparableDecomposition& d);

// Frobenius distance between the reconstruction and the exact state.
double verify_certificate(const SeparableDecomposition& d, const DensityMatrix& exact);

}  // namespace negtrans
