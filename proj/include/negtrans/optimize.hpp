#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "negtrans/hamiltonian.hpp"
#include "negtrans/states.hpp"

namespace negtrans {

// G_A for A = diag(a1, a2) and rho_A = (I + a.sigma)/2.
double qubit_GA_bloch(double a1, double a2, const BlochVector& b);

// rho(theta) = U(theta) diag(spectrum) U(theta)^dagger, U = exp(-i K(theta)) with K Hermitian built
// from d^2 real parameters (d diagonal entries, then real and imaginary parts of the upper triangle).
struct SpectrumConstrainedFamily {
    std::vector<double> fixed_spectrum;

    std::size_t dim() const { return fixed_spectrum.size(); }
    std::size_t n_params() const { return dim() * dim(); }
    ComplexMatrix generator(const std::vector<double>& theta) const;
    DensityMatrix at(const std::vector<double>& theta) const;
};

enum class Functional { S, T, V, G_A };
enum class Direction { min, max };

Functional parse_functional(const std::string& s);
const char* functional_name(Functional f);

using ObjectiveFn = std::function<double(const DensityMatrix&)>;

// The chosen functional as a function of rho_A, with rho_B and the Hamiltonian taken from `base`.
// G_A uses the A operator of the first interaction term.
ObjectiveFn scenario_functional(Functional f, const TripartiteScenario& base);

struct OptimizeOptions {
    Direction direction = Direction::min;
    std::size_t budget = 2000;
    std::uint64_t seed = 0;
    std::size_t restarts = 5;
    std::vector<double> initial_theta;  // defaults to zeros
    double initial_step = 0.5;
};

struct OptimizeResult {
    std::vector<double> best_theta;
    double best_value = 0.0;
    std::size_t best_restart = 0;
    std::vector<double> trace;  // best value so far after each evaluation, restarts concatenated in order
    DensityMatrix best_state;
};

// Nelder-Mead with restarts. Restart 0 starts at initial_theta, the others at seeded random points.
OptimizeResult extremize(const ObjectiveFn& fn, const SpectrumConstrainedFamily& family, const OptimizeOptions& opt);

}  // namespace negtrans
