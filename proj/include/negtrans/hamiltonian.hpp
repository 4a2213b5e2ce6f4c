#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "negtrans/qmat.hpp"
#include "negtrans/states.hpp"

namespace negtrans {

struct InteractionTerm {
    ComplexMatrix A;  // d_A x d_A
    ComplexMatrix B;  // d_B x d_B
};

// H_tot = C (x) I + sum_p A_p (x) B_p + I (x) D, plus E acting on the ancilla.
struct TotalHamiltonian {
    std::size_t d_A = 0;
    std::size_t d_B = 0;
    std::vector<InteractionTerm> interaction;
    std::optional<ComplexMatrix> free_C;
    std::optional<ComplexMatrix> free_D;
    std::optional<ComplexMatrix> free_E;

    // Free parts folded into the pair list as (C, I) and (I, D).
    std::vector<InteractionTerm> absorbed() const;
    ComplexMatrix h_tot() const;
    void validate() const;
};

struct TripartiteScenario {
    SchmidtPair schmidt;
    DensityMatrix rho_a;
    DensityMatrix rho_b;
    TotalHamiltonian ham;
    std::size_t d_A = 0;
    std::size_t d_B = 0;
    double zero_tol = kDefaultZeroTol;

    ComplexMatrix rho_AtA0() const;  // |omega><omega|
    ComplexMatrix rho_tri0() const;  // |omega><omega| (x) rho_B
    std::size_t dim_tri() const { return d_A * d_A * d_B; }
};

// Validates dimensions and Hermiticity and enforces det(rho_A) != 0 (all alpha_i >= 1e-6).
TripartiteScenario make_scenario(const DensityMatrix& rho_a, const DensityMatrix& rho_b, TotalHamiltonian ham,
                                 double zero_tol = kDefaultZeroTol);

// H_tri = E (x) I (x) I + I (x) H_tot on the ordering A~ (x) A (x) B.
ComplexMatrix build_total(const TripartiteScenario& sc);

struct EvolvedStates {
    DensityMatrix rho_AB;
    DensityMatrix rho_AtB;
    DensityMatrix rho_AtA;
    DensityMatrix rho_tri;
};

EvolvedStates reduce_tripartite(const ComplexMatrix& rho_tri, std::size_t d_A, std::size_t d_B);
EvolvedStates evolve_exact(const TripartiteScenario& sc, double t);

enum class Bipartition { AB, AtB, AtA };
const char* bipartition_name(Bipartition b);

struct PerturbedDensity {
    ComplexMatrix order0;
    ComplexMatrix order1;
    ComplexMatrix order2;
    std::string label;
};

PerturbedDensity perturbed_rho_tri(const TripartiteScenario& sc);
PerturbedDensity perturbed_rho_bipartite(const TripartiteScenario& sc, Bipartition which);
BipartiteShape bipartition_shape(const TripartiteScenario& sc, Bipartition which);

inline constexpr std::size_t kTrajectoryColumns = 8;
inline constexpr std::array<const char*, kTrajectoryColumns> kTrajectoryColumnNames = {
    "neg_AB", "neg_AtB", "neg_AtA", "neg_At_AB", "neg_B_AtA", "purity_A", "purity_B", "purity_AB"};

struct Trajectory {
    std::vector<double> t;
    std::vector<std::array<double, kTrajectoryColumns>> rows;

    std::vector<double> column(const std::string& name) const;
};

std::array<double, kTrajectoryColumns> trajectory_point(const ComplexMatrix& rho_tri, std::size_t d_A,
                                                        std::size_t d_B);

// Per-time-point evaluation spread over OpenMP threads; output is identical to trajectory_serial.
Trajectory trajectory(const TripartiteScenario& sc, const std::vector<double>& t_grid);
Trajectory trajectory_serial(const TripartiteScenario& sc, const std::vector<double>& t_grid);

std::vector<double> linear_grid(double start, double stop, std::size_t points);

}  // namespace negtrans
