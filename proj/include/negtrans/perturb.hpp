#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "negtrans/hamiltonian.hpp"
#include "negtrans/qmat.hpp"
#include "negtrans/states.hpp"

namespace negtrans {

// H(t) = H0 + t H1 + t^2 H2
struct EigPerturbInput {
    ComplexMatrix H0;
    ComplexMatrix H1;
    ComplexMatrix H2;
};

struct EigBranch {
    double e0 = 0.0;
    double e1 = 0.0;
    double e2 = 0.0;
    double at(double t) const { return e0 + t * e1 + t * t * e2; }
};

// One branch per eigenvalue of H0, ascending. Throws GapError if two eigenvalues are within 1e-8.
std::vector<EigBranch> eig_perturb_nondegenerate(const EigPerturbInput& inp);

// Branches living in the eigenspace of H0 selected by `eigenspace_projector`, sorted by (e1, e2).
// When H1 restricted to the eigenspace is non-zero the eigenspace is split by the first-order
// reduction and each sub-block gets its own second-order reduction.
std::vector<EigBranch> eig_perturb_degenerate(const EigPerturbInput& inp, const ComplexMatrix& eigenspace_projector);

// All branches of the spectrum, clustering H0 eigenvalues closer than cluster_tol.
std::vector<EigBranch> eig_perturb_all(const EigPerturbInput& inp, double cluster_tol = 1e-8);

// Orthonormal columns spanning the range of a projector.
ComplexMatrix range_basis(const ComplexMatrix& projector);
// Q^dagger m Q with Q = range_basis(projector).
ComplexMatrix compress(const ComplexMatrix& m, const ComplexMatrix& projector);

struct NegativityExpansion {
    double n0 = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
};

// N(t) = n0 + n1 t + n2 t^2 + O(t^3) for the partial-transposed family H0 + t H1 + t^2 H2.
NegativityExpansion negativity_expansion(const EigPerturbInput& pt_orders);

// Partial transposes of the three perturbative orders of a bipartite reduced state.
EigPerturbInput pt_orders(const TripartiteScenario& sc, Bipartition which);

struct FOperators {
    bool applicable = false;  // false when P_B^D = 0
    std::size_t n_pairs = 0;
    ComplexMatrix f_AB;   // on H_A (x) H_B, supported on H_A (x) D_B
    ComplexMatrix f_AtB;  // on H_A~ (x) H_B, supported on H_A~ (x) D_B
    std::vector<ComplexMatrix> F_A;   // index p * n_pairs + q
    std::vector<ComplexMatrix> F_B;
    std::vector<ComplexMatrix> F_At;
    ComplexMatrix r_A;
    ComplexMatrix proj_D;  // P_B^D
};

FOperators f_operators(const TripartiteScenario& sc);

// (A^q A^p - A^p A^q) o R_A in the rho_A eigenbasis, the coordinate form of F_At^{pq}.
ComplexMatrix f_At_coordinate(const TripartiteScenario& sc, std::size_t p, std::size_t q);

enum class FormulaPath { susceptibility, transmissibility, vulnerability };
const char* formula_path_name(FormulaPath f);

struct PerturbationReport {
    Bipartition bipartition = Bipartition::AB;
    double n0 = 0.0;
    double n1 = 0.0;
    double n2 = 0.0;
    std::optional<FOperators> f_ops;
    FormulaPath formula_path = FormulaPath::susceptibility;
};

// |sum of eigenvalues below -1e-12|
double negative_part(const ComplexMatrix& h);

PerturbationReport susceptibility(const TripartiteScenario& sc);
PerturbationReport transmissibility(const TripartiteScenario& sc);
PerturbationReport vulnerability(const TripartiteScenario& sc);

ComplexMatrix sqrt_density(const ComplexMatrix& rho);
ComplexMatrix inverse_density(const ComplexMatrix& rho);

cplx ucov(const ComplexMatrix& bp, const ComplexMatrix& bq, const ComplexMatrix& rho);
double cov(const ComplexMatrix& bp, const ComplexMatrix& bq, const ComplexMatrix& rho);
double variance(const ComplexMatrix& a, const ComplexMatrix& rho);
double amplitude_variance_GA(const ComplexMatrix& a, const ComplexMatrix& rho);
double fragility_2(const ComplexMatrix& a, const ComplexMatrix& rho);
double renyi_second_derivative(double var_a, double var_b, double n);

// Second-order coefficient of N(B; A~A) by role-swapped susceptibility. Requires det(rho_B) != 0.
double b_AtA_susceptibility(const TripartiteScenario& sc);

struct DelocalizationRow {
    double t = 0.0;
    double neg_AtA = 0.0;
    double neg_AtB = 0.0;
    double neg_At_AB = 0.0;
    double neg_B_AtA = 0.0;
    double neg_AB = 0.0;
};

struct DelocalizationReport {
    std::vector<DelocalizationRow> rows;
    std::string coefficient_kind;  // "susceptibility", "renyi" or "undefined"
    std::optional<double> coefficient;
};

DelocalizationReport delocalization_report(const TripartiteScenario& sc, const std::vector<double>& t_grid);

double exact_negativity(const TripartiteScenario& sc, Bipartition which, double t);

// Richardson-extrapolated central second difference of f at 0 over h, h/2, h/4.
double richardson_second_derivative(const std::function<double(double)>& f, double h = 1e-2);

// Richardson estimate of d^2 N / dt^2 at t = 0 for the exact trajectory.
double fd_second_derivative(const TripartiteScenario& sc, Bipartition which);

}  // namespace negtrans
