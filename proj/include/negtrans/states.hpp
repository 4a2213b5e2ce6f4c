#pragma once

#include <cstddef>
#include <vector>

#include "negtrans/qmat.hpp"

namespace negtrans {

inline constexpr double kDefaultZeroTol = 1e-10;

struct DensityMatrix {
    ComplexMatrix mat;
    std::size_t dim = 0;
};

// Hermitian within 1e-9, eigenvalues >= -1e-10, unit trace within 1e-10.
// The stored matrix is the symmetrized input.
DensityMatrix validate_density(const ComplexMatrix& m);

DensityMatrix pure_state(std::size_t dim, std::size_t k);
double purity(const ComplexMatrix& rho);

// Eigenvectors sorted by descending eigenvalue. Within a degenerate cluster the basis is
// rebuilt by Gram-Schmidt on the projected coordinate vectors, and every column has its first
// non-negligible component real and positive, so the result does not depend on the eigensolver.
HermitianEigensystem descending_eigenbasis(const ComplexMatrix& h, double cluster_tol = 1e-12);

struct SchmidtPair {
    std::vector<double> coeffs;  // descending
    ComplexMatrix basis_left;    // columns |a~_i>, the coordinate basis
    ComplexMatrix basis_right;   // columns |a_i>, eigenvectors of rho_A

    ComplexMatrix state_vector() const;  // |omega> as a column
    ComplexMatrix projector() const;     // |omega><omega|
};

SchmidtPair purify(const DensityMatrix& rho_a);

struct SpectrumSplit {
    std::size_t n_nonzero = 0;
    ComplexMatrix proj_N;
    ComplexMatrix proj_D;
    ComplexMatrix basis;               // eigenvectors, non-zero eigenvalues first
    std::vector<double> eigenvalues;   // aligned with basis columns
    double zero_tol = kDefaultZeroTol;
};

SpectrumSplit split_spectrum(const DensityMatrix& rho_b, double zero_tol = kDefaultZeroTol);

struct BlochVector {
    double ax = 0.0;
    double ay = 0.0;
    double az = 0.0;
    double r() const;
};

DensityMatrix bloch_to_density(const BlochVector& b);
BlochVector density_to_bloch(const DensityMatrix& rho);

ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

}  // namespace negtrans
