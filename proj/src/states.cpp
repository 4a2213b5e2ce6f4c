#include "negtrans/states.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "negtrans/errors.hpp"

namespace negtrans {

namespace {

void fix_phase(ComplexMatrix& v, std::size_t j) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        const cplx z = v(i, j);
        if (std::abs(z) > 1e-8) {
            const cplx ph = std::conj(z) / std::abs(z);
            for (std::size_t k = 0; k < v.rows(); ++k) v(k, j) *= ph;
            return;
        }
    }
}

}  // namespace

DensityMatrix validate_density(const ComplexMatrix& m) {
    if (!m.is_square()) throw ValidationError("density matrix: not square");
    const double ah = anti_hermitian_norm(m);
    if (ah > kHermitianTol)
        throw ValidationError("density matrix: not Hermitian (anti-Hermitian norm " + std::to_string(ah) + ")");
    DensityMatrix d{hermitian_part(m), m.rows()};
    const cplx tr = d.mat.trace();
    if (std::abs(tr - cplx(1.0)) > 1e-10)
        throw ValidationError("density matrix: trace " + std::to_string(tr.real()) + " differs from 1");
    const auto ev = herm_eigvals(d.mat);
    if (!ev.empty() && ev.front() < -1e-10)
        throw ValidationError("density matrix: negative eigenvalue " + std::to_string(ev.front()));
    return d;
}

DensityMatrix pure_state(std::size_t dim, std::size_t k) {
    if (k >= dim) throw ValidationError("pure_state: index out of range");
    ComplexMatrix m(dim, dim);
    m(k, k) = 1.0;
    return {m, dim};
}

double purity(const ComplexMatrix& rho) { return (rho * rho).trace().real(); }

HermitianEigensystem descending_eigenbasis(const ComplexMatrix& h, double cluster_tol) {
    const HermitianEigensystem asc = herm_eig(h);
    const std::size_t n = asc.eigenvalues.size();
    HermitianEigensystem out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);

    std::size_t col = 0;
    std::size_t hi = n;  // clusters walked from the top of the ascending list
    while (hi > 0) {
        std::size_t lo = hi - 1;
        while (lo > 0 && asc.eigenvalues[hi - 1] - asc.eigenvalues[lo - 1] <= cluster_tol) --lo;
        const std::size_t k = hi - lo;
        if (k == 1) {
            out.eigenvalues[col] = asc.eigenvalues[lo];
            for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, col) = asc.eigenvectors(i, lo);
            fix_phase(out.eigenvectors, col);
            ++col;
        } else {
            double mean = 0.0;
            for (std::size_t j = lo; j < hi; ++j) mean += asc.eigenvalues[j];
            mean /= static_cast<double>(k);
            ComplexMatrix p(n, n);
            for (std::size_t j = lo; j < hi; ++j) {
                const ComplexMatrix v = asc.eigenvectors.col(j);
                p += v * v.adjoint();
            }
            std::vector<ComplexMatrix> basis;
            for (std::size_t e = 0; e < n && basis.size() < k; ++e) {
                ComplexMatrix w = p.col(e);
                for (const auto& b : basis) {
                    const cplx ov = (b.adjoint() * w)(0, 0);
                    w -= ov * b;
                }
                const double nw = w.frobenius_norm();
                if (nw > 1e-6) basis.push_back((1.0 / nw) * w);
            }
            for (const auto& b : basis) {
                out.eigenvalues[col] = mean;
                for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, col) = b(i, 0);
                fix_phase(out.eigenvectors, col);
                ++col;
            }
        }
        hi = lo;
    }
    return out;
}

ComplexMatrix SchmidtPair::state_vector() const {
    const std::size_t dl = basis_left.rows(), dr = basis_right.rows();
    ComplexMatrix psi(dl * dr, 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (coeffs[i] == 0.0) continue;
        psi += coeffs[i] * kron(basis_left.col(i), basis_right.col(i));
    }
    return psi;
}

ComplexMatrix SchmidtPair::projector() const {
    const ComplexMatrix psi = state_vector();
    return psi * psi.adjoint();
}

SchmidtPair purify(const DensityMatrix& rho_a) {
    const HermitianEigensystem es = descending_eigenbasis(rho_a.mat);
    SchmidtPair sp;
    sp.coeffs.resize(es.eigenvalues.size());
    for (std::size_t i = 0; i < es.eigenvalues.size(); ++i)
        sp.coeffs[i] = std::sqrt(std::max(0.0, es.eigenvalues[i]));
    sp.basis_left = ComplexMatrix::identity(rho_a.dim);
    sp.basis_right = es.eigenvectors;
    return sp;
}

SpectrumSplit split_spectrum(const DensityMatrix& rho_b, double zero_tol) {
    if (!(zero_tol > 0.0)) throw DomainError("split_spectrum: zero_tol must be positive");
    const HermitianEigensystem es = descending_eigenbasis(rho_b.mat);
    const std::size_t n = rho_b.dim;
    SpectrumSplit s;
    s.zero_tol = zero_tol;
    s.basis = es.eigenvectors;
    s.eigenvalues = es.eigenvalues;
    s.proj_N = ComplexMatrix(n, n);
    s.proj_D = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix v = es.eigenvectors.col(j);
        if (es.eigenvalues[j] >= zero_tol) {
            s.proj_N += v * v.adjoint();
            ++s.n_nonzero;
        } else {
            s.proj_D += v * v.adjoint();
        }
    }
    return s;
}

double BlochVector::r() const { return std::sqrt(ax * ax + ay * ay + az * az); }

ComplexMatrix pauli_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix pauli_y() { return {{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}}; }
ComplexMatrix pauli_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

DensityMatrix bloch_to_density(const BlochVector& b) {
    if (b.r() > 1.0 + 1e-12) throw DomainError("bloch_to_density: Bloch radius exceeds 1");
    ComplexMatrix m = ComplexMatrix::identity(2) + b.ax * pauli_x() + b.ay * pauli_y() + b.az * pauli_z();
    return {0.5 * m, 2};
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim != 2 || rho.mat.rows() != 2) throw ShapeError("density_to_bloch: qubit state required");
    const auto& m = rho.mat;
    return {2.0 * m(0, 1).real(), -2.0 * m(0, 1).imag(), (m(0, 0) - m(1, 1)).real()};
}

}  // namespace negtrans
