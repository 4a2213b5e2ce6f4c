#include "negtrans/separability.hpp"

#include <cmath>

#include "negtrans/errors.hpp"

namespace negtrans {

namespace {

// Eigenbasis of A in which C is also diagonal (C commutes with A).
ComplexMatrix common_eigenbasis(const ComplexMatrix& a, const ComplexMatrix* c) {
    const HermitianEigensystem es = herm_eig(a);
    if (c == nullptr) return es.eigenvectors;
    const std::size_t n = a.rows();
    ComplexMatrix out(n, n);
    const double tol = 1e-9 * std::max(1.0, a.max_abs());
    std::size_t lo = 0;
    while (lo < n) {
        std::size_t hi = lo + 1;
        while (hi < n && es.eigenvalues[hi] - es.eigenvalues[hi - 1] <= tol) ++hi;
        ComplexMatrix block(n, hi - lo);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = lo; j < hi; ++j) block(i, j - lo) = es.eigenvectors(i, j);
        const HermitianEigensystem sub = herm_eig(hermitian_part(block.adjoint() * (*c) * block));
        const ComplexMatrix rotated = block * sub.eigenvectors;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = lo; j < hi; ++j) out(i, j) = rotated(i, j - lo);
        lo = hi;
    }
    return out;
}

}  // namespace

SeparableDecomposition product_decomposition(const TripartiteScenario& sc, double t) {
    const auto& ham = sc.ham;
    if (ham.interaction.size() != 1)
        throw NoCertificateError("no certificate available: interaction must be a single product term");
    const ComplexMatrix& a = ham.interaction[0].A;
    const ComplexMatrix& b = ham.interaction[0].B;
    if (ham.free_C && commutator(*ham.free_C, a).max_abs() > 1e-10)
        throw NoCertificateError("no certificate available: free Hamiltonian C does not commute with A");

    const std::size_t dA = sc.d_A, dB = sc.d_B;
    const ComplexMatrix h = common_eigenbasis(a, ham.free_C ? &*ham.free_C : nullptr);
    const ComplexMatrix omega = sc.rho_AtA0();
    const ComplexMatrix id_at = ComplexMatrix::identity(dA);
    const ComplexMatrix d = ham.free_D ? *ham.free_D : ComplexMatrix(dB, dB);
    const ComplexMatrix u_e = ham.free_E ? evolve_unitary(*ham.free_E, t) : id_at;

    SeparableDecomposition dec;
    for (std::size_t e = 0; e < dA; ++e) {
        const ComplexMatrix he = h.col(e);
        const double pe = (he.adjoint() * sc.rho_a.mat * he)(0, 0).real();
        if (pe < 1e-14) continue;
        const ComplexMatrix proj = kron(id_at, he.adjoint());
        ComplexMatrix left = (1.0 / pe) * (proj * omega * proj.adjoint());
        left = sandwich(u_e, left);
        const double ae = (he.adjoint() * a * he)(0, 0).real();
        const ComplexMatrix ub = evolve_unitary(ae * b + d, t);
        dec.weights.push_back(pe);
        dec.left_states.push_back({hermitian_part(left), dA});
        dec.right_states.push_back({hermitian_part(sandwich(ub, sc.rho_b.mat)), dB});
    }
    return dec;
}

ComplexMatrix reconstruct(const SeparableDecomposition& d) {
    if (d.weights.empty()) return {};
    const std::size_t n = d.left_states[0].dim * d.right_states[0].dim;
    ComplexMatrix r(n, n);
    for (std::size_t e = 0; e < d.weights.size(); ++e)
        r += d.weights[e] * kron(d.left_states[e].mat, d.right_states[e].mat);
    return r;
}

double verify_certificate(const SeparableDecomposition& d, const DensityMatrix& exact) {
    const ComplexMatrix r = reconstruct(d);
    if (r.rows() != exact.mat.rows()) throw ShapeError("verify_certificate: shape mismatch");
    return (r - exact.mat).frobenius_norm();
}

}  // namespace negtrans
