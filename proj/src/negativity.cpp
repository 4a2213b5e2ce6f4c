#include "negtrans/negativity.hpp"

#include <cassert>
#include <cmath>

#include "negtrans/errors.hpp"

namespace negtrans {

NegativityResult negativity(const ComplexMatrix& rho, BipartiteShape shape) {
    NegativityResult r;
    r.pt_eigenvalues = herm_eigvals(partial_transpose(rho, shape));
    for (double e : r.pt_eigenvalues) {
        if (e < -kZeroEigTol) {
            r.value -= e;
            ++r.negative_count;
        }
    }
#ifndef NDEBUG
    double abs_sum = 0.0, tr = 0.0;
    for (double e : r.pt_eigenvalues) {
        abs_sum += std::abs(e);
        tr += e;
    }
    assert(std::abs(r.value - 0.5 * (abs_sum - tr)) < 1e-10 + 1e-12 * r.pt_eigenvalues.size());
#endif
    return r;
}

double negativity_trace_norm(const ComplexMatrix& rho, BipartiteShape shape) {
    return 0.5 * (trace_norm(partial_transpose(rho, shape)) - rho.trace().real());
}

double pure_negativity(const std::vector<double>& coeffs) {
    double norm2 = 0.0;
    for (double a : coeffs) norm2 += a * a;
    if (std::abs(norm2 - 1.0) > 1e-8) throw DomainError("pure_negativity: Schmidt coefficients not normalized");
    double s = 0.0;
    for (std::size_t u = 0; u < coeffs.size(); ++u)
        for (std::size_t v = u + 1; v < coeffs.size(); ++v) s += coeffs[u] * coeffs[v];
    return s;
}

bool is_ppt_conclusive(BipartiteShape shape) { return shape.d1 * shape.d2 <= 6; }

GurvitsResult gurvits_separable(const DensityMatrix& rho_a, const DensityMatrix& rho_b) {
    GurvitsResult g;
    g.product_purity = purity(rho_a.mat) * purity(rho_b.mat);
    const double d = static_cast<double>(rho_a.dim * rho_b.dim);
    g.threshold = 1.0 / (d - 1.0);
    g.certified = g.product_purity < g.threshold;
    return g;
}

}  // namespace negtrans
