#pragma once

#include <cstddef>
#include <vector>

#include "negtrans/qmat.hpp"
#include "negtrans/states.hpp"

namespace negtrans {

inline constexpr double kZeroEigTol = 1e-12;

struct NegativityResult {
    double value = 0.0;
    std::vector<double> pt_eigenvalues;  // ascending
    std::size_t negative_count = 0;
};

NegativityResult negativity(const ComplexMatrix& rho, BipartiteShape shape);
inline NegativityResult negativity(const DensityMatrix& rho, BipartiteShape shape) {
    return negativity(rho.mat, shape);
}

// (||rho^T1||_1 - 1) / 2, the trace-norm route.
double negativity_trace_norm(const ComplexMatrix& rho, BipartiteShape shape);

double pure_negativity(const std::vector<double>& coeffs);

bool is_ppt_conclusive(BipartiteShape shape);

struct GurvitsResult {
    double product_purity = 0.0;
    double threshold = 0.0;
    bool certified = false;
};

GurvitsResult gurvits_separable(const DensityMatrix& rho_a, const DensityMatrix& rho_b);

}  // namespace negtrans
