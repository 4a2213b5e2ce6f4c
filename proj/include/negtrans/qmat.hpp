#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace negtrans {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-9;

// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diag(const std::vector<double>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<cplx>& entries() const { return data_; }
    cplx* data() { return data_.data(); }
    const cplx* data() const { return data_.data(); }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conj() const;
    cplx trace() const;
    double frobenius_norm() const;
    double max_abs() const;

    // Column j as a (rows x 1) matrix.
    ComplexMatrix col(std::size_t j) const;

    ComplexMatrix& operator+=(const ComplexMatrix& o);
    ComplexMatrix& operator-=(const ComplexMatrix& o);
    ComplexMatrix& operator*=(cplx s);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);

// Max absolute entry difference <= tol. Shapes must agree.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
// u * m * u^dagger
ComplexMatrix sandwich(const ComplexMatrix& u, const ComplexMatrix& m);
// Frobenius norm of (h - h^dagger)
double anti_hermitian_norm(const ComplexMatrix& h);
ComplexMatrix hermitian_part(const ComplexMatrix& h);
// Entrywise (Hadamard) product.
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

struct BipartiteShape {
    std::size_t d1 = 1;
    std::size_t d2 = 1;
    std::size_t dim() const { return d1 * d2; }
};

struct HermitianEigensystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // columns
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Trace out factor `which` (1 or 2) of a bipartite operator.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteShape shape, int which);

// Trace out factor `factor` (0-based) of an operator on a multipartite space with the given dims.
ComplexMatrix partial_trace_factor(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   std::size_t factor);

// Transpose of the first factor: ((i,j),(k,l)) <- ((k,j),(i,l)).
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteShape shape);

HermitianEigensystem herm_eig(const ComplexMatrix& h);
std::vector<double> herm_eigvals(const ComplexMatrix& h);

// V f(Lambda) V^dagger for a real function of the eigenvalues.
template <class F>
ComplexMatrix spectral_map(const HermitianEigensystem& es, F&& f) {
    const std::size_t n = es.eigenvalues.size();
    ComplexMatrix scaled = es.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx fj = f(es.eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
    }
    return scaled * es.eigenvectors.adjoint();
}

ComplexMatrix evolve_unitary(const ComplexMatrix& h, double t);

// Caches the eigensystem of h so that U(t) costs one product per time point.
class Propagator {
public:
    explicit Propagator(const ComplexMatrix& h);
    ComplexMatrix at(double t) const;
    const HermitianEigensystem& eigensystem() const { return es_; }

private:
    HermitianEigensystem es_;
};

double trace_norm(const ComplexMatrix& m);

}  // namespace negtrans
