#include "negtrans/qmat.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "negtrans/errors.hpp"

namespace negtrans {

namespace {

using RowMat = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using CMap = Eigen::Map<const RowMat>;
using MMap = Eigen::Map<RowMat>;

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw ShapeError(std::string(what) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
}

void require_bipartite(const ComplexMatrix& m, BipartiteShape shape, const char* what) {
    if (shape.d1 < 1 || shape.d2 < 1 || !m.is_square() || m.rows() != shape.dim())
        throw ShapeError(std::string(what) + ": matrix of dimension " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()) + " does not match shape (" +
                         std::to_string(shape.d1) + "," + std::to_string(shape.d2) + ")");
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<cplx> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw ShapeError("ComplexMatrix: entry count does not equal rows*cols");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_) throw ShapeError("ComplexMatrix: ragged initializer");
        data_.insert(data_.end(), r.begin(), r.end());
    }
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diag(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

ComplexMatrix ComplexMatrix::conj() const {
    ComplexMatrix r = *this;
    for (auto& z : r.data_) z = std::conj(z);
    return r;
}

cplx ComplexMatrix::trace() const {
    if (!is_square()) throw ShapeError("trace: matrix is not square");
    cplx s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) s += (*this)(i, i);
    return s;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

ComplexMatrix ComplexMatrix::col(std::size_t j) const {
    ComplexMatrix c(rows_, 1);
    for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
    return c;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
    require_same_shape(*this, o, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows())
        throw ShapeError("operator*: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
    ComplexMatrix c(a.rows(), b.cols());
    if (c.empty() || a.cols() == 0) return c;
    MMap(c.data(), c.rows(), c.cols()).noalias() =
        CMap(a.data(), a.rows(), a.cols()) * CMap(b.data(), b.rows(), b.cols());
    return c;
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    require_same_shape(a, b, "approx_equal");
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        if (std::abs(a.entries()[k] - b.entries()[k]) > tol) return false;
    return true;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

ComplexMatrix sandwich(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * u.adjoint(); }

double anti_hermitian_norm(const ComplexMatrix& h) {
    if (!h.is_square()) throw ShapeError("anti_hermitian_norm: matrix is not square");
    return (h - h.adjoint()).frobenius_norm();
}

ComplexMatrix hermitian_part(const ComplexMatrix& h) { return 0.5 * (h + h.adjoint()); }

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "hadamard");
    ComplexMatrix r = a;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) *= b(i, j);
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t m = b.rows(), n = b.cols();
    ComplexMatrix r(a.rows() * m, a.cols() * n);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            if (aij == cplx(0.0)) continue;
            for (std::size_t k = 0; k < m; ++k)
                for (std::size_t l = 0; l < n; ++l) r(i * m + k, j * n + l) = aij * b(k, l);
        }
    return r;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteShape shape, int which) {
    require_bipartite(m, shape, "partial_trace");
    if (which != 1 && which != 2) throw ShapeError("partial_trace: factor index must be 1 or 2");
    return partial_trace_factor(m, {shape.d1, shape.d2}, static_cast<std::size_t>(which - 1));
}

ComplexMatrix partial_trace_factor(const ComplexMatrix& m, const std::vector<std::size_t>& dims,
                                   std::size_t factor) {
    if (factor >= dims.size()) throw ShapeError("partial_trace_factor: factor out of range");
    std::size_t total = 1;
    for (auto d : dims) total *= d;
    if (!m.is_square() || m.rows() != total)
        throw ShapeError("partial_trace_factor: matrix dimension does not match factor dims");

    std::size_t outer = 1, inner = 1;
    for (std::size_t k = 0; k < factor; ++k) outer *= dims[k];
    for (std::size_t k = factor + 1; k < dims.size(); ++k) inner *= dims[k];
    const std::size_t mid = dims[factor];
    const std::size_t out_dim = outer * inner;

    ComplexMatrix r(out_dim, out_dim);
    for (std::size_t a = 0; a < outer; ++a)
        for (std::size_t c = 0; c < inner; ++c)
            for (std::size_t a2 = 0; a2 < outer; ++a2)
                for (std::size_t c2 = 0; c2 < inner; ++c2) {
                    cplx s = 0.0;
                    for (std::size_t b = 0; b < mid; ++b)
                        s += m((a * mid + b) * inner + c, (a2 * mid + b) * inner + c2);
                    r(a * inner + c, a2 * inner + c2) = s;
                }
    return r;
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteShape shape) {
    require_bipartite(m, shape, "partial_transpose");
    const std::size_t d1 = shape.d1, d2 = shape.d2;
    ComplexMatrix r(m.rows(), m.cols());
    for (std::size_t i = 0; i < d1; ++i)
        for (std::size_t j = 0; j < d2; ++j)
            for (std::size_t k = 0; k < d1; ++k)
                for (std::size_t l = 0; l < d2; ++l) r(i * d2 + j, k * d2 + l) = m(k * d2 + j, i * d2 + l);
    return r;
}

HermitianEigensystem herm_eig(const ComplexMatrix& h) {
    if (!h.is_square()) throw ShapeError("herm_eig: matrix is not square");
    const double ah = anti_hermitian_norm(h);
    if (ah > kHermitianTol)
        throw DomainError("herm_eig: matrix is not Hermitian (anti-Hermitian norm " + std::to_string(ah) +
                          ")");
    const std::size_t n = h.rows();
    HermitianEigensystem es;
    if (n == 0) return es;
    const ComplexMatrix hs = hermitian_part(h);
    Eigen::MatrixXcd em = CMap(hs.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em);
    if (solver.info() != Eigen::Success) throw DomainError("herm_eig: eigensolver did not converge");
    es.eigenvalues.resize(n);
    for (std::size_t i = 0; i < n; ++i) es.eigenvalues[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    es.eigenvectors = ComplexMatrix(n, n);
    MMap(es.eigenvectors.data(), n, n) = solver.eigenvectors();
    return es;
}

std::vector<double> herm_eigvals(const ComplexMatrix& h) {
    if (!h.is_square()) throw ShapeError("herm_eigvals: matrix is not square");
    const double ah = anti_hermitian_norm(h);
    if (ah > kHermitianTol)
        throw DomainError("herm_eigvals: matrix is not Hermitian (anti-Hermitian norm " +
                          std::to_string(ah) + ")");
    const std::size_t n = h.rows();
    if (n == 0) return {};
    const ComplexMatrix hs = hermitian_part(h);
    Eigen::MatrixXcd em = CMap(hs.data(), n, n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(em, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw DomainError("herm_eigvals: eigensolver did not converge");
    std::vector<double> ev(n);
    for (std::size_t i = 0; i < n; ++i) ev[i] = solver.eigenvalues()(static_cast<Eigen::Index>(i));
    return ev;
}

ComplexMatrix evolve_unitary(const ComplexMatrix& h, double t) { return Propagator(h).at(t); }

Propagator::Propagator(const ComplexMatrix& h) : es_(herm_eig(h)) {}

ComplexMatrix Propagator::at(double t) const {
    return spectral_map(es_, [t](double e) { return std::exp(cplx(0.0, -e * t)); });
}

double trace_norm(const ComplexMatrix& m) {
    double s = 0.0;
    for (double e : herm_eigvals(m)) s += std::abs(e);
    return s;
}

}  // namespace negtrans
