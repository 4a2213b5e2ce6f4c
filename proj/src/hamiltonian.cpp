#include "negtrans/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

#include "negtrans/errors.hpp"
#include "negtrans/negativity.hpp"

namespace negtrans {

namespace {

void check_block(const ComplexMatrix& m, std::size_t d, const std::string& name) {
    if (!m.is_square() || m.rows() != d)
        throw ShapeError(name + ": expected " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
    if (anti_hermitian_norm(m) > kHermitianTol) throw ValidationError(name + ": not Hermitian");
}

// Matrix elements <e_i|op|e_j> in the basis given by the columns of v.
ComplexMatrix in_basis(const ComplexMatrix& v, const ComplexMatrix& op) { return v.adjoint() * op * v; }

}  // namespace

std::vector<InteractionTerm> TotalHamiltonian::absorbed() const {
    std::vector<InteractionTerm> out;
    if (free_C) out.push_back({*free_C, ComplexMatrix::identity(d_B)});
    out.insert(out.end(), interaction.begin(), interaction.end());
    if (free_D) out.push_back({ComplexMatrix::identity(d_A), *free_D});
    return out;
}

ComplexMatrix TotalHamiltonian::h_tot() const {
    ComplexMatrix h(d_A * d_B, d_A * d_B);
    for (const auto& term : absorbed()) h += kron(term.A, term.B);
    return h;
}

void TotalHamiltonian::validate() const {
    if (d_A < 1 || d_B < 1) throw ShapeError("hamiltonian: dimensions must be positive");
    for (std::size_t p = 0; p < interaction.size(); ++p) {
        check_block(interaction[p].A, d_A, "hamiltonian term " + std::to_string(p) + " A");
        check_block(interaction[p].B, d_B, "hamiltonian term " + std::to_string(p) + " B");
    }
    if (free_C) check_block(*free_C, d_A, "hamiltonian C");
    if (free_D) check_block(*free_D, d_B, "hamiltonian D");
    if (free_E) check_block(*free_E, d_A, "hamiltonian E");
}

ComplexMatrix TripartiteScenario::rho_AtA0() const { return schmidt.projector(); }

ComplexMatrix TripartiteScenario::rho_tri0() const { return kron(rho_AtA0(), rho_b.mat); }

TripartiteScenario make_scenario(const DensityMatrix& rho_a, const DensityMatrix& rho_b, TotalHamiltonian ham,
                                 double zero_tol) {
    if (ham.d_A == 0) ham.d_A = rho_a.dim;
    if (ham.d_B == 0) ham.d_B = rho_b.dim;
    if (ham.d_A != rho_a.dim || ham.d_B != rho_b.dim)
        throw ShapeError("scenario: Hamiltonian dimensions do not match the states");
    ham.validate();
    if (!(zero_tol > 0.0)) throw ValidationError("scenario: zero_tol must be positive");
    TripartiteScenario sc;
    sc.rho_a = rho_a;
    sc.rho_b = rho_b;
    sc.schmidt = purify(rho_a);
    for (double a : sc.schmidt.coeffs)
        if (a < 1e-6) throw DomainError("scenario: rho_A is singular (Schmidt coefficient below 1e-6)");
    sc.ham = std::move(ham);
    sc.d_A = rho_a.dim;
    sc.d_B = rho_b.dim;
    sc.zero_tol = zero_tol;
    return sc;
}

ComplexMatrix build_total(const TripartiteScenario& sc) {
    const std::size_t dA = sc.d_A, dB = sc.d_B;
    ComplexMatrix h = kron(ComplexMatrix::identity(dA), sc.ham.h_tot());
    if (sc.ham.free_E) h += kron(*sc.ham.free_E, ComplexMatrix::identity(dA * dB));
    return h;
}

EvolvedStates reduce_tripartite(const ComplexMatrix& rho_tri, std::size_t d_A, std::size_t d_B) {
    const std::vector<std::size_t> dims{d_A, d_A, d_B};
    EvolvedStates s;
    s.rho_tri = {rho_tri, d_A * d_A * d_B};
    s.rho_AB = {partial_trace_factor(rho_tri, dims, 0), d_A * d_B};
    s.rho_AtB = {partial_trace_factor(rho_tri, dims, 1), d_A * d_B};
    s.rho_AtA = {partial_trace_factor(rho_tri, dims, 2), d_A * d_A};
    return s;
}

EvolvedStates evolve_exact(const TripartiteScenario& sc, double t) {
    const ComplexMatrix u = evolve_unitary(build_total(sc), t);
    return reduce_tripartite(sandwich(u, sc.rho_tri0()), sc.d_A, sc.d_B);
}

const char* bipartition_name(Bipartition b) {
    switch (b) {
        case Bipartition::AB: return "A;B";
        case Bipartition::AtB: return "At;B";
        case Bipartition::AtA: return "At;A";
    }
    return "?";
}

BipartiteShape bipartition_shape(const TripartiteScenario& sc, Bipartition which) {
    return which == Bipartition::AtA ? BipartiteShape{sc.d_A, sc.d_A} : BipartiteShape{sc.d_A, sc.d_B};
}

PerturbedDensity perturbed_rho_tri(const TripartiteScenario& sc) {
    const ComplexMatrix h = kron(ComplexMatrix::identity(sc.d_A), sc.ham.h_tot());
    const ComplexMatrix rho = sc.rho_tri0();
    const ComplexMatrix h2 = h * h;
    PerturbedDensity pd;
    pd.label = "At;A;B";
    pd.order0 = rho;
    pd.order1 = cplx(0.0, 1.0) * (rho * h - h * rho);
    pd.order2 = h * rho * h - 0.5 * (h2 * rho) - 0.5 * (rho * h2);
    return pd;
}

PerturbedDensity perturbed_rho_bipartite(const TripartiteScenario& sc, Bipartition which) {
    const std::size_t dA = sc.d_A, dB = sc.d_B;
    const auto& alpha = sc.schmidt.coeffs;
    const ComplexMatrix& va = sc.schmidt.basis_right;
    const HermitianEigensystem eb = descending_eigenbasis(sc.rho_b.mat);
    const ComplexMatrix& vb = eb.eigenvectors;
    const std::vector<double>& lb = eb.eigenvalues;
    std::vector<double> la(dA);
    for (std::size_t k = 0; k < dA; ++k) la[k] = alpha[k] * alpha[k];

    const auto pairs = sc.ham.absorbed();
    const std::size_t np = pairs.size();
    std::vector<ComplexMatrix> Ae(np), Be(np);
    for (std::size_t p = 0; p < np; ++p) {
        Ae[p] = in_basis(va, pairs[p].A);
        Be[p] = in_basis(vb, pairs[p].B);
    }
    const cplx I(0.0, 1.0);

    PerturbedDensity pd;
    pd.label = bipartition_name(which);
    const ComplexMatrix omega = sc.rho_AtA0();

    if (which == Bipartition::AB) {
        const std::size_t n = dA * dB;
        ComplexMatrix x1(n, n), x2(n, n);
        for (std::size_t k = 0; k < dA; ++k)
            for (std::size_t u = 0; u < dB; ++u)
                for (std::size_t l = 0; l < dA; ++l)
                    for (std::size_t v = 0; v < dB; ++v) {
                        cplx s1 = 0.0, s2 = 0.0;
                        for (std::size_t p = 0; p < np; ++p) {
                            s1 += Ae[p](k, l) * Be[p](u, v) * (la[k] * lb[u] - la[l] * lb[v]);
                            for (std::size_t q = 0; q < np; ++q)
                                for (std::size_t m = 0; m < dA; ++m)
                                    for (std::size_t t = 0; t < dB; ++t)
                                        s2 += Ae[p](k, m) * Ae[q](m, l) * Be[p](u, t) * Be[q](t, v) *
                                              (la[m] * lb[t] - 0.5 * la[k] * lb[u] - 0.5 * la[l] * lb[v]);
                        }
                        x1(k * dB + u, l * dB + v) = I * s1;
                        x2(k * dB + u, l * dB + v) = s2;
                    }
        const ComplexMatrix w = kron(va, vb);
        pd.order0 = kron(sc.rho_a.mat, sc.rho_b.mat);
        pd.order1 = sandwich(w, x1);
        pd.order2 = sandwich(w, x2);
    } else if (which == Bipartition::AtB) {
        const std::size_t n = dA * dB;
        ComplexMatrix x1(n, n), x2(n, n);
        for (std::size_t i = 0; i < dA; ++i)
            for (std::size_t u = 0; u < dB; ++u)
                for (std::size_t j = 0; j < dA; ++j)
                    for (std::size_t v = 0; v < dB; ++v) {
                        const double aa = alpha[i] * alpha[j];
                        cplx s1 = 0.0, s2 = 0.0;
                        for (std::size_t p = 0; p < np; ++p) {
                            s1 += aa * Ae[p](j, i) * Be[p](u, v) * (lb[u] - lb[v]);
                            for (std::size_t q = 0; q < np; ++q)
                                for (std::size_t m = 0; m < dA; ++m)
                                    for (std::size_t t = 0; t < dB; ++t)
                                        s2 += aa * Be[p](u, t) * Be[q](t, v) *
                                              (Ae[p](m, i) * Ae[q](j, m) * lb[t] -
                                               0.5 * Ae[q](m, i) * Ae[p](j, m) * (lb[u] + lb[v]));
                        }
                        x1(i * dB + u, j * dB + v) = I * s1;
                        x2(i * dB + u, j * dB + v) = s2;
                    }
        const ComplexMatrix w = kron(sc.schmidt.basis_left, vb);
        pd.order0 = kron(partial_trace(omega, {dA, dA}, 2), sc.rho_b.mat);
        pd.order1 = sandwich(w, x1);
        pd.order2 = sandwich(w, x2);
    } else {
        const std::size_t n = dA * dA;
        std::vector<cplx> trB(np);
        std::vector<std::vector<cplx>> trBB(np, std::vector<cplx>(np));
        for (std::size_t p = 0; p < np; ++p) {
            trB[p] = (pairs[p].B * sc.rho_b.mat).trace();
            for (std::size_t q = 0; q < np; ++q) trBB[p][q] = (pairs[p].B * sc.rho_b.mat * pairs[q].B).trace();
        }
        ComplexMatrix x1(n, n), x2(n, n);
        for (std::size_t i = 0; i < dA; ++i)
            for (std::size_t k = 0; k < dA; ++k)
                for (std::size_t j = 0; j < dA; ++j)
                    for (std::size_t l = 0; l < dA; ++l) {
                        const double aa = alpha[i] * alpha[j];
                        cplx s1 = 0.0, s2 = 0.0;
                        for (std::size_t p = 0; p < np; ++p) {
                            cplx f = 0.0;
                            if (i == k) f += Ae[p](j, l);
                            if (j == l) f -= Ae[p](k, i);
                            s1 += trB[p] * aa * f;
                            for (std::size_t q = 0; q < np; ++q) {
                                cplx g = Ae[p](k, i) * aa * Ae[q](j, l);
                                cplx h = 0.0;
                                for (std::size_t f2 = 0; f2 < dA; ++f2) {
                                    if (i == k) h += Ae[p](f2, l) * Ae[q](j, f2);
                                    if (l == j) h += Ae[p](f2, i) * Ae[q](k, f2);
                                }
                                s2 += trBB[p][q] * (g - 0.5 * aa * h);
                            }
                        }
                        x1(i * dA + k, j * dA + l) = I * s1;
                        x2(i * dA + k, j * dA + l) = s2;
                    }
        const ComplexMatrix w = kron(sc.schmidt.basis_left, va);
        pd.order0 = omega;
        pd.order1 = sandwich(w, x1);
        pd.order2 = sandwich(w, x2);
    }
    return pd;
}

std::vector<double> Trajectory::column(const std::string& name) const {
    for (std::size_t c = 0; c < kTrajectoryColumns; ++c) {
        if (name == kTrajectoryColumnNames[c]) {
            std::vector<double> out(rows.size());
            for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i][c];
            return out;
        }
    }
    throw std::out_of_range("trajectory: unknown column " + name);
}

std::array<double, kTrajectoryColumns> trajectory_point(const ComplexMatrix& rho_tri, std::size_t d_A,
                                                        std::size_t d_B) {
    const EvolvedStates s = reduce_tripartite(rho_tri, d_A, d_B);
    const ComplexMatrix rho_A = partial_trace(s.rho_AB.mat, {d_A, d_B}, 2);
    const ComplexMatrix rho_B = partial_trace(s.rho_AB.mat, {d_A, d_B}, 1);
    return {negativity(s.rho_AB.mat, {d_A, d_B}).value,
            negativity(s.rho_AtB.mat, {d_A, d_B}).value,
            negativity(s.rho_AtA.mat, {d_A, d_A}).value,
            negativity(rho_tri, {d_A, d_A * d_B}).value,
            negativity(rho_tri, {d_A * d_A, d_B}).value,
            purity(rho_A),
            purity(rho_B),
            purity(s.rho_AB.mat)};
}

Trajectory trajectory(const TripartiteScenario& sc, const std::vector<double>& t_grid) {
    const Propagator prop(build_total(sc));
    const ComplexMatrix rho0 = sc.rho_tri0();
    Trajectory tr;
    tr.t = t_grid;
    tr.rows.resize(t_grid.size());
    const long n = static_cast<long>(t_grid.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < n; ++i) {
        const ComplexMatrix u = prop.at(t_grid[static_cast<std::size_t>(i)]);
        tr.rows[static_cast<std::size_t>(i)] = trajectory_point(sandwich(u, rho0), sc.d_A, sc.d_B);
    }
    return tr;
}

Trajectory trajectory_serial(const TripartiteScenario& sc, const std::vector<double>& t_grid) {
    const Propagator prop(build_total(sc));
    const ComplexMatrix rho0 = sc.rho_tri0();
    Trajectory tr;
    tr.t = t_grid;
    tr.rows.reserve(t_grid.size());
    for (double t : t_grid) tr.rows.push_back(trajectory_point(sandwich(prop.at(t), rho0), sc.d_A, sc.d_B));
    return tr;
}

std::vector<double> linear_grid(double start, double stop, std::size_t points) {
    if (points == 0) throw ValidationError("time grid: points must be positive");
    if (points == 1) return {start};
    std::vector<double> g(points);
    const double step = (stop - start) / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i) g[i] = start + step * static_cast<double>(i);
    g.back() = stop;
    return g;
}

}  // namespace negtrans
