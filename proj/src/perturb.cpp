#include "negtrans/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "negtrans/errors.hpp"
#include "negtrans/negativity.hpp"

namespace negtrans {

namespace {

constexpr double kFirstOrderZero = 1e-10;

void check_input(const EigPerturbInput& inp) {
    const std::size_t n = inp.H0.rows();
    for (const ComplexMatrix* m : {&inp.H0, &inp.H1, &inp.H2}) {
        if (!m->is_square() || m->rows() != n) throw ShapeError("eig_perturb: H0, H1, H2 must share a dimension");
        if (anti_hermitian_norm(*m) > kHermitianTol) throw DomainError("eig_perturb: input not Hermitian");
    }
}

// Groups of consecutive indices of an ascending list whose neighbours differ by at most tol.
std::vector<std::pair<std::size_t, std::size_t>> clusters(const std::vector<double>& asc, double tol) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t lo = 0;
    for (std::size_t i = 1; i <= asc.size(); ++i) {
        if (i == asc.size() || asc[i] - asc[i - 1] > tol) {
            out.emplace_back(lo, i);
            lo = i;
        }
    }
    return out;
}

ComplexMatrix columns(const ComplexMatrix& v, std::size_t lo, std::size_t hi) {
    ComplexMatrix out(v.rows(), hi - lo);
    for (std::size_t i = 0; i < v.rows(); ++i)
        for (std::size_t j = lo; j < hi; ++j) out(i, j - lo) = v(i, j);
    return out;
}

cplx tr(const ComplexMatrix& m) { return m.trace(); }

}  // namespace

std::vector<EigBranch> eig_perturb_nondegenerate(const EigPerturbInput& inp) {
    check_input(inp);
    const HermitianEigensystem es = herm_eig(inp.H0);
    const std::size_t n = es.eigenvalues.size();
    for (std::size_t i = 1; i < n; ++i)
        if (es.eigenvalues[i] - es.eigenvalues[i - 1] < 1e-8)
            throw GapError("eig_perturb_nondegenerate: spectral gap below 1e-8, use the degenerate reduction");
    const ComplexMatrix& v = es.eigenvectors;
    const ComplexMatrix h1 = v.adjoint() * inp.H1 * v;
    const ComplexMatrix h2 = v.adjoint() * inp.H2 * v;
    std::vector<EigBranch> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i].e0 = es.eigenvalues[i];
        out[i].e1 = h1(i, i).real();
        double s = h2(i, i).real();
        for (std::size_t q = 0; q < n; ++q)
            if (q != i) s += std::norm(h1(i, q)) / (es.eigenvalues[i] - es.eigenvalues[q]);
        out[i].e2 = s;
    }
    return out;
}

ComplexMatrix range_basis(const ComplexMatrix& projector) {
    const HermitianEigensystem es = herm_eig(projector);
    std::size_t lo = 0;
    while (lo < es.eigenvalues.size() && es.eigenvalues[lo] < 0.5) ++lo;
    return columns(es.eigenvectors, lo, es.eigenvalues.size());
}

ComplexMatrix compress(const ComplexMatrix& m, const ComplexMatrix& projector) {
    const ComplexMatrix q = range_basis(projector);
    return q.adjoint() * m * q;
}

std::vector<EigBranch> eig_perturb_degenerate(const EigPerturbInput& inp, const ComplexMatrix& projector) {
    check_input(inp);
    const std::size_t n = inp.H0.rows();
    if (!projector.is_square() || projector.rows() != n) throw ShapeError("eig_perturb_degenerate: projector dimension");
    if (anti_hermitian_norm(projector) > 1e-10 || (projector * projector - projector).frobenius_norm() > 1e-10)
        throw DomainError("eig_perturb_degenerate: eigenspace projector is not a Hermitian idempotent");
    const ComplexMatrix q = range_basis(projector);
    const std::size_t k = q.cols();
    if (k == 0) return {};
    const double e = tr(q.adjoint() * inp.H0 * q).real() / static_cast<double>(k);

    const HermitianEigensystem es = herm_eig(inp.H0);
    ComplexMatrix resolvent(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexMatrix v = es.eigenvectors.col(j);
        if ((projector * v).frobenius_norm() > std::sqrt(0.5)) continue;
        const double gap = e - es.eigenvalues[j];
        if (std::abs(gap) < 1e-12)
            throw DomainError("eig_perturb_degenerate: projector does not span the whole eigenspace");
        resolvent += (1.0 / gap) * (v * v.adjoint());
    }

    const ComplexMatrix lambda1 = hermitian_part(q.adjoint() * inp.H1 * q);
    const ComplexMatrix kmat = hermitian_part(q.adjoint() * (inp.H1 * resolvent * inp.H1 + inp.H2) * q);

    std::vector<EigBranch> out;
    if (lambda1.frobenius_norm() <= kFirstOrderZero) {
        for (double e2 : herm_eigvals(kmat)) out.push_back({e, 0.0, e2});
    } else {
        const HermitianEigensystem l1 = herm_eig(lambda1);
        const double tol = 1e-8 * std::max(1.0, lambda1.max_abs());
        for (auto [lo, hi] : clusters(l1.eigenvalues, tol)) {
            const ComplexMatrix w = columns(l1.eigenvectors, lo, hi);
            double e1 = 0.0;
            for (std::size_t j = lo; j < hi; ++j) e1 += l1.eigenvalues[j];
            e1 /= static_cast<double>(hi - lo);
            for (double e2 : herm_eigvals(hermitian_part(w.adjoint() * kmat * w))) out.push_back({e, e1, e2});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const EigBranch& a, const EigBranch& b) { return a.e1 != b.e1 ? a.e1 < b.e1 : a.e2 < b.e2; });
    return out;
}

std::vector<EigBranch> eig_perturb_all(const EigPerturbInput& inp, double cluster_tol) {
    check_input(inp);
    const HermitianEigensystem es = herm_eig(inp.H0);
    std::vector<EigBranch> out;
    for (auto [lo, hi] : clusters(es.eigenvalues, cluster_tol)) {
        const ComplexMatrix v = columns(es.eigenvectors, lo, hi);
        const auto branches = eig_perturb_degenerate(inp, v * v.adjoint());
        out.insert(out.end(), branches.begin(), branches.end());
    }
    return out;
}

NegativityExpansion negativity_expansion(const EigPerturbInput& inp) {
    NegativityExpansion ne;
    for (const EigBranch& b : eig_perturb_all(inp)) {
        if (b.e0 < -kFirstOrderZero) {
            ne.n0 -= b.e0;
            ne.n1 -= b.e1;
            ne.n2 -= b.e2;
        } else if (b.e0 <= kFirstOrderZero) {
            if (b.e1 < -kFirstOrderZero) {
                ne.n1 -= b.e1;
                ne.n2 -= b.e2;
            } else if (b.e1 <= kFirstOrderZero && b.e2 < -kZeroEigTol) {
                ne.n2 -= b.e2;
            }
        }
    }
    return ne;
}

EigPerturbInput pt_orders(const TripartiteScenario& sc, Bipartition which) {
    const PerturbedDensity pd = perturbed_rho_bipartite(sc, which);
    const BipartiteShape shape = bipartition_shape(sc, which);
    return {hermitian_part(partial_transpose(pd.order0, shape)), hermitian_part(partial_transpose(pd.order1, shape)),
            hermitian_part(partial_transpose(pd.order2, shape))};
}

ComplexMatrix sqrt_density(const ComplexMatrix& rho) {
    return spectral_map(herm_eig(rho), [](double e) { return e < 1e-14 ? 0.0 : std::sqrt(e); });
}

ComplexMatrix inverse_density(const ComplexMatrix& rho) {
    const HermitianEigensystem es = herm_eig(rho);
    if (es.eigenvalues.empty() || es.eigenvalues.front() < 1e-8)
        throw DomainError("near-singular density matrix (minimum eigenvalue below 1e-8); second-order formulas unreliable");
    return spectral_map(es, [](double e) { return 1.0 / e; });
}

ComplexMatrix f_At_coordinate(const TripartiteScenario& sc, std::size_t p, std::size_t q) {
    const auto pairs = sc.ham.absorbed();
    const ComplexMatrix& va = sc.schmidt.basis_right;
    const ComplexMatrix ap = va.adjoint() * pairs[p].A * va;
    const ComplexMatrix aq = va.adjoint() * pairs[q].A * va;
    const auto& a = sc.schmidt.coeffs;
    ComplexMatrix r(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a.size(); ++j) r(i, j) = a[i] * a[j];
    return hadamard(aq * ap - ap * aq, r);
}

FOperators f_operators(const TripartiteScenario& sc) {
    const std::size_t dA = sc.d_A, dB = sc.d_B;
    const SpectrumSplit split = split_spectrum(sc.rho_b, sc.zero_tol);
    const auto pairs = sc.ham.absorbed();
    const std::size_t np = pairs.size();
    const ComplexMatrix& rho_a = sc.rho_a.mat;
    const ComplexMatrix& rho_b = sc.rho_b.mat;
    const ComplexMatrix rho_a_inv = inverse_density(rho_a);
    const ComplexMatrix& va = sc.schmidt.basis_right;
    const auto& alpha = sc.schmidt.coeffs;

    FOperators f;
    f.n_pairs = np;
    f.proj_D = split.proj_D;
    f.applicable = split.n_nonzero < dB;
    f.f_AB = ComplexMatrix(dA * dB, dA * dB);
    f.f_AtB = ComplexMatrix(dA * dB, dA * dB);
    f.r_A = ComplexMatrix(dA, dA);
    for (std::size_t i = 0; i < dA; ++i)
        for (std::size_t j = 0; j < dA; ++j) f.r_A(i, j) = alpha[i] * alpha[j];
    if (!f.applicable) return f;

    std::vector<ComplexMatrix> ae(np);
    for (std::size_t p = 0; p < np; ++p) ae[p] = va.adjoint() * pairs[p].A * va;

    f.F_A.resize(np * np);
    f.F_B.resize(np * np);
    f.F_At.resize(np * np);
    for (std::size_t p = 0; p < np; ++p)
        for (std::size_t q = 0; q < np; ++q) {
            const ComplexMatrix& ap = pairs[p].A;
            const ComplexMatrix& aq = pairs[q].A;
            ComplexMatrix fa = (aq * rho_a * ap - rho_a * ap * rho_a_inv * aq * rho_a).conj();
            ComplexMatrix fb = split.proj_D * pairs[p].B * rho_b * pairs[q].B * split.proj_D;
            const ComplexMatrix comm = ae[p] * ae[q] - ae[q] * ae[p];
            ComplexMatrix ft(dA, dA);
            for (std::size_t i = 0; i < dA; ++i)
                for (std::size_t j = 0; j < dA; ++j) ft(i, j) = comm(j, i) * alpha[i] * alpha[j];
            ft = ft.conj();
            f.f_AB += kron(fa, fb);
            f.f_AtB += kron(ft, fb);
            f.F_A[p * np + q] = std::move(fa);
            f.F_B[p * np + q] = std::move(fb);
            f.F_At[p * np + q] = std::move(ft);
        }
    return f;
}

const char* formula_path_name(FormulaPath f) {
    switch (f) {
        case FormulaPath::susceptibility: return "susceptibility";
        case FormulaPath::transmissibility: return "transmissibility";
        case FormulaPath::vulnerability: return "vulnerability";
    }
    return "?";
}

double negative_part(const ComplexMatrix& h) {
    double s = 0.0;
    for (double e : herm_eigvals(h))
        if (e < -kZeroEigTol) s -= e;
    return s;
}

namespace {

PerturbationReport f_report(const TripartiteScenario& sc, Bipartition which, FormulaPath path) {
    FOperators f = f_operators(sc);
    if (!f.applicable)
        throw RegimeError(std::string(formula_path_name(path)) +
                          " not applicable: det(rho_B) != 0, negativity vanishes for a finite time");
    const NegativityExpansion ne = negativity_expansion(pt_orders(sc, which));
    PerturbationReport r;
    r.bipartition = which;
    r.formula_path = path;
    r.n0 = ne.n0;
    r.n1 = ne.n1;
    r.n2 = negative_part(which == Bipartition::AB ? f.f_AB : f.f_AtB);
    r.f_ops = std::move(f);
    return r;
}

}  // namespace

PerturbationReport susceptibility(const TripartiteScenario& sc) {
    return f_report(sc, Bipartition::AB, FormulaPath::susceptibility);
}

PerturbationReport transmissibility(const TripartiteScenario& sc) {
    return f_report(sc, Bipartition::AtB, FormulaPath::transmissibility);
}

PerturbationReport vulnerability(const TripartiteScenario& sc) {
    const ComplexMatrix& rho_a = sc.rho_a.mat;
    inverse_density(rho_a);
    const ComplexMatrix sq = sqrt_density(rho_a);
    const double tr_sq = tr(sq).real();
    const auto pairs = sc.ham.absorbed();
    cplx v = 0.0;
    for (const auto& p : pairs)
        for (const auto& q : pairs) {
            const cplx g = tr_sq * tr(p.A * sq * q.A) - tr(sq * p.A) * tr(sq * q.A);
            v += ucov(p.B, q.B, sc.rho_b.mat) * g;
        }
    v *= -0.5;
    if (std::abs(v.imag()) > 1e-10 * std::max(1.0, std::abs(v.real())))
        throw DomainError("vulnerability: assembled value is not real");
    const NegativityExpansion ne = negativity_expansion(pt_orders(sc, Bipartition::AtA));
    PerturbationReport r;
    r.bipartition = Bipartition::AtA;
    r.formula_path = FormulaPath::vulnerability;
    r.n0 = ne.n0;
    r.n1 = ne.n1;
    r.n2 = v.real();
    return r;
}

cplx ucov(const ComplexMatrix& bp, const ComplexMatrix& bq, const ComplexMatrix& rho) {
    if (bp.rows() != rho.rows() || bq.rows() != rho.rows()) throw ShapeError("ucov: dimension mismatch");
    return tr(bp * rho * bq) - tr(bp * rho) * tr(bq * rho);
}

double cov(const ComplexMatrix& bp, const ComplexMatrix& bq, const ComplexMatrix& rho) {
    return 0.5 * (ucov(bp, bq, rho) + ucov(bq, bp, rho)).real();
}

double variance(const ComplexMatrix& a, const ComplexMatrix& rho) {
    const double m = tr(rho * a).real();
    return tr(rho * a * a).real() - m * m;
}

double amplitude_variance_GA(const ComplexMatrix& a, const ComplexMatrix& rho) {
    const ComplexMatrix sq = sqrt_density(rho);
    const cplx m = tr(sq * a);
    return (tr(sq) * tr(a * sq * a) - m * m).real();
}

double fragility_2(const ComplexMatrix& a, const ComplexMatrix& rho) {
    const ComplexMatrix c = commutator(a, rho);
    return -0.5 * tr(c * c).real();
}

double renyi_second_derivative(double var_a, double var_b, double n) {
    if (!(n > 1.0)) throw DomainError("renyi_second_derivative: order n must exceed 1");
    if (var_a < 0.0 || var_b < 0.0) throw DomainError("renyi_second_derivative: variances must be non-negative");
    return 4.0 * var_a * var_b / (n - 1.0);
}

double b_AtA_susceptibility(const TripartiteScenario& sc) {
    const std::size_t dA = sc.d_A, dB = sc.d_B;
    const ComplexMatrix& rho_b = sc.rho_b.mat;
    const ComplexMatrix rho_b_inv = inverse_density(rho_b);
    const ComplexMatrix omega = sc.rho_AtA0();
    const ComplexMatrix pd = ComplexMatrix::identity(dA * dA) - omega;
    const auto pairs = sc.ham.absorbed();
    const ComplexMatrix id_at = ComplexMatrix::identity(dA);
    ComplexMatrix f(dB * dA * dA, dB * dA * dA);
    for (const auto& p : pairs)
        for (const auto& q : pairs) {
            const ComplexMatrix fb = (q.B * rho_b * p.B - rho_b * p.B * rho_b_inv * q.B * rho_b).conj();
            const ComplexMatrix fo = pd * kron(id_at, p.A) * omega * kron(id_at, q.A) * pd;
            f += kron(fb, fo);
        }
    return negative_part(hermitian_part(f));
}

DelocalizationReport delocalization_report(const TripartiteScenario& sc, const std::vector<double>& t_grid) {
    DelocalizationReport rep;
    const Trajectory tr = trajectory(sc, t_grid);
    for (std::size_t i = 0; i < t_grid.size(); ++i) {
        const auto& r = tr.rows[i];
        rep.rows.push_back({t_grid[i], r[2], r[1], r[3], r[4], r[0]});
    }
    const auto ev = herm_eigvals(sc.rho_b.mat);
    if (ev.front() >= 1e-8) {
        rep.coefficient_kind = "susceptibility";
        rep.coefficient = b_AtA_susceptibility(sc);
    } else if (purity(sc.rho_b.mat) > 1.0 - 1e-10 && sc.ham.interaction.size() == 1) {
        rep.coefficient_kind = "renyi";
        rep.coefficient = renyi_second_derivative(variance(sc.ham.interaction[0].A, sc.rho_a.mat),
                                                  variance(sc.ham.interaction[0].B, sc.rho_b.mat), 2.0);
    } else {
        rep.coefficient_kind = "undefined";
    }
    return rep;
}

double exact_negativity(const TripartiteScenario& sc, Bipartition which, double t) {
    const EvolvedStates s = evolve_exact(sc, t);
    const ComplexMatrix& m = which == Bipartition::AB ? s.rho_AB.mat : which == Bipartition::AtB ? s.rho_AtB.mat : s.rho_AtA.mat;
    return negativity(m, bipartition_shape(sc, which)).value;
}

double richardson_second_derivative(const std::function<double(double)>& f, double h) {
    const double f0 = f(0.0);
    auto d = [&](double s) { return (f(s) - 2.0 * f0 + f(-s)) / (s * s); };
    const double d1 = d(h), d2 = d(h / 2), d3 = d(h / 4);
    const double r1 = (4.0 * d2 - d1) / 3.0;
    const double r2 = (4.0 * d3 - d2) / 3.0;
    return (16.0 * r2 - r1) / 15.0;
}

double fd_second_derivative(const TripartiteScenario& sc, Bipartition which) {
    return richardson_second_derivative([&](double t) { return exact_negativity(sc, which, t); });
}

}  // namespace negtrans
