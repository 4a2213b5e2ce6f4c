#include "negtrans/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <sstream>

#include "negtrans/errors.hpp"
#include "negtrans/perturb.hpp"

namespace negtrans {

double qubit_GA_bloch(double a1, double a2, const BlochVector& b) {
    const double r = b.r();
    if (r > 1.0 + 1e-12) throw DomainError("qubit_GA_bloch: Bloch radius exceeds 1");
    const double pre = (a1 - a2) * (a1 - a2) / 4.0;
    if (r == 0.0) return 2.0 * pre;
    const double s = std::sqrt(std::max(0.0, 1.0 - r * r));
    return pre * (s + 1.0 - (1.0 - s) * b.az * b.az / (r * r));
}

ComplexMatrix SpectrumConstrainedFamily::generator(const std::vector<double>& theta) const {
    const std::size_t d = dim();
    if (theta.size() != n_params()) throw ShapeError("family: parameter vector has wrong length");
    ComplexMatrix k(d, d);
    std::size_t idx = 0;
    for (std::size_t i = 0; i < d; ++i) k(i, i) = theta[idx++];
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z(theta[idx], theta[idx + 1]);
            idx += 2;
            k(i, j) = z;
            k(j, i) = std::conj(z);
        }
    return k;
}

DensityMatrix SpectrumConstrainedFamily::at(const std::vector<double>& theta) const {
    const ComplexMatrix u = evolve_unitary(generator(theta), 1.0);
    return {hermitian_part(sandwich(u, ComplexMatrix::diag(fixed_spectrum))), dim()};
}

Functional parse_functional(const std::string& s) {
    if (s == "S") return Functional::S;
    if (s == "T") return Functional::T;
    if (s == "V") return Functional::V;
    if (s == "G_A") return Functional::G_A;
    throw ValidationError("unknown functional '" + s + "' (expected S, T, V or G_A)");
}

const char* functional_name(Functional f) {
    switch (f) {
        case Functional::S: return "S";
        case Functional::T: return "T";
        case Functional::V: return "V";
        case Functional::G_A: return "G_A";
    }
    return "?";
}

ObjectiveFn scenario_functional(Functional f, const TripartiteScenario& base) {
    switch (f) {
        case Functional::S:
        case Functional::T:
            return [f, base](const DensityMatrix& rho) {
                const TripartiteScenario sc = make_scenario(rho, base.rho_b, base.ham, base.zero_tol);
                const FOperators ops = f_operators(sc);
                if (!ops.applicable) throw RegimeError("S/T not applicable: det(rho_B) != 0");
                return negative_part(f == Functional::S ? ops.f_AB : ops.f_AtB);
            };
        case Functional::V:
            return [base](const DensityMatrix& rho) {
                return vulnerability(make_scenario(rho, base.rho_b, base.ham, base.zero_tol)).n2;
            };
        case Functional::G_A:
            if (base.ham.interaction.empty()) throw ValidationError("G_A needs at least one interaction term");
            return [a = base.ham.interaction[0].A](const DensityMatrix& rho) { return amplitude_variance_GA(a, rho.mat); };
    }
    throw ValidationError("unknown functional");
}

namespace {

struct RestartResult {
    std::vector<double> theta;
    double value = 0.0;             // in minimization sign
    std::vector<double> evaluated;  // raw minimization-sign values in evaluation order
    std::exception_ptr error;
};

std::string theta_string(const std::vector<double>& th) {
    std::ostringstream os;
    os.precision(17);
    os << "[";
    for (std::size_t i = 0; i < th.size(); ++i) os << (i ? ", " : "") << th[i];
    os << "]";
    return os.str();
}

RestartResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                          double step, std::size_t budget) {
    const std::size_t n = x0.size();
    RestartResult res;
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        const double v = f(x);
        ++evals;
        res.evaluated.push_back(v);
        if (res.evaluated.size() == 1 || v < res.value) {
            res.value = v;
            res.theta = x;
        }
        return v;
    };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    fv[0] = eval(x0);
    for (std::size_t i = 0; i < n && evals < budget; ++i) {
        simplex[i + 1][i] += step;
        fv[i + 1] = eval(simplex[i + 1]);
    }
    if (evals < n + 1) return res;

    std::vector<std::size_t> order(n + 1);
    while (evals < budget) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });
        const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];

        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i)
            for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
        if (fv[worst] - fv[best] <= 1e-14 * std::max(1.0, std::abs(fv[best])) && (size < 1e-10 || fv[worst] == fv[best]))
            break;

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i)
            if (i != worst)
                for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
        auto along = [&](double c) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + c * (simplex[worst][k] - centroid[k]);
            return x;
        };

        const std::vector<double> xr = along(-1.0);
        const double fr = eval(xr);
        if (fr < fv[best]) {
            if (evals >= budget) {
                simplex[worst] = xr;
                fv[worst] = fr;
                break;
            }
            const std::vector<double> xe = along(-2.0);
            const double fe = eval(xe);
            if (fe < fr) {
                simplex[worst] = xe;
                fv[worst] = fe;
            } else {
                simplex[worst] = xr;
                fv[worst] = fr;
            }
        } else if (fr < fv[second]) {
            simplex[worst] = xr;
            fv[worst] = fr;
        } else {
            if (evals >= budget) break;
            const bool outside = fr < fv[worst];
            const std::vector<double> xc = along(outside ? -0.5 : 0.5);
            const double fc = eval(xc);
            if (fc < (outside ? fr : fv[worst])) {
                simplex[worst] = xc;
                fv[worst] = fc;
            } else {
                for (std::size_t i = 0; i <= n && evals < budget; ++i) {
                    if (i == best) continue;
                    for (std::size_t k = 0; k < n; ++k)
                        simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
                    fv[i] = eval(simplex[i]);
                }
            }
        }
    }
    return res;
}

}  // namespace

OptimizeResult extremize(const ObjectiveFn& fn, const SpectrumConstrainedFamily& family, const OptimizeOptions& opt) {
    const std::size_t np = family.n_params();
    if (opt.restarts == 0 || opt.budget < opt.restarts) throw ValidationError("extremize: budget too small for restarts");
    std::vector<double> x0 = opt.initial_theta.empty() ? std::vector<double>(np, 0.0) : opt.initial_theta;
    if (x0.size() != np) throw ValidationError("extremize: initial theta has wrong length");

    const double sign = opt.direction == Direction::max ? -1.0 : 1.0;
    std::vector<std::vector<double>> starts{x0};
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(-M_PI, M_PI);
    for (std::size_t r = 1; r < opt.restarts; ++r) {
        std::vector<double> s(np);
        for (auto& v : s) v = unif(rng);
        starts.push_back(std::move(s));
    }
    std::vector<std::size_t> budgets(opt.restarts, opt.budget / opt.restarts);
    budgets[0] += opt.budget % opt.restarts;

    auto objective = [&](const std::vector<double>& theta) {
        try {
            return sign * fn(family.at(theta));
        } catch (const RegimeError& e) {
            throw RegimeError(std::string(e.what()) + " at theta=" + theta_string(theta));
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " at theta=" + theta_string(theta));
        }
    };

    std::vector<RestartResult> results(opt.restarts);
    const long nr = static_cast<long>(opt.restarts);
#pragma omp parallel for schedule(static, 1)
    for (long r = 0; r < nr; ++r) {
        const auto ru = static_cast<std::size_t>(r);
        try {
            results[ru] = nelder_mead(objective, starts[ru], opt.initial_step, budgets[ru]);
        } catch (...) {
            results[ru].error = std::current_exception();
        }
    }
    for (const auto& r : results)
        if (r.error) std::rethrow_exception(r.error);

    OptimizeResult out;
    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (results[r].value < results[best].value) best = r;
    out.best_restart = best;
    out.best_theta = results[best].theta;
    out.best_value = sign * results[best].value;
    out.best_state = family.at(out.best_theta);
    double running = 0.0;
    bool first = true;
    for (const auto& r : results)
        for (double v : r.evaluated) {
            if (first || v < running) running = v;
            first = false;
            out.trace.push_back(sign * running);
        }
    return out;
}

}  // namespace negtrans
