#include "negtrans/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "negtrans/errors.hpp"
#include "negtrans/negativity.hpp"
#include "negtrans/optimize.hpp"
#include "negtrans/perturb.hpp"
#include "negtrans/separability.hpp"

#ifndef NEGTRANS_SCENARIO_DIR
#define NEGTRANS_SCENARIO_DIR "scenarios"
#endif

namespace negtrans {

using nlohmann::json;

std::string format_real(double v) {
    if (v == 0.0) v = 0.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& tr) {
    os << "t";
    for (const char* name : kTrajectoryColumnNames) os << ',' << name;
    os << '\n';
    for (std::size_t i = 0; i < tr.t.size(); ++i) {
        os << format_real(tr.t[i]);
        for (double v : tr.rows[i]) os << ',' << format_real(v);
        os << '\n';
    }
}

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double relative_gap(double predicted, double fd) {
    const double scale = std::max(std::abs(predicted), std::abs(fd));
    if (scale < 1e-9) return 0.0;
    return std::abs(predicted - fd) / scale;
}

json report_entry(const TripartiteScenario& sc, Bipartition which, const char* regime, const NegativityExpansion& e) {
    const double fd = fd_second_derivative(sc, which);
    return json{{"bipartition", bipartition_name(which)},
                {"n0", number_or_null(e.n0)},
                {"n1", number_or_null(e.n1)},
                {"n2", number_or_null(e.n2)},
                {"regime", regime},
                {"fd_second_derivative", number_or_null(fd)},
                {"relative_gap", number_or_null(relative_gap(2.0 * e.n2, fd))}};
}

}  // namespace

json perturb_report_json(const TripartiteScenario& sc) {
    json out = json::array();
    const bool st_applicable = f_operators(sc).applicable;
    auto add = [&](Bipartition which, FormulaPath path, PerturbationReport (*fn)(const TripartiteScenario&)) {
        if (which != Bipartition::AtA && !st_applicable) {
            // Generic eigenvalue-perturbation route; the closed-form functional does not apply.
            out.push_back(report_entry(sc, which, "not_applicable", negativity_expansion(pt_orders(sc, which))));
            return;
        }
        const PerturbationReport r = fn(sc);
        out.push_back(report_entry(sc, which, formula_path_name(path), {r.n0, r.n1, r.n2}));
    };
    add(Bipartition::AB, FormulaPath::susceptibility, &susceptibility);
    add(Bipartition::AtB, FormulaPath::transmissibility, &transmissibility);
    add(Bipartition::AtA, FormulaPath::vulnerability, &vulnerability);
    return out;
}

json certify_json(const TripartiteScenario& sc, const std::vector<double>& t_grid) {
    json points = json::array();
    double max_residual = 0.0;
    double max_negativity = 0.0;
    for (double t : t_grid) {
        const SeparableDecomposition dec = product_decomposition(sc, t);
        const EvolvedStates ev = evolve_exact(sc, t);
        const double residual = verify_certificate(dec, ev.rho_AtB);
        const double neg = negativity(ev.rho_AtB, bipartition_shape(sc, Bipartition::AtB)).value;
        max_residual = std::max(max_residual, residual);
        max_negativity = std::max(max_negativity, neg);
        points.push_back({{"t", t}, {"terms", dec.weights.size()}, {"residual", residual}, {"neg_AtB", neg}});
    }
    const GurvitsResult g = gurvits_separable(sc.rho_a, sc.rho_b);
    return json{{"certified", true},
                {"bipartition", bipartition_name(Bipartition::AtB)},
                {"max_residual", max_residual},
                {"max_neg_AtB", max_negativity},
                {"gurvits", {{"product_purity", g.product_purity}, {"threshold", g.threshold}, {"certified", g.certified}}},
                {"points", points}};
}

const std::vector<FigureSpec>& figure_table() {
    static const std::vector<FigureSpec> table{
        {"mixed_qutrit", "qutrit_mixed.json", "trajectory"},
        {"delocal_free", "qubit_product_free.json", "trajectory"},
        {"delocal_swap", "qubit_swap.json", "trajectory"},
        {"mixed_qubit", "qubit_swap.json", "trajectory"},
        {"pure_qutrit", "qutrit_pure_B.json", "trajectory"},
        {"pure_qutrit_perturb", "qutrit_pure_B.json", "perturb"},
    };
    return table;
}

namespace {

struct Options {
    std::string scenario_path;
    std::string out_path;
    std::optional<double> t_start;
    std::optional<double> t_stop;
    std::optional<std::size_t> points;
    std::optional<std::uint64_t> seed;
    std::optional<double> zero_tol;
    std::string scenario_dir = NEGTRANS_SCENARIO_DIR;
    std::string figure;
    std::string functional;
    std::string direction;
    std::optional<std::size_t> budget;
};

const char* kHelpFooter =
    "Trajectory CSV columns (header row, LF line endings, 12 significant digits):\n"
    "  t          time\n"
    "  neg_AB     negativity of rho_AB\n"
    "  neg_AtB    negativity of rho_AtB (ancilla vs B)\n"
    "  neg_AtA    negativity of rho_AtA (ancilla vs A)\n"
    "  neg_At_AB  negativity of the ancilla against AB\n"
    "  neg_B_AtA  negativity of B against the ancilla and A\n"
    "  purity_A   Tr rho_A(t)^2\n"
    "  purity_B   Tr rho_B(t)^2\n"
    "  purity_AB  Tr rho_AB(t)^2\n"
    "Exit codes: 0 success, 2 validation error, 3 regime error (no certificate, optimizer regime), 1 other.\n"
    "Figure ids for reproduce: mixed_qutrit, delocal_free, delocal_swap, mixed_qubit, pure_qutrit, "
    "pure_qutrit_perturb.";

void add_common(CLI::App* sub, Options& o, bool needs_scenario) {
    auto* s = sub->add_option("--scenario", o.scenario_path, "scenario JSON file");
    if (needs_scenario) s->required();
    sub->add_option("--out", o.out_path, "output file (default: stdout)");
    sub->add_option("--t-start", o.t_start, "override time_grid.start");
    sub->add_option("--t-stop", o.t_stop, "override time_grid.stop");
    sub->add_option("--points", o.points, "override time_grid.points");
    sub->add_option("--seed", o.seed, "override seed");
    sub->add_option("--zero-tol", o.zero_tol, "override zero_tol");
}

ScenarioFile load_with_overrides(const std::string& path, const Options& o) {
    ScenarioFile f = load_scenario(path);
    if (o.t_start) f.time_grid.start = *o.t_start;
    if (o.t_stop) f.time_grid.stop = *o.t_stop;
    if (o.points) f.time_grid.points = *o.points;
    if (o.seed) f.seed = *o.seed;
    if (o.zero_tol) {
        if (!(*o.zero_tol > 0.0)) throw ValidationError("--zero-tol must be positive");
        f.zero_tol = *o.zero_tol;
    }
    if (f.time_grid.points == 0) throw ValidationError("--points must be positive");
    if (f.time_grid.stop < f.time_grid.start) throw ValidationError("time grid stop precedes start");
    return f;
}

std::vector<double> grid_of(const ScenarioFile& f) {
    return linear_grid(f.time_grid.start, f.time_grid.stop, f.time_grid.points);
}

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
            if (!*file_) throw ValidationError("cannot open output file '" + path + "'");
            os_ = file_.get();
        }
    }
    std::ostream& get() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_;
};

int do_trajectory(const ScenarioFile& f, const Options& o, std::ostream& out) {
    const TripartiteScenario sc = build_scenario(f);
    const Trajectory tr = trajectory(sc, grid_of(f));
    Sink sink(o.out_path, out);
    write_trajectory_csv(sink.get(), tr);
    return kExitOk;
}

int do_perturb(const ScenarioFile& f, const Options& o, std::ostream& out) {
    const TripartiteScenario sc = build_scenario(f);
    Sink sink(o.out_path, out);
    sink.get() << perturb_report_json(sc).dump(2) << '\n';
    return kExitOk;
}

int do_certify(const ScenarioFile& f, const Options& o, std::ostream& out) {
    const TripartiteScenario sc = build_scenario(f);
    const json j = certify_json(sc, grid_of(f));
    Sink sink(o.out_path, out);
    sink.get() << j.dump(2) << '\n';
    return kExitOk;
}

int do_optimize(const ScenarioFile& f, const Options& o, std::ostream& out) {
    const TripartiteScenario sc = build_scenario(f);
    OptimizeSpec spec = f.optimize.value_or(OptimizeSpec{});
    if (!o.functional.empty()) spec.functional = o.functional;
    if (!o.direction.empty()) spec.direction = o.direction;
    if (o.budget) spec.budget = *o.budget;
    if (spec.direction != "min" && spec.direction != "max") throw ValidationError("--direction must be min or max");

    const Functional fn = parse_functional(spec.functional);
    SpectrumConstrainedFamily family;
    const HermitianEigensystem es = descending_eigenbasis(sc.rho_a.mat);
    family.fixed_spectrum = es.eigenvalues;

    OptimizeOptions opt;
    opt.direction = spec.direction == "max" ? Direction::max : Direction::min;
    opt.budget = spec.budget;
    opt.seed = f.seed;
    const OptimizeResult r = extremize(scenario_functional(fn, sc), family, opt);

    json best_rho = matrix_to_json(r.best_state.mat);
    const json j{{"functional", functional_name(fn)},
                 {"direction", spec.direction},
                 {"budget", spec.budget},
                 {"seed", f.seed},
                 {"best_value", r.best_value},
                 {"best_restart", r.best_restart},
                 {"best_theta", r.best_theta},
                 {"best_rho_A", best_rho},
                 {"evaluations", r.trace.size()}};
    out << j.dump(2) << '\n';
    if (!o.out_path.empty()) {
        Sink sink(o.out_path, out);
        sink.get() << "evaluation,best_value\n";
        for (std::size_t i = 0; i < r.trace.size(); ++i) sink.get() << i + 1 << ',' << format_real(r.trace[i]) << '\n';
    }
    return kExitOk;
}

int do_reproduce(const Options& o, std::ostream& out) {
    for (const auto& fig : figure_table()) {
        if (fig.id != o.figure) continue;
        const std::string path = (std::filesystem::path(o.scenario_dir) / fig.scenario_file).string();
        const ScenarioFile f = load_with_overrides(path, o);
        return fig.task == "perturb" ? do_perturb(f, o, out) : do_trajectory(f, o, out);
    }
    throw ValidationError("unknown figure id '" + o.figure + "'");
}

int emit_error(std::ostream& err, const char* kind, const std::string& message, int code) {
    err << json{{"error", kind}, {"message", message}, {"exit_code", code}}.dump() << '\n';
    return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"negtrans: entanglement negativity transfer in an ancilla-A-B system", "negtrans"};
    app.footer(kHelpFooter);
    app.require_subcommand(1);
    Options o;

    auto* traj = app.add_subcommand("trajectory", "exact negativity and purity trajectory as CSV");
    add_common(traj, o, true);
    auto* pert = app.add_subcommand("perturb", "second-order negativity reports as JSON, with a finite-difference check");
    add_common(pert, o, true);
    auto* cert = app.add_subcommand("certify", "constructive separability certificate for At;B as JSON");
    add_common(cert, o, true);
    auto* optz = app.add_subcommand("optimize", "extremize S, T, V or G_A over rho_A with fixed spectrum");
    add_common(optz, o, true);
    optz->add_option("--functional", o.functional, "S, T, V or G_A");
    optz->add_option("--direction", o.direction, "min or max");
    optz->add_option("--budget", o.budget, "objective evaluation budget");
    auto* repr = app.add_subcommand("reproduce", "run the shipped scenario behind a named figure");
    add_common(repr, o, false);
    repr->add_option("figure", o.figure, "figure id")->required();
    repr->add_option("--scenario-dir", o.scenario_dir, "directory holding the shipped scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        return emit_error(err, "usage", e.what(), kExitValidation);
    }

    try {
        if (*repr) return do_reproduce(o, out);
        const ScenarioFile f = load_with_overrides(o.scenario_path, o);
        if (*traj) return do_trajectory(f, o, out);
        if (*pert) return do_perturb(f, o, out);
        if (*cert) return do_certify(f, o, out);
        if (*optz) return do_optimize(f, o, out);
        return emit_error(err, "usage", "no subcommand", kExitValidation);
    } catch (const ValidationError& e) {
        return emit_error(err, "validation", e.what(), kExitValidation);
    } catch (const ShapeError& e) {
        return emit_error(err, "shape", e.what(), kExitValidation);
    } catch (const DomainError& e) {
        return emit_error(err, "domain", e.what(), kExitValidation);
    } catch (const NoCertificateError& e) {
        return emit_error(err, "no_certificate", e.what(), kExitRegime);
    } catch (const RegimeError& e) {
        return emit_error(err, "regime", e.what(), kExitRegime);
    } catch (const GapError& e) {
        return emit_error(err, "gap", e.what(), kExitRegime);
    } catch (const std::exception& e) {
        return emit_error(err, "internal", e.what(), kExitOther);
    }
}

}  // namespace negtrans
