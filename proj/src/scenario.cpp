#include "negtrans/scenario.hpp"

#include <fstream>
#include <set>

#include "negtrans/errors.hpp"

namespace negtrans {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
    if (!j.is_object()) throw ValidationError(where + ": expected an object");
    for (const auto& [k, v] : j.items())
        if (!allowed.count(k)) throw ValidationError(where + ": unknown field '" + k + "'");
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    if (!j.contains(key)) throw ValidationError(where + ": missing field '" + key + "'");
    return j.at(key);
}

double get_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ValidationError(where + ": expected a number");
    return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw ValidationError(where + ": expected a non-negative integer");
    return j.get<std::size_t>();
}

StateSpec parse_state(const json& j, const std::string& where, bool allow_pure) {
    StateSpec s;
    if (j.is_string()) {
        const std::string str = j.get<std::string>();
        if (!allow_pure || str.rfind("pure:", 0) != 0) throw ValidationError(where + ": unsupported state string '" + str + "'");
        try {
            std::size_t pos = 0;
            const long k = std::stol(str.substr(5), &pos);
            if (pos != str.size() - 5 || k < 0) throw std::invalid_argument("index");
            s.pure_index = static_cast<std::size_t>(k);
        } catch (const std::exception&) {
            throw ValidationError(where + ": malformed pure-state index in '" + str + "'");
        }
        s.kind = StateSpec::Kind::pure;
        return s;
    }
    check_keys(j, where, {"eigenvalues", "matrix"});
    if (j.contains("eigenvalues") == j.contains("matrix"))
        throw ValidationError(where + ": give exactly one of 'eigenvalues' or 'matrix'");
    if (j.contains("eigenvalues")) {
        const json& ev = j.at("eigenvalues");
        if (!ev.is_array()) throw ValidationError(where + ".eigenvalues: expected an array");
        s.kind = StateSpec::Kind::eigenvalues;
        for (std::size_t i = 0; i < ev.size(); ++i)
            s.eigenvalues.push_back(get_number(ev[i], where + ".eigenvalues[" + std::to_string(i) + "]"));
    } else {
        s.kind = StateSpec::Kind::matrix;
        s.matrix = matrix_from_json(j.at("matrix"), where + ".matrix");
    }
    return s;
}

json state_to_json(const StateSpec& s) {
    switch (s.kind) {
        case StateSpec::Kind::eigenvalues: return json{{"eigenvalues", s.eigenvalues}};
        case StateSpec::Kind::matrix: return json{{"matrix", matrix_to_json(s.matrix)}};
        case StateSpec::Kind::pure: return "pure:" + std::to_string(s.pure_index);
    }
    return nullptr;
}

}  // namespace

ComplexMatrix StateSpec::to_matrix(std::size_t dim) const {
    switch (kind) {
        case Kind::eigenvalues:
            if (eigenvalues.size() != dim) throw ValidationError("state: eigenvalue count does not match dimension");
            return ComplexMatrix::diag(eigenvalues);
        case Kind::matrix:
            if (matrix.rows() != dim || matrix.cols() != dim) throw ValidationError("state: matrix does not match dimension");
            return matrix;
        case Kind::pure:
            if (pure_index >= dim) throw ValidationError("state: pure-state index out of range");
            return pure_state(dim, pure_index).mat;
    }
    return {};
}

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw ValidationError(where + ": expected a non-empty array of rows");
    const std::size_t n = j.size();
    const std::size_t m = j[0].is_array() ? j[0].size() : 0;
    ComplexMatrix out(n, m);
    for (std::size_t r = 0; r < n; ++r) {
        if (!j[r].is_array() || j[r].size() != m) throw ValidationError(where + ": ragged or malformed row " + std::to_string(r));
        for (std::size_t c = 0; c < m; ++c) {
            const json& z = j[r][c];
            const std::string at = where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]";
            if (!z.is_array() || z.size() != 2) throw ValidationError(at + ": expected a [re, im] pair");
            out(r, c) = cplx(get_number(z[0], at), get_number(z[1], at));
        }
    }
    return out;
}

ScenarioFile parse_scenario(const json& j) {
    check_keys(j, "scenario", {"schema_version", "description", "dims", "rho_A", "rho_B", "hamiltonian", "time_grid",
                               "outputs", "seed", "zero_tol", "optimize"});
    ScenarioFile s;
    const json& ver = require(j, "schema_version", "scenario");
    if (!ver.is_number_integer() || ver.get<int>() != 1) throw ValidationError("scenario: schema_version must be 1");
    s.schema_version = 1;
    if (j.contains("description")) {
        if (!j.at("description").is_string()) throw ValidationError("scenario.description: expected a string");
        s.description = j.at("description").get<std::string>();
    }

    const json& dims = require(j, "dims", "scenario");
    check_keys(dims, "dims", {"d_A", "d_B"});
    s.d_A = get_count(require(dims, "d_A", "dims"), "dims.d_A");
    s.d_B = get_count(require(dims, "d_B", "dims"), "dims.d_B");
    if (s.d_A < 1 || s.d_B < 1) throw ValidationError("dims: dimensions must be positive");

    s.rho_A = parse_state(require(j, "rho_A", "scenario"), "rho_A", false);
    s.rho_B = parse_state(require(j, "rho_B", "scenario"), "rho_B", true);

    const json& h = require(j, "hamiltonian", "scenario");
    check_keys(h, "hamiltonian", {"terms", "C", "D", "E"});
    s.hamiltonian.d_A = s.d_A;
    s.hamiltonian.d_B = s.d_B;
    const json& terms = require(h, "terms", "hamiltonian");
    if (!terms.is_array()) throw ValidationError("hamiltonian.terms: expected an array");
    for (std::size_t p = 0; p < terms.size(); ++p) {
        const std::string where = "hamiltonian.terms[" + std::to_string(p) + "]";
        check_keys(terms[p], where, {"A", "B"});
        s.hamiltonian.interaction.push_back({matrix_from_json(require(terms[p], "A", where), where + ".A"),
                                             matrix_from_json(require(terms[p], "B", where), where + ".B")});
    }
    if (h.contains("C")) s.hamiltonian.free_C = matrix_from_json(h.at("C"), "hamiltonian.C");
    if (h.contains("D")) s.hamiltonian.free_D = matrix_from_json(h.at("D"), "hamiltonian.D");
    if (h.contains("E")) s.hamiltonian.free_E = matrix_from_json(h.at("E"), "hamiltonian.E");
    try {
        s.hamiltonian.validate();
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }

    if (j.contains("time_grid")) {
        const json& g = j.at("time_grid");
        check_keys(g, "time_grid", {"start", "stop", "points"});
        s.time_grid.start = get_number(require(g, "start", "time_grid"), "time_grid.start");
        s.time_grid.stop = get_number(require(g, "stop", "time_grid"), "time_grid.stop");
        s.time_grid.points = get_count(require(g, "points", "time_grid"), "time_grid.points");
        if (s.time_grid.points == 0) throw ValidationError("time_grid.points must be positive");
        if (s.time_grid.stop < s.time_grid.start) throw ValidationError("time_grid: stop precedes start");
    }
    if (j.contains("outputs")) {
        const json& o = j.at("outputs");
        if (!o.is_array()) throw ValidationError("outputs: expected an array");
        static const std::set<std::string> known{"trajectory", "perturb", "certify", "optimize", "delocalization"};
        for (const auto& item : o) {
            if (!item.is_string() || !known.count(item.get<std::string>()))
                throw ValidationError("outputs: unknown task " + item.dump());
            s.outputs.push_back(item.get<std::string>());
        }
    }
    if (j.contains("seed")) {
        const json& sd = j.at("seed");
        if (!sd.is_number_unsigned()) throw ValidationError("seed: expected a non-negative integer");
        s.seed = sd.get<std::uint64_t>();
    }
    if (j.contains("zero_tol")) {
        s.zero_tol = get_number(j.at("zero_tol"), "zero_tol");
        if (!(s.zero_tol > 0.0)) throw ValidationError("zero_tol must be positive");
    }
    if (j.contains("optimize")) {
        const json& o = j.at("optimize");
        check_keys(o, "optimize", {"functional", "direction", "budget"});
        OptimizeSpec os;
        if (o.contains("functional")) {
            if (!o.at("functional").is_string()) throw ValidationError("optimize.functional: expected a string");
            os.functional = o.at("functional").get<std::string>();
        }
        if (o.contains("direction")) {
            if (!o.at("direction").is_string()) throw ValidationError("optimize.direction: expected a string");
            os.direction = o.at("direction").get<std::string>();
            if (os.direction != "min" && os.direction != "max") throw ValidationError("optimize.direction: min or max");
        }
        if (o.contains("budget")) os.budget = get_count(o.at("budget"), "optimize.budget");
        s.optimize = os;
    }
    return s;
}

ScenarioFile load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open scenario file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError("scenario file '" + path + "' is not valid JSON: " + e.what());
    }
    return parse_scenario(j);
}

json scenario_to_json(const ScenarioFile& s) {
    json j;
    j["schema_version"] = s.schema_version;
    if (!s.description.empty()) j["description"] = s.description;
    j["dims"] = {{"d_A", s.d_A}, {"d_B", s.d_B}};
    j["rho_A"] = state_to_json(s.rho_A);
    j["rho_B"] = state_to_json(s.rho_B);
    json h;
    h["terms"] = json::array();
    for (const auto& t : s.hamiltonian.interaction)
        h["terms"].push_back({{"A", matrix_to_json(t.A)}, {"B", matrix_to_json(t.B)}});
    if (s.hamiltonian.free_C) h["C"] = matrix_to_json(*s.hamiltonian.free_C);
    if (s.hamiltonian.free_D) h["D"] = matrix_to_json(*s.hamiltonian.free_D);
    if (s.hamiltonian.free_E) h["E"] = matrix_to_json(*s.hamiltonian.free_E);
    j["hamiltonian"] = h;
    j["time_grid"] = {{"start", s.time_grid.start}, {"stop", s.time_grid.stop}, {"points", s.time_grid.points}};
    j["outputs"] = s.outputs;
    j["seed"] = s.seed;
    j["zero_tol"] = s.zero_tol;
    if (s.optimize)
        j["optimize"] = {{"functional", s.optimize->functional}, {"direction", s.optimize->direction}, {"budget", s.optimize->budget}};
    return j;
}

TripartiteScenario build_scenario(const ScenarioFile& s) {
    try {
        const DensityMatrix ra = validate_density(s.rho_A.to_matrix(s.d_A));
        const DensityMatrix rb = validate_density(s.rho_B.to_matrix(s.d_B));
        return make_scenario(ra, rb, s.hamiltonian, s.zero_tol);
    } catch (const ValidationError&) {
        throw;
    } catch (const Error& e) {
        throw ValidationError(e.what());
    }
}

}  // namespace negtrans
