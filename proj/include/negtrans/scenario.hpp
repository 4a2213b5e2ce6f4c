#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "negtrans/hamiltonian.hpp"

namespace negtrans {

struct StateSpec {
    enum class Kind { eigenvalues, matrix, pure };
    Kind kind = Kind::eigenvalues;
    std::vector<double> eigenvalues;
    ComplexMatrix matrix;
    std::size_t pure_index = 0;

    ComplexMatrix to_matrix(std::size_t dim) const;
};

struct TimeGrid {
    double start = 0.0;
    double stop = 1.0;
    std::size_t points = 101;
};

struct OptimizeSpec {
    std::string functional = "V";
    std::string direction = "max";
    std::size_t budget = 2000;
};

struct ScenarioFile {
    int schema_version = 1;
    std::string description;
    std::size_t d_A = 0;
    std::size_t d_B = 0;
    StateSpec rho_A;
    StateSpec rho_B;
    TotalHamiltonian hamiltonian;
    TimeGrid time_grid;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    double zero_tol = kDefaultZeroTol;
    std::optional<OptimizeSpec> optimize;
};

// Strict parse: unknown keys, wrong types and inconsistent dimensions raise ValidationError.
ScenarioFile parse_scenario(const nlohmann::json& j);
ScenarioFile load_scenario(const std::string& path);
nlohmann::json scenario_to_json(const ScenarioFile& s);

// Validated tripartite scenario (density matrices checked, det(rho_A) != 0 enforced).
TripartiteScenario build_scenario(const ScenarioFile& s);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& where);

}  // namespace negtrans
