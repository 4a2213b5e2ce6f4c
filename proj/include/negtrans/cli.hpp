#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "negtrans/hamiltonian.hpp"
#include "negtrans/scenario.hpp"

namespace negtrans {

inline constexpr int kExitOk = 0;
inline constexpr int kExitOther = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitRegime = 3;

// %.12g with negative zero folded to 0.
std::string format_real(double v);

void write_trajectory_csv(std::ostream& os, const Trajectory& tr);

// One entry per bipartition A;B, At;B, At;A.
nlohmann::json perturb_report_json(const TripartiteScenario& sc);

nlohmann::json certify_json(const TripartiteScenario& sc, const std::vector<double>& t_grid);

struct FigureSpec {
    std::string id;
    std::string scenario_file;
    std::string task;  // "trajectory" or "perturb"
};

const std::vector<FigureSpec>& figure_table();

// Entry point used by the negtrans executable. Output goes to `out` unless --out is given,
// errors are written to `err` as a single JSON object.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace negtrans
