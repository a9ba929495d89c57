#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"

namespace gagliardo {

struct ExperimentSpec {
    std::string name;
    std::map<std::string, std::string> params;
    std::uint64_t seed = 1;
    std::string output_path;       // empty: caller prints
    std::string format = "csv";    // csv | json
};

struct ExperimentReport {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    bool pass = false;
    std::string verdict;     // one line, human readable
    std::string provenance;  // config hash + library version

    std::string to_csv() const;
    nlohmann::json to_json() const;
};

struct ExperimentInfo {
    std::string name;
    std::string params_schema;  // "gamma: list<double> in (0,1/2), eps: double"
    std::string claim;          // what the experiment checks, one line
};

std::vector<ExperimentInfo> list_experiments();

/// Executes a registered experiment. Unknown names and invalid parameters
/// throw std::invalid_argument; numerical divergences land in the report.
ExperimentReport run_experiment(const ExperimentSpec& spec);

/// Deterministic cell formatting used by the CSV writer ("%.12g").
std::string format_cell(double v);

}  // namespace gagliardo
