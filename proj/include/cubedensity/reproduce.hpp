#pragma once

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace cubedensity {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string expected;
    std::string actual;
    long long millis = 0;
};

enum class Suite {
    paper,  // every check at full size
    quick,  // drops the n = 4 exhaustive scan and caps the graph sweep at 6 vertices
};

std::vector<CriterionResult> run_acceptance(Suite suite, int threads = 0);

nlohmann::json acceptance_json(const std::vector<CriterionResult>& results);
std::string acceptance_table(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace cubedensity
