#pragma once

#include "bscycles/groebner.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace bscycles {

enum ExitCode : int { kExitOk = 0, kExitInput = 1, kExitBudget = 2 };

/// "max_pairs=N,max_coefficient_bits=M" (either key optional) or a bare N
/// for max_pairs. Throws std::invalid_argument.
GroebnerBudget parse_budget(const std::string& text);

/// Reads BSCYCLES_BUDGET, defaults when unset or empty.
GroebnerBudget budget_from_env();

nlohmann::json bfunction_report(const std::string& f, bool check_groebner,
                                const GroebnerBudget& budget);
nlohmann::json nearby_report(const std::string& f, const std::string& alpha, int k,
                             const GroebnerBudget& budget);
nlohmann::json vanishing_report(const std::string& f, int k, const GroebnerBudget& budget);
nlohmann::json jordan_report(const std::string& alpha, int m, const std::string& f,
                             const GroebnerBudget& budget);

/// Re-verifies every certificate and expectation in a JSONL corpus.
/// Throws std::invalid_argument on malformed lines.
nlohmann::json corpus_report(const std::string& path, const GroebnerBudget& budget);
std::string corpus_table(const nlohmann::json& report);

/// Stable serialization used for every report: sorted keys, two-space indent.
std::string dump_report(const nlohmann::json& j);

/// Full command line front end; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bscycles
