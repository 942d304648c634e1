#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "starcong/canonical.hpp"

namespace starcong {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs a CLI command line (without the program name); returns exit code and stdout.
using CommandRunner = std::function<std::pair<int, std::string>(const std::vector<std::string>&)>;

struct SelftestOptions {
    /// When set, the DOT rendering of the seven-class example is also compared
    /// byte-for-byte against this file.
    std::optional<std::string> golden_dot_path;
    /// Used by the report determinism criterion; skipped (failed) when empty.
    CommandRunner runner;
};

/// The seven-class example set used for the golden DOT rendering.
std::vector<CanonicalForm> closure_example_forms();

/// Expected DOT text for closure_example_forms().
const std::string& closure_example_dot();

/// Runs criteria 1..10 in order.
std::vector<CriterionResult> run_acceptance(const SelftestOptions& options);

/// "PASS  3  classification round-trip  (0.41 s)  <detail>"
std::string format_criterion(const CriterionResult& r);

}  // namespace starcong
