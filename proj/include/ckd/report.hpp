#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ckd/json_io.hpp"

namespace ckd {

/// One verified identity.  pass iff residual <= threshold.
struct CheckRecord {
    std::string id;
    std::string subject; // which input the record belongs to (empty for single runs)
    std::string citation;
    double residual = 0.0;
    double threshold = 0.0;
    std::string scope;
    bool pass = false;
    json details = json::object();
};

json to_json(const CheckRecord& r);

struct SuiteConfig {
    double tol = 1e-10;
    double dilation_tol = 1e-9;
    int kernel_level = 4;
    int poisson_level = 12;
    int schaffer_level = 5;
    /// Upper bound on the Schaffer space used by the annihilation check; the
    /// level is lowered until the space fits.
    int schaffer_max_dim = 6000;
    double r = 0.9;
    int commutant_level = 5;
    int commutant_len = 4;
    /// Restricts the records to these ids; an empty list selects nothing.
    std::optional<std::vector<std::string>> checks;
};

/// Ids run_suite can emit, sorted.
const std::vector<std::string>& known_check_ids();

/// Applies bundle options (level, tol, r, checks) on top of cfg.
SuiteConfig config_for(const InputBundle& b, SuiteConfig cfg = {});

struct Report {
    std::vector<CheckRecord> checks;
    json artifacts = json::object();

    bool all_pass() const;
    json to_json() const;
};

/// Deterministic record list for one bundle, sorted by id.  Dilation records are
/// skipped (and listed under artifacts.skipped) when the input is not a
/// contractive A-relation tuple.
Report run_suite(const InputBundle& b, const SuiteConfig& cfg = {});

/// Fixed collection of inputs (the 2x2 flip example, seeded random compressions,
/// a spherical tuple, a variety point, the zero tuple) run through run_suite.
/// Records carry the input name in `subject`.
Report run_seeded_suite(std::uint64_t seed, const SuiteConfig& cfg = {});

} // namespace ckd
