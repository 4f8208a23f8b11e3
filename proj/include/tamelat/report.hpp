#pragma once

#include <map>
#include <string>
#include <vector>

namespace tamelat {

struct CheckReport {
    std::string id;      // stable anchor string
    std::string params;
    enum Status { Pass, Fail, Inapplicable } status = Fail;
    std::string expected;
    std::string computed;
    double wall_ms = 0;
};

struct SuiteParams {
    int p = 5;
    int f = 1;
    int a = INT_UNSET, b = INT_UNSET, r = INT_UNSET, s = INT_UNSET;
    long long chi_exp = INT_UNSET;
    std::string case_tag;
    int precision = 6;  // Witt precision N
    int level = 4;      // quaternion quotient level n
    int jobs = 1;
    static constexpr int INT_UNSET = -999;
};

struct SuiteResult {
    std::string suite;
    SuiteParams params;
    std::vector<CheckReport> checks;
    bool all_pass() const;
    int exit_code() const { return all_pass() ? 0 : 1; }
};

/// Known suite names.
std::vector<std::string> suite_names();

/// Run a named suite; throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, const SuiteParams& sp);

/// Canonical (sorted, deterministic) JSON document.
std::string to_json(const SuiteResult& r, bool with_timings = true);
/// One line per check.
std::string to_text(const SuiteResult& r);

/// The expected-value table for the section-3 battery (data file).
class ExpectedTable {
public:
    static const ExpectedTable& get();
    /// Raw payload for an id; empty string if absent.
    std::string lookup(const std::string& id) const;

private:
    ExpectedTable();
    std::map<std::string, std::string> rows_;
};

}  // namespace tamelat
