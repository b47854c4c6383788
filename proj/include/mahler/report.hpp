#pragma once

// Check records and the versioned verify report.

#include "json.hpp"

#include <string>
#include <vector>

namespace mahler {

struct Check {
    std::string name;
    std::string lhs;
    std::string rhs;
    std::string relation; // "<=", "==", "<", "in"
    bool pass = false;
    std::vector<std::string> witnesses;
};

struct VerifyReport {
    std::string suite;
    std::vector<Check> checks;
    std::vector<std::string> skipped; // grid entries not run, with reason

    int passed() const
    {
        int n = 0;
        for (const auto& c : checks) n += c.pass;
        return n;
    }
    bool pass() const { return passed() == static_cast<int>(checks.size()); }
};

inline nlohmann::ordered_json to_json(const Check& c)
{
    return {{"name", c.name}, {"lhs", c.lhs},   {"rhs", c.rhs},
            {"relation", c.relation}, {"pass", c.pass}, {"witnesses", c.witnesses}};
}

inline nlohmann::ordered_json to_json(const VerifyReport& r)
{
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) checks.push_back(to_json(c));
    const int n = static_cast<int>(r.checks.size());
    return {{"schema", "v1"},
            {"suite", r.suite},
            {"checks", checks},
            {"skipped", r.skipped},
            {"summary", {{"total", n}, {"passed", r.passed()}, {"failed", n - r.passed()}, {"pass", r.pass()}}}};
}

} // namespace mahler
