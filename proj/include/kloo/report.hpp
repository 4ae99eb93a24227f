#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "kloo/bigint.hpp"

namespace kloo {

/// One named comparison of an expected against an actual value.
struct Check {
    std::string name;
    std::string parameters;
    std::string expected;
    std::string actual;
    bool pass = false;
};

/// Ordered list of checks. Numbers are carried as decimal strings.
struct Report {
    std::vector<Check> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
    }
    std::size_t failures() const {
        return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [](const Check& c) { return !c.pass; }));
    }

    template <class T>
    void expect_eq(std::string name, std::string params, const T& expected, const T& actual) {
        using kloo::to_string;
        using std::to_string;
        checks.push_back({std::move(name), std::move(params), to_string(expected), to_string(actual), expected == actual});
    }

    void expect_true(std::string name, std::string params, bool ok, std::string detail = {}) {
        checks.push_back({std::move(name), std::move(params), "true", ok ? "true" : (detail.empty() ? "false" : detail), ok});
    }

    void merge(const Report& other) { checks.insert(checks.end(), other.checks.begin(), other.checks.end()); }

    void sort_by_name() {
        std::stable_sort(checks.begin(), checks.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    }
};

}  // namespace kloo
