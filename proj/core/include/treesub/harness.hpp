#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace treesub {

// Line-oriented `key = value` configuration; `#` starts a comment.
class ExperimentConfig {
public:
    static ExperimentConfig parse(std::istream& is);
    static ExperimentConfig load(const std::string& path);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    void set(const std::string& key, const std::string& value) { values_[key] = value; }

    std::string get_string(const std::string& key, const std::string& def) const;
    double get_double(const std::string& key, double def) const;  // must be positive
    std::uint64_t get_uint(const std::string& key, std::uint64_t def) const;
    std::vector<double> get_list(const std::string& key, const std::vector<double>& def) const;

    std::uint64_t seed() const { return get_uint("seed", 1); }
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

struct TestReport {
    std::string statistic;
    double estimate = 0.0;
    double target = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t sample_size = 0;
    double runtime = 0.0;  // seconds
    std::string note;
};

// |estimate - target| <= tolerance
TestReport make_report(std::string statistic, double estimate, double target, double tolerance,
                       std::uint64_t n);
// estimate >= threshold (p-values, lower bounds)
TestReport make_lower_bound(std::string statistic, double estimate, double threshold,
                            std::uint64_t n);
// estimate in [lo, hi]
TestReport make_range(std::string statistic, double estimate, double lo, double hi,
                      std::uint64_t n);
TestReport make_flag(std::string statistic, bool ok, std::uint64_t n, std::string note = {});

struct CriterionResult {
    int number = 0;
    std::string name;
    std::vector<TestReport> reports;
    double runtime = 0.0;
    std::string error;  // set when the run threw

    bool pass() const;
};

void print_report(std::ostream& os, const TestReport& r);
void print_criterion(std::ostream& os, const CriterionResult& c, bool details = true);

}  // namespace treesub
