#include "treesub/harness.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace treesub {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return {};
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::istream& is) {
    ExperimentConfig c;
    std::string line;
    size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error("config line " + std::to_string(lineno) + ": empty key");
        }
        c.values_[key] = val;
    }
    return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("cannot open " + path);
    return parse(is);
}

std::string ExperimentConfig::get_string(const std::string& key, const std::string& def) const {
    auto it = values_.find(key);
    return it == values_.end() ? def : it->second;
}

double ExperimentConfig::get_double(const std::string& key, double def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    size_t used = 0;
    double v = std::stod(it->second, &used);
    if (used != it->second.size() || !(v > 0.0) || !std::isfinite(v)) {
        throw std::runtime_error("config: " + key + " must be a positive number");
    }
    return v;
}

std::uint64_t ExperimentConfig::get_uint(const std::string& key, std::uint64_t def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    size_t used = 0;
    auto v = std::stoull(it->second, &used);
    if (used != it->second.size()) {
        throw std::runtime_error("config: " + key + " must be an unsigned integer");
    }
    return v;
}

std::vector<double> ExperimentConfig::get_list(const std::string& key,
                                               const std::vector<double>& def) const {
    auto it = values_.find(key);
    if (it == values_.end()) return def;
    std::vector<double> out;
    std::stringstream ss(it->second);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        double v = std::stod(tok);
        if (!(v > 0.0)) throw std::runtime_error("config: " + key + " entries must be positive");
        out.push_back(v);
    }
    return out;
}

TestReport make_report(std::string statistic, double estimate, double target, double tolerance,
                       std::uint64_t n) {
    TestReport r;
    r.statistic = std::move(statistic);
    r.estimate = estimate;
    r.target = target;
    r.tolerance = tolerance;
    r.sample_size = n;
    r.pass = std::abs(estimate - target) <= tolerance;
    return r;
}

TestReport make_lower_bound(std::string statistic, double estimate, double threshold,
                            std::uint64_t n) {
    TestReport r;
    r.statistic = std::move(statistic);
    r.estimate = estimate;
    r.target = threshold;
    r.sample_size = n;
    r.pass = estimate >= threshold;
    r.note = ">= target";
    return r;
}

TestReport make_range(std::string statistic, double estimate, double lo, double hi,
                      std::uint64_t n) {
    TestReport r = make_report(std::move(statistic), estimate, 0.5 * (lo + hi), 0.5 * (hi - lo), n);
    r.pass = estimate >= lo && estimate <= hi;
    return r;
}

TestReport make_flag(std::string statistic, bool ok, std::uint64_t n, std::string note) {
    TestReport r;
    r.statistic = std::move(statistic);
    r.estimate = ok ? 1.0 : 0.0;
    r.target = 1.0;
    r.sample_size = n;
    r.pass = ok;
    r.note = std::move(note);
    return r;
}

bool CriterionResult::pass() const {
    if (!error.empty() || reports.empty()) return false;
    for (const auto& r : reports) {
        if (!r.pass) return false;
    }
    return true;
}

void print_report(std::ostream& os, const TestReport& r) {
    std::ostringstream ss;
    ss << std::setprecision(6);
    ss << "    " << (r.pass ? "ok   " : "FAIL ") << r.statistic << ": estimate=" << r.estimate
       << " target=" << r.target;
    if (r.tolerance > 0.0) ss << " tol=" << r.tolerance;
    ss << " n=" << r.sample_size;
    if (!r.note.empty()) ss << " (" << r.note << ")";
    os << ss.str() << '\n';
}

void print_criterion(std::ostream& os, const CriterionResult& c, bool details) {
    os << (c.pass() ? "PASS" : "FAIL") << "  criterion " << c.number << " [" << c.name << "]"
       << std::fixed << std::setprecision(1) << "  " << c.runtime << "s" << std::defaultfloat;
    if (!c.error.empty()) os << "  error: " << c.error;
    os << '\n';
    if (details) {
        for (const auto& r : c.reports) print_report(os, r);
    }
}

}  // namespace treesub
