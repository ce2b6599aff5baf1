#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dti {

// Error taxonomy shared by every module. The CLI maps these onto exit codes:
// usage/config -> 2, parse/data/metric -> 3, numeric/convergence -> 4.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ConvergenceError : std::runtime_error {
    explicit ConvergenceError(const std::string& what, std::vector<double> last = {})
        : std::runtime_error(what), last_iterate(std::move(last)) {}
    std::vector<double> last_iterate;  // best iterate reached before the cap
};

struct MetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace dti
