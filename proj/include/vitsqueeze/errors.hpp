// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace vitsq {

// Validation failures (bad shapes, bad parameters, bad configs) derive from
// std::invalid_argument; numeric/runtime failures derive from std::runtime_error.
// The CLI maps the former to exit code 2 and the latter to exit code 1.

struct ShapeError : std::invalid_argument {
    explicit ShapeError(const std::string& what) : std::invalid_argument(what) {}
};

struct ParamError : std::invalid_argument {
    explicit ParamError(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigError : std::invalid_argument {
    explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

struct DegenerateInputError : std::invalid_argument {
    explicit DegenerateInputError(const std::string& what) : std::invalid_argument(what) {}
};

struct NumericError : std::runtime_error {
    explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

struct SingularMatrixError : NumericError {
    SingularMatrixError(const std::string& what, double condition_estimate)
        : NumericError(what), condition_estimate(condition_estimate) {}
    double condition_estimate;
};

struct TrainingDivergenceError : NumericError {
    TrainingDivergenceError(const std::string& what, long step)
        : NumericError(what), step(step) {}
    long step;
};

struct InfeasibleError : std::runtime_error {
    InfeasibleError(const std::string& what, double min_ratio)
        : std::runtime_error(what), min_achievable_ratio(min_ratio) {}
    double min_achievable_ratio;
};

struct IoError : std::runtime_error {
    IoError(const std::string& what, const std::string& path)
        : std::runtime_error(what + " [" + path + "]"), path(path) {}
    std::string path;
};

}  // namespace vitsq
