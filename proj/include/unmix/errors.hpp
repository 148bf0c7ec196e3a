#pragma once

#include <stdexcept>
#include <string>

namespace unmix {

// Dimension or layout mismatch between matrices, images, or graphs.
struct ShapeError : std::runtime_error {
    explicit ShapeError(const std::string& what) : std::runtime_error(what) {}
};

// Out-of-range or inconsistent configuration value.
struct ParameterError : std::invalid_argument {
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// Structurally valid input the math cannot handle (zero-norm spectrum, N=1, ...).
struct DegenerateInputError : std::runtime_error {
    explicit DegenerateInputError(const std::string& what) : std::runtime_error(what) {}
};

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

// NaN/Inf appeared where the algorithm guarantees finite values.
struct NumericalError : std::runtime_error {
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace unmix
