#pragma once

#include <stdexcept>
#include <string>

namespace knr {

struct PoleError : std::domain_error {
    using std::domain_error::domain_error;
};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct SingularDenominator : std::domain_error {
    using std::domain_error::domain_error;
};

struct VacuumState : std::domain_error {
    using std::domain_error::domain_error;
};

struct DegenerateWindow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct TruncationNotConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SingularSystem : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownPreset : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace knr
