#pragma once

#include <stdexcept>
#include <string>

// Error types thrown by the library. Each names the contract it guards;
// callers that want a broad net can catch std::invalid_argument /
// std::out_of_range / std::runtime_error.

namespace smb {

struct NotPowerOfTwo : std::invalid_argument {
    explicit NotPowerOfTwo(const std::string& what) : std::invalid_argument(what) {}
};

struct ArmOutOfRange : std::out_of_range {
    explicit ArmOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct LevelOutOfRange : std::out_of_range {
    explicit LevelOutOfRange(const std::string& what) : std::out_of_range(what) {}
};

struct InvalidEta : std::invalid_argument {
    explicit InvalidEta(const std::string& what) : std::invalid_argument(what) {}
};

struct LossOutOfRange : std::invalid_argument {
    explicit LossOutOfRange(const std::string& what) : std::invalid_argument(what) {}
};

// p restricted to the sampling subtree has no mass: state corruption.
struct DegenerateMass : std::logic_error {
    explicit DegenerateMass(const std::string& what) : std::logic_error(what) {}
};

struct NumericalUnderflow : std::runtime_error {
    explicit NumericalUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct InvalidLipschitz : std::invalid_argument {
    explicit InvalidLipschitz(const std::string& what) : std::invalid_argument(what) {}
};

struct WindowLengthMismatch : std::invalid_argument {
    explicit WindowLengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct IndivisibleHorizon : std::invalid_argument {
    explicit IndivisibleHorizon(const std::string& what) : std::invalid_argument(what) {}
};

struct UnknownSpec : std::invalid_argument {
    explicit UnknownSpec(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace smb
