#ifndef COOPDECAY_ERRORS_HPP
#define COOPDECAY_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coopdecay {

struct DenominatorUnderflow : std::runtime_error {
    explicit DenominatorUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct OverflowGuard : std::runtime_error {
    explicit OverflowGuard(const std::string& what) : std::runtime_error(what) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& what) : std::runtime_error(what) {}
};

struct NoRoot : std::runtime_error {
    explicit NoRoot(const std::string& what) : std::runtime_error(what) {}
};

struct GridTooNarrow : std::runtime_error {
    explicit GridTooNarrow(const std::string& what) : std::runtime_error(what) {}
};

struct NoHalfCrossing : std::runtime_error {
    explicit NoHalfCrossing(const std::string& what) : std::runtime_error(what) {}
};

struct NoPlateau : std::runtime_error {
    explicit NoPlateau(const std::string& what) : std::runtime_error(what) {}
};

struct NegativeSpectralDensity : std::runtime_error {
    explicit NegativeSpectralDensity(const std::string& what) : std::runtime_error(what) {}
};

struct StepSizeUnderflow : std::runtime_error {
    explicit StepSizeUnderflow(const std::string& what) : std::runtime_error(what) {}
};

struct InvariantViolation : std::logic_error {
    explicit InvariantViolation(const std::string& what) : std::logic_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace coopdecay

#endif
