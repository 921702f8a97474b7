#pragma once

#include <stdexcept>
#include <string>

namespace segrezeta {

struct StructuralError : std::runtime_error {
    explicit StructuralError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

struct InhomogeneousError : std::runtime_error {
    explicit InhomogeneousError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroPolynomialError : std::runtime_error {
    explicit ZeroPolynomialError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionError : std::runtime_error {
    explicit DimensionError(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonUnitDenominatorError : std::runtime_error {
    explicit NonUnitDenominatorError(const std::string& msg) : std::runtime_error(msg) {}
};

struct ZeroMapError : std::runtime_error {
    explicit ZeroMapError(const std::string& msg) : std::runtime_error(msg) {}
};

struct FullAmbientError : std::runtime_error {
    explicit FullAmbientError(const std::string& msg) : std::runtime_error(msg) {}
};

struct RankConstraintError : std::runtime_error {
    explicit RankConstraintError(const std::string& msg) : std::runtime_error(msg) {}
};

struct GenericityExhaustedError : std::runtime_error {
    explicit GenericityExhaustedError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace segrezeta
