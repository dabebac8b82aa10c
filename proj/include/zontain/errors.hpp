#ifndef ZONTAIN_ERRORS_HPP_
#define ZONTAIN_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace zontain {

// Base class for all library errors so callers can catch one type.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

struct ZeroDirection : Error {
    explicit ZeroDirection(const std::string& msg) : Error(msg) {}
};

struct TooManyGenerators : Error {
    explicit TooManyGenerators(const std::string& msg) : Error(msg) {}
};

struct TooManySubsets : Error {
    explicit TooManySubsets(const std::string& msg) : Error(msg) {}
};

struct TooManyVertices : Error {
    explicit TooManyVertices(const std::string& msg) : Error(msg) {}
};

struct DependentSubset : Error {
    explicit DependentSubset(const std::string& msg) : Error(msg) {}
};

struct NoConvergence : Error {
    explicit NoConvergence(const std::string& msg) : Error(msg) {}
};

struct LpNumerical : Error {
    explicit LpNumerical(const std::string& msg) : Error(msg) {}
};

struct UnboundedBody : Error {
    explicit UnboundedBody(const std::string& msg) : Error(msg) {}
};

struct InvalidBody : Error {
    explicit InvalidBody(const std::string& msg) : Error(msg) {}
};

struct UnsupportedBody : Error {
    explicit UnsupportedBody(const std::string& msg) : Error(msg) {}
};

struct EpsilonOutOfRange : Error {
    explicit EpsilonOutOfRange(const std::string& msg) : Error(msg) {}
};

struct BarrierStall : Error {
    explicit BarrierStall(const std::string& msg) : Error(msg) {}
};

struct StartNotInterior : Error {
    explicit StartNotInterior(const std::string& msg) : Error(msg) {}
};

struct OracleInconsistent : Error {
    explicit OracleInconsistent(const std::string& msg) : Error(msg) {}
};

struct DegenerateLog : Error {
    explicit DegenerateLog(const std::string& msg) : Error(msg) {}
};

struct BadShape : Error {
    explicit BadShape(const std::string& msg) : Error(msg) {}
};

struct NoWitnessFound : Error {
    explicit NoWitnessFound(const std::string& msg) : Error(msg) {}
};

struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace zontain

#endif  // ZONTAIN_ERRORS_HPP_
