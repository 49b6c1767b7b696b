#ifndef TSG_COMMON_HPP
#define TSG_COMMON_HPP

#include <stdexcept>
#include <string>

namespace tsg {

// Absolute tolerance shared by every numeric comparison in the library.
inline constexpr double kEps = 1e-9;

// Thrown when an exact solver is asked to enumerate a search space larger
// than its configured cap. Callers are expected to fall back to heuristics.
class CapExceededError : public std::runtime_error {
public:
    explicit CapExceededError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown on malformed input files (missing keys, wrong types, bad JSON).
class FormatError : public std::runtime_error {
public:
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when a generator configuration is unusable.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace tsg

#endif
