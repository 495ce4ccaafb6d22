#pragma once

#include <stdexcept>
#include <string>

namespace fclsh {

// Thrown on bad parameters or bad parameter combinations. CLI exit code 2.
class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown on malformed or inconsistent input files. CLI exit code 3.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a requested computation exceeds a configured budget. CLI exit code 4.
class ResourceError : public std::runtime_error {
public:
    explicit ResourceError(const std::string& msg) : std::runtime_error(msg) {}
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitData = 3;
inline constexpr int kExitResource = 4;

} // namespace fclsh
