#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace kmod {

/// Index of an element inside one finite carrier.
using Elem = std::uint32_t;

/// Which scalar actions a module carries.
enum class Side { left, right, bi };

std::string to_string(Side side);

/// Enumeration and materialization bounds shared by every construction.
struct Limits {
    std::size_t max_carrier = 65536;
    std::size_t hom_bound = std::size_t{1} << 20;
};

/// Algebras at or below this size are stored as full operation tables.
inline constexpr std::size_t kTableLimit = 1024;

/// Hard cap on a materialized module carrier (its add table is quadratic).
inline constexpr std::size_t kModuleTableLimit = 4096;

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Tables with wrong dimensions or out-of-range indices.
class ValidationError : public Error {
  public:
    using Error::Error;
};

class SizeGuardError : public Error {
  public:
    using Error::Error;
};

class SubalgebraError : public Error {
  public:
    using Error::Error;
};

/// Two values from different algebra instances were compared.
class AlgebraMismatchError : public Error {
  public:
    using Error::Error;
};

class PreconditionError : public Error {
  public:
    using Error::Error;
};

class CornerStarError : public Error {
  public:
    using Error::Error;
};

class ParseError : public Error {
  public:
    ParseError(const std::string& message, int line, std::string section = {})
        : Error(format(message, line, section)), line_(line), section_(std::move(section)) {}

    [[nodiscard]] int line() const { return line_; }
    [[nodiscard]] const std::string& section() const { return section_; }

  private:
    static std::string format(const std::string& message, int line, const std::string& section) {
        std::string out = "line " + std::to_string(line);
        if (!section.empty()) {
            out += " (section '" + section + "')";
        }
        return out + ": " + message;
    }

    int line_;
    std::string section_;
};

} // namespace kmod
