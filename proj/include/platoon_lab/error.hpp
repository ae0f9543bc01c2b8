#pragma once

#include <stdexcept>
#include <string>

namespace platoon_lab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A platoon configuration violated one of its invariants. `field()` names
/// the offending key using the config-file spelling (e.g. "controller.den").
class ConfigError : public Error {
public:
    ConfigError(std::string field, const std::string& message)
        : Error(message), field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

}  // namespace platoon_lab
