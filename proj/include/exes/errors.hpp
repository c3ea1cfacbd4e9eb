#pragma once

#include <stdexcept>
#include <string>

namespace exes {

/// Invalid configuration value. `key()` is the dotted config path at fault.
class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string key, const std::string& message)
        : std::invalid_argument(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    [[nodiscard]] const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// An internal invariant was found broken at runtime.
class InvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

}  // namespace exes
