#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace lockup {

/// Argument outside the domain where a model is defined.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Vehicle speed dropped to the configured floor; the slip dynamics divide by v.
class SpeedFloorError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Invalid configuration value. Carries the offending key ("section.name").
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

/// Non-finite stage derivative inside the integrator.
class IntegrationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace lockup
