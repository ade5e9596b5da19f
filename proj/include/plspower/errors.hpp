#pragma once

#include <stdexcept>
#include <string>

namespace plspower {

// Raised when an input lies outside the mathematical domain of an operation
// (alpha outside (0, 0.5), effect size outside (0, 1), N < 1, ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

}  // namespace plspower
