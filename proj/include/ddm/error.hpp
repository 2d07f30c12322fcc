#pragma once

#include <stdexcept>
#include <string>

namespace ddm {

/// Raised when a numerical routine (quadrature, eigensolver) cannot meet its
/// accuracy contract. Carries whatever partial result was reached.
class NumericFailure : public std::runtime_error {
public:
    NumericFailure(const std::string& what, double partial_value = 0.0, double achieved_error = 0.0)
        : std::runtime_error(what), partial_value_(partial_value), achieved_error_(achieved_error) {}

    double partial_value() const noexcept { return partial_value_; }
    double achieved_error() const noexcept { return achieved_error_; }

private:
    double partial_value_;
    double achieved_error_;
};

} // namespace ddm
