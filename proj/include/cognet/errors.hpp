#ifndef COGNET_ERRORS_HPP
#define COGNET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cognet {

/// A scenario, protocol, or file violates one of the model invariants.
class ValidationError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// An argument lies outside the domain of an operation (e.g. a radius
/// outside the support of the distance distribution).
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Adaptive quadrature could not reach the requested tolerance.
class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string& what, double achieved, double requested)
        : std::runtime_error(what), achieved_(achieved), requested_(requested)
    {}

    [[nodiscard]] double achieved_error() const noexcept { return achieved_; }
    [[nodiscard]] double requested_error() const noexcept { return requested_; }

private:
    double achieved_;
    double requested_;
};

/// A protocol parameter cannot be solved for the requested outage target.
class InversionError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

} // namespace cognet

#endif // COGNET_ERRORS_HPP
