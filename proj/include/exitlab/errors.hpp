#pragma once

#include <stdexcept>
#include <string>

namespace exitlab {

/// Newton or linear solve did not converge; carries the final residual.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double residual, int iterations)
        : std::runtime_error(what), residual_(residual), iterations_(iterations) {}
    double residual() const { return residual_; }
    int iterations() const { return iterations_; }

private:
    double residual_;
    int iterations_;
};

/// Configuration rejected; carries the offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Rejection budget exhausted with zero acceptances; carries the observed
/// acceptance-rate estimate.
class BudgetError : public std::runtime_error {
public:
    BudgetError(const std::string& what, double rate_estimate, long attempts)
        : std::runtime_error(what), rate_estimate_(rate_estimate), attempts_(attempts) {}
    double rate_estimate() const { return rate_estimate_; }
    long attempts() const { return attempts_; }

private:
    double rate_estimate_;
    long attempts_;
};

/// Hard resource cap exceeded (population cap, label-set cap).
class ResourceError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A structural invariant of a simulation was violated (e.g. a conditioned
/// path exited at the wrong boundary point).
class SimulationIntegrityError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace exitlab
