#pragma once

#include <stdexcept>
#include <string>

namespace sbidea {

// Base for all library errors. Split into two families so the CLI can map
// them to exit codes without a catalog: bad input -> 1, solver trouble -> 2.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const noexcept { return 1; }
};

class ValidationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 1; }
};

class SolverError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

// interval_core
struct PrecedenceViolation : ValidationError { using ValidationError::ValidationError; };

// dataset
struct SchemaMismatch : ValidationError { using ValidationError::ValidationError; };
struct MalformedCell : ValidationError { using ValidationError::ValidationError; };
struct NegativeValue : ValidationError { using ValidationError::ValidationError; };
struct ZeroDenominator : ValidationError { using ValidationError::ValidationError; };
struct NoOutputsRemaining : ValidationError { using ValidationError::ValidationError; };
struct NonDegenerateData : ValidationError { using ValidationError::ValidationError; };

// milp
struct NumericalBreakdown : SolverError { using SolverError::SolverError; };
struct TooManyBinaries : ValidationError { using ValidationError::ValidationError; };

// models
struct BigMResolutionError : ValidationError { using ValidationError::ValidationError; };
struct SolverFailure : SolverError { using SolverError::SolverError; };
struct TargetMismatch : SolverError { using SolverError::SolverError; };
struct NotEfficient : ValidationError { using ValidationError::ValidationError; };
struct SuperInfeasible : SolverError { using SolverError::SolverError; };

} // namespace sbidea
