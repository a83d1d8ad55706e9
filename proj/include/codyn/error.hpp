#pragma once

#include <stdexcept>
#include <string>

namespace codyn {

/// Caller broke an operation's precondition (wrong objective family, size mismatch, ...).
class ContractError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid configuration, detected before any computation starts.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fitness could not be assigned, e.g. an empty evaluator sample or an
/// opponent population that has not been evaluated yet.
class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace codyn
