#pragma once

#include <stdexcept>
#include <string>

namespace skidkit {

class SkidError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Elapsed ticks ran past the 2^33 tick range of the configured epoch.
class EpochExhaustedError : public SkidError {
public:
    using SkidError::SkidError;
};

class EpochNotStartedError : public SkidError {
public:
    using SkidError::SkidError;
};

/// The clock jumped backwards past the freeze threshold. The embedding
/// process must stop generating and restart under a new instance id.
class CriticalClockDriftError : public SkidError {
public:
    using SkidError::SkidError;
};

/// Caller handed the sequence a tick older than its current scope,
/// which means drift protection was bypassed.
class TickRegressionError : public SkidError {
public:
    using SkidError::SkidError;
};

class FieldOutOfRangeError : public SkidError {
public:
    explicit FieldOutOfRangeError(const std::string& field, long long value)
        : SkidError("field out of range: " + field + " = " + std::to_string(value)),
          field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

class InvalidVariantError : public SkidError {
public:
    using SkidError::SkidError;
};

class MalformedLayoutError : public SkidError {
public:
    using SkidError::SkidError;
};

/// All 51 variant attempts of the collision guard collided. Probability
/// around 2^-(48*51); treated as a distinct fatal condition.
class CollisionGuardExhaustedError : public SkidError {
public:
    using SkidError::SkidError;
};

class BadSecretLengthError : public SkidError {
public:
    using SkidError::SkidError;
};

class DuplicateKeyIdError : public SkidError {
public:
    using SkidError::SkidError;
};

class EmptyRingError : public SkidError {
public:
    using SkidError::SkidError;
};

class CompromisedKeyError : public SkidError {
public:
    using SkidError::SkidError;
};

}  // namespace skidkit
