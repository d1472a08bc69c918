#pragma once

#include <stdexcept>

namespace iacm {

// Caller broke a documented precondition (bad axis set, shape mismatch,
// out-of-range category).
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

class InsufficientData : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class UnsupportedModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The marginal constraints admit no joint distribution. Only reachable when
// the empirical inputs are inconsistent with each other.
class InfeasibleConstraints : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The model support can receive no probability mass under the constraints.
class DegenerateModel : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace iacm
