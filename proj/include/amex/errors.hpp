#pragma once

#include <stdexcept>
#include <string>

namespace amex {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's stated precondition.
class PreconditionViolation : public Error {
public:
    using Error::Error;
};

// Internal bookkeeping reached a state the algorithm promises is unreachable.
class InvariantViolation : public Error {
public:
    using Error::Error;
};

// A non-terminal state produced a negative reward.
class RewardSignViolation : public Error {
public:
    using Error::Error;
};

class EnvError : public Error {
public:
    using Error::Error;
};

// Exhaustive enumeration exceeded its state budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

// A production rule was applied to a state whose leftmost nonterminal
// does not match the rule head.
class RuleMismatch : public Error {
public:
    using Error::Error;
};

class MalformedExpression : public Error {
public:
    using Error::Error;
};

class UsageError : public Error {
public:
    using Error::Error;
};

}  // namespace amex
