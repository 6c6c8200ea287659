#pragma once

#include <stdexcept>
#include <string>

namespace gammadelta {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar with negative p-adic valuation was pushed into a p-local or
/// prime-field setting.
class NonPLocal : public Error {
public:
    using Error::Error;
};

/// A product or divided power would exceed the weight bound of its context.
class TruncationOverflow : public Error {
public:
    TruncationOverflow(const std::string& what, long needed, long bound)
        : Error(what + " (needs weight " + std::to_string(needed) + ", weight bound is " +
                std::to_string(bound) + "; raise --weight-bound)"),
          needed_(needed), bound_(bound) {}

    long needed() const noexcept { return needed_; }
    long bound() const noexcept { return bound_; }

private:
    long needed_;
    long bound_;
};

/// A delta computation would need a tower variable deeper than the context allows.
class DepthExceeded : public Error {
public:
    DepthExceeded(const std::string& what, long needed, long bound)
        : Error(what + " (needs depth " + std::to_string(needed) + ", depth bound is " +
                std::to_string(bound) + "; raise --depth-bound)"),
          needed_(needed), bound_(bound) {}

    long needed() const noexcept { return needed_; }
    long bound() const noexcept { return bound_; }

private:
    long needed_;
    long bound_;
};

/// gamma_n was applied to an element outside the divided-power ideal.
class NotInIdeal : public Error {
public:
    using Error::Error;
};

/// An operation that is undefined on zero received zero.
class ZeroElement : public Error {
public:
    using Error::Error;
};

/// Operands come from incompatible contexts, or a context is malformed.
class ContextMismatch : public Error {
public:
    using Error::Error;
};

}  // namespace gammadelta
