#ifndef WITTLAB_ERRORS_HPP
#define WITTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wittlab {

// Exit-code classes used by the CLI: 2 = precision, 3 = parse/usage, 4 = search.
enum class ErrorClass { Precision = 2, Parse = 3, Search = 4 };

class Error : public std::runtime_error {
  public:
    Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), cls_(cls) {}
    ErrorClass error_class() const noexcept { return cls_; }

  private:
    ErrorClass cls_;
};

// A comparison or predicate could not be decided at the working precision.
struct PrecisionExceeded : Error {
    explicit PrecisionExceeded(const std::string& what) : Error(ErrorClass::Precision, what) {}
};

// An exponent would need a denominator beyond the configured p-power cap.
struct DenominatorOverflow : Error {
    explicit DenominatorOverflow(const std::string& what) : Error(ErrorClass::Precision, what) {}
};

struct InsufficientPrecision : Error {
    explicit InsufficientPrecision(const std::string& what) : Error(ErrorClass::Precision, what) {}
};

// Exact integer or rational arithmetic left the representable range.
struct ArithmeticOverflow : Error {
    explicit ArithmeticOverflow(const std::string& what) : Error(ErrorClass::Precision, what) {}
};

struct NotInvertible : Error {
    explicit NotInvertible(const std::string& what) : Error(ErrorClass::Parse, what) {}
};

struct NotDivisible : Error {
    explicit NotDivisible(const std::string& what) : Error(ErrorClass::Precision, what) {}
};

struct NotPrimitive : Error {
    explicit NotPrimitive(const std::string& what) : Error(ErrorClass::Parse, what) {}
};

struct SizeLimit : Error {
    explicit SizeLimit(const std::string& what) : Error(ErrorClass::Precision, what) {}
};

struct SearchSpaceTooLarge : Error {
    explicit SearchSpaceTooLarge(const std::string& what) : Error(ErrorClass::Search, what) {}
};

struct RootSearchFailed : Error {
    explicit RootSearchFailed(const std::string& what) : Error(ErrorClass::Search, what) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(ErrorClass::Parse, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorClass::Parse, what) {}
};

} // namespace wittlab

#endif
