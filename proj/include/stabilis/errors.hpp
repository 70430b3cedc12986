#pragma once

#include <stdexcept>
#include <string>

namespace stabilis {

/// Broad failure classes. Every concrete error belongs to exactly one, and
/// the CLI maps each class to a single process exit code.
enum class ErrorClass {
  convergence,  // NoConvergence, ArgumentCapExceeded
  hypothesis,   // CriticalExponentError, DivergentSeries, RegimeError, ParityError
  input,        // value/domain/schema/io problems
};

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what) : std::runtime_error(what), class_(cls) {}
  ErrorClass error_class() const noexcept { return class_; }
  virtual const char* name() const noexcept = 0;

 private:
  ErrorClass class_;
};

#define STABILIS_DEFINE_ERROR(Name, Class)                                  \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(ErrorClass::Class, what) {} \
    const char* name() const noexcept override { return #Name; }           \
  };

STABILIS_DEFINE_ERROR(InvalidValue, input)
STABILIS_DEFINE_ERROR(InvalidEnvelope, input)
STABILIS_DEFINE_ERROR(DimensionError, input)
STABILIS_DEFINE_ERROR(DomainError, input)
STABILIS_DEFINE_ERROR(ArityError, input)
STABILIS_DEFINE_ERROR(ConfigError, input)
STABILIS_DEFINE_ERROR(SingularFit, input)
STABILIS_DEFINE_ERROR(SchemaError, input)
STABILIS_DEFINE_ERROR(IoError, input)
STABILIS_DEFINE_ERROR(ParityError, hypothesis)
STABILIS_DEFINE_ERROR(CriticalExponentError, hypothesis)
STABILIS_DEFINE_ERROR(DivergentSeries, hypothesis)
STABILIS_DEFINE_ERROR(RegimeError, hypothesis)
STABILIS_DEFINE_ERROR(ArgumentCapExceeded, convergence)

#undef STABILIS_DEFINE_ERROR

class NoConvergence : public Error {
 public:
  NoConvergence(const std::string& what, double last_delta)
      : Error(ErrorClass::convergence, what), last_delta_(last_delta) {}
  const char* name() const noexcept override { return "NoConvergence"; }
  double last_delta() const noexcept { return last_delta_; }

 private:
  double last_delta_;
};

}  // namespace stabilis
