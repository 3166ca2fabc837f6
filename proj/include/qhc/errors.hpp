#pragma once

#include <stdexcept>
#include <string>

namespace qhc {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define QHC_DEFINE_ERROR(Name)                                         \
  class Name : public Error {                                          \
   public:                                                             \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

// Evaluation outside the region where a Puiseux term is defined.
QHC_DEFINE_ERROR(DomainError);
// A value exists but is not a rational number (e.g. 2^(1/2)).
QHC_DEFINE_ERROR(ExactnessError);
// Fractional power of a negative rational.
QHC_DEFINE_ERROR(SignError);

QHC_DEFINE_ERROR(InvalidParams);
QHC_DEFINE_ERROR(InvalidScale);
QHC_DEFINE_ERROR(FamilyMismatch);
QHC_DEFINE_ERROR(InvalidN);

QHC_DEFINE_ERROR(NotClosed);
QHC_DEFINE_ERROR(DependentFields);

QHC_DEFINE_ERROR(DegenerateCubic);
QHC_DEFINE_ERROR(DegenerateDenominator);
QHC_DEFINE_ERROR(Inconsistent);

QHC_DEFINE_ERROR(NotTransverse);
QHC_DEFINE_ERROR(NotComplete);
QHC_DEFINE_ERROR(DegenerateCurve);

QHC_DEFINE_ERROR(ParseError);

#undef QHC_DEFINE_ERROR

}  // namespace qhc
