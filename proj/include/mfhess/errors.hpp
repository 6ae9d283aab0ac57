#pragma once

#include <stdexcept>
#include <string>

namespace mfhess {

/// Base of every error raised by the library. `kind()` is a stable identifier
/// that the verifier writes into reports.
class Error : public std::runtime_error
{
public:
  Error(std::string kind, const std::string &what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind))
  {
  }
  const std::string &kind() const noexcept { return kind_; }

private:
  std::string kind_;
};

#define MFHESS_DEFINE_ERROR(Name)                                                        \
  class Name : public Error                                                              \
  {                                                                                      \
  public:                                                                                \
    explicit Name(const std::string &what) : Error(#Name, what) {}                       \
  };

MFHESS_DEFINE_ERROR(InvalidCartan)
MFHESS_DEFINE_ERROR(NonFiniteType)
MFHESS_DEFINE_ERROR(UnsupportedType)
MFHESS_DEFINE_ERROR(ConstructionFailure)
MFHESS_DEFINE_ERROR(DimensionMismatch)
MFHESS_DEFINE_ERROR(SingularSystem)
MFHESS_DEFINE_ERROR(DecompositionFailure)
MFHESS_DEFINE_ERROR(WrongDimension)
MFHESS_DEFINE_ERROR(DependentFamily)
MFHESS_DEFINE_ERROR(NotInvertible)
MFHESS_DEFINE_ERROR(NotTriangular)
MFHESS_DEFINE_ERROR(NotStronglyRegular)
MFHESS_DEFINE_ERROR(RegionExhausted)

#undef MFHESS_DEFINE_ERROR

} // namespace mfhess
