#pragma once

#include <stdexcept>
#include <string>

namespace tropifs {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define TROPIFS_DEFINE_ERROR(Name)      \
  class Name : public Error {           \
   public:                              \
    using Error::Error;                 \
  }

TROPIFS_DEFINE_ERROR(DimensionError);
TROPIFS_DEFINE_ERROR(PositiveCycleError);
TROPIFS_DEFINE_ERROR(ConfigError);
TROPIFS_DEFINE_ERROR(EmptySetError);
TROPIFS_DEFINE_ERROR(EmptySupportError);
TROPIFS_DEFINE_ERROR(IndexError);
TROPIFS_DEFINE_ERROR(NotContractiveError);
TROPIFS_DEFINE_ERROR(NormalizationError);
TROPIFS_DEFINE_ERROR(EmptyAubryError);
TROPIFS_DEFINE_ERROR(NotConstantWeightError);
TROPIFS_DEFINE_ERROR(InternalError);
TROPIFS_DEFINE_ERROR(NonConvergenceError);
TROPIFS_DEFINE_ERROR(DemonstrationError);
TROPIFS_DEFINE_ERROR(GenerationError);

#undef TROPIFS_DEFINE_ERROR

}  // namespace tropifs
