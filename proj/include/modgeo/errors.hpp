#pragma once

#include <stdexcept>
#include <string>

namespace modgeo {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define MODGEO_DEFINE_ERROR(Name)           \
  class Name : public Error {               \
   public:                                  \
    using Error::Error;                     \
  }

MODGEO_DEFINE_ERROR(PreconditionError);
MODGEO_DEFINE_ERROR(PoleError);
MODGEO_DEFINE_ERROR(SingularMatrix);
MODGEO_DEFINE_ERROR(NonConvergence);
MODGEO_DEFINE_ERROR(InvalidDiscriminant);
MODGEO_DEFINE_ERROR(PrecisionExhausted);
MODGEO_DEFINE_ERROR(LevelTooLarge);
MODGEO_DEFINE_ERROR(NonRealExpansion);
MODGEO_DEFINE_ERROR(CertificationFailed);
MODGEO_DEFINE_ERROR(NoSeeds);
MODGEO_DEFINE_ERROR(DimensionError);
MODGEO_DEFINE_ERROR(HorizontalVerticalError);
MODGEO_DEFINE_ERROR(FormatError);

#undef MODGEO_DEFINE_ERROR

}  // namespace modgeo
