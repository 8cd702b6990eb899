#pragma once

#include <stdexcept>
#include <string>

namespace liddi {

// Every library failure derives from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "Error"; }
};

#define LIDDI_ERROR(Name)                                                  \
  class Name : public Error {                                              \
   public:                                                                 \
    using Error::Error;                                                    \
    const char* kind() const noexcept override { return #Name; }           \
  }

LIDDI_ERROR(InvalidArgument);
LIDDI_ERROR(DegenerateFrame);
LIDDI_ERROR(OutOfRange);
LIDDI_ERROR(QuadratureFailure);
LIDDI_ERROR(ResonantMode);
LIDDI_ERROR(NonConvergent);
LIDDI_ERROR(ComplexDelta);
LIDDI_ERROR(NonPhysicalDissipator);
LIDDI_ERROR(StepTooLarge);
LIDDI_ERROR(InvariantViolation);
LIDDI_ERROR(DegenerateKernel);
LIDDI_ERROR(ZeroDenominator);
LIDDI_ERROR(UnnormalizedPolarization);

#undef LIDDI_ERROR

}  // namespace liddi
