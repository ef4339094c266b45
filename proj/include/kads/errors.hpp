#pragma once

#include <stdexcept>
#include <string>

namespace kads {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define KADS_DEFINE_ERROR(Name)           \
  class Name : public Error {             \
   public:                                \
    using Error::Error;                   \
  }

// scalars
KADS_DEFINE_ERROR(CyclicSubstitution);
KADS_DEFINE_ERROR(NonTerminating);
KADS_DEFINE_ERROR(UnboundParameter);
KADS_DEFINE_ERROR(ParseError);
KADS_DEFINE_ERROR(ExponentOverflow);

// liealg / bialgebra / rclass
KADS_DEFINE_ERROR(NotOrthogonal);
KADS_DEFINE_ERROR(NotAntisymmetric);
KADS_DEFINE_ERROR(NotSubalgebra);
KADS_DEFINE_ERROR(ConstraintViolated);
KADS_DEFINE_ERROR(UnsolvableSystem);

// group_geom
KADS_DEFINE_ERROR(NumericOverflow);
KADS_DEFINE_ERROR(ChartBoundary);
KADS_DEFINE_ERROR(OffPseudosphere);
KADS_DEFINE_ERROR(OutOfChart);

// ncalg
KADS_DEFINE_ERROR(NotNormalOrdered);

#undef KADS_DEFINE_ERROR

}  // namespace kads
