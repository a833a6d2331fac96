#pragma once

#include <stdexcept>
#include <string>

namespace mgs {

/// Base class of all library errors. The `kind` groups errors for CLI exit
/// codes: inputs that fail to parse, inputs that fail validation, and
/// numerical failures during a computation.
class Error : public std::runtime_error {
 public:
  enum class Kind { Parse, Validation, Compute };

  Error(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

#define MGS_DEFINE_ERROR(NAME, KIND)                                     \
  class NAME : public Error {                                            \
   public:                                                               \
    explicit NAME(const std::string& what)                               \
        : Error(Error::Kind::KIND, std::string(#NAME) + ": " + what) {}  \
  }

MGS_DEFINE_ERROR(DisconnectedGraph, Validation);
MGS_DEFINE_ERROR(NonpositiveLength, Validation);
MGS_DEFINE_ERROR(DanglingEndpoint, Validation);
MGS_DEFINE_ERROR(PointOffModel, Validation);
MGS_DEFINE_ERROR(EmptyBoundary, Validation);
MGS_DEFINE_ERROR(NoParallelEdges, Validation);
MGS_DEFINE_ERROR(CoincidentPoints, Validation);
MGS_DEFINE_ERROR(MeasureMeetsDirichlet, Validation);
MGS_DEFINE_ERROR(NegativeDensity, Validation);
MGS_DEFINE_ERROR(DirichletCoversGraph, Validation);
MGS_DEFINE_ERROR(IndexOutOfRange, Validation);

MGS_DEFINE_ERROR(NotPositiveDefinite, Compute);
MGS_DEFINE_ERROR(ConvergenceFailure, Compute);
MGS_DEFINE_ERROR(SingularInteriorBlock, Compute);
MGS_DEFINE_ERROR(IdenticallyZeroSegment, Compute);

MGS_DEFINE_ERROR(ParseError, Parse);

#undef MGS_DEFINE_ERROR

}  // namespace mgs
