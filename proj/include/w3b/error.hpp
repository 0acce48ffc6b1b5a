#pragma once
#include <stdexcept>
#include <string>

namespace w3b {

// Error taxonomy. Each failure mode raised by the library carries one of these
// codes so tests can assert the precise cause.
enum class Err {
  NotDivisibleByThree,
  ShapeContentMismatch,
  NotTableau,
  RepeatedIndex,
  DegreeMismatch,
  ZeroBeta,
  NotRowStrict,
  IndexOutOfRange,
  ColumnCountMismatch,
  BoundaryMismatch,
  NonPlanar,
  HarvestIncomplete,
  ContentMismatch,
  SingularM,
  AnchorsOutOfRange,
  ParityInfeasible,
  TooLarge,
  ZeroPartition,
  CollidingPoints,
  NonSquareIndexSet,
  DegenerateMobius,
  BadInput,
};

class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool ok, Err code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace w3b
