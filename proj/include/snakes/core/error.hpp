#pragma once
#include <stdexcept>
#include <string>

namespace snakes {

// Every failure mode surfaced by the library.  Parse errors carry a
// line/column position; structural errors carry a short context string.
enum class ErrorKind {
    ChiMismatch,
    DanglingContainment,
    NonTransverseVertex,
    NotAnOval,
    BadGap,
    BadArc,
    SyntaxError,
    AmbiguousEmbedding,
    InvalidWord,
    RegionMeetsCk,
    NotFacing,
    DigonOccupied,
    OddDegreeUnion,
    GammaMismatch,
    ConditionsFail,
    SchemaError,
    DuplicateId,
    InvalidArgument,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, std::string message)
        : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
          kind_(kind), line_(0), col_(0) {}

    Error(ErrorKind kind, std::string message, int line, int col)
        : std::runtime_error(std::string(error_kind_name(kind)) + " at " +
                             std::to_string(line) + ":" + std::to_string(col) + ": " + message),
          kind_(kind), line_(line), col_(col) {}

    ErrorKind kind() const { return kind_; }
    int line() const { return line_; }
    int col() const { return col_; }

  private:
    ErrorKind kind_;
    int line_, col_;
};

} // namespace snakes
