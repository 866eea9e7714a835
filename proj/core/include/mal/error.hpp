#pragma once

#include <stdexcept>
#include <string>

namespace mal {

// Failure categories surfaced by the library. The CLI maps these onto
// process exit codes, so additions here need a corresponding mapping there.
enum class Errc {
  incompatible_algebra,  // operands live in different carrier algebras
  no_measure,            // element kind carries no canonical measure
  not_in_algebra,        // element is not generated at the probed depth
  unknown_index,         // generator index outside the family
  bad_element,           // violated a structural precondition
  budget_exceeded,       // enumeration would exceed the configured cap
  parse_error,           // malformed textual or JSON input
  infeasible,            // construction cannot be carried out at this stage
  io_error,              // file could not be read or written
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace mal
