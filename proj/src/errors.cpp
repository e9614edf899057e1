#include "selfsim/errors.hpp"

namespace selfsim {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::depth_exceeded:
      return "depth-exceeded";
    case ErrorKind::shape_mismatch:
      return "shape-mismatch";
    case ErrorKind::not_an_automorphism:
      return "not-an-automorphism";
    case ErrorKind::invalid_argument:
      return "invalid-argument";
    case ErrorKind::invalid_spec:
      return "invalid-spec";
    case ErrorKind::invalid_vector:
      return "invalid-vector";
    case ErrorKind::enumeration_too_large:
      return "enumeration-too-large";
    case ErrorKind::state_space_too_large:
      return "state-space-too-large";
    case ErrorKind::precondition:
      return "precondition";
    case ErrorKind::hypothesis_violation:
      return "hypothesis-violation";
    case ErrorKind::extension_failure:
      return "extension-failure";
  }
  return "unknown";
}

void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, std::string(to_string(kind)) + ": " + what);
}

}  // namespace selfsim
