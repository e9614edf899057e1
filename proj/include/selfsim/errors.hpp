#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace selfsim {

enum class ErrorKind {
  depth_exceeded,
  shape_mismatch,
  not_an_automorphism,
  invalid_argument,
  invalid_spec,
  invalid_vector,
  enumeration_too_large,
  state_space_too_large,
  precondition,
  hypothesis_violation,
  extension_failure,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries a kind so that front ends can
/// map it onto exit codes without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

  /// Resource limits (enumeration cap, DP state cap) as opposed to math or
  /// input problems.
  bool is_resource_limit() const noexcept {
    return kind_ == ErrorKind::enumeration_too_large ||
           kind_ == ErrorKind::state_space_too_large;
  }

 private:
  ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

}  // namespace selfsim
