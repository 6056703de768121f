#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qhb {

enum class ErrorKind {
  Domain,
  NotRationalHomologySphere,
  DegenerateInput,
  ShapeMismatch,
  NotComplementary,
  ResourceExceeded,
  DataAssetMissing,
  OutOfScope,
  NotInR,
  Syntax,
};

/// Stable machine-readable name, e.g. "DomainError".
std::string_view error_kind_name(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define QHB_DEFINE_ERROR(Name, Kind)                                        \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& message) : Error(ErrorKind::Kind, message) {} \
  };

QHB_DEFINE_ERROR(DomainError, Domain)
QHB_DEFINE_ERROR(NotRationalHomologySphere, NotRationalHomologySphere)
QHB_DEFINE_ERROR(DegenerateInput, DegenerateInput)
QHB_DEFINE_ERROR(ShapeMismatch, ShapeMismatch)
QHB_DEFINE_ERROR(NotComplementary, NotComplementary)
QHB_DEFINE_ERROR(ResourceExceeded, ResourceExceeded)
QHB_DEFINE_ERROR(DataAssetMissing, DataAssetMissing)
QHB_DEFINE_ERROR(OutOfScope, OutOfScope)
QHB_DEFINE_ERROR(NotInR, NotInR)

#undef QHB_DEFINE_ERROR

/// Parse failure; `offset` is the byte offset into the input text.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t offset)
      : Error(ErrorKind::Syntax, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace qhb
