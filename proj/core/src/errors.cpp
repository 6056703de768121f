#include "qhb/errors.hpp"

namespace qhb {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Domain: return "DomainError";
    case ErrorKind::NotRationalHomologySphere: return "NotRationalHomologySphere";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::NotComplementary: return "NotComplementary";
    case ErrorKind::ResourceExceeded: return "ResourceExceeded";
    case ErrorKind::DataAssetMissing: return "DataAssetMissing";
    case ErrorKind::OutOfScope: return "OutOfScope";
    case ErrorKind::NotInR: return "NotInR";
    case ErrorKind::Syntax: return "SyntaxError";
  }
  return "Error";
}

}  // namespace qhb
