#include "cdd/error.hpp"

namespace cdd {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::ArityMismatch: return "ArityMismatch";
    case Errc::FreeVariable: return "FreeVariable";
    case Errc::DomainEmpty: return "DomainEmpty";
    case Errc::EvaluationOverflow: return "EvaluationOverflow";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::InvalidStructure: return "InvalidStructure";
    case Errc::HigherOrderGraph: return "HigherOrderGraph";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::Unsupported: return "Unsupported";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::SchemaError: return "SchemaError";
    case Errc::InfeasibleSeed: return "InfeasibleSeed";
    case Errc::UnknownSurfaceReference: return "UnknownSurfaceReference";
    case Errc::UnsupportedRelation: return "UnsupportedRelation";
    case Errc::BoxOutsideAmbient: return "BoxOutsideAmbient";
    case Errc::SeedNotContained: return "SeedNotContained";
    case Errc::InfeasibleInput: return "InfeasibleInput";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace cdd
