#include "alae/error.hpp"

namespace alae {

std::string_view errc_name(Errc code) {
  switch (code) {
    case Errc::UnknownSymbol: return "UnknownSymbol";
    case Errc::EmptyRecord: return "EmptyRecord";
    case Errc::EmptyDatabase: return "EmptyDatabase";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::InvalidSymbol: return "InvalidSymbol";
    case Errc::EmptyRange: return "EmptyRange";
    case Errc::BadMagic: return "BadMagic";
    case Errc::VersionMismatch: return "VersionMismatch";
    case Errc::ChecksumMismatch: return "ChecksumMismatch";
    case Errc::Truncated: return "Truncated";
    case Errc::InvalidScheme: return "InvalidScheme";
    case Errc::InfeasibleThreshold: return "InfeasibleThreshold";
    case Errc::NonPositiveParameter: return "NonPositiveParameter";
    case Errc::QueryTooShort: return "QueryTooShort";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::MissingBaseline: return "MissingBaseline";
    case Errc::SigmaTooSmall: return "SigmaTooSmall";
    case Errc::Divergent: return "Divergent";
    case Errc::OracleTooLarge: return "OracleTooLarge";
    case Errc::HitSetMismatch: return "HitSetMismatch";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), detail_(what) {}

}  // namespace alae
