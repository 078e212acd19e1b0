#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace alae {

enum class Errc {
  UnknownSymbol,
  EmptyRecord,
  EmptyDatabase,
  OutOfRange,
  InvalidSymbol,
  EmptyRange,
  BadMagic,
  VersionMismatch,
  ChecksumMismatch,
  Truncated,
  InvalidScheme,
  InfeasibleThreshold,
  NonPositiveParameter,
  QueryTooShort,
  DimensionMismatch,
  MissingBaseline,
  SigmaTooSmall,
  Divergent,
  OracleTooLarge,
  HitSetMismatch,
  Io,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);
  Errc code() const noexcept { return code_; }
  // The message without the leading error name.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

}  // namespace alae
