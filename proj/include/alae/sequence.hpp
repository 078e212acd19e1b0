#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace alae {

using Code = std::uint8_t;

// Lenient parsing maps ambiguity letters here. It never matches anything,
// including itself.
inline constexpr Code kUnknownCode = 0x7F;

enum class AlphabetKind : std::uint8_t { Dna = 0, Protein = 1 };

class Alphabet {
 public:
  static const Alphabet& dna();
  static const Alphabet& protein();
  static const Alphabet& of(AlphabetKind kind);
  static AlphabetKind parse_kind(std::string_view name);

  AlphabetKind kind() const { return kind_; }
  int sigma() const { return static_cast<int>(letters_.size()); }
  std::optional<Code> encode(char c) const;
  // kUnknownCode decodes to 'N' (DNA) or 'X' (protein).
  char decode(Code code) const;
  std::vector<Code> encode_string(std::string_view s) const;
  std::string decode_string(const std::vector<Code>& codes) const;

 private:
  Alphabet(AlphabetKind kind, std::string letters);
  AlphabetKind kind_;
  std::string letters_;
  std::int16_t table_[256];
};

struct SequenceRecord {
  std::string id;
  std::vector<Code> codes;
};

enum class SymbolPolicy { Strict, Lenient };

std::vector<SequenceRecord> parse_fasta(std::istream& in, const Alphabet& alphabet,
                                        SymbolPolicy policy = SymbolPolicy::Strict);
std::vector<SequenceRecord> parse_fasta(std::string_view text, const Alphabet& alphabet,
                                        SymbolPolicy policy = SymbolPolicy::Strict);
std::vector<SequenceRecord> read_fasta_file(const std::string& path, const Alphabet& alphabet,
                                            SymbolPolicy policy = SymbolPolicy::Strict);

struct Boundary {
  std::uint64_t start;  // 1-based global offset of the record's first symbol
  std::string id;
};

struct LocalPosition {
  std::size_t record;
  std::string_view id;
  std::uint64_t offset;  // 1-based inside the record
};

class EncodedText {
 public:
  EncodedText() = default;
  EncodedText(AlphabetKind kind, std::vector<Code> codes, std::vector<Boundary> boundaries);

  AlphabetKind alphabet() const { return kind_; }
  std::uint64_t size() const { return codes_.size(); }
  const std::vector<Code>& codes() const { return codes_; }
  const std::vector<Boundary>& boundaries() const { return boundaries_; }
  // 1-based symbol access.
  Code at(std::uint64_t pos) const { return codes_[pos - 1]; }

  std::size_t record_of(std::uint64_t global_pos) const;
  LocalPosition resolve(std::uint64_t global_pos) const;

 private:
  AlphabetKind kind_ = AlphabetKind::Dna;
  std::vector<Code> codes_;
  std::vector<Boundary> boundaries_;
};

EncodedText concatenate(const std::vector<SequenceRecord>& records, AlphabetKind kind);

struct Query {
  std::string id;
  std::vector<Code> codes;
};

}  // namespace alae
