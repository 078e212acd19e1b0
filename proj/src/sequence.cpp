#include "alae/sequence.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "alae/error.hpp"

namespace alae {

Alphabet::Alphabet(AlphabetKind kind, std::string letters) : kind_(kind), letters_(std::move(letters)) {
  std::fill(std::begin(table_), std::end(table_), std::int16_t{-1});
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    auto upper = static_cast<unsigned char>(letters_[i]);
    table_[upper] = static_cast<std::int16_t>(i);
    table_[std::tolower(upper)] = static_cast<std::int16_t>(i);
  }
}

const Alphabet& Alphabet::dna() {
  static const Alphabet a(AlphabetKind::Dna, "ACGT");
  return a;
}

const Alphabet& Alphabet::protein() {
  static const Alphabet a(AlphabetKind::Protein, "ACDEFGHIKLMNPQRSTVWY");
  return a;
}

const Alphabet& Alphabet::of(AlphabetKind kind) {
  return kind == AlphabetKind::Dna ? dna() : protein();
}

AlphabetKind Alphabet::parse_kind(std::string_view name) {
  if (name == "dna" || name == "DNA") return AlphabetKind::Dna;
  if (name == "protein" || name == "PROTEIN") return AlphabetKind::Protein;
  throw Error(Errc::InvalidSymbol, "unknown alphabet '" + std::string(name) + "'");
}

std::optional<Code> Alphabet::encode(char c) const {
  auto v = table_[static_cast<unsigned char>(c)];
  if (v < 0) return std::nullopt;
  return static_cast<Code>(v);
}

char Alphabet::decode(Code code) const {
  if (code == kUnknownCode) return kind_ == AlphabetKind::Dna ? 'N' : 'X';
  if (code >= letters_.size()) throw Error(Errc::InvalidSymbol, "code out of alphabet");
  return letters_[code];
}

std::vector<Code> Alphabet::encode_string(std::string_view s) const {
  std::vector<Code> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto c = encode(s[i]);
    if (!c) {
      throw Error(Errc::UnknownSymbol,
                  "position " + std::to_string(i + 1) + " character '" + std::string(1, s[i]) + "'");
    }
    out.push_back(*c);
  }
  return out;
}

std::string Alphabet::decode_string(const std::vector<Code>& codes) const {
  std::string s;
  s.reserve(codes.size());
  for (Code c : codes) s.push_back(decode(c));
  return s;
}

std::vector<SequenceRecord> parse_fasta(std::istream& in, const Alphabet& alphabet, SymbolPolicy policy) {
  std::vector<SequenceRecord> records;
  std::string line;
  std::size_t line_no = 0;
  std::size_t header_line = 0;
  auto close_record = [&] {
    if (!records.empty() && records.back().codes.empty()) {
      throw Error(Errc::EmptyRecord, "record '" + records.back().id + "' at line " +
                                         std::to_string(header_line) + " has no sequence");
    }
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '>') {
      close_record();
      std::string id = line.substr(1);
      auto cut = id.find_first_of(" \t");
      if (cut != std::string::npos) id.resize(cut);
      records.push_back({id, {}});
      header_line = line_no;
      continue;
    }
    if (line[0] == ';') continue;
    if (records.empty()) {
      throw Error(Errc::UnknownSymbol, "line " + std::to_string(line_no) + ": sequence data before first header");
    }
    auto& codes = records.back().codes;
    for (char c : line) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      auto code = alphabet.encode(c);
      if (code) {
        codes.push_back(*code);
      } else if (policy == SymbolPolicy::Lenient) {
        codes.push_back(kUnknownCode);
      } else {
        throw Error(Errc::UnknownSymbol, "position " + std::to_string(codes.size() + 1) + " character '" +
                                             std::string(1, c) + "' (record '" + records.back().id +
                                             "', line " + std::to_string(line_no) + ")");
      }
    }
  }
  close_record();
  return records;
}

std::vector<SequenceRecord> parse_fasta(std::string_view text, const Alphabet& alphabet, SymbolPolicy policy) {
  std::istringstream in{std::string(text)};
  return parse_fasta(in, alphabet, policy);
}

std::vector<SequenceRecord> read_fasta_file(const std::string& path, const Alphabet& alphabet,
                                            SymbolPolicy policy) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::Io, "cannot open " + path);
  try {
    return parse_fasta(in, alphabet, policy);
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.detail());
  }
}

EncodedText::EncodedText(AlphabetKind kind, std::vector<Code> codes, std::vector<Boundary> boundaries)
    : kind_(kind), codes_(std::move(codes)), boundaries_(std::move(boundaries)) {}

std::size_t EncodedText::record_of(std::uint64_t global_pos) const {
  if (global_pos < 1 || global_pos > codes_.size()) {
    throw Error(Errc::OutOfRange, "position " + std::to_string(global_pos));
  }
  auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), global_pos,
                             [](std::uint64_t p, const Boundary& b) { return p < b.start; });
  return static_cast<std::size_t>(it - boundaries_.begin()) - 1;
}

LocalPosition EncodedText::resolve(std::uint64_t global_pos) const {
  std::size_t r = record_of(global_pos);
  return {r, boundaries_[r].id, global_pos - boundaries_[r].start + 1};
}

EncodedText concatenate(const std::vector<SequenceRecord>& records, AlphabetKind kind) {
  std::vector<Code> codes;
  std::vector<Boundary> bounds;
  for (const auto& r : records) {
    if (r.codes.empty()) continue;
    bounds.push_back({codes.size() + 1, r.id});
    codes.insert(codes.end(), r.codes.begin(), r.codes.end());
  }
  if (codes.empty()) throw Error(Errc::EmptyDatabase, "no sequence data");
  return EncodedText(kind, std::move(codes), std::move(bounds));
}

}  // namespace alae
