#pragma once

// Raw binary corpora: fixed-length records of little-endian k-byte words,
// either concatenated in one file or one file per record.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "unshuffle/corpus.hpp"
#include "unshuffle/shuffle_model.hpp"

namespace unshuffle {

enum class CorpusLayout {
  /// Directory if the source is one, file otherwise.
  Auto,
  /// Records back to back in a single file.
  File,
  /// Every regular file in a directory, in lexicographic filename order,
  /// holds whole records.
  Directory,
};

struct CorpusSpec {
  std::filesystem::path source;
  /// L in words.
  std::size_t record_len = 0;
  /// Bytes per word; q = 256^word_bytes. 1 and 2 cover byte corpora, 4
  /// lets generated corpora with q > 65536 be stored.
  unsigned word_bytes = 1;
  CorpusLayout layout = CorpusLayout::Auto;

  std::uint64_t alphabet() const;
  /// StructuralError for record_len == 0 or an unsupported word size.
  void validate() const;
};

/// MalformedCorpusError when a file size is not a multiple of the record
/// size (the message names the file and the offset of the trailing partial
/// record), EmptyCorpusError when no record is found, IoError when the
/// source cannot be read.
Corpus load_corpus(const CorpusSpec& spec);

/// Inverse of load_corpus. A directory target gets one file per column,
/// named record_NNNNNN.bin. StructuralError when spec.record_len does not
/// match the corpus or its alphabet does not fit the word size.
void write_corpus(const Corpus& corpus, const CorpusSpec& spec);

/// Writes to a sibling temporary file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

/// Ground-truth sidecar: q, lengths, x, 1-based noise loci and 1-based
/// one-line permutations per column, plus the generating seed.
struct TruthFile {
  std::uint64_t q = 2;
  std::uint64_t seed = 0;
  GroundTruth truth;
};

std::string truth_to_json(const TruthFile& file);
TruthFile truth_from_json(std::string_view text);
void write_truth(const std::filesystem::path& path, const TruthFile& file);
TruthFile read_truth(const std::filesystem::path& path);

/// "row,size" with 1-based rows.
std::string profile_csv(const std::vector<std::size_t>& profile);

}  // namespace unshuffle
