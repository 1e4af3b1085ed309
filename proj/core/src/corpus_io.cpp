#include "unshuffle/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <sstream>

#include <nlohmann/json.hpp>

#include "unshuffle/error.hpp"

namespace unshuffle {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t CorpusSpec::alphabet() const { return std::uint64_t{1} << (8 * word_bytes); }

void CorpusSpec::validate() const {
  if (record_len == 0) throw StructuralError("record length must be at least 1");
  if (word_bytes != 1 && word_bytes != 2 && word_bytes != 4) {
    throw StructuralError("word size must be 1, 2 or 4 bytes, got " + std::to_string(word_bytes));
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::string data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read error on " + path.string());
  return data;
}

void write_file_atomic(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create " + path.parent_path().string() + ": " + ec.message());
  }
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write error on " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot rename onto " + path.string());
  }
}

namespace {

bool is_directory_layout(const CorpusSpec& spec) {
  switch (spec.layout) {
    case CorpusLayout::File:
      return false;
    case CorpusLayout::Directory:
      return true;
    default:
      return fs::is_directory(spec.source);
  }
}

std::vector<fs::path> record_files(const fs::path& dir) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IoError("cannot list " + dir.string() + ": " + ec.message());
  std::vector<fs::path> files;
  for (const auto& entry : it) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(),
            [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
  return files;
}

void append_records(const std::string& data, const fs::path& file, const CorpusSpec& spec,
                    std::vector<Symbol>& words) {
  const std::size_t record_bytes = spec.record_len * spec.word_bytes;
  if (data.size() % record_bytes != 0) {
    const std::size_t offset = data.size() - data.size() % record_bytes;
    throw MalformedCorpusError(file.string() + ": " + std::to_string(data.size()) +
                               " bytes is not a multiple of the " +
                               std::to_string(record_bytes) +
                               "-byte record size; partial record at offset " +
                               std::to_string(offset));
  }
  const auto* bytes = reinterpret_cast<const unsigned char*>(data.data());
  for (std::size_t i = 0; i < data.size(); i += spec.word_bytes) {
    Symbol w = 0;
    for (unsigned b = 0; b < spec.word_bytes; ++b) w |= Symbol{bytes[i + b]} << (8 * b);
    words.push_back(w);
  }
}

std::string encode_column(std::span<const Symbol> column, unsigned word_bytes) {
  std::string out;
  out.reserve(column.size() * word_bytes);
  for (Symbol w : column) {
    for (unsigned b = 0; b < word_bytes; ++b) {
      out.push_back(static_cast<char>((w >> (8 * b)) & 0xFFu));
    }
  }
  return out;
}

}  // namespace

Corpus load_corpus(const CorpusSpec& spec) {
  spec.validate();
  if (!fs::exists(spec.source)) throw IoError(spec.source.string() + " does not exist");

  std::vector<Symbol> words;
  if (is_directory_layout(spec)) {
    for (const auto& file : record_files(spec.source)) {
      append_records(read_file(file), file, spec, words);
    }
  } else {
    append_records(read_file(spec.source), spec.source, spec, words);
  }
  if (words.empty()) throw EmptyCorpusError(spec.source.string() + " contains no records");

  const std::size_t columns = words.size() / spec.record_len;
  Corpus corpus(spec.record_len, columns, spec.alphabet());
  for (std::size_t n = 0; n < columns; ++n) {
    auto col = corpus.column(n);
    std::copy_n(words.begin() + static_cast<std::ptrdiff_t>(n * spec.record_len),
                spec.record_len, col.begin());
  }
  return corpus;
}

void write_corpus(const Corpus& corpus, const CorpusSpec& spec) {
  spec.validate();
  if (corpus.rows() != spec.record_len) {
    throw StructuralError("corpus has " + std::to_string(corpus.rows()) +
                          " rows but the record length is " + std::to_string(spec.record_len));
  }
  if (corpus.alphabet() > spec.alphabet()) {
    throw StructuralError("alphabet size " + std::to_string(corpus.alphabet()) +
                          " does not fit in " + std::to_string(spec.word_bytes) + "-byte words");
  }
  if (spec.layout == CorpusLayout::Directory) {
    std::error_code ec;
    fs::create_directories(spec.source, ec);
    if (ec) throw IoError("cannot create " + spec.source.string() + ": " + ec.message());
    for (std::size_t n = 0; n < corpus.columns(); ++n) {
      std::ostringstream name;
      name << "record_";
      name.width(6);
      name.fill('0');
      name << n << ".bin";
      write_file_atomic(spec.source / name.str(), encode_column(corpus.column(n), spec.word_bytes));
    }
    return;
  }
  std::string data;
  for (std::size_t n = 0; n < corpus.columns(); ++n) {
    data += encode_column(corpus.column(n), spec.word_bytes);
  }
  write_file_atomic(spec.source, data);
}

std::string truth_to_json(const TruthFile& file) {
  const GroundTruth& t = file.truth;
  json j;
  j["q"] = file.q;
  j["seed"] = file.seed;
  j["lengths"] = t.blocks.lengths();
  j["x"] = t.x;
  std::vector<std::size_t> loci;
  for (std::size_t l : t.noise_loci) loci.push_back(l + 1);
  j["noise_loci"] = loci;
  json perms = json::array();
  for (const auto& sigma : t.column_perms) perms.push_back(sigma.one_line());
  j["column_perms"] = perms;
  return j.dump(2) + "\n";
}

TruthFile truth_from_json(std::string_view text) {
  TruthFile out;
  try {
    const json j = json::parse(text);
    out.q = j.at("q").get<std::uint64_t>();
    out.seed = j.at("seed").get<std::uint64_t>();
    out.truth.blocks = BlockStructure(j.at("lengths").get<std::vector<std::size_t>>());
    out.truth.x = j.at("x").get<std::vector<Symbol>>();
    for (std::size_t l : j.at("noise_loci").get<std::vector<std::size_t>>()) {
      if (l == 0) throw StructuralError("noise loci are 1-based");
      out.truth.noise_loci.push_back(l - 1);
    }
    for (const auto& p : j.at("column_perms")) {
      const auto one_line = p.get<std::vector<std::int64_t>>();
      out.truth.column_perms.push_back(Permutation::from_one_line(one_line));
    }
  } catch (const json::exception& e) {
    throw StructuralError(std::string("malformed truth file: ") + e.what());
  }
  if (out.truth.x.size() != out.truth.blocks.total()) {
    throw StructuralError("truth template length does not match the block lengths");
  }
  return out;
}

void write_truth(const fs::path& path, const TruthFile& file) {
  write_file_atomic(path, truth_to_json(file));
}

TruthFile read_truth(const fs::path& path) { return truth_from_json(read_file(path)); }

std::string profile_csv(const std::vector<std::size_t>& profile) {
  std::ostringstream os;
  os << "row,size\n";
  for (std::size_t l = 0; l < profile.size(); ++l) os << l + 1 << ',' << profile[l] << '\n';
  return os.str();
}

}  // namespace unshuffle
