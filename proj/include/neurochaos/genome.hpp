#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "neurochaos/matrix.hpp"

namespace neurochaos::genome {

struct GenomeRecord {
  std::string id;
  std::string sequence;
};

// Parses FASTA text: `>` header lines start records, sequence lines are
// concatenated, uppercased and stripped of whitespace. Sequence data before
// the first header is a parse error (with line number); an empty input
// yields an empty list.
std::vector<GenomeRecord> parse_fasta(std::string_view text);
std::vector<GenomeRecord> read_fasta(const std::filesystem::path& path);

// Numeric base encoding: C=0.25, T=0.50, G=0.75, A=1.0. Ambiguity codes
// (N and the other IUPAC letters, including U) map to 0 and are counted.
// Anything else is an encoding error naming the position.
std::vector<double> encode(std::string_view sequence, std::size_t* ambiguous_count = nullptr);

// Zero-pads to `length` and returns per-bin DFT magnitudes. Runs in
// O(L log L) for every L: radix-2 when L is a power of two, Bluestein's
// chirp transform otherwise.
std::vector<double> dft_magnitude(std::span<const double> signal, std::size_t length);

// (v - min) / (max - min); constant input maps to all zeros.
std::vector<double> normalize_unit_interval(std::span<const double> values);

struct RecordInfo {
  std::string id;
  std::size_t length = 0;
  std::size_t ambiguous_bases = 0;
};

struct PreprocessResult {
  Matrix features;  // m x l_max, every entry in [0,1]
  std::vector<RecordInfo> records;
  std::size_t l_max = 0;
};

// encode -> dft_magnitude -> normalize per record, rows in input order.
// Records may be processed in parallel; output is order-stable.
PreprocessResult preprocess(const std::vector<GenomeRecord>& records, std::size_t l_max,
                            unsigned threads = 1);

nlohmann::json manifest_json(const PreprocessResult& result);

}  // namespace neurochaos::genome
