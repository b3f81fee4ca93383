#include "neurochaos/genome.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <complex>
#include <cstdint>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "neurochaos/errors.hpp"

namespace neurochaos::genome {

std::vector<GenomeRecord> parse_fasta(std::string_view text) {
  std::vector<GenomeRecord> records;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  bool have_record = false;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.size() - pos
                                                                           : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.remove_suffix(1);
    if (line.empty()) continue;
    if (line.front() == '>') {
      std::string id(line.substr(1));
      // header id is the first whitespace-delimited token
      const std::size_t space = id.find_first_of(" \t");
      if (space != std::string::npos) id.resize(space);
      if (id.empty()) {
        throw DataError("fasta: empty record id at line " + std::to_string(line_no));
      }
      records.push_back(GenomeRecord{std::move(id), {}});
      have_record = true;
    } else {
      if (!have_record) {
        throw DataError("fasta: sequence data before first header at line " +
                        std::to_string(line_no));
      }
      auto& seq = records.back().sequence;
      for (const char c : line) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        seq.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
      }
    }
  }
  for (const auto& rec : records) {
    if (rec.sequence.empty()) throw DataError("fasta: record '" + rec.id + "' has no sequence");
  }
  return records;
}

std::vector<GenomeRecord> read_fasta(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_fasta(buf.str());
}

std::vector<double> encode(std::string_view sequence, std::size_t* ambiguous_count) {
  if (sequence.empty()) throw ArgumentError("encode: empty sequence");
  std::vector<double> values;
  values.reserve(sequence.size());
  std::size_t ambiguous = 0;
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    switch (sequence[i]) {
      case 'C': values.push_back(0.25); break;
      case 'T': values.push_back(0.50); break;
      case 'G': values.push_back(0.75); break;
      case 'A': values.push_back(1.00); break;
      case 'N': case 'U': case 'R': case 'Y': case 'S': case 'W':
      case 'K': case 'M': case 'B': case 'D': case 'H': case 'V':
        values.push_back(0.0);
        ++ambiguous;
        break;
      default:
        throw DataError("encode: invalid base '" + std::string(1, sequence[i]) +
                        "' at position " + std::to_string(i));
    }
  }
  if (ambiguous_count) *ambiguous_count = ambiguous;
  return values;
}

namespace {

using cplx = std::complex<double>;

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

// In-place iterative radix-2 Cooley-Tukey; data.size() must be a power of two.
void fft_pow2(std::vector<cplx>& data, bool inverse) {
  const std::size_t n = data.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double angle = (inverse ? 2.0 : -2.0) * std::numbers::pi / static_cast<double>(len);
    const cplx wlen(std::cos(angle), std::sin(angle));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = data[i + k];
        const cplx v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse) {
    for (auto& x : data) x /= static_cast<double>(n);
  }
}

// Bluestein's chirp transform: DFT of arbitrary length via one convolution
// of power-of-two size >= 2n-1. Chirp phases use n^2 mod 2n to keep the
// angle argument small.
std::vector<cplx> dft_bluestein(const std::vector<cplx>& input) {
  const std::size_t n = input.size();
  const std::size_t conv_len = next_pow2(2 * n - 1);
  std::vector<cplx> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::uint64_t sq_mod = (static_cast<std::uint64_t>(k) * k) % (2 * n);
    const double angle = -std::numbers::pi * static_cast<double>(sq_mod) / static_cast<double>(n);
    chirp[k] = cplx(std::cos(angle), std::sin(angle));
  }
  std::vector<cplx> a(conv_len, cplx(0.0, 0.0));
  std::vector<cplx> b(conv_len, cplx(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) a[k] = input[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    b[conv_len - k] = b[k];
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t k = 0; k < conv_len; ++k) a[k] *= b[k];
  fft_pow2(a, true);
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
  return out;
}

}  // namespace

std::vector<double> dft_magnitude(std::span<const double> signal, std::size_t length) {
  if (length == 0) throw ArgumentError("dft_magnitude: length must be positive");
  if (signal.size() > length) {
    throw ArgumentError("dft_magnitude: signal length " + std::to_string(signal.size()) +
                        " exceeds target length " + std::to_string(length));
  }
  std::vector<cplx> data(length, cplx(0.0, 0.0));
  for (std::size_t i = 0; i < signal.size(); ++i) data[i] = cplx(signal[i], 0.0);

  std::vector<double> magnitudes(length);
  if (is_pow2(length)) {
    fft_pow2(data, false);
    for (std::size_t k = 0; k < length; ++k) magnitudes[k] = std::abs(data[k]);
  } else {
    const auto spectrum = dft_bluestein(data);
    for (std::size_t k = 0; k < length; ++k) magnitudes[k] = std::abs(spectrum[k]);
  }
  return magnitudes;
}

std::vector<double> normalize_unit_interval(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("normalize_unit_interval: empty input");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  std::vector<double> out(values.size());
  if (hi <= lo) return out;  // constant input -> zeros
  const double span = hi - lo;
  for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / span;
  return out;
}

PreprocessResult preprocess(const std::vector<GenomeRecord>& records, std::size_t l_max,
                            unsigned threads) {
  if (records.empty()) throw ArgumentError("preprocess: no records");
  PreprocessResult result;
  result.l_max = l_max;
  result.features = Matrix(records.size(), l_max);
  result.records.resize(records.size());

  std::vector<std::string> failures(records.size());
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        std::size_t ambiguous = 0;
        const auto encoded = encode(records[i].sequence, &ambiguous);
        const auto magnitudes = dft_magnitude(encoded, l_max);
        const auto normalized = normalize_unit_interval(magnitudes);
        std::copy(normalized.begin(), normalized.end(), result.features.row(i).begin());
        result.records[i] = RecordInfo{records[i].id, records[i].sequence.size(), ambiguous};
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };

  if (threads <= 1 || records.size() < 2) {
    work(0, records.size());
  } else {
    const unsigned n = std::min<unsigned>(threads, static_cast<unsigned>(records.size()));
    std::vector<std::thread> pool;
    const std::size_t chunk = (records.size() + n - 1) / n;
    for (unsigned t = 0; t < n; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(records.size(), begin + chunk);
      if (begin >= end) break;
      pool.emplace_back(work, begin, end);
    }
    for (auto& th : pool) th.join();
  }

  std::string error;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (failures[i].empty()) continue;
    if (!error.empty()) error += "; ";
    error += "record '" + records[i].id + "': " + failures[i];
  }
  if (!error.empty()) throw DataError("preprocess: " + error);
  return result;
}

nlohmann::json manifest_json(const PreprocessResult& result) {
  nlohmann::json recs = nlohmann::json::array();
  for (const auto& info : result.records) {
    recs.push_back({{"id", info.id},
                    {"length", info.length},
                    {"ambiguous_bases", info.ambiguous_bases}});
  }
  return {{"l_max", result.l_max}, {"records", recs}};
}

}  // namespace neurochaos::genome
