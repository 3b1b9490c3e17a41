#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "wignerlab/ensemble.hpp"
#include "wignerlab/ou_flow.hpp"

namespace wigner::io {

/// FNV-1a hash of a canonical config string; stamped on every output file.
std::uint64_t config_hash(const std::string& canonical);
std::string hash_hex(std::uint64_t h);

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// CSV with '#'-prefixed metadata lines, then one header row, then data.
class CsvWriter {
public:
    explicit CsvWriter(const std::string& path);

    void meta(const std::string& key, const std::string& value);
    void meta(const std::string& key, double value);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& fields);

private:
    std::ofstream out_;
    bool header_written_ = false;
};

/// Matrix files: '#' header lines carrying n / convention / seed, then the
/// row-major entries with interleaved re/im parts (binary doubles or CSV).
void write_matrix_binary(const std::string& path, const WignerMatrix& m);
WignerMatrix read_matrix_binary(const std::string& path);
void write_matrix_csv(const std::string& path, const WignerMatrix& m);

/// Density coefficient lists: header line with K, one coefficient per line.
void write_coeffs(const std::string& path, const HermiteDensity& d);
HermiteDensity read_coeffs(const std::string& path);

}  // namespace wigner::io
