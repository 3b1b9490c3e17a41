#include "wignerlab/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <stdexcept>

namespace wigner::io {

std::uint64_t config_hash(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string hash_hex(std::uint64_t h) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
    return buf;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path) {
    if (!out_) throw std::runtime_error("CsvWriter: cannot open " + path);
}

void CsvWriter::meta(const std::string& key, const std::string& value) {
    if (header_written_) {
        throw std::logic_error("CsvWriter: metadata must precede the header");
    }
    out_ << "# " << key << "=" << value << "\n";
}

void CsvWriter::meta(const std::string& key, double value) {
    meta(key, format_double(value));
}

void CsvWriter::header(const std::vector<std::string>& cols) {
    raw_row(cols);
    header_written_ = true;
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> fields;
    fields.reserve(values.size());
    for (double v : values) fields.push_back(format_double(v));
    raw_row(fields);
}

void CsvWriter::raw_row(const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out_ << ",";
        out_ << fields[i];
    }
    out_ << "\n";
    if (!out_) throw std::runtime_error("CsvWriter: write failed");
}

void write_matrix_binary(const std::string& path, const WignerMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_matrix_binary: cannot open " + path);
    out << "# wignerlab-matrix v1\n"
        << "# n=" << m.size() << "\n"
        << "# convention=" << to_string(m.convention()) << "\n"
        << "# seed=" << m.seed() << "\n";
    out.write(reinterpret_cast<const char*>(m.data().data()),
              static_cast<std::streamsize>(m.data().size() *
                                           sizeof(std::complex<double>)));
    if (!out) throw std::runtime_error("write_matrix_binary: write failed");
}

namespace {

std::string expect_meta(std::istream& in, const std::string& key) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# " + key + "=", 0) != 0) {
        throw std::runtime_error("matrix file: missing header field " + key);
    }
    return line.substr(key.size() + 3);
}

}  // namespace

WignerMatrix read_matrix_binary(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_matrix_binary: cannot open " + path);
    std::string magic;
    std::getline(in, magic);
    if (magic != "# wignerlab-matrix v1") {
        throw std::runtime_error("read_matrix_binary: bad magic in " + path);
    }
    const int n = std::stoi(expect_meta(in, "n"));
    const Convention conv = convention_from_string(expect_meta(in, "convention"));
    const std::uint64_t seed = std::stoull(expect_meta(in, "seed"));
    WignerMatrix m(n, conv, seed);
    in.read(reinterpret_cast<char*>(m.data().data()),
            static_cast<std::streamsize>(m.data().size() *
                                         sizeof(std::complex<double>)));
    if (!in) throw std::runtime_error("read_matrix_binary: truncated " + path);
    return m;
}

void write_matrix_csv(const std::string& path, const WignerMatrix& m) {
    CsvWriter csv(path);
    csv.meta("n", std::to_string(m.size()));
    csv.meta("convention", to_string(m.convention()));
    csv.meta("seed", std::to_string(m.seed()));
    std::vector<std::string> cols;
    for (int j = 0; j < m.size(); ++j) {
        cols.push_back("re" + std::to_string(j));
        cols.push_back("im" + std::to_string(j));
    }
    csv.header(cols);
    for (int i = 0; i < m.size(); ++i) {
        std::vector<double> vals;
        vals.reserve(2 * m.size());
        for (int j = 0; j < m.size(); ++j) {
            vals.push_back(m.at(i, j).real());
            vals.push_back(m.at(i, j).imag());
        }
        csv.row(vals);
    }
}

void write_coeffs(const std::string& path, const HermiteDensity& d) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_coeffs: cannot open " + path);
    out << "K " << d.order() << "\n";
    for (double c : d.coeffs()) out << format_double(c) << "\n";
    if (!out) throw std::runtime_error("write_coeffs: write failed");
}

HermiteDensity read_coeffs(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_coeffs: cannot open " + path);
    std::string tag;
    int order = -1;
    if (!(in >> tag >> order) || tag != "K" || order < 0) {
        throw std::runtime_error("read_coeffs: bad header in " + path);
    }
    std::vector<double> c(order + 1);
    for (double& v : c) {
        if (!(in >> v)) {
            throw std::runtime_error("read_coeffs: truncated " + path);
        }
    }
    return HermiteDensity(std::move(c));
}

}  // namespace wigner::io
