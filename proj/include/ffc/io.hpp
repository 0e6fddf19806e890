#pragma once

#include <charconv>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "types.hpp"

namespace ffc {
namespace io {

// locale-independent numeric formatting, 15 significant digits
inline std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 15);
    return std::string(buf, res.ptr);
}

inline std::string fmt(int v) { return std::to_string(v); }
inline std::string fmt(std::int64_t v) { return std::to_string(v); }
inline std::string fmt(std::uint64_t v) { return std::to_string(v); }

// kernel export: header "dim,count", then one basis vector per record as
// interleaved real,imag pairs in the fixed qubit ordering
inline void export_kernel_csv(std::ostream& os, const Matrix& basis) {
    os << basis.rows() << "," << basis.cols() << "\n";
    for (int c = 0; c < basis.cols(); ++c) {
        for (std::int64_t r = 0; r < basis.rows(); ++r) {
            if (r) os << ",";
            os << fmt(basis(r, c).real()) << "," << fmt(basis(r, c).imag());
        }
        os << "\n";
    }
}

inline void export_kernel_binary(std::ostream& os, const Matrix& basis) {
    os << basis.rows() << "," << basis.cols() << "\n";
    for (int c = 0; c < basis.cols(); ++c)
        for (std::int64_t r = 0; r < basis.rows(); ++r) {
            double re = basis(r, c).real(), im = basis(r, c).imag();
            os.write(reinterpret_cast<const char*>(&re), sizeof(double));
            os.write(reinterpret_cast<const char*>(&im), sizeof(double));
        }
}

inline Matrix import_kernel_csv(std::istream& is) {
    std::string header;
    std::getline(is, header);
    auto comma = header.find(',');
    std::int64_t dim = std::stoll(header.substr(0, comma));
    std::int64_t count = std::stoll(header.substr(comma + 1));
    Matrix basis(dim, count);
    std::string line;
    for (std::int64_t c = 0; c < count; ++c) {
        if (!std::getline(is, line)) throw std::runtime_error("kernel import: truncated file");
        std::stringstream ss(line);
        std::string tok;
        for (std::int64_t r = 0; r < dim; ++r) {
            std::getline(ss, tok, ',');
            double re = std::stod(tok);
            std::getline(ss, tok, ',');
            double im = std::stod(tok);
            basis(r, c) = cxd(re, im);
        }
    }
    return basis;
}

}  // namespace io
}  // namespace ffc
