#include "holobraid/matrix_io.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace holobraid {

namespace {

std::string num(double d) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", d);
    return buf;
}

std::string pair(cplx z) { return num(z.real()) + "," + num(z.imag()); }

}  // namespace

std::string format_entry(cplx z) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

cplx parse_entry(const std::string& s) {
    if (s.empty() || s.back() != 'i') throw Error(ErrorKind::Io, "malformed matrix entry '" + s + "'");
    // the imaginary part starts at the last sign that is not part of an exponent
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size() - 1; k > 0; --k) {
        if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) throw Error(ErrorKind::Io, "malformed matrix entry '" + s + "'");
    try {
        return {std::stod(s.substr(0, split)), std::stod(s.substr(split, s.size() - split - 1))};
    } catch (const std::exception&) {
        throw Error(ErrorKind::Io, "malformed matrix entry '" + s + "'");
    }
}

void write_matrix_tsv(std::ostream& os, const std::string& header, const Mat& m) {
    os << header << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) os << ',';
            os << format_entry(m(i, j));
        }
        os << '\n';
    }
}

TsvMatrix read_matrix_tsv(std::istream& is) {
    TsvMatrix out;
    if (!std::getline(is, out.header) || out.header.rfind("# ", 0) != 0) {
        throw Error(ErrorKind::Io, "missing matrix header");
    }
    std::vector<std::vector<cplx>> rows;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<cplx> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_entry(cell));
        if (!rows.empty() && row.size() != rows.front().size()) throw Error(ErrorKind::Io, "ragged matrix rows");
        rows.push_back(std::move(row));
    }
    const auto r = static_cast<Eigen::Index>(rows.size());
    const auto c = r ? static_cast<Eigen::Index>(rows.front().size()) : 0;
    out.m.resize(r, c);
    for (Eigen::Index i = 0; i < r; ++i) {
        for (Eigen::Index j = 0; j < c; ++j) out.m(i, j) = rows[i][j];
    }
    return out;
}

std::string rep_header(const RepParams& p, char kind) {
    return "# ell=" + std::to_string(p.ctx.ell()) + " kind=" + std::string(1, kind) + " u=" + pair(p.u) + " v=" + pair(p.v) +
           " x=" + pair(p.x) + " y=" + pair(p.y);
}

std::string intertwiner_header(int ell, double residual, int kernel_dim) {
    return "# ell=" + std::to_string(ell) + " kind=R residual=" + num(residual) + " kernel_dim=" + std::to_string(kernel_dim);
}

}  // namespace holobraid
