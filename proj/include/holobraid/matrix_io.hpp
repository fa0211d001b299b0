#pragma once

#include <iosfwd>
#include <string>

#include "holobraid/cyclic_rep.hpp"

namespace holobraid {

/// "re+imi" with 17 significant digits.
std::string format_entry(cplx z);
cplx parse_entry(const std::string& s);

/// Header line followed by one comma-separated row per matrix row.
void write_matrix_tsv(std::ostream& os, const std::string& header, const Mat& m);

struct TsvMatrix {
    std::string header;
    Mat m;
};

TsvMatrix read_matrix_tsv(std::istream& is);

/// "# ell=3 kind=K u=re,im v=re,im x=re,im y=re,im"
std::string rep_header(const RepParams& p, char kind);

/// "# ell=3 kind=R residual=... kernel_dim=..."
std::string intertwiner_header(int ell, double residual, int kernel_dim);

}  // namespace holobraid
