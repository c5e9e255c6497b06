#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pfr/rjcf.hpp"

namespace pfr {

// Matrix text format: a header line `rows cols`, then one line per row with
// `cols` whitespace-separated entries.  Entries are decimals (scientific
// notation allowed) or rationals `a/b`; `#` starts a comment line.

RealMatrix read_matrix(std::istream& in);
RealMatrix read_matrix_file(const std::string& path);

// 17 significant digits; round-trips through read_matrix exactly.
void write_matrix(std::ostream& out, const RealMatrix& a);

// Factorization file: the matrix R in the text format above, followed by
// one descriptor line per block, `real <lambda> <k>` or `cpair <re> <im>
// <k>`, in block order (real blocks first).
struct FactorizationFile {
    RealMatrix r;
    std::vector<RealBlockSpec> blocks;  // eigen_id unresolved (-1)
};

FactorizationFile read_factorization(std::istream& in);
FactorizationFile read_factorization_file(const std::string& path);

std::string format_full(double v);      // %.17g
std::string format_display(double v);   // %.4f, the display precision

}  // namespace pfr
