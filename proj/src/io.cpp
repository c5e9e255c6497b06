#include "pfr/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pfr {

namespace {

struct LineReader {
    std::istream& in;
    int line_no = 0;

    // Next non-comment, non-blank line; false at end of input.
    bool next(std::string& out) {
        std::string raw;
        while (std::getline(in, raw)) {
            ++line_no;
            std::string_view sv(raw);
            std::size_t i = 0;
            while (i < sv.size() && std::isspace(static_cast<unsigned char>(sv[i]))) ++i;
            if (i == sv.size() || sv[i] == '#') continue;
            out = raw;
            return true;
        }
        return false;
    }
};

double parse_entry(const std::string& token, int line, int col) {
    const std::size_t slash = token.find('/');
    try {
        if (slash != std::string::npos) {
            std::size_t used = 0;
            const double num = std::stod(token.substr(0, slash), &used);
            if (used != slash) throw parse_error("malformed rational numerator", line, col);
            const std::string den_text = token.substr(slash + 1);
            const double den = std::stod(den_text, &used);
            if (used != den_text.size()) throw parse_error("malformed rational denominator", line, col);
            if (den == 0.0) throw parse_error("rational with zero denominator", line, col);
            return num / den;
        }
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw parse_error("malformed number '" + token + "'", line, col);
        if (!std::isfinite(v)) throw parse_error("entry overflows double precision", line, col);
        return v;
    } catch (const std::invalid_argument&) {
        throw parse_error("malformed number '" + token + "'", line, col);
    } catch (const std::out_of_range&) {
        throw parse_error("entry overflows double precision", line, col);
    }
}

std::vector<std::string> split_tokens(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) {
        if (tok[0] == '#') break;
        out.push_back(tok);
    }
    return out;
}

RealMatrix read_matrix_body(LineReader& reader) {
    std::string line;
    if (!reader.next(line)) throw parse_error("missing matrix header line", reader.line_no, 0);
    const std::vector<std::string> header = split_tokens(line);
    if (header.size() != 2)
        throw parse_error("matrix header must be 'rows cols'", reader.line_no, 0);
    long rows = 0, cols = 0;
    try {
        rows = std::stol(header[0]);
        cols = std::stol(header[1]);
    } catch (...) {
        throw parse_error("matrix header must hold two integers", reader.line_no, 0);
    }
    if (rows < 1 || cols < 1)
        throw parse_error("matrix dimensions must be positive", reader.line_no, 0);

    std::vector<double> entries;
    entries.reserve(static_cast<std::size_t>(rows * cols));
    for (long r = 0; r < rows; ++r) {
        if (!reader.next(line))
            throw parse_error("matrix ends after " + std::to_string(r) + " of " +
                                  std::to_string(rows) + " rows",
                              reader.line_no, 0);
        const std::vector<std::string> toks = split_tokens(line);
        if (static_cast<long>(toks.size()) != cols)
            throw parse_error("row has " + std::to_string(toks.size()) + " entries, expected " +
                                  std::to_string(cols),
                              reader.line_no, 1);
        for (std::size_t c = 0; c < toks.size(); ++c)
            entries.push_back(parse_entry(toks[c], reader.line_no, static_cast<int>(c + 1)));
    }
    return RealMatrix(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols),
                      std::move(entries));
}

}  // namespace

RealMatrix read_matrix(std::istream& in) {
    LineReader reader{in};
    return read_matrix_body(reader);
}

RealMatrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0, 0);
    return read_matrix(in);
}

void write_matrix(std::ostream& out, const RealMatrix& a) {
    out << a.rows() << ' ' << a.cols() << '\n';
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << format_full(a(i, j));
        }
        out << '\n';
    }
}

FactorizationFile read_factorization(std::istream& in) {
    LineReader reader{in};
    FactorizationFile out;
    out.r = read_matrix_body(reader);
    std::string line;
    while (reader.next(line)) {
        const std::vector<std::string> toks = split_tokens(line);
        RealBlockSpec block;
        if (toks.empty()) continue;
        if (toks[0] == "real") {
            if (toks.size() != 3)
                throw parse_error("block line must be 'real <lambda> <k>'", reader.line_no, 0);
            block.kind = RealBlockSpec::Kind::real_eigen;
            block.lambda = parse_entry(toks[1], reader.line_no, 2);
        } else if (toks[0] == "cpair") {
            if (toks.size() != 4)
                throw parse_error("block line must be 'cpair <re> <im> <k>'", reader.line_no, 0);
            block.kind = RealBlockSpec::Kind::complex_pair;
            block.lambda = cdouble(parse_entry(toks[1], reader.line_no, 2),
                                   parse_entry(toks[2], reader.line_no, 3));
        } else {
            throw parse_error("unknown block kind '" + toks[0] + "'", reader.line_no, 1);
        }
        const std::string& ktext = toks.back();
        try {
            block.size = std::stoi(ktext);
        } catch (...) {
            throw parse_error("malformed block size '" + ktext + "'", reader.line_no,
                              static_cast<int>(toks.size()));
        }
        if (block.size < 1)
            throw parse_error("block size must be positive", reader.line_no,
                              static_cast<int>(toks.size()));
        out.blocks.push_back(block);
    }
    if (out.blocks.empty())
        throw parse_error("factorization file has no block descriptors", reader.line_no, 0);
    return out;
}

FactorizationFile read_factorization_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open '" + path + "'", 0, 0);
    return read_factorization(in);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_display(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.4f", v);
    return buf;
}

}  // namespace pfr
