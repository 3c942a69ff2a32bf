#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "detcert/matrix_family.hpp"
#include "detcert/parser.hpp"

namespace detcert {

// Plain-text family files:
//
//   N m n
//   w: w1 ... wN
//   vars: x
//   p11 ; p12 ; ... ; p1n
//   ...
//   pm1 ; ... ; pmn
//
// Blank lines and lines starting with '#' are skipped.
inline MatrixFamily read_family(std::istream& in, const std::string& name = "<stream>") {
    std::vector<std::string> lines;
    std::string raw;
    while (std::getline(in, raw)) {
        std::string trimmed = raw;
        std::size_t b = trimmed.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = trimmed.find_last_not_of(" \t\r");
        trimmed = trimmed.substr(b, e - b + 1);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        lines.push_back(trimmed);
    }
    if (lines.size() < 3) throw InputError(name + ": family file needs header and body lines");

    std::istringstream head(lines[0]);
    int N = 0, m = 0, n = 0;
    if (!(head >> N >> m >> n) || N < 1 || m < 1 || n < 1)
        throw InputError(name + ": header must be 'N m n' with positive integers");

    if (lines[1].rfind("w:", 0) != 0) throw InputError(name + ": second line must start with 'w:'");
    std::istringstream wline(lines[1].substr(2));
    std::vector<long long> ws;
    long long wv = 0;
    while (wline >> wv) ws.push_back(wv);
    if (static_cast<int>(ws.size()) != N)
        throw InputError(name + ": expected " + std::to_string(N) + " weights");
    Weights w(ws);

    if (lines[2].rfind("vars:", 0) != 0)
        throw InputError(name + ": third line must start with 'vars:'");
    std::string alpha_part = lines[2].substr(5);
    std::size_t ap = alpha_part.find_first_not_of(" \t");
    if (ap == std::string::npos || (alpha_part[ap] != 'x' && alpha_part[ap] != 'u'))
        throw InputError(name + ": variable alphabet must be 'x' or 'u'");
    char alphabet = alpha_part[ap];

    if (static_cast<int>(lines.size()) != 3 + m)
        throw InputError(name + ": expected " + std::to_string(m) + " matrix rows, found " +
                         std::to_string(lines.size() - 3));
    PolyMat entries(m, n, N);
    for (int i = 0; i < m; ++i) {
        const std::string& row = lines[static_cast<std::size_t>(3 + i)];
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream rs(row);
        while (std::getline(rs, cell, ';')) cells.push_back(cell);
        if (static_cast<int>(cells.size()) != n)
            throw InputError(name + ": row " + std::to_string(i + 1) + " has " +
                             std::to_string(cells.size()) + " entries, expected " +
                             std::to_string(n));
        for (int j = 0; j < n; ++j)
            entries.at(i, j) = parse_poly(cells[static_cast<std::size_t>(j)], N, alphabet);
    }
    return MatrixFamily(std::move(entries), std::move(w), alphabet);
}

inline MatrixFamily read_family_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open family file: " + path);
    return read_family(in, path);
}

inline std::string write_family(const MatrixFamily& F) {
    std::ostringstream os;
    os << F.nvars() << ' ' << F.m() << ' ' << F.n() << '\n';
    os << "w:";
    for (long long wv : F.weights.w) os << ' ' << wv;
    os << '\n';
    os << "vars: " << F.alphabet << '\n';
    for (int i = 0; i < F.m(); ++i) {
        for (int j = 0; j < F.n(); ++j) {
            if (j) os << " ; ";
            os << poly_to_string(F.entries.at(i, j), F.alphabet);
        }
        os << '\n';
    }
    return os.str();
}

}  // namespace detcert
