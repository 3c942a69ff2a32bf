#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "detcert/rational.hpp"

namespace detcert {

// Sparse rows: (column, value) pairs sorted by column, values nonzero.
using SparseRowQ = std::vector<std::pair<int, Rat>>;
using SparseRowZ = std::vector<std::pair<int, Int>>;

namespace linalg {

// Clear denominators and divide out the integer content; the leading
// coefficient is made positive so echelon rows are unique.
inline SparseRowZ normalize(const SparseRowQ& row) {
    SparseRowZ out;
    if (row.empty()) return out;
    Int lcm(1);
    for (const auto& [c, v] : row) {
        Int den = v.get_den();
        Int g;
        mpz_gcd(g.get_mpz_t(), lcm.get_mpz_t(), den.get_mpz_t());
        lcm = lcm / g * den;
    }
    Int content(0);
    out.reserve(row.size());
    for (const auto& [c, v] : row) {
        Int z = v.get_num() * (lcm / v.get_den());
        out.emplace_back(c, z);
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    }
    if (content > 1)
        for (auto& [c, z] : out) z /= content;
    if (out.front().second < 0)
        for (auto& [c, z] : out) z = -z;
    return out;
}

inline void strip_content(SparseRowZ& row) {
    if (row.empty()) return;
    Int content(0);
    for (const auto& [c, z] : row)
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), z.get_mpz_t());
    if (content > 1)
        for (auto& [c, z] : row) z /= content;
    if (row.front().second < 0)
        for (auto& [c, z] : row) z = -z;
}

// a*x - b*y, merging by column. Entries that cancel exactly disappear.
inline SparseRowZ combine(const Int& a, const SparseRowZ& x, const Int& b, const SparseRowZ& y) {
    SparseRowZ out;
    out.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
            out.emplace_back(x[i].first, a * x[i].second);
            ++i;
        } else if (i == x.size() || y[j].first < x[i].first) {
            out.emplace_back(y[j].first, -b * y[j].second);
            ++j;
        } else {
            Int v = a * x[i].second - b * y[j].second;
            if (v != 0) out.emplace_back(x[i].first, v);
            ++i;
            ++j;
        }
    }
    return out;
}

}  // namespace linalg

// Exact row-echelon form over the rationals, stored fraction-free as
// primitive integer rows with strictly increasing pivot columns.
struct Echelon {
    int ncols = 0;
    std::vector<SparseRowZ> rows;   // rows[t] has pivot column pivot_cols[t]
    std::vector<int> pivot_cols;

    long long rank() const { return static_cast<long long>(rows.size()); }

    // True iff target lies in the row space.
    bool contains(const SparseRowQ& target) const {
        SparseRowZ t = linalg::normalize(target);
        std::size_t hint = 0;
        while (!t.empty()) {
            int lead = t.front().first;
            while (hint < pivot_cols.size() && pivot_cols[hint] < lead) ++hint;
            if (hint == pivot_cols.size() || pivot_cols[hint] != lead) return false;
            t = linalg::combine(rows[hint].front().second, t, t.front().second, rows[hint]);
            linalg::strip_content(t);
        }
        return true;
    }
};

// Fraction-free elimination: columns are processed in ascending order and
// the first row (in input order) leading at a column becomes its pivot.
// Deterministic by construction.
inline Echelon exact_rank(const std::vector<SparseRowQ>& input, int ncols) {
    Echelon ech;
    ech.ncols = ncols;
    // pending[c] holds rows currently leading at column c, FIFO.
    std::map<int, std::vector<SparseRowZ>> pending;
    for (const auto& r : input) {
        SparseRowZ z = linalg::normalize(r);
        if (!z.empty()) pending[z.front().first].push_back(std::move(z));
    }
    while (!pending.empty()) {
        auto it = pending.begin();
        std::vector<SparseRowZ> bucket = std::move(it->second);
        pending.erase(it);
        SparseRowZ pivot = std::move(bucket.front());
        for (std::size_t t = 1; t < bucket.size(); ++t) {
            SparseRowZ red =
                linalg::combine(pivot.front().second, bucket[t], bucket[t].front().second, pivot);
            linalg::strip_content(red);
            if (!red.empty()) pending[red.front().first].push_back(std::move(red));
        }
        ech.pivot_cols.push_back(pivot.front().first);
        ech.rows.push_back(std::move(pivot));
    }
    return ech;
}

// Rank of the same matrix over F_p with p = 2^31 - 1. Specialization can
// only lower the rank, so a full mod-p rank already certifies full rank
// over the rationals; a smaller value certifies nothing. Returns -1 when
// some denominator vanishes mod p and the reduction is unusable.
inline long long modp_rank(const std::vector<SparseRowQ>& input, int ncols) {
    (void)ncols;
    constexpr uint64_t P = 2147483647ull;
    auto powmod = [](uint64_t b, uint64_t e) {
        uint64_t r = 1;
        b %= P;
        while (e) {
            if (e & 1) r = r * b % P;
            b = b * b % P;
            e >>= 1;
        }
        return r;
    };
    auto tomod = [&](const Rat& q) -> std::optional<uint64_t> {
        Int num = q.get_num(), den = q.get_den();
        uint64_t d = mpz_fdiv_ui(den.get_mpz_t(), P);
        if (d == 0) return std::nullopt;
        uint64_t x = mpz_fdiv_ui(num.get_mpz_t(), P);  // already non-negative
        return x * powmod(d, P - 2) % P;
    };
    using Row = std::vector<std::pair<int, uint64_t>>;
    std::map<int, std::vector<Row>> pending;
    for (const auto& r : input) {
        Row z;
        z.reserve(r.size());
        for (const auto& [c, v] : r) {
            auto mv = tomod(v);
            if (!mv) return -1;
            if (*mv != 0) z.emplace_back(c, *mv);
        }
        if (!z.empty()) pending[z.front().first].push_back(std::move(z));
    }
    long long rank = 0;
    while (!pending.empty()) {
        auto it = pending.begin();
        std::vector<Row> bucket = std::move(it->second);
        pending.erase(it);
        Row pivot = std::move(bucket.front());
        uint64_t inv = powmod(pivot.front().second, P - 2);
        for (std::size_t t = 1; t < bucket.size(); ++t) {
            const Row& r = bucket[t];
            uint64_t factor = r.front().second * inv % P;
            Row red;
            red.reserve(r.size() + pivot.size());
            std::size_t i = 0, j = 0;
            while (i < r.size() || j < pivot.size()) {
                if (j == pivot.size() || (i < r.size() && r[i].first < pivot[j].first)) {
                    red.push_back(r[i++]);
                } else if (i == r.size() || pivot[j].first < r[i].first) {
                    uint64_t v = (P - factor * pivot[j].second % P) % P;
                    if (v) red.emplace_back(pivot[j].first, v);
                    ++j;
                } else {
                    uint64_t v = (r[i].second + P - factor * pivot[j].second % P) % P;
                    if (v) red.emplace_back(r[i].first, v);
                    ++i;
                    ++j;
                }
            }
            if (!red.empty()) pending[red.front().first].push_back(std::move(red));
        }
        ++rank;
    }
    return rank;
}

// Solve sum_i c_i row_i = target exactly. Free coefficients are set to
// zero; the result is deterministic. Dense Gauss-Jordan, intended for
// witness extraction on single targets rather than bulk rank work.
inline std::optional<std::vector<Rat>> solve_combination(const std::vector<SparseRowQ>& rows,
                                                         int ncols, const SparseRowQ& target) {
    const int nr = static_cast<int>(rows.size());
    // Equations indexed by column: sum_i rows[i][col] * c_i = target[col].
    std::vector<std::vector<Rat>> M(static_cast<std::size_t>(ncols),
                                    std::vector<Rat>(static_cast<std::size_t>(nr) + 1, Rat(0)));
    for (int i = 0; i < nr; ++i)
        for (const auto& [c, v] : rows[static_cast<std::size_t>(i)])
            M[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)] = v;
    for (const auto& [c, v] : target) M[static_cast<std::size_t>(c)].back() = v;

    std::vector<int> pivot_of_unknown(static_cast<std::size_t>(nr), -1);
    int used = 0;
    for (int u = 0; u < nr && used < ncols; ++u) {
        int prow = -1;
        for (int r = used; r < ncols; ++r)
            if (M[static_cast<std::size_t>(r)][static_cast<std::size_t>(u)] != 0) {
                prow = r;
                break;
            }
        if (prow < 0) continue;
        std::swap(M[static_cast<std::size_t>(prow)], M[static_cast<std::size_t>(used)]);
        Rat inv = Rat(1) / M[static_cast<std::size_t>(used)][static_cast<std::size_t>(u)];
        for (auto& x : M[static_cast<std::size_t>(used)]) x *= inv;
        for (int r = 0; r < ncols; ++r) {
            if (r == used) continue;
            Rat f = M[static_cast<std::size_t>(r)][static_cast<std::size_t>(u)];
            if (f == 0) continue;
            for (int cc = u; cc <= nr; ++cc)
                M[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * M[static_cast<std::size_t>(used)][static_cast<std::size_t>(cc)];
        }
        pivot_of_unknown[static_cast<std::size_t>(u)] = used;
        ++used;
    }
    // Consistency: a zero coefficient row must carry a zero right side.
    for (int r = used; r < ncols; ++r)
        if (M[static_cast<std::size_t>(r)].back() != 0) return std::nullopt;
    std::vector<Rat> c(static_cast<std::size_t>(nr), Rat(0));
    for (int u = 0; u < nr; ++u)
        if (pivot_of_unknown[static_cast<std::size_t>(u)] >= 0)
            c[static_cast<std::size_t>(u)] =
                M[static_cast<std::size_t>(pivot_of_unknown[static_cast<std::size_t>(u)])].back();
    return c;
}

}  // namespace detcert
