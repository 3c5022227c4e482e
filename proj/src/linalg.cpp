#include "gconf/linalg.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace gconf {

IntMatrix IntMatrix::transpose() const {
    IntMatrix t;
    t.rows = cols;
    t.cols = rows;
    t.columns.resize(rows);
    for (std::size_t j = 0; j < cols; ++j)
        for (const auto& [row, value] : columns[j])
            t.columns[row].emplace_back(static_cast<std::uint32_t>(j), value);
    return t;
}

namespace {

using DenseMatrix = std::vector<std::vector<mpz_class>>;

std::vector<mpz_class> dense_smith(DenseMatrix a) {
    std::vector<mpz_class> out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
        for (;;) {
            // Smallest nonzero magnitude in the trailing block becomes the pivot.
            std::size_t pr = rows;
            std::size_t pc = cols;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (sgn(a[i][j]) != 0 && (pr == rows || mpz_cmpabs(a[i][j].get_mpz_t(), a[pr][pc].get_mpz_t()) < 0)) {
                        pr = i;
                        pc = j;
                    }
            if (pr == rows)
                return out;
            std::swap(a[t], a[pr]);
            for (auto& row : a)
                std::swap(row[t], row[pc]);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (sgn(a[i][t]) == 0)
                    continue;
                mpz_class q = a[i][t] / a[t][t];
                for (std::size_t j = t; j < cols; ++j)
                    a[i][j] -= q * a[t][j];
                if (sgn(a[i][t]) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (sgn(a[t][j]) == 0)
                    continue;
                mpz_class q = a[t][j] / a[t][t];
                for (std::size_t i = t; i < rows; ++i)
                    a[i][j] -= q * a[i][t];
                if (sgn(a[t][j]) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // Enforce divisibility: fold a row with a non-multiple into row t.
            std::size_t bad = rows;
            for (std::size_t i = t + 1; i < rows && bad == rows; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == rows)
                break;
            for (std::size_t j = t; j < cols; ++j)
                a[t][j] += a[bad][j];
        }
        out.push_back(abs(a[t][t]));
    }
    return out;
}

} // namespace

std::vector<mpz_class> invariant_factors(const IntMatrix& m) {
    std::vector<std::map<std::uint32_t, mpz_class>> rows(m.rows);
    std::vector<std::set<std::uint32_t>> cols(m.cols);
    for (std::size_t j = 0; j < m.cols; ++j) {
        for (const auto& [r, value] : m.columns[j]) {
            if (value == 0)
                continue;
            rows[r][static_cast<std::uint32_t>(j)] += value;
            cols[j].insert(r);
        }
    }

    std::size_t units = 0;
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < m.cols; ++c) {
            if (cols[c].empty())
                continue;
            std::uint32_t best = 0;
            std::size_t best_len = static_cast<std::size_t>(-1);
            for (std::uint32_t r : cols[c]) {
                const mpz_class& v = rows[r].at(static_cast<std::uint32_t>(c));
                if (mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0 && rows[r].size() < best_len) {
                    best = r;
                    best_len = rows[r].size();
                }
            }
            if (best_len == static_cast<std::size_t>(-1))
                continue;
            const std::map<std::uint32_t, mpz_class> pivot_row = rows[best];
            const mpz_class pivot = pivot_row.at(static_cast<std::uint32_t>(c));
            std::vector<std::uint32_t> targets(cols[c].begin(), cols[c].end());
            for (std::uint32_t r : targets) {
                if (r == best)
                    continue;
                mpz_class f = rows[r].at(static_cast<std::uint32_t>(c)) * pivot; // pivot is +-1
                for (const auto& [j, v] : pivot_row) {
                    auto [it, inserted] = rows[r].try_emplace(j, 0);
                    it->second -= f * v;
                    if (sgn(it->second) == 0) {
                        rows[r].erase(it);
                        cols[j].erase(r);
                    } else if (inserted) {
                        cols[j].insert(r);
                    }
                }
            }
            for (const auto& [j, v] : pivot_row)
                cols[j].erase(best);
            rows[best].clear();
            ++units;
            progress = true;
        }
    }

    std::vector<std::uint32_t> live_rows;
    std::vector<std::uint32_t> live_cols;
    for (std::size_t r = 0; r < m.rows; ++r)
        if (!rows[r].empty())
            live_rows.push_back(static_cast<std::uint32_t>(r));
    std::vector<std::size_t> col_pos(m.cols, static_cast<std::size_t>(-1));
    for (std::size_t c = 0; c < m.cols; ++c)
        if (!cols[c].empty()) {
            col_pos[c] = live_cols.size();
            live_cols.push_back(static_cast<std::uint32_t>(c));
        }
    DenseMatrix dense(live_rows.size(), std::vector<mpz_class>(live_cols.size(), 0));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& [j, v] : rows[live_rows[i]])
            dense[i][col_pos[j]] = v;

    std::vector<mpz_class> factors(units, mpz_class(1));
    for (mpz_class& f : dense_smith(std::move(dense)))
        factors.push_back(std::move(f));
    return factors;
}

} // namespace gconf
