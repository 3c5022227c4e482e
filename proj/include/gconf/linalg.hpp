#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

namespace gconf {

/// The two-element field.
struct F2 {
    using value_type = std::uint8_t;
    static constexpr const char* name = "f2";

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_int(long long x) { return static_cast<value_type>(x & 1); }
    static bool is_zero(value_type x) { return x == 0; }
    static value_type add(value_type a, value_type b) { return a ^ b; }
    static value_type sub(value_type a, value_type b) { return a ^ b; }
    static value_type mul(value_type a, value_type b) { return a & b; }
    static value_type neg(value_type a) { return a; }
    static value_type inv(value_type a) {
        if (a == 0)
            throw std::domain_error("division by zero in F2");
        return 1;
    }
    static nlohmann::json to_json(value_type a) { return static_cast<int>(a); }
};

/// Exact rational numbers.
struct Rationals {
    using value_type = mpq_class;
    static constexpr const char* name = "q";

    static value_type zero() { return 0; }
    static value_type one() { return 1; }
    static value_type from_int(long long x) { return mpq_class(mpz_class(static_cast<long>(x))); }
    static bool is_zero(const value_type& x) { return sgn(x) == 0; }
    static value_type add(const value_type& a, const value_type& b) { return a + b; }
    static value_type sub(const value_type& a, const value_type& b) { return a - b; }
    static value_type mul(const value_type& a, const value_type& b) { return a * b; }
    static value_type neg(const value_type& a) { return -a; }
    static value_type inv(const value_type& a) {
        if (sgn(a) == 0)
            throw std::domain_error("division by zero in Q");
        return 1 / a;
    }
    static nlohmann::json to_json(const value_type& a) { return a.get_str(); }
};

/// Sparse integer matrix stored by columns; each column is sorted by row.
struct IntMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<std::vector<std::pair<std::uint32_t, int>>> columns;

    IntMatrix transpose() const;
};

template <class F>
using SparseVec = std::vector<std::pair<std::uint32_t, typename F::value_type>>;

/// y <- y + s * x for index-sorted sparse vectors.
template <class F>
void axpy(SparseVec<F>& y, const typename F::value_type& s, const SparseVec<F>& x) {
    if (F::is_zero(s) || x.empty())
        return;
    SparseVec<F> out;
    out.reserve(y.size() + x.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < y.size() || j < x.size()) {
        if (j == x.size() || (i < y.size() && y[i].first < x[j].first)) {
            out.push_back(std::move(y[i++]));
        } else if (i == y.size() || x[j].first < y[i].first) {
            out.emplace_back(x[j].first, F::mul(s, x[j].second));
            ++j;
        } else {
            auto v = F::add(y[i].second, F::mul(s, x[j].second));
            if (!F::is_zero(v))
                out.emplace_back(y[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    y = std::move(out);
}

template <class F>
SparseVec<F> lift(const std::vector<std::pair<std::uint32_t, int>>& column) {
    SparseVec<F> out;
    for (const auto& [row, value] : column) {
        auto v = F::from_int(value);
        if (!F::is_zero(v))
            out.emplace_back(row, std::move(v));
    }
    return out;
}

template <class F>
typename F::value_type dot(const SparseVec<F>& x, const SparseVec<F>& y) {
    auto sum = F::zero();
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < x.size() && j < y.size()) {
        if (x[i].first < y[j].first) {
            ++i;
        } else if (y[j].first < x[i].first) {
            ++j;
        } else {
            sum = F::add(sum, F::mul(x[i].second, y[j].second));
            ++i;
            ++j;
        }
    }
    return sum;
}

/// Left-to-right column reduction over a field with the lowest nonzero row
/// as pivot. With `track` set, records V such that R = M V; the V-columns
/// of zero R-columns form a basis of the kernel.
template <class F>
class ColumnReduction {
public:
    ColumnReduction(const IntMatrix& m, bool track) : ColumnReduction(lift_all(m), m.rows, track) {}

    ColumnReduction(std::vector<SparseVec<F>> columns, std::size_t rows, bool track)
        : rows_(rows), reduced_(columns.size()), pivot_col_(rows, kNone) {
        if (track)
            basis_.resize(columns.size());
        for (std::size_t j = 0; j < columns.size(); ++j) {
            SparseVec<F> col = std::move(columns[j]);
            SparseVec<F> v;
            if (track)
                v.emplace_back(static_cast<std::uint32_t>(j), F::one());
            while (!col.empty()) {
                std::size_t k = pivot_col_[col.back().first];
                if (k == kNone)
                    break;
                const SparseVec<F>& other = reduced_[k];
                auto factor = F::neg(F::mul(col.back().second, F::inv(other.back().second)));
                axpy<F>(col, factor, other);
                if (track)
                    axpy<F>(v, factor, basis_[k]);
            }
            if (!col.empty()) {
                pivot_col_[col.back().first] = j;
                ++rank_;
            }
            reduced_[j] = std::move(col);
            if (track)
                basis_[j] = std::move(v);
        }
    }

    std::size_t rank() const { return rank_; }
    bool zero_column(std::size_t j) const { return reduced_[j].empty(); }
    bool pivot_row(std::size_t r) const { return pivot_col_[r] != kNone; }
    const SparseVec<F>& reduced(std::size_t j) const { return reduced_[j]; }
    const SparseVec<F>& basis(std::size_t j) const { return basis_.at(j); }

    /// Reduces `x` against the pivot columns; zero iff x lies in the column span.
    SparseVec<F> reduce(SparseVec<F> x) const {
        while (!x.empty()) {
            std::size_t k = pivot_col_[x.back().first];
            if (k == kNone)
                break;
            const SparseVec<F>& other = reduced_[k];
            axpy<F>(x, F::neg(F::mul(x.back().second, F::inv(other.back().second))), other);
        }
        return x;
    }

private:
    static std::vector<SparseVec<F>> lift_all(const IntMatrix& m) {
        std::vector<SparseVec<F>> out;
        out.reserve(m.cols);
        for (const auto& column : m.columns)
            out.push_back(lift<F>(column));
        return out;
    }

    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);
    std::size_t rows_;
    std::size_t rank_ = 0;
    std::vector<SparseVec<F>> reduced_;
    std::vector<SparseVec<F>> basis_;
    std::vector<std::size_t> pivot_col_;
};

template <class F>
std::size_t rank(const IntMatrix& m) {
    return ColumnReduction<F>(m, false).rank();
}

/// Inverse of a square dense matrix over F; throws if singular.
template <class F>
std::vector<std::vector<typename F::value_type>> invert(std::vector<std::vector<typename F::value_type>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<typename F::value_type>> inv(n, std::vector<typename F::value_type>(n, F::zero()));
    for (std::size_t i = 0; i < n; ++i)
        inv[i][i] = F::one();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && F::is_zero(a[p][c]))
            ++p;
        if (p == n)
            throw std::domain_error("matrix is singular");
        std::swap(a[p], a[c]);
        std::swap(inv[p], inv[c]);
        auto s = F::inv(a[c][c]);
        std::vector<std::size_t> live_a;
        std::vector<std::size_t> live_inv;
        for (std::size_t j = 0; j < n; ++j) {
            if (!F::is_zero(a[c][j])) {
                a[c][j] = F::mul(a[c][j], s);
                live_a.push_back(j);
            }
            if (!F::is_zero(inv[c][j])) {
                inv[c][j] = F::mul(inv[c][j], s);
                live_inv.push_back(j);
            }
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == c || F::is_zero(a[r][c]))
                continue;
            auto f = a[r][c];
            for (std::size_t j : live_a)
                a[r][j] = F::sub(a[r][j], F::mul(f, a[c][j]));
            for (std::size_t j : live_inv)
                inv[r][j] = F::sub(inv[r][j], F::mul(f, inv[c][j]));
        }
    }
    return inv;
}

/// Nonzero invariant factors of an integer matrix (Smith normal form), in
/// divisibility order. Unit pivots are eliminated sparsely first; the rest
/// is diagonalized densely with smallest-magnitude pivots.
std::vector<mpz_class> invariant_factors(const IntMatrix& m);

} // namespace gconf
