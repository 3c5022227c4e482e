#include "gconf/cohomology.hpp"

#include <bit>
#include <stdexcept>

#include "gconf/error.hpp"
#include "gconf/homology.hpp"

namespace gconf {

namespace {

// Position of each cell in a sparse cochain, -1 where the value is zero.
template <class F>
std::vector<std::int32_t> positions(const Cochain<F>& u, std::size_t size) {
    std::vector<std::int32_t> out(size, -1);
    for (std::size_t k = 0; k < u.size(); ++k) {
        if (u[k].first >= size)
            throw Error("cochain refers to a cell outside the complex");
        if (!F::is_zero(u[k].second))
            out[u[k].first] = static_cast<std::int32_t>(k);
    }
    return out;
}

IntMatrix empty_matrix(std::size_t rows) {
    IntMatrix m;
    m.rows = rows;
    return m;
}

} // namespace

template <class F>
Cochain<F> coboundary(const CubeComplex& c, int d, const Cochain<F>& u) {
    Cochain<F> out;
    if (d + 1 > c.dimension())
        return out;
    auto at = positions<F>(u, c.count(d));
    auto value = [&](std::size_t cell) { return at[cell] < 0 ? F::zero() : u[static_cast<std::size_t>(at[cell])].second; };
    for (std::size_t i = 0; i < c.count(d + 1); ++i) {
        auto sum = F::zero();
        for (int axis = 0; axis <= d; ++axis) {
            auto diff = F::sub(value(c.face(d + 1, i, axis, 1)), value(c.face(d + 1, i, axis, 0)));
            sum = axis % 2 == 0 ? F::sub(sum, diff) : F::add(sum, diff);
        }
        if (!F::is_zero(sum))
            out.emplace_back(static_cast<std::uint32_t>(i), std::move(sum));
    }
    return out;
}

template <class F>
Cochain<F> cup(const CubeComplex& c, int p, const Cochain<F>& u, int q, const Cochain<F>& v) {
    Cochain<F> out;
    const int r = p + q;
    if (p < 0 || q < 0 || r > c.dimension())
        return out;
    auto uu = positions<F>(u, c.count(p));
    auto vv = positions<F>(v, c.count(q));

    struct Split {
        std::vector<int> front; // ends for the u-face
        std::vector<int> back;  // ends for the v-face
        bool negative;
    };
    std::vector<Split> splits;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        if (std::popcount(mask) != p)
            continue;
        Split s{std::vector<int>(static_cast<std::size_t>(r)), std::vector<int>(static_cast<std::size_t>(r)), false};
        int inversions = 0;
        for (int a = 0; a < r; ++a) {
            bool in_h = (mask >> a) & 1u;
            s.front[static_cast<std::size_t>(a)] = in_h ? -1 : 0;
            s.back[static_cast<std::size_t>(a)] = in_h ? 1 : -1;
            if (in_h)
                for (int b = 0; b < a; ++b)
                    inversions += ((mask >> b) & 1u) ? 0 : 1;
        }
        s.negative = inversions % 2 == 1;
        splits.push_back(std::move(s));
    }

    for (std::size_t i = 0; i < c.count(r); ++i) {
        auto sum = F::zero();
        for (const Split& s : splits) {
            std::int32_t a = uu[c.multi_face(r, i, s.front)];
            if (a < 0)
                continue;
            std::int32_t b = vv[c.multi_face(r, i, s.back)];
            if (b < 0)
                continue;
            auto term = F::mul(u[static_cast<std::size_t>(a)].second, v[static_cast<std::size_t>(b)].second);
            sum = s.negative ? F::sub(sum, term) : F::add(sum, term);
        }
        if (!F::is_zero(sum))
            out.emplace_back(static_cast<std::uint32_t>(i), std::move(sum));
    }
    return out;
}

template <class F>
typename CohomologyRing<F>::Element CohomologyRing<F>::multiply(const Element& x, const Element& y) const {
    Element out;
    for (const auto& [g, a] : x)
        for (const auto& [h, b] : y)
            axpy<F>(out, F::mul(a, b), table_[g][h]);
    return out;
}

template <class F>
typename CohomologyRing<F>::Element CohomologyRing<F>::coordinates(int d, const Cochain<F>& cocycle) const {
    Element out;
    if (d < 0 || d > top_degree())
        return out;
    const auto& duals = dual_cycles[static_cast<std::size_t>(d)];
    for (std::size_t j = 0; j < duals.size(); ++j) {
        auto value = dot<F>(cocycle, duals[j]);
        if (!F::is_zero(value))
            out.emplace_back(static_cast<std::uint32_t>(offset(d) + j), std::move(value));
    }
    return out;
}

template <class F>
CohomologyRing<F> compute_ring(const CubeComplex& c) {
    if (c.count(0) == 0 || components(c) != 1)
        throw Error("cohomology ring requires a connected complex");
    const int top = c.dimension();
    ChainComplex cc = chain_complex(c, Coefficients::Integers);
    cc.boundary.push_back(empty_matrix(c.count(top)));

    CohomologyRing<F> ring;
    for (int d = 0; d <= top; ++d) {
        const IntMatrix& down = cc.boundary[static_cast<std::size_t>(d)];
        const IntMatrix& up = cc.boundary[static_cast<std::size_t>(d + 1)];
        ColumnReduction<F> cycles(down, true);
        ColumnReduction<F> boundaries(up, false);
        ColumnReduction<F> cocycles(up.transpose(), true);
        ColumnReduction<F> coboundaries(down.transpose(), false);

        std::vector<Cochain<F>> z;
        std::vector<Cochain<F>> xi;
        for (std::size_t j = 0; j < c.count(d); ++j) {
            if (cycles.zero_column(j) && !boundaries.pivot_row(j))
                z.push_back(cycles.basis(j));
            if (cocycles.zero_column(j) && !coboundaries.pivot_row(j))
                xi.push_back(cocycles.basis(j));
        }
        if (z.size() != xi.size())
            throw std::logic_error("homology and cohomology dimensions differ");

        const std::size_t n = z.size();
        std::vector<std::vector<typename F::value_type>> pairing(n, std::vector<typename F::value_type>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k)
                pairing[i][k] = dot<F>(xi[i], z[k]);
        auto inverse = invert<F>(std::move(pairing));
        std::vector<Cochain<F>> duals(n);
        std::vector<typename F::value_type> dense(c.count(d), F::zero());
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (F::is_zero(inverse[k][j]))
                    continue;
                for (const auto& [cell, value] : z[k])
                    dense[cell] = F::add(dense[cell], F::mul(inverse[k][j], value));
            }
            for (std::size_t cell = 0; cell < dense.size(); ++cell) {
                if (!F::is_zero(dense[cell]))
                    duals[j].emplace_back(static_cast<std::uint32_t>(cell), dense[cell]);
                dense[cell] = F::zero();
            }
        }

        ring.dims.push_back(n);
        ring.offset_.push_back(ring.degree_.size());
        for (std::size_t j = 0; j < n; ++j)
            ring.degree_.push_back(d);
        ring.cocycles.push_back(std::move(xi));
        ring.dual_cycles.push_back(std::move(duals));
    }

    Cochain<F> ones;
    for (std::size_t i = 0; i < c.count(0); ++i)
        ones.emplace_back(static_cast<std::uint32_t>(i), F::one());
    ring.unit_ = ring.coordinates(0, ones);

    const std::size_t total = ring.size();
    ring.table_.assign(total, std::vector<typename CohomologyRing<F>::Element>(total));
    for (std::size_t g = 0; g < total; ++g) {
        const int dg = ring.degree_[g];
        const auto& u = ring.cocycles[static_cast<std::size_t>(dg)][g - ring.offset(dg)];
        for (std::size_t h = 0; h < total; ++h) {
            const int dh = ring.degree_[h];
            if (dg + dh > top)
                continue;
            const auto& v = ring.cocycles[static_cast<std::size_t>(dh)][h - ring.offset(dh)];
            ring.table_[g][h] = ring.coordinates(dg + dh, cup<F>(c, dg, u, dh, v));
        }
    }
    return ring;
}

template <class F>
nlohmann::json to_json(const CohomologyRing<F>& ring) {
    nlohmann::json products = nlohmann::json::array();
    for (std::size_t g = 0; g < ring.size(); ++g)
        for (std::size_t h = 0; h < ring.size(); ++h)
            for (const auto& [k, value] : ring.product(g, h))
                products.push_back({g, h, k, F::to_json(value)});
    nlohmann::json unit = nlohmann::json::array();
    for (const auto& [g, value] : ring.unit())
        unit.push_back({g, F::to_json(value)});
    return {{"field", F::name}, {"dims", ring.dims}, {"unit", unit}, {"products", products}};
}

template <class F>
std::vector<std::vector<typename F::value_type>> cup_pairing(const CohomologyRing<F>& ring) {
    if (ring.dims.size() < 3 || ring.dims[2] != 1)
        throw Error("cup pairing needs a one-dimensional H^2");
    const std::size_t n = ring.dims[1];
    std::vector<std::vector<typename F::value_type>> gram(n, std::vector<typename F::value_type>(n, F::zero()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (const auto& [k, value] : ring.product(ring.offset(1) + i, ring.offset(1) + j))
                if (k == ring.offset(2))
                    gram[i][j] = value;
    return gram;
}

template Cochain<F2> coboundary<F2>(const CubeComplex&, int, const Cochain<F2>&);
template Cochain<Rationals> coboundary<Rationals>(const CubeComplex&, int, const Cochain<Rationals>&);
template Cochain<F2> cup<F2>(const CubeComplex&, int, const Cochain<F2>&, int, const Cochain<F2>&);
template Cochain<Rationals> cup<Rationals>(const CubeComplex&, int, const Cochain<Rationals>&, int,
                                           const Cochain<Rationals>&);
template class CohomologyRing<F2>;
template class CohomologyRing<Rationals>;
template CohomologyRing<F2> compute_ring<F2>(const CubeComplex&);
template CohomologyRing<Rationals> compute_ring<Rationals>(const CubeComplex&);
template nlohmann::json to_json<F2>(const CohomologyRing<F2>&);
template nlohmann::json to_json<Rationals>(const CohomologyRing<Rationals>&);
template std::vector<std::vector<F2::value_type>> cup_pairing<F2>(const CohomologyRing<F2>&);
template std::vector<std::vector<Rationals::value_type>> cup_pairing<Rationals>(const CohomologyRing<Rationals>&);

} // namespace gconf
