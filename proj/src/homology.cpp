#include "gconf/homology.hpp"

#include <stdexcept>

#include "gconf/collapse.hpp"
#include "gconf/error.hpp"

namespace gconf {

Coefficients parse_coefficients(const std::string& tag) {
    if (tag == "z")
        return Coefficients::Integers;
    if (tag == "q")
        return Coefficients::Rationals;
    if (tag == "f2")
        return Coefficients::F2;
    throw Error("unknown coefficient tag '" + tag + "' (expected z, q or f2)");
}

std::string to_string(Coefficients coefficients) {
    switch (coefficients) {
    case Coefficients::Integers:
        return "z";
    case Coefficients::Rationals:
        return "q";
    case Coefficients::F2:
        return "f2";
    }
    return "z";
}

ChainComplex chain_complex(const CubeComplex& c, Coefficients coefficients) {
    ChainComplex cc;
    cc.coefficients = coefficients;
    cc.sizes = c.counts();
    for (int d = 0; d <= c.dimension(); ++d) {
        IntMatrix m;
        m.rows = c.count(d - 1);
        m.cols = c.count(d);
        m.columns.resize(m.cols);
        for (std::size_t i = 0; i < m.cols; ++i) {
            Chain cell;
            cell.dimension = d;
            cell.add(i, 1);
            for (const auto& [row, value] : boundary(c, cell).terms)
                m.columns[i].emplace_back(static_cast<std::uint32_t>(row), static_cast<int>(value));
        }
        cc.boundary.push_back(std::move(m));
    }
    for (int d = 2; d <= c.dimension(); ++d) {
        const IntMatrix& outer = cc.boundary[static_cast<std::size_t>(d - 1)];
        for (const auto& column : cc.boundary[static_cast<std::size_t>(d)].columns) {
            std::map<std::uint32_t, long long> sum;
            for (const auto& [mid, v] : column)
                for (const auto& [row, w] : outer.columns[mid])
                    sum[row] += static_cast<long long>(v) * w;
            for (const auto& [row, total] : sum)
                if (total != 0)
                    throw std::logic_error("boundary of a boundary is nonzero");
        }
    }
    return cc;
}

BettiProfile betti(const ChainComplex& cc) {
    BettiProfile out;
    out.coefficients = cc.coefficients;
    const std::size_t dims = cc.sizes.size();
    std::vector<std::size_t> ranks(dims + 1, 0);
    std::vector<std::vector<mpz_class>> factors(dims + 1);
    for (std::size_t d = 1; d < dims; ++d) {
        const IntMatrix& m = cc.boundary[d];
        switch (cc.coefficients) {
        case Coefficients::Integers:
            factors[d] = invariant_factors(m);
            ranks[d] = factors[d].size();
            break;
        case Coefficients::Rationals:
            ranks[d] = rank<Rationals>(m);
            break;
        case Coefficients::F2:
            ranks[d] = rank<F2>(m);
            break;
        }
    }
    for (std::size_t d = 0; d < dims; ++d) {
        out.betti.push_back(cc.sizes[d] - ranks[d] - ranks[d + 1]);
        out.euler += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(cc.sizes[d]);
        std::vector<mpz_class> torsion;
        for (const mpz_class& f : factors[d + 1])
            if (f > 1)
                torsion.push_back(f);
        out.torsion.push_back(std::move(torsion));
    }
    return out;
}

BettiProfile homology(const CubeComplex& c, Coefficients coefficients, const HomologyOptions& options) {
    bool large = false;
    for (std::size_t n : c.counts())
        large = large || n > options.collapse_threshold;
    if (!large)
        return betti(chain_complex(c, coefficients));
    BettiProfile out = betti(chain_complex(collapse(c).survivor, coefficients));
    // Report against the full model: pad to its dimension and restore its
    // cell-count Euler characteristic (equal by homotopy invariance).
    while (out.betti.size() < c.counts().size()) {
        out.betti.push_back(0);
        out.torsion.emplace_back();
    }
    out.euler = c.euler_characteristic();
    return out;
}

mpz_class betti_wedge_formula(int n, int k, int l) {
    if (n < 1 || k < 0 || l < 0 || k + 2 * l < 3)
        throw Error("wedge formula needs n >= 1 and k + 2l >= 3");
    mpz_class ratio = 1;
    for (int i = k + l; i <= n + k + l - 2; ++i)
        ratio *= i;
    return 1 + ratio * (mpz_class(n) * (k + 2 * l - 2) - (k + l) + 1);
}

bool is_boundary(const CubeComplex& c, const Chain& chain) {
    if (chain.empty())
        return true;
    if (!boundary(c, chain).empty())
        throw Error("chain is not a cycle");
    const int d = chain.dimension;
    if (d + 1 > c.dimension())
        return false;
    ChainComplex cc = chain_complex(c, Coefficients::Rationals);
    ColumnReduction<Rationals> reduction(cc.boundary[static_cast<std::size_t>(d + 1)], false);
    SparseVec<Rationals> x;
    for (const auto& [cell, coefficient] : chain.terms)
        x.emplace_back(static_cast<std::uint32_t>(cell), Rationals::from_int(coefficient));
    return reduction.reduce(std::move(x)).empty();
}

nlohmann::json to_json(const BettiProfile& profile) {
    nlohmann::json torsion = nlohmann::json::array();
    for (const auto& level : profile.torsion) {
        nlohmann::json row = nlohmann::json::array();
        for (const mpz_class& f : level) {
            if (f.fits_slong_p())
                row.push_back(f.get_si());
            else
                row.push_back(f.get_str());
        }
        torsion.push_back(std::move(row));
    }
    return {{"coefficients", to_string(profile.coefficients)},
            {"betti", profile.betti},
            {"torsion", torsion},
            {"euler", profile.euler}};
}

} // namespace gconf
