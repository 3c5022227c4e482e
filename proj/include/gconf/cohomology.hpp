#pragma once

#include <cstddef>
#include <vector>

#include <json.hpp>

#include "gconf/linalg.hpp"
#include "gconf/model.hpp"

namespace gconf {

/// Cochain on the cells of one dimension, sparse by cell index.
template <class F>
using Cochain = SparseVec<F>;

template <class F>
Cochain<F> coboundary(const CubeComplex& c, int d, const Cochain<F>& u);

/// Cubical cup product of a p-cochain and a q-cochain:
///   (u v)(s) = sum over p-subsets H of the axes of s of
///              sign(H, H^c) u(s with H^c at 0) v(s with H at 1),
/// where sign(H, H^c) is the sign of the shuffle listing H before H^c.
/// Returns the zero cochain when p + q exceeds the complex dimension.
template <class F>
Cochain<F> cup(const CubeComplex& c, int p, const Cochain<F>& u, int q, const Cochain<F>& v);

/// H^* over a field with a fixed basis of cocycle representatives.
///
/// Basis elements are numbered globally by degree: element g lives in
/// degree(g). Products are stored as structure constants.
template <class F>
class CohomologyRing {
public:
    using Value = typename F::value_type;
    using Element = SparseVec<F>; // coordinates over global basis indices

    std::vector<std::size_t> dims;
    std::vector<std::vector<Cochain<F>>> cocycles;
    /// dual_cycles[d][j] pairs to 1 with cocycles[d][j] and 0 with the rest.
    std::vector<std::vector<Cochain<F>>> dual_cycles;

    std::size_t size() const { return degree_.size(); }
    int degree(std::size_t g) const { return degree_[g]; }
    std::size_t offset(int d) const { return offset_[static_cast<std::size_t>(d)]; }
    int top_degree() const { return static_cast<int>(dims.size()) - 1; }

    /// Product of two basis elements.
    const Element& product(std::size_t g, std::size_t h) const { return table_[g][h]; }
    Element multiply(const Element& x, const Element& y) const;
    const Element& unit() const { return unit_; }

    /// Class of a d-cocycle in the basis of H^d (global indices).
    Element coordinates(int d, const Cochain<F>& cocycle) const;

    template <class G>
    friend CohomologyRing<G> compute_ring(const CubeComplex& c);

private:
    std::vector<int> degree_;
    std::vector<std::size_t> offset_;
    std::vector<std::vector<Element>> table_;
    Element unit_;
};

/// Cohomology ring of a connected complex over F.
template <class F>
CohomologyRing<F> compute_ring(const CubeComplex& c);

template <class F>
nlohmann::json to_json(const CohomologyRing<F>& ring);

/// Gram matrix of the pairing H^1 x H^1 -> H^2 when dim H^2 = 1.
template <class F>
std::vector<std::vector<typename F::value_type>> cup_pairing(const CohomologyRing<F>& ring);

extern template Cochain<F2> coboundary<F2>(const CubeComplex&, int, const Cochain<F2>&);
extern template Cochain<Rationals> coboundary<Rationals>(const CubeComplex&, int, const Cochain<Rationals>&);
extern template Cochain<F2> cup<F2>(const CubeComplex&, int, const Cochain<F2>&, int, const Cochain<F2>&);
extern template Cochain<Rationals> cup<Rationals>(const CubeComplex&, int, const Cochain<Rationals>&, int,
                                                  const Cochain<Rationals>&);
extern template class CohomologyRing<F2>;
extern template class CohomologyRing<Rationals>;
extern template CohomologyRing<F2> compute_ring<F2>(const CubeComplex&);
extern template CohomologyRing<Rationals> compute_ring<Rationals>(const CubeComplex&);
extern template nlohmann::json to_json<F2>(const CohomologyRing<F2>&);
extern template nlohmann::json to_json<Rationals>(const CohomologyRing<Rationals>&);
extern template std::vector<std::vector<F2::value_type>> cup_pairing<F2>(const CohomologyRing<F2>&);
extern template std::vector<std::vector<Rationals::value_type>> cup_pairing<Rationals>(const CohomologyRing<Rationals>&);

} // namespace gconf
