#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gconf/cohomology.hpp"
#include "gconf/collapse.hpp"
#include "gconf/graph.hpp"

namespace gconf {

/// Element of H^* (x) H^*, keyed by pairs of global basis indices.
template <class F>
using Tensor = std::map<std::pair<std::uint32_t, std::uint32_t>, typename F::value_type>;

/// Product in H^* (x) H^*: (a (x) b)(c (x) d) = (-1)^{|b||c|} ac (x) bd.
template <class F>
Tensor<F> tensor_multiply(const CohomologyRing<F>& ring, const Tensor<F>& x, const Tensor<F>& y);

/// x (x) 1 - 1 (x) x.
template <class F>
Tensor<F> zero_divisor(const CohomologyRing<F>& ring, const typename CohomologyRing<F>::Element& x);

/// Image under the cup product H^* (x) H^* -> H^*.
template <class F>
typename CohomologyRing<F>::Element multiplication_map(const CohomologyRing<F>& ring, const Tensor<F>& t);

template <class F>
struct ZclCertificate {
    /// Each factor x stands for the zero-divisor x (x) 1 - 1 (x) x.
    std::vector<typename CohomologyRing<F>::Element> factors;
    Tensor<F> product;
};

template <class F>
struct ZclResult {
    std::size_t length = 0;
    ZclCertificate<F> certificate;
    bool exhausted = false;
    std::size_t products = 0;
    std::size_t candidates = 0;
};

struct ZclOptions {
    std::size_t max_candidates = 2000;
    /// Maximum number of tensor products evaluated by the search.
    std::size_t budget = 2000000;
};

/// Longest nonzero product of zero-divisors x (x) 1 - 1 (x) x found by
/// depth-first search. A first pass looks for length 2 * top among degree-1
/// classes outside the annihilator of H^1; if it finishes, the second pass
/// over the degree-1 basis, sums of pairs of degree-1 basis elements and
/// the degree-2 basis aims one lower.
template <class F>
ZclResult<F> zcl_lower_bound(const CohomologyRing<F>& ring, const ZclOptions& options = {});

/// Recomputes the product of the factors, compares it with the stored
/// product, checks it is nonzero and that every factor is a zero-divisor.
template <class F>
bool verify_certificate(const CohomologyRing<F>& ring, const ZclCertificate<F>& certificate);

template <class F>
nlohmann::json to_json(const ZclCertificate<F>& certificate);

/// Closed-form prediction attached to a report.
struct TcPrediction {
    enum class Kind { Exact, Interval, Infinite, Unknown };
    Kind kind = Kind::Unknown;
    int low = 0;
    int high = 0;
    std::string theorem;
};

/// 2 min{floor(n/2), v3} for trees not homeomorphic to an interval or Y.
int oracle_tc_tree(int n, int v3);
/// 2 v3 for n >= 2 v3; for graphs homeomorphic to Y, 1 at n = 2 and 2 beyond.
int oracle_tc_fully_articulated(int n, int v3, bool y_shaped = false);
/// Banana graph B_k with n particles.
TcPrediction oracle_tc_banana(int n, int k);
/// 2 min{floor(n/2), m} <= TC <= 2 min{n, v3} with m >= 2 articulations, n >= 4.
std::pair<int, int> oracle_tc_articulation_bounds(int n, int m, int v3);

/// Closed-form prediction for a connected sink-free graph, if one applies.
std::optional<TcPrediction> predict_tc(const Graph& g, int n);

struct TcOptions {
    CollapsePolicy policy;
    ZclOptions zcl;
    std::string space;
};

struct TcReport {
    enum class Verdict { Exact, Interval, Infinite };
    std::string space;
    int particles = 0;
    Verdict verdict = Verdict::Interval;
    int lower = 0;
    /// "zcl-f2", "zcl-q", "graph-formula" or "disconnected".
    std::string lower_kind;
    int upper = 0;
    /// "graph-formula" or "2*homotopy-dimension:<source>".
    std::string upper_kind;
    std::optional<TcPrediction> oracle;
    bool budget_exhausted = false;
    std::vector<std::size_t> model_counts;
    std::vector<std::size_t> survivor_counts;
    std::vector<std::size_t> betti;
    int components = 0;
    std::size_t zcl_f2 = 0;
    std::size_t zcl_q = 0;
    nlohmann::json certificate;
};

/// Bounds on TC(Conf_n(G, W)); requires a connected graph.
TcReport tc_report(const Graph& g, int n, const TcOptions& options = {});

std::string to_string(TcReport::Verdict verdict);
nlohmann::json to_json(const TcPrediction& prediction);
nlohmann::json to_json(const TcReport& report);

} // namespace gconf
