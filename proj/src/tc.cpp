#include "gconf/tc.hpp"

#include <algorithm>
#include <functional>

#include "gconf/error.hpp"
#include "gconf/homology.hpp"

namespace gconf {

template <class F>
Tensor<F> tensor_multiply(const CohomologyRing<F>& ring, const Tensor<F>& x, const Tensor<F>& y) {
    Tensor<F> out;
    for (const auto& [ab, s] : x) {
        for (const auto& [cd, t] : y) {
            const auto& ac = ring.product(ab.first, cd.first);
            if (ac.empty())
                continue;
            const auto& bd = ring.product(ab.second, cd.second);
            if (bd.empty())
                continue;
            auto st = F::mul(s, t);
            if ((ring.degree(ab.second) * ring.degree(cd.first)) % 2 == 1)
                st = F::neg(st);
            for (const auto& [k, alpha] : ac) {
                auto sa = F::mul(st, alpha);
                for (const auto& [l, beta] : bd) {
                    auto [it, inserted] = out.try_emplace({k, l}, F::zero());
                    it->second = F::add(it->second, F::mul(sa, beta));
                }
            }
        }
    }
    std::erase_if(out, [](const auto& item) { return F::is_zero(item.second); });
    return out;
}

template <class F>
Tensor<F> zero_divisor(const CohomologyRing<F>& ring, const typename CohomologyRing<F>::Element& x) {
    Tensor<F> out;
    for (const auto& [g, a] : x) {
        for (const auto& [u, b] : ring.unit()) {
            auto ab = F::mul(a, b);
            auto& left = out.try_emplace({g, u}, F::zero()).first->second;
            left = F::add(left, ab);
            auto& right = out.try_emplace({u, g}, F::zero()).first->second;
            right = F::sub(right, ab);
        }
    }
    std::erase_if(out, [](const auto& item) { return F::is_zero(item.second); });
    return out;
}

template <class F>
typename CohomologyRing<F>::Element multiplication_map(const CohomologyRing<F>& ring, const Tensor<F>& t) {
    typename CohomologyRing<F>::Element out;
    for (const auto& [ab, s] : t)
        axpy<F>(out, s, ring.product(ab.first, ab.second));
    return out;
}

namespace {

template <class F>
Tensor<F> unit_tensor(const CohomologyRing<F>& ring) {
    Tensor<F> out;
    for (const auto& [g, a] : ring.unit())
        for (const auto& [h, b] : ring.unit())
            out[{g, h}] = F::mul(a, b);
    return out;
}

template <class F>
typename CohomologyRing<F>::Element basis_element(std::size_t g) {
    return {{static_cast<std::uint32_t>(g), F::one()}};
}

} // namespace

template <class F>
ZclResult<F> zcl_lower_bound(const CohomologyRing<F>& ring, const ZclOptions& options) {
    using Element = typename CohomologyRing<F>::Element;
    const int top = std::max(ring.top_degree(), 0);
    std::size_t target = 2 * static_cast<std::size_t>(top);
    const std::size_t d1 = ring.dims.size() > 1 ? ring.dims[1] : 0;
    const std::size_t d2 = ring.dims.size() > 2 ? ring.dims[2] : 0;

    ZclResult<F> result;
    result.certificate.product = unit_tensor(ring);
    std::vector<std::size_t> chosen;

    auto run = [&](const std::vector<Element>& candidates) {
        std::vector<Tensor<F>> bars;
        for (const Element& x : candidates)
            bars.push_back(zero_divisor(ring, x));
        result.candidates += candidates.size();
        std::function<bool(std::size_t, const Tensor<F>&)> search = [&](std::size_t start, const Tensor<F>& partial) {
            for (std::size_t i = start; i < bars.size(); ++i) {
                if (result.products >= options.budget) {
                    result.exhausted = true;
                    return true;
                }
                Tensor<F> next = tensor_multiply(ring, partial, bars[i]);
                ++result.products;
                if (next.empty())
                    continue;
                chosen.push_back(i);
                if (chosen.size() > result.length) {
                    result.length = chosen.size();
                    result.certificate.factors.clear();
                    for (std::size_t c : chosen)
                        result.certificate.factors.push_back(candidates[c]);
                    result.certificate.product = next;
                }
                if (result.length >= target || search(i, next))
                    return true;
                chosen.pop_back();
            }
            return false;
        };
        chosen.clear();
        search(0, unit_tensor(ring));
    };
    if (target == 0)
        return result;

    // A product of 2 * top zero-divisors is nonzero only if every factor
    // has degree 1 and multiplies nontrivially into H^2, so the first pass
    // uses a complement of the annihilator of H^1 inside H^1.
    if (top >= 2 && d1 > 0 && d2 > 0) {
        std::vector<SparseVec<F>> columns(d1);
        for (std::size_t i = 0; i < d1; ++i)
            for (std::size_t j = 0; j < d1; ++j)
                for (const auto& [k, value] : ring.product(ring.offset(1) + i, ring.offset(1) + j))
                    columns[i].emplace_back(static_cast<std::uint32_t>(j * d2 + (k - ring.offset(2))), value);
        ColumnReduction<F> reduction(std::move(columns), d1 * d2, false);
        std::vector<Element> active;
        for (std::size_t i = 0; i < d1; ++i)
            if (!reduction.zero_column(i))
                active.push_back(basis_element<F>(ring.offset(1) + i));
        const bool complete = active.size() <= options.max_candidates;
        active.resize(std::min(active.size(), options.max_candidates));
        run(active);
        if (result.length >= target || result.exhausted)
            return result;
        // A complete first pass rules out 2 * top.
        if (complete)
            --target;
    }
    if (result.length >= target)
        return result;

    std::vector<Element> candidates;
    auto room = [&] { return candidates.size() < options.max_candidates; };
    for (std::size_t i = 0; i < d1 && room(); ++i)
        candidates.push_back(basis_element<F>(ring.offset(1) + i));
    for (std::size_t i = 0; i < d1 && room(); ++i)
        for (std::size_t j = i + 1; j < d1 && room(); ++j)
            candidates.push_back({{static_cast<std::uint32_t>(ring.offset(1) + i), F::one()},
                                  {static_cast<std::uint32_t>(ring.offset(1) + j), F::one()}});
    for (std::size_t i = 0; i < d2 && room(); ++i)
        candidates.push_back(basis_element<F>(ring.offset(2) + i));
    run(candidates);
    return result;
}

template <class F>
bool verify_certificate(const CohomologyRing<F>& ring, const ZclCertificate<F>& certificate) {
    Tensor<F> product = unit_tensor(ring);
    for (const auto& x : certificate.factors) {
        for (const auto& [g, value] : x)
            if (g >= ring.size() || F::is_zero(value))
                return false;
        Tensor<F> bar = zero_divisor(ring, x);
        if (!multiplication_map(ring, bar).empty())
            return false;
        product = tensor_multiply(ring, product, bar);
    }
    return !product.empty() && product == certificate.product;
}

template <class F>
nlohmann::json to_json(const ZclCertificate<F>& certificate) {
    nlohmann::json factors = nlohmann::json::array();
    for (const auto& x : certificate.factors) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [g, value] : x)
            terms.push_back({g, F::to_json(value)});
        factors.push_back(std::move(terms));
    }
    nlohmann::json product = nlohmann::json::array();
    for (const auto& [ab, value] : certificate.product)
        product.push_back({ab.first, ab.second, F::to_json(value)});
    return {{"field", F::name}, {"length", certificate.factors.size()}, {"factors", factors}, {"product", product}};
}

int oracle_tc_tree(int n, int v3) {
    if (n < 1)
        throw Error("particle count must be at least 1");
    if (v3 < 1)
        throw Error("a tree without essential vertices is an interval");
    return 2 * std::min(n / 2, v3);
}

int oracle_tc_fully_articulated(int n, int v3, bool y_shaped) {
    if (y_shaped) {
        if (n < 2)
            throw Error("the Y case covers n >= 2");
        return n == 2 ? 1 : 2;
    }
    if (v3 < 1)
        throw Error("needs at least one essential vertex");
    if (n < 2 * v3)
        throw Error("needs n >= 2 |V_{>=3}|");
    return 2 * v3;
}

TcPrediction oracle_tc_banana(int n, int k) {
    if (n < 1 || k < 1)
        throw Error("banana oracle needs n, k >= 1");
    TcPrediction p;
    p.theorem = "banana";
    auto exact = [&](int value) {
        p.kind = TcPrediction::Kind::Exact;
        p.low = p.high = value;
        return p;
    };
    if (k <= 2) {
        if (n > k) {
            p.kind = TcPrediction::Kind::Infinite;
            return p;
        }
        return exact(k == 1 ? 0 : 1);
    }
    if (k >= 4 && n >= 3)
        return exact(4);
    if (n <= 2 || (k == 3 && n == 3))
        return exact(2);
    p.kind = TcPrediction::Kind::Unknown;
    return p;
}

std::pair<int, int> oracle_tc_articulation_bounds(int n, int m, int v3) {
    if (n < 4)
        throw Error("articulation bounds need n >= 4");
    if (m < 2 || m > v3)
        throw Error("articulation bounds need 2 <= m <= |V_{>=3}|");
    return {2 * std::min(n / 2, m), 2 * std::min(n, v3)};
}

std::optional<TcPrediction> predict_tc(const Graph& g, int n) {
    if (n < 1 || g.has_sinks() || !g.connected())
        return std::nullopt;
    bool banana = g.vertex_count() == 2 && g.edge_count() >= 1;
    for (const Edge& e : g.edges())
        banana = banana && e.a != e.b;
    if (banana)
        return oracle_tc_banana(n, static_cast<int>(g.edge_count()));

    auto cls = classify(g);
    const int v3 = static_cast<int>(cls.essential.size());
    auto exact = [](int value, const std::string& theorem) {
        return TcPrediction{TcPrediction::Kind::Exact, value, value, theorem};
    };
    if (v3 == 0)
        return std::nullopt;
    bool y_shaped = g.is_tree() && v3 == 1 && g.valence(cls.essential.front()) == 3;
    if (y_shaped)
        return n >= 2 ? std::optional(exact(oracle_tc_fully_articulated(n, 1, true), "fully-articulated:Y"))
                      : std::nullopt;
    if (g.is_tree())
        return exact(oracle_tc_tree(n, v3), "tree");
    if (cls.fully_articulated && n >= 2 * v3)
        return exact(oracle_tc_fully_articulated(n, v3), "fully-articulated");
    int m = 0;
    for (VertexId v : cls.essential)
        m += std::binary_search(cls.articulations.begin(), cls.articulations.end(), v) ? 1 : 0;
    if (m >= 2 && n >= 4) {
        auto [low, high] = oracle_tc_articulation_bounds(n, m, v3);
        return TcPrediction{TcPrediction::Kind::Interval, low, high, "articulations"};
    }
    return std::nullopt;
}

TcReport tc_report(const Graph& g, int n, const TcOptions& options) {
    if (!g.connected())
        throw Error("topological complexity needs a connected graph");
    TcReport report;
    report.space = options.space;
    report.particles = n;
    report.oracle = predict_tc(g, n);

    CubeComplex model = build_model(g, n);
    report.model_counts = model.counts();
    report.components = components(model);
    if (report.components > 1) {
        report.verdict = TcReport::Verdict::Infinite;
        report.lower_kind = report.upper_kind = "disconnected";
        report.certificate = {{"components", report.components}};
        return report;
    }

    CollapseTrace trace = collapse(model, options.policy);
    const CubeComplex& survivor = trace.survivor;
    report.survivor_counts = survivor.counts();
    report.betti = homology(survivor, Coefficients::Integers).betti;

    if (survivor.dimension() <= 1) {
        std::size_t b1 = report.betti.size() > 1 ? report.betti[1] : 0;
        int tc = b1 == 0 ? 0 : (b1 == 1 ? 1 : 2);
        report.verdict = TcReport::Verdict::Exact;
        report.lower = report.upper = tc;
        report.lower_kind = report.upper_kind = "graph-formula";
        report.certificate = {{"b1", b1}};
        return report;
    }

    int hdim = survivor.dimension();
    std::string source = "survivor";
    HomotopyDimensionBound bound = homotopy_dimension_upper(model, options.policy);
    if (bound.value < hdim) {
        hdim = bound.value;
        source = bound.source;
    }
    report.upper = 2 * hdim;
    report.upper_kind = "2*homotopy-dimension:" + source;

    auto f2 = zcl_lower_bound(compute_ring<F2>(survivor), options.zcl);
    auto q = zcl_lower_bound(compute_ring<Rationals>(survivor), options.zcl);
    report.zcl_f2 = f2.length;
    report.zcl_q = q.length;
    if (q.length >= f2.length) {
        report.lower = static_cast<int>(q.length);
        report.lower_kind = "zcl-q";
        report.certificate = to_json(q.certificate);
    } else {
        report.lower = static_cast<int>(f2.length);
        report.lower_kind = "zcl-f2";
        report.certificate = to_json(f2.certificate);
    }
    report.budget_exhausted = report.lower < report.upper && (f2.exhausted || q.exhausted);
    report.verdict = report.lower == report.upper ? TcReport::Verdict::Exact : TcReport::Verdict::Interval;
    return report;
}

std::string to_string(TcReport::Verdict verdict) {
    switch (verdict) {
    case TcReport::Verdict::Exact:
        return "exact";
    case TcReport::Verdict::Interval:
        return "interval";
    case TcReport::Verdict::Infinite:
        return "infinite";
    }
    return "interval";
}

nlohmann::json to_json(const TcPrediction& p) {
    nlohmann::json out{{"theorem", p.theorem}};
    switch (p.kind) {
    case TcPrediction::Kind::Exact:
        out["kind"] = "exact";
        out["value"] = p.low;
        break;
    case TcPrediction::Kind::Interval:
        out["kind"] = "interval";
        out["low"] = p.low;
        out["high"] = p.high;
        break;
    case TcPrediction::Kind::Infinite:
        out["kind"] = "infinite";
        break;
    case TcPrediction::Kind::Unknown:
        out["kind"] = "unknown";
        break;
    }
    return out;
}

nlohmann::json to_json(const TcReport& r) {
    nlohmann::json out;
    out["space"] = r.space;
    out["particles"] = r.particles;
    out["verdict"] = to_string(r.verdict);
    if (r.verdict == TcReport::Verdict::Infinite)
        out["tc"] = "infinite";
    else if (r.verdict == TcReport::Verdict::Exact)
        out["tc"] = r.lower;
    else
        out["tc"] = nullptr;
    if (r.verdict != TcReport::Verdict::Infinite) {
        out["lower"] = {{"value", r.lower}, {"kind", r.lower_kind}};
        out["upper"] = {{"value", r.upper}, {"kind", r.upper_kind}};
    }
    out["oracle"] = r.oracle ? to_json(*r.oracle) : nlohmann::json(nullptr);
    out["budget_exhausted"] = r.budget_exhausted;
    out["model_counts"] = r.model_counts;
    out["components"] = r.components;
    if (r.verdict != TcReport::Verdict::Infinite) {
        out["survivor_counts"] = r.survivor_counts;
        out["betti"] = r.betti;
        out["zcl"] = {{"f2", r.zcl_f2}, {"q", r.zcl_q}};
    }
    out["certificate"] = r.certificate;
    return out;
}

template Tensor<F2> tensor_multiply<F2>(const CohomologyRing<F2>&, const Tensor<F2>&, const Tensor<F2>&);
template Tensor<Rationals> tensor_multiply<Rationals>(const CohomologyRing<Rationals>&, const Tensor<Rationals>&,
                                                      const Tensor<Rationals>&);
template Tensor<F2> zero_divisor<F2>(const CohomologyRing<F2>&, const CohomologyRing<F2>::Element&);
template Tensor<Rationals> zero_divisor<Rationals>(const CohomologyRing<Rationals>&,
                                                   const CohomologyRing<Rationals>::Element&);
template CohomologyRing<F2>::Element multiplication_map<F2>(const CohomologyRing<F2>&, const Tensor<F2>&);
template CohomologyRing<Rationals>::Element multiplication_map<Rationals>(const CohomologyRing<Rationals>&,
                                                                         const Tensor<Rationals>&);
template ZclResult<F2> zcl_lower_bound<F2>(const CohomologyRing<F2>&, const ZclOptions&);
template ZclResult<Rationals> zcl_lower_bound<Rationals>(const CohomologyRing<Rationals>&, const ZclOptions&);
template bool verify_certificate<F2>(const CohomologyRing<F2>&, const ZclCertificate<F2>&);
template bool verify_certificate<Rationals>(const CohomologyRing<Rationals>&, const ZclCertificate<Rationals>&);
template nlohmann::json to_json<F2>(const ZclCertificate<F2>&);
template nlohmann::json to_json<Rationals>(const ZclCertificate<Rationals>&);

} // namespace gconf
