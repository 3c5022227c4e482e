#include "gconf/verify.hpp"

#include <fstream>
#include <optional>

#include "gconf/cohomology.hpp"
#include "gconf/error.hpp"
#include "gconf/homology.hpp"

namespace gconf {

namespace {

using nlohmann::json;

// Lazily computed data for one corpus entry.
class Subject {
public:
    Subject(Graph graph, int n, const std::filesystem::path& base, const VerifyOptions& options)
        : graph_(std::move(graph)), n_(n), base_(base), options_(options) {}

    const Graph& graph() const { return graph_; }
    int particles() const { return n_; }
    const std::filesystem::path& base() const { return base_; }

    const CubeComplex& model() {
        if (!model_)
            model_ = build_model(graph_, n_);
        return *model_;
    }
    const BettiProfile& integral() {
        if (!integral_)
            integral_ = homology(model(), Coefficients::Integers);
        return *integral_;
    }
    const CollapseTrace& trace() {
        if (!trace_)
            trace_ = collapse(model(), options_.policy);
        return *trace_;
    }
    const TcReport& tc() {
        if (!tc_)
            tc_ = tc_report(graph_, n_, TcOptions{options_.policy, options_.zcl, {}});
        return *tc_;
    }

private:
    Graph graph_;
    int n_;
    std::filesystem::path base_;
    const VerifyOptions& options_;
    std::optional<CubeComplex> model_;
    std::optional<BettiProfile> integral_;
    std::optional<CollapseTrace> trace_;
    std::optional<TcReport> tc_;
};

std::size_t b1_of(const BettiProfile& p) { return p.betti.size() > 1 ? p.betti[1] : 0; }

CheckOutcome compare(const std::string& name, const json& expected, const json& actual) {
    CheckOutcome out{name, expected == actual ? CheckStatus::Pass : CheckStatus::Fail, expected, actual, {}};
    return out;
}

CheckOutcome at_least(const std::string& name, const json& expected, std::size_t actual) {
    CheckOutcome out{name, actual >= expected.get<std::size_t>() ? CheckStatus::Pass : CheckStatus::Fail, expected,
                     actual, {}};
    return out;
}

json tc_value(const TcReport& r) {
    if (r.verdict == TcReport::Verdict::Infinite)
        return "infinite";
    if (r.verdict == TcReport::Verdict::Exact)
        return r.lower;
    return json::array({r.lower, r.upper});
}

VertexId incident_star(const Graph& g, const std::string& name, std::array<EdgeId, 3>& star) {
    VertexId v = g.require(name);
    std::size_t k = 0;
    for (std::size_t e = 0; e < g.edge_count() && k < 3; ++e) {
        const Edge& edge = g.edge(static_cast<EdgeId>(e));
        if (edge.a == v || edge.b == v)
            star[k++] = static_cast<EdgeId>(e);
    }
    if (k < 3)
        throw Error("vertex '" + name + "' has fewer than three incident edges");
    return v;
}

CheckOutcome run_check(const std::string& name, const json& expected, Subject& s) {
    if (name == "counts")
        return compare(name, expected, json(s.model().counts()));
    if (name == "dimension")
        return compare(name, expected, s.model().dimension());
    if (name == "components")
        return compare(name, expected, components(s.model()));
    if (name == "euler")
        return compare(name, expected, s.model().euler_characteristic());
    if (name == "betti")
        return compare(name, expected, json(s.integral().betti));
    if (name == "torsion_free") {
        bool free = true;
        for (const auto& t : s.integral().torsion)
            free = free && t.empty();
        return compare(name, expected, free);
    }
    if (name == "b1_min")
        return at_least(name, expected, b1_of(s.integral()));
    if (name == "collapse_dimension")
        return compare(name, expected, s.trace().survivor.dimension());
    if (name == "pairing_nondegenerate") {
        auto ring = compute_ring<F2>(s.model());
        bool invertible = true;
        try {
            invert<F2>(cup_pairing(ring));
        } catch (const std::domain_error&) {
            invertible = false;
        }
        return compare(name, expected, invertible);
    }
    if (name == "tc" || name == "zcl_q") {
        const TcReport& r = s.tc();
        CheckOutcome out = name == "tc" ? compare(name, expected, tc_value(r))
                                        : at_least(name, expected, r.zcl_q);
        if (out.status == CheckStatus::Fail && r.budget_exhausted) {
            out.status = CheckStatus::Skip;
            out.detail = "zero-divisor search budget exhausted";
        }
        return out;
    }
    if (name == "wedge") {
        auto k = expected.at(0).get<int>();
        auto l = expected.at(1).get<int>();
        mpz_class formula = betti_wedge_formula(s.particles(), k, l);
        std::size_t b1 = b1_of(s.integral());
        CheckOutcome out{name, mpz_class(static_cast<unsigned long>(b1)) == formula ? CheckStatus::Pass
                                                                                   : CheckStatus::Fail,
                         formula.get_str(), b1, {}};
        return out;
    }
    if (name == "betti_monotone") {
        // b_i(m) <= b_i(m + 1) for m < n.
        json history = json::array();
        CheckStatus status = CheckStatus::Pass;
        std::vector<std::size_t> previous;
        for (int m = 1; m <= s.particles(); ++m) {
            auto b = homology(build_model(s.graph(), m), Coefficients::Rationals).betti;
            history.push_back(b);
            for (std::size_t i = 0; i < previous.size(); ++i)
                if (previous[i] > (i < b.size() ? b[i] : 0))
                    status = CheckStatus::Fail;
            previous = b;
        }
        return CheckOutcome{name, status, expected, history, {}};
    }
    if (name == "b1_dominated_by") {
        json actual = json::object();
        CheckStatus status = CheckStatus::Pass;
        std::size_t own = b1_of(s.integral());
        actual["self"] = own;
        for (const auto& path : expected) {
            Graph other = load_graph((s.base() / path.get<std::string>()).string());
            std::size_t b1 = b1_of(homology(build_model(other, s.particles()), Coefficients::Rationals));
            actual[path.get<std::string>()] = b1;
            if (own > b1)
                status = CheckStatus::Fail;
        }
        return CheckOutcome{name, status, expected, actual, {}};
    }
    if (name == "quotient_injective") {
        json actual = json::object();
        CheckStatus status = CheckStatus::Pass;
        for (const auto& vertex : expected) {
            std::array<EdgeId, 3> star{};
            VertexId v = incident_star(s.graph(), vertex.get<std::string>(), star);
            auto q = articulation_quotient(s.graph(), v);
            CubeComplex target = build_model(q.graph, s.particles());
            Chain image = project_cycle(star_cycle(s.model(), v, star, 0, 1), s.model(), q, target);
            bool nonzero = !is_boundary(target, image);
            actual[vertex.get<std::string>()] = nonzero;
            if (!nonzero)
                status = CheckStatus::Fail;
        }
        return CheckOutcome{name, status, expected, actual, {}};
    }
    return CheckOutcome{name, CheckStatus::Fail, expected, nullptr, "unknown check"};
}

EntryOutcome run_entry(const json& entry, const std::filesystem::path& base, const VerifyOptions& options) {
    EntryOutcome out;
    out.name = entry.value("name", std::string("(unnamed)"));
    std::optional<Subject> subject;
    try {
        Graph g = load_graph((base / entry.at("graph").get<std::string>()).string());
        subject.emplace(std::move(g), entry.at("n").get<int>(), base, options);
    } catch (const std::exception& e) {
        out.status = CheckStatus::Fail;
        out.checks.push_back({"graph", CheckStatus::Fail, entry.value("graph", json()), nullptr, e.what()});
        return out;
    }
    for (const auto& [name, expected] : entry.at("expect").items()) {
        CheckOutcome check;
        try {
            check = run_check(name, expected, *subject);
        } catch (const std::exception& e) {
            check = {name, CheckStatus::Fail, expected, nullptr, e.what()};
        }
        if (check.status == CheckStatus::Fail)
            out.status = CheckStatus::Fail;
        else if (check.status == CheckStatus::Skip && out.status == CheckStatus::Pass)
            out.status = CheckStatus::Skip;
        out.checks.push_back(std::move(check));
    }
    return out;
}

} // namespace

std::size_t VerifyReport::tally(CheckStatus status) const {
    std::size_t count = 0;
    for (const auto& e : entries)
        count += e.status == status ? 1 : 0;
    return count;
}

VerifyReport run_corpus(const json& corpus, const std::filesystem::path& base, const VerifyOptions& options) {
    if (!corpus.is_object() || !corpus.contains("entries") || !corpus["entries"].is_array())
        throw Error("corpus document needs an 'entries' array");
    VerifyReport report;
    for (const auto& entry : corpus["entries"])
        report.entries.push_back(run_entry(entry, base, options));
    return report;
}

VerifyReport run_corpus(const std::filesystem::path& path, const VerifyOptions& options) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open corpus '" + path.string() + "'");
    json corpus;
    try {
        corpus = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error("corpus '" + path.string() + "' is not valid JSON: " + e.what());
    }
    VerifyReport report = run_corpus(corpus, path.parent_path(), options);
    report.corpus = path.filename().string();
    return report;
}

std::string to_string(CheckStatus status) {
    switch (status) {
    case CheckStatus::Pass:
        return "PASS";
    case CheckStatus::Fail:
        return "FAIL";
    case CheckStatus::Skip:
        return "SKIP";
    }
    return "?";
}

nlohmann::json to_json(const VerifyReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries) {
        json checks = json::array();
        for (const auto& c : e.checks) {
            json item{{"check", c.check}, {"status", to_string(c.status)}, {"expected", c.expected}, {"actual", c.actual}};
            if (!c.detail.empty())
                item["detail"] = c.detail;
            checks.push_back(std::move(item));
        }
        entries.push_back({{"name", e.name}, {"status", to_string(e.status)}, {"checks", std::move(checks)}});
    }
    return {{"corpus", report.corpus},
            {"entries", std::move(entries)},
            {"summary",
             {{"pass", report.tally(CheckStatus::Pass)},
              {"fail", report.tally(CheckStatus::Fail)},
              {"skip", report.tally(CheckStatus::Skip)}}}};
}

} // namespace gconf
