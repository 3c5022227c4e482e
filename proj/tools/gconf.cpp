#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gconf/cohomology.hpp"
#include "gconf/collapse.hpp"
#include "gconf/error.hpp"
#include "gconf/graph.hpp"
#include "gconf/homology.hpp"
#include "gconf/model.hpp"
#include "gconf/tc.hpp"
#include "gconf/verify.hpp"

#ifndef GCONF_FIXTURES
#define GCONF_FIXTURES "fixtures"
#endif

namespace {

using nlohmann::json;
using namespace gconf;

struct RunConfig {
    std::string command;
    std::string graph;
    int particles = 0;
    std::string field;
    std::string policy = "greedy";
    std::size_t budget = ZclOptions{}.budget;
    std::string out;
    std::string vertex;
    bool faces = false;
};

std::string join(const std::vector<std::size_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "/" : "") + std::to_string(v[i]);
    return s;
}

void require_input(const RunConfig& cfg, bool needs_n) {
    if (cfg.graph.empty())
        throw Error("--graph is required for '" + cfg.command + "'");
    if (needs_n && cfg.particles < 1)
        throw Error("-n must be at least 1");
}

json cmd_model(const RunConfig& cfg) {
    require_input(cfg, true);
    Graph g = load_graph(cfg.graph);
    CubeComplex c = build_model(g, cfg.particles);
    json doc = to_json(c, cfg.faces);
    std::cerr << "model: n=" << cfg.particles << " counts " << join(c.counts()) << ", dimension " << c.dimension()
              << ", components " << doc["components"] << ", euler " << c.euler_characteristic() << "\n";
    return doc;
}

json cmd_homology(const RunConfig& cfg) {
    require_input(cfg, true);
    Coefficients coefficients = cfg.field.empty() ? Coefficients::Integers : parse_coefficients(cfg.field);
    BettiProfile p = homology(build_model(load_graph(cfg.graph), cfg.particles), coefficients);
    std::cerr << "homology over " << to_string(coefficients) << ": betti " << join(p.betti) << "\n";
    return to_json(p);
}

template <class F>
json ring_document(const CubeComplex& survivor) {
    auto ring = compute_ring<F>(survivor);
    std::cerr << "ring over " << F::name << ": dims " << join(ring.dims) << "\n";
    return to_json(ring);
}

json cmd_ring(const RunConfig& cfg) {
    require_input(cfg, true);
    CubeComplex model = build_model(load_graph(cfg.graph), cfg.particles);
    CubeComplex survivor = collapse(model, CollapsePolicy::parse(cfg.policy)).survivor;
    Coefficients field = cfg.field.empty() ? Coefficients::F2 : parse_coefficients(cfg.field);
    if (field == Coefficients::Integers)
        throw Error("the cohomology ring needs a field: use f2 or q");
    json doc = field == Coefficients::F2 ? ring_document<F2>(survivor) : ring_document<Rationals>(survivor);
    doc["survivor_counts"] = survivor.counts();
    return doc;
}

json cmd_tc(const RunConfig& cfg) {
    require_input(cfg, true);
    TcOptions options;
    options.policy = CollapsePolicy::parse(cfg.policy);
    options.zcl.budget = cfg.budget;
    options.space = cfg.graph;
    TcReport r = tc_report(load_graph(cfg.graph), cfg.particles, options);
    std::cerr << "tc: verdict " << to_string(r.verdict);
    if (r.verdict != TcReport::Verdict::Infinite)
        std::cerr << ", bounds [" << r.lower << ", " << r.upper << "]";
    if (r.budget_exhausted)
        std::cerr << " (search budget exhausted)";
    std::cerr << "\n";
    return to_json(r);
}

json cmd_collapse(const RunConfig& cfg) {
    require_input(cfg, true);
    CubeComplex model = build_model(load_graph(cfg.graph), cfg.particles);
    CollapseTrace trace = collapse(model, CollapsePolicy::parse(cfg.policy));
    std::cerr << "collapse (" << cfg.policy << "): " << join(model.counts()) << " -> "
              << join(trace.survivor.counts()) << "\n";
    return to_json(trace);
}

json cmd_quotient(const RunConfig& cfg) {
    require_input(cfg, false);
    if (cfg.vertex.empty())
        throw Error("--vertex is required for 'quotient'");
    Graph g = load_graph(cfg.graph);
    auto q = articulation_quotient(g, g.require(cfg.vertex));
    json edge_map = json::array();
    for (const auto& e : q.edge_map)
        edge_map.push_back(e ? json(*e) : json());
    json doc{{"graph", to_json(q.graph)},
             {"center", q.graph.vertex(q.center).name},
             {"vertex_map", q.vertex_map},
             {"edge_map", edge_map}};
    if (cfg.particles >= 1)
        doc["model"] = to_json(build_model(q.graph, cfg.particles), false);
    std::cerr << "quotient at " << cfg.vertex << ": " << q.graph.vertex_count() << " vertices, "
              << q.graph.edge_count() << " edges\n";
    return doc;
}

json cmd_verify(const RunConfig& cfg, int& status) {
    VerifyOptions options;
    options.policy = CollapsePolicy::parse(cfg.policy);
    options.zcl.budget = cfg.budget;
    std::string corpus = cfg.graph.empty() ? std::string(GCONF_FIXTURES) + "/corpus.json" : cfg.graph;
    VerifyReport report = run_corpus(corpus, options);
    for (const auto& e : report.entries) {
        std::cerr << to_string(e.status) << "  " << e.name;
        for (const auto& c : e.checks)
            if (c.status != CheckStatus::Pass)
                std::cerr << "  [" << c.check << (c.detail.empty() ? "" : ": " + c.detail) << "]";
        std::cerr << "\n";
    }
    std::cerr << report.tally(CheckStatus::Pass) << " passed, " << report.tally(CheckStatus::Fail) << " failed, "
              << report.tally(CheckStatus::Skip) << " skipped\n";
    status = report.ok() ? 0 : 1;
    return to_json(report);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Discretized configuration spaces of graphs: models, homology, cup products and TC bounds"};
    RunConfig cfg;
    app.add_option("command", cfg.command, "model | homology | ring | tc | collapse | quotient | verify")
        ->required()
        ->check(CLI::IsMember({"model", "homology", "ring", "tc", "collapse", "quotient", "verify"}));
    app.add_option("--graph", cfg.graph, "graph document (corpus document for verify)");
    app.add_option("-n", cfg.particles, "number of particles");
    app.add_option("--field", cfg.field, "coefficients: f2 or q (homology also accepts z)")
        ->check(CLI::IsMember({"z", "q", "f2"}));
    app.add_option("--policy", cfg.policy, "collapse policy: greedy, reverse, banana or shuffled[:seed]");
    app.add_option("--budget", cfg.budget, "tensor products allowed in the zero-divisor search");
    app.add_option("--out", cfg.out, "write the JSON report here instead of stdout");
    app.add_option("--vertex", cfg.vertex, "articulation vertex for quotient");
    app.add_flag("--faces", cfg.faces, "include face tables in the model report");
    CLI11_PARSE(app, argc, argv);

    int status = 0;
    json doc;
    try {
        CollapsePolicy::parse(cfg.policy);
        if (cfg.command == "model")
            doc = cmd_model(cfg);
        else if (cfg.command == "homology")
            doc = cmd_homology(cfg);
        else if (cfg.command == "ring")
            doc = cmd_ring(cfg);
        else if (cfg.command == "tc")
            doc = cmd_tc(cfg);
        else if (cfg.command == "collapse")
            doc = cmd_collapse(cfg);
        else if (cfg.command == "quotient")
            doc = cmd_quotient(cfg);
        else
            doc = cmd_verify(cfg, status);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::string text = doc.dump(2) + "\n";
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(cfg.out);
        if (!(out << text)) {
            std::cerr << "error: cannot write '" << cfg.out << "'\n";
            return 2;
        }
    }
    return status;
}
