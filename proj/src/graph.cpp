#include "gconf/graph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "gconf/error.hpp"

namespace gconf {

namespace {

class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y) {
        x = find(x);
        y = find(y);
        if (x != y)
            parent_[std::max(x, y)] = std::min(x, y);
    }

private:
    std::vector<std::size_t> parent_;
};

// Components of the graph with vertex `skip` deleted (pass -1 to keep all).
int count_components(const Graph& g, VertexId skip) {
    DisjointSets sets(g.vertex_count());
    for (const Edge& e : g.edges())
        if (e.a != skip && e.b != skip)
            sets.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b));
    std::set<std::size_t> roots;
    for (std::size_t v = 0; v < g.vertex_count(); ++v)
        if (static_cast<VertexId>(v) != skip)
            roots.insert(sets.find(v));
    return static_cast<int>(roots.size());
}

} // namespace

Graph::Graph(std::vector<Vertex> vertices, std::vector<Edge> edges, GraphOptions options)
    : vertices_(std::move(vertices)), options_(options) {
    if (vertices_.empty())
        throw Error("graph has no vertices");
    std::set<std::string> names;
    for (const Vertex& v : vertices_)
        if (!names.insert(v.name).second)
            throw Error("duplicate vertex id '" + v.name + "'");

    const auto n = static_cast<VertexId>(vertices_.size());
    for (const Edge& e : edges) {
        if (e.a < 0 || e.a >= n || e.b < 0 || e.b >= n)
            throw Error("edge endpoint out of range");
        if (e.a != e.b) {
            edges_.push_back(e);
            continue;
        }
        // Self-loop: subdivide by one fresh non-sink vertex.
        std::string stem = vertices_[static_cast<std::size_t>(e.a)].name + "~";
        int k = 1;
        while (names.contains(stem + std::to_string(k)))
            ++k;
        std::string name = stem + std::to_string(k);
        names.insert(name);
        vertices_.push_back(Vertex{name, false, true});
        auto x = static_cast<VertexId>(vertices_.size() - 1);
        edges_.push_back(Edge{e.a, x});
        edges_.push_back(Edge{x, e.a});
    }

    incidence_.assign(vertices_.size(), {});
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        incidence_[static_cast<std::size_t>(edges_[i].a)].push_back(static_cast<EdgeId>(i));
        incidence_[static_cast<std::size_t>(edges_[i].b)].push_back(static_cast<EdgeId>(i));
    }

    if (!options_.allow_valence_two) {
        for (std::size_t v = 0; v < vertices_.size(); ++v) {
            if (!vertices_[v].sink && !vertices_[v].subdivision && incidence_[v].size() == 2)
                throw Error("vertex '" + vertices_[v].name +
                            "' is a non-sink vertex of valence 2 (set allow_valence_two to permit)");
        }
    }
}

VertexId Graph::other_end(EdgeId e, VertexId v) const {
    const Edge& ed = edge(e);
    if (ed.a == v)
        return ed.b;
    if (ed.b == v)
        return ed.a;
    throw Error("vertex is not an endpoint of edge");
}

std::optional<VertexId> Graph::find(const std::string& name) const {
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (vertices_[v].name == name)
            return static_cast<VertexId>(v);
    return std::nullopt;
}

VertexId Graph::require(const std::string& name) const {
    if (auto v = find(name))
        return *v;
    throw Error("unknown vertex '" + name + "'");
}

std::vector<VertexId> Graph::essential_vertices() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!vertices_[v].sink && incidence_[v].size() >= 3)
            out.push_back(static_cast<VertexId>(v));
    return out;
}

std::vector<VertexId> Graph::non_sink_valence_at_least_two() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!vertices_[v].sink && incidence_[v].size() >= 2)
            out.push_back(static_cast<VertexId>(v));
    return out;
}

std::vector<EdgeId> Graph::sink_edges() const {
    std::vector<EdgeId> out;
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (is_sink(edges_[e].a) && is_sink(edges_[e].b))
            out.push_back(static_cast<EdgeId>(e));
    return out;
}

std::vector<VertexId> Graph::valence_two_vertices() const {
    std::vector<VertexId> out;
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!vertices_[v].sink && incidence_[v].size() == 2)
            out.push_back(static_cast<VertexId>(v));
    return out;
}

bool Graph::has_sinks() const {
    return std::any_of(vertices_.begin(), vertices_.end(), [](const Vertex& v) { return v.sink; });
}

bool Graph::connected() const { return count_components(*this, -1) == 1; }

std::string Graph::fresh_name(const std::string& stem) const {
    for (int k = 1;; ++k) {
        std::string name = stem + std::to_string(k);
        if (!find(name))
            return name;
    }
}

bool operator==(const Graph& lhs, const Graph& rhs) {
    if (lhs.vertices_.size() != rhs.vertices_.size() || lhs.edges_.size() != rhs.edges_.size())
        return false;
    for (std::size_t v = 0; v < lhs.vertices_.size(); ++v) {
        const Vertex& x = lhs.vertices_[v];
        const Vertex& y = rhs.vertices_[v];
        if (x.name != y.name || x.sink != y.sink || x.subdivision != y.subdivision)
            return false;
    }
    for (std::size_t e = 0; e < lhs.edges_.size(); ++e)
        if (lhs.edges_[e].a != rhs.edges_[e].a || lhs.edges_[e].b != rhs.edges_[e].b)
            return false;
    return true;
}

VertexClassification classify(const Graph& g) {
    VertexClassification out;
    out.essential = g.essential_vertices();

    const std::size_t n = g.vertex_count();
    std::vector<int> order(n, -1);
    std::vector<int> low(n, 0);
    std::vector<bool> is_cut(n, false);
    int counter = 0;

    // Iterative DFS; the parent is tracked by edge id so parallel edges
    // count as back edges.
    struct Frame {
        VertexId v;
        EdgeId via;
        std::size_t next = 0;
        int children = 0;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (order[root] != -1)
            continue;
        std::vector<Frame> stack{{static_cast<VertexId>(root), -1}};
        order[root] = low[root] = counter++;
        while (!stack.empty()) {
            Frame& top = stack.back();
            auto inc = g.incident(top.v);
            if (top.next < inc.size()) {
                EdgeId e = inc[top.next++];
                if (e == top.via)
                    continue;
                VertexId w = g.other_end(e, top.v);
                auto wi = static_cast<std::size_t>(w);
                auto vi = static_cast<std::size_t>(top.v);
                if (order[wi] == -1) {
                    order[wi] = low[wi] = counter++;
                    ++top.children;
                    stack.push_back({w, e});
                } else {
                    low[vi] = std::min(low[vi], order[wi]);
                }
                continue;
            }
            Frame done = top;
            stack.pop_back();
            if (stack.empty()) {
                if (done.children >= 2)
                    is_cut[static_cast<std::size_t>(done.v)] = true;
                continue;
            }
            auto pi = static_cast<std::size_t>(stack.back().v);
            auto di = static_cast<std::size_t>(done.v);
            low[pi] = std::min(low[pi], low[di]);
            if (stack.size() > 1 && low[di] >= order[pi])
                is_cut[pi] = true;
        }
    }
    for (std::size_t v = 0; v < n; ++v)
        if (is_cut[v])
            out.articulations.push_back(static_cast<VertexId>(v));

    out.fully_articulated = std::includes(out.articulations.begin(), out.articulations.end(),
                                          out.essential.begin(), out.essential.end());
    return out;
}

bool is_articulation_brute_force(const Graph& g, VertexId v) {
    return count_components(g, v) > count_components(g, -1);
}

Graph subdivide_edge(const Graph& g, EdgeId e, bool sink_flag) {
    if (e < 0 || static_cast<std::size_t>(e) >= g.edge_count())
        throw Error("unknown edge " + std::to_string(e));
    std::vector<Vertex> vertices = g.vertices();
    std::vector<Edge> edges = g.edges();
    const Edge old = edges[static_cast<std::size_t>(e)];
    vertices.push_back(Vertex{g.fresh_name("s"), sink_flag, true});
    auto x = static_cast<VertexId>(vertices.size() - 1);
    edges[static_cast<std::size_t>(e)] = Edge{old.a, x};
    edges.push_back(Edge{x, old.b});
    return Graph(std::move(vertices), std::move(edges), g.options());
}

ArticulationQuotient articulation_quotient(const Graph& g, VertexId v) {
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count())
        throw Error("unknown vertex");
    if (g.has_sinks())
        throw Error("articulation quotient requires a graph without sinks");
    if (g.is_sink(v))
        throw Error("vertex '" + g.vertex(v).name + "' is a sink");
    if (!is_articulation_brute_force(g, v))
        throw Error("vertex '" + g.vertex(v).name + "' is not an articulation");

    DisjointSets sets(g.vertex_count());
    for (const Edge& e : g.edges())
        if (e.a != v && e.b != v)
            sets.unite(static_cast<std::size_t>(e.a), static_cast<std::size_t>(e.b));

    // Quotient vertices: v first, then one sink per class in order of the
    // smallest member id. Class names join member names.
    std::vector<Vertex> vertices{Vertex{g.vertex(v).name, false, false}};
    std::map<std::size_t, VertexId> class_vertex;
    std::map<std::size_t, std::vector<std::string>> members;
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        if (static_cast<VertexId>(u) != v)
            members[sets.find(u)].push_back(g.vertex(static_cast<VertexId>(u)).name);
    for (auto& [root, names] : members) {
        std::string joined;
        for (const std::string& s : names)
            joined += (joined.empty() ? "" : "+") + s;
        vertices.push_back(Vertex{joined, true, false});
        class_vertex[root] = static_cast<VertexId>(vertices.size() - 1);
    }

    std::vector<VertexId> vertex_map(g.vertex_count());
    for (std::size_t u = 0; u < g.vertex_count(); ++u)
        vertex_map[u] = static_cast<VertexId>(u) == v ? 0 : class_vertex.at(sets.find(u));

    std::vector<Edge> edges;
    std::vector<std::optional<EdgeId>> edge_map(g.edge_count());
    int loop_sinks = 0;
    for (std::size_t i = 0; i < g.edge_count(); ++i) {
        const Edge& e = g.edge(static_cast<EdgeId>(i));
        if (e.a != v && e.b != v)
            continue;
        VertexId a = vertex_map[static_cast<std::size_t>(e.a)];
        VertexId b = vertex_map[static_cast<std::size_t>(e.b)];
        if (a == b) {
            // Self-loop at v: split it with an artificial 2-valent sink.
            vertices.push_back(Vertex{g.vertex(v).name + "#loop" + std::to_string(++loop_sinks), true, true});
            auto s = static_cast<VertexId>(vertices.size() - 1);
            edge_map[i] = static_cast<EdgeId>(edges.size());
            edges.push_back(Edge{a, s});
            edges.push_back(Edge{s, b});
            continue;
        }
        edge_map[i] = static_cast<EdgeId>(edges.size());
        edges.push_back(Edge{a, b});
    }
    return ArticulationQuotient{Graph(std::move(vertices), std::move(edges), GraphOptions{true}), 0,
                                std::move(vertex_map), std::move(edge_map)};
}

Graph parse_graph(const nlohmann::json& document, GraphOptions options) {
    if (!document.is_object())
        throw Error("graph document must be an object");
    if (!document.contains("vertices") || !document["vertices"].is_array())
        throw Error("graph document lacks a 'vertices' array");
    if (!document.contains("edges") || !document["edges"].is_array())
        throw Error("graph document lacks an 'edges' array");
    if (document.contains("allow_valence_two")) {
        if (!document["allow_valence_two"].is_boolean())
            throw Error("'allow_valence_two' must be a boolean");
        options.allow_valence_two = options.allow_valence_two || document["allow_valence_two"].get<bool>();
    }

    std::vector<Vertex> vertices;
    std::map<std::string, VertexId> ids;
    for (const auto& item : document["vertices"]) {
        if (!item.is_object() || !item.contains("id") || !item["id"].is_string())
            throw Error("each vertex needs a string 'id'");
        Vertex v;
        v.name = item["id"].get<std::string>();
        if (item.contains("sink")) {
            if (!item["sink"].is_boolean())
                throw Error("vertex '" + v.name + "': 'sink' must be a boolean");
            v.sink = item["sink"].get<bool>();
        }
        if (item.contains("subdivision")) {
            if (!item["subdivision"].is_boolean())
                throw Error("vertex '" + v.name + "': 'subdivision' must be a boolean");
            v.subdivision = item["subdivision"].get<bool>();
        }
        if (!ids.emplace(v.name, static_cast<VertexId>(vertices.size())).second)
            throw Error("duplicate vertex id '" + v.name + "'");
        vertices.push_back(std::move(v));
    }

    std::vector<Edge> edges;
    for (const auto& item : document["edges"]) {
        if (!item.is_array() || item.size() != 2 || !item[0].is_string() || !item[1].is_string())
            throw Error("each edge must be a pair of vertex ids");
        Edge e;
        for (int side = 0; side < 2; ++side) {
            auto name = item[static_cast<std::size_t>(side)].get<std::string>();
            auto it = ids.find(name);
            if (it == ids.end())
                throw Error("edge endpoint '" + name + "' is not a declared vertex");
            (side == 0 ? e.a : e.b) = it->second;
        }
        edges.push_back(e);
    }
    return Graph(std::move(vertices), std::move(edges), options);
}

Graph parse_graph_text(const std::string& text, GraphOptions options) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw Error(std::string("malformed graph document: ") + ex.what());
    }
    return parse_graph(doc, options);
}

Graph load_graph(const std::string& path, GraphOptions options) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open graph file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_graph_text(buffer.str(), options);
}

nlohmann::json to_json(const Graph& g) {
    std::vector<VertexId> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](VertexId x, VertexId y) { return g.vertex(x).name < g.vertex(y).name; });

    nlohmann::json doc;
    if (g.options().allow_valence_two)
        doc["allow_valence_two"] = true;
    doc["vertices"] = nlohmann::json::array();
    for (VertexId v : order) {
        nlohmann::json item{{"id", g.vertex(v).name}, {"sink", g.vertex(v).sink}};
        if (g.vertex(v).subdivision)
            item["subdivision"] = true;
        doc["vertices"].push_back(std::move(item));
    }

    std::vector<EdgeId> edges(g.edge_count());
    std::iota(edges.begin(), edges.end(), 0);
    std::stable_sort(edges.begin(), edges.end(), [&](EdgeId x, EdgeId y) {
        const Edge& ex = g.edge(x);
        const Edge& ey = g.edge(y);
        return std::tie(g.vertex(ex.a).name, g.vertex(ex.b).name) <
               std::tie(g.vertex(ey.a).name, g.vertex(ey.b).name);
    });
    doc["edges"] = nlohmann::json::array();
    for (EdgeId e : edges)
        doc["edges"].push_back({g.vertex(g.edge(e).a).name, g.vertex(g.edge(e).b).name});
    return doc;
}

Graph banana_graph(int k) {
    if (k < 1)
        throw Error("banana graph needs at least one edge");
    std::vector<Edge> edges(static_cast<std::size_t>(k), Edge{0, 1});
    GraphOptions options{k == 2};
    return Graph({Vertex{"u"}, Vertex{"v"}}, std::move(edges), options);
}

Graph wedge_graph(int leaves, int loops) {
    if (leaves < 0 || loops < 0)
        throw Error("negative leaf or loop count");
    std::vector<Vertex> vertices{Vertex{"c"}};
    std::vector<Edge> edges;
    for (int i = 1; i <= leaves; ++i) {
        vertices.push_back(Vertex{"l" + std::to_string(i)});
        edges.push_back(Edge{0, i});
    }
    for (int i = 0; i < loops; ++i)
        edges.push_back(Edge{0, 0});
    return Graph(std::move(vertices), std::move(edges), GraphOptions{leaves + 2 * loops == 2});
}

Graph h_graph() {
    return Graph({Vertex{"a"}, Vertex{"a1"}, Vertex{"a2"}, Vertex{"b"}, Vertex{"b1"}, Vertex{"b2"}},
                 {Edge{0, 1}, Edge{0, 2}, Edge{0, 3}, Edge{3, 4}, Edge{3, 5}});
}

Graph star_graph(int leaves) { return wedge_graph(leaves, 0); }

} // namespace gconf
