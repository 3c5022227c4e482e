#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

namespace gconf {

using VertexId = int;
using EdgeId = int;

struct Vertex {
    std::string name;
    bool sink = false;
    /// Created by subdividing an edge (or a self-loop on ingest). Such
    /// vertices may have valence 2 without the override flag.
    bool subdivision = false;
};

/// Unordered as a topological edge; `a` is the fixed first endpoint used
/// for slot indexing along the edge.
struct Edge {
    VertexId a = 0;
    VertexId b = 0;
};

struct GraphOptions {
    bool allow_valence_two = false;
};

/// Finite multigraph with a designated set of sink vertices.
///
/// Construction normalizes: every self-loop is subdivided by a fresh
/// non-sink vertex. Declared non-sink vertices of valence 2 are rejected
/// unless `allow_valence_two` is set. Instances are immutable.
class Graph {
public:
    Graph(std::vector<Vertex> vertices, std::vector<Edge> edges, GraphOptions options = {});

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }

    const Vertex& vertex(VertexId v) const { return vertices_.at(static_cast<std::size_t>(v)); }
    const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
    const std::vector<Vertex>& vertices() const { return vertices_; }
    const std::vector<Edge>& edges() const { return edges_; }

    bool is_sink(VertexId v) const { return vertex(v).sink; }
    int valence(VertexId v) const { return static_cast<int>(incident(v).size()); }
    std::span<const EdgeId> incident(VertexId v) const { return incidence_.at(static_cast<std::size_t>(v)); }
    VertexId other_end(EdgeId e, VertexId v) const;

    std::optional<VertexId> find(const std::string& name) const;
    VertexId require(const std::string& name) const;

    /// Non-sink vertices of valence >= 3.
    std::vector<VertexId> essential_vertices() const;
    /// Non-sink vertices of valence >= 2.
    std::vector<VertexId> non_sink_valence_at_least_two() const;
    /// Edges with both endpoints sinks.
    std::vector<EdgeId> sink_edges() const;
    /// Non-sink vertices of valence exactly 2.
    std::vector<VertexId> valence_two_vertices() const;

    bool has_sinks() const;
    bool connected() const;
    bool is_tree() const { return connected() && edge_count() + 1 == vertex_count(); }
    const GraphOptions& options() const { return options_; }

    /// Fresh vertex name not used by any vertex of this graph.
    std::string fresh_name(const std::string& stem) const;

    friend bool operator==(const Graph& lhs, const Graph& rhs);

private:
    std::vector<Vertex> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::vector<EdgeId>> incidence_;
    GraphOptions options_;
};

struct VertexClassification {
    std::vector<VertexId> essential;
    std::vector<VertexId> articulations;
    bool fully_articulated = false;
};

/// Essential vertices and articulations (DFS low-link over edge ids, so
/// parallel edges are handled).
VertexClassification classify(const Graph& g);

/// Articulation test by deleting `v` and counting components of the rest.
bool is_articulation_brute_force(const Graph& g, VertexId v);

/// Replaces `e` = (a, b) by (a, x) in place and appends (x, b), where x
/// is a fresh vertex.
Graph subdivide_edge(const Graph& g, EdgeId e, bool sink_flag);

struct ArticulationQuotient {
    Graph graph;
    VertexId center = 0;
    /// Source vertex -> quotient vertex.
    std::vector<VertexId> vertex_map;
    /// Source edge -> quotient edge, empty for collapsed edges. A source
    /// self-loop maps to the first of its two subdivided halves.
    std::vector<std::optional<EdgeId>> edge_map;
};

/// Collapses every edge not incident to `v`; the remaining vertices
/// other than `v` become sinks.
ArticulationQuotient articulation_quotient(const Graph& g, VertexId v);

Graph parse_graph(const nlohmann::json& document, GraphOptions options = {});
Graph parse_graph_text(const std::string& text, GraphOptions options = {});
Graph load_graph(const std::string& path, GraphOptions options = {});

/// Canonical document: vertices sorted by id, edges sorted by endpoint
/// ids (endpoint order within each edge is preserved).
nlohmann::json to_json(const Graph& g);

// Standard shapes used throughout tests and fixtures.
Graph banana_graph(int k);
/// Wedge of `leaves` leaf edges and `loops` loops at one center vertex.
Graph wedge_graph(int leaves, int loops);
/// Two essential vertices joined by an edge, each with two leaves.
Graph h_graph();
Graph star_graph(int leaves);

} // namespace gconf
