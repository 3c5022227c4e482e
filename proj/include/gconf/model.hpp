#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "gconf/graph.hpp"

namespace gconf {

/// Where a single particle sits in a 0-cube: on a vertex, or at a slot in
/// the interior of an edge. Slots count from the edge's first endpoint.
struct Location {
    enum class Kind : std::uint8_t { Vertex, Edge };
    Kind kind = Kind::Vertex;
    int id = 0;
    int slot = 0;

    static Location at_vertex(VertexId v) { return {Kind::Vertex, v, 0}; }
    static Location on_edge(EdgeId e, int slot) { return {Kind::Edge, e, slot}; }
    friend bool operator==(const Location&, const Location&) = default;
};

/// Packed location: vertex v -> v, edge slot (e, s) -> V + e*n + s, and
/// -1 for a particle that is moving in the enclosing cube.
using LocationCode = std::int32_t;
inline constexpr LocationCode kMoving = -1;

enum class MoveKind : std::uint8_t {
    /// Particle leaves non-sink vertex `vertex` into the interior of `edge`,
    /// whose endpoints are both non-sink.
    VertexToEdge,
    /// Particle crosses `edge` (at least one sink endpoint) from the first
    /// endpoint (end 0) to the second (end 1). Stored undirected.
    SinkEdgeTransit,
};

struct Move {
    int particle = 0;
    MoveKind kind = MoveKind::VertexToEdge;
    EdgeId edge = 0;
    /// Start vertex for VertexToEdge; first endpoint of `edge` for transits.
    VertexId vertex = 0;
    /// Vertex id, or vertex_count + edge id when the move reserves an edge.
    int resource = 0;

    friend bool operator==(const Move&, const Move&) = default;
};

/// A k-cube: positions of the stationary particles and k independent
/// moves sorted by particle. Axis i of the cube is moves[i].
struct Cube {
    std::vector<LocationCode> stationary;
    std::vector<Move> moves;

    int dimension() const { return static_cast<int>(moves.size()); }
    friend bool operator==(const Cube&, const Cube&) = default;
};

struct CubeKeyHash {
    std::size_t operator()(const std::vector<std::int32_t>& key) const noexcept;
};

/// Combinatorial cube-complex model of Conf_n(G, W).
///
/// Cells are stored per dimension in canonical order: 0-cubes sorted by
/// their location codes, k-cubes by (0-corner index, move list). Face
/// tables give, for every d-cube and axis i, the indices of the two
/// (d-1)-faces with the moving particle resolved to end 0 and end 1.
class CubeComplex {
public:
    CubeComplex(Graph graph, int particles, std::vector<std::vector<Cube>> cells);

    const Graph& graph() const { return graph_; }
    int particles() const { return particles_; }
    /// Highest dimension with at least one cell; -1 for an empty complex.
    int dimension() const;
    std::size_t count(int d) const;
    std::vector<std::size_t> counts() const;
    long long euler_characteristic() const;
    std::size_t total_cells() const;

    const Cube& cube(int d, std::size_t i) const { return cells_.at(static_cast<std::size_t>(d)).at(i); }
    const std::vector<Cube>& cubes(int d) const { return cells_.at(static_cast<std::size_t>(d)); }
    std::size_t face(int d, std::size_t i, int axis, int end) const {
        return faces_[static_cast<std::size_t>(d)][i * 2 * static_cast<std::size_t>(d) +
                                                   2 * static_cast<std::size_t>(axis) + static_cast<std::size_t>(end)];
    }
    /// Face obtained by resolving each axis in `ends` (entries -1 stay free).
    std::size_t multi_face(int d, std::size_t i, std::span<const int> ends) const;
    std::optional<std::size_t> find(const Cube& cube) const;

    LocationCode encode(const Location& loc) const;
    Location decode(LocationCode code) const;

    /// Resolves axis `axis` of `cube` to `end`.
    Cube face_cube(const Cube& cube, int axis, int end) const;

    /// Complex restricted to the flagged cells; the selection must be
    /// closed under taking faces.
    CubeComplex subcomplex(const std::vector<std::vector<bool>>& keep) const;

private:
    void index_and_link();

    Graph graph_;
    int particles_;
    std::vector<std::vector<Cube>> cells_;
    std::vector<std::vector<std::uint32_t>> faces_;
    std::vector<std::unordered_map<std::vector<std::int32_t>, std::size_t, CubeKeyHash>> index_;
};

CubeComplex build_model(const Graph& g, int particles);

/// Path components of the complex (components of its 1-skeleton).
int components(const CubeComplex& c);

/// Upper bound min{n, |V_{>=2}| + |E_W|} on the model dimension.
int model_dimension_bound(const Graph& g, int particles);

/// Integer chain on the cells of one dimension.
struct Chain {
    int dimension = 0;
    std::map<std::size_t, long long> terms;

    void add(std::size_t cell, long long coefficient);
    bool empty() const { return terms.empty(); }
    friend bool operator==(const Chain&, const Chain&) = default;
};

/// Cellular boundary: d(cube) = sum_i (-1)^(i+1) (face_i@1 - face_i@0),
/// axes counted from zero.
Chain boundary(const CubeComplex& c, const Chain& chain);
Chain operator+(const Chain& lhs, const Chain& rhs);
Chain operator-(const Chain& chain);

/// The 12-edge cycle in which particles p and q shuffle through the
/// essential vertex v: p starts on edges[0], q on edges[1], and the two
/// alternately move (p first) onto the edge not occupied by the other.
/// `parking` gives locations for the remaining particles (entries for p
/// and q are ignored); it may be empty when the model has two particles.
Chain star_cycle(const CubeComplex& c, VertexId v, std::array<EdgeId, 3> edges, int p, int q,
                 std::span<const Location> parking = {});

/// Image of a 1-cycle of the model of Conf_n(G) in the model of
/// Conf_n(quotient, W_v): vertices follow the quotient map, particles in
/// edge interiors round to the endpoint away from the center, and
/// degenerate 1-cubes are dropped.
Chain project_cycle(const Chain& cycle, const CubeComplex& source, const ArticulationQuotient& quotient,
                    const CubeComplex& target);

nlohmann::json to_json(const CubeComplex& c, bool include_faces = true);
nlohmann::json to_json(const Chain& chain);

} // namespace gconf
