#include "gconf/model.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gconf/error.hpp"

namespace gconf {

namespace {

std::vector<std::int32_t> cube_key(const Cube& cube) {
    std::vector<std::int32_t> key(cube.stationary.begin(), cube.stationary.end());
    key.reserve(key.size() + 3 * cube.moves.size());
    for (const Move& m : cube.moves) {
        key.push_back(m.particle);
        key.push_back(m.kind == MoveKind::VertexToEdge ? m.vertex : -2 - m.edge);
        key.push_back(m.edge);
    }
    return key;
}

bool move_less(const std::vector<Move>& x, const std::vector<Move>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(), [](const Move& a, const Move& b) {
        return std::tie(a.particle, a.kind, a.edge, a.vertex) < std::tie(b.particle, b.kind, b.edge, b.vertex);
    });
}

} // namespace

std::size_t CubeKeyHash::operator()(const std::vector<std::int32_t>& key) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::int32_t x : key) {
        h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

CubeComplex::CubeComplex(Graph graph, int particles, std::vector<std::vector<Cube>> cells)
    : graph_(std::move(graph)), particles_(particles), cells_(std::move(cells)) {
    while (!cells_.empty() && cells_.back().empty())
        cells_.pop_back();
    index_and_link();
}

void CubeComplex::index_and_link() {
    index_.assign(cells_.size(), {});
    for (std::size_t d = 0; d < cells_.size(); ++d) {
        index_[d].reserve(cells_[d].size());
        for (std::size_t i = 0; i < cells_[d].size(); ++i)
            if (!index_[d].emplace(cube_key(cells_[d][i]), i).second)
                throw std::logic_error("duplicate cube in model");
    }
    faces_.assign(cells_.size(), {});
    for (std::size_t d = 1; d < cells_.size(); ++d) {
        auto& table = faces_[d];
        table.resize(cells_[d].size() * 2 * d);
        for (std::size_t i = 0; i < cells_[d].size(); ++i) {
            for (std::size_t axis = 0; axis < d; ++axis) {
                for (int end = 0; end < 2; ++end) {
                    Cube f = face_cube(cells_[d][i], static_cast<int>(axis), end);
                    auto it = index_[d - 1].find(cube_key(f));
                    if (it == index_[d - 1].end())
                        throw std::logic_error("model is not closed under faces");
                    table[i * 2 * d + 2 * axis + static_cast<std::size_t>(end)] = static_cast<std::uint32_t>(it->second);
                }
            }
        }
    }
}

int CubeComplex::dimension() const { return static_cast<int>(cells_.size()) - 1; }

std::size_t CubeComplex::count(int d) const {
    if (d < 0 || static_cast<std::size_t>(d) >= cells_.size())
        return 0;
    return cells_[static_cast<std::size_t>(d)].size();
}

std::vector<std::size_t> CubeComplex::counts() const {
    std::vector<std::size_t> out;
    for (const auto& level : cells_)
        out.push_back(level.size());
    return out;
}

long long CubeComplex::euler_characteristic() const {
    long long chi = 0;
    for (std::size_t d = 0; d < cells_.size(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(cells_[d].size());
    return chi;
}

std::size_t CubeComplex::total_cells() const {
    std::size_t total = 0;
    for (const auto& level : cells_)
        total += level.size();
    return total;
}

std::size_t CubeComplex::multi_face(int d, std::size_t i, std::span<const int> ends) const {
    // Resolve from the highest axis down so lower axis numbers stay valid.
    int dim = d;
    std::size_t cell = i;
    for (int axis = d - 1; axis >= 0; --axis) {
        int end = ends[static_cast<std::size_t>(axis)];
        if (end < 0)
            continue;
        cell = face(dim, cell, axis, end);
        --dim;
    }
    return cell;
}

std::optional<std::size_t> CubeComplex::find(const Cube& cube) const {
    auto d = static_cast<std::size_t>(cube.dimension());
    if (d >= index_.size() || cube.stationary.size() != static_cast<std::size_t>(particles_))
        return std::nullopt;
    auto it = index_[d].find(cube_key(cube));
    if (it == index_[d].end())
        return std::nullopt;
    return it->second;
}

LocationCode CubeComplex::encode(const Location& loc) const {
    if (loc.kind == Location::Kind::Vertex)
        return loc.id;
    return static_cast<LocationCode>(graph_.vertex_count()) + loc.id * particles_ + loc.slot;
}

Location CubeComplex::decode(LocationCode code) const {
    const auto v = static_cast<LocationCode>(graph_.vertex_count());
    if (code < v)
        return Location::at_vertex(code);
    code -= v;
    return Location::on_edge(code / particles_, code % particles_);
}

Cube CubeComplex::face_cube(const Cube& cube, int axis, int end) const {
    Cube out;
    out.stationary = cube.stationary;
    const Move& m = cube.moves.at(static_cast<std::size_t>(axis));
    auto p = static_cast<std::size_t>(m.particle);
    const Edge& e = graph_.edge(m.edge);
    if (m.kind == MoveKind::SinkEdgeTransit) {
        out.stationary[p] = end == 0 ? e.a : e.b;
    } else if (end == 0) {
        out.stationary[p] = m.vertex;
    } else {
        // Squeeze onto the edge next to the vertex the particle leaves.
        const LocationCode first = encode(Location::on_edge(m.edge, 0));
        const LocationCode last = first + particles_;
        int on_edge = 0;
        for (LocationCode code : out.stationary)
            if (code >= first && code < last)
                ++on_edge;
        if (m.vertex == e.a) {
            for (LocationCode& code : out.stationary)
                if (code >= first && code < last)
                    ++code;
            out.stationary[p] = first;
        } else {
            out.stationary[p] = first + on_edge;
        }
    }
    out.moves = cube.moves;
    out.moves.erase(out.moves.begin() + axis);
    return out;
}

CubeComplex CubeComplex::subcomplex(const std::vector<std::vector<bool>>& keep) const {
    std::vector<std::vector<Cube>> cells(cells_.size());
    for (std::size_t d = 0; d < cells_.size(); ++d)
        for (std::size_t i = 0; i < cells_[d].size(); ++i)
            if (d < keep.size() && i < keep[d].size() && keep[d][i])
                cells[d].push_back(cells_[d][i]);
    return CubeComplex(graph_, particles_, std::move(cells));
}

int model_dimension_bound(const Graph& g, int particles) {
    return std::min<int>(particles, static_cast<int>(g.non_sink_valence_at_least_two().size() +
                                                     g.sink_edges().size()));
}

namespace {

// Depth-first placement of particles 0..n-1. A particle either takes a
// vertex (capacity one unless it is a sink) or is inserted at any gap
// among the particles already on an interior-capable edge; the gap
// choice enumerates every ordering exactly once.
class ConfigEnumerator {
public:
    ConfigEnumerator(const Graph& g, int n) : g_(g), n_(n) {
        for (std::size_t v = 0; v < g.vertex_count(); ++v) {
            auto id = static_cast<VertexId>(v);
            if (g.is_sink(id) || g.valence(id) != 1)
                spots_.push_back(id);
        }
        for (std::size_t e = 0; e < g.edge_count(); ++e) {
            const Edge& ed = g.edge(static_cast<EdgeId>(e));
            if (!g.is_sink(ed.a) && !g.is_sink(ed.b))
                interior_edges_.push_back(static_cast<EdgeId>(e));
        }
        occupied_.assign(g.vertex_count(), false);
        on_edge_.assign(g.edge_count(), {});
        where_.assign(static_cast<std::size_t>(n), Location{});
    }

    std::vector<std::vector<LocationCode>> run() {
        recurse(0);
        return std::move(out_);
    }

private:
    void recurse(int particle) {
        if (particle == n_) {
            emit();
            return;
        }
        for (VertexId v : spots_) {
            auto vi = static_cast<std::size_t>(v);
            bool sink = g_.is_sink(v);
            if (!sink && occupied_[vi])
                continue;
            if (!sink)
                occupied_[vi] = true;
            where_[static_cast<std::size_t>(particle)] = Location::at_vertex(v);
            recurse(particle + 1);
            if (!sink)
                occupied_[vi] = false;
        }
        for (EdgeId e : interior_edges_) {
            auto& seq = on_edge_[static_cast<std::size_t>(e)];
            for (std::size_t gap = 0; gap <= seq.size(); ++gap) {
                seq.insert(seq.begin() + static_cast<std::ptrdiff_t>(gap), particle);
                where_[static_cast<std::size_t>(particle)] = Location::on_edge(e, -1);
                recurse(particle + 1);
                seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(gap));
            }
        }
    }

    void emit() {
        std::vector<LocationCode> codes(static_cast<std::size_t>(n_));
        const auto v_count = static_cast<LocationCode>(g_.vertex_count());
        for (int p = 0; p < n_; ++p) {
            const Location& loc = where_[static_cast<std::size_t>(p)];
            if (loc.kind == Location::Kind::Vertex)
                codes[static_cast<std::size_t>(p)] = loc.id;
        }
        for (EdgeId e : interior_edges_) {
            const auto& seq = on_edge_[static_cast<std::size_t>(e)];
            for (std::size_t s = 0; s < seq.size(); ++s)
                codes[static_cast<std::size_t>(seq[s])] = v_count + e * n_ + static_cast<LocationCode>(s);
        }
        out_.push_back(std::move(codes));
    }

    const Graph& g_;
    int n_;
    std::vector<VertexId> spots_;
    std::vector<EdgeId> interior_edges_;
    std::vector<bool> occupied_;
    std::vector<std::vector<int>> on_edge_;
    std::vector<Location> where_;
    std::vector<std::vector<LocationCode>> out_;
};

// Moves available to the particle sitting at vertex `u` in a 0-corner,
// oriented so that the particle's current position is end 0.
std::vector<Move> candidate_moves(const Graph& g, const std::vector<bool>& occupied, int particle, VertexId u) {
    std::vector<Move> out;
    const auto v_count = static_cast<int>(g.vertex_count());
    for (EdgeId e : g.incident(u)) {
        const Edge& ed = g.edge(e);
        VertexId w = g.other_end(e, u);
        if (!g.is_sink(u) && !g.is_sink(w)) {
            out.push_back(Move{particle, MoveKind::VertexToEdge, e, u, u});
            continue;
        }
        if (ed.a != u)
            continue;
        int resource = 0;
        if (!g.is_sink(w)) {
            if (g.valence(w) == 1 || occupied[static_cast<std::size_t>(w)])
                continue;
            resource = w;
        } else if (!g.is_sink(u)) {
            resource = u;
        } else {
            resource = v_count + e;
        }
        out.push_back(Move{particle, MoveKind::SinkEdgeTransit, e, u, resource});
    }
    return out;
}

} // namespace

CubeComplex build_model(const Graph& g, int particles) {
    if (particles < 1)
        throw Error("particle count must be at least 1");

    auto corners = ConfigEnumerator(g, particles).run();
    std::sort(corners.begin(), corners.end());

    const int bound = model_dimension_bound(g, particles);
    std::vector<std::vector<Cube>> cells(static_cast<std::size_t>(bound) + 1);
    const auto v_count = static_cast<LocationCode>(g.vertex_count());

    for (const auto& corner : corners) {
        cells[0].push_back(Cube{corner, {}});

        std::vector<bool> occupied(g.vertex_count(), false);
        for (LocationCode code : corner)
            if (code < v_count && !g.is_sink(code))
                occupied[static_cast<std::size_t>(code)] = true;

        std::vector<std::vector<Move>> options(static_cast<std::size_t>(particles));
        for (int p = 0; p < particles; ++p) {
            LocationCode code = corner[static_cast<std::size_t>(p)];
            if (code < v_count)
                options[static_cast<std::size_t>(p)] = candidate_moves(g, occupied, p, code);
        }

        std::vector<Cube> local;
        std::vector<Move> chosen;
        std::set<int> resources;
        std::function<void(int)> choose = [&](int p) {
            if (p == particles) {
                if (chosen.empty())
                    return;
                Cube cube{corner, chosen};
                for (const Move& m : chosen)
                    cube.stationary[static_cast<std::size_t>(m.particle)] = kMoving;
                local.push_back(std::move(cube));
                return;
            }
            choose(p + 1);
            for (const Move& m : options[static_cast<std::size_t>(p)]) {
                if (resources.contains(m.resource))
                    continue;
                resources.insert(m.resource);
                chosen.push_back(m);
                choose(p + 1);
                chosen.pop_back();
                resources.erase(m.resource);
            }
        };
        choose(0);
        std::sort(local.begin(), local.end(),
                  [](const Cube& x, const Cube& y) {
                      if (x.moves.size() != y.moves.size())
                          return x.moves.size() < y.moves.size();
                      return move_less(x.moves, y.moves);
                  });
        for (Cube& cube : local) {
            auto d = static_cast<std::size_t>(cube.dimension());
            if (d >= cells.size())
                throw std::logic_error("cube exceeds the model dimension bound");
            cells[d].push_back(std::move(cube));
        }
    }
    return CubeComplex(g, particles, std::move(cells));
}

int components(const CubeComplex& c) {
    const std::size_t n = c.count(0);
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> root = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    int count = static_cast<int>(n);
    for (std::size_t i = 0; i < c.count(1); ++i) {
        std::size_t a = root(c.face(1, i, 0, 0));
        std::size_t b = root(c.face(1, i, 0, 1));
        if (a != b) {
            parent[std::max(a, b)] = std::min(a, b);
            --count;
        }
    }
    return count;
}

void Chain::add(std::size_t cell, long long coefficient) {
    if (coefficient == 0)
        return;
    long long& slot = terms[cell];
    slot += coefficient;
    if (slot == 0)
        terms.erase(cell);
}

Chain boundary(const CubeComplex& c, const Chain& chain) {
    Chain out;
    out.dimension = chain.dimension - 1;
    if (chain.dimension <= 0)
        return out;
    for (const auto& [cell, coefficient] : chain.terms) {
        for (int axis = 0; axis < chain.dimension; ++axis) {
            long long sign = axis % 2 == 0 ? -1 : 1;
            out.add(c.face(chain.dimension, cell, axis, 1), sign * coefficient);
            out.add(c.face(chain.dimension, cell, axis, 0), -sign * coefficient);
        }
    }
    return out;
}

Chain operator+(const Chain& lhs, const Chain& rhs) {
    if (!lhs.empty() && !rhs.empty() && lhs.dimension != rhs.dimension)
        throw Error("adding chains of different dimensions");
    Chain out = lhs;
    if (lhs.empty())
        out.dimension = rhs.dimension;
    for (const auto& [cell, coefficient] : rhs.terms)
        out.add(cell, coefficient);
    return out;
}

Chain operator-(const Chain& chain) {
    Chain out = chain;
    for (auto& [cell, coefficient] : out.terms)
        coefficient = -coefficient;
    return out;
}

Chain star_cycle(const CubeComplex& c, VertexId v, std::array<EdgeId, 3> edges, int p, int q,
                 std::span<const Location> parking) {
    const Graph& g = c.graph();
    const int n = c.particles();
    if (v < 0 || static_cast<std::size_t>(v) >= g.vertex_count() || g.is_sink(v))
        throw Error("star cycle center must be a non-sink vertex");
    if (g.valence(v) < 3)
        throw Error("star cycle center must have valence at least 3");
    if (p == q || p < 0 || q < 0 || p >= n || q >= n)
        throw Error("star cycle needs two distinct particles of the model");
    for (std::size_t i = 0; i < 3; ++i) {
        EdgeId e = edges[i];
        if (e < 0 || static_cast<std::size_t>(e) >= g.edge_count())
            throw Error("unknown edge in star cycle");
        const Edge& ed = g.edge(e);
        if (ed.a != v && ed.b != v)
            throw Error("star cycle edge is not incident to the center");
        if (g.is_sink(g.other_end(e, v)))
            throw Error("star cycle edges must not end in a sink");
        for (std::size_t j = 0; j < i; ++j)
            if (edges[j] == e)
                throw Error("star cycle edges must be distinct");
    }
    if (n > 2 && parking.size() != static_cast<std::size_t>(n))
        throw Error("parking must place every particle of the model");

    std::vector<LocationCode> base(static_cast<std::size_t>(n), kMoving);
    for (int r = 0; r < n; ++r) {
        if (r == p || r == q)
            continue;
        const Location& loc = parking[static_cast<std::size_t>(r)];
        bool on_star = loc.kind == Location::Kind::Edge &&
                       std::find(edges.begin(), edges.end(), loc.id) != edges.end();
        if ((loc.kind == Location::Kind::Vertex && loc.id == v) || on_star)
            throw Error("parking conflicts with the star of the center");
        base[static_cast<std::size_t>(r)] = c.encode(loc);
    }

    // Sequence of (edge index of p, edge index of q); the mover goes to the
    // edge the other particle does not occupy.
    Chain out;
    out.dimension = 1;
    int at_p = 0;
    int at_q = 1;
    auto one_cube = [&](int mover, int other, int other_edge, int edge_index) {
        Cube cube;
        cube.stationary = base;
        // The other particle is alone on its edge, hence slot 0.
        cube.stationary[static_cast<std::size_t>(other)] =
            c.encode(Location::on_edge(edges[static_cast<std::size_t>(other_edge)], 0));
        EdgeId e = edges[static_cast<std::size_t>(edge_index)];
        cube.moves.push_back(Move{mover, MoveKind::VertexToEdge, e, v, v});
        auto index = c.find(cube);
        if (!index)
            throw Error("parking conflicts with the star cycle (missing 1-cube)");
        return *index;
    };
    for (int step = 0; step < 6; ++step) {
        bool p_moves = step % 2 == 0;
        int mover = p_moves ? p : q;
        int other = p_moves ? q : p;
        int& from = p_moves ? at_p : at_q;
        int other_edge = p_moves ? at_q : at_p;
        int to = 3 - from - other_edge;
        out.add(one_cube(mover, other, other_edge, from), -1);
        out.add(one_cube(mover, other, other_edge, to), 1);
        from = to;
    }
    if (!boundary(c, out).empty())
        throw std::logic_error("star cycle is not closed");
    return out;
}

Chain project_cycle(const Chain& cycle, const CubeComplex& source, const ArticulationQuotient& quotient,
                    const CubeComplex& target) {
    const Graph& g = source.graph();
    if (cycle.dimension != 1)
        throw Error("project_cycle expects a 1-chain");
    if (!boundary(source, cycle).empty())
        throw Error("chain is not a cycle");
    if (quotient.vertex_map.size() != g.vertex_count() || quotient.edge_map.size() != g.edge_count() ||
        !(target.graph() == quotient.graph) || source.particles() != target.particles())
        throw Error("quotient does not match the source and target models");
    if (g.has_sinks())
        throw Error("project_cycle expects a source graph without sinks");

    VertexId center = -1;
    for (std::size_t u = 0; u < quotient.vertex_map.size(); ++u)
        if (quotient.vertex_map[u] == quotient.center)
            center = static_cast<VertexId>(u);

    auto image = [&](LocationCode code) -> LocationCode {
        Location loc = source.decode(code);
        if (loc.kind == Location::Kind::Vertex)
            return quotient.vertex_map[static_cast<std::size_t>(loc.id)];
        const Edge& e = g.edge(loc.id);
        VertexId away = e.a != center ? e.a : e.b;
        return quotient.vertex_map[static_cast<std::size_t>(away)];
    };

    Chain out;
    out.dimension = 1;
    for (const auto& [cell, coefficient] : cycle.terms) {
        const Cube& cube = source.cube(1, cell);
        const Move& m = cube.moves.front();
        if (m.kind != MoveKind::VertexToEdge || m.vertex != center)
            continue; // degenerate: both ends land on the same sink
        auto qe = quotient.edge_map[static_cast<std::size_t>(m.edge)];
        if (!qe)
            throw std::logic_error("edge at the center was collapsed");
        const Edge& target_edge = target.graph().edge(*qe);
        Cube image_cube;
        image_cube.stationary.resize(cube.stationary.size());
        for (std::size_t r = 0; r < cube.stationary.size(); ++r)
            image_cube.stationary[r] = cube.stationary[r] == kMoving ? kMoving : image(cube.stationary[r]);
        image_cube.moves.push_back(
            Move{m.particle, MoveKind::SinkEdgeTransit, *qe, target_edge.a, quotient.center});
        auto index = target.find(image_cube);
        if (!index)
            throw std::logic_error("projected 1-cube missing from the quotient model");
        // Source end 0 is the particle at the center.
        long long sign = target_edge.a == quotient.center ? 1 : -1;
        out.add(*index, sign * coefficient);
    }
    if (!boundary(target, out).empty())
        throw std::logic_error("projected chain is not a cycle");
    return out;
}

nlohmann::json to_json(const CubeComplex& c, bool include_faces) {
    nlohmann::json doc;
    doc["particles"] = c.particles();
    doc["dimension"] = c.dimension();
    doc["counts"] = c.counts();
    doc["euler"] = c.euler_characteristic();
    doc["components"] = components(c);
    if (include_faces) {
        nlohmann::json faces = nlohmann::json::array();
        for (int d = 1; d <= c.dimension(); ++d) {
            nlohmann::json level = nlohmann::json::array();
            for (std::size_t i = 0; i < c.count(d); ++i) {
                nlohmann::json row = nlohmann::json::array();
                for (int axis = 0; axis < d; ++axis)
                    row.push_back({c.face(d, i, axis, 0), c.face(d, i, axis, 1)});
                level.push_back(std::move(row));
            }
            faces.push_back(std::move(level));
        }
        doc["faces"] = std::move(faces);
    }
    return doc;
}

nlohmann::json to_json(const Chain& chain) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [cell, coefficient] : chain.terms)
        terms.push_back({cell, coefficient});
    return {{"dimension", chain.dimension}, {"terms", terms}};
}

} // namespace gconf
