#include "gconf/collapse.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <random>

#include "gconf/error.hpp"

namespace gconf {

CollapsePolicy CollapsePolicy::parse(const std::string& name) {
    if (name == "greedy")
        return {Kind::Greedy, 0};
    if (name == "reverse")
        return {Kind::Reverse, 0};
    if (name == "banana")
        return {Kind::Banana, 0};
    if (name == "shuffled")
        return {Kind::Shuffled, 0};
    const std::string prefix = "shuffled:";
    if (name.rfind(prefix, 0) == 0) {
        try {
            std::size_t used = 0;
            std::uint64_t seed = std::stoull(name.substr(prefix.size()), &used);
            if (used == name.size() - prefix.size())
                return {Kind::Shuffled, seed};
        } catch (const std::exception&) {
        }
    }
    throw Error("unknown collapse policy '" + name + "'");
}

std::string CollapsePolicy::name() const {
    switch (kind) {
    case Kind::Greedy:
        return "greedy";
    case Kind::Reverse:
        return "reverse";
    case Kind::Banana:
        return "banana";
    case Kind::Shuffled:
        return "shuffled:" + std::to_string(seed);
    }
    return "greedy";
}

namespace {

// Staging for the banana preset: first cubes in which a particle enters
// an edge already holding a stationary particle, then cubes in which two
// particles enter the same edge, then the rest.
int banana_stage(const CubeComplex& c, const Cube& cube) {
    std::vector<EdgeId> occupied;
    for (LocationCode code : cube.stationary) {
        if (code == kMoving)
            continue;
        Location loc = c.decode(code);
        if (loc.kind == Location::Kind::Edge)
            occupied.push_back(loc.id);
    }
    std::vector<EdgeId> entered;
    for (const Move& m : cube.moves) {
        if (m.kind != MoveKind::VertexToEdge)
            continue;
        if (std::find(occupied.begin(), occupied.end(), m.edge) != occupied.end())
            return 0;
        entered.push_back(m.edge);
    }
    std::sort(entered.begin(), entered.end());
    if (std::adjacent_find(entered.begin(), entered.end()) != entered.end())
        return 1;
    return 2;
}

} // namespace

CollapseTrace collapse(const CubeComplex& c, const CollapsePolicy& policy) {
    const int top = c.dimension();
    std::vector<std::vector<bool>> alive;
    for (int d = 0; d <= top; ++d)
        alive.emplace_back(c.count(d), true);
    std::vector<CollapseStep> steps;
    std::mt19937_64 rng(policy.seed);

    for (int d = top; d >= 1; --d) {
        const std::size_t faces = c.count(d - 1);
        const std::size_t cells = c.count(d);
        auto& face_alive = alive[static_cast<std::size_t>(d - 1)];
        auto& cell_alive = alive[static_cast<std::size_t>(d)];

        std::vector<std::vector<std::uint32_t>> cofaces(faces);
        std::vector<int> live_cofaces(faces, 0);
        for (std::size_t i = 0; i < cells; ++i) {
            if (!cell_alive[i])
                continue;
            for (int axis = 0; axis < d; ++axis)
                for (int end = 0; end < 2; ++end) {
                    std::size_t f = c.face(d, i, axis, end);
                    cofaces[f].push_back(static_cast<std::uint32_t>(i));
                    ++live_cofaces[f];
                }
        }

        std::vector<long long> order(faces);
        std::iota(order.begin(), order.end(), 0LL);
        if (policy.kind == CollapsePolicy::Kind::Reverse) {
            for (std::size_t f = 0; f < faces; ++f)
                order[f] = static_cast<long long>(faces - f);
        } else if (policy.kind == CollapsePolicy::Kind::Shuffled) {
            std::shuffle(order.begin(), order.end(), rng);
        }
        auto unique_coface = [&](std::size_t f) {
            for (std::uint32_t i : cofaces[f])
                if (cell_alive[i])
                    return static_cast<std::size_t>(i);
            throw std::logic_error("free face without a live coface");
        };
        using Key = std::tuple<int, long long, std::size_t>;
        std::priority_queue<Key, std::vector<Key>, std::greater<>> queue;
        auto push = [&](std::size_t f) {
            int stage = 0;
            if (policy.kind == CollapsePolicy::Kind::Banana)
                stage = banana_stage(c, c.cube(d, unique_coface(f)));
            queue.emplace(stage, order[f], f);
        };
        for (std::size_t f = 0; f < faces; ++f)
            if (face_alive[f] && live_cofaces[f] == 1)
                push(f);

        while (!queue.empty()) {
            auto f = std::get<2>(queue.top());
            queue.pop();
            if (!face_alive[f] || live_cofaces[f] != 1)
                continue;
            std::size_t sigma = unique_coface(f);
            face_alive[f] = false;
            cell_alive[sigma] = false;
            steps.push_back(CollapseStep{d, f, sigma});
            for (int axis = 0; axis < d; ++axis)
                for (int end = 0; end < 2; ++end) {
                    std::size_t g = c.face(d, sigma, axis, end);
                    --live_cofaces[g];
                    if (g != f && face_alive[g] && live_cofaces[g] == 1)
                        push(g);
                }
        }
    }
    CubeComplex survivor = c.subcomplex(alive);
    return CollapseTrace{std::move(steps), std::move(alive), std::move(survivor)};
}

bool has_free_face(const CubeComplex& c) {
    for (int d = 1; d <= c.dimension(); ++d) {
        std::vector<int> live(c.count(d - 1), 0);
        for (std::size_t i = 0; i < c.count(d); ++i)
            for (int axis = 0; axis < d; ++axis)
                for (int end = 0; end < 2; ++end)
                    ++live[c.face(d, i, axis, end)];
        if (std::find(live.begin(), live.end(), 1) != live.end())
            return true;
    }
    return false;
}

HomotopyDimensionBound homotopy_dimension_upper(const CubeComplex& c, const CollapsePolicy& policy) {
    HomotopyDimensionBound out;
    out.survivor_dimension = collapse(c, policy).survivor.dimension();
    out.value = out.survivor_dimension;
    out.source = "survivor";
    const Graph& g = c.graph();
    int model_bound = model_dimension_bound(g, c.particles());
    if (model_bound < out.value) {
        out.value = model_bound;
        out.source = "model";
    }
    if (g.is_tree() && !g.has_sinks()) {
        int tree_bound = std::min<int>(c.particles() / 2, static_cast<int>(g.essential_vertices().size()));
        if (tree_bound < out.value) {
            out.value = tree_bound;
            out.source = "tree";
        }
    }
    return out;
}

nlohmann::json to_json(const CollapseTrace& trace) {
    nlohmann::json steps = nlohmann::json::array();
    for (const CollapseStep& s : trace.steps)
        steps.push_back({s.dimension, s.face, s.coface});
    return {{"steps", steps}, {"survivor_counts", trace.survivor.counts()},
            {"survivor_dimension", trace.survivor.dimension()}};
}

} // namespace gconf
