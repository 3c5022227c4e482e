#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gconf/model.hpp"

namespace gconf {

/// Order in which free faces are taken.
struct CollapsePolicy {
    enum class Kind { Greedy, Reverse, Shuffled, Banana };
    Kind kind = Kind::Greedy;
    std::uint64_t seed = 0;

    /// Accepts "greedy", "reverse", "banana", "shuffled" and "shuffled:SEED".
    static CollapsePolicy parse(const std::string& name);
    std::string name() const;
};

struct CollapseStep {
    /// Dimension of the coface.
    int dimension = 0;
    std::size_t face = 0;
    std::size_t coface = 0;
};

struct CollapseTrace {
    /// Cell indices refer to the input complex.
    std::vector<CollapseStep> steps;
    std::vector<std::vector<bool>> alive;
    CubeComplex survivor;
};

/// Removes free pairs top-down by dimension until none remain. At each
/// level a face is free when exactly one live coface of the next
/// dimension contains it; ties are broken by the policy.
CollapseTrace collapse(const CubeComplex& c, const CollapsePolicy& policy = {});

/// True if some cell of dimension d-1 lies in exactly one d-cell.
bool has_free_face(const CubeComplex& c);

struct HomotopyDimensionBound {
    int value = 0;
    int survivor_dimension = 0;
    /// Which bound attains `value`: "survivor", "tree" or "model".
    std::string source;
};

/// min of the collapsed dimension, min{n, |V_{>=2}| + |E_W|}, and for
/// trees without sinks min{floor(n/2), |V_{>=3}|}.
HomotopyDimensionBound homotopy_dimension_upper(const CubeComplex& c, const CollapsePolicy& policy = {});

nlohmann::json to_json(const CollapseTrace& trace);

} // namespace gconf
