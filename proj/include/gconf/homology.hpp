#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "gconf/linalg.hpp"
#include "gconf/model.hpp"

namespace gconf {

enum class Coefficients { Integers, Rationals, F2 };

Coefficients parse_coefficients(const std::string& tag);
std::string to_string(Coefficients coefficients);

/// Cellular chain complex of a cube complex. boundary[d] maps C_d to
/// C_{d-1}; boundary[0] has no rows.
struct ChainComplex {
    Coefficients coefficients = Coefficients::Integers;
    std::vector<std::size_t> sizes;
    std::vector<IntMatrix> boundary;
};

/// Builds the integer boundary matrices and checks that consecutive
/// boundaries compose to zero.
ChainComplex chain_complex(const CubeComplex& c, Coefficients coefficients = Coefficients::Integers);

struct BettiProfile {
    Coefficients coefficients = Coefficients::Integers;
    std::vector<std::size_t> betti;
    /// Invariant factors > 1 of H_d (integer coefficients only).
    std::vector<std::vector<mpz_class>> torsion;
    long long euler = 0;
};

BettiProfile betti(const ChainComplex& cc);

struct HomologyOptions {
    /// Collapse first when some dimension has more cells than this.
    std::size_t collapse_threshold = 20000;
};

BettiProfile homology(const CubeComplex& c, Coefficients coefficients, const HomologyOptions& options = {});

/// 1 + (n+k+l-2)!/(k+l-1)! * (n(k+2l-2) - (k+l) + 1): first Betti number
/// of Conf_n of the wedge of k leaves and l loops.
mpz_class betti_wedge_formula(int n, int k, int l);

/// Whether an integer cycle is a boundary, tested over Q.
bool is_boundary(const CubeComplex& c, const Chain& chain);

nlohmann::json to_json(const BettiProfile& profile);

} // namespace gconf
