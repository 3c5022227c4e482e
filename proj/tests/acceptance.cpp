// Acceptance checks: one PASS/FAIL line per criterion. All comparisons are
// exact (integers, booleans, verdicts).

#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gconf/cohomology.hpp"
#include "gconf/collapse.hpp"
#include "gconf/graph.hpp"
#include "gconf/homology.hpp"
#include "gconf/model.hpp"
#include "gconf/tc.hpp"

using namespace gconf;

namespace {

Graph fixture(const std::string& name) { return load_graph(std::string(GCONF_FIXTURES) + "/" + name + ".json"); }

std::size_t b(const BettiProfile& p, std::size_t i) { return i < p.betti.size() ? p.betti[i] : 0; }

std::string list(const std::vector<std::size_t>& v) {
    std::ostringstream s;
    s << "(";
    for (std::size_t i = 0; i < v.size(); ++i)
        s << (i ? "," : "") << v[i];
    s << ")";
    return s.str();
}

// Independent evaluation of 1 + (n+k+l-2)!/(k+l-1)! * (n(k+2l-2) - (k+l) + 1).
mpz_class wedge_b1(int n, int k, int l) {
    mpz_class num;
    mpz_class den;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(n + k + l - 2));
    mpz_fac_ui(den.get_mpz_t(), static_cast<unsigned long>(k + l - 1));
    return 1 + num / den * (n * (k + 2 * l - 2) - (k + l) + 1);
}

bool boundary_squared_zero(const CubeComplex& c) {
    for (int d = 2; d <= c.dimension(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            Chain cell;
            cell.dimension = d;
            cell.add(i, 1);
            if (!boundary(c, boundary(c, cell)).empty())
                return false;
        }
    return true;
}

template <class F>
Cochain<F> random_cochain(const CubeComplex& c, int d, std::mt19937& rng) {
    std::uniform_int_distribution<int> value(-3, 3);
    Cochain<F> out;
    for (std::size_t i = 0; i < c.count(d); ++i) {
        auto v = F::from_int(value(rng));
        if (!F::is_zero(v))
            out.emplace_back(static_cast<std::uint32_t>(i), v);
    }
    return out;
}

// d(u v) = du v + (-1)^p u dv on random pairs of total degree below the top.
template <class F>
bool leibniz(const CubeComplex& c, int pairs) {
    std::mt19937 rng(2024);
    const int top = c.dimension();
    for (int s = 0; s < pairs; ++s) {
        int p = s % top;
        int q = (s / top) % (top - p);
        auto u = random_cochain<F>(c, p, rng);
        auto v = random_cochain<F>(c, q, rng);
        auto lhs = coboundary<F>(c, p + q, cup<F>(c, p, u, q, v));
        auto rhs = cup<F>(c, p + 1, coboundary<F>(c, p, u), q, v);
        axpy<F>(rhs, F::from_int(p % 2 == 0 ? 1 : -1), cup<F>(c, p, u, q + 1, coboundary<F>(c, q, v)));
        if (lhs != rhs)
            return false;
    }
    return true;
}

struct Outcome {
    bool pass = true;
    std::ostringstream detail;

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " failed: " << what << ";";
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
    Outcome o;
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " exception: " << e.what();
    }
    if (!o.pass)
        ++failures;
    std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << "  " << title << " |"
              << o.detail.str() << std::endl;
}

} // namespace

int main() {
    criterion(1, "Conf_2(Y): 18 vertices, 18 edges, Betti (1,1)", [](Outcome& o) {
        auto c = build_model(fixture("Y"), 2);
        auto h = homology(c, Coefficients::Integers);
        o.detail << " counts " << list(c.counts()) << " betti " << list(h.betti);
        o.expect(c.counts() == std::vector<std::size_t>{18, 18}, "counts");
        o.expect(h.betti == std::vector<std::size_t>{1, 1}, "betti");
    });

    criterion(2, "Conf_2 of an interval with two sinks: 4/4 cells, connected, Betti (1,1)", [](Outcome& o) {
        auto c = build_model(fixture("I2sinks"), 2);
        auto h = homology(c, Coefficients::Integers);
        o.detail << " counts " << list(c.counts()) << " components " << components(c) << " betti " << list(h.betti);
        o.expect(c.counts() == std::vector<std::size_t>{4, 4}, "counts");
        o.expect(components(c) == 1, "components");
        o.expect(h.betti == std::vector<std::size_t>{1, 1}, "betti");
    });

    criterion(3, "Conf_3(B4): dim 2, Betti (1,26,1), torsion-free, Euler -24, F2 pairing nondegenerate",
              [](Outcome& o) {
                  auto c = build_model(fixture("B4"), 3);
                  auto h = homology(c, Coefficients::Integers);
                  bool torsion_free = true;
                  for (const auto& t : h.torsion)
                      torsion_free = torsion_free && t.empty();
                  auto ring = compute_ring<F2>(c);
                  auto pairing = cup_pairing(ring);
                  bool nondegenerate = pairing.size() == 26;
                  try {
                      invert<F2>(pairing);
                  } catch (const std::domain_error&) {
                      nondegenerate = false;
                  }
                  o.detail << " dim " << c.dimension() << " betti " << list(h.betti) << " euler "
                           << c.euler_characteristic();
                  o.expect(c.dimension() == 2, "dimension");
                  o.expect(h.betti == std::vector<std::size_t>{1, 26, 1}, "betti");
                  o.expect(torsion_free, "torsion");
                  o.expect(c.euler_characteristic() == -24, "euler");
                  o.expect(nondegenerate, "pairing");
              });

    criterion(4, "Conf_3(B4): zcl over Q reaches 4, TC exact 4", [](Outcome& o) {
        auto ring = compute_ring<Rationals>(build_model(fixture("B4"), 3));
        auto z = zcl_lower_bound(ring);
        auto r = tc_report(fixture("B4"), 3);
        o.detail << " zcl_q " << z.length << " verdict " << to_string(r.verdict) << " [" << r.lower << "," << r.upper
                 << "]";
        o.expect(z.length == 4 && verify_certificate(ring, z.certificate), "zcl_q");
        o.expect(r.verdict == TcReport::Verdict::Exact && r.lower == 4 && r.upper == 4, "tc");
    });

    criterion(5, "b1 of Conf_n(Y^l_k) matches the wedge formula", [](Outcome& o) {
        struct Case {
            int k, l, n;
            std::string file;
        };
        for (const Case& cs : std::vector<Case>{{3, 0, 2, "Y_k3_l0"},
                                                {3, 0, 3, "Y_k3_l0"},
                                                {4, 0, 2, "Y_k4_l0"},
                                                {2, 1, 2, "Y_k2_l1"},
                                                {3, 1, 2, "Y_k3_l1"}}) {
            std::size_t b1 = b(homology(build_model(fixture(cs.file), cs.n), Coefficients::Integers), 1);
            mpz_class expected = wedge_b1(cs.n, cs.k, cs.l);
            o.detail << " (" << cs.k << "," << cs.l << "," << cs.n << "):" << b1 << "/" << expected.get_str();
            o.expect(mpz_class(static_cast<unsigned long>(b1)) == expected, "formula");
        }
    });

    criterion(6, "Conf_2(B_k), k=3..6: collapses to dim 1, b1 >= k-1, TC exact 2", [](Outcome& o) {
        for (int k = 3; k <= 6; ++k) {
            Graph g = fixture("B" + std::to_string(k));
            auto c = build_model(g, 2);
            int dim = collapse(c).survivor.dimension();
            std::size_t b1 = b(homology(c, Coefficients::Integers), 1);
            auto r = tc_report(g, 2);
            o.detail << " k=" << k << ": dim " << dim << " b1 " << b1 << " tc " << r.lower;
            o.expect(dim == 1, "collapse");
            o.expect(b1 >= static_cast<std::size_t>(k - 1), "b1");
            o.expect(r.verdict == TcReport::Verdict::Exact && r.lower == 2, "tc");
        }
    });

    criterion(7, "Conf_3(B3): collapses to dim 1, b1 >= 2, TC 2", [](Outcome& o) {
        auto c = build_model(fixture("B3"), 3);
        int dim = collapse(c).survivor.dimension();
        std::size_t b1 = b(homology(c, Coefficients::Integers), 1);
        auto r = tc_report(fixture("B3"), 3);
        o.detail << " dim " << dim << " b1 " << b1 << " tc " << r.lower;
        o.expect(dim == 1, "collapse");
        o.expect(b1 >= 2, "b1");
        o.expect(r.verdict == TcReport::Verdict::Exact && r.lower == 2, "tc");
    });

    criterion(8, "tree H: TC 2 at n=2; zcl 4 = upper 4 at n=4", [](Outcome& o) {
        Graph h = fixture("H");
        auto r2 = tc_report(h, 2);
        std::size_t b1 = r2.betti.size() > 1 ? r2.betti[1] : 0;
        o.detail << " n=2: survivor dim " << r2.survivor_counts.size() - 1 << " b1 " << b1 << " tc " << r2.lower;
        o.expect(r2.survivor_counts.size() == 2 && b1 >= 2, "n=2 survivor");
        o.expect(r2.verdict == TcReport::Verdict::Exact && r2.lower == 2, "n=2 tc");
        auto r4 = tc_report(h, 4);
        o.detail << "; n=4: [" << r4.lower << "," << r4.upper << "] " << r4.lower_kind
                 << (r4.budget_exhausted ? " budget exhausted" : "");
        o.expect(!r4.budget_exhausted, "n=4 budget");
        o.expect(r4.verdict == TcReport::Verdict::Exact && r4.lower == 4 && r4.upper == 4, "n=4 tc");
    });

    criterion(9, "star cycles project to nonzero classes of articulation quotients", [](Outcome& o) {
        struct Case {
            std::string file, vertex;
        };
        for (const Case& cs : std::vector<Case>{{"bowtie", "v"}, {"H", "a"}, {"H", "b"}}) {
            Graph g = fixture(cs.file);
            VertexId v = g.require(cs.vertex);
            std::vector<EdgeId> star;
            for (std::size_t e = 0; e < g.edge_count(); ++e)
                if (g.edge(static_cast<EdgeId>(e)).a == v || g.edge(static_cast<EdgeId>(e)).b == v)
                    star.push_back(static_cast<EdgeId>(e));
            auto source = build_model(g, 2);
            auto q = articulation_quotient(g, v);
            auto target = build_model(q.graph, 2);
            Chain image = project_cycle(star_cycle(source, v, {star[0], star[1], star[2]}, 0, 1), source, q, target);
            bool nonzero = !is_boundary(target, image);
            o.detail << " " << cs.file << "@" << cs.vertex << ":" << (nonzero ? "nonzero" : "zero");
            o.expect(nonzero, cs.file + "@" + cs.vertex);
        }
    });

    criterion(10, "Betti numbers grow with n and with k", [](Outcome& o) {
        for (const std::string name : {"Y", "H", "B3", "B4"}) {
            Graph g = fixture(name);
            std::vector<BettiProfile> profiles;
            for (int n = 1; n <= 4; ++n)
                profiles.push_back(homology(build_model(g, n), Coefficients::Rationals));
            for (int m = 0; m < 4; ++m)
                for (int n = m + 1; n < 4; ++n)
                    for (std::size_t i = 0; i < profiles[static_cast<std::size_t>(m)].betti.size(); ++i)
                        o.expect(b(profiles[static_cast<std::size_t>(m)], i) <= b(profiles[static_cast<std::size_t>(n)], i),
                                 name + " m=" + std::to_string(m + 1) + " n=" + std::to_string(n + 1));
            o.detail << " " << name << ":" << list(profiles.back().betti);
        }
        std::size_t base = b(homology(build_model(fixture("B4"), 3), Coefficients::Rationals), 1);
        for (int k = 4; k <= 6; ++k) {
            std::size_t bk = b(homology(build_model(fixture("B" + std::to_string(k)), 3), Coefficients::Rationals), 1);
            o.detail << " b1(B" << k << ",3)=" << bk;
            o.expect(base <= bk, "banana k=" + std::to_string(k));
        }
    });

    criterion(11, "property suites: boundary squared, Leibniz, collapse, subdivision, disconnection", [](Outcome& o) {
        struct Case {
            std::string file;
            int n;
        };
        std::vector<Case> corpus{{"Y", 2},  {"I2sinks", 2}, {"B4", 3}, {"B3", 2},      {"B3", 3},     {"B5", 2},
                                 {"H", 2},  {"H", 3},       {"bowtie", 2}, {"figure8", 2}, {"Y_k3_l1", 2}, {"Y_k2_l1", 2},
                                 {"B2", 3}, {"B1", 2}};
        int leibniz_complexes = 0;
        for (const Case& cs : corpus) {
            auto c = build_model(fixture(cs.file), cs.n);
            std::string tag = cs.file + "," + std::to_string(cs.n);
            o.expect(boundary_squared_zero(c), "boundary " + tag);
            if (c.dimension() >= 1 && components(c) == 1) {
                o.expect(leibniz<F2>(c, 200), "leibniz f2 " + tag);
                o.expect(leibniz<Rationals>(c, 200), "leibniz q " + tag);
                ++leibniz_complexes;
            }
            auto betti = homology(c, Coefficients::Integers).betti;
            for (const char* policy : {"greedy", "reverse", "banana", "shuffled:7"}) {
                auto survivor = collapse(c, CollapsePolicy::parse(policy)).survivor;
                auto after = homology(survivor, Coefficients::Integers).betti;
                after.resize(betti.size(), 0);
                o.expect(after == betti, std::string("collapse ") + policy + " " + tag);
            }
        }
        Graph y = fixture("Y");
        auto reference = homology(build_model(y, 2), Coefficients::Integers).betti;
        Graph fine = y;
        for (EdgeId e = 0; e < 3; ++e)
            fine = subdivide_edge(fine, e, false);
        auto refined = homology(build_model(fine, 2), Coefficients::Integers).betti;
        while (refined.size() > reference.size() && refined.back() == 0)
            refined.pop_back();
        o.expect(refined == reference, "subdivision");
        auto r = tc_report(fixture("B2"), 3);
        o.expect(r.verdict == TcReport::Verdict::Infinite, "B2 disconnected");
        o.detail << " " << corpus.size() << " complexes, Leibniz on " << leibniz_complexes << ", B2,3 "
                 << to_string(r.verdict);
    });

    std::cout << (failures == 0 ? "all criteria PASS" : std::to_string(failures) + " criteria FAIL") << std::endl;
    return failures == 0 ? 0 : 1;
}
