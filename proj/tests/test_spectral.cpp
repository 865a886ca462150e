#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "spex/join.hpp"
#include "spex/spectral.hpp"

using namespace spex;

namespace {

Graph random_connected(std::mt19937_64& rng, int n, double extra_p = 0.3) {
    Graph g(n);
    for (int v = 1; v < n; ++v) g.add_edge(v, static_cast<int>(rng() % static_cast<std::uint64_t>(v)));
    std::uniform_real_distribution<double> u(0, 1);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!g.has_edge(i, j) && u(rng) < extra_p) g.add_edge(i, j);
    return g;
}

} // namespace

TEST_CASE("closed-form spectral radii") {
    for (int n : {6, 60, 600}) {
        REQUIRE(spectral_radius(star_graph(n)).rho == Catch::Approx(star_rho(n)).margin(1e-9));
        REQUIRE(spectral_radius(k_2_n2(n)).rho == Catch::Approx(k_2_n2_rho(n)).margin(1e-9));
        REQUIRE(spectral_radius(k2_join_empty(n)).rho == Catch::Approx(k2_join_empty_rho(n)).margin(1e-9));
    }
    REQUIRE(spectral_radius(k_2_n2(10)).rho == Catch::Approx(4.0).margin(1e-9));            // sqrt(2*10-4)
    REQUIRE(spectral_radius(k2_join_empty(10)).rho ==
            Catch::Approx((1.0 + std::sqrt(65.0)) / 2.0).margin(1e-9));
    REQUIRE(spectral_radius(path_graph(3)).rho == Catch::Approx(std::sqrt(2.0)).margin(1e-9));
}

TEST_CASE("solver result invariants") {
    SpectralResult r = spectral_radius(star_graph(20));
    REQUIRE(r.converged);
    REQUIRE(r.connected);
    REQUIRE(r.residual <= 1e-10);
    double mx = 0;
    for (double x : r.vector) {
        REQUIRE(x > 0);
        mx = std::max(mx, x);
    }
    REQUIRE(mx == Catch::Approx(1.0));
}

TEST_CASE("single vertex and edgeless graphs") {
    REQUIRE(spectral_radius(Graph(1)).rho == 0.0);
    SpectralResult r = spectral_radius(Graph(4));
    REQUIRE(r.rho == 0.0);
    REQUIRE(r.converged);
}

TEST_CASE("disconnected graphs decompose; the achieving component is named") {
    Graph g(8); // K3 on {0,1,2}, P5 on {3..7}: rho = 2 from K3
    g.add_edge(0, 1);
    g.add_edge(1, 2);
    g.add_edge(0, 2);
    for (int v = 3; v < 7; ++v) g.add_edge(v, v + 1);
    SpectralResult r = spectral_radius(g);
    REQUIRE_FALSE(r.connected);
    REQUIRE(r.achieving_component == 0);
    REQUIRE(r.rho == Catch::Approx(2.0).margin(1e-9));
    for (int v = 3; v < 8; ++v) REQUIRE(r.vector[static_cast<std::size_t>(v)] == 0.0);

    Graph h(8); // P3 and K4: K4 wins with rho 3, component index 1
    h.add_edge(0, 1);
    h.add_edge(1, 2);
    for (int i = 3; i < 7; ++i)
        for (int j = i + 1; j < 7; ++j) h.add_edge(i, j);
    SpectralResult rh = spectral_radius(h);
    REQUIRE(rh.achieving_component == 1);
    REQUIRE(rh.rho == Catch::Approx(3.0).margin(1e-9));
}

TEST_CASE("non-convergence is reported, not invented") {
    SolveOptions tight{1e-13, 5};
    SpectralResult r = spectral_radius(path_graph(200), tight);
    REQUIRE_FALSE(r.converged);
    REQUIRE(r.iterations == 5);
    REQUIRE_THROWS_AS(spectral_radius_checked(path_graph(200), tight), NonConvergenceError);
}

TEST_CASE("rayleigh quotient examples") {
    std::vector<double> ones2{1, 1};
    REQUIRE(rayleigh_quotient(complete_graph(2), ones2) == Catch::Approx(1.0));
    std::vector<double> ones4{1, 1, 1, 1};
    REQUIRE(rayleigh_quotient(cycle_graph(4), ones4) == Catch::Approx(2.0));
    SpectralResult r = spectral_radius(star_graph(5));
    REQUIRE(rayleigh_quotient(star_graph(5), r.vector) == Catch::Approx(2.0).margin(1e-9));
    std::vector<double> zero4(4, 0.0);
    REQUIRE_THROWS_AS(rayleigh_quotient(cycle_graph(4), zero4), InvalidArgumentError);
    REQUIRE_THROWS_AS(rayleigh_quotient(cycle_graph(4), ones2), InvalidArgumentError);
}

TEST_CASE("rayleigh quotient never exceeds rho and is tight at the Perron vector") {
    std::mt19937_64 rng(3);
    for (int iter = 0; iter < 30; ++iter) {
        Graph g = random_connected(rng, 4 + static_cast<int>(rng() % 10));
        SpectralResult r = spectral_radius(g);
        REQUIRE(rayleigh_quotient(g, r.vector) >= r.rho - 1e-9);
        std::vector<double> x(static_cast<std::size_t>(g.order()));
        for (auto& v : x) v = 0.1 + static_cast<double>(rng() % 100) / 50.0;
        REQUIRE(rayleigh_quotient(g, x) <= r.rho + 1e-9);
    }
}

TEST_CASE("edge addition strictly increases rho on connected graphs") {
    std::mt19937_64 rng(5);
    int tested = 0;
    while (tested < 25) {
        Graph g = random_connected(rng, 5 + static_cast<int>(rng() % 8), 0.2);
        int n = g.order();
        int u = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
        if (u == v || g.has_edge(u, v)) continue;
        ++tested;
        double before = spectral_radius(g).rho;
        g.add_edge(u, v);
        double after = spectral_radius(g).rho;
        REQUIRE(after > before - 1e-9);
        REQUIRE(after > before); // strict on connected hosts
    }
}

TEST_CASE("induced subgraphs interlace") {
    std::mt19937_64 rng(9);
    for (int iter = 0; iter < 25; ++iter) {
        Graph g = random_connected(rng, 6 + static_cast<int>(rng() % 8));
        std::vector<int> verts;
        for (int v = 0; v < g.order(); ++v)
            if (rng() % 2) verts.push_back(v);
        if (verts.size() < 2) continue;
        Graph h = g.induced(verts);
        REQUIRE(spectral_radius(h).rho <= spectral_radius(g).rho + 1e-9);
    }
}

TEST_CASE("structured and dense solvers agree on join graphs") {
    std::mt19937_64 rng(13);
    for (int iter = 0; iter < 12; ++iter) {
        int k = 1 + static_cast<int>(rng() % 2);
        std::vector<int> parts;
        int total = 0;
        while (total < 20 + static_cast<int>(rng() % 60)) {
            int part = 1 + static_cast<int>(rng() % 7);
            parts.push_back(part);
            total += part;
        }
        JoinSpec spec(k, PathPartition(parts), k == 2);
        SpectralResult structured = spectral_radius(spec);
        SpectralResult dense = spectral_radius(realize(spec));
        REQUIRE(structured.converged);
        REQUIRE(dense.converged);
        REQUIRE(structured.rho == Catch::Approx(dense.rho).margin(1e-9));
    }
    for (int n : {100, 500}) {
        JoinSpec spec(1, h_op(n, 3, 2));
        REQUIRE(spectral_radius(spec).rho == Catch::Approx(spectral_radius(realize(spec)).rho).margin(1e-9));
    }
}

TEST_CASE("class bounds") {
    REQUIRE(outerplanar_bound(16) == Catch::Approx(1.5 + std::sqrt(14.25)));
    REQUIRE(planar_bound(16) == Catch::Approx(2.0 + std::sqrt(26.0)));
    REQUIRE(outerplanar_bound(3) >= 2.0); // rho(K3) = 2
    REQUIRE_THROWS_AS(outerplanar_bound(2), InvalidArgumentError);
    REQUIRE_THROWS_AS(planar_bound(2), InvalidArgumentError);
}

TEST_CASE("realized joins respect their class bounds") {
    std::mt19937_64 rng(17);
    for (int iter = 0; iter < 40; ++iter) {
        int k = 1 + static_cast<int>(rng() % 2);
        std::vector<int> parts;
        int total = 0;
        int target = 10 + static_cast<int>(rng() % 80);
        while (total < target) {
            int part = 1 + static_cast<int>(rng() % 9);
            parts.push_back(part);
            total += part;
        }
        JoinSpec spec(k, PathPartition(parts), k == 2);
        double rho = spectral_radius(spec).rho;
        double bound = k == 1 ? outerplanar_bound(spec.order()) : planar_bound(spec.order());
        REQUIRE(rho <= bound + 1e-9);
    }
}

TEST_CASE("eigenvector bracket equality cases") {
    // star: every leaf sits exactly at 1/rho
    SpectralResult star = spectral_radius(star_graph(30));
    BracketReport rep = check_eigenvector_bounds(star, 1);
    REQUIRE(rep.checked == 29);
    REQUIRE(rep.lower_violations == 0);
    for (int u = 1; u < 30; ++u)
        REQUIRE(star.vector[static_cast<std::size_t>(u)] == Catch::Approx(1.0 / star.rho).margin(1e-9));

    // two joined apexes over an independent set: every non-apex sits at 2/rho
    SpectralResult k2e = spectral_radius(JoinSpec(2, PathPartition(std::vector<int>(28, 1)), true));
    BracketReport rep2 = check_eigenvector_bounds(k2e, 2);
    REQUIRE(rep2.checked == 28);
    REQUIRE(rep2.lower_violations == 0);
    for (int u = 2; u < 30; ++u)
        REQUIRE(k2e.vector[static_cast<std::size_t>(u)] == Catch::Approx(2.0 / k2e.rho).margin(1e-9));
}

TEST_CASE("bracket reports measure where the asymptotic regime starts") {
    // At n = 200 the middle vertex of each P3 still pokes above the upper
    // bracket: x_mid = (rho+2)/(rho^2-2) <= 1/rho + 2.04/rho^2 needs
    // 0.04 rho^2 - 2 rho - 4.08 >= 0, i.e. rho >= ~52 or n around 2700.
    JoinSpec small(1, h_op(200, 3, 2));
    BracketReport rep = check_eigenvector_bounds(spectral_radius(small), 1);
    REQUIRE(rep.checked == 199);
    REQUIRE(rep.lower_violations == 0);
    REQUIRE(rep.upper_violations > 0);
    REQUIRE_FALSE(rep.all_within);

    JoinSpec large(1, h_op(3000, 3, 2));
    BracketReport rep2 = check_eigenvector_bounds(spectral_radius(large), 1);
    REQUIRE(rep2.all_within);
}

TEST_CASE("small-graph spectrum") {
    auto eig = small_graph_spectrum(complete_graph(4));
    REQUIRE(eig[0] == Catch::Approx(3.0).margin(1e-8));
    REQUIRE(eig[1] == Catch::Approx(-1.0).margin(1e-8));
    REQUIRE(eig[3] == Catch::Approx(-1.0).margin(1e-8));
    auto star = small_graph_spectrum(star_graph(5));
    REQUIRE(star[0] == Catch::Approx(2.0).margin(1e-8));
    REQUIRE(star[4] == Catch::Approx(-2.0).margin(1e-8));
}
