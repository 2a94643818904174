#include <doctest.h>

#include "ringcav/routing.hpp"
#include "test_util.hpp"

using namespace ringcav;

namespace {

SystemParams router_params() {
    SystemParams p;
    p.g = 0.5;
    p.kappa_in = 0.1;
    p.delta = 0.0;
    p.delta_ac = 10.0;
    p.epsilon = 1e-3;
    return p;
}

// NC realized with N = 10 atoms at kappa = 0.1, gamma = 1.
SystemParams params_for_nc(Scalar nc, Scalar delta_over_gamma) {
    SystemParams p = router_params();
    p.delta_ac = delta_over_gamma;
    p.g = std::sqrt(nc * p.kappa() * p.gamma / (4 * 10));
    return p;
}

}  // namespace

TEST_SUITE_BEGIN("routing");

TEST_CASE("fully structured chain routes into the backward port") {
    SystemParams p = router_params();
    const RoutingMetrics m = routing_metrics(p, 10, {10.0, 0.0});
    CHECK(m.n_out_minus == doctest::Approx(40000.0 / 40801.0).epsilon(1e-12));
    CHECK(m.n_out_plus < 0.02);
    CHECK(m.n_out_tot <= 1.0 + 1e-12);
}

TEST_CASE("unstructured chain reflects the input") {
    SystemParams p = router_params();
    const RoutingMetrics m = routing_metrics(p, 10, {0.0, 0.0});
    CHECK(m.n_out_minus == 0.0);
    CHECK(m.n_out_plus > 0.95);
    CHECK_FALSE(m.phi_minus.has_value());  // zero amplitude: flagged, not 0
    CHECK(m.phi_plus.has_value());
}

TEST_CASE("empty resonant ring transmits everything forward") {
    SystemParams p = router_params();
    p.g = 0.0;
    const RoutingMetrics m = routing_metrics(p, 0, {0.0, 0.0});
    CHECK(m.n_out_plus == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(m.n_out_minus == 0.0);
    // Full transmission: a_+^out = -i eps, in phase with the input.
    CHECK(*m.phi_plus == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
}

TEST_CASE("translation rotates phi_minus with arg S and leaves phi_plus") {
    SystemParams p = router_params();
    const AtomChain chain = chain_with_structure(10, 7.0);
    const Scalar d = 0.0931;
    const RoutingMetrics before = routing_metrics(p, chain);
    const RoutingMetrics after = routing_metrics(p, translate_chain(chain, d));
    CHECK(*after.phi_plus == doctest::Approx(*before.phi_plus).epsilon(1e-10));
    const Scalar shift = wrap_phase(*after.phi_minus - *before.phi_minus);
    CHECK(shift == doctest::Approx(wrap_phase(4 * pi * d)).epsilon(1e-9));
}

TEST_CASE("phase contrast between full and zero structure reaches pi over the scan") {
    SystemParams p = router_params();
    Scalar max_contrast = 0.0;
    for (int i = 0; i <= 3000; ++i) {
        p.delta = -1.0 + 2.5 * i / 3000;
        const RoutingMetrics full = routing_metrics(p, 10, {10.0, 0.0});
        const RoutingMetrics zero = routing_metrics(p, 10, {0.0, 0.0});
        if (full.phi_plus && zero.phi_plus)
            max_contrast =
                std::max(max_contrast, std::abs(wrap_phase(*full.phi_plus - *zero.phi_plus)));
    }
    CHECK(max_contrast > 0.9 * pi);
}

TEST_CASE("zero-structure phase curve crosses the resonance monotonically") {
    SystemParams p = router_params();
    // Unwrapped phi_plus across the shifted cavity resonance.
    Scalar prev = 0.0, unwrapped = 0.0;
    bool first = true;
    std::vector<Scalar> curve;
    for (int i = 0; i <= 2000; ++i) {
        p.delta = 0.1 + 0.8 * i / 2000;  // brackets the resonance near 0.5
        const RoutingMetrics m = routing_metrics(p, 10, {0.0, 0.0});
        REQUIRE(m.phi_plus.has_value());
        if (first) {
            unwrapped = *m.phi_plus;
            first = false;
        } else {
            unwrapped += wrap_phase(*m.phi_plus - prev);
        }
        prev = *m.phi_plus;
        curve.push_back(unwrapped);
    }
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i] <= curve[i - 1] + 1e-9);
    // An overcoupled single-mode resonance winds the phase by 2 pi.
    CHECK(curve.front() - curve.back() == doctest::Approx(2 * pi).epsilon(0.05));
}

TEST_CASE("maximum loss: numeric agrees with the closed form at NC = 100") {
    SystemParams p = router_params();
    const LossMaximum numeric = max_photon_loss_numeric(p, 10);
    const Scalar analytic = max_photon_loss_analytic(100.0, 10.0);
    CHECK(analytic == doctest::Approx(0.05843554).epsilon(1e-5));
    CHECK(numeric.n_loss == doctest::Approx(analytic).epsilon(1e-8));
    CHECK(numeric.argmax_s > 0.0);
    CHECK(numeric.argmax_s < 10.0);
}

TEST_CASE("loss branches: low cooperativity uses the endpoint expression") {
    const Scalar analytic = max_photon_loss_analytic(1.0, 3.0);
    CHECK(analytic == doctest::Approx(4.0 / (4.0 + 36.0)).epsilon(1e-12));
    const SystemParams p = params_for_nc(1.0, 3.0);
    const LossMaximum numeric = max_photon_loss_numeric(p, 10);
    CHECK(numeric.n_loss == doctest::Approx(analytic).epsilon(1e-6));
}

TEST_CASE("loss vanishes in the gamma-free limit") {
    Scalar prev = 1.0;
    for (const Scalar dg : {10.0, 100.0, 1000.0, 10000.0}) {
        const Scalar loss = max_photon_loss_analytic(100.0, dg);
        CHECK(loss < prev);
        prev = loss;
    }
    CHECK(prev < 1e-4);
}

TEST_CASE("high-cooperativity limit of the loss") {
    const Scalar dg = 10.0;
    const Scalar limit = (std::sqrt(1 + 4 * dg * dg) - 1) / (4 * dg * dg);
    CHECK(max_photon_loss_analytic(1e7, dg) == doctest::Approx(limit).epsilon(1e-4));
}

TEST_CASE("property: the two loss branches meet at the boundary") {
    for (const Scalar nc : {2.5, 5.0, 10.0, 50.0, 300.0, 2000.0}) {
        const Scalar beta = loss_branch_beta(nc);
        const Scalar dg = beta / 2;
        const Scalar x4 = 4 * dg * dg;
        const Scalar n1 = nc + 1;
        const Scalar interior =
            1 / n1 + std::sqrt((1 + x4) * (n1 * n1 + x4)) / (n1 * x4) - 1 / x4;
        const Scalar endpoint = 4 * nc / (n1 * n1 + x4);
        CHECK(std::abs(interior - endpoint) < 1e-9);
    }
}

TEST_CASE("property: analytic loss equals numeric maximization on a grid") {
    // Compact version of the acceptance grid.
    for (const Scalar nc : {0.5, 2.5, 20.0, 400.0}) {
        for (const Scalar dg : {1.0, 4.0, 30.0}) {
            const SystemParams p = params_for_nc(nc, dg);
            const Scalar numeric = max_photon_loss_numeric(p, 10).n_loss;
            const Scalar analytic = max_photon_loss_analytic(nc, dg);
            CHECK(numeric == doctest::Approx(analytic).epsilon(1e-6));
        }
    }
}

TEST_CASE("tuning range closed form and numeric variant") {
    CHECK(tuning_range_analytic(100.0, 10.0) ==
          doctest::Approx(40000.0 / 40801.0).epsilon(1e-14));
    CHECK(tuning_range_analytic(0.0, 5.0) == 0.0);
    CHECK(tuning_range_analytic(1e9, 10.0) == doctest::Approx(1.0).epsilon(1e-6));
    const SystemParams p = router_params();
    CHECK(tuning_range_numeric(p, 10) ==
          doctest::Approx(tuning_range_analytic(100.0, 10.0)).epsilon(1e-12));
}

TEST_CASE("router figures bundle") {
    const SystemParams p = router_params();
    const RouterFigures fig = router_figures(p, 10);
    CHECK(fig.tuning_range == doctest::Approx(40000.0 / 40801.0).epsilon(1e-9));
    CHECK(fig.n_loss == doctest::Approx(0.05843554).epsilon(1e-4));
}

TEST_CASE("feasible region thresholds") {
    const FeasibleRegion region = feasible_region(0.9, 0.01);
    CHECK(region.feasible);
    CHECK(region.nc_min == doctest::Approx(278.0).epsilon(0.02));
    CHECK(region.min_detuning == doctest::Approx(1 / (2 * 0.01)).epsilon(0.02));

    const FeasibleRegion relaxed = feasible_region(0.8, 0.02);
    CHECK(relaxed.feasible);
    CHECK(relaxed.nc_min < region.nc_min);

    CHECK_THROWS_AS(feasible_region(1.5, 0.01), std::invalid_argument);
}

TEST_CASE("mirror ratio scan endpoints and monotonicity") {
    const SystemParams p = params_for_nc(200.0, 30.0);
    const auto scan = mirror_ratio_scan(p, 10, 21);
    REQUIRE(scan.size() == 21);
    CHECK(scan.front().ratio == 0.0);
    CHECK(scan.front().tuning_range == 0.0);
    CHECK(scan.front().n_loss == doctest::Approx(0.0));
    CHECK(scan.back().tuning_range ==
          doctest::Approx(tuning_range_analytic(200.0, 30.0)).epsilon(1e-9));
    for (std::size_t i = 1; i < scan.size(); ++i)
        CHECK(scan[i].tuning_range >= scan[i - 1].tuning_range - 1e-12);
    CHECK(scan[2].n_loss < scan.back().n_loss);  // weak coupling leaks little
}

TEST_CASE("property: passivity of the outputs") {
    std::mt19937_64 rng(501);
    std::uniform_real_distribution<Scalar> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        SystemParams p = test::random_params(rng);
        const AtomChain chain = test::random_chain(rng, 40);
        const RoutingMetrics m = routing_metrics(p, chain);
        CHECK(m.n_out_plus >= 0.0);
        CHECK(m.n_out_minus >= 0.0);
        CHECK(m.n_out_tot <= 1.0 + 1e-12);
    }
}

TEST_CASE("property: without free-space decay the router is unitary") {
    std::mt19937_64 rng(502);
    std::uniform_real_distribution<Scalar> u(0.0, 1.0);
    for (int trial = 0; trial < 1000; ++trial) {
        SystemParams p = test::random_params(rng);
        p.gamma = 1e-9;
        p.kappa_other = 0.0;  // the input mirror is the only photon port
        const AtomChain chain = test::random_chain(rng, 30);
        const RoutingMetrics m = routing_metrics(p, chain);
        CHECK(m.n_out_tot == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("property: outputs depend on the chain only through |S|") {
    std::mt19937_64 rng(503);
    std::uniform_real_distribution<Scalar> u(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        SystemParams p = test::random_params(rng);
        const int n = 2 * (1 + static_cast<int>(10 * u(rng)));
        const Scalar s = n * u(rng);
        const AtomChain geometry1 = chain_with_structure(n, s);
        const AtomChain geometry2 = translate_chain(geometry1, u(rng));
        const RoutingMetrics m1 = routing_metrics(p, geometry1);
        const RoutingMetrics m2 = routing_metrics(p, geometry2);
        CHECK(m1.n_out_plus == doctest::Approx(m2.n_out_plus).epsilon(1e-10));
        CHECK(m1.n_out_minus == doctest::Approx(m2.n_out_minus).epsilon(1e-10));
    }
}

TEST_SUITE_END();
