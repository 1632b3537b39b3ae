#include <doctest.h>

#include <cmath>

#include "ighc/errors.hpp"
#include "ighc/ground_state.hpp"
#include "ighc/random_fields.hpp"

using namespace ighc;

namespace {

// one shared solve at a small grid keeps the suite fast
const Grid& test_grid() {
    static Grid g = make_grid(32, 20.0);
    return g;
}

const GroundState& solved() {
    static GroundState gs = [] {
        auto prm = validate_params(2.0, 0.5, 1.0);
        return solve_ground_state(gaussian_init(test_grid(), 1.0, 1.0), prm);
    }();
    return gs;
}

}  // namespace

TEST_CASE("weinstein functional basics") {
    auto g = test_grid();
    auto prm = validate_params(2.0, 0.5, 1.0);
    ScalarField f = gaussian_init(g, 1.0, 1.5);
    const double J = weinstein_functional(f, prm);
    CHECK(J > 0.0);
    ScalarField cf(g);
    for (std::size_t i = 0; i < f.size(); ++i) cf.v[i] = 2.7 * f.v[i];
    CHECK(weinstein_functional(cf, prm) == doctest::Approx(J).epsilon(1e-10));
    CHECK_THROWS_AS(weinstein_functional(ScalarField(g), prm), ConfigError);
}

TEST_CASE("maximize_weinstein input contract") {
    auto g = test_grid();
    auto prm = validate_params(2.0, 0.5, 1.0);
    WeinsteinConfig cfg;
    ScalarField complex_init = gaussian_init(g, 1.0, 1.0);
    for (auto& z : complex_init.v) z *= cplx(0.8, 0.6);
    CHECK_THROWS_AS(maximize_weinstein(complex_init, cfg, prm), ConfigError);
    ScalarField signed_init = gaussian_init(g, 1.0, 1.0);
    signed_init.v[3] = -0.5;
    CHECK_THROWS_AS(maximize_weinstein(signed_init, cfg, prm), ConfigError);
    CHECK_THROWS_AS(maximize_weinstein(ScalarField(g), cfg, prm), ConfigError);
}

TEST_CASE("ground state identities at the canonical member") {
    const GroundState& gs = solved();
    // projected equation solved to machine precision
    CHECK(gs.residual_projected <= 1e-10);
    // Pohozaev K = P (exact at the int W = 0 member), and its consequences
    CHECK(std::abs(gs.K_W - gs.P_W) / gs.K_W <= 1e-10);
    CHECK(gs.C0 * std::pow(gs.K_W, 3.0) == doctest::Approx(1.0).epsilon(1e-10));  // p-1 = 3
    CHECK(gs.E_W == doctest::Approx(0.75 * gs.K_W).epsilon(1e-12));               // (1-1/p) K_W
    CHECK(gs.Hdot_W == doctest::Approx(std::sqrt(gs.K_W)).epsilon(1e-14));
    // the full residual carries the torus zero-mode floor; it must match the
    // standalone evaluation and decompose into (projected ~0) + (mean part)
    auto prm = validate_params(2.0, 0.5, 1.0);
    CHECK(elliptic_residual(gs.W, prm) == doctest::Approx(gs.residual).epsilon(1e-12));
    CHECK(gs.residual < 2e-2);
    CHECK(gs.residual > gs.residual_projected);

    // fixed point: restarting the ascent from W leaves J unchanged
    const double J0 = weinstein_functional(gs.W, prm);
    WeinsteinConfig cfg;
    cfg.newton_max = 0;
    ScalarField f2 = maximize_weinstein(gs.W, cfg, prm);
    CHECK(weinstein_functional(f2, prm) == doctest::Approx(J0).epsilon(1e-10));
}

TEST_CASE("two initializers land on the same root") {
    const GroundState& a = solved();
    auto prm = validate_params(2.0, 0.5, 1.0);
    GroundState b = solve_ground_state(bubble_init(test_grid(), 1.0, 1.0), prm);
    CHECK(std::abs(a.C0 - b.C0) / a.C0 <= 1e-10);
    CHECK(std::abs(a.K_W - b.K_W) / a.K_W <= 1e-10);
}

TEST_CASE("W profile sanity") {
    const GroundState& gs = solved();
    const auto& g = *gs.W.grid;
    const double wmax = norm_inf(gs.W);
    // max at the origin
    CHECK(std::abs(gs.W.v[g.index(g.n / 2, g.n / 2, g.n / 2)]) ==
          doctest::Approx(wmax).epsilon(1e-12));
    // nonnegative up to the torus tail undershoot (~1% of the peak)
    double wmin = 0.0;
    for (const auto& z : gs.W.v) wmin = std::min(wmin, z.real());
    CHECK(wmin >= -5e-2 * wmax);
    // radially nonincreasing along the +x axis up to the same undershoot scale
    double worst_rise = 0.0;
    for (int i = g.n / 2; i + 1 < g.n; ++i) {
        const double a = gs.W.v[g.index(i, g.n / 2, g.n / 2)].real();
        const double b = gs.W.v[g.index(i + 1, g.n / 2, g.n / 2)].real();
        worst_rise = std::max(worst_rise, b - a);
    }
    CHECK(worst_rise <= 1e-3 * wmax);
}

TEST_CASE("elliptic residual flags non-solutions") {
    auto g = test_grid();
    auto prm = validate_params(2.0, 0.5, 1.0);
    ScalarField gauss = gaussian_init(g, 1.0, 1.0);
    CHECK(elliptic_residual(gauss, prm) > 0.3);  // generic field is far from solving
    const GroundState& gs = solved();
    ScalarField w11(g);
    for (std::size_t i = 0; i < w11.size(); ++i) w11.v[i] = 1.1 * gs.W.v[i];
    CHECK(elliptic_residual(w11, prm) >= 0.05);  // amplitude detuning is visible
}

TEST_CASE("thresholds and threshold_check") {
    const GroundState& gs = solved();
    auto prm = validate_params(2.0, 0.5, 1.0);
    Thresholds th = thresholds(gs);
    CHECK(th.E_W == gs.E_W);
    CHECK(energy(gs.W, prm) == doctest::Approx((1.0 - 1.0 / prm.p) * gs.K_W).epsilon(1e-3));

    ScalarField half(gs.W.grid);
    for (std::size_t i = 0; i < half.size(); ++i) half.v[i] = 0.5 * gs.W.v[i];
    ThresholdReport r = threshold_check(half, gs, prm);
    CHECK(r.below_energy);
    CHECK(r.below_kinetic);
    CHECK(r.margin == doctest::Approx(0.5).epsilon(1e-10));

    ThresholdReport r1 = threshold_check(gs.W, gs, prm);
    CHECK(r1.at_threshold);

    // 1.2 W: kinetic 1.44 K_W, above the kinetic threshold
    ScalarField big(gs.W.grid);
    for (std::size_t i = 0; i < big.size(); ++i) big.v[i] = 1.2 * gs.W.v[i];
    ThresholdReport r2 = threshold_check(big, gs, prm);
    CHECK_FALSE(r2.below_kinetic);
    CHECK(r2.Hdot_u0 == doctest::Approx(1.2 * gs.Hdot_W).epsilon(1e-12));
}

TEST_CASE("Gagliardo-Nirenberg bound over a random suite") {
    auto g = test_grid();
    auto prm = validate_params(2.0, 0.5, 1.0);
    const GroundState& gs = solved();
    Model model(g, prm);
    double max_ratio = 0.0;
    for (int s = 0; s < 30; ++s) {
        ScalarField f = random_smooth_field(g, 4000 + s);
        const double K = sobolev_h1dot(f);
        const double J = model.potential(f) / std::pow(K * K, prm.p);
        max_ratio = std::max(max_ratio, J / gs.C0);
    }
    CHECK(max_ratio <= 1.0 + 1e-3);
    CHECK(weinstein_functional(gs.W, prm) / gs.C0 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("homogeneous case b = 0 solves too") {
    auto prm = validate_params(2.0, 0.0, 1.0);
    CHECK(prm.p == doctest::Approx(5.0));
    GroundState gs = solve_ground_state(gaussian_init(test_grid(), 1.0, 1.0), prm);
    CHECK(gs.residual_projected <= 1e-10);
    CHECK(std::abs(gs.K_W - gs.P_W) / gs.K_W <= 1e-10);
    CHECK(gs.C0 * std::pow(gs.K_W, 4.0) == doctest::Approx(1.0).epsilon(1e-9));
}
