#include <doctest.h>

#include <cmath>

#include "ighc/errors.hpp"
#include "ighc/ground_state.hpp"
#include "ighc/model.hpp"
#include "ighc/random_fields.hpp"
#include "oracles.hpp"

using namespace ighc;

TEST_CASE("validate_params") {
    auto p1 = validate_params(2.0, 0.5, 1.0);
    CHECK(p1.p == doctest::Approx(4.0));
    auto p2 = validate_params(2.0, 0.0, 1.0);
    CHECK(p2.p == doctest::Approx(5.0));  // homogeneous case
    CHECK_THROWS_AS(validate_params(1.0, 0.7, 1.0), ConfigError);  // 0.7 > min(2/3, 1/2)
    CHECK_THROWS_AS(validate_params(3.5, 0.1, 1.0), ConfigError);
    CHECK_THROWS_AS(validate_params(2.0, -0.1, 1.0), ConfigError);
    CHECK_THROWS_AS(validate_params(2.0, 0.1, 0.5), ConfigError);
}

TEST_CASE("riesz_constant") {
    CHECK(riesz_constant(2.0) == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));
    CHECK(riesz_constant(1.0) == doctest::Approx(1.0 / (2.0 * M_PI * M_PI)).epsilon(1e-14));
}

TEST_CASE("apply_riesz: eigenfunction and inverse pair") {
    auto g = make_grid(16, 8.0);
    // single mode e^{ikx}, |k| = pi/4, alpha = 2 -> multiplied by (pi/4)^-2
    ScalarField mode(g);
    for (int ix = 0; ix < g->n; ++ix)
        for (int iy = 0; iy < g->n; ++iy)
            for (int iz = 0; iz < g->n; ++iz) {
                const double ph = (M_PI / 4.0) * g->coord[ix];
                mode.v[g->index(ix, iy, iz)] = cplx(std::cos(ph), std::sin(ph));
            }
    ScalarField r = apply_riesz(mode, 2.0);
    const double factor = std::pow(M_PI / 4.0, -2.0);
    double err = 0.0;
    for (std::size_t i = 0; i < mode.size(); ++i)
        err = std::max(err, std::abs(r.v[i] - factor * mode.v[i]));
    CHECK(err <= 1e-12 * factor);

    // fractional Laplacian then Riesz: identity on mean-zero fields
    ScalarField f = random_smooth_field(g, 5);
    cplx mean = 0.0;
    for (auto& z : f.v) mean += z;
    mean /= double(f.size());
    for (auto& z : f.v) z -= mean;
    SpectrumField s = to_spectrum(f);
    const int n = g->n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double k2 = g->wave[ix] * g->wave[ix] + g->wave[iy] * g->wave[iy] +
                                  g->wave[iz] * g->wave[iz];
                s.m[idx] *= k2 > 0 ? std::pow(k2, 1.0) : 0.0;  // |k|^alpha, alpha=2
            }
    ScalarField frac = from_spectrum(s);
    ScalarField back = apply_riesz(frac, 2.0);
    CHECK(norm_l2(ScalarField(g, [&] {
              std::vector<cplx> d(f.size());
              for (std::size_t i = 0; i < f.size(); ++i) d[i] = back.v[i] - f.v[i];
              return d;
          }())) <= 1e-12 * norm_l2(f));
}

TEST_CASE("apply_riesz warns on non-localized mean") {
    auto g = make_grid(16, 8.0);
    int warnings = 0;
    set_warning_handler([&](const std::string&) { ++warnings; });
    ScalarField pos = gaussian_init(g, 1.0, 1.5);  // strictly positive mean
    apply_riesz(pos, 2.0);
    CHECK(warnings == 1);
    set_warning_handler(nullptr);
}

TEST_CASE("apply_riesz vs direct-space oracle (16^3)") {
    auto g = make_grid(16, 16.0);
    ScalarField f = gaussian_init(g, 1.0, 2.0);
    cplx mean = integrate(f) / (g->L * g->L * g->L);
    for (auto& z : f.v) z -= mean;
    set_warning_handler([](const std::string&) {});
    ScalarField spec = apply_riesz(f, 2.0);
    set_warning_handler(nullptr);
    ScalarField direct = oracles::riesz_direct(f, 2.0);
    // Compared on |x| <= L/4 with region-mean alignment: a minimum-image sum
    // cannot reproduce the periodic kernel's topology constant, which shows up
    // as an ~15% global-L2 offset at any resolution. The aligned interior
    // comparison isolates the kernel amplitude and profile.
    CHECK(oracles::interior_mean_aligned_error(spec, direct, g->L / 4.0) <= 5e-2);
}

TEST_CASE("riesz is self-adjoint and positive") {
    auto g = make_grid(16, 10.0);
    set_warning_handler([](const std::string&) {});
    ScalarField f = random_smooth_field(g, 21);
    ScalarField h = random_smooth_field(g, 22);
    ScalarField Rf = apply_riesz(f, 1.7);
    ScalarField Rh = apply_riesz(h, 1.7);
    cplx a = 0.0, b = 0.0, q = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        a += std::conj(h.v[i]) * Rf.v[i];
        b += std::conj(Rh.v[i]) * f.v[i];
        q += std::conj(f.v[i]) * Rf.v[i];
    }
    CHECK(std::abs(a - b) <= 1e-11 * std::abs(a));
    CHECK(q.real() >= 0.0);
    CHECK(std::abs(q.imag()) <= 1e-11 * std::abs(q));
    set_warning_handler(nullptr);
}

TEST_CASE("hartree_phase examples") {
    auto g = make_grid(32, 20.0);
    auto prm = validate_params(2.0, 0.5, 1.0);
    ScalarField zero(g);
    CHECK(norm_inf(hartree_phase(zero, prm)) == 0.0);

    ScalarField u = gaussian_init(g, 1.2, 1.5);
    ScalarField phi = hartree_phase(u, prm);
    // real and nonnegative for the focusing sign
    double min_re = 0.0, max_im = 0.0;
    for (auto& z : phi.v) {
        min_re = std::min(min_re, z.real());
        max_im = std::max(max_im, std::abs(z.imag()));
    }
    CHECK(min_re >= -1e-14 * norm_inf(phi));
    CHECK(max_im <= 1e-12 * norm_inf(phi));

    // defocusing is the exact pointwise negation
    auto prm_d = validate_params(2.0, 0.5, -1.0);
    ScalarField phi_d = hartree_phase(u, prm_d);
    double err = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        err = std::max(err, std::abs(phi_d.v[i] + phi.v[i]));
    CHECK(err == 0.0);

    // two evaluation orders of the double integral agree:
    // integrate(w|u|^p * I(w|u|^p)) == P(u) via the spectral route
    Model model(g, prm);
    ScalarField gw = model.weighted_power(u);
    ScalarField G = model.apply_riesz(gw);
    ScalarField prod(g);
    for (std::size_t i = 0; i < u.size(); ++i) prod.v[i] = gw.v[i] * G.v[i];
    const double route1 = integrate(prod).real();
    // spectral route: sum |k|^-a |ghat|^2 * parseval constant
    SpectrumField s = to_spectrum(gw);
    double route2 = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < g->n; ++ix)
        for (int iy = 0; iy < g->n; ++iy)
            for (int iz = 0; iz < g->n; ++iz, ++idx) {
                const double k2 = g->wave[ix] * g->wave[ix] + g->wave[iy] * g->wave[iy] +
                                  g->wave[iz] * g->wave[iz];
                if (k2 > 0) route2 += std::norm(s.m[idx]) / k2;
            }
    route2 *= parseval_constant(*g);
    CHECK(route1 == doctest::Approx(route2).epsilon(1e-10));
    CHECK(route1 == doctest::Approx(model.potential(u)).epsilon(1e-12));
}

TEST_CASE("potential_energy examples") {
    auto g = make_grid(32, 20.0);
    auto prm = validate_params(2.0, 0.5, 1.0);
    ScalarField zero(g);
    CHECK(potential_energy(zero, prm) == 0.0);

    ScalarField u = gaussian_init(g, 1.0, 1.5);
    const double P = potential_energy(u, prm);
    CHECK(P >= 0.0);
    ScalarField cu(g);
    for (std::size_t i = 0; i < u.size(); ++i) cu.v[i] = 1.3 * u.v[i];
    CHECK(potential_energy(cu, prm) ==
          doctest::Approx(std::pow(1.3, 2.0 * prm.p) * P).epsilon(1e-10));

    // P >= 0 for both signs on random complex data
    auto prm_d = validate_params(2.0, 0.5, -1.0);
    for (int s = 0; s < 5; ++s) {
        ScalarField f = random_smooth_field(g, 100 + s);
        CHECK(potential_energy(f, prm) >= 0.0);
        CHECK(potential_energy(f, prm_d) >= 0.0);
    }
}

TEST_CASE("energy and mass") {
    auto g = make_grid(32, 20.0);
    auto prm = validate_params(2.0, 0.5, 1.0);
    ScalarField zero(g);
    CHECK(energy(zero, prm) == 0.0);
    CHECK(mass(zero) == 0.0);

    // defocusing: E >= K >= 0 always
    auto prm_d = validate_params(2.0, 0.5, -1.0);
    ScalarField u = gaussian_init(g, 1.3, 1.5);
    const double K = sobolev_h1dot(u) * sobolev_h1dot(u);
    CHECK(energy(u, prm_d) >= K);
    CHECK(energy(u, prm) == doctest::Approx(K - potential_energy(u, prm) / prm.p).epsilon(1e-13));

    ScalarField prop = free_propagator(u, 0.4);
    CHECK(mass(prop) == doctest::Approx(mass(u)).epsilon(1e-13));
}

TEST_CASE("Hardy-type bound with fitted constant") {
    auto g = make_grid(32, 16.0);
    SingularWeight w1(*g, 1.0, g->h);
    double CH = 0.0;
    for (int s = 0; s < 40; ++s) {
        ScalarField f = random_smooth_field(g, 300 + s, 2.5, 4.0);
        double num = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) num += w1.w[i] * w1.w[i] * std::norm(f.v[i]);
        num = std::sqrt(num * g->h * g->h * g->h);
        CH = std::max(CH, num / sobolev_h1dot(f));
    }
    CHECK(CH > 0.0);
    CHECK(CH <= 2.2);  // continuum Hardy constant is 2
}

TEST_CASE("singular weight invariants") {
    auto g = make_grid(16, 8.0);
    SingularWeight w(*g, 0.7, g->h);
    double mx = 0.0;
    for (double x : w.w) {
        CHECK(x > 0.0);
        mx = std::max(mx, x);
    }
    CHECK(mx <= std::pow(g->h, -0.7) * (1 + 1e-12));
    SingularWeight w0(*g, 0.0, g->h);
    for (double x : w0.w) CHECK(x == 1.0);
}
