#include "ighc/diagnostics.hpp"

#include <cmath>

#include "ighc/errors.hpp"
#include "ighc/fft.hpp"

namespace ighc {

MorawetzWeight MorawetzWeight::truncated(double R, double L, double C) {
    if (!(R > 0.0)) throw ConfigError("morawetz weight: R must be positive");
    if (R >= L / 4.0) throw ConfigError("morawetz weight: need R < L/4 so the plateau clears the wrap");
    if (C < 1.0) throw ConfigError("morawetz weight: plateau constant must be >= 1");
    MorawetzWeight w;
    w.kind = Kind::Truncated;
    w.R = R;
    w.C_plateau = C;
    auto [b1, b2] = w.derivative_bounds();
    if (b1 > 8.0 || b2 > 40.0)
        warn("morawetz weight: transition derivative bounds unusually large (|a'|/R = " +
             std::to_string(b1) + ", |a''| = " + std::to_string(b2) + ")");
    return w;
}

// Quintic Hermite transition g(s) on [0,1] with g(0)=1, g'(0)=2, g''(0)=2,
// g(1)=C, g'(1)=g''(1)=0; a(r) = R^2 g((r-R)/R) on [R,2R].
MorawetzWeight::Radial MorawetzWeight::eval(double r) const {
    if (kind == Kind::Quadratic) return {r * r, 2.0 * r, 2.0};
    if (r <= R) return {r * r, 2.0 * r, 2.0};
    if (r >= 2.0 * R) return {C_plateau * R * R, 0.0, 0.0};
    const double s = (r - R) / R;
    const double s2 = s * s, s3 = s2 * s, s4 = s3 * s, s5 = s4 * s;
    const double h00 = 1.0 - 10.0 * s3 + 15.0 * s4 - 6.0 * s5;
    const double h10 = s - 6.0 * s3 + 8.0 * s4 - 3.0 * s5;
    const double h20 = 0.5 * (s2 - 3.0 * s3 + 3.0 * s4 - s5);
    const double h01 = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    const double d_h00 = -30.0 * s2 + 60.0 * s3 - 30.0 * s4;
    const double d_h10 = 1.0 - 18.0 * s2 + 32.0 * s3 - 15.0 * s4;
    const double d_h20 = 0.5 * (2.0 * s - 9.0 * s2 + 12.0 * s3 - 5.0 * s4);
    const double d_h01 = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
    const double dd_h00 = -60.0 * s + 180.0 * s2 - 120.0 * s3;
    const double dd_h10 = -36.0 * s + 96.0 * s2 - 60.0 * s3;
    const double dd_h20 = 0.5 * (2.0 - 18.0 * s + 36.0 * s2 - 20.0 * s3);
    const double dd_h01 = 60.0 * s - 180.0 * s2 + 120.0 * s3;
    const double g = h00 + 2.0 * h10 + 2.0 * h20 + C_plateau * h01;
    const double dg = d_h00 + 2.0 * d_h10 + 2.0 * d_h20 + C_plateau * d_h01;
    const double ddg = dd_h00 + 2.0 * dd_h10 + 2.0 * dd_h20 + C_plateau * dd_h01;
    return {R * R * g, R * dg, ddg};
}

std::pair<double, double> MorawetzWeight::derivative_bounds() const {
    if (kind == Kind::Quadratic) return {0.0, 2.0};
    double m1 = 0.0, m2 = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double r = R * (1.0 + i / 200.0);
        const Radial a = eval(r);
        m1 = std::max(m1, std::abs(a.da) / R);
        m2 = std::max(m2, std::abs(a.dda));
    }
    return {m1, m2};
}

double morawetz_action(const ScalarField& u, const MorawetzWeight& w) {
    const auto& g = *u.grid;
    auto grad = gradient(u);
    const int n = g.n;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x = g.coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y = g.coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double z = g.coord[iz];
                double ax = 2.0 * x, ay = 2.0 * y, az = 2.0 * z;  // grad a, quadratic
                if (w.kind == MorawetzWeight::Kind::Truncated) {
                    const double r = std::sqrt(x * x + y * y + z * z);
                    const double fac = r > 0.0 ? w.eval(r).da / r : 2.0;
                    ax = fac * x;
                    ay = fac * y;
                    az = fac * z;
                }
                const cplx du = std::conj(u.v[idx]) *
                                (ax * grad[0].v[idx] + ay * grad[1].v[idx] + az * grad[2].v[idx]);
                acc += du.imag();
            }
        }
    }
    const double h3 = g.h * g.h * g.h;
    return 2.0 * acc * h3;
}

double virial_rhs(const ScalarField& u, const ModelParams& prm) {
    const double K = sobolev_h1dot(u);
    return 8.0 * (K * K - prm.sigma * potential_energy(u, prm));
}

Rational virial_coefficient_sum(const Rational& alpha, const Rational& b) {
    const Rational p = Rational(3) + alpha - Rational(2) * b;
    const Rational term1 = Rational(6) * (Rational(2) - Rational(4) / p);
    const Rational term2 = Rational(8) * b / p;
    const Rational term3 = Rational(4) * (Rational(3) - alpha) / p;
    return term1 + term2 + term3;
}

TruncatedMorawetz morawetz_rhs_truncated(const ScalarField& u, const MorawetzWeight& w,
                                         const ModelParams& prm, int stride) {
    if (w.kind != MorawetzWeight::Kind::Truncated)
        throw ConfigError("morawetz_rhs_truncated: needs a truncated weight");
    const auto& g = *u.grid;
    Model model(u.grid, prm);
    const double p = prm.p;
    const double sigma = prm.sigma;
    const double alpha = prm.alpha;
    const double Kconst = riesz_constant(alpha);

    // shared fields
    auto grad = gradient(u);
    ScalarField gw = model.weighted_power(u);       // w |u|^p (real)
    ScalarField V = model.riesz().apply(gw, /*warn_on_mean=*/false);  // I_alpha conv gw
    // |u|^2 and its spectral Laplacian (for the -int lap^2 a |u|^2 term,
    // integrated by parts onto |u|^2 so a C^2 weight suffices)
    ScalarField u2(u.grid);
    for (std::size_t i = 0; i < u.size(); ++i) u2.v[i] = std::norm(u.v[i]);
    ScalarField lap_u2 = laplacian(u2);

    const int n = g.n;
    const double h3 = g.h * g.h * g.h;
    double t_bilap = 0.0, t_hess = 0.0, t_lapa = 0.0, t_weight = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x = g.coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y = g.coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double z = g.coord[iz];
                const double r = std::sqrt(x * x + y * y + z * z);
                const auto a = w.eval(r);
                const double lap_a = r > 0.0 ? a.dda + 2.0 * a.da / r : 6.0;
                const double aor = r > 0.0 ? a.da / r : 2.0;  // a'/r
                // -int (lap^2 a)|u|^2 = -int (lap a) lap(|u|^2)
                t_bilap -= lap_a * lap_u2.v[idx].real();
                // 4 int a_jk Re(d_j conj(u) d_k u)
                const cplx gx = grad[0].v[idx], gy = grad[1].v[idx], gz = grad[2].v[idx];
                const double g2 = std::norm(gx) + std::norm(gy) + std::norm(gz);
                double rad = 0.0;
                if (r > 0.0) {
                    const cplx ur = (x * gx + y * gy + z * gz) / r;
                    rad = std::norm(ur);
                }
                t_hess += 4.0 * ((a.dda - aor) * rad + aor * g2);
                const double Vg = V.v[idx].real() * gw.v[idx].real();
                t_lapa -= sigma * (2.0 - 4.0 / p) * lap_a * Vg;
                t_weight -= sigma * (4.0 * prm.b / p) * aor * Vg;
            }
        }
    }
    TruncatedMorawetz out;
    out.local_terms = (t_bilap + t_hess + t_lapa + t_weight) * h3;

    // Pair term. Inside |x|,|y| <= R the weight is exactly quadratic and
    // (grad a(x)-grad a(y)).(x-y) = 2|x-y|^2, so that block is a convolution
    // with the plain kernel K|z|^{alpha-3} (minimum image), done with FFTs on
    // the full grid. Pairs touching the transition/plateau are summed
    // directly on a stride-subsampled grid.
    ScalarField g_in(u.grid), g_out(u.grid);
    idx = 0;
    for (int ix = 0; ix < n; ++ix)
        for (int iy = 0; iy < n; ++iy)
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double r = std::sqrt(g.coord[ix] * g.coord[ix] + g.coord[iy] * g.coord[iy] +
                                           g.coord[iz] * g.coord[iz]);
                if (r <= w.R)
                    g_in.v[idx] = gw.v[idx];
                else
                    g_out.v[idx] = gw.v[idx];
            }
    // FFT convolution with the minimum-image direct kernel
    std::vector<cplx> ker(g.points());
    idx = 0;
    const double r_eff = std::cbrt(3.0 / (4.0 * M_PI)) * g.h;  // equal-volume self cell
    for (int ix = 0; ix < n; ++ix) {
        double zx = g.coord[(ix + n / 2) % n];  // displacement table centered at 0
        for (int iy = 0; iy < n; ++iy) {
            double zy = g.coord[(iy + n / 2) % n];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                double zz = g.coord[(iz + n / 2) % n];
                const double r = std::sqrt(zx * zx + zy * zy + zz * zz);
                double kv;
                if (r < 0.5 * g.h)
                    kv = Kconst * 4.0 * M_PI * std::pow(r_eff, alpha) / (alpha * g.h * g.h * g.h);
                else
                    kv = Kconst * std::pow(r, alpha - 3.0);
                ker[idx] = kv;
            }
        }
    }
    fft3(n, ker.data(), true);
    std::vector<cplx> gin_hat(g_in.v);
    fft3(n, gin_hat.data(), true);
    for (std::size_t i = 0; i < gin_hat.size(); ++i) gin_hat[i] *= ker[i] * h3;
    fft3(n, gin_hat.data(), false);
    double inner = 0.0;
    for (std::size_t i = 0; i < gin_hat.size(); ++i) inner += gin_hat[i].real() * g_in.v[i].real();
    inner *= h3;
    const double T5_in = -sigma * (4.0 * (3.0 - alpha) / p) * inner;

    // strided direct sum for pairs involving the exterior
    auto direct_sum = [&](int s) {
        std::vector<std::array<double, 5>> pts;  // x,y,z,g,is_in
        for (int ix = 0; ix < n; ix += s)
            for (int iy = 0; iy < n; iy += s)
                for (int iz = 0; iz < n; iz += s) {
                    const double gv = gw.v[g.index(ix, iy, iz)].real();
                    if (std::abs(gv) < 1e-300) continue;
                    const double x = g.coord[ix], y = g.coord[iy], z = g.coord[iz];
                    const double r = std::sqrt(x * x + y * y + z * z);
                    pts.push_back({x, y, z, gv, r <= w.R ? 1.0 : 0.0});
                }
        const double cell = std::pow(s * g.h, 3);
        double acc = 0.0;
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const auto& P = pts[i];
            const double ri = std::sqrt(P[0] * P[0] + P[1] * P[1] + P[2] * P[2]);
            const double dai = w.eval(ri).da;
            const double fx = ri > 0 ? dai * P[0] / ri : 0.0;
            const double fy = ri > 0 ? dai * P[1] / ri : 0.0;
            const double fz = ri > 0 ? dai * P[2] / ri : 0.0;
            for (std::size_t j = 0; j < pts.size(); ++j) {
                const auto& Q = pts[j];
                if (P[4] == 1.0 && Q[4] == 1.0) continue;  // in-in handled above
                double dx = P[0] - Q[0], dy = P[1] - Q[1], dz = P[2] - Q[2];
                dx -= g.L * std::round(dx / g.L);
                dy -= g.L * std::round(dy / g.L);
                dz -= g.L * std::round(dz / g.L);
                const double rr = std::sqrt(dx * dx + dy * dy + dz * dz);
                if (rr < 1e-12) continue;
                const double rj = std::sqrt(Q[0] * Q[0] + Q[1] * Q[1] + Q[2] * Q[2]);
                const double daj = w.eval(rj).da;
                const double gx = fx - (rj > 0 ? daj * Q[0] / rj : 0.0);
                const double gy = fy - (rj > 0 ? daj * Q[1] / rj : 0.0);
                const double gz = fz - (rj > 0 ? daj * Q[2] / rj : 0.0);
                acc += (gx * dx + gy * dy + gz * dz) / std::pow(rr, 5.0 - alpha) * P[3] * Q[3];
            }
        }
        return -sigma * (2.0 * Kconst * (3.0 - alpha) / p) * acc * cell * cell;
    };
    const double T5_out = direct_sum(stride);
    const double T5_out_coarse = direct_sum(2 * stride);
    out.double_term = T5_in + T5_out;
    out.richardson_delta = std::abs(T5_out - T5_out_coarse);
    if (out.richardson_delta > 0.1 * std::abs(T5_out) + 1e-12) {
        out.warned = true;
        warn("morawetz_rhs_truncated: stride-subsampled pair term Richardson delta " +
             std::to_string(out.richardson_delta) + " exceeds 10% of the term");
    }
    out.value = out.local_terms + out.double_term;
    return out;
}

double tightness_measure(const ScalarField& u, double R, const ModelParams& prm) {
    const auto& g = *u.grid;
    if (!(R < g.L / 2.0)) throw ConfigError("tightness_measure: need R < L/2");
    Model model(u.grid, prm);
    auto grad = gradient(u);
    ScalarField gw = model.weighted_power(u);
    ScalarField V = model.riesz().apply(gw, /*warn_on_mean=*/false);
    const double eps = effective_eps(prm, g);
    const int n = g.n;
    double acc = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x2 = g.coord[ix] * g.coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y2 = g.coord[iy] * g.coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double r2 = x2 + y2 + g.coord[iz] * g.coord[iz];
                if (r2 <= R * R) continue;
                const double g2 = std::norm(grad[0].v[idx]) + std::norm(grad[1].v[idx]) +
                                  std::norm(grad[2].v[idx]);
                acc += g2 + std::norm(u.v[idx]) / (r2 + eps * eps) +
                       V.v[idx].real() * gw.v[idx].real();
            }
        }
    }
    return acc * g.h * g.h * g.h;
}

double frequency_scale(const ScalarField& u) {
    const auto& g = *u.grid;
    SpectrumField s = to_spectrum(u);
    const int n = g.n;
    std::vector<double> k2(g.points());
    double total = 0.0;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double kx2 = g.wave[ix] * g.wave[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double ky2 = g.wave[iy] * g.wave[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                k2[idx] = kx2 + ky2 + g.wave[iz] * g.wave[iz];
                total += k2[idx] * std::norm(s.m[idx]);
            }
        }
    }
    if (!(total > 0.0)) throw ConfigError("frequency_scale: zero field");
    const double kfloor = 2.0 * M_PI / g.L;
    int j = static_cast<int>(std::floor(std::log2(kfloor))) - 1;
    const int jmax = static_cast<int>(std::ceil(std::log2(1.1 * g.kmax()))) + 1;
    for (; j <= jmax; ++j) {
        const double N = std::ldexp(1.0, j);
        double cum = 0.0;
        for (std::size_t i = 0; i < k2.size(); ++i) {
            const double psi = lp_symbol(std::sqrt(k2[i]) / N);
            cum += psi * psi * k2[i] * std::norm(s.m[i]);
        }
        if (cum >= 0.5 * total) return std::max(N, kfloor);
    }
    return std::max(std::ldexp(1.0, jmax), kfloor);
}

double s1_space_exponent(double p) { return 6.0 * p / (p - 2.0); }

double s1_accumulate(const Trajectory& traj) {
    return traj.records.empty() ? 0.0 : traj.records.back().s1_accum;
}

ScatterVerdict scattering_detector(const Trajectory& traj, const ModelParams& prm, double tol,
                                   int window, double decay_factor) {
    ScatterVerdict v;
    if (traj.checkpoints.size() < 2 || traj.records.size() < 2)
        throw ConfigError("scattering_detector: trajectory lacks checkpoints");
    const double P0 = traj.records.front().potential;
    const double Pend = traj.records.back().potential;
    v.P_decay_factor = Pend > 0.0 ? P0 / Pend : (P0 > 0.0 ? 1e300 : 1.0);
    v.S1_total = s1_accumulate(traj);

    // pullbacks v(t) = e^{-it lap} u(t) at checkpoint cadence
    std::vector<std::pair<double, ScalarField>> pulls;
    pulls.reserve(traj.checkpoints.size());
    for (const auto& [tc, field] : traj.checkpoints)
        pulls.emplace_back(tc, free_propagator(field, -tc));
    const double href = traj.hdot_u0 > 0.0 ? traj.hdot_u0 : 1.0;

    const int W = std::max(2, window);
    const int first = std::max<int>(0, static_cast<int>(pulls.size()) - W);
    double drift = 0.0;
    for (std::size_t i = first; i < pulls.size(); ++i)
        for (std::size_t j = i + 1; j < pulls.size(); ++j)
            drift = std::max(drift, h1dot_distance(pulls[i].second, pulls[j].second));
    v.pullback_drift = drift / href;

    const bool drift_ok = v.pullback_drift < tol;
    const bool decay_ok = v.P_decay_factor > decay_factor;
    v.scattered = drift_ok && decay_ok;
    v.conclusive = v.scattered || (!drift_ok && !decay_ok);
    v.u_plus = pulls.back().second;

    if (v.scattered) {
        // earliest record time from which the P-decay criterion held
        for (const auto& r : traj.records)
            if (r.potential < P0 / decay_factor) {
                v.t_detect = r.t;
                break;
            }
        if (v.t_detect < 0.0) v.t_detect = traj.records.back().t;
    }
    return v;
}

}  // namespace ighc
