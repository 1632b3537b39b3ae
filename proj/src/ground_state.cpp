#include "ighc/ground_state.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "ighc/errors.hpp"
#include "ighc/fft.hpp"

namespace ighc {

namespace {

using Vec = std::vector<double>;

// Real-field spectral toolbox for the solver loop: one complex scratch buffer,
// multiplier tables shared with the Model.
struct RealOps {
    const GridSpec& g;
    const Model& model;
    std::vector<cplx> buf;
    std::vector<double> k2;

    RealOps(const Model& m) : g(*m.grid()), model(m), buf(g.points()) {
        k2.resize(g.points());
        const int n = g.n;
        std::size_t idx = 0;
        for (int ix = 0; ix < n; ++ix) {
            const double kx2 = g.wave[ix] * g.wave[ix];
            for (int iy = 0; iy < n; ++iy) {
                const double ky2 = g.wave[iy] * g.wave[iy];
                for (int iz = 0; iz < n; ++iz, ++idx) k2[idx] = kx2 + ky2 + g.wave[iz] * g.wave[iz];
            }
        }
    }

    double dV() const { return g.h * g.h * g.h; }

    void spectral_apply(const Vec& in, Vec& out, const std::function<double(double)>& mult) {
        for (std::size_t i = 0; i < in.size(); ++i) buf[i] = in[i];
        fft3(g.n, buf.data(), true);
        for (std::size_t i = 0; i < in.size(); ++i) buf[i] *= mult(k2[i]);
        fft3(g.n, buf.data(), false);
        out.resize(in.size());
        for (std::size_t i = 0; i < in.size(); ++i) out[i] = buf[i].real();
    }

    void lap(const Vec& in, Vec& out) {
        spectral_apply(in, out, [](double q) { return -q; });
    }
    void inv_neglap(const Vec& in, Vec& out) {  // (-lap)^{-1}, zero mode dropped
        spectral_apply(in, out, [](double q) { return q > 0 ? 1.0 / q : 0.0; });
    }
    void riesz(const Vec& in, Vec& out) {
        const double a = model.params().alpha;
        spectral_apply(in, out, [a](double q) { return q > 0 ? std::pow(q, -a / 2.0) : 0.0; });
    }
    void precond(const Vec& in, Vec& out) {  // (-lap + 1/2)^{-1}
        spectral_apply(in, out, [](double q) { return 1.0 / (q + 0.5); });
    }

    double dot(const Vec& a, const Vec& b) const {
        double s = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
        return s * dV();
    }
    double nrm(const Vec& a) const { return std::sqrt(dot(a, a)); }
    double sum(const Vec& a) const {
        double s = 0.0;
        for (double x : a) s += x;
        return s * dV();
    }
    double kinetic(const Vec& f) {
        Vec lf;
        lap(f, lf);
        return -dot(f, lf);
    }

    // g_w = w |f|^p, G = I_alpha * g_w, N = w G |f|^{p-2} f
    void nonlinearity(const Vec& f, Vec& gw, Vec& G, Vec& N) {
        const double p = model.params().p;
        const auto& w = model.weight().w;
        gw.resize(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) gw[i] = w[i] * std::pow(std::abs(f[i]), p);
        riesz(gw, G);
        N.resize(f.size());
        for (std::size_t i = 0; i < f.size(); ++i)
            N[i] = w[i] * G[i] * std::pow(std::abs(f[i]), p - 2.0) * f[i];
    }

    double potential(const Vec& f) {
        Vec gw, G, N;
        const double p = model.params().p;
        const auto& w = model.weight().w;
        gw.resize(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) gw[i] = w[i] * std::pow(std::abs(f[i]), p);
        riesz(gw, G);
        return dot(gw, G);
    }
};

void project_mean(Vec& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= v.size();
    for (double& x : v) x -= m;
}

// Preconditioned MINRES for symmetric (indefinite) A with SPD preconditioner M.
// Solves A x = b from x0 = 0. Returns relative residual estimate.
double minres(const std::function<void(const Vec&, Vec&)>& A,
              const std::function<void(const Vec&, Vec&)>& M, const Vec& b, Vec& x, int maxit,
              double rtol, const RealOps& ops) {
    const std::size_t nn = b.size();
    x.assign(nn, 0.0);
    Vec r1 = b, r2 = b, y;
    M(r1, y);
    double beta1 = ops.dot(r1, y);
    if (beta1 <= 0.0) return 0.0;  // b = 0 or M not SPD on b
    beta1 = std::sqrt(beta1);
    double oldb = 0.0, beta = beta1, dbar = 0.0, epsln = 0.0, phibar = beta1;
    double cs = -1.0, sn = 0.0, oldeps = 0.0;
    Vec w(nn, 0.0), w2(nn, 0.0), w1(nn, 0.0), v(nn), Av(nn);
    for (int itn = 1; itn <= maxit; ++itn) {
        const double s = 1.0 / beta;
        for (std::size_t i = 0; i < nn; ++i) v[i] = s * y[i];
        A(v, Av);
        if (itn >= 2)
            for (std::size_t i = 0; i < nn; ++i) Av[i] -= (beta / oldb) * r1[i];
        const double alfa = ops.dot(v, Av);
        for (std::size_t i = 0; i < nn; ++i) Av[i] -= (alfa / beta) * r2[i];
        r1 = r2;
        r2 = Av;
        M(r2, y);
        oldb = beta;
        beta = ops.dot(r2, y);
        if (beta < 0.0) break;
        beta = std::sqrt(beta);
        oldeps = epsln;
        const double delta = cs * dbar + sn * alfa;
        const double gbar = sn * dbar - cs * alfa;
        epsln = sn * beta;
        dbar = -cs * beta;
        double gamma = std::sqrt(gbar * gbar + beta * beta);
        gamma = std::max(gamma, 1e-300);
        cs = gbar / gamma;
        sn = beta / gamma;
        const double phi = cs * phibar;
        phibar = sn * phibar;
        w1 = w2;
        w2 = w;
        for (std::size_t i = 0; i < nn; ++i)
            w[i] = (v[i] - oldeps * w1[i] - delta * w2[i]) / gamma;
        for (std::size_t i = 0; i < nn; ++i) x[i] += phi * w[i];
        if (phibar / beta1 < rtol) break;
    }
    return phibar / beta1;
}

struct NewtonResult {
    bool converged = false;
    double rel_pf = 0.0;
    int iters = 0;
};

// Newton on the mean-zero-projected equation Pi0[lap W + N(W)] = 0 with
// mean-zero steps; the mean of W is a family parameter handled by the caller.
NewtonResult newton_pi0(RealOps& ops, Vec& W, const WeinsteinConfig& cfg) {
    NewtonResult res;
    const double p = ops.model.params().p;
    const auto& w = ops.model.weight().w;
    Vec gw, G, N, F, PF, lapW, dW;
    for (int it = 0; it < cfg.newton_max; ++it) {
        res.iters = it;
        ops.nonlinearity(W, gw, G, N);
        ops.lap(W, lapW);
        F.resize(W.size());
        for (std::size_t i = 0; i < W.size(); ++i) F[i] = lapW[i] + N[i];
        PF = F;
        project_mean(PF);
        const double nL = ops.nrm(lapW);
        const double nPF = ops.nrm(PF);
        res.rel_pf = nPF / nL;
        if (cfg.verbose && it % cfg.verbose == 0)
            std::fprintf(stderr, "  newton %3d |Pi0 F|/|lap W| = %.3e\n", it, res.rel_pf);
        if (res.rel_pf < cfg.newton_tol) {
            res.converged = true;
            return res;
        }
        // Jacobian apply: lap v + (p-1) w G |W|^{p-2} v + p w |W|^{p-2}W I_a(w |W|^{p-2}W v)
        Vec wp2(W.size()), wp1(W.size());
        for (std::size_t i = 0; i < W.size(); ++i) {
            wp2[i] = std::pow(std::abs(W[i]), p - 2.0);
            wp1[i] = wp2[i] * W[i];
        }
        auto Japply = [&](const Vec& vin, Vec& vout) {
            Vec v = vin;
            project_mean(v);
            Vec t1, rz(v.size());
            ops.lap(v, t1);
            for (std::size_t i = 0; i < v.size(); ++i) rz[i] = w[i] * wp1[i] * v[i];
            Vec t3;
            ops.riesz(rz, t3);
            vout.resize(v.size());
            for (std::size_t i = 0; i < v.size(); ++i)
                vout[i] = t1[i] + (p - 1.0) * w[i] * G[i] * wp2[i] * v[i] + p * w[i] * wp1[i] * t3[i];
            project_mean(vout);
        };
        auto Mapply = [&](const Vec& vin, Vec& vout) { ops.precond(vin, vout); };
        Vec rhs = PF;
        for (double& x : rhs) x = -x;
        const double rt = std::min(0.1, std::max(1e-7, std::pow(res.rel_pf, 0.8)));
        minres(Japply, Mapply, rhs, dW, cfg.minres_max, rt, ops);
        project_mean(dW);
        // damped line search on |Pi0 F|
        double lam = 1.0;
        bool ok = false;
        Vec Wt, Ft, gwt, Gt, Nt, lapWt;
        for (int ls = 0; ls < 20; ++ls) {
            Wt = W;
            for (std::size_t i = 0; i < W.size(); ++i) Wt[i] += lam * dW[i];
            ops.nonlinearity(Wt, gwt, Gt, Nt);
            ops.lap(Wt, lapWt);
            Ft.resize(W.size());
            for (std::size_t i = 0; i < W.size(); ++i) Ft[i] = lapWt[i] + Nt[i];
            project_mean(Ft);
            if (ops.nrm(Ft) < nPF * (1.0 - 0.05 * lam)) {
                ok = true;
                break;
            }
            lam *= 0.5;
        }
        if (!ok) return res;
        W = Wt;
    }
    return res;
}

Vec to_real(const ScalarField& f) {
    Vec out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f.v[i].real();
    return out;
}

ScalarField to_field(const Grid& g, const Vec& v) {
    ScalarField f(g);
    for (std::size_t i = 0; i < v.size(); ++i) f.v[i] = v[i];
    return f;
}

// One ascent pass over the real vector; returns final J and #iterations.
std::pair<double, int> ascend(RealOps& ops, Vec& f, int iters, double tau0, double jtol,
                              int verbose) {
    const double p = ops.model.params().p;
    double K = ops.kinetic(f);
    for (double& x : f) x /= std::sqrt(K);
    double P = ops.potential(f);
    double J = P;  // K = 1
    double tau = tau0;
    int it = 0, stalled = 0;
    Vec gw, G, N, d, ft;
    for (; it < iters; ++it) {
        ops.nonlinearity(f, gw, G, N);
        for (double& x : N) x *= 2.0 * p;
        ops.inv_neglap(N, d);
        double t = tau;
        bool accepted = false;
        double Jt = J;
        for (int ls = 0; ls < 60; ++ls) {
            ft = f;
            for (std::size_t i = 0; i < f.size(); ++i) ft[i] += t * d[i];
            const double Kt = ops.kinetic(ft);
            const double sc = 1.0 / std::sqrt(Kt);
            for (double& x : ft) x *= sc;
            Jt = ops.potential(ft);
            if (Jt >= J) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
        const double gain = (Jt - J) / std::abs(J);
        f = ft;
        J = Jt;
        tau = t * 2.0;
        if (verbose && it % verbose == 0)
            std::fprintf(stderr, "  ascent %3d J = %.12e (gain %.1e, tau %.1e)\n", it, J, gain, tau);
        stalled = gain < jtol ? stalled + 1 : 0;
        if (stalled >= 3) break;
    }
    return {J, it};
}

}  // namespace

double weinstein_functional(const ScalarField& f, const ModelParams& prm) {
    const double K2 = sobolev_h1dot(f);
    if (!(K2 > 0.0)) throw ConfigError("weinstein_functional: zero field");
    Model m(f.grid, prm);
    return m.potential(f) / std::pow(K2 * K2, prm.p);
}

ScalarField maximize_weinstein(const ScalarField& init, const WeinsteinConfig& cfg,
                               const ModelParams& prm) {
    require_finite(init, "maximize_weinstein");
    double max_im = 0.0, min_re = 0.0, max_re = 0.0;
    for (const auto& z : init.v) {
        max_im = std::max(max_im, std::abs(z.imag()));
        min_re = std::min(min_re, z.real());
        max_re = std::max(max_re, z.real());
    }
    if (max_re <= 0.0) throw ConfigError("maximize_weinstein: initializer must be nonzero");
    // A converged torus ground state undershoots zero by ~1% of its peak in
    // the far tail, so restarting from one must stay legal.
    if (max_im > 1e-12 * max_re || min_re < -5e-2 * max_re)
        throw ConfigError("maximize_weinstein: initializer must be real and nonnegative");

    Model model(init.grid, prm);
    RealOps ops(model);
    Vec f = to_real(init);
    ascend(ops, f, cfg.max_iters, cfg.tau0, cfg.j_tol, cfg.verbose);
    return to_field(init.grid, f);
}

GroundState rescale_to_ground_state(const ScalarField& fstar, const ModelParams& prm,
                                    const WeinsteinConfig& cfg) {
    ModelParams focusing = prm;
    focusing.sigma = 1.0;  // W is the focusing elliptic solution in every scenario
    Model model(fstar.grid, focusing);
    RealOps ops(model);
    Vec W = to_real(fstar);

    // spec amplitude: mu^(2p-2) = K/P from the stationarity condition
    {
        const double K = ops.kinetic(W);
        const double P = ops.potential(W);
        if (!(P > 0.0) || !std::isfinite(P))
            throw NumericalError("rescale_to_ground_state: degenerate J, cannot fix amplitude");
        const double mu = std::pow(K / P, 1.0 / (2.0 * focusing.p - 2.0));
        if (!std::isfinite(mu) || mu <= 0.0)
            throw NumericalError("rescale_to_ground_state: amplitude over/underflow");
        for (double& x : W) x *= mu;
    }

    GroundState gs;
    if (cfg.newton_max > 0) {
        NewtonResult nr;
        for (int round = 0; round < 8; ++round) {
            nr = newton_pi0(ops, W, cfg);
            gs.newton_iters += nr.iters;
            if (nr.converged) break;
            // stall: re-warm with a short ascent pass and retry
            double K = ops.kinetic(W);
            for (double& x : W) x /= std::sqrt(K);
            ascend(ops, W, 25, cfg.tau0, cfg.j_tol, 0);
            const double P = ops.potential(W);
            const double mu = std::pow(1.0 / P, 1.0 / (2.0 * focusing.p - 2.0));
            for (double& x : W) x *= mu;
        }
        if (cfg.canonicalize && nr.converged) {
            // move along the root family to the int W = 0 member
            const double L3 = std::pow(model.grid()->L, 3);
            for (int k = 0; k < 6; ++k) {
                const double intW = ops.sum(W);
                if (std::abs(intW) < 1e-10 * L3) break;
                const double shift = intW / L3;
                for (double& x : W) x -= shift;
                newton_pi0(ops, W, cfg);
            }
        }
    }

    // final bookkeeping
    Vec gw, G, N, lapW, F;
    ops.nonlinearity(W, gw, G, N);
    ops.lap(W, lapW);
    F.resize(W.size());
    for (std::size_t i = 0; i < W.size(); ++i) F[i] = lapW[i] + N[i];
    const double nL = ops.nrm(lapW);
    gs.residual = ops.nrm(F) / nL;
    Vec PF = F;
    project_mean(PF);
    gs.residual_projected = ops.nrm(PF) / nL;
    gs.mean_defect = ops.sum(N);
    gs.K_W = ops.kinetic(W);
    gs.P_W = ops.potential(W);
    gs.C0 = gs.P_W / std::pow(gs.K_W, focusing.p);
    gs.E_W = gs.K_W - gs.P_W / focusing.p;
    gs.Hdot_W = std::sqrt(gs.K_W);
    gs.W = to_field(fstar.grid, W);
    return gs;
}

double elliptic_residual(const ScalarField& Wf, const ModelParams& prm) {
    double mx = norm_inf(Wf);
    if (!(mx > 0.0)) throw ConfigError("elliptic_residual: zero field");
    ModelParams focusing = prm;
    focusing.sigma = 1.0;
    Model model(Wf.grid, focusing);
    RealOps ops(model);
    Vec W = to_real(Wf);
    Vec gw, G, N, lapW;
    ops.nonlinearity(W, gw, G, N);
    ops.lap(W, lapW);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < W.size(); ++i) {
        const double r = lapW[i] + N[i];
        num += r * r;
        den += lapW[i] * lapW[i];
    }
    return std::sqrt(num / den);
}

Thresholds thresholds(const GroundState& gs) {
    const double p_eff = gs.P_W > 0.0 ? gs.K_W / (gs.K_W - gs.E_W) : 0.0;
    (void)p_eff;
    Thresholds t{gs.E_W, gs.Hdot_W, gs.C0};
    return t;
}

ThresholdReport threshold_check(const ScalarField& u0, const GroundState& gs,
                                const ModelParams& prm) {
    ThresholdReport r;
    r.E_u0 = energy(u0, prm);
    r.Hdot_u0 = sobolev_h1dot(u0);
    r.below_energy = r.E_u0 < gs.E_W;
    r.below_kinetic = r.Hdot_u0 < gs.Hdot_W;
    const double re = std::abs(r.E_u0 - gs.E_W) / std::max(std::abs(gs.E_W), 1e-300);
    const double rk = std::abs(r.Hdot_u0 - gs.Hdot_W) / std::max(gs.Hdot_W, 1e-300);
    r.at_threshold = re < 1e-9 || rk < 1e-9;
    r.margin = 1.0 - r.Hdot_u0 / gs.Hdot_W;
    return r;
}

GroundState solve_ground_state(const ScalarField& init, const ModelParams& prm,
                               const WeinsteinConfig& cfg) {
    ScalarField fstar = maximize_weinstein(init, cfg, prm);
    return rescale_to_ground_state(fstar, prm, cfg);
}

ScalarField gaussian_init(const Grid& g, double amplitude, double width,
                          const std::array<double, 3>& center) {
    ScalarField f(g);
    const int n = g->n;
    const double w2 = width * width;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double dx = g->coord[ix] - center[0];
        for (int iy = 0; iy < n; ++iy) {
            const double dy = g->coord[iy] - center[1];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double dz = g->coord[iz] - center[2];
                f.v[idx] = amplitude * std::exp(-(dx * dx + dy * dy + dz * dz) / w2);
            }
        }
    }
    return f;
}

ScalarField bubble_init(const Grid& g, double amplitude, double width) {
    // (1 + |x/w|^2)^{-1/2} with a smooth far-field taper so the periodic wrap
    // stays clean.
    ScalarField f(g);
    const int n = g->n;
    const double w2 = width * width;
    const double taper = 0.4 * g->L;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x2 = g->coord[ix] * g->coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y2 = g->coord[iy] * g->coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double r2 = x2 + y2 + g->coord[iz] * g->coord[iz];
                const double t = std::pow(r2 / (taper * taper), 4.0);
                f.v[idx] = amplitude * std::pow(1.0 + r2 / w2, -0.5) * std::exp(-t);
            }
        }
    }
    return f;
}

}  // namespace ighc
