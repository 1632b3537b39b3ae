#include "ighc/evolution.hpp"

#include <cmath>

#include "ighc/diagnostics.hpp"
#include "ighc/errors.hpp"
#include "ighc/fft.hpp"

namespace ighc {

const char* to_string(StopReason r) {
    switch (r) {
        case StopReason::TEnd: return "t_end";
        case StopReason::GradCap: return "grad_cap";
        case StopReason::TailCap: return "tail_cap";
        default: return "step_failure";
    }
}

namespace {

struct Stepper {
    const Model& model;
    double dt = 0.0;
    std::vector<double> k2;
    std::vector<cplx> halfkick;  // e^{-i k^2 dt/2}

    explicit Stepper(const Model& m) : model(m) {
        const auto& g = *m.grid();
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

    void set_dt(double new_dt) {
        if (new_dt == dt) return;
        dt = new_dt;
        halfkick.resize(k2.size());
        for (std::size_t i = 0; i < k2.size(); ++i) {
            const double ph = -k2[i] * dt / 2.0;
            halfkick[i] = cplx(std::cos(ph), std::sin(ph));
        }
    }

    void half_linear(ScalarField& u) const {
        fft3(model.grid()->n, u.v.data(), true);
        for (std::size_t i = 0; i < u.v.size(); ++i) u.v[i] *= halfkick[i];
        fft3(model.grid()->n, u.v.data(), false);
    }

    /// returns |Phi|_inf (for the phase-accuracy guard)
    double phase_kick(ScalarField& u) const {
        ScalarField phi = model.hartree_phase(u);
        double mx = 0.0;
        for (std::size_t i = 0; i < u.v.size(); ++i) {
            const double ph = phi.v[i].real() * dt;
            mx = std::max(mx, std::abs(phi.v[i].real()));
            u.v[i] *= cplx(std::cos(ph), std::sin(ph));
        }
        return mx;
    }
};

StepRecord make_record(const Model& model, const ScalarField& u, double t, double s1acc,
                       const std::vector<double>& radii) {
    StepRecord r;
    r.t = t;
    r.mass = mass(u);
    r.hdot = sobolev_h1dot(u);
    r.kinetic = r.hdot * r.hdot;
    r.potential = model.potential(u);
    r.energy = r.kinetic - model.params().sigma * r.potential / model.params().p;
    r.m_quad = morawetz_action(u, MorawetzWeight::quadratic());
    r.virial_rhs = 8.0 * (r.kinetic - model.params().sigma * r.potential);
    r.n_t = frequency_scale(u);
    r.tightness.reserve(radii.size());
    for (double R : radii) r.tightness.push_back(tightness_measure(u, R, model.params()));
    r.s1_accum = s1acc;
    r.tail_fraction = tail_fraction(u);
    return r;
}

}  // namespace

ScalarField strang_step(const ScalarField& u, double dt, const ModelParams& prm) {
    Model model(u.grid, prm);
    Stepper st(model);
    st.set_dt(dt);
    ScalarField out = u;
    st.half_linear(out);
    require_finite(out, "strang_step/linear");
    st.phase_kick(out);
    require_finite(out, "strang_step/phase");
    st.half_linear(out);
    require_finite(out, "strang_step/linear2");
    return out;
}

ScalarField sponge_apply(const ScalarField& u, const SpongeConfig& sponge, double dt) {
    if (!sponge.enabled) return u;
    const auto& g = *u.grid;
    ScalarField out(u.grid);
    const double r1 = g.L / 2.0;
    const double r0 = (1.0 - sponge.width) * r1;
    const int n = g.n;
    std::size_t idx = 0;
    for (int ix = 0; ix < n; ++ix) {
        const double x2 = g.coord[ix] * g.coord[ix];
        for (int iy = 0; iy < n; ++iy) {
            const double y2 = g.coord[iy] * g.coord[iy];
            for (int iz = 0; iz < n; ++iz, ++idx) {
                const double r = std::sqrt(x2 + y2 + g.coord[iz] * g.coord[iz]);
                double ramp = 0.0;
                if (r > r0) {
                    double s = std::min((r - r0) / (r1 - r0), 1.0);
                    ramp = s * s * s * (s * (6.0 * s - 15.0) + 10.0);
                }
                out.v[idx] = u.v[idx] * std::exp(-sponge.strength * dt * ramp);
            }
        }
    }
    return out;
}

Trajectory evolve(const ScalarField& u0, const EvolveConfig& cfg, const ModelParams& prm,
                  const GroundState* gs) {
    if (!(cfg.dt > 0.0) || !(cfg.t_end > 0.0)) throw ConfigError("evolve: dt and t_end must be positive");
    require_finite(u0, "evolve: u0");

    Model model(u0.grid, prm);
    Stepper st(model);
    double dt = cfg.dt;
    st.set_dt(dt);

    Trajectory traj;
    traj.hdot_u0 = sobolev_h1dot(u0);
    const double grad_cap_abs =
        cfg.grad_cap > 0.0 ? cfg.grad_cap * (gs ? gs->Hdot_W : 1.0) : 0.0;

    const double q_s1 = s1_space_exponent(prm.p);
    const double record_dt = cfg.record_every * cfg.dt;
    double next_record = record_dt;

    ScalarField u = u0;
    ScalarField mask;  // sponge mask cached per dt
    double mask_dt = -1.0;

    double t = 0.0;
    double s1_pow = 0.0;  // running integral of |u|_{L^q}^{2p}
    int rec_count = 0;

    auto s1_value = [&] { return std::pow(s1_pow, 1.0 / (2.0 * prm.p)); };

    traj.records.push_back(make_record(model, u, 0.0, 0.0, cfg.tight_radii));
    if (cfg.checkpoint_every > 0) traj.checkpoints.emplace_back(0.0, u);

    auto finish = [&](StopReason why, const std::string& detail) {
        traj.stop = why;
        traj.stop_detail = detail;
        traj.final_state = u;
        traj.t_final = t;
        traj.dt_final = dt;
        if (cfg.checkpoint_every > 0 &&
            (traj.checkpoints.empty() || traj.checkpoints.back().first < t))
            traj.checkpoints.emplace_back(t, u);
        return traj;
    };

    const double sign_dt = cfg.t_end > 0 ? 1.0 : -1.0;
    (void)sign_dt;
    while (t < cfg.t_end - 1e-12) {
        // keep the last step flush with t_end
        double step_dt = std::min(dt, cfg.t_end - t);
        if (step_dt != st.dt) st.set_dt(step_dt);

        const ScalarField before = u;
        try {
            st.half_linear(u);
            if (!all_finite(u)) throw NumericalError("linear half-step produced NaN");
            const double phi_inf = st.phase_kick(u);
            if (phi_inf * step_dt > cfg.phase_guard && dt > 1e-9) {
                // phase-accuracy guard: halve dt (sticky) and redo this step
                u = before;
                dt /= 2.0;
                st.set_dt(dt);
                continue;
            }
            if (!all_finite(u)) throw NumericalError("phase step produced NaN");
            st.half_linear(u);
            if (!all_finite(u)) throw NumericalError("linear half-step produced NaN");
        } catch (const NumericalError& e) {
            u = before;
            return finish(StopReason::StepFailure, e.what());
        }

        if (cfg.sponge.enabled) {
            if (mask_dt != step_dt) {
                ScalarField ones(u.grid);
                for (auto& z : ones.v) z = 1.0;
                mask = sponge_apply(ones, cfg.sponge, step_dt);
                mask_dt = step_dt;
            }
            for (std::size_t i = 0; i < u.v.size(); ++i) u.v[i] *= mask.v[i];
        }

        t += step_dt;
        if (cfg.track_s1) {
            const double nq = lp_norm(u, q_s1);
            s1_pow += step_dt * std::pow(nq, 2.0 * prm.p);
        }

        if (t + 1e-12 >= next_record || t >= cfg.t_end - 1e-12) {
            traj.records.push_back(make_record(model, u, t, s1_value(), cfg.tight_radii));
            ++rec_count;
            next_record += record_dt;
            if (cfg.checkpoint_every > 0 && rec_count % cfg.checkpoint_every == 0)
                traj.checkpoints.emplace_back(t, u);
            const StepRecord& r = traj.records.back();
            if (grad_cap_abs > 0.0 && r.hdot > grad_cap_abs)
                return finish(StopReason::GradCap,
                              "hdot " + std::to_string(r.hdot) + " > cap " + std::to_string(grad_cap_abs));
            if (cfg.tail_cap > 0.0 && r.tail_fraction > cfg.tail_cap)
                return finish(StopReason::TailCap,
                              "tail fraction " + std::to_string(r.tail_fraction) + " > cap " +
                                  std::to_string(cfg.tail_cap));
        }
    }
    return finish(StopReason::TEnd, "");
}

}  // namespace ighc
