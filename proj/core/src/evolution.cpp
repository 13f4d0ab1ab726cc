#include "inls/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>

#include "inls/fft.hpp"
#include "inls/functionals.hpp"
#include "inls/weights.hpp"

namespace inls {

const char* to_string(Termination t) {
    switch (t) {
    case Termination::reached_t_end: return "reached_t_end";
    case Termination::blowup_detected: return "blowup_detected";
    case Termination::boundary_contaminated: return "boundary_contaminated";
    case Termination::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

Stepper::Stepper(const CartesianGrid& grid, const Params& params)
    : params_(params),
      weights_(weighted_potential_nodes(grid, params.b)),
      spectral_(spectral_for(grid)) {}

void Stepper::step(Field& u, double dt) const {
    const double half = 0.5 * dt;
    const double pm1 = params_.p - 1.0;
    auto rotate = [&](double h) {
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            double a = std::abs(u.values[i]);
            if (a > 0.0)
                u.values[i] *= std::polar(1.0, h * weights_[i] * std::pow(a, pm1));
        }
    };
    rotate(half);
    spectral_->free_flow(u.values, dt);
    rotate(half);
    u.time += dt;
}

Field step(const Field& u, double dt, const Params& params) {
    if (dt <= 0.0)
        throw std::invalid_argument("step size must be positive");
    Stepper st(u.grid, params);
    Field out = u;
    st.step(out, dt);
    require_finite(out);
    return out;
}

namespace {

void record(DiagnosticsSeries& d, const Field& u, const Params& params,
            const std::vector<double>& w, double conc_radius) {
    double m = mass(u);
    double gsq = grad_norm_sq(u);
    double pot = potential_integral(u, params, w);
    double kin = 0.5 * gsq;
    double pe = pot / (params.p + 1.0);
    d.t.push_back(u.time);
    d.mass.push_back(m);
    d.kinetic.push_back(kin);
    d.potential.push_back(pe);
    d.energy.push_back(kin - pe);
    d.grad_norm.push_back(std::sqrt(gsq));
    d.gamma.push_back(virial_gamma(u));
    d.gamma_prime.push_back(virial_gamma_prime(u));
    d.conc_fraction.push_back(m > 0.0 ? mass_within_radius(u, conc_radius) / m : 0.0);
}

} // namespace

Trajectory evolve(const Field& u0, const EvolutionConfig& cfg, const Params& params) {
    if (cfg.dt0 <= 0.0)
        throw std::invalid_argument("dt0 must be positive");
    require_finite(u0);

    Trajectory traj;
    Stepper st(u0.grid, params);
    Field u = u0;

    const double grad0_sq = grad_norm_sq(u0);
    const double mass0 = mass(u0);
    double energy0 = 0.0;
    {
        auto w = st.weights();
        energy0 = 0.5 * grad0_sq - potential_integral(u0, params, w) / (params.p + 1.0);
    }
    if (cfg.grad_blowup_threshold > 0.0 &&
        cfg.grad_blowup_threshold * cfg.grad_blowup_threshold <= grad0_sq)
        throw std::invalid_argument("blow-up threshold below initial gradient norm");

    std::vector<double> pending = cfg.snapshot_times;
    std::sort(pending.begin(), pending.end());
    auto next_snapshot = pending.begin();

    record(traj.diagnostics, u, params, st.weights(), cfg.conc_radius);
    traj.snapshots.push_back(u);

    long step_count = 0;
    traj.termination = Termination::reached_t_end;
    while (u.time < cfg.t_end - 1e-15) {
        double dt = cfg.dt0;
        double gsq = 0.0;
        if (cfg.adapt) {
            gsq = grad_norm_sq(u);
            dt = cfg.dt0 / (1.0 + gsq / grad0_sq);
        }
        double limit = cfg.t_end;
        if (next_snapshot != pending.end())
            limit = std::min(limit, *next_snapshot);
        dt = std::min(dt, limit - u.time);
        if (dt <= 0.0)
            dt = std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(u.time));

        st.step(u, dt);
        ++step_count;

        if (!u.finite()) {
            traj.termination = Termination::numerical_failure;
            break;
        }
        bool at_snapshot = next_snapshot != pending.end() &&
                           u.time >= *next_snapshot - 1e-13;
        if (at_snapshot) {
            traj.snapshots.push_back(u);
            ++next_snapshot;
        }
        if (step_count % std::max(cfg.record_every, 1) == 0 || at_snapshot ||
            u.time >= cfg.t_end - 1e-15) {
            record(traj.diagnostics, u, params, st.weights(), cfg.conc_radius);
            double m = traj.diagnostics.mass.back();
            double e = traj.diagnostics.energy.back();
            traj.mass_drift =
                std::max(traj.mass_drift, std::abs(m - mass0) / mass0);
            double gnorm_sq = traj.diagnostics.grad_norm.back();
            gnorm_sq *= gnorm_sq;
            if (gnorm_sq < 100.0 * std::max(grad0_sq, 1.0))
                traj.energy_drift = std::max(
                    traj.energy_drift,
                    std::abs(e - energy0) / std::max(1.0, std::abs(energy0)));
            if (cfg.grad_blowup_threshold > 0.0 &&
                traj.diagnostics.grad_norm.back() > cfg.grad_blowup_threshold) {
                traj.termination = Termination::blowup_detected;
                break;
            }
            if (cfg.strict_boundary && boundary_mass_fraction(u) > 1e-6) {
                traj.termination = Termination::boundary_contaminated;
                break;
            }
        }
    }
    if (traj.snapshots.empty() || traj.snapshots.back().time != u.time)
        traj.snapshots.push_back(u);
    return traj;
}

void write_csv(const DiagnosticsSeries& d, std::ostream& os) {
    os << "t,mass,kinetic,potential,energy,grad_norm,gamma,gamma_prime,conc_fraction\n";
    os.precision(17);
    for (std::size_t i = 0; i < d.size(); ++i) {
        os << d.t[i] << ',' << d.mass[i] << ',' << d.kinetic[i] << ','
           << d.potential[i] << ',' << d.energy[i] << ',' << d.grad_norm[i] << ','
           << d.gamma[i] << ',' << d.gamma_prime[i] << ',' << d.conc_fraction[i]
           << '\n';
    }
}

} // namespace inls
