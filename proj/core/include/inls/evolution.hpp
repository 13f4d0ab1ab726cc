#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "inls/field.hpp"
#include "inls/params.hpp"

namespace inls {

struct EvolutionConfig {
    double dt0 = 1e-4;                   ///< base time step
    double t_end = 1.0;                  ///< target time
    double grad_blowup_threshold = 0.0;  ///< on ||grad u||_2; 0 disables
    bool adapt = false;                  ///< dt = dt0 / (1 + ||grad u||^2/||grad u0||^2)
    int record_every = 10;               ///< diagnostics cadence in steps
    bool strict_boundary = false;        ///< abort when boundary mass > 1e-6
    std::vector<double> snapshot_times;  ///< extra times to store snapshots at
    double conc_radius = 0.5;            ///< radius for the concentration column
};

enum class Termination {
    reached_t_end,
    blowup_detected,
    boundary_contaminated,
    numerical_failure,
};

const char* to_string(Termination t);

/// One diagnostics row per recorded time.
struct DiagnosticsSeries {
    std::vector<double> t;
    std::vector<double> mass;
    std::vector<double> kinetic;
    std::vector<double> potential;
    std::vector<double> energy;
    std::vector<double> grad_norm;    ///< ||grad u||_2 (not squared)
    std::vector<double> gamma;        ///< int |x|^2 |u|^2
    std::vector<double> gamma_prime;  ///< 4 Im int conj(u) x.grad(u)
    std::vector<double> conc_fraction;///< mass fraction within conc_radius

    std::size_t size() const { return t.size(); }
};

struct Trajectory {
    std::vector<Field> snapshots;
    DiagnosticsSeries diagnostics;
    Termination termination = Termination::reached_t_end;
    double mass_drift = 0.0;   ///< max relative drift over the run
    double energy_drift = 0.0; ///< max relative drift while resolved
};

/// Strang split-step integrator bound to one (grid, params) pair.
/// The nonlinear half-steps are exact phase rotations; the linear step
/// is the exact free flow in Fourier space. Mass is conserved to
/// roundoff by construction.
class Stepper {
public:
    Stepper(const CartesianGrid& grid, const Params& params);

    /// One Strang step of size dt, in place; time stamp advances by dt.
    void step(Field& u, double dt) const;

    const std::vector<double>& weights() const { return weights_; }

private:
    Params params_;
    std::vector<double> weights_;
    std::shared_ptr<class Spectral> spectral_;
};

/// One Strang split step (convenience wrapper around Stepper).
Field step(const Field& u, double dt, const Params& params);

/// Integrate from u0 until t_end, blow-up detection, boundary
/// contamination (strict mode) or a non-finite field.
Trajectory evolve(const Field& u0, const EvolutionConfig& cfg, const Params& params);

/// Write the diagnostics as CSV with a fixed header.
void write_csv(const DiagnosticsSeries& d, std::ostream& os);

} // namespace inls
