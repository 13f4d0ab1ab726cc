#pragma once

#include <memory>
#include <vector>

#include "inls/field.hpp"

namespace inls {

/// FFT workspace bound to one grid geometry. Forward transforms are
/// unnormalized; inverse transforms divide by M^N. Plans use
/// FFTW_ESTIMATE so results are reproducible run to run.
class Spectral {
public:
    explicit Spectral(const CartesianGrid& grid);
    ~Spectral();

    Spectral(const Spectral&) = delete;
    Spectral& operator=(const Spectral&) = delete;

    const CartesianGrid& grid() const { return grid_; }

    void forward(const std::vector<Complex>& in, std::vector<Complex>& out) const;
    void inverse(const std::vector<Complex>& in, std::vector<Complex>& out) const;

    /// Spectral partial derivative along one axis. The Nyquist mode of
    /// that axis is zeroed, so the operator is skew-adjoint on the grid.
    std::vector<Complex> derivative(const std::vector<Complex>& u, int axis) const;

    /// ||grad u||_2^2 by Parseval, consistent with derivative().
    double grad_norm_sq(const std::vector<Complex>& u) const;

    /// Spectral Laplacian (full multiplier -|k|^2, Nyquist included).
    std::vector<Complex> laplacian(const std::vector<Complex>& u) const;

    /// In-place free Schroedinger flow u <- exp(-i |k|^2 dt) u (in Fourier).
    void free_flow(std::vector<Complex>& u, double dt) const;

    /// Same as free_flow but also reports ||grad u||_2^2 of the input,
    /// read off the spectrum already in hand.
    double free_flow_with_grad(std::vector<Complex>& u, double dt) const;

private:
    CartesianGrid grid_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Shared per-geometry workspace (plans are expensive to rebuild).
std::shared_ptr<Spectral> spectral_for(const CartesianGrid& grid);

/// Evaluate the trigonometric interpolant of u on the tensor product of
/// per-axis target coordinate lists. Periodic continuation outside the box.
std::vector<Complex> tensor_eval(const Field& u,
                                 const std::vector<std::vector<double>>& targets);

/// Samples of u(lambda * x) on u's own grid, by exact trigonometric
/// interpolation (no amplitude factor applied).
Field resample_scaled(const Field& u, double lambda);

} // namespace inls
