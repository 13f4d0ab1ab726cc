#include "inls/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace inls {

namespace {
std::mutex plan_mutex; // FFTW plan creation is not thread-safe
}

struct Spectral::Impl {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;
    std::size_t n = 0;
};

Spectral::Spectral(const CartesianGrid& grid) : grid_(grid), impl_(new Impl) {
    impl_->n = grid.total();
    impl_->buf = fftw_alloc_complex(impl_->n);
    if (!impl_->buf)
        throw std::bad_alloc();
    int dims[3] = {grid.points, grid.points, grid.points};
    std::lock_guard<std::mutex> lock(plan_mutex);
    impl_->fwd = fftw_plan_dft(grid.dim, dims, impl_->buf, impl_->buf,
                               FFTW_FORWARD, FFTW_ESTIMATE);
    impl_->inv = fftw_plan_dft(grid.dim, dims, impl_->buf, impl_->buf,
                               FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!impl_->fwd || !impl_->inv)
        throw std::runtime_error("failed to create FFTW plans");
}

Spectral::~Spectral() {
    std::lock_guard<std::mutex> lock(plan_mutex);
    if (impl_->fwd)
        fftw_destroy_plan(impl_->fwd);
    if (impl_->inv)
        fftw_destroy_plan(impl_->inv);
    if (impl_->buf)
        fftw_free(impl_->buf);
}

namespace {

void copy_in(fftw_complex* dst, const std::vector<Complex>& src) {
    std::memcpy(dst, src.data(), src.size() * sizeof(Complex));
}

void copy_out(std::vector<Complex>& dst, const fftw_complex* src, std::size_t n) {
    dst.resize(n);
    std::memcpy(static_cast<void*>(dst.data()), src, n * sizeof(Complex));
}

} // namespace

void Spectral::forward(const std::vector<Complex>& in, std::vector<Complex>& out) const {
    if (in.size() != impl_->n)
        throw std::invalid_argument("spectral workspace size mismatch");
    copy_in(impl_->buf, in);
    fftw_execute(impl_->fwd);
    copy_out(out, impl_->buf, impl_->n);
}

void Spectral::inverse(const std::vector<Complex>& in, std::vector<Complex>& out) const {
    if (in.size() != impl_->n)
        throw std::invalid_argument("spectral workspace size mismatch");
    copy_in(impl_->buf, in);
    fftw_execute(impl_->inv);
    copy_out(out, impl_->buf, impl_->n);
    const double scale = 1.0 / static_cast<double>(impl_->n);
    for (auto& v : out)
        v *= scale;
}

std::vector<Complex> Spectral::derivative(const std::vector<Complex>& u, int axis) const {
    if (axis < 0 || axis >= grid_.dim)
        throw std::invalid_argument("derivative axis out of range");
    std::vector<Complex> hat;
    forward(u, hat);
    const int M = grid_.points;
    std::size_t post = 1;
    for (int a = axis + 1; a < grid_.dim; ++a)
        post *= static_cast<std::size_t>(M);
    const std::size_t block = post * static_cast<std::size_t>(M);
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
        int m = static_cast<int>((idx % block) / post);
        if (grid_.is_nyquist(m)) {
            hat[idx] = 0.0;
        } else {
            double k = grid_.wavenumber(m);
            hat[idx] *= Complex(0.0, k);
        }
    }
    std::vector<Complex> out;
    inverse(hat, out);
    return out;
}

double Spectral::grad_norm_sq(const std::vector<Complex>& u) const {
    std::vector<Complex> hat;
    forward(u, hat);
    const int M = grid_.points;
    double sum = 0.0;
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
        auto mi = grid_.unravel(idx);
        double k2 = 0.0;
        for (int a = 0; a < grid_.dim; ++a) {
            if (!grid_.is_nyquist(mi[a])) {
                double k = grid_.wavenumber(mi[a]);
                k2 += k * k;
            }
        }
        sum += k2 * std::norm(hat[idx]);
    }
    (void)M;
    double cell = std::pow(grid_.spacing(), grid_.dim);
    return sum * cell / static_cast<double>(grid_.total());
}

std::vector<Complex> Spectral::laplacian(const std::vector<Complex>& u) const {
    std::vector<Complex> hat;
    forward(u, hat);
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
        auto mi = grid_.unravel(idx);
        double k2 = 0.0;
        for (int a = 0; a < grid_.dim; ++a) {
            double k = grid_.wavenumber(mi[a]);
            k2 += k * k;
        }
        hat[idx] *= -k2;
    }
    std::vector<Complex> out;
    inverse(hat, out);
    return out;
}

void Spectral::free_flow(std::vector<Complex>& u, double dt) const {
    free_flow_with_grad(u, dt);
}

double Spectral::free_flow_with_grad(std::vector<Complex>& u, double dt) const {
    std::vector<Complex> hat;
    forward(u, hat);
    double sum = 0.0;
    for (std::size_t idx = 0; idx < hat.size(); ++idx) {
        auto mi = grid_.unravel(idx);
        double k2 = 0.0;
        double k2_grad = 0.0;
        for (int a = 0; a < grid_.dim; ++a) {
            double k = grid_.wavenumber(mi[a]);
            k2 += k * k;
            if (!grid_.is_nyquist(mi[a]))
                k2_grad += k * k;
        }
        sum += k2_grad * std::norm(hat[idx]);
        hat[idx] *= std::polar(1.0, -k2 * dt);
    }
    inverse(hat, u);
    double cell = std::pow(grid_.spacing(), grid_.dim);
    return sum * cell / static_cast<double>(grid_.total());
}

namespace {

using SpectralKey = std::tuple<int, int, double, bool>;
std::map<SpectralKey, std::weak_ptr<Spectral>> spectral_cache;
std::mutex cache_mutex;

} // namespace

std::shared_ptr<Spectral> spectral_for(const CartesianGrid& grid) {
    SpectralKey key{grid.dim, grid.points, grid.half_width, grid.cell_centered};
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = spectral_cache.find(key);
    if (it != spectral_cache.end()) {
        if (auto sp = it->second.lock())
            return sp;
    }
    auto sp = std::make_shared<Spectral>(grid);
    spectral_cache[key] = sp;
    return sp;
}

std::vector<Complex> tensor_eval(const Field& u,
                                 const std::vector<std::vector<double>>& targets) {
    const auto& grid = u.grid;
    if (static_cast<int>(targets.size()) != grid.dim)
        throw std::invalid_argument("tensor_eval needs one target list per axis");
    auto sp = spectral_for(grid);
    std::vector<Complex> data;
    sp->forward(u.values, data);
    const double norm = 1.0 / static_cast<double>(grid.total());
    for (auto& v : data)
        v *= norm;

    const int M = grid.points;
    const double x0 = grid.coord(0);
    std::vector<std::size_t> shape(grid.dim, static_cast<std::size_t>(M));

    for (int axis = 0; axis < grid.dim; ++axis) {
        const auto& pts = targets[axis];
        const std::size_t nt = pts.size();
        // evaluation matrix E[j][m], Nyquist as cosine
        std::vector<Complex> E(nt * static_cast<std::size_t>(M));
        for (std::size_t j = 0; j < nt; ++j) {
            double d = pts[j] - x0;
            for (int m = 0; m < M; ++m) {
                double k = grid.wavenumber(m);
                E[j * M + m] = grid.is_nyquist(m) ? Complex(std::cos(k * d), 0.0)
                                                  : std::polar(1.0, k * d);
            }
        }
        std::size_t pre = 1, post = 1;
        for (int a = 0; a < axis; ++a)
            pre *= shape[a];
        for (int a = axis + 1; a < grid.dim; ++a)
            post *= shape[a];
        std::vector<Complex> next(pre * nt * post);
        for (std::size_t ip = 0; ip < pre; ++ip) {
            for (std::size_t j = 0; j < nt; ++j) {
                const Complex* row = &E[j * M];
                for (std::size_t q = 0; q < post; ++q) {
                    Complex acc(0.0, 0.0);
                    const Complex* src = &data[(ip * M) * post + q];
                    for (int m = 0; m < M; ++m)
                        acc += row[m] * src[static_cast<std::size_t>(m) * post];
                    next[(ip * nt + j) * post + q] = acc;
                }
            }
        }
        data = std::move(next);
        shape[axis] = nt;
    }
    return data;
}

Field resample_scaled(const Field& u, double lambda) {
    if (lambda <= 0.0)
        throw std::invalid_argument("resample scale must be positive");
    std::vector<std::vector<double>> targets(u.grid.dim);
    for (int a = 0; a < u.grid.dim; ++a) {
        targets[a].resize(u.grid.points);
        for (int i = 0; i < u.grid.points; ++i)
            targets[a][i] = lambda * u.grid.coord(i);
    }
    Field out = make_field(u.grid, u.time);
    out.values = tensor_eval(u, targets);
    return out;
}

} // namespace inls
