#pragma once

#include <cstdint>

#include "inls/field.hpp"

namespace inls {

/// Random band-limited field: independent complex Gaussian Fourier
/// coefficients on modes |m_a| <= max_mode, zero elsewhere, then
/// normalized to the requested L^2 norm squared. Deterministic in seed.
Field random_band_limited(const CartesianGrid& grid, std::uint64_t seed, int max_mode,
                          double target_mass_sq);

/// Same, with a Gaussian envelope exp(-|x|^2 / (2 width^2)) applied in
/// real space before normalization, so the samples decay at the boundary.
Field random_localized(const CartesianGrid& grid, std::uint64_t seed, int max_mode,
                       double target_mass_sq, double width);

} // namespace inls
