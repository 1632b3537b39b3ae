#pragma once

#include <cstdint>

#include "ighc/field.hpp"

namespace ighc {

/// Seeded smooth localized complex field: band-limited random spectrum with a
/// Gaussian k-envelope (scale k_c), multiplied by a spatial Gaussian envelope
/// of radius R, normalized to unit H1dot. Deterministic for a fixed seed on a
/// given platform.
ScalarField random_smooth_field(const Grid& g, std::uint64_t seed, double k_c = 2.0,
                                double R = 4.0);

}  // namespace ighc
