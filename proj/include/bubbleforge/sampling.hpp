#pragma once

#include <cstdint>
#include <vector>

#include "bubbleforge/vec3.hpp"

namespace bubbleforge {

/// Radical-inverse (van der Corput) value of index i in the given base.
double radical_inverse(std::uint64_t i, std::uint32_t base);

/// Deterministic quasi-random points in the annulus rmin < |x| < rmax,
/// log-uniform in radius, Halton(2,3,5)-distributed in (radius, polar, azimuth).
/// The seed offsets the Halton index, so distinct seeds give disjoint streams.
/// Points with |x| < 1e-8 never occur (rmin is clamped above that).
std::vector<Vec3> annulus_samples(std::size_t n, std::uint64_t seed,
                                  double rmin = 0.2, double rmax = 5.0);

/// Same stream, but points closer than `exclusion` to any of `centers` are
/// skipped (the stream continues until n accepted points are found).
std::vector<Vec3> annulus_samples_avoiding(std::size_t n, std::uint64_t seed,
                                           const std::vector<Vec3>& centers,
                                           double exclusion,
                                           double rmin = 0.2, double rmax = 5.0);

} // namespace bubbleforge
