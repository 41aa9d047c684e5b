#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace fraclyap::lyapcheck {

inline constexpr std::size_t kRadialShells = 20;
inline constexpr double kInnerRadiusFraction = 1e-6;

/// Deterministic point set in the closed ball B_r(0) of R^dim, returned
/// node-major (count * dim values).
///
/// The first points sit exactly at radii r * 1e-6 and r along +-e_i. The rest
/// are stratified over 20 log-spaced radial shells between those radii: point
/// i goes to shell i mod 20, its radius and direction come from a Halton
/// sequence (directions through the inverse normal CDF). A non-zero seed
/// applies a Cranley-Patterson rotation to the Halton coordinates, so equal
/// seeds give identical sets.
std::vector<double> ball_samples(std::size_t dim, double radius, std::size_t count,
                                 std::uint64_t seed);

/// `count` deterministic points on the sphere of the given radius.
std::vector<double> sphere_samples(std::size_t dim, double radius, std::size_t count,
                                   std::uint64_t seed);

}  // namespace fraclyap::lyapcheck
