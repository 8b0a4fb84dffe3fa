#pragma once

#include "petis/types.hpp"

#include <cstdint>
#include <vector>

namespace petis {

/// Deterministic low-discrepancy points in the closed ball of a given radius.
///
/// Uses a Halton sequence (one prime base per coordinate) shifted by a
/// seed-derived Cranley-Patterson rotation, mapped to the cube [-r, r]^n and
/// filtered to the ball minus a small exclusion ball around the origin. The
/// accepted points form a single sequence, so the first N points are the same
/// for every request of N or more points. The seed is expanded with
/// std::mt19937_64 and converted to doubles by bit manipulation, so the
/// sequence is identical on every platform.
class BallSampler {
public:
    BallSampler(int dim, double radius, std::uint64_t seed, double exclusion_radius = 1e-12);

    [[nodiscard]] Vector next();
    [[nodiscard]] std::vector<Vector> take(std::size_t count);

private:
    int dim_;
    double radius_;
    double exclusion_;
    std::vector<double> shift_;
    std::uint64_t index_ = 0;
};

/// Van der Corput radical inverse of `index` in `base`.
[[nodiscard]] double radical_inverse(std::uint64_t index, unsigned base) noexcept;

} // namespace petis
