#include "petis/sampling.hpp"

#include "petis/error.hpp"

#include <array>
#include <cmath>
#include <random>

namespace petis {
namespace {

constexpr std::array<unsigned, 32> kPrimes = {2,  3,  5,  7,  11, 13, 17, 19, 23,  29,  31,
                                              37, 41, 43, 47, 53, 59, 61, 67, 71,  73,  79,
                                              83, 89, 97, 101, 103, 107, 109, 113, 127, 131};

double unit_from_bits(std::uint64_t bits) noexcept {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

} // namespace

double radical_inverse(std::uint64_t index, unsigned base) noexcept {
    const double inv = 1.0 / base;
    double scale = inv;
    double result = 0.0;
    while (index > 0) {
        result += static_cast<double>(index % base) * scale;
        index /= base;
        scale *= inv;
    }
    return result;
}

BallSampler::BallSampler(int dim, double radius, std::uint64_t seed, double exclusion_radius)
    : dim_(dim), radius_(radius), exclusion_(exclusion_radius) {
    if (dim < 1 || dim > static_cast<int>(kPrimes.size()))
        fail(ErrorCode::InvalidArgument, "sampler dimension must be in [1, 32]");
    if (!(radius > 0.0) || !std::isfinite(radius))
        fail(ErrorCode::InvalidArgument, "sampling radius must be positive and finite");
    if (!(exclusion_radius >= 0.0) || exclusion_radius >= radius)
        fail(ErrorCode::InvalidArgument, "exclusion radius must lie in [0, radius)");
    std::mt19937_64 rng(seed);
    shift_.resize(static_cast<std::size_t>(dim));
    for (auto& s : shift_) s = unit_from_bits(rng());
}

Vector BallSampler::next() {
    Vector p(dim_);
    for (;;) {
        ++index_; // index 0 of every Halton base is the origin corner; skip it
        for (int i = 0; i < dim_; ++i) {
            double u = radical_inverse(index_, kPrimes[static_cast<std::size_t>(i)]) +
                       shift_[static_cast<std::size_t>(i)];
            if (u >= 1.0) u -= 1.0;
            p[i] = radius_ * (2.0 * u - 1.0);
        }
        const double norm = p.norm();
        if (norm <= radius_ && norm > exclusion_) return p;
    }
}

std::vector<Vector> BallSampler::take(std::size_t count) {
    std::vector<Vector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(next());
    return out;
}

} // namespace petis
