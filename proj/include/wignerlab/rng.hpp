#pragma once

#include <cstdint>
#include <cmath>
#include <utility>

namespace wigner {

namespace detail {

inline std::uint64_t mix64(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdULL;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ULL;
    x ^= x >> 33;
    return x;
}

}  // namespace detail

/// Counter-based random stream: every output word is a pure function of
/// (key, stream, counter), so draws are reproducible regardless of the
/// order in which streams are consumed.
class StreamRng {
public:
    StreamRng(std::uint64_t key, std::uint64_t stream)
        : state_(detail::mix64(key ^ 0x9e3779b97f4a7c15ULL) ^
                 detail::mix64(stream + 0xbf58476d1ce4e5b9ULL)) {}

    std::uint64_t next_u64() {
        const std::uint64_t w =
            detail::mix64(state_ + counter_ * 0x94d049bb133111ebULL + 1);
        ++counter_;
        return w;
    }

    /// Uniform in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Box-Muller pair of independent standard normals.
    std::pair<double, double> next_gaussian_pair() {
        const double u1 = 1.0 - next_double();  // (0, 1]
        const double u2 = next_double();
        const double rr = std::sqrt(-2.0 * std::log(u1));
        const double th = 2.0 * M_PI * u2;
        return {rr * std::cos(th), rr * std::sin(th)};
    }

    double next_gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        auto [a, b] = next_gaussian_pair();
        spare_ = b;
        have_spare_ = true;
        return a;
    }

private:
    std::uint64_t state_;
    std::uint64_t counter_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

/// Per-sample seed for Monte Carlo: depends on the sample index only,
/// never on which worker picks the task up.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return detail::mix64(detail::mix64(master) + index);
}

/// Stream index for matrix entry (i, j); symmetric pairs share a stream.
inline std::uint64_t entry_stream(std::uint64_t i, std::uint64_t j) {
    return (i << 32) | j;
}

}  // namespace wigner
