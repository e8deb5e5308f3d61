#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace crsense {

// splitmix64 step (Vigna). Used both as a seed mixer and to derive
// independent stream seeds from (master seed, path of indices).
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Deterministic seed for a sub-stream addressed by a path of indices,
/// e.g. derive_seed(seed, {replication, purpose, su}). Splittable: any
/// worker can reconstruct any stream without shared state.
inline std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> path) {
    std::uint64_t s = master;
    std::uint64_t out = splitmix64(s);
    for (std::uint64_t p : path) {
        s = out ^ (p + 0x9e3779b97f4a7c15ULL);
        out = splitmix64(s);
    }
    return out;
}

/// One independent random stream. The variate transforms are written out
/// here (rather than using std:: distributions) so that sequences are
/// identical across standard library implementations.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next_u64() { return eng_(); }

    /// Uniform on [0, 1), 53-bit resolution.
    double uniform01() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n). n must be >= 1.
    int uniform_int(int n) {
        const auto wide = static_cast<unsigned __int128>(eng_()) * static_cast<unsigned __int128>(n);
        return static_cast<int>(wide >> 64);
    }

    double exponential(double mean) {
        // 1 - uniform01() is in (0, 1], so the log is finite.
        return -mean * std::log(1.0 - uniform01());
    }

    /// Standard normal via Box-Muller; the second variate is cached.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        const double u1 = 1.0 - uniform01();
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double a = 2.0 * 3.14159265358979323846 * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    double normal(double mu, double sigma) { return mu + sigma * normal(); }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace crsense
