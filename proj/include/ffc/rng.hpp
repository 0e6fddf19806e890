#pragma once

#include <cmath>
#include <cstdint>

namespace ffc {

// Counter-based deterministic random streams. Every (master seed, domain,
// sample index) triple yields an independent substream, so parallel workers
// produce bit-identical results no matter how samples are scheduled.

namespace detail {
inline std::uint64_t splitmix64(std::uint64_t& x) {
    x += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = x;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
}  // namespace detail

enum class StreamDomain : std::uint64_t {
    oracle = 0x6f7261636c650001ull,
    coherent_purity = 0x636f687075720002ull,
    coherent_projector = 0x636f6870726f0003ull,
    haar_tests = 0x746573740004ull,
    generic = 0x67656e65720005ull,
};

class RngStream {
  public:
    RngStream(std::uint64_t master, StreamDomain domain, std::uint64_t index) {
        std::uint64_t s = master;
        s_ = detail::splitmix64(s);
        s = s_ ^ static_cast<std::uint64_t>(domain);
        s_ = detail::splitmix64(s);
        s = s_ ^ (index * 0xD1B54A32D192ED03ull + 0x2545F4914F6CDD1Dull);
        s_ = detail::splitmix64(s);
        have_spare_ = false;
    }

    std::uint64_t next_u64() { return detail::splitmix64(s_); }

    // uniform in (0,1), never exactly 0 or 1
    double next_uniform() {
        std::uint64_t u = next_u64();
        return (static_cast<double>(u >> 11) + 0.5) * 0x1.0p-53;
    }

    // standard normal via Box-Muller (deterministic across platforms)
    double next_normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = next_uniform();
        double u2 = next_uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(a);
        have_spare_ = true;
        return r * std::cos(a);
    }

  private:
    std::uint64_t s_ = 0;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace ffc
