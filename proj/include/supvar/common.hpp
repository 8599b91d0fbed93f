#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace supvar {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad user-supplied data (rejected inputs, malformed files).
struct ValidationError : Error {
    using Error::Error;
};

// A computed object violated an invariant that should hold by construction.
struct CheckFailure : Error {
    using Error::Error;
};

struct SamplerExhausted : Error {
    using Error::Error;
};

// splitmix64.  Used instead of <random> so that seeded runs produce the same
// bytes on every standard library implementation.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : s_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (s_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

private:
    std::uint64_t s_;
};

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

inline std::uint64_t ipow(std::uint64_t b, unsigned e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
}

// binomial coefficient mod p via Lucas' theorem
inline std::uint64_t binom_mod_p(std::uint64_t n, std::uint64_t k, std::uint64_t p) {
    std::uint64_t r = 1;
    while (k > 0 || n > 0) {
        std::uint64_t ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        std::uint64_t c = 1;
        for (std::uint64_t i = 0; i < ki; ++i) c = c * (ni - i) / (i + 1);
        r = (r * (c % p)) % p;
        n /= p;
        k /= p;
    }
    return r;
}

}  // namespace supvar
