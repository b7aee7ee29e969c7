#ifndef AGR_RNG_HPP
#define AGR_RNG_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace agr {

// Splittable counter-keyed random stream (xoshiro256++ core).
//
// A stream is identified by a 64-bit seed plus the chain of child() tags used
// to derive it. Two streams with the same derivation produce the same
// sequence no matter which thread runs them or in which order, which is what
// makes the Monte Carlo layers reproducible under any thread count. Each
// stream must be consumed by a single thread at a time.
class RngStream {
public:
    explicit RngStream(std::uint64_t seed);

    // Derive an independent stream keyed by (this stream's identity, tag).
    // Does not disturb this stream's state.
    RngStream child(std::uint64_t tag) const;
    RngStream child(std::string_view tag) const;
    RngStream child(std::uint64_t tag_a, std::uint64_t tag_b) const;

    std::uint64_t next_u64();
    double uniform();                 // [0, 1)
    double uniform(double a, double b);
    double normal();                  // standard Gaussian (Box-Muller)
    int uniform_int(int n);           // {0, ..., n-1}

    // Identity of this stream (seed mixed with all derivation tags).
    std::uint64_t key() const { return key_; }
    std::string provenance() const;

private:
    RngStream(std::uint64_t key, int depth);

    std::array<std::uint64_t, 4> state_{};
    std::uint64_t key_ = 0;
    int depth_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

// SplitMix64 finalizer; also used to build deterministic cache keys.
std::uint64_t mix_u64(std::uint64_t x);
std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v);

} // namespace agr

#endif
