#include "agr/rng.hpp"

#include <cmath>

namespace agr {

std::uint64_t mix_u64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t hash_combine(std::uint64_t h, std::uint64_t v) {
    return mix_u64(h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)));
}

namespace {
std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}
std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}
} // namespace

RngStream::RngStream(std::uint64_t seed) : RngStream(mix_u64(seed), 0) {}

RngStream::RngStream(std::uint64_t key, int depth) : key_(key), depth_(depth) {
    // Expand the key into the full xoshiro state with SplitMix64.
    std::uint64_t s = key;
    for (auto& w : state_) {
        s = mix_u64(s);
        w = s;
    }
    // xoshiro must not start at the all-zero state.
    if (state_[0] == 0 && state_[1] == 0 && state_[2] == 0 && state_[3] == 0)
        state_[0] = 0x1ULL;
}

RngStream RngStream::child(std::uint64_t tag) const {
    return RngStream(hash_combine(key_, tag), depth_ + 1);
}

RngStream RngStream::child(std::uint64_t tag_a, std::uint64_t tag_b) const {
    return RngStream(hash_combine(hash_combine(key_, tag_a), tag_b), depth_ + 1);
}

RngStream RngStream::child(std::string_view tag) const {
    return RngStream(hash_combine(key_, fnv1a(tag)), depth_ + 1);
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double RngStream::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double RngStream::uniform(double a, double b) {
    return a + (b - a) * uniform();
}

double RngStream::normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * M_PI * u2;
    cached_normal_ = rad * std::sin(ang);
    has_cached_normal_ = true;
    return rad * std::cos(ang);
}

int RngStream::uniform_int(int n) {
    return static_cast<int>(next_u64() % static_cast<std::uint64_t>(n));
}

std::string RngStream::provenance() const {
    return "stream:" + std::to_string(key_) + "/d" + std::to_string(depth_);
}

} // namespace agr
