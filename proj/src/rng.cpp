#include "rng.hpp"

namespace erhoq {

namespace {

constexpr std::uint32_t kMult0 = 0xD2511F53u;
constexpr std::uint32_t kMult1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void round_once(std::uint32_t c[4], const std::uint32_t k[2]) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kMult0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kMult1) * c[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
    const std::uint32_t n0 = hi1 ^ c[1] ^ k[0];
    const std::uint32_t n1 = lo1;
    const std::uint32_t n2 = hi0 ^ c[3] ^ k[1];
    const std::uint32_t n3 = lo0;
    c[0] = n0;
    c[1] = n1;
    c[2] = n2;
    c[3] = n3;
}

}  // namespace

void PhiloxRng::philox4x32_10(const std::uint32_t counter[4],
                              const std::uint32_t key[2],
                              std::uint32_t out[4]) {
    std::uint32_t c[4] = {counter[0], counter[1], counter[2], counter[3]};
    std::uint32_t k[2] = {key[0], key[1]};
    for (int r = 0; r < 10; ++r) {
        round_once(c, k);
        k[0] += kWeyl0;
        k[1] += kWeyl1;
    }
    out[0] = c[0];
    out[1] = c[1];
    out[2] = c[2];
    out[3] = c[3];
}

PhiloxRng::PhiloxRng(std::uint64_t seed, Purpose purpose, std::uint32_t block,
                     std::uint64_t index) {
    key_[0] = static_cast<std::uint32_t>(seed);
    key_[1] = static_cast<std::uint32_t>(seed >> 32);
    counter_[0] = 0;  // draw counter, bumped per refill
    counter_[1] = static_cast<std::uint32_t>(index);
    counter_[2] = static_cast<std::uint32_t>(index >> 32);
    counter_[3] = (static_cast<std::uint32_t>(purpose) << 24) | (block & 0xFFFFFFu);
}

void PhiloxRng::refill() {
    philox4x32_10(counter_, key_, buffer_);
    ++counter_[0];
    cursor_ = 0;
}

std::uint32_t PhiloxRng::next_u32() {
    if (cursor_ >= 4) refill();
    return buffer_[cursor_++];
}

std::uint64_t PhiloxRng::next_u64() {
    const std::uint64_t hi = next_u32();
    const std::uint64_t lo = next_u32();
    return (hi << 32) | lo;
}

double PhiloxRng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::uint64_t PhiloxRng::uniform_pow2(int bits) {
    if (bits <= 0) return 0;
    return next_u64() >> (64 - bits);
}

}  // namespace erhoq
