#pragma once

#include <cstdint>

namespace erhoq {

// Philox4x32-10 counter-based generator (Salmon et al., Random123).
//
// Every random decision in the project is drawn from a substream addressed by
// (seed, purpose, block, index): the Monte Carlo engine uses
// (step index, psip index), the backend uses (grid index, execution index),
// and so on.  Because a substream's output depends only on its address and
// draw count, parallel and serial execution produce identical results.
class PhiloxRng {
public:
    enum class Purpose : std::uint32_t {
        PopulationInit = 1,
        StepEvents = 2,
        Shots = 3,
        Bootstrap = 4,
    };

    // `block` must fit in 24 bits (step index / grid index); `index` is the
    // 64-bit within-block stream (psip index, execution id, resample id).
    PhiloxRng(std::uint64_t seed, Purpose purpose, std::uint32_t block,
              std::uint64_t index);

    std::uint32_t next_u32();
    std::uint64_t next_u64();

    // Uniform in [0, 1), 53-bit resolution.
    double uniform();

    // Uniform integer in [0, n) for n a power of two (exact, no modulo bias).
    std::uint64_t uniform_pow2(int bits);

    // Raw block function, exposed for known-answer tests.
    static void philox4x32_10(const std::uint32_t counter[4],
                              const std::uint32_t key[2],
                              std::uint32_t out[4]);

private:
    void refill();

    std::uint32_t key_[2];
    std::uint32_t counter_[4];
    std::uint32_t buffer_[4];
    int cursor_ = 4;
};

}  // namespace erhoq
