#pragma once

#include <cstdint>
#include <memory>

namespace passaudit {

// Uniform random integers in caller-specified ranges. Two backings:
// seeded (deterministic splitmix64 stream, for tests and reproducible
// corpora) and secure (std::random_device, i.e. the OS CSPRNG). Range
// reduction always uses rejection sampling, never plain modulo, so every
// value in [0, n) has probability exactly 1/n.
class RandomSource {
public:
    static RandomSource secure();
    static RandomSource seeded(std::uint64_t seed);

    std::uint64_t next_u64();

    // Uniform in [0, n); n must be nonzero.
    std::uint64_t uniform_below(std::uint64_t n);

    // Next byte of the underlying stream, without any range reduction.
    // The deliberately biased generator reduces these with %.
    std::uint8_t next_byte();

    bool is_seeded() const { return seeded_; }

    RandomSource(RandomSource&&) noexcept;
    RandomSource& operator=(RandomSource&&) noexcept;
    ~RandomSource();

    struct Impl;

private:
    explicit RandomSource(std::unique_ptr<Impl> impl, bool seeded);

    std::unique_ptr<Impl> impl_;
    bool seeded_ = false;
    std::uint64_t byte_buffer_ = 0;
    int bytes_left_ = 0;
};

// Stream-seed derivation for parallel corpus blocks: block b of a corpus
// seeded with s draws from seeded(derive_stream_seed(s, b)), making output
// independent of thread count.
std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index);

}  // namespace passaudit
