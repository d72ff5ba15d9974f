#include "passaudit/random.hpp"

#include <random>
#include <stdexcept>

namespace passaudit {

namespace {

// splitmix64: tiny, fully deterministic, passes BigCrush; used for the
// seeded stream and for stream-seed derivation.
std::uint64_t splitmix64_next(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

struct RandomSource::Impl {
    virtual ~Impl() = default;
    virtual std::uint64_t next() = 0;
};

namespace {

struct SeededImpl final : RandomSource::Impl {
    explicit SeededImpl(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() override { return splitmix64_next(state); }
    std::uint64_t state;
};

struct SecureImpl final : RandomSource::Impl {
    std::uint64_t next() override {
        return (static_cast<std::uint64_t>(device()) << 32) |
               static_cast<std::uint64_t>(device());
    }
    std::random_device device;
};

}  // namespace

RandomSource::RandomSource(std::unique_ptr<Impl> impl, bool seeded)
    : impl_(std::move(impl)), seeded_(seeded) {}

RandomSource::RandomSource(RandomSource&&) noexcept = default;
RandomSource& RandomSource::operator=(RandomSource&&) noexcept = default;
RandomSource::~RandomSource() = default;

RandomSource RandomSource::secure() {
    return RandomSource(std::make_unique<SecureImpl>(), false);
}

RandomSource RandomSource::seeded(std::uint64_t seed) {
    return RandomSource(std::make_unique<SeededImpl>(seed), true);
}

std::uint64_t RandomSource::next_u64() { return impl_->next(); }

std::uint64_t RandomSource::uniform_below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("uniform_below(0)");
    if ((n & (n - 1)) == 0) return next_u64() & (n - 1);
    // Reject draws from the incomplete group at the bottom of the 2^64
    // range so each residue keeps probability exactly 1/n.
    std::uint64_t threshold = (0 - n) % n;
    std::uint64_t draw;
    do {
        draw = next_u64();
    } while (draw < threshold);
    return draw % n;
}

std::uint8_t RandomSource::next_byte() {
    if (bytes_left_ == 0) {
        byte_buffer_ = next_u64();
        bytes_left_ = 8;
    }
    std::uint8_t b = static_cast<std::uint8_t>(byte_buffer_ & 0xFF);
    byte_buffer_ >>= 8;
    --bytes_left_;
    return b;
}

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream_index) {
    std::uint64_t state = seed;
    std::uint64_t a = splitmix64_next(state);
    state = a ^ (stream_index + 0x9E3779B97F4A7C15ULL);
    return splitmix64_next(state);
}

}  // namespace passaudit
