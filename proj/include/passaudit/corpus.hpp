#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "passaudit/charset.hpp"
#include "passaudit/generator.hpp"
#include "passaudit/stats.hpp"

namespace passaudit {

enum class GeneratorKind { Uniform, Constrained, Filtered, Biased };

const char* to_string(GeneratorKind k);
GeneratorKind parse_generator_kind(std::string_view text);

// One cell of the paper's grid: profile x composition x length, with a
// generator kind and a deterministic seed.
struct CorpusSpec {
    std::string profile;
    Composition composition = Composition::All;
    int length = 0;
    std::uint64_t count = 0;
    std::uint64_t seed = 0;
    GeneratorKind generator_kind = GeneratorKind::Uniform;
    bool avoid_difficult = false;
};

// Policy for one cell; throws on unsupported profile/composition/length
// combinations (e.g. symbols+digits for the 1Password profile).
GenerationPolicy policy_for(const ProfileMap& profiles, const CorpusSpec& spec);

// Exactly count newline-delimited passwords. Output is a pure function of
// (spec, seed): password block b (2^16 passwords) draws from the stream
// seeded with derive_stream_seed(seed, b), so results do not depend on
// the thread count.
std::uint64_t generate_corpus(const ProfileMap& profiles, const CorpusSpec& spec,
                              std::ostream& sink, int threads = 1);

// Streaming per-character counts over a newline-delimited corpus; every
// line must have the expected length. Charset characters start at zero
// so unseen characters still appear in the table.
FrequencyTable count_frequencies(std::istream& source, int expected_length,
                                 const CharacterSet* charset = nullptr);

}  // namespace passaudit
