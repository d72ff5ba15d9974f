#include "passaudit/corpus.hpp"

#include <atomic>
#include <istream>
#include <ostream>
#include <thread>
#include <vector>

namespace passaudit {

namespace {

// Block size of the deterministic parallel scheme: password i belongs to
// block i / 2^16, drawn from stream derive_stream_seed(seed, block).
constexpr std::uint64_t kBlockSize = 1ull << 16;

}  // namespace

const char* to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::Uniform: return "uniform";
        case GeneratorKind::Constrained: return "constrained";
        case GeneratorKind::Filtered: return "filtered";
        case GeneratorKind::Biased: return "biased";
    }
    return "?";
}

GeneratorKind parse_generator_kind(std::string_view text) {
    for (GeneratorKind k : {GeneratorKind::Uniform, GeneratorKind::Constrained,
                            GeneratorKind::Filtered, GeneratorKind::Biased})
        if (to_string(k) == text) return k;
    throw Error("unknown generator kind '" + std::string(text) +
                "' (expected uniform, constrained, filtered or biased)");
}

GenerationPolicy policy_for(const ProfileMap& profiles, const CorpusSpec& spec) {
    auto it = profiles.find(spec.profile);
    if (it == profiles.end()) throw Error("unknown profile '" + spec.profile + "'");
    const Profile& profile = it->second;

    if (!profile.supports(spec.composition))
        throw Error("profile '" + profile.name + "' does not support composition '" +
                    to_string(spec.composition) + "'");
    if (!profile.supports_length(spec.length))
        throw Error("profile '" + profile.name + "' does not support length " +
                    std::to_string(spec.length) + " (range " +
                    std::to_string(profile.min_length) + ".." +
                    std::to_string(profile.max_length) + ")");
    if (spec.count < 1) throw Error("corpus count must be at least 1");

    GenerationPolicy policy;
    policy.charset = build_charset(profile, slot_classes(spec.composition),
                                   spec.avoid_difficult);
    policy.length = spec.length;
    policy.require_each_class = spec.generator_kind == GeneratorKind::Constrained;
    policy.validate();
    return policy;
}

namespace {

std::string generate_one(const GenerationPolicy& policy, GeneratorKind kind,
                         RandomSource& rng) {
    switch (kind) {
        case GeneratorKind::Uniform:
        case GeneratorKind::Constrained:
            return generate(policy, rng);
        case GeneratorKind::Filtered:
            return generate_filtered(policy, FilterConfig::lenient(policy.length),
                                     rng)
                .password;
        case GeneratorKind::Biased:
            return generate_biased(policy, rng);
    }
    throw Error("unhandled generator kind");
}

std::string render_block(const GenerationPolicy& policy, const CorpusSpec& spec,
                         std::uint64_t block) {
    std::uint64_t first = block * kBlockSize;
    std::uint64_t n = std::min(kBlockSize, spec.count - first);
    RandomSource rng = RandomSource::seeded(derive_stream_seed(spec.seed, block));
    std::string out;
    out.reserve(static_cast<std::size_t>(n) * (policy.length + 1));
    for (std::uint64_t i = 0; i < n; ++i) {
        out += generate_one(policy, spec.generator_kind, rng);
        out += '\n';
    }
    return out;
}

}  // namespace

std::uint64_t generate_corpus(const ProfileMap& profiles, const CorpusSpec& spec,
                              std::ostream& sink, int threads) {
    GenerationPolicy policy = policy_for(profiles, spec);
    std::uint64_t blocks = (spec.count + kBlockSize - 1) / kBlockSize;

    if (threads <= 1 || blocks <= 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) {
            sink << render_block(policy, spec, b);
            if (!sink) throw Error("corpus write failed");
        }
        return spec.count;
    }

    // Workers fill per-block buffers; output order stays canonical.
    std::vector<std::string> rendered(blocks);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::uint64_t b = next.fetch_add(1);
            if (b >= blocks) return;
            rendered[b] = render_block(policy, spec, b);
        }
    };
    std::vector<std::thread> pool;
    int n_threads = std::min<std::uint64_t>(threads, blocks);
    pool.reserve(n_threads);
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();

    for (const std::string& block : rendered) {
        sink << block;
        if (!sink) throw Error("corpus write failed");
    }
    return spec.count;
}

FrequencyTable count_frequencies(std::istream& source, int expected_length,
                                 const CharacterSet* charset) {
    if (expected_length < 1) throw Error("expected password length must be positive");
    FrequencyTable table;
    table.password_length = expected_length;
    if (charset)
        for (char ch : charset->all()) table.counts[ch] = 0;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(source, line)) {
        ++line_no;
        if (line.empty() && source.eof()) break;  // tolerate trailing newline
        if (line.size() != static_cast<std::size_t>(expected_length))
            throw Error("line " + std::to_string(line_no) + ": password length " +
                        std::to_string(line.size()) + ", expected " +
                        std::to_string(expected_length));
        for (char ch : line) {
            unsigned char u = static_cast<unsigned char>(ch);
            if (u < 32 || u > 126)
                throw Error("line " + std::to_string(line_no) +
                            ": non-printable-ASCII byte");
            ++table.counts[ch];
        }
        table.total_chars += line.size();
        ++table.total_passwords;
    }
    return table;
}

}  // namespace passaudit
