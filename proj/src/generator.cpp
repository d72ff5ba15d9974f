#include "passaudit/generator.hpp"

#include <algorithm>
#include <cmath>

namespace passaudit {

FilterConfig FilterConfig::strict(int length, int max_attempts) {
    FilterConfig f;
    f.mode = Mode::Strict;
    f.threshold_log10 = std::max(0.0, static_cast<double>(length) - 0.1);
    f.max_attempts = max_attempts;
    return f;
}

FilterConfig FilterConfig::lenient(int length, int max_attempts) {
    FilterConfig f;
    f.mode = Mode::Lenient;
    f.threshold_log10 = std::max(0.0, static_cast<double>(length) - 2.0);
    f.max_attempts = max_attempts;
    return f;
}

void FilterConfig::validate() const {
    if (max_attempts < 1) throw Error("filter max_attempts must be at least 1");
    if (threshold_log10 < 0) throw Error("filter threshold must be non-negative");
}

namespace {

char draw_from(const std::string& chars, RandomSource& rng) {
    return chars[rng.uniform_below(chars.size())];
}

void shuffle_in_place(std::string& s, RandomSource& rng) {
    for (std::size_t i = s.size(); i > 1; --i)
        std::swap(s[i - 1], s[rng.uniform_below(i)]);
}

bool meets_minimums(const std::string& password, const GenerationPolicy& policy,
                    const std::map<SlotClass, int>& mins) {
    std::map<SlotClass, int> have;
    for (char ch : password) {
        auto cls = policy.charset.slot_class_of(ch);
        if (cls) ++have[*cls];
    }
    for (const auto& [cls, need] : mins)
        if (have[cls] < need) return false;
    return true;
}

std::string generate_unconstrained(const GenerationPolicy& policy,
                                   RandomSource& rng) {
    std::string password;
    password.reserve(policy.length);
    const std::string& all = policy.charset.all();
    for (int i = 0; i < policy.length; ++i) password += draw_from(all, rng);
    return password;
}

}  // namespace

std::string generate(const GenerationPolicy& policy, RandomSource& rng,
                     const GenerateOptions& options) {
    policy.validate();
    auto mins = policy.effective_minimums();
    if (mins.empty()) return generate_unconstrained(policy, rng);

    if (options.rejection_sampling) {
        // Conditioned-uniform alternative: resample until every minimum is
        // met. Distribution differs from the guaranteed-slot default.
        for (;;) {
            std::string candidate = generate_unconstrained(policy, rng);
            if (meets_minimums(candidate, policy, mins)) return candidate;
        }
    }

    // Guaranteed-slot-then-shuffle: one draw per required-class slot, the
    // remainder uniform over the whole set, then a uniform shuffle. Expected
    // occurrences match (length - m)/|all| + min_S/|S| exactly.
    std::string password;
    password.reserve(policy.length);
    for (const auto& [cls, count] : mins) {
        std::string members = policy.charset.group(cls);
        for (int i = 0; i < count; ++i) password += draw_from(members, rng);
    }
    const std::string& all = policy.charset.all();
    while (password.size() < static_cast<std::size_t>(policy.length))
        password += draw_from(all, rng);
    shuffle_in_place(password, rng);
    return password;
}

FilteredResult generate_filtered(const GenerationPolicy& policy,
                                 const FilterConfig& filter, RandomSource& rng,
                                 const Estimator& estimator) {
    policy.validate();
    filter.validate();
    for (int attempt = 1; attempt <= filter.max_attempts; ++attempt) {
        std::string candidate = generate(policy, rng);
        if (estimator.estimate(candidate).log10_guesses >= filter.threshold_log10)
            return {std::move(candidate), attempt};
    }
    throw Error("no password reached the guess-estimate threshold " +
                std::to_string(filter.threshold_log10) + " after " +
                std::to_string(filter.max_attempts) +
                " attempts; the policy cannot produce acceptable passwords");
}

std::string generate_from_spec(const PasswordSpec& spec,
                               const CharacterSet& charset, RandomSource& rng) {
    if (spec.slots.empty()) throw Error("password spec has no slots");
    std::string password;
    password.reserve(spec.slots.size());
    for (SlotClass cls : spec.slots) {
        std::string members = charset.group(cls);
        if (members.empty())
            throw Error("spec selector '" + std::string(1, to_char(cls)) +
                        "' has no characters in the active character set");
        password += draw_from(members, rng);
    }
    return password;
}

std::string generate_biased(const GenerationPolicy& policy, RandomSource& rng) {
    policy.validate();
    if (policy.require_each_class || !policy.effective_minimums().empty())
        throw Error("the biased fixture does not support composition requirements");
    const std::string& all = policy.charset.all();
    std::string password;
    password.reserve(policy.length);
    for (int i = 0; i < policy.length; ++i)
        password += all[rng.next_byte() % all.size()];
    return password;
}

}  // namespace passaudit
