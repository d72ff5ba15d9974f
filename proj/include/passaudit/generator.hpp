#pragma once

#include <string>

#include "passaudit/charset.hpp"
#include "passaudit/estimator.hpp"
#include "passaudit/policy.hpp"
#include "passaudit/random.hpp"

namespace passaudit {

// Guess-estimate rejection filter: regenerate until the estimate (log10)
// reaches the threshold. strict keeps passwords within 0.1 of the ideal
// length-derived estimate; lenient allows 2 below.
struct FilterConfig {
    enum class Mode { Strict, Lenient };

    Mode mode = Mode::Lenient;
    double threshold_log10 = 0.0;
    int max_attempts = 128;

    static FilterConfig strict(int length, int max_attempts = 128);
    static FilterConfig lenient(int length, int max_attempts = 128);

    void validate() const;
};

struct GenerateOptions {
    // Enforce composition by regenerating until all minimums are met
    // instead of the default guaranteed-slot-then-shuffle. Changes the
    // output distribution from the Eq.-2 model to a conditioned uniform.
    bool rejection_sampling = false;
};

// Uniform sampling under the policy. With minimums, the default strategy
// reserves one slot per required class draw and shuffles, so the expected
// per-character occurrence is (length - m)/|all| + min_S/|S|; without
// minimums it is length/|all|.
std::string generate(const GenerationPolicy& policy, RandomSource& rng,
                     const GenerateOptions& options = {});

struct FilteredResult {
    std::string password;
    int attempts = 0;
};

// Appendix generator: loop until the estimate clears the filter
// threshold. Throws after max_attempts (pathological policy).
FilteredResult generate_filtered(const GenerationPolicy& policy,
                                 const FilterConfig& filter, RandomSource& rng,
                                 const Estimator& estimator = default_estimator());

// Character i drawn uniformly from the class of slot i, e.g. spec
// "dddddd" for a six digit pin.
std::string generate_from_spec(const PasswordSpec& spec,
                               const CharacterSet& charset, RandomSource& rng);

// Adversarial fixture: each character picked as (uniform byte) mod
// |charset|, biased whenever 256 mod |charset| != 0. The policy must not
// carry composition requirements.
std::string generate_biased(const GenerationPolicy& policy, RandomSource& rng);

}  // namespace passaudit
