#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "passaudit/stats.hpp"
#include "passaudit/wordlists.hpp"

namespace passaudit {

enum class MatchKind { Dictionary, Repeat, Sequence, Date, BruteForce };

const char* to_string(MatchKind k);

struct DictionaryDetail {
    std::string word;      // normalized (lowercase, l33t-decoded) token
    std::string list;      // which wordlist matched
    int rank = 0;
    int l33t_pairs = 0;    // distinct substitution pairs used
    double uppercase_multiplier = 1.0;
    double l33t_multiplier = 1.0;
};

struct RepeatDetail {
    std::string base;
    int count = 0;
    double base_guesses = 1.0;
};

struct SequenceDetail {
    char start = 0;
    bool ascending = true;
    int class_size = 0;  // cardinality of the character class of the run
};

struct DateDetail {
    int year = 0;
    int month = 0;  // zero for a bare yyyy match
    int day = 0;
};

struct BruteForceDetail {};

using MatchDetail = std::variant<DictionaryDetail, RepeatDetail, SequenceDetail,
                                 DateDetail, BruteForceDetail>;

// One matched region of a password; offsets are inclusive.
struct MatchSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    MatchKind kind = MatchKind::BruteForce;
    double guesses = 1.0;
    MatchDetail detail;

    std::size_t length() const { return end - start + 1; }
};

// Guess count a span is worth under the fixed scoring model:
//   Dictionary: rank * uppercase_multiplier * l33t_multiplier
//   Repeat:     guesses(base) * repeat_count
//   Sequence:   (4 if obvious start else class cardinality) * length
//               * (2 if descending)
//   Date:       365 * max(|year - reference_year|, 20)
//   BruteForce: 10^length
// Every score is floored at 1.
double score_match(const MatchSpan& span, int reference_year = 2019);

struct GuessEstimate {
    double log10_guesses = 0.0;
    std::vector<MatchSpan> decomposition;  // tiles the password exactly
    Strength strength = Strength::OnlineWeak;
};

// Pattern-based guess-number estimation: dictionary words (case-folded,
// l33t-decoded), repeats, sequences and dates, combined by a
// minimum-product dynamic program with brute-force gap fillers.
class Estimator {
public:
    explicit Estimator(const Wordlists& lists, int reference_year = 2019,
                       StrengthThresholds thresholds = {});

    // All matcher hits; brute-force spans are synthesized by the DP, not
    // reported here.
    std::vector<MatchSpan> find_matches(std::string_view password) const;

    GuessEstimate estimate(std::string_view password) const;

    int reference_year() const { return reference_year_; }
    const StrengthThresholds& thresholds() const { return thresholds_; }

private:
    void dictionary_matches(std::string_view password,
                            std::vector<MatchSpan>& out) const;
    void repeat_matches(std::string_view password,
                        std::vector<MatchSpan>& out) const;
    void sequence_matches(std::string_view password,
                          std::vector<MatchSpan>& out) const;
    void date_matches(std::string_view password,
                      std::vector<MatchSpan>& out) const;

    const Wordlists* lists_;
    int reference_year_;
    StrengthThresholds thresholds_;
};

// Shared estimator over the bundled wordlists.
const Estimator& default_estimator();

// Convenience: default_estimator().estimate(password).
GuessEstimate estimate_guesses(std::string_view password);

// n choose k, saturating at the double max; used by the uppercase
// multiplier model.
double binomial(int n, int k);

}  // namespace passaudit
