#include "passaudit/estimator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "passaudit/error.hpp"

namespace passaudit {

const char* to_string(MatchKind k) {
    switch (k) {
        case MatchKind::Dictionary: return "dictionary";
        case MatchKind::Repeat: return "repeat";
        case MatchKind::Sequence: return "sequence";
        case MatchKind::Date: return "date";
        case MatchKind::BruteForce: return "bruteforce";
    }
    return "?";
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (int i = 1; i <= k; ++i) {
        r *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (r > std::numeric_limits<double>::max() / 2) return r;
    }
    return r;
}

namespace {

bool is_printable(char ch) {
    unsigned char u = static_cast<unsigned char>(ch);
    return u >= 32 && u <= 126;
}

// Substitutions an attacker is assumed to try; each decodes to exactly
// one letter.
char l33t_letter(char ch) {
    switch (ch) {
        case '@': case '4': return 'a';
        case '3': return 'e';
        case '0': return 'o';
        case '1': case '!': return 'i';
        case '|': return 'l';
        case '$': case '5': return 's';
        case '7': return 't';
        default: return 0;
    }
}

double uppercase_multiplier(std::string_view text) {
    int upper = 0;
    int lower = 0;
    char first_letter = 0;
    for (char ch : text) {
        if (std::isupper(static_cast<unsigned char>(ch))) {
            if (!first_letter) first_letter = ch;
            ++upper;
        } else if (std::islower(static_cast<unsigned char>(ch))) {
            if (!first_letter) first_letter = ch;
            ++lower;
        }
    }
    if (upper == 0) return 1.0;
    if (lower == 0) return 2.0;  // all caps
    if (upper == 1 && std::isupper(static_cast<unsigned char>(first_letter)))
        return 2.0;  // leading capital only
    return binomial(upper + lower, std::min(upper, lower));
}

struct Normalized {
    std::string text;
    int distinct_pairs = 0;
};

// Lowercase the substring and decode l33t characters, counting the
// distinct substitution pairs actually used.
Normalized normalize_for_lookup(std::string_view text) {
    Normalized out;
    out.text.reserve(text.size());
    bool pair_used[128] = {};
    for (char ch : text) {
        if (std::isalpha(static_cast<unsigned char>(ch))) {
            out.text += static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            continue;
        }
        char decoded = l33t_letter(ch);
        if (decoded) {
            out.text += decoded;
            unsigned char idx = static_cast<unsigned char>(ch);
            if (!pair_used[idx]) {
                pair_used[idx] = true;
                ++out.distinct_pairs;
            }
        } else {
            out.text += ch;
        }
    }
    return out;
}

int sequence_class_size(char ch) {
    if (std::islower(static_cast<unsigned char>(ch))) return 26;
    if (std::isupper(static_cast<unsigned char>(ch))) return 26;
    if (std::isdigit(static_cast<unsigned char>(ch))) return 10;
    return 0;  // symbols do not form sequences
}

bool same_sequence_class(char a, char b) {
    return sequence_class_size(a) != 0 &&
           ((std::islower(static_cast<unsigned char>(a)) &&
             std::islower(static_cast<unsigned char>(b))) ||
            (std::isupper(static_cast<unsigned char>(a)) &&
             std::isupper(static_cast<unsigned char>(b))) ||
            (std::isdigit(static_cast<unsigned char>(a)) &&
             std::isdigit(static_cast<unsigned char>(b))));
}

bool obvious_sequence_start(char ch) {
    return ch == 'a' || ch == 'A' || ch == 'z' || ch == 'Z' || ch == '0' ||
           ch == '1' || ch == '9';
}

struct DateParts {
    int year, month, day;
};

bool plausible_year(int y) { return y >= 1000 && y <= 2999; }

bool plausible_day_month(int day, int month) {
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

}  // namespace

double score_match(const MatchSpan& span, int reference_year) {
    double guesses = 1.0;
    switch (span.kind) {
        case MatchKind::Dictionary: {
            const auto& d = std::get<DictionaryDetail>(span.detail);
            guesses = static_cast<double>(d.rank) * d.uppercase_multiplier *
                      d.l33t_multiplier;
            break;
        }
        case MatchKind::Repeat: {
            const auto& d = std::get<RepeatDetail>(span.detail);
            guesses = d.base_guesses * d.count;
            break;
        }
        case MatchKind::Sequence: {
            const auto& d = std::get<SequenceDetail>(span.detail);
            double base = obvious_sequence_start(d.start)
                              ? 4.0
                              : static_cast<double>(d.class_size);
            guesses = base * static_cast<double>(span.length()) *
                      (d.ascending ? 1.0 : 2.0);
            break;
        }
        case MatchKind::Date: {
            const auto& d = std::get<DateDetail>(span.detail);
            guesses = 365.0 * std::max(std::abs(d.year - reference_year), 20);
            break;
        }
        case MatchKind::BruteForce:
            guesses = std::pow(10.0, static_cast<double>(span.length()));
            break;
    }
    return std::max(1.0, guesses);
}

Estimator::Estimator(const Wordlists& lists, int reference_year,
                     StrengthThresholds thresholds)
    : lists_(&lists), reference_year_(reference_year), thresholds_(thresholds) {}

void Estimator::dictionary_matches(std::string_view password,
                                   std::vector<MatchSpan>& out) const {
    if (lists_->empty()) return;
    std::size_t n = password.size();
    std::size_t max_len = std::min(n, lists_->max_token_length());
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t len = 3; len <= max_len && i + len <= n; ++len) {
            std::string_view piece = password.substr(i, len);
            Normalized norm = normalize_for_lookup(piece);
            const Wordlists::Hit* hit = lists_->lookup(norm.text);
            if (!hit) continue;
            MatchSpan span;
            span.start = i;
            span.end = i + len - 1;
            span.kind = MatchKind::Dictionary;
            DictionaryDetail detail;
            detail.word = norm.text;
            detail.list = std::string(hit->list);
            detail.rank = hit->rank;
            detail.l33t_pairs = norm.distinct_pairs;
            detail.uppercase_multiplier = uppercase_multiplier(piece);
            detail.l33t_multiplier = std::pow(2.0, norm.distinct_pairs);
            span.detail = std::move(detail);
            span.guesses = score_match(span, reference_year_);
            out.push_back(std::move(span));
        }
    }
}

void Estimator::repeat_matches(std::string_view password,
                               std::vector<MatchSpan>& out) const {
    std::size_t n = password.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t base_len = 1; base_len * 2 <= n - i; ++base_len) {
            std::string_view base = password.substr(i, base_len);
            int count = 1;
            while (i + static_cast<std::size_t>(count + 1) * base_len <= n &&
                   password.substr(i + count * base_len, base_len) == base)
                ++count;
            if (count < 2) continue;
            MatchSpan span;
            span.start = i;
            span.end = i + static_cast<std::size_t>(count) * base_len - 1;
            span.kind = MatchKind::Repeat;
            RepeatDetail detail;
            detail.base = std::string(base);
            detail.count = count;
            detail.base_guesses = std::pow(10.0, estimate(base).log10_guesses);
            span.detail = std::move(detail);
            span.guesses = score_match(span, reference_year_);
            out.push_back(std::move(span));
        }
    }
}

void Estimator::sequence_matches(std::string_view password,
                                 std::vector<MatchSpan>& out) const {
    std::size_t n = password.size();
    std::size_t i = 0;
    while (i + 1 < n) {
        int delta = static_cast<int>(password[i + 1]) - static_cast<int>(password[i]);
        if ((delta != 1 && delta != -1) ||
            !same_sequence_class(password[i], password[i + 1])) {
            ++i;
            continue;
        }
        std::size_t j = i + 1;
        while (j + 1 < n && same_sequence_class(password[j], password[j + 1]) &&
               static_cast<int>(password[j + 1]) - static_cast<int>(password[j]) ==
                   delta)
            ++j;
        if (j - i + 1 >= 3) {
            MatchSpan span;
            span.start = i;
            span.end = j;
            span.kind = MatchKind::Sequence;
            SequenceDetail detail;
            detail.start = password[i];
            detail.ascending = delta > 0;
            detail.class_size = sequence_class_size(password[i]);
            span.detail = detail;
            span.guesses = score_match(span, reference_year_);
            out.push_back(std::move(span));
        }
        i = j;
    }
}

void Estimator::date_matches(std::string_view password,
                             std::vector<MatchSpan>& out) const {
    std::size_t n = password.size();
    auto digits_at = [&](std::size_t pos, std::size_t len) -> int {
        int value = 0;
        for (std::size_t k = pos; k < pos + len; ++k) {
            if (!std::isdigit(static_cast<unsigned char>(password[k]))) return -1;
            value = value * 10 + (password[k] - '0');
        }
        return value;
    };

    for (std::size_t i = 0; i < n; ++i) {
        // Bare year.
        if (i + 4 <= n) {
            int year = digits_at(i, 4);
            if (year >= 0 && plausible_year(year)) {
                MatchSpan span;
                span.start = i;
                span.end = i + 3;
                span.kind = MatchKind::Date;
                span.detail = DateDetail{year, 0, 0};
                span.guesses = score_match(span, reference_year_);
                out.push_back(std::move(span));
            }
        }
        // Full dates: yyyymmdd, mmddyyyy, ddmmyyyy. Keep the parse with the
        // fewest guesses (the year closest to the reference year).
        if (i + 8 <= n && digits_at(i, 8) >= 0) {
            std::vector<DateParts> parses;
            int y = digits_at(i, 4), m = digits_at(i + 4, 2), d = digits_at(i + 6, 2);
            if (plausible_year(y) && plausible_day_month(d, m))
                parses.push_back({y, m, d});
            m = digits_at(i, 2), d = digits_at(i + 2, 2), y = digits_at(i + 4, 4);
            if (plausible_year(y) && plausible_day_month(d, m))
                parses.push_back({y, m, d});
            d = digits_at(i, 2), m = digits_at(i + 2, 2), y = digits_at(i + 4, 4);
            if (plausible_year(y) && plausible_day_month(d, m))
                parses.push_back({y, m, d});
            if (!parses.empty()) {
                const DateParts* best = &parses[0];
                for (const DateParts& p : parses)
                    if (std::abs(p.year - reference_year_) <
                        std::abs(best->year - reference_year_))
                        best = &p;
                MatchSpan span;
                span.start = i;
                span.end = i + 7;
                span.kind = MatchKind::Date;
                span.detail = DateDetail{best->year, best->month, best->day};
                span.guesses = score_match(span, reference_year_);
                out.push_back(std::move(span));
            }
        }
    }
}

std::vector<MatchSpan> Estimator::find_matches(std::string_view password) const {
    if (password.empty()) throw Error("cannot analyze an empty password");
    for (char ch : password)
        if (!is_printable(ch))
            throw Error("password contains a non-printable-ASCII byte");

    std::vector<MatchSpan> matches;
    dictionary_matches(password, matches);
    repeat_matches(password, matches);
    sequence_matches(password, matches);
    date_matches(password, matches);
    return matches;
}

GuessEstimate Estimator::estimate(std::string_view password) const {
    std::vector<MatchSpan> matches = find_matches(password);
    std::size_t n = password.size();

    // Group matches by end position for the DP sweep.
    std::vector<std::vector<std::size_t>> by_end(n);
    for (std::size_t idx = 0; idx < matches.size(); ++idx)
        by_end[matches[idx].end].push_back(idx);

    // Index value marking a one-character brute-force extension instead of
    // a matched span.
    constexpr std::size_t kBruteStep = static_cast<std::size_t>(-1);
    struct State {
        double log10 = std::numeric_limits<double>::infinity();
        int spans = 0;
        bool last_is_brute = false;
        std::size_t prev = 0;
        std::size_t match = static_cast<std::size_t>(-1);
    };

    std::vector<State> dp(n + 1);
    dp[0].log10 = 0.0;
    dp[0].spans = 0;

    constexpr double kTieEps = 1e-12;
    auto better = [](double log10, int spans, const State& incumbent) {
        if (log10 < incumbent.log10 - kTieEps) return true;
        if (log10 > incumbent.log10 + kTieEps) return false;
        return spans < incumbent.spans;
    };

    for (std::size_t j = 1; j <= n; ++j) {
        // Extend by one brute-force character (10 guesses per character;
        // consecutive brute characters merge into one span).
        const State& prev = dp[j - 1];
        if (std::isfinite(prev.log10)) {
            double log10 = prev.log10 + 1.0;
            int spans = prev.spans + (prev.last_is_brute ? 0 : 1);
            if (better(log10, spans, dp[j])) {
                dp[j].log10 = log10;
                dp[j].spans = spans;
                dp[j].last_is_brute = true;
                dp[j].prev = j - 1;
                dp[j].match = kBruteStep;
            }
        }
        for (std::size_t idx : by_end[j - 1]) {
            const MatchSpan& m = matches[idx];
            const State& before = dp[m.start];
            if (!std::isfinite(before.log10)) continue;
            double log10 = before.log10 + std::log10(m.guesses);
            int spans = before.spans + 1;
            if (better(log10, spans, dp[j])) {
                dp[j].log10 = log10;
                dp[j].spans = spans;
                dp[j].last_is_brute = false;
                dp[j].prev = m.start;
                dp[j].match = idx;
            }
        }
    }

    // Reconstruct the tiling, merging runs of brute-force characters.
    std::vector<MatchSpan> decomposition;
    std::size_t pos = n;
    while (pos > 0) {
        const State& state = dp[pos];
        if (state.match != kBruteStep) {
            decomposition.push_back(matches[state.match]);
            pos = state.prev;
        } else {
            std::size_t end = pos - 1;
            std::size_t start = end;
            while (pos > 0 && dp[pos].match == kBruteStep) {
                start = pos - 1;
                pos = dp[pos].prev;
            }
            MatchSpan brute;
            brute.start = start;
            brute.end = end;
            brute.kind = MatchKind::BruteForce;
            brute.detail = BruteForceDetail{};
            brute.guesses = score_match(brute, reference_year_);
            decomposition.push_back(std::move(brute));
        }
    }
    std::reverse(decomposition.begin(), decomposition.end());

    GuessEstimate result;
    result.log10_guesses = dp[n].log10;
    result.decomposition = std::move(decomposition);
    result.strength = classify_strength(result.log10_guesses, thresholds_);
    return result;
}

const Estimator& default_estimator() {
    static const Estimator estimator(Wordlists::bundled());
    return estimator;
}

GuessEstimate estimate_guesses(std::string_view password) {
    return default_estimator().estimate(password);
}

}  // namespace passaudit
