#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "passaudit/policy.hpp"

namespace passaudit {

class Estimator;

// Per-character observed counts over a corpus of equal-length passwords.
struct FrequencyTable {
    std::map<char, std::uint64_t> counts;
    std::uint64_t total_chars = 0;
    std::uint64_t total_passwords = 0;
    int password_length = 0;

    void add_password(std::string_view password);
    // Partial tables from parallel counting merge by addition.
    void merge(const FrequencyTable& other);
    void validate() const;  // sum/total/length consistency
};

struct Chi2Result {
    double statistic = 0.0;
    int df = 0;
    double p_raw = 1.0;
    double p_corrected = 1.0;
    int family_size = 1;
    bool significant = false;  // alpha = 0.05 on p_corrected
};

enum class Strength { OnlineWeak, OfflineWeak, Strong };

const char* to_string(Strength s);

// Resistance thresholds: 1e6 guesses / 21 bits online, 1e14 guesses /
// 48 bits offline.
struct StrengthThresholds {
    double online_guesses = 1e6;
    double offline_guesses = 1e14;
    double online_bits = 21.0;
    double offline_bits = 48.0;
};

struct OutlierReport {
    double mean_pct = 0.0;
    double std_pct = 0.0;
    double k_sigma = 0.0;
    // Characters deviating more than k_sigma * std from the mean, sorted
    // by |deviation| descending, ties by codepoint.
    std::string outliers;
};

// -sum p_i log2 p_i over observed character frequencies.
double shannon_entropy(const FrequencyTable& table);

// length * log2(charset_size): idealized bits of a uniform password.
double information_entropy(int charset_size, int length);

// log10 of the average brute-force guess count for that many bits
// (2^bits / 2), e.g. information_bits_to_log10_guesses(52.68) ~= 15.56.
double information_bits_to_log10_guesses(double bits);

// Expected occurrences per password for every charset character. Without
// minimums every character gets length/|all|; with minimums a character
// of class S gets (length - sum(min)) / |all| + min_S/|S|. Values sum to
// the password length exactly.
std::map<char, double> expected_frequencies(const GenerationPolicy& policy);

// Regularized lower incomplete gamma P(df/2, x/2): series expansion for
// x < df + 1, continued fraction otherwise.
double chi2_cdf(double x, int df);

double bonferroni(double p_raw, int family_size);

// Pearson chi^2 of observed counts against per-password expectations,
// df = |charset| - 1, Bonferroni-corrected p.
Chi2Result chi2_uniformity(const FrequencyTable& table,
                           const std::map<char, double>& expected_per_password,
                           int family_size);

OutlierReport frequency_outliers(const FrequencyTable& table, double k_sigma);

// Boundary semantics: <= online threshold is OnlineWeak, <= offline
// threshold is OfflineWeak, above is Strong.
Strength classify_strength(double log10_guesses,
                           const StrengthThresholds& thresholds = {});

// Fraction of a newline-delimited corpus whose guess estimate (log10)
// falls below length - 2.
double weak_fraction(std::istream& corpus, int length, const Estimator& estimator);

}  // namespace passaudit
