#include "passaudit/stats.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>

#include "passaudit/error.hpp"
#include "passaudit/estimator.hpp"

namespace passaudit {

void FrequencyTable::add_password(std::string_view password) {
    if (password.empty()) throw Error("empty password in frequency table");
    if (total_passwords == 0 && password_length == 0)
        password_length = static_cast<int>(password.size());
    if (password.size() != static_cast<std::size_t>(password_length))
        throw Error("password length " + std::to_string(password.size()) +
                    " does not match table length " +
                    std::to_string(password_length));
    for (char ch : password) ++counts[ch];
    total_chars += password.size();
    ++total_passwords;
}

void FrequencyTable::merge(const FrequencyTable& other) {
    if (other.total_passwords == 0) return;
    if (total_passwords != 0 && password_length != other.password_length)
        throw Error("cannot merge frequency tables of different password lengths");
    if (total_passwords == 0) password_length = other.password_length;
    for (const auto& [ch, n] : other.counts) counts[ch] += n;
    total_chars += other.total_chars;
    total_passwords += other.total_passwords;
}

void FrequencyTable::validate() const {
    std::uint64_t sum = 0;
    for (const auto& [ch, n] : counts) sum += n;
    if (sum != total_chars)
        throw Error("frequency table counts do not sum to total_chars");
    if (total_chars != total_passwords * static_cast<std::uint64_t>(password_length))
        throw Error("frequency table totals are inconsistent");
}

const char* to_string(Strength s) {
    switch (s) {
        case Strength::OnlineWeak: return "online-weak";
        case Strength::OfflineWeak: return "offline-weak";
        case Strength::Strong: return "strong";
    }
    return "?";
}

double shannon_entropy(const FrequencyTable& table) {
    if (table.total_chars == 0) throw Error("empty frequency table");
    double bits = 0.0;
    double total = static_cast<double>(table.total_chars);
    for (const auto& [ch, n] : table.counts) {
        if (n == 0) continue;
        double p = static_cast<double>(n) / total;
        bits -= p * std::log2(p);
    }
    return bits;
}

double information_entropy(int charset_size, int length) {
    if (charset_size < 2) throw Error("information entropy needs a charset of at least 2");
    if (length < 1) throw Error("information entropy needs length of at least 1");
    return length * std::log2(static_cast<double>(charset_size));
}

double information_bits_to_log10_guesses(double bits) {
    // Average guesses to brute force: 2^bits / 2.
    return (bits - 1.0) * std::log10(2.0);
}

std::map<char, double> expected_frequencies(const GenerationPolicy& policy) {
    policy.validate();
    auto mins = policy.effective_minimums();
    int m = policy.total_minimums();
    double base = static_cast<double>(policy.length - m) /
                  static_cast<double>(policy.charset.size());
    std::map<char, double> expected;
    for (char ch : policy.charset.all()) {
        double e = base;
        auto cls = policy.charset.slot_class_of(ch);
        if (cls) {
            auto it = mins.find(*cls);
            if (it != mins.end())
                e += static_cast<double>(it->second) /
                     static_cast<double>(policy.charset.group_size(*cls));
        }
        expected[ch] = e;
    }
    return expected;
}

namespace {

constexpr double kGammaEps = 1e-16;
constexpr int kGammaMaxIter = 100000;

// Lower regularized incomplete gamma by its power series; converges well
// for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < kGammaMaxIter; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kGammaEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by modified-Lentz continued
// fraction; converges well for x >= a + 1.
double gamma_q_continued_fraction(double a, double x) {
    constexpr double kTiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaMaxIter; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kGammaEps) break;
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double regularized_gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_continued_fraction(a, x);
}

}  // namespace

double chi2_cdf(double x, int df) {
    if (df < 1) throw Error("chi-squared needs at least 1 degree of freedom");
    if (x < 0) throw Error("chi-squared statistic cannot be negative");
    double p = regularized_gamma_p(df / 2.0, x / 2.0);
    return std::clamp(p, 0.0, 1.0);
}

double bonferroni(double p_raw, int family_size) {
    if (p_raw < 0.0 || p_raw > 1.0) throw Error("p-value outside [0, 1]");
    if (family_size < 1) throw Error("family size must be at least 1");
    return std::min(1.0, p_raw * family_size);
}

Chi2Result chi2_uniformity(const FrequencyTable& table,
                           const std::map<char, double>& expected_per_password,
                           int family_size) {
    if (table.total_passwords == 0) throw Error("empty frequency table");
    if (family_size < 1) throw Error("family size must be at least 1");
    if (expected_per_password.empty()) throw Error("empty expectation model");
    for (const auto& [ch, e] : expected_per_password)
        if (e <= 0.0)
            throw Error("expected frequency for '" + std::string(1, ch) +
                        "' is not positive");
    for (const auto& [ch, n] : table.counts) {
        if (n != 0 && expected_per_password.find(ch) == expected_per_password.end())
            throw Error("observed character '" + std::string(1, ch) +
                        "' is outside the expectation model");
    }

    double n_passwords = static_cast<double>(table.total_passwords);
    double statistic = 0.0;
    for (const auto& [ch, per_password] : expected_per_password) {
        double expected = per_password * n_passwords;
        auto it = table.counts.find(ch);
        double observed = it == table.counts.end()
                              ? 0.0
                              : static_cast<double>(it->second);
        double diff = observed - expected;
        statistic += diff * diff / expected;
    }

    Chi2Result result;
    result.statistic = statistic;
    result.df = static_cast<int>(expected_per_password.size()) - 1;
    if (result.df < 1) throw Error("expectation model needs at least 2 characters");
    result.p_raw = 1.0 - chi2_cdf(statistic, result.df);
    result.family_size = family_size;
    result.p_corrected = bonferroni(result.p_raw, family_size);
    result.significant = result.p_corrected < 0.05;
    return result;
}

OutlierReport frequency_outliers(const FrequencyTable& table, double k_sigma) {
    if (table.counts.size() < 2)
        throw Error("outlier detection needs at least 2 distinct characters");
    if (table.total_chars == 0) throw Error("empty frequency table");

    double total = static_cast<double>(table.total_chars);
    std::vector<std::pair<char, double>> pcts;
    pcts.reserve(table.counts.size());
    for (const auto& [ch, n] : table.counts)
        pcts.emplace_back(ch, 100.0 * static_cast<double>(n) / total);

    double mean = 0.0;
    for (const auto& [ch, pct] : pcts) mean += pct;
    mean /= static_cast<double>(pcts.size());
    double var = 0.0;
    for (const auto& [ch, pct] : pcts) var += (pct - mean) * (pct - mean);
    var /= static_cast<double>(pcts.size());
    double std_pct = std::sqrt(var);

    std::vector<std::pair<char, double>> flagged;
    for (const auto& [ch, pct] : pcts) {
        double dev = std::fabs(pct - mean);
        if (dev > k_sigma * std_pct) flagged.emplace_back(ch, dev);
    }
    std::sort(flagged.begin(), flagged.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });

    OutlierReport report;
    report.mean_pct = mean;
    report.std_pct = std_pct;
    report.k_sigma = k_sigma;
    for (const auto& [ch, dev] : flagged) report.outliers += ch;
    return report;
}

Strength classify_strength(double log10_guesses,
                           const StrengthThresholds& thresholds) {
    if (log10_guesses < 0) throw Error("guess count cannot be below 1");
    if (log10_guesses <= std::log10(thresholds.online_guesses))
        return Strength::OnlineWeak;
    if (log10_guesses <= std::log10(thresholds.offline_guesses))
        return Strength::OfflineWeak;
    return Strength::Strong;
}

double weak_fraction(std::istream& corpus, int length, const Estimator& estimator) {
    if (length < 1) throw Error("weak fraction needs a positive password length");
    double threshold = static_cast<double>(length) - 2.0;
    std::uint64_t total = 0;
    std::uint64_t weak = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(corpus, line)) {
        ++line_no;
        if (line.empty() && corpus.eof()) break;  // trailing newline
        if (line.size() != static_cast<std::size_t>(length))
            throw Error("line " + std::to_string(line_no) + ": password length " +
                        std::to_string(line.size()) + ", expected " +
                        std::to_string(length));
        ++total;
        if (estimator.estimate(line).log10_guesses < threshold) ++weak;
    }
    if (total == 0) throw Error("empty corpus");
    return static_cast<double>(weak) / static_cast<double>(total);
}

}  // namespace passaudit
