// Acceptance suite: end-to-end checks of the generation + audit pipeline
// at corpus scale. Prints one pass/fail line per criterion and exits
// nonzero if any fail.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gamma_oracle.hpp"
#include "passaudit/audit.hpp"
#include "passaudit/charset.hpp"
#include "passaudit/corpus.hpp"
#include "passaudit/estimator.hpp"
#include "passaudit/generator.hpp"
#include "passaudit/stats.hpp"

using namespace passaudit;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int criterion, bool ok, const std::string& what) {
    std::printf("[%s] criterion %d: %s\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
}

GenerationPolicy reference_policy(Composition comp, int length, bool require) {
    GenerationPolicy policy;
    policy.charset =
        build_charset(builtin_profiles(), "reference", slot_classes(comp), false);
    policy.length = length;
    policy.require_each_class = require;
    return policy;
}

// Corpus-scale counting without materializing the corpus.
FrequencyTable count_generated(const GenerationPolicy& policy,
                               GeneratorKind kind, std::uint64_t count,
                               std::uint64_t seed) {
    std::array<std::uint64_t, 128> counts{};
    RandomSource rng = RandomSource::seeded(seed);
    for (std::uint64_t i = 0; i < count; ++i) {
        std::string p = kind == GeneratorKind::Biased
                            ? generate_biased(policy, rng)
                            : generate(policy, rng);
        for (char ch : p) ++counts[static_cast<unsigned char>(ch)];
    }
    FrequencyTable table;
    table.password_length = policy.length;
    table.total_passwords = count;
    for (char ch : policy.charset.all()) {
        table.counts[ch] = counts[static_cast<unsigned char>(ch)];
        table.total_chars += counts[static_cast<unsigned char>(ch)];
    }
    return table;
}

char fmtbuf[512];

void criterion_1_composition_signature() {
    auto start = Clock::now();
    constexpr std::uint64_t kCount = 1000000;
    constexpr int kFamily = 147;

    GenerationPolicy uniform = reference_policy(Composition::LD, 8, false);
    FrequencyTable flat_table =
        count_generated(uniform, GeneratorKind::Uniform, kCount, 101);
    Chi2Result flat_on_uniform =
        chi2_uniformity(flat_table, expected_frequencies(uniform), kFamily);

    GenerationPolicy constrained = reference_policy(Composition::LD, 8, true);
    FrequencyTable adj_table =
        count_generated(constrained, GeneratorKind::Constrained, kCount, 102);
    GenerationPolicy flat_model = constrained;
    flat_model.require_each_class = false;
    Chi2Result flat_on_constrained =
        chi2_uniformity(adj_table, expected_frequencies(flat_model), kFamily);
    Chi2Result adj_on_constrained =
        chi2_uniformity(adj_table, expected_frequencies(constrained), kFamily);

    double elapsed = seconds_since(start);
    bool ok = flat_on_uniform.p_corrected == 1.0 &&
              flat_on_constrained.p_corrected < 1e-3 &&
              !adj_on_constrained.significant && elapsed < 60.0;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "composition chi2 signature (uniform flat p=%.2f, "
                  "constrained flat p=%.2e stat=%.0f, adjusted p=%.2f, %.1fs)",
                  flat_on_uniform.p_corrected, flat_on_constrained.p_corrected,
                  flat_on_constrained.statistic, adj_on_constrained.p_corrected,
                  elapsed);
    report(1, ok, fmtbuf);
}

void criterion_2_baseline_shape() {
    auto start = Clock::now();
    constexpr std::uint64_t kCount = 1000000;
    GenerationPolicy policy = reference_policy(Composition::All, 8, false);
    int passes = 0;
    double worst_stat = 94;
    for (std::uint64_t trial = 1; trial <= 20; ++trial) {
        FrequencyTable table =
            count_generated(policy, GeneratorKind::Uniform, kCount, 200 + trial);
        Chi2Result r = chi2_uniformity(table, expected_frequencies(policy), 147);
        bool trial_ok = r.df == 94 && r.statistic >= 60.0 &&
                        r.statistic <= 135.0 && r.p_corrected == 1.0;
        if (trial_ok) ++passes;
        if (std::fabs(r.statistic - 94) > std::fabs(worst_stat - 94))
            worst_stat = r.statistic;
    }
    double elapsed = seconds_since(start);
    bool ok = passes >= 19;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "df-94 baseline shape (%d/20 trials in [60,135] with "
                  "corrected p 1.00, worst stat %.1f, %.1fs)",
                  passes, worst_stat, elapsed);
    report(2, ok, fmtbuf);
}

void criterion_3_modulo_bias() {
    constexpr std::uint64_t kCount = 1000000;
    GenerationPolicy policy = reference_policy(Composition::L, 8, false);
    FrequencyTable table =
        count_generated(policy, GeneratorKind::Biased, kCount, 303);
    Chi2Result r = chi2_uniformity(table, expected_frequencies(policy), 147);
    OutlierReport outliers = frequency_outliers(table, 3.0);

    // 256 = 4*52 + 48: the last four characters of the set are underfed
    const std::string& all = policy.charset.all();
    std::set<char> expected_outliers(all.end() - 4, all.end());
    std::set<char> got(outliers.outliers.begin(), outliers.outliers.end());

    bool ok = r.p_corrected < 1e-6 && got == expected_outliers;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "modulo-bias detection (corrected p=%.1e, outliers '%s')",
                  r.p_corrected, outliers.outliers.c_str());
    report(3, ok, fmtbuf);
}

void criterion_4_weak_classification() {
    const std::vector<std::string> length8 = {
        "TaKEdeen", "'+'+'+_+", "d@rKn3s5", "////$8$8", "SAWyE@rS",
        "2345678#", "Tz5a5a5a", "nW$nW$RR", "pasSetet", "98449844"};
    const std::vector<std::string> length12 = {"oMMMMMMT?m*m", "B@KeRee22241",
                                               "MrKNxQNDAViS"};
    bool ok = true;
    std::string detail;
    for (const std::string& pw : length8) {
        GuessEstimate est = estimate_guesses(pw);
        if (est.log10_guesses > 6.0 || est.strength != Strength::OnlineWeak) {
            ok = false;
            detail += " " + pw;
        }
    }
    for (const std::string& pw : length12) {
        if (estimate_guesses(pw).log10_guesses >= 10.0) {
            ok = false;
            detail += " " + pw;
        }
    }
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "published weak passwords classify weak (10 length-8 online-"
                  "weak, 3 length-12 under lenient threshold%s%s)",
                  ok ? "" : "; failures:", detail.c_str());
    report(4, ok, fmtbuf);
}

void criterion_5_filter_efficacy() {
    auto start = Clock::now();
    GenerationPolicy policy = reference_policy(Composition::All, 8, false);
    const Estimator& est = default_estimator();

    FilterConfig filter = FilterConfig::lenient(8);
    RandomSource rng = RandomSource::seeded(505);
    std::uint64_t filtered_weak = 0;
    for (int i = 0; i < 100000; ++i) {
        FilteredResult r = generate_filtered(policy, filter, rng, est);
        if (est.estimate(r.password).log10_guesses < 6.0) ++filtered_weak;
    }

    RandomSource raw_rng = RandomSource::seeded(506);
    std::uint64_t raw_weak = 0;
    constexpr std::uint64_t kRaw = 1000000;
    for (std::uint64_t i = 0; i < kRaw; ++i) {
        if (est.estimate(generate(policy, raw_rng)).log10_guesses < 6.0)
            ++raw_weak;
    }
    double fraction = static_cast<double>(raw_weak) / kRaw;
    double elapsed = seconds_since(start);
    bool ok = filtered_weak == 0 && fraction >= 1e-6 && fraction <= 5e-4 &&
              elapsed < 600.0;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "filter efficacy (weak in filtered corpus: %llu of 1e5; "
                  "unfiltered weak fraction %.2e in [1e-6, 5e-4], %.1fs)",
                  static_cast<unsigned long long>(filtered_weak), fraction,
                  elapsed);
    report(5, ok, fmtbuf);
}

void criterion_6_chi2_cdf_oracle() {
    double worst = 0;
    for (int df : {1, 2, 5, 10, 94, 200}) {
        for (double x :
             {0.1, 1.0, df / 2.0, static_cast<double>(df), 2.0 * df, 5.0 * df}) {
            long double got = chi2_cdf(x, df);
            long double want = gamma_oracle::chi2_cdf(x, df);
            double err = static_cast<double>(std::fabs(got - want));
            if (err > worst) worst = err;
        }
    }
    bool ok = worst <= 1e-10;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "chi2 CDF vs extended-precision quadrature oracle "
                  "(max |error| %.2e <= 1e-10)",
                  worst);
    report(6, ok, fmtbuf);
}

void criterion_7_entropy_identities() {
    double bits = information_entropy(96, 8);
    double log10_guesses = information_bits_to_log10_guesses(bits);
    bool info_ok = std::fabs(log10_guesses - 15.56) <= 0.005;

    GenerationPolicy policy = reference_policy(Composition::L, 8, false);
    FrequencyTable table =
        count_generated(policy, GeneratorKind::Uniform, 1000000, 707);
    double shannon = shannon_entropy(table);
    bool shannon_ok = std::fabs(shannon - std::log2(52.0)) <= 0.005;

    bool ok = info_ok && shannon_ok;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "entropy identities (log10(96^8/2)=%.4f vs 15.56; uniform "
                  "52-char shannon %.4f vs %.4f)",
                  log10_guesses, shannon, std::log2(52.0));
    report(7, ok, fmtbuf);
}

double acceptance_exhaustive_from(
    const std::vector<std::vector<std::pair<std::size_t, double>>>& options,
    std::size_t i, std::size_t n) {
    if (i == n) return 0.0;
    double best = 1e300;
    for (const auto& [next, cost] : options[i]) {
        double value = cost + acceptance_exhaustive_from(options, next, n);
        if (value < best) best = value;
    }
    return best;
}

double acceptance_exhaustive(const Estimator& est, const std::string& s) {
    std::size_t n = s.size();
    std::vector<std::vector<std::pair<std::size_t, double>>> options(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            options[i].push_back({j + 1, static_cast<double>(j + 1 - i)});
    for (const MatchSpan& m : est.find_matches(s))
        options[m.start].push_back({m.end + 1, std::log10(m.guesses)});
    return acceptance_exhaustive_from(options, 0, n);
}

void criterion_8_dp_oracle() {
    auto start = Clock::now();
    Wordlists lists;
    lists.add_list("planted", std::vector<std::string>{"cab", "abc", "bac1"});
    Estimator est(lists);

    const std::string alphabet = "cab1@";
    std::vector<std::string> frontier = {""};
    std::uint64_t checked = 0;
    std::uint64_t mismatches = 0;
    for (int len = 1; len <= 6; ++len) {
        std::vector<std::string> next;
        for (const std::string& prefix : frontier)
            for (char ch : alphabet) next.push_back(prefix + ch);
        for (const std::string& s : next) {
            double dp = est.estimate(s).log10_guesses;
            double oracle = acceptance_exhaustive(est, s);
            if (std::fabs(dp - oracle) > 1e-9) ++mismatches;
            ++checked;
        }
        frontier = std::move(next);
    }
    double elapsed = seconds_since(start);
    bool ok = mismatches == 0 && checked == 19530 && elapsed < 30.0;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "DP equals exhaustive segmentation on %llu strings "
                  "(%llu mismatches, %.1fs)",
                  static_cast<unsigned long long>(checked),
                  static_cast<unsigned long long>(mismatches), elapsed);
    report(8, ok, fmtbuf);
}

void criterion_9_grid_reproduction() {
    auto start = Clock::now();
    AuditRequest request;
    request.profiles = {"kpx", "kpxc", "oneps", "bw", "dlan", "lpass",
                        "robo", "chrm", "sfri", "spg", "dvrn"};
    request.compositions = {Composition::All, Composition::L, Composition::LD,
                            Composition::LS, Composition::SD};
    request.lengths = {8, 12, 20};
    request.count_per_cell = 10000;
    request.seed = 909;
    request.threads = 2;

    AuditReport report_out = run_audit(builtin_profiles(), request);
    double elapsed = seconds_since(start);

    std::uint64_t analyzed = 0, skipped = 0, populated = 0;
    for (const AuditCell& cell : report_out.cells) {
        if (cell.skipped()) {
            ++skipped;
            continue;
        }
        ++analyzed;
        if (cell.shannon_bits > 0 && cell.chi2_flat.df > 0 &&
            cell.strength_histogram[0] + cell.strength_histogram[1] +
                    cell.strength_histogram[2] ==
                request.count_per_cell)
            ++populated;
    }
    std::string markdown = render_markdown(report_out);
    std::string csv = render_csv(report_out);

    bool ok = report_out.cells.size() == 165 && analyzed == 147 &&
              skipped == 18 && populated == 147 &&
              report_out.family_size == 147 && !markdown.empty() &&
              !csv.empty() && elapsed < 900.0;
    std::snprintf(fmtbuf, sizeof fmtbuf,
                  "paper grid at desk scale (%llu analyzed + %llu skipped "
                  "cells, family %d, report rendered, %.1fs)",
                  static_cast<unsigned long long>(analyzed),
                  static_cast<unsigned long long>(skipped),
                  report_out.family_size, elapsed);
    report(9, ok, fmtbuf);
}

}  // namespace

int main() {
    std::printf("passaudit acceptance suite\n");
    auto start = Clock::now();
    criterion_1_composition_signature();
    criterion_2_baseline_shape();
    criterion_3_modulo_bias();
    criterion_4_weak_classification();
    criterion_5_filter_efficacy();
    criterion_6_chi2_cdf_oracle();
    criterion_7_entropy_identities();
    criterion_8_dp_oracle();
    criterion_9_grid_reproduction();
    std::printf("%d of 9 criteria passed (%.1fs total)\n", 9 - failures,
                seconds_since(start));
    return failures == 0 ? 0 : 1;
}
