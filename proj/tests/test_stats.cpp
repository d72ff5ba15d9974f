#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gamma_oracle.hpp"
#include "passaudit/corpus.hpp"
#include "passaudit/estimator.hpp"
#include "passaudit/generator.hpp"
#include "passaudit/stats.hpp"

using namespace passaudit;

namespace {

FrequencyTable uniform_table(int classes, std::uint64_t count_each) {
    FrequencyTable t;
    for (int i = 0; i < classes; ++i)
        t.counts[static_cast<char>('!' + i)] = count_each;
    t.total_chars = classes * count_each;
    t.total_passwords = t.total_chars;
    t.password_length = 1;
    return t;
}

}  // namespace

TEST_CASE("shannon entropy of uniform and degenerate tables") {
    FrequencyTable uniform = uniform_table(52, 1000);
    CHECK(shannon_entropy(uniform) == doctest::Approx(std::log2(52.0)).epsilon(1e-12));

    FrequencyTable single;
    single.counts['x'] = 999;
    single.total_chars = 999;
    single.total_passwords = 999;
    single.password_length = 1;
    CHECK(shannon_entropy(single) == doctest::Approx(0.0));

    FrequencyTable skewed;
    skewed.counts['a'] = 3;
    skewed.counts['b'] = 1;
    skewed.total_chars = 4;
    skewed.total_passwords = 4;
    skewed.password_length = 1;
    CHECK(shannon_entropy(skewed) ==
          doctest::Approx(-(0.75 * std::log2(0.75) + 0.25 * std::log2(0.25)))
              .epsilon(1e-12));

    FrequencyTable empty;
    CHECK_THROWS_AS(shannon_entropy(empty), Error);
}

TEST_CASE("shannon entropy is bounded by log2 of the alphabet") {
    FrequencyTable t;
    t.counts['a'] = 10;
    t.counts['b'] = 20;
    t.counts['c'] = 30;
    t.counts['d'] = 1;
    t.total_chars = 61;
    t.total_passwords = 61;
    t.password_length = 1;
    CHECK(shannon_entropy(t) < std::log2(4.0));
}

TEST_CASE("information entropy formulas") {
    CHECK(information_entropy(96, 8) ==
          doctest::Approx(8.0 * std::log2(96.0)).epsilon(1e-12));
    CHECK(information_entropy(2, 1) == doctest::Approx(1.0));
    CHECK(information_entropy(95, 12) == doctest::Approx(78.838).epsilon(1e-4));
    CHECK_THROWS_AS(information_entropy(1, 8), Error);
    CHECK_THROWS_AS(information_entropy(96, 0), Error);

    // the paper's worked average-guess example: log10(96^8/2) = 15.56
    double bits = information_entropy(96, 8);
    CHECK(information_bits_to_log10_guesses(bits) ==
          doctest::Approx(15.557).epsilon(2e-4));
}

TEST_CASE("expected frequencies: flat model") {
    GenerationPolicy policy;
    policy.charset =
        build_charset(builtin_profiles(), "reference",
                      {SlotClass::Letter, SlotClass::Digit}, false);
    policy.length = 8;
    auto expected = expected_frequencies(policy);
    REQUIRE(expected.size() == 62);
    for (const auto& [ch, e] : expected)
        CHECK(e == doctest::Approx(8.0 / 62.0).epsilon(1e-12));
}

TEST_CASE("expected frequencies: adjusted model sums to length") {
    GenerationPolicy policy;
    policy.charset =
        build_charset(builtin_profiles(), "reference",
                      {SlotClass::Letter, SlotClass::Digit}, false);
    policy.length = 8;
    policy.require_each_class = true;
    auto expected = expected_frequencies(policy);
    CHECK(expected.at('5') == doctest::Approx(6.0 / 62.0 + 0.1).epsilon(1e-12));
    CHECK(expected.at('q') ==
          doctest::Approx(6.0 / 62.0 + 1.0 / 52.0).epsilon(1e-12));
    double sum = 0;
    for (const auto& [ch, e] : expected) sum += e;
    CHECK(sum == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("expected frequencies: equal symbol and digit sets degenerate to flat") {
    // ten digits and ten symbols with one guaranteed slot each stay uniform
    CharacterSet sd("", "", "0123456789", "!@#$%^&*()");
    GenerationPolicy policy;
    policy.charset = sd;
    policy.length = 8;
    policy.require_each_class = true;
    auto expected = expected_frequencies(policy);
    for (const auto& [ch, e] : expected)
        CHECK(e == doctest::Approx(8.0 / 20.0).epsilon(1e-12));
}

TEST_CASE("chi2_cdf matches the quadrature oracle to 1e-10") {
    for (int df : {1, 2, 5, 10, 94, 200, 500}) {
        for (double x :
             {0.1, 1.0, df / 2.0, static_cast<double>(df), 2.0 * df, 5.0 * df}) {
            double got = chi2_cdf(x, df);
            long double want = gamma_oracle::chi2_cdf(x, df);
            CHECK_MESSAGE(
                std::fabs(static_cast<long double>(got) - want) <= 1e-10L,
                "df=", df, " x=", x, " got=", got,
                " want=", static_cast<double>(want));
        }
    }
}

TEST_CASE("chi2_cdf endpoints and known quantiles") {
    for (int df : {1, 2, 10, 94}) CHECK(chi2_cdf(0.0, df) == 0.0);
    CHECK(chi2_cdf(3.841, 1) == doctest::Approx(0.95).epsilon(1e-3));
    CHECK(chi2_cdf(94.0, 94) == doctest::Approx(0.517).epsilon(1e-2));
    CHECK_THROWS_AS(chi2_cdf(-1.0, 3), Error);
    CHECK_THROWS_AS(chi2_cdf(1.0, 0), Error);
}

TEST_CASE("chi2_cdf is monotone in x") {
    double prev = -1;
    for (double x = 0; x <= 300; x += 1.5) {
        double p = chi2_cdf(x, 94);
        CHECK(p >= prev);
        prev = p;
    }
}

TEST_CASE("chi2_cdf is continuous across the series/fraction crossover") {
    // the implementation switches algorithms at x = df + 1; with a step
    // this small the CDF slope contributes ~1e-13, so anything near 1e-10
    // would be a branch mismatch
    for (int df : {1, 2, 10, 94, 500}) {
        double at = df + 1.0;
        double below = chi2_cdf(at - 1e-12, df);
        double above = chi2_cdf(at + 1e-12, df);
        CHECK(std::fabs(above - below) < 1e-10);
    }
}

TEST_CASE("frequency tables merge by addition") {
    FrequencyTable a, b;
    a.add_password("aabb");
    a.add_password("ccdd");
    b.add_password("aacc");
    a.merge(b);
    a.validate();
    CHECK(a.total_passwords == 3);
    CHECK(a.counts['a'] == 4);
    CHECK(a.counts['c'] == 4);

    FrequencyTable other_length;
    other_length.add_password("xy");
    CHECK_THROWS_AS(a.merge(other_length), Error);
}

TEST_CASE("bonferroni correction") {
    CHECK(bonferroni(0.01, 147) == doctest::Approx(1.0));
    CHECK(bonferroni(0.0001, 147) == doctest::Approx(0.0147).epsilon(1e-12));
    CHECK(bonferroni(0.3, 1) == doctest::Approx(0.3));
    CHECK_THROWS_AS(bonferroni(-0.1, 2), Error);
    CHECK_THROWS_AS(bonferroni(1.1, 2), Error);
    CHECK_THROWS_AS(bonferroni(0.5, 0), Error);
}

TEST_CASE("chi2_uniformity on a perfect fit") {
    FrequencyTable t = uniform_table(10, 500);
    std::map<char, double> expected;
    for (const auto& [ch, n] : t.counts) expected[ch] = 0.1;
    Chi2Result r = chi2_uniformity(t, expected, 1);
    CHECK(r.statistic == doctest::Approx(0.0));
    CHECK(r.p_raw == doctest::Approx(1.0));
    CHECK(r.df == 9);
    CHECK_FALSE(r.significant);
}

TEST_CASE("chi2_uniformity error paths") {
    FrequencyTable t = uniform_table(10, 500);
    std::map<char, double> expected;
    for (const auto& [ch, n] : t.counts) expected[ch] = 0.1;
    expected['!'] = 0.0;
    CHECK_THROWS_AS(chi2_uniformity(t, expected, 1), Error);

    FrequencyTable empty;
    std::map<char, double> e2{{'a', 1.0}};
    CHECK_THROWS_AS(chi2_uniformity(empty, e2, 1), Error);

    // observed character outside the model
    FrequencyTable t2 = uniform_table(3, 10);
    std::map<char, double> e3{{'!', 0.5}, {'"', 0.5}};
    CHECK_THROWS_AS(chi2_uniformity(t2, e3, 1), Error);
}

TEST_CASE("self-model chi2 is non-significant in at least 94 of 100 trials") {
    const ProfileMap& profiles = builtin_profiles();
    int ok_flat = 0;
    int ok_adjusted = 0;
    for (int trial = 0; trial < 100; ++trial) {
        // flat: uniform generator against the flat model
        {
            CorpusSpec spec{"reference", Composition::LD, 8, 20000,
                            static_cast<std::uint64_t>(1000 + trial),
                            GeneratorKind::Uniform, false};
            GenerationPolicy policy = policy_for(profiles, spec);
            std::stringstream corpus;
            generate_corpus(profiles, spec, corpus);
            FrequencyTable table = count_frequencies(corpus, 8, &policy.charset);
            if (!chi2_uniformity(table, expected_frequencies(policy), 1)
                     .significant)
                ++ok_flat;
        }
        // adjusted: constrained generator against the adjusted model
        {
            CorpusSpec spec{"reference", Composition::LD, 8, 20000,
                            static_cast<std::uint64_t>(5000 + trial),
                            GeneratorKind::Constrained, false};
            GenerationPolicy policy = policy_for(profiles, spec);
            std::stringstream corpus;
            generate_corpus(profiles, spec, corpus);
            FrequencyTable table = count_frequencies(corpus, 8, &policy.charset);
            if (!chi2_uniformity(table, expected_frequencies(policy), 1)
                     .significant)
                ++ok_adjusted;
        }
    }
    CHECK(ok_flat >= 94);
    CHECK(ok_adjusted >= 94);
}

TEST_CASE("outliers: uniform table has none") {
    FrequencyTable t = uniform_table(52, 1000);
    OutlierReport r = frequency_outliers(t, 3.0);
    CHECK(r.outliers.empty());
    CHECK(r.mean_pct == doctest::Approx(100.0 / 52));
    CHECK(r.std_pct == doctest::Approx(0.0));
}

TEST_CASE("outliers: half-frequency character is flagged at 3 sigma") {
    FrequencyTable t;
    for (int i = 0; i < 51; ++i)
        t.counts[static_cast<char>('!' + i)] = 1000;
    t.counts['Z'] = 500;
    t.total_chars = 51 * 1000 + 500;
    t.total_passwords = t.total_chars;
    t.password_length = 1;
    OutlierReport r = frequency_outliers(t, 3.0);
    CHECK(r.outliers == "Z");
}

TEST_CASE("outliers: degenerate table is an error") {
    FrequencyTable t;
    t.counts['a'] = 5;
    t.total_chars = 5;
    t.total_passwords = 5;
    t.password_length = 1;
    CHECK_THROWS_AS(frequency_outliers(t, 3.0), Error);
}

TEST_CASE("outlier ordering is by deviation magnitude then codepoint") {
    FrequencyTable t;
    for (int i = 0; i < 20; ++i) t.counts[static_cast<char>('a' + i)] = 1000;
    t.counts['x'] = 100;   // biggest deviation
    t.counts['y'] = 1900;  // second
    t.total_chars = 20 * 1000 + 100 + 1900;
    t.total_passwords = t.total_chars;
    t.password_length = 1;
    OutlierReport r = frequency_outliers(t, 2.0);
    REQUIRE(r.outliers.size() >= 2);
    CHECK(r.outliers[0] == 'x');
    CHECK(r.outliers[1] == 'y');
}

TEST_CASE("strength classification boundaries") {
    CHECK(classify_strength(4.06) == Strength::OnlineWeak);
    CHECK(classify_strength(6.0) == Strength::OnlineWeak);
    CHECK(classify_strength(6.0 + 1e-9) == Strength::OfflineWeak);
    CHECK(classify_strength(14.0) == Strength::OfflineWeak);
    CHECK(classify_strength(14.1) == Strength::Strong);
    CHECK(classify_strength(20.0) == Strength::Strong);
    CHECK_THROWS_AS(classify_strength(-1.0), Error);

    // monotone
    Strength prev = Strength::OnlineWeak;
    for (double g = 0; g < 25; g += 0.5) {
        Strength s = classify_strength(g);
        CHECK(static_cast<int>(s) >= static_cast<int>(prev));
        prev = s;
    }
}

TEST_CASE("bits thresholds stay consistent with guess thresholds") {
    StrengthThresholds t;
    CHECK(std::pow(2.0, t.online_bits) / 2.0 >= t.online_guesses);
    CHECK(std::pow(2.0, t.offline_bits) / 2.0 >= t.offline_guesses);
}

TEST_CASE("weak_fraction counts estimates under length minus two") {
    std::stringstream corpus;
    corpus << "aaaaaaaa\n"    // repeat, log10 ~ 1.9: weak
           << "xK3$qW9@\n"    // brute force, log10 8: not weak
           << "2345678#\n";   // sequence: weak
    double fraction = weak_fraction(corpus, 8, default_estimator());
    CHECK(fraction == doctest::Approx(2.0 / 3.0));

    std::stringstream empty;
    CHECK_THROWS_AS(weak_fraction(empty, 8, default_estimator()), Error);

    std::stringstream mismatched("aaaaaaaa\nabc\n");
    CHECK_THROWS_AS(weak_fraction(mismatched, 8, default_estimator()), Error);
}
