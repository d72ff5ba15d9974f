// passaudit: policy-driven password generation plus the statistical audit
// pipeline (entropy, chi-squared uniformity, frequency outliers, guess
// estimation) over generated corpora.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "passaudit/audit.hpp"
#include "passaudit/charset.hpp"
#include "passaudit/corpus.hpp"
#include "passaudit/estimator.hpp"
#include "passaudit/generator.hpp"
#include "passaudit/stats.hpp"

namespace {

using namespace passaudit;

ProfileMap load_active_profiles(const std::string& extra_path) {
    std::string path = extra_path;
    if (path.empty()) {
        const char* env = std::getenv("PASSAUDIT_PROFILES");
        if (env) path = env;
    }
    if (path.empty()) return builtin_profiles();
    std::ifstream in(path);
    if (!in) throw Error("cannot open profile file '" + path + "'");
    return load_profiles(in);
}

RandomSource make_rng(const std::optional<std::uint64_t>& seed) {
    if (seed) {
        std::cerr << "warning: --seed makes output deterministic; "
                     "do not use seeded passwords for real accounts\n";
        return RandomSource::seeded(*seed);
    }
    return RandomSource::secure();
}

std::vector<std::string> split_list(const std::string& text) {
    std::vector<std::string> items;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) items.push_back(item);
    return items;
}

void write_or_die(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
    if (!out) throw Error("cannot write '" + path + "'");
}

struct GenArgs {
    std::string profile = "reference";
    std::string profiles_file;
    std::optional<int> length;
    std::optional<std::string> composition;
    std::optional<std::string> spec_text;
    int min_digits = 1;
    int min_symbols = 1;
    bool require_each = false;
    bool avoid_difficult = false;
    std::string filter = "lenient";
    int max_attempts = 128;
    std::uint64_t count = 1;
    std::optional<std::uint64_t> seed;
};

int run_gen(const GenArgs& args) {
    ProfileMap profiles = load_active_profiles(args.profiles_file);
    auto it = profiles.find(args.profile);
    if (it == profiles.end()) throw Error("unknown profile '" + args.profile + "'");
    const Profile& profile = it->second;

    RandomSource rng = make_rng(args.seed);

    if (args.spec_text) {
        PasswordSpec spec = parse_spec(*args.spec_text);
        CharacterSet charset =
            build_charset(profile,
                          {SlotClass::Letter, SlotClass::Digit, SlotClass::Symbol},
                          args.avoid_difficult);
        for (std::uint64_t i = 0; i < args.count; ++i) {
            std::string password = generate_from_spec(spec, charset, rng);
            if (args.filter != "off") {
                FilterConfig filter =
                    args.filter == "strict"
                        ? FilterConfig::strict(static_cast<int>(spec.slots.size()),
                                               args.max_attempts)
                        : FilterConfig::lenient(static_cast<int>(spec.slots.size()),
                                                args.max_attempts);
                int attempt = 1;
                while (estimate_guesses(password).log10_guesses <
                       filter.threshold_log10) {
                    if (++attempt > filter.max_attempts)
                        throw Error("no spec password reached the filter threshold");
                    password = generate_from_spec(spec, charset, rng);
                }
            }
            std::cout << password << '\n';
        }
        return 0;
    }

    Composition comp = args.composition ? parse_composition(*args.composition)
                                        : profile.default_composition;
    if (!profile.supports(comp))
        throw Error("profile '" + profile.name + "' does not support composition '" +
                    to_string(comp) + "'");
    int length = args.length ? *args.length : profile.default_length;
    if (!profile.supports_length(length))
        throw Error("profile '" + profile.name + "' does not support length " +
                    std::to_string(length));

    GenerationPolicy policy;
    policy.charset = build_charset(profile, slot_classes(comp), args.avoid_difficult);
    policy.length = length;
    policy.require_each_class =
        args.require_each || profile.requires_diverse == Profile::Diverse::Always;
    if (policy.charset.group_size(SlotClass::Digit) > 0 && args.min_digits > 0)
        policy.min_counts[SlotClass::Digit] = args.min_digits;
    if (policy.charset.group_size(SlotClass::Symbol) > 0 && args.min_symbols > 0)
        policy.min_counts[SlotClass::Symbol] = args.min_symbols;
    policy.validate();

    for (std::uint64_t i = 0; i < args.count; ++i) {
        if (args.filter == "off") {
            std::cout << generate(policy, rng) << '\n';
        } else {
            FilterConfig filter = args.filter == "strict"
                                      ? FilterConfig::strict(length, args.max_attempts)
                                      : FilterConfig::lenient(length, args.max_attempts);
            std::cout << generate_filtered(policy, filter, rng).password << '\n';
        }
    }
    return 0;
}

struct CorpusArgs {
    std::string profile = "reference";
    std::string profiles_file;
    std::string composition = "all";
    int length = 16;
    std::uint64_t count = 1000;
    std::uint64_t seed = 0;
    std::string generator = "uniform";
    std::string out;
    bool avoid_difficult = false;
    int threads = 1;
};

int run_corpus(const CorpusArgs& args) {
    ProfileMap profiles = load_active_profiles(args.profiles_file);
    CorpusSpec spec;
    spec.profile = args.profile;
    spec.composition = parse_composition(args.composition);
    spec.length = args.length;
    spec.count = args.count;
    spec.seed = args.seed;
    spec.generator_kind = parse_generator_kind(args.generator);
    spec.avoid_difficult = args.avoid_difficult;

    if (args.out.empty()) {
        generate_corpus(profiles, spec, std::cout, args.threads);
    } else {
        std::ofstream out(args.out);
        if (!out) throw Error("cannot write '" + args.out + "'");
        generate_corpus(profiles, spec, out, args.threads);
    }
    return 0;
}

struct AuditArgs {
    // The studied grid: 11 profiles x 5 compositions x 3 lengths; Safari
    // only supports length 15 and 1Password has no sd mode, leaving 147
    // analyzable cells.
    std::string profiles_csv =
        "kpx,kpxc,oneps,bw,dlan,lpass,robo,chrm,sfri,spg,dvrn";
    std::string compositions_csv = "all,l,ld,ls,sd";
    std::string lengths_csv = "8,12,20";
    std::string profiles_file;
    std::uint64_t count = 10000;
    std::uint64_t seed = 0;
    std::string generator = "auto";
    double k_sigma = 3.0;
    int threads = 2;
    std::string out_md;
    std::string out_csv;
    bool fail_on_nonrandom = false;
};

int run_audit_cmd(const AuditArgs& args) {
    ProfileMap profiles = load_active_profiles(args.profiles_file);

    AuditRequest request;
    request.profiles = split_list(args.profiles_csv);
    for (const std::string& c : split_list(args.compositions_csv))
        request.compositions.push_back(parse_composition(c));
    for (const std::string& l : split_list(args.lengths_csv))
        request.lengths.push_back(std::stoi(l));
    request.count_per_cell = args.count;
    request.seed = args.seed;
    if (args.generator != "auto")
        request.generator_kind = parse_generator_kind(args.generator);
    request.k_sigma = args.k_sigma;
    request.threads = args.threads;

    AuditReport report = run_audit(profiles, request);

    std::string markdown = render_markdown(report);
    if (!args.out_md.empty()) write_or_die(args.out_md, markdown);
    if (!args.out_csv.empty()) write_or_die(args.out_csv, render_csv(report));
    if (args.out_md.empty()) std::cout << markdown;

    if (args.fail_on_nonrandom && report.any_non_random()) return 2;
    return 0;
}

void print_estimate(const std::string& password) {
    GuessEstimate est = estimate_guesses(password);
    std::cout << password << "\tlog10=" << est.log10_guesses << '\t'
              << to_string(est.strength) << '\n';
    for (const MatchSpan& span : est.decomposition) {
        std::cout << "  [" << span.start << ".." << span.end << "] "
                  << to_string(span.kind) << " '"
                  << password.substr(span.start, span.length()) << "' guesses="
                  << span.guesses;
        if (span.kind == MatchKind::Dictionary) {
            const auto& d = std::get<DictionaryDetail>(span.detail);
            std::cout << " (" << d.list << " '" << d.word << "' rank " << d.rank
                      << ")";
        } else if (span.kind == MatchKind::Repeat) {
            const auto& d = std::get<RepeatDetail>(span.detail);
            std::cout << " ('" << d.base << "' x" << d.count << ")";
        }
        std::cout << '\n';
    }
}

int run_estimate(const std::vector<std::string>& passwords, bool stdin_mode) {
    if (stdin_mode || passwords.empty()) {
        std::string line;
        while (std::getline(std::cin, line))
            if (!line.empty()) print_estimate(line);
        return 0;
    }
    for (const std::string& p : passwords) print_estimate(p);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"password generation and randomness audit toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("gen", "generate passwords");
    cmd_gen->add_option("--profile", gen.profile, "manager profile (default reference)");
    cmd_gen->add_option("--profiles-file", gen.profiles_file, "extra profile file");
    auto* opt_len = cmd_gen->add_option("--length", gen.length, "password length");
    auto* opt_comp = cmd_gen->add_option("--composition", gen.composition,
                                         "character classes: l|ld|ls|sd|all");
    auto* opt_spec = cmd_gen->add_option(
        "--spec", gen.spec_text, "password spec string over l,d,s (e.g. dddddd)");
    opt_spec->excludes(opt_len)->excludes(opt_comp);
    cmd_gen->add_option("--min-digits", gen.min_digits, "minimum digits (default 1)");
    cmd_gen->add_option("--min-symbols", gen.min_symbols,
                        "minimum symbols (default 1)");
    cmd_gen->add_flag("--require-each", gen.require_each,
                      "require one character of every enabled class");
    cmd_gen->add_flag("--avoid-difficult", gen.avoid_difficult,
                      "drop hard-to-read characters where the profile supports it");
    cmd_gen->add_option("--filter", gen.filter, "guess filter: strict|lenient|off")
        ->check(CLI::IsMember({"strict", "lenient", "off"}));
    cmd_gen->add_option("--max-attempts", gen.max_attempts, "filter retry budget");
    cmd_gen->add_option("--count", gen.count, "passwords to generate");
    cmd_gen->add_option("--seed", gen.seed, "deterministic seed (test mode only)");

    CorpusArgs corpus;
    CLI::App* cmd_corpus = app.add_subcommand("corpus", "write a password corpus");
    cmd_corpus->add_option("--profile", corpus.profile, "manager profile");
    cmd_corpus->add_option("--profiles-file", corpus.profiles_file, "extra profile file");
    cmd_corpus->add_option("--composition", corpus.composition, "l|ld|ls|sd|all");
    cmd_corpus->add_option("--length", corpus.length, "password length");
    cmd_corpus->add_option("--count", corpus.count, "passwords to generate");
    cmd_corpus->add_option("--seed", corpus.seed, "corpus seed");
    cmd_corpus->add_option("--generator", corpus.generator,
                           "uniform|constrained|filtered|biased");
    cmd_corpus->add_option("--out", corpus.out, "output file (default stdout)");
    cmd_corpus->add_flag("--avoid-difficult", corpus.avoid_difficult,
                         "drop hard-to-read characters");
    cmd_corpus->add_option("--threads", corpus.threads, "worker threads");

    AuditArgs audit;
    CLI::App* cmd_audit = app.add_subcommand("audit", "run the full audit grid");
    cmd_audit->add_option("--profiles", audit.profiles_csv, "comma-separated profiles");
    cmd_audit->add_option("--profiles-file", audit.profiles_file, "extra profile file");
    cmd_audit->add_option("--compositions", audit.compositions_csv,
                          "comma-separated compositions");
    cmd_audit->add_option("--lengths", audit.lengths_csv, "comma-separated lengths");
    cmd_audit->add_option("--count", audit.count, "passwords per cell");
    cmd_audit->add_option("--seed", audit.seed, "audit seed");
    cmd_audit->add_option("--generator", audit.generator,
                          "auto|uniform|constrained|filtered|biased");
    cmd_audit->add_option("--k-sigma", audit.k_sigma, "outlier threshold");
    cmd_audit->add_option("--threads", audit.threads, "worker threads");
    cmd_audit->add_option("--out-md", audit.out_md, "write Markdown report here");
    cmd_audit->add_option("--out-csv", audit.out_csv, "write CSV report here");
    cmd_audit->add_flag("--fail-on-nonrandom", audit.fail_on_nonrandom,
                        "exit 2 when unexplained non-randomness is detected");

    std::vector<std::string> estimate_passwords;
    bool estimate_stdin = false;
    CLI::App* cmd_estimate =
        app.add_subcommand("estimate", "estimate guess numbers for passwords");
    cmd_estimate->add_option("passwords", estimate_passwords, "passwords to analyze");
    cmd_estimate->add_flag("--stdin", estimate_stdin, "read passwords from stdin");

    std::string entropy_file;
    int entropy_length = 0;
    int entropy_charset_size = 0;
    CLI::App* cmd_entropy = app.add_subcommand(
        "entropy", "Shannon entropy of a corpus or ideal information entropy");
    cmd_entropy->add_option("--file", entropy_file, "corpus file ('-' for stdin)");
    cmd_entropy->add_option("--length", entropy_length, "password length");
    cmd_entropy->add_option("--charset-size", entropy_charset_size,
                            "charset size for information entropy");

    std::string chi2_file, chi2_profile = "reference", chi2_composition = "all",
                           chi2_profiles_file;
    std::string chi2_model = "flat";
    int chi2_length = 8, chi2_charset_size = 0, chi2_family = 1;
    std::uint64_t chi2_count = 0, chi2_seed = 0;
    bool chi2_biased = false;
    CLI::App* cmd_chi2 = app.add_subcommand("chi2", "chi-squared uniformity test");
    cmd_chi2->add_option("--file", chi2_file, "corpus file ('-' for stdin)");
    cmd_chi2->add_option("--profile", chi2_profile, "profile for the expectation model");
    cmd_chi2->add_option("--profiles-file", chi2_profiles_file, "extra profile file");
    cmd_chi2->add_option("--composition", chi2_composition, "l|ld|ls|sd|all");
    cmd_chi2->add_option("--length", chi2_length, "password length");
    cmd_chi2->add_option("--model", chi2_model, "expectation model: flat|adjusted")
        ->check(CLI::IsMember({"flat", "adjusted"}));
    cmd_chi2->add_option("--family", chi2_family, "Bonferroni family size");
    cmd_chi2->add_flag("--biased", chi2_biased,
                       "generate internally with the modulo-biased fixture");
    cmd_chi2->add_option("--charset-size", chi2_charset_size,
                         "first N reference characters for --biased");
    cmd_chi2->add_option("--count", chi2_count, "passwords to generate for --biased");
    cmd_chi2->add_option("--seed", chi2_seed, "seed for --biased");

    std::string outliers_file, outliers_profile = "reference",
                               outliers_composition = "all", outliers_profiles_file;
    int outliers_length = 0;
    double outliers_k = 3.0;
    CLI::App* cmd_outliers =
        app.add_subcommand("outliers", "character frequency outliers of a corpus");
    cmd_outliers->add_option("--file", outliers_file, "corpus file ('-' for stdin)")
        ->required();
    cmd_outliers->add_option("--length", outliers_length, "password length")
        ->required();
    cmd_outliers->add_option("--k-sigma", outliers_k, "outlier threshold");
    cmd_outliers->add_option("--profile", outliers_profile,
                             "profile whose charset seeds zero counts");
    cmd_outliers->add_option("--profiles-file", outliers_profiles_file,
                             "extra profile file");
    cmd_outliers->add_option("--composition", outliers_composition, "l|ld|ls|sd|all");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;  // usage errors are always exit code 1
    }

    try {
        if (cmd_gen->parsed()) return run_gen(gen);
        if (cmd_corpus->parsed()) return run_corpus(corpus);
        if (cmd_audit->parsed()) return run_audit_cmd(audit);
        if (cmd_estimate->parsed())
            return run_estimate(estimate_passwords, estimate_stdin);

        if (cmd_entropy->parsed()) {
            if (!entropy_file.empty()) {
                std::ifstream file;
                std::istream* in = &std::cin;
                if (entropy_file != "-") {
                    file.open(entropy_file);
                    if (!file) throw Error("cannot open '" + entropy_file + "'");
                    in = &file;
                }
                if (entropy_length < 1)
                    throw Error("--length is required with --file");
                FrequencyTable table = count_frequencies(*in, entropy_length);
                std::cout << "shannon_bits=" << shannon_entropy(table) << '\n';
            } else {
                if (entropy_charset_size < 2 || entropy_length < 1)
                    throw Error("need --charset-size and --length (or --file)");
                double bits = information_entropy(entropy_charset_size, entropy_length);
                std::cout << "information_bits=" << bits
                          << " log10_average_guesses="
                          << information_bits_to_log10_guesses(bits) << '\n';
            }
            return 0;
        }

        if (cmd_chi2->parsed()) {
            ProfileMap profiles = load_active_profiles(chi2_profiles_file);
            FrequencyTable table;
            GenerationPolicy policy;
            if (chi2_biased) {
                if (chi2_count < 1) throw Error("--biased needs --count");
                const Profile& ref = profiles.at("reference");
                std::string all = ref.charset.all();
                int n = chi2_charset_size > 0
                            ? chi2_charset_size
                            : static_cast<int>(all.size());
                if (n < 2 || n > static_cast<int>(all.size()))
                    throw Error("--charset-size out of range");
                std::string subset = all.substr(0, n);
                std::string lower, upper, digits, symbols;
                for (char ch : subset) {
                    switch (*ref.charset.class_of(ch)) {
                        case CharClass::Lower: lower += ch; break;
                        case CharClass::Upper: upper += ch; break;
                        case CharClass::Digit: digits += ch; break;
                        case CharClass::Symbol: symbols += ch; break;
                    }
                }
                policy.charset = CharacterSet(lower, upper, digits, symbols);
                policy.length = chi2_length;
                policy.validate();
                RandomSource rng = RandomSource::seeded(chi2_seed);
                table.password_length = chi2_length;
                for (char ch : policy.charset.all()) table.counts[ch] = 0;
                for (std::uint64_t i = 0; i < chi2_count; ++i)
                    table.add_password(generate_biased(policy, rng));
            } else {
                if (chi2_file.empty()) throw Error("need --file or --biased");
                std::ifstream file;
                std::istream* in = &std::cin;
                if (chi2_file != "-") {
                    file.open(chi2_file);
                    if (!file) throw Error("cannot open '" + chi2_file + "'");
                    in = &file;
                }
                CorpusSpec spec;
                spec.profile = chi2_profile;
                spec.composition = parse_composition(chi2_composition);
                spec.length = chi2_length;
                spec.count = 1;
                spec.generator_kind = chi2_model == "adjusted"
                                          ? GeneratorKind::Constrained
                                          : GeneratorKind::Uniform;
                policy = policy_for(profiles, spec);
                table = count_frequencies(*in, chi2_length, &policy.charset);
            }
            Chi2Result result =
                chi2_uniformity(table, expected_frequencies(policy), chi2_family);
            std::cout << "statistic=" << result.statistic << " df=" << result.df
                      << " p_raw=" << result.p_raw
                      << " p_corrected=" << result.p_corrected << " verdict="
                      << (result.significant ? "significant (non-random)"
                                             : "not significant")
                      << '\n';
            return 0;
        }

        if (cmd_outliers->parsed()) {
            ProfileMap profiles = load_active_profiles(outliers_profiles_file);
            std::ifstream file;
            std::istream* in = &std::cin;
            if (outliers_file != "-") {
                file.open(outliers_file);
                if (!file) throw Error("cannot open '" + outliers_file + "'");
                in = &file;
            }
            CharacterSet charset = build_charset(
                profiles, outliers_profile, slot_classes(parse_composition(outliers_composition)),
                false);
            FrequencyTable table = count_frequencies(*in, outliers_length, &charset);
            OutlierReport report = frequency_outliers(table, outliers_k);
            std::cout << "mean_pct=" << report.mean_pct
                      << " std_pct=" << report.std_pct << " k=" << report.k_sigma
                      << " outliers='" << report.outliers << "'\n";
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
