#include "passaudit/audit.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>
#include <vector>

namespace passaudit {

const char* to_string(CellVerdict v) {
    switch (v) {
        case CellVerdict::Uniform: return "uniform";
        case CellVerdict::Explained: return "explained-by-composition";
        case CellVerdict::NonRandom: return "non-random";
    }
    return "?";
}

bool AuditReport::any_non_random() const {
    for (const AuditCell& cell : cells)
        if (!cell.skipped() && cell.verdict == CellVerdict::NonRandom) return true;
    return false;
}

namespace {

GeneratorKind pick_generator(const Profile& profile,
                             const std::optional<GeneratorKind>& requested) {
    if (requested) return *requested;
    return profile.requires_diverse == Profile::Diverse::Always
               ? GeneratorKind::Constrained
               : GeneratorKind::Uniform;
}

// A cell is analyzable when the profile exists and supports the requested
// composition and length.
std::optional<std::string> skip_reason(const ProfileMap& profiles,
                                       const std::string& name, Composition comp,
                                       int length) {
    auto it = profiles.find(name);
    if (it == profiles.end()) return "unknown profile";
    const Profile& p = it->second;
    if (!p.supports(comp))
        return "profile does not support composition '" + to_string(comp) + "'";
    if (!p.supports_length(length))
        return "length outside supported range " + std::to_string(p.min_length) +
               ".." + std::to_string(p.max_length);
    return std::nullopt;
}

void analyze_cell(const ProfileMap& profiles, const AuditRequest& request,
                  const Estimator& estimator, int family_size,
                  std::uint64_t cell_seed, AuditCell& cell) {
    CorpusSpec spec;
    spec.profile = cell.profile;
    spec.composition = cell.composition;
    spec.length = cell.length;
    spec.count = request.count_per_cell;
    spec.seed = cell_seed;
    spec.generator_kind = cell.generator_kind;

    GenerationPolicy policy = policy_for(profiles, spec);

    std::stringstream corpus;
    generate_corpus(profiles, spec, corpus);

    FrequencyTable table;
    table.password_length = cell.length;
    for (char ch : policy.charset.all()) table.counts[ch] = 0;

    double weak_threshold = static_cast<double>(cell.length) - 2.0;
    std::uint64_t weak = 0;
    std::string line;
    while (std::getline(corpus, line)) {
        if (line.empty()) continue;
        table.add_password(line);
        GuessEstimate est = estimator.estimate(line);
        ++cell.strength_histogram[static_cast<int>(est.strength)];
        if (est.log10_guesses < weak_threshold) ++weak;
    }
    table.validate();

    cell.shannon_bits = shannon_entropy(table);
    cell.information_bits =
        information_entropy(static_cast<int>(policy.charset.size()), cell.length);
    cell.weak_fraction =
        static_cast<double>(weak) / static_cast<double>(table.total_passwords);

    GenerationPolicy flat = policy;
    flat.require_each_class = false;
    flat.min_counts.clear();
    cell.chi2_flat =
        chi2_uniformity(table, expected_frequencies(flat), family_size);
    cell.chi2_adjusted =
        chi2_uniformity(table, expected_frequencies(policy), family_size);
    cell.outliers = frequency_outliers(table, request.k_sigma);

    if (!cell.chi2_flat.significant) cell.verdict = CellVerdict::Uniform;
    else if (!cell.chi2_adjusted.significant) cell.verdict = CellVerdict::Explained;
    else cell.verdict = CellVerdict::NonRandom;
}

}  // namespace

AuditReport run_audit(const ProfileMap& profiles, const AuditRequest& request,
                      const Estimator& estimator) {
    if (request.count_per_cell < 1) throw Error("audit needs at least 1 password per cell");
    if (request.profiles.empty() || request.compositions.empty() ||
        request.lengths.empty())
        throw Error("audit needs at least one profile, composition and length");

    AuditReport report;
    for (const std::string& name : request.profiles) {
        for (Composition comp : request.compositions) {
            for (int length : request.lengths) {
                AuditCell cell;
                cell.profile = name;
                cell.composition = comp;
                cell.length = length;
                cell.count = request.count_per_cell;
                cell.skip_reason = skip_reason(profiles, name, comp, length);
                if (!cell.skipped()) {
                    cell.generator_kind = pick_generator(profiles.at(name),
                                                         request.generator_kind);
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }

    int family = 0;
    for (const AuditCell& cell : report.cells)
        if (!cell.skipped()) ++family;
    report.family_size = std::max(1, family);

    // Cell seeds derive from (seed, cell index) so reports are reproducible
    // and independent of the worker count.
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= report.cells.size()) return;
            AuditCell& cell = report.cells[i];
            if (cell.skipped()) continue;
            analyze_cell(profiles, request, estimator, report.family_size,
                         derive_stream_seed(request.seed, i), cell);
        }
    };

    int n_threads = std::max(1, request.threads);
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    return report;
}

namespace {

std::string fmt_short(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += "\"\"";
        else out += ch;
    }
    out += '"';
    return out;
}

std::string md_escape(const std::string& s) {
    std::string out;
    for (char ch : s) {
        if (ch == '|' || ch == '\\') out += '\\';
        out += ch;
    }
    return out;
}

}  // namespace

std::string render_markdown(const AuditReport& report) {
    std::ostringstream out;
    out << "# Password generation audit\n\n";
    out << "Family size for Bonferroni correction: " << report.family_size
        << "\n\n";
    out << "| profile | comp | len | count | generator | shannon bits | info bits "
           "| chi2 flat | p flat | chi2 adj | p adj | weak fraction | "
           "online/offline/strong | outliers | verdict |\n";
    out << "|---|---|---|---|---|---|---|---|---|---|---|---|---|---|---|\n";
    for (const AuditCell& c : report.cells) {
        out << "| " << c.profile << " | " << to_string(c.composition) << " | "
            << c.length << " | " << c.count << " | ";
        if (c.skipped()) {
            out << "skipped | | | | | | | | | " << md_escape(*c.skip_reason)
                << " |\n";
            continue;
        }
        out << to_string(c.generator_kind) << " | " << fmt_short(c.shannon_bits)
            << " | " << fmt_short(c.information_bits) << " | "
            << fmt_short(c.chi2_flat.statistic) << " | "
            << fmt_short(c.chi2_flat.p_corrected) << " | "
            << fmt_short(c.chi2_adjusted.statistic) << " | "
            << fmt_short(c.chi2_adjusted.p_corrected) << " | "
            << fmt_short(c.weak_fraction) << " | " << c.strength_histogram[0]
            << "/" << c.strength_histogram[1] << "/" << c.strength_histogram[2]
            << " | " << md_escape(c.outliers.outliers) << " | "
            << to_string(c.verdict) << " |\n";
    }
    return out.str();
}

std::string render_csv(const AuditReport& report) {
    std::ostringstream out;
    out << "profile,composition,length,count,generator,skip_reason,shannon_bits,"
           "information_bits,chi2_flat_statistic,chi2_flat_df,chi2_flat_p_raw,"
           "chi2_flat_p_corrected,chi2_flat_significant,chi2_adjusted_statistic,"
           "chi2_adjusted_df,chi2_adjusted_p_raw,chi2_adjusted_p_corrected,"
           "chi2_adjusted_significant,family_size,outlier_mean_pct,outlier_std_pct,"
           "outlier_k_sigma,outliers,weak_fraction,n_online_weak,n_offline_weak,"
           "n_strong,verdict\n";
    for (const AuditCell& c : report.cells) {
        out << c.profile << ',' << to_string(c.composition) << ',' << c.length
            << ',' << c.count << ',';
        if (c.skipped()) {
            out << ',' << csv_quote(*c.skip_reason)
                << ",,,,,,,,,,,,,,,,,,,,,,\n";
            continue;
        }
        out << to_string(c.generator_kind) << ",," << fmt_full(c.shannon_bits)
            << ',' << fmt_full(c.information_bits) << ','
            << fmt_full(c.chi2_flat.statistic) << ',' << c.chi2_flat.df << ','
            << fmt_full(c.chi2_flat.p_raw) << ','
            << fmt_full(c.chi2_flat.p_corrected) << ','
            << (c.chi2_flat.significant ? 1 : 0) << ','
            << fmt_full(c.chi2_adjusted.statistic) << ',' << c.chi2_adjusted.df
            << ',' << fmt_full(c.chi2_adjusted.p_raw) << ','
            << fmt_full(c.chi2_adjusted.p_corrected) << ','
            << (c.chi2_adjusted.significant ? 1 : 0) << ','
            << report.family_size << ',' << fmt_full(c.outliers.mean_pct) << ','
            << fmt_full(c.outliers.std_pct) << ',' << fmt_full(c.outliers.k_sigma)
            << ',' << csv_quote(c.outliers.outliers) << ','
            << fmt_full(c.weak_fraction) << ',' << c.strength_histogram[0] << ','
            << c.strength_histogram[1] << ',' << c.strength_histogram[2] << ','
            << to_string(c.verdict) << '\n';
    }
    return out.str();
}

}  // namespace passaudit
