#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "passaudit/charset.hpp"
#include "passaudit/corpus.hpp"
#include "passaudit/estimator.hpp"
#include "passaudit/stats.hpp"

namespace passaudit {

// How a cell's chi^2 pair reads: Uniform (flat model fits), Explained
// (flat rejects but the composition-adjusted model fits), NonRandom
// (adjusted model rejects too).
enum class CellVerdict { Uniform, Explained, NonRandom };

const char* to_string(CellVerdict v);

struct AuditCell {
    std::string profile;
    Composition composition = Composition::All;
    int length = 0;
    std::uint64_t count = 0;
    std::optional<std::string> skip_reason;

    GeneratorKind generator_kind = GeneratorKind::Uniform;
    double shannon_bits = 0.0;
    double information_bits = 0.0;
    Chi2Result chi2_flat;
    Chi2Result chi2_adjusted;
    OutlierReport outliers;
    double weak_fraction = 0.0;
    std::uint64_t strength_histogram[3] = {0, 0, 0};  // indexed by Strength
    CellVerdict verdict = CellVerdict::Uniform;

    bool skipped() const { return skip_reason.has_value(); }
};

struct AuditRequest {
    std::vector<std::string> profiles;
    std::vector<Composition> compositions;
    std::vector<int> lengths;
    std::uint64_t count_per_cell = 0;
    std::uint64_t seed = 0;
    // Auto picks Constrained for requires_diverse == Always profiles and
    // Uniform otherwise.
    std::optional<GeneratorKind> generator_kind;
    double k_sigma = 3.0;
    int threads = 1;
};

struct AuditReport {
    std::vector<AuditCell> cells;
    int family_size = 1;  // non-skipped cell count, applied to every chi^2

    bool any_non_random() const;
};

AuditReport run_audit(const ProfileMap& profiles, const AuditRequest& request,
                      const Estimator& estimator = default_estimator());

// Markdown rendering uses 4 significant digits, CSV full precision.
std::string render_markdown(const AuditReport& report);
std::string render_csv(const AuditReport& report);

}  // namespace passaudit
