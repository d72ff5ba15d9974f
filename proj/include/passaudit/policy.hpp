#pragma once

#include <map>
#include <set>
#include <vector>

#include "passaudit/charset.hpp"

namespace passaudit {

// What to generate: a (composition-restricted) character set, a length,
// and per-class minimum counts. require_each_class is the common
// "at least one character from each enabled class" switch; min_counts
// expresses the generalized per-class minimums (e.g. minimum one digit
// and one symbol regardless of letters).
struct GenerationPolicy {
    CharacterSet charset;
    int length = 0;
    bool require_each_class = false;
    std::map<SlotClass, int> min_counts;

    // Selector classes with at least one member in the charset.
    std::vector<SlotClass> enabled_classes() const;

    // Minimum draws per class: max(min_counts[c], require_each_class ? 1 : 0)
    // for every enabled class. Classes absent from the charset must not
    // carry a minimum.
    std::map<SlotClass, int> effective_minimums() const;

    // Sum of effective minimums (the paper's |sets| when each minimum is 1).
    int total_minimums() const;

    void validate() const;  // throws Error
};

}  // namespace passaudit
