#include "passaudit/policy.hpp"

#include <numeric>

namespace passaudit {

std::vector<SlotClass> GenerationPolicy::enabled_classes() const {
    std::vector<SlotClass> classes;
    for (SlotClass c : kAllSlotClasses)
        if (charset.group_size(c) > 0) classes.push_back(c);
    return classes;
}

std::map<SlotClass, int> GenerationPolicy::effective_minimums() const {
    std::map<SlotClass, int> mins;
    for (SlotClass c : enabled_classes()) {
        int m = require_each_class ? 1 : 0;
        auto it = min_counts.find(c);
        if (it != min_counts.end() && it->second > m) m = it->second;
        if (m > 0) mins[c] = m;
    }
    return mins;
}

int GenerationPolicy::total_minimums() const {
    auto mins = effective_minimums();
    return std::accumulate(mins.begin(), mins.end(), 0,
                           [](int acc, const auto& kv) { return acc + kv.second; });
}

void GenerationPolicy::validate() const {
    if (charset.empty()) throw Error("generation policy has an empty character set");
    if (length < 1) throw Error("password length must be at least 1");
    for (const auto& [cls, count] : min_counts) {
        if (count < 0)
            throw Error("negative minimum count for class '" +
                        std::string(1, to_char(cls)) + "'");
        if (count > 0 && charset.group_size(cls) == 0)
            throw Error("minimum count set for class '" +
                        std::string(1, to_char(cls)) +
                        "' which has no characters");
    }
    if (total_minimums() > length)
        throw Error("password length " + std::to_string(length) +
                    " cannot satisfy " + std::to_string(total_minimums()) +
                    " required class minimums");
}

}  // namespace passaudit
