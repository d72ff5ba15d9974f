#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace passaudit {

// Rank-ordered dictionaries for the match-based estimator. File format:
// one token per line, rank = line number (1-based), UTF-8, lowercase.
// Tokens shorter than 3 characters are ignored by the matcher but still
// consume their line's rank.
class Wordlists {
public:
    struct Hit {
        std::string_view list;
        int rank;
    };

    Wordlists() = default;

    // The vendored leaked-password / English / name lists.
    static const Wordlists& bundled();

    void add_list(std::string name, std::istream& source);
    void add_list(std::string name, const std::vector<std::string>& tokens);

    // Lowest-rank hit for an exact (already normalized) token, if any.
    const Hit* lookup(std::string_view token) const;

    bool empty() const { return entries_.empty(); }
    std::size_t max_token_length() const { return max_token_length_; }

private:
    void insert(std::string_view list_name, std::string_view token, int rank);

    std::unordered_map<std::string, Hit> entries_;
    std::size_t max_token_length_ = 0;
};

}  // namespace passaudit
