#include "passaudit/wordlists.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <istream>
#include <sstream>

#include "passaudit/error.hpp"

namespace passaudit {

namespace detail {
// Defined in the generated wordlist_data.cpp.
const char* bundled_passwords_text();
const char* bundled_english_text();
const char* bundled_names_text();
}  // namespace detail

namespace {

// Hit::list views point into this pool so they outlive rehashing and
// Wordlists copies.
std::string_view intern_list_name(const std::string& name) {
    static std::deque<std::string> pool;
    for (const std::string& existing : pool)
        if (existing == name) return existing;
    pool.push_back(name);
    return pool.back();
}

}  // namespace

void Wordlists::insert(std::string_view list_name, std::string_view token,
                       int rank) {
    std::string key(token);
    std::transform(key.begin(), key.end(), key.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    auto [it, inserted] = entries_.try_emplace(key, Hit{list_name, rank});
    if (!inserted && rank < it->second.rank) it->second = Hit{list_name, rank};
    max_token_length_ = std::max(max_token_length_, key.size());
}

void Wordlists::add_list(std::string name, std::istream& source) {
    std::string_view interned = intern_list_name(name);
    std::string line;
    int rank = 0;
    while (std::getline(source, line)) {
        ++rank;  // rank is the line number, even for skipped lines
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.size() < 3) continue;  // too short for the matcher
        insert(interned, line, rank);
    }
}

void Wordlists::add_list(std::string name, const std::vector<std::string>& tokens) {
    std::string_view interned = intern_list_name(name);
    int rank = 0;
    for (const std::string& token : tokens) {
        ++rank;
        if (token.size() < 3) continue;
        insert(interned, token, rank);
    }
}

const Wordlists::Hit* Wordlists::lookup(std::string_view token) const {
    auto it = entries_.find(std::string(token));
    return it == entries_.end() ? nullptr : &it->second;
}

const Wordlists& Wordlists::bundled() {
    static const Wordlists lists = [] {
        Wordlists w;
        {
            std::istringstream in(detail::bundled_passwords_text());
            w.add_list("passwords", in);
        }
        {
            std::istringstream in(detail::bundled_english_text());
            w.add_list("english", in);
        }
        {
            std::istringstream in(detail::bundled_names_text());
            w.add_list("names", in);
        }
        if (w.empty()) throw Error("bundled wordlists are empty");
        return w;
    }();
    return lists;
}

}  // namespace passaudit
