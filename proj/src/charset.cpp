#include "passaudit/charset.hpp"

#include <algorithm>
#include <array>
#include <istream>
#include <sstream>

namespace passaudit {

namespace {

constexpr char kLower[] = "abcdefghijklmnopqrstuvwxyz";
constexpr char kUpper[] = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";
constexpr char kDigits[] = "0123456789";
// The 32 printable ASCII symbols other than space.
constexpr char kSymbolsAscii[] = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";
// The reference/devrandom generators use all 95 printable characters,
// so space rides along as a 33rd symbol.
constexpr char kSymbolsAsciiWithSpace[] = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~ ";
// Bitwarden/LastPass/RoboForm share the canonical 8-symbol set.
constexpr char kSymbols8[] = "!#$%&*@^";
// 1Password's 19 symbols, reconstructed from its frequency tables.
constexpr char kSymbols1Password[] = "!#%)*+,-.:=>?@]^_}~";

bool is_printable_ascii(char ch) {
    return static_cast<unsigned char>(ch) >= 32 &&
           static_cast<unsigned char>(ch) <= 126;
}

std::string describe_char(char ch) {
    if (ch == ' ') return "' '";
    return std::string(1, '\'') + ch + '\'';
}

}  // namespace

const char* to_string(CharClass c) {
    switch (c) {
        case CharClass::Lower: return "lower";
        case CharClass::Upper: return "upper";
        case CharClass::Digit: return "digit";
        case CharClass::Symbol: return "symbol";
    }
    return "?";
}

char to_char(SlotClass c) {
    switch (c) {
        case SlotClass::Letter: return 'l';
        case SlotClass::Digit: return 'd';
        case SlotClass::Symbol: return 's';
    }
    return '?';
}

std::string to_string(Composition c) {
    switch (c) {
        case Composition::L: return "l";
        case Composition::D: return "d";
        case Composition::S: return "s";
        case Composition::LD: return "ld";
        case Composition::LS: return "ls";
        case Composition::SD: return "sd";
        case Composition::All: return "all";
    }
    return "?";
}

Composition parse_composition(std::string_view text) {
    std::string canon(text);
    if (canon == "ds") canon = "sd";
    else if (canon == "dl") canon = "ld";
    else if (canon == "sl") canon = "ls";
    else if (canon == "lds" || canon == "lsd") canon = "all";
    for (Composition c : {Composition::L, Composition::D, Composition::S,
                          Composition::LD, Composition::LS, Composition::SD,
                          Composition::All})
        if (to_string(c) == canon) return c;
    throw Error("unknown composition '" + std::string(text) +
                "' (expected a subset of l,d,s or all)");
}

std::set<SlotClass> slot_classes(Composition c) {
    switch (c) {
        case Composition::L: return {SlotClass::Letter};
        case Composition::D: return {SlotClass::Digit};
        case Composition::S: return {SlotClass::Symbol};
        case Composition::LD: return {SlotClass::Letter, SlotClass::Digit};
        case Composition::LS: return {SlotClass::Letter, SlotClass::Symbol};
        case Composition::SD: return {SlotClass::Symbol, SlotClass::Digit};
        case Composition::All:
            return {SlotClass::Letter, SlotClass::Digit, SlotClass::Symbol};
    }
    return {};
}

CharacterSet::CharacterSet(std::string lower, std::string upper,
                           std::string digits, std::string symbols) {
    members_[0] = std::move(lower);
    members_[1] = std::move(upper);
    members_[2] = std::move(digits);
    members_[3] = std::move(symbols);

    std::array<bool, 128> seen{};
    for (const std::string& cls : members_) {
        for (char ch : cls) {
            if (!is_printable_ascii(ch))
                throw Error("character outside printable ASCII in character set");
            if (seen[static_cast<unsigned char>(ch)])
                throw Error("character " + describe_char(ch) +
                            " appears in two classes");
            seen[static_cast<unsigned char>(ch)] = true;
        }
        all_ += cls;
    }
}

const std::string& CharacterSet::members(CharClass c) const {
    return members_[static_cast<std::size_t>(c)];
}

std::string CharacterSet::group(SlotClass c) const {
    switch (c) {
        case SlotClass::Letter:
            return members_[0] + members_[1];
        case SlotClass::Digit:
            return members_[2];
        case SlotClass::Symbol:
            return members_[3];
    }
    return {};
}

std::size_t CharacterSet::group_size(SlotClass c) const {
    switch (c) {
        case SlotClass::Letter: return members_[0].size() + members_[1].size();
        case SlotClass::Digit: return members_[2].size();
        case SlotClass::Symbol: return members_[3].size();
    }
    return 0;
}

bool CharacterSet::contains(char ch) const {
    return all_.find(ch) != std::string::npos;
}

std::optional<CharClass> CharacterSet::class_of(char ch) const {
    for (CharClass c : kAllCharClasses)
        if (members(c).find(ch) != std::string::npos) return c;
    return std::nullopt;
}

std::optional<SlotClass> CharacterSet::slot_class_of(char ch) const {
    auto cls = class_of(ch);
    if (!cls) return std::nullopt;
    switch (*cls) {
        case CharClass::Lower:
        case CharClass::Upper: return SlotClass::Letter;
        case CharClass::Digit: return SlotClass::Digit;
        case CharClass::Symbol: return SlotClass::Symbol;
    }
    return std::nullopt;
}

CharacterSet CharacterSet::without(std::string_view removals) const {
    std::array<std::string, 4> kept;
    for (std::size_t i = 0; i < 4; ++i) {
        for (char ch : members_[i])
            if (removals.find(ch) == std::string_view::npos) kept[i] += ch;
    }
    return CharacterSet(kept[0], kept[1], kept[2], kept[3]);
}

CharacterSet CharacterSet::restricted_to(const std::set<SlotClass>& classes) const {
    std::string lower, upper, digits, symbols;
    if (classes.count(SlotClass::Letter)) {
        lower = members_[0];
        upper = members_[1];
    }
    if (classes.count(SlotClass::Digit)) digits = members_[2];
    if (classes.count(SlotClass::Symbol)) symbols = members_[3];
    return CharacterSet(std::move(lower), std::move(upper), std::move(digits),
                        std::move(symbols));
}

std::string_view default_difficult_characters() {
    // Look-alike characters commonly excluded by the "avoid difficult"
    // option; vendors disagree on the exact list, so it is editable data.
    return "0Oo1lI|`'\"";
}

void Profile::validate() const {
    if (name.empty()) throw Error("profile has no name");
    if (min_length < 1 || max_length < min_length)
        throw Error("profile '" + name + "': bad length range");
    if (default_length < min_length || default_length > max_length)
        throw Error("profile '" + name + "': default length " +
                    std::to_string(default_length) + " outside " +
                    std::to_string(min_length) + ".." + std::to_string(max_length));
    if (charset.empty()) throw Error("profile '" + name + "': empty character set");
    for (SlotClass c : slot_classes(default_composition)) {
        if (charset.group_size(c) == 0)
            throw Error("profile '" + name + "': default composition needs class '" +
                        std::string(1, to_char(c)) + "' which has no characters");
    }
    if (supported_compositions.empty())
        throw Error("profile '" + name + "': no supported compositions");
}

namespace {

Profile make_profile(std::string name, CharacterSet charset, int min_length,
                     int max_length, int default_length,
                     Composition default_composition, Profile::Diverse diverse,
                     bool avoids_difficult) {
    Profile p;
    p.name = std::move(name);
    p.charset = std::move(charset);
    p.min_length = min_length;
    p.max_length = max_length;
    p.default_length = default_length;
    p.default_composition = default_composition;
    p.requires_diverse = diverse;
    p.avoids_difficult = avoids_difficult;
    p.validate();
    return p;
}

ProfileMap make_builtin_profiles() {
    using D = Profile::Diverse;
    ProfileMap m;
    auto add = [&m](Profile p) { m.emplace(p.name, std::move(p)); };

    CharacterSet full(kLower, kUpper, kDigits, kSymbolsAscii);
    CharacterSet full95(kLower, kUpper, kDigits, kSymbolsAsciiWithSpace);
    CharacterSet sym8(kLower, kUpper, kDigits, kSymbols8);

    add(make_profile("kpx", full, 3, 64, 16, Composition::LD, D::OptionalOn, true));
    add(make_profile("kpxc", full, 1, 128, 16, Composition::LD, D::OptionalOn, true));

    Profile oneps = make_profile(
        "oneps", CharacterSet(kLower, kUpper, kDigits, kSymbols1Password), 8, 50,
        20, Composition::All, D::Always, true);
    // 1Password cannot generate symbols-and-digits-only passwords.
    oneps.supported_compositions = {Composition::L, Composition::LD,
                                    Composition::LS, Composition::All};
    add(std::move(oneps));

    add(make_profile("bw", sym8, 5, 128, 14, Composition::LD, D::Always, true));
    add(make_profile("dlan", full, 4, 28, 12, Composition::All, D::Always, true));
    add(make_profile("lpass", sym8, 4, 100, 12, Composition::LD, D::OptionalOn, true));
    add(make_profile("robo", sym8, 1, 99, 14, Composition::All, D::Always, true));
    add(make_profile("chrm", CharacterSet(kLower, kUpper, kDigits, "!-.:_"), 2,
                     128, 15, Composition::All, D::Always, false));
    add(make_profile("sfri", CharacterSet(kLower, kUpper, kDigits, "-"), 15, 15,
                     15, Composition::All, D::Always, false));
    add(make_profile("spg", full, 6, 2048, 16, Composition::All, D::Always, true));
    add(make_profile("dvrn", full95, 2, 1024, 16, Composition::All, D::Never, false));
    add(make_profile("reference", full95, 1, 1024, 16, Composition::All,
                     D::OptionalOn, false));
    return m;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

// Class lists may carry a literal space via "\s" and a backslash via "\\".
std::string unescape_class_list(const std::string& value, std::size_t line_no) {
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (value[i] != '\\') {
            out += value[i];
            continue;
        }
        if (i + 1 >= value.size())
            throw ParseError("profile file line " + std::to_string(line_no) +
                                 ": dangling escape",
                             line_no);
        char next = value[++i];
        if (next == 's') out += ' ';
        else if (next == '\\') out += '\\';
        else
            throw ParseError("profile file line " + std::to_string(line_no) +
                                 ": unknown escape '\\" + std::string(1, next) + "'",
                             line_no);
    }
    return out;
}

struct ProfileDraft {
    std::string name;
    std::size_t start_line = 0;
    bool is_override = false;
    std::string lower, upper, digits, symbols;
    bool has_lower = false, has_upper = false, has_digits = false,
         has_symbols = false;
    std::optional<std::pair<int, int>> lengths;
    std::optional<int> default_length;
    std::optional<Composition> default_composition;
    std::optional<std::string> difficult;
    std::optional<std::set<Composition>> compositions;
    std::optional<Profile::Diverse> diverse;
    std::optional<bool> avoid_difficult;
};

Profile finalize_draft(const ProfileDraft& d, const ProfileMap& existing) {
    Profile p;
    auto it = existing.find(d.name);
    if (it != existing.end()) {
        p = it->second;
    } else {
        p.name = d.name;
        p.min_length = 1;
        p.max_length = 128;
        p.default_length = 16;
        p.default_composition = Composition::All;
    }

    std::string lower = d.has_lower ? d.lower : p.charset.members(CharClass::Lower);
    std::string upper = d.has_upper ? d.upper : p.charset.members(CharClass::Upper);
    std::string digits = d.has_digits ? d.digits : p.charset.members(CharClass::Digit);
    std::string symbols =
        d.has_symbols ? d.symbols : p.charset.members(CharClass::Symbol);
    try {
        p.charset = CharacterSet(lower, upper, digits, symbols);
    } catch (const Error& e) {
        throw ParseError("profile file line " + std::to_string(d.start_line) +
                             ": profile '" + d.name + "': " + e.what(),
                         d.start_line);
    }

    if (d.lengths) {
        p.min_length = d.lengths->first;
        p.max_length = d.lengths->second;
    }
    if (d.default_length) p.default_length = *d.default_length;
    else if (!d.lengths && it == existing.end())
        p.default_length = std::min(16, p.max_length);
    if (d.lengths && !d.default_length)
        p.default_length = std::clamp(p.default_length, p.min_length, p.max_length);
    if (d.default_composition) p.default_composition = *d.default_composition;
    if (d.difficult) p.difficult = *d.difficult;
    if (d.compositions) p.supported_compositions = *d.compositions;
    if (d.diverse) p.requires_diverse = *d.diverse;
    if (d.avoid_difficult) p.avoids_difficult = *d.avoid_difficult;
    else if (d.difficult && !d.difficult->empty()) p.avoids_difficult = true;

    try {
        p.validate();
    } catch (const Error& e) {
        throw ParseError("profile file line " + std::to_string(d.start_line) +
                             ": " + e.what(),
                         d.start_line);
    }
    return p;
}

}  // namespace

const ProfileMap& builtin_profiles() {
    static const ProfileMap profiles = make_builtin_profiles();
    return profiles;
}

ProfileMap load_profiles(std::istream& source) {
    ProfileMap result = builtin_profiles();
    std::set<std::string> defined_in_file;

    std::optional<ProfileDraft> draft;
    auto flush = [&]() {
        if (!draft) return;
        result[draft->name] = finalize_draft(*draft, result);
        draft.reset();
    };

    std::string raw;
    std::size_t line_no = 0;
    while (std::getline(source, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        auto fail = [&](const std::string& msg) {
            throw ParseError(
                "profile file line " + std::to_string(line_no) + ": " + msg,
                line_no);
        };

        if (line.rfind("profile ", 0) == 0 || line == "profile") {
            flush();
            std::string name = trim(line.substr(7));
            if (name.empty()) fail("missing profile name");
            if (!defined_in_file.insert(name).second)
                fail("duplicate profile '" + name + "' in one file");
            draft.emplace();
            draft->name = name;
            draft->start_line = line_no;
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected 'key=value' or 'profile <name>'");
        if (!draft) fail("'" + line.substr(0, eq) + "=' before any 'profile' line");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));

        if (key == "lower" || key == "upper" || key == "digits" || key == "symbols" ||
            key == "difficult") {
            std::string chars = unescape_class_list(value, line_no);
            if (key == "lower") { draft->lower = chars; draft->has_lower = true; }
            else if (key == "upper") { draft->upper = chars; draft->has_upper = true; }
            else if (key == "digits") { draft->digits = chars; draft->has_digits = true; }
            else if (key == "symbols") { draft->symbols = chars; draft->has_symbols = true; }
            else draft->difficult = chars;
        } else if (key == "lengths") {
            std::size_t dots = value.find("..");
            if (dots == std::string::npos) fail("lengths must be '<min>..<max>'");
            try {
                int lo = std::stoi(value.substr(0, dots));
                int hi = std::stoi(value.substr(dots + 2));
                draft->lengths = {lo, hi};
            } catch (const std::exception&) {
                fail("bad lengths '" + value + "'");
            }
        } else if (key == "default_length") {
            try {
                draft->default_length = std::stoi(value);
            } catch (const std::exception&) {
                fail("bad default_length '" + value + "'");
            }
        } else if (key == "default_composition") {
            try {
                draft->default_composition = parse_composition(value);
            } catch (const Error& e) {
                fail(e.what());
            }
        } else if (key == "compositions") {
            std::set<Composition> comps;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = trim(item);
                if (item.empty()) continue;
                try {
                    comps.insert(parse_composition(item));
                } catch (const Error& e) {
                    fail(e.what());
                }
            }
            if (comps.empty()) fail("compositions list is empty");
            draft->compositions = comps;
        } else if (key == "diverse") {
            if (value == "always") draft->diverse = Profile::Diverse::Always;
            else if (value == "optional") draft->diverse = Profile::Diverse::OptionalOn;
            else if (value == "never") draft->diverse = Profile::Diverse::Never;
            else fail("diverse must be always, optional or never");
        } else if (key == "avoid_difficult") {
            if (value == "true" || value == "yes") draft->avoid_difficult = true;
            else if (value == "false" || value == "no") draft->avoid_difficult = false;
            else fail("avoid_difficult must be true or false");
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    flush();
    return result;
}

CharacterSet build_charset(const Profile& profile,
                           const std::set<SlotClass>& composition,
                           bool avoid_difficult) {
    if (composition.empty())
        throw Error("empty composition for profile '" + profile.name + "'");
    for (SlotClass c : composition) {
        if (profile.charset.group_size(c) == 0)
            throw Error("profile '" + profile.name + "' has no '" +
                        std::string(1, to_char(c)) + "' characters");
    }
    CharacterSet result = profile.charset.restricted_to(composition);
    if (avoid_difficult && profile.avoids_difficult)
        result = result.without(profile.difficult_characters());
    if (result.empty())
        throw Error("profile '" + profile.name +
                    "': requested composition leaves no characters");
    for (SlotClass c : composition) {
        if (result.group_size(c) == 0)
            throw Error("profile '" + profile.name + "': class '" +
                        std::string(1, to_char(c)) +
                        "' left empty after removing difficult characters");
    }
    return result;
}

CharacterSet build_charset(const ProfileMap& profiles,
                           const std::string& profile_name,
                           const std::set<SlotClass>& composition,
                           bool avoid_difficult) {
    auto it = profiles.find(profile_name);
    if (it == profiles.end())
        throw Error("unknown profile '" + profile_name + "'");
    return build_charset(it->second, composition, avoid_difficult);
}

PasswordSpec parse_spec(std::string_view text) {
    if (text.empty()) throw ParseError("empty password spec", 0);
    PasswordSpec spec;
    spec.slots.reserve(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        switch (text[i]) {
            case 'l': spec.slots.push_back(SlotClass::Letter); break;
            case 'd': spec.slots.push_back(SlotClass::Digit); break;
            case 's': spec.slots.push_back(SlotClass::Symbol); break;
            default:
                throw ParseError("invalid spec selector '" +
                                     std::string(1, text[i]) + "' at offset " +
                                     std::to_string(i) + " (expected l, d or s)",
                                 i);
        }
    }
    return spec;
}

}  // namespace passaudit
