#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "passaudit/error.hpp"

namespace passaudit {

// The four character classes every manager profile partitions its
// characters into. Generation compositions group Lower and Upper into a
// single "letter" class; see SlotClass.
enum class CharClass { Lower, Upper, Digit, Symbol };

constexpr std::array<CharClass, 4> kAllCharClasses = {
    CharClass::Lower, CharClass::Upper, CharClass::Digit, CharClass::Symbol};

const char* to_string(CharClass c);

// Selector classes of password spec strings and compositions: l = any
// letter (lower or upper), d = digit, s = symbol.
enum class SlotClass { Letter, Digit, Symbol };

constexpr std::array<SlotClass, 3> kAllSlotClasses = {
    SlotClass::Letter, SlotClass::Digit, SlotClass::Symbol};

char to_char(SlotClass c);

// Class-subset compositions. The audit grid uses the five studied ones
// (l, ld, ls, sd, all); d and s exist for things like pin-pad profiles.
enum class Composition { L, D, S, LD, LS, SD, All };

// The grid compositions, in the reporting order used throughout.
constexpr std::array<Composition, 5> kGridCompositions = {
    Composition::All, Composition::L, Composition::LD, Composition::LS,
    Composition::SD};

std::string to_string(Composition c);
Composition parse_composition(std::string_view text);
std::set<SlotClass> slot_classes(Composition c);

// An ordered, disjoint partition of printable-ASCII characters into the
// four classes. Immutable after construction.
class CharacterSet {
public:
    CharacterSet() = default;
    CharacterSet(std::string lower, std::string upper, std::string digits,
                 std::string symbols);

    const std::string& members(CharClass c) const;

    // Union of all classes, in class order then member order.
    const std::string& all() const { return all_; }
    std::size_t size() const { return all_.size(); }
    bool empty() const { return all_.empty(); }

    // Members of a selector class; Letter concatenates lower then upper.
    std::string group(SlotClass c) const;
    std::size_t group_size(SlotClass c) const;

    bool contains(char ch) const;
    std::optional<CharClass> class_of(char ch) const;
    std::optional<SlotClass> slot_class_of(char ch) const;

    // Copy with the given characters removed from every class.
    CharacterSet without(std::string_view removals) const;

    // Copy restricted to the given selector classes.
    CharacterSet restricted_to(const std::set<SlotClass>& classes) const;

private:
    std::array<std::string, 4> members_{};
    std::string all_;
};

// Characters removed when "avoid difficult characters" is on and the
// profile does not override the list. The exact removals are vendor data,
// not observable from the paper; this default is editable per profile.
std::string_view default_difficult_characters();

struct Profile {
    enum class Diverse { Always, OptionalOn, Never };

    std::string name;
    CharacterSet charset;
    int min_length = 1;
    int max_length = 1;
    int default_length = 1;
    Composition default_composition = Composition::All;
    Diverse requires_diverse = Diverse::OptionalOn;
    bool avoids_difficult = false;
    // Removal list applied when avoid-difficult is requested; empty means
    // use default_difficult_characters().
    std::string difficult;
    // Compositions the vendor UI can actually produce.
    std::set<Composition> supported_compositions = {
        Composition::L, Composition::D, Composition::S, Composition::LD,
        Composition::LS, Composition::SD, Composition::All};

    bool supports_length(int length) const {
        return length >= min_length && length <= max_length;
    }
    bool supports(Composition c) const {
        return supported_compositions.count(c) != 0;
    }
    std::string_view difficult_characters() const {
        return difficult.empty() ? default_difficult_characters()
                                 : std::string_view(difficult);
    }

    void validate() const;  // throws Error on bad field combinations
};

using ProfileMap = std::map<std::string, Profile>;

// The Table 2 manager profiles plus the 95-character reference set.
const ProfileMap& builtin_profiles();

// Built-ins extended/overridden by the block-oriented profile file format.
// An empty stream yields exactly the built-ins.
ProfileMap load_profiles(std::istream& source);

// Union of the requested selector classes for one profile, with difficult
// characters removed when requested and the profile supports it.
CharacterSet build_charset(const Profile& profile,
                           const std::set<SlotClass>& composition,
                           bool avoid_difficult);
CharacterSet build_charset(const ProfileMap& profiles,
                           const std::string& profile_name,
                           const std::set<SlotClass>& composition,
                           bool avoid_difficult);

// A password specification: one selector per output character, e.g.
// "dddddd" for a six digit pin.
struct PasswordSpec {
    std::vector<SlotClass> slots;
};

PasswordSpec parse_spec(std::string_view text);

}  // namespace passaudit
