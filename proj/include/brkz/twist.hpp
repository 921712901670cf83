/**
 * Twist signatures (±;∓): the four sign characters of the wreath groups
 * S_2 wr S_t decorating chord diagrams.  First slot signs chord-direction
 * flips, second slot signs chord reorderings; (+;+) is untwisted.
 */

#ifndef BRKZ_TWIST_HPP
#define BRKZ_TWIST_HPP

#include <string>

namespace brkz {

struct TwistSignature {
    bool direction_minus = false;  // (−;·): flips of a chord cost a sign
    bool order_minus     = false;  // (·;−): reordering chords costs the permutation sign

    bool operator==(const TwistSignature&) const = default;
    auto operator<=>(const TwistSignature&) const = default;

    std::string to_string() const
    {
        return std::string("(") + (direction_minus ? "-" : "+") + ";" + (order_minus ? "-" : "+") + ")";
    }
};

inline constexpr TwistSignature twist_pp{false, false};
inline constexpr TwistSignature twist_mp{true, false};   // (−;+)
inline constexpr TwistSignature twist_pm{false, true};   // (+;−)
inline constexpr TwistSignature twist_mm{true, true};    // (−;−)

} // namespace brkz

#endif
