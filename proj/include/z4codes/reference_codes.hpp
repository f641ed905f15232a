#ifndef Z4CODES_REFERENCE_CODES_HPP
#define Z4CODES_REFERENCE_CODES_HPP

#include <string_view>

#include "construct.hpp"
#include "engine.hpp"
#include "poly.hpp"

namespace z4::reference {

// Free cyclic [43, 4^15, 16] code and the 1-generator QC [86, 4^15 2^0, 55]
// code built from it: g f h = x^43 - 1 with h = 1, p = f h + 2 f = 3 f,
// QC generator (p, p f1).

inline constexpr std::string_view qc86_g = "x^15+3x^14+2x^13+3x^12+2x^9+2x^8+2x^7+2x^6+x^3+2x^2+x+3";

inline constexpr std::string_view qc86_f =
    "x^28+x^27+3x^26+2x^25+x^24+2x^22+3x^21+x^20+3x^19+2x^18+x^17+x^16+2x^15+3x^14+2x^13+x^12+x^11"
    "+2x^10+3x^9+x^8+3x^7+2x^6+x^4+2x^3+3x^2+x+1";

inline constexpr std::string_view qc86_h = "1";

inline constexpr std::string_view qc86_f1 = "2x^13+x^12+x^10+2x^9+3x^8+x^7+3x^6+3x^5+3x^4+2x^2+x";

inline constexpr std::size_t qc86_m = 43;
inline constexpr unsigned qc86_cyclic_distance = 16;
inline constexpr unsigned qc86_distance = 55;
inline constexpr unsigned qc86_binary_reference = 54;  // best binary [172, 30]

/// Published Lee weight enumerator of the QC code, as printed (weight^count).
inline constexpr std::string_view qc86_enumerator =
    "0^1 55^774 56^1591 57^3698 58^5289 59^13244 60^24639 61^43602 62^74691 "
    "63^132870 64^233877 65^374100 66^614169 67^970854 68^1502291 "
    "69^2252598 70^3320202 71^4791318 72^6689811 73^9186262 74^12274866 "
    "75^15998236 76^20463442 77^25598416 78^31106974 79^36948696 80^43080625 "
    "81^48872424 82^54121520 83^58775152 84^62257851 85^64430426 86^65299285 "
    "87^64550138 88^62322437 89^58728454 90^54154888 91^48850752 92^42923718 "
    "93^37050520 94^31176720 95^25516630 96^20478707 97^16029368 98^12290346 "
    "99^9187466 100^6707312 101^4753392 102^3279137 103^2255178 104^498636 "
    "105^982292 106^634379 107^382872 108^227341 109^134590 110^76067 "
    "111^41452 112^21930 113^10578 114^6665 115^3440 116^1118 117^1032 118^172 "
    "120^129 121^86 122^86 129^2";

inline CyclicCodeSpec qc86_cyclic_spec() {
  return make_cyclic_spec(qc86_m, Z4Poly::parse(qc86_f), Z4Poly::parse(qc86_g), Z4Poly::parse(qc86_h));
}

inline QCSpec qc86_spec() {
  return QCSpec{qc86_m, qc86_cyclic_spec().p, {Z4Poly::parse(qc86_f1)}};
}

} // namespace z4::reference

#endif // Z4CODES_REFERENCE_CODES_HPP
