#pragma once

// Field-unit constants. Every conversion factor used by the flow equations
// lives here so the unit chain can be audited in one place.

namespace isc::units {

inline constexpr double kRankineOffset = 459.67;

// psi·ft³/(lbmol·°R)
inline constexpr double kGasConstantPsi = 10.7316;
// Btu/(lbmol·°R)
inline constexpr double kGasConstantBtu = 1.9859;

inline constexpr double kMillidarcyToFt2 = 1.0623e-14;
inline constexpr double kPsiToPascal = 6894.757293168;
inline constexpr double kCentipoiseToPascalSecond = 1.0e-3;
inline constexpr double kSecondsPerDay = 86400.0;

// md·ft · (1/cp) · psi  ->  ft³/day.  Numerically about 6.3283e-3.
inline constexpr double kDarcy =
    kMillidarcyToFt2 * kPsiToPascal / kCentipoiseToPascalSecond * kSecondsPerDay;

// lbm/ft³ of weight density -> psi/ft
inline constexpr double kGravityPsiPerFt = 1.0 / 144.0;

// psi·ft³ -> Btu (144 in²/ft², 778.169 ft·lbf/Btu)
inline constexpr double kPsiFt3ToBtu = 144.0 / 778.169262;

// standard-condition gas molar volume, ft³/lbmol
inline constexpr double kStdMolarVolume = 379.3;

inline constexpr double kHoursPerDay = 24.0;

template <class S>
S rankine(const S& t_f)
{
    return t_f + kRankineOffset;
}

}  // namespace isc::units
