#ifndef ETK_CONSTANTS_HPP
#define ETK_CONSTANTS_HPP

// Unit system: energy kJ/mol, time ps, temperature K, rates ps^-1.
namespace etk {

inline constexpr double hbar = 0.0635077993;    // kJ ps / mol
inline constexpr double kb = 0.0083144626;      // kJ / (mol K)

}  // namespace etk

#endif
