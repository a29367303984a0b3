#pragma once

// Internal unit system: energies in eV, lengths in angstrom. Front ends
// accept nm and meV and convert at the boundary.

namespace kleingate::units {

inline constexpr double kAngstromPerNm = 10.0;
inline constexpr double kEvPerMev = 1e-3;

/// e^2 / (4 pi eps0) in eV * angstrom, no dielectric screening.
inline constexpr double kCoulombEvAngstrom = 14.3996;

/// Radial extent of a graphene pi orbital (0.0814 nm).
inline constexpr double kPiOrbitalExtent = 0.814;

/// Inelastic length scale of hot ballistic electrons in graphene (100 nm).
inline constexpr double kInelasticLength = 1000.0;

constexpr double nm(double v) { return v * kAngstromPerNm; }
constexpr double to_nm(double angstrom) { return angstrom / kAngstromPerNm; }
constexpr double mev(double v) { return v * kEvPerMev; }
constexpr double to_mev(double ev) { return ev / kEvPerMev; }

}  // namespace kleingate::units
