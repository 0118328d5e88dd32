#pragma once

#include "cryowire/errors.hpp"

namespace cryowire {

// CODATA 2018 exact values. Hard-coded on purpose: every golden number in the
// test suite depends on them, so they are not configurable.
namespace constants {
inline constexpr double reduced_planck = 1.054571817e-34;   // J*s
inline constexpr double boltzmann = 1.380649e-23;           // J/K
inline constexpr double electron_charge = 1.602176634e-19;  // C
}  // namespace constants

/// Signal frequency. Stored as angular frequency (rad/s); constructed from
/// and reported in Hz so no 2*pi factor ever leaks into user-facing code.
class Frequency {
  public:
    static Frequency from_hz(double hz);
    static Frequency from_ghz(double ghz);
    static Frequency from_angular(double rad_per_s);

    double angular() const { return angular_; }
    double hz() const;

  private:
    explicit Frequency(double rad_per_s) : angular_(rad_per_s) {}
    double angular_;  // rad/s, always > 0
};

/// Signal power in watts with dBm conversions (dBm = 10*log10(W / 1 mW)).
class PowerLevel {
  public:
    static PowerLevel from_watts(double watts);
    static PowerLevel from_dbm(double dbm);

    double watts() const { return watts_; }
    double dbm() const;

  private:
    explicit PowerLevel(double watts) : watts_(watts) {}
    double watts_;  // >= 0
};

/// Linear attenuation factor >= 1 (attenuators only, no gain). A == 1 is the
/// identity under composition.
class AttenuationFactor {
  public:
    static AttenuationFactor from_linear(double linear);
    static AttenuationFactor from_db(double db);
    static AttenuationFactor identity() { return AttenuationFactor(1.0); }

    double linear() const { return linear_; }
    double db() const;

    AttenuationFactor composed_with(const AttenuationFactor& other) const;

  private:
    explicit AttenuationFactor(double linear) : linear_(linear) {}
    double linear_;  // >= 1
};

/// Sidedness convention of a power spectral density. One-sided is twice the
/// two-sided value. Chain math and reported noise figures are one-sided; the
/// tag keeps conversions explicit at module boundaries.
enum class Sidedness { one_sided, two_sided };

/// Bose-Einstein occupation 1/(exp(hbar*w/kB*T) - 1).
double bose_einstein_occupation(double temperature_k, Frequency f);

/// Two-sided thermal voltage PSD of a resistor: 2*R*hbar*w*n_BE(T,w)  [V^2/Hz].
double thermal_voltage_psd_two_sided(double temperature_k, Frequency f, double resistance_ohm);

/// Thermal current PSD S_V/R^2 in the requested sidedness  [A^2/Hz].
double thermal_current_psd(double temperature_k, Frequency f, double resistance_ohm,
                           Sidedness sidedness);

/// Occupation -> current PSD bridge: S_I = 2*hbar*w*n/R two-sided, doubled for
/// one-sided. Inverse below; the pair round-trips to 1e-12 relative.
double occupation_to_current_psd(double occupation, Frequency f, double resistance_ohm,
                                 Sidedness sidedness = Sidedness::two_sided);
double current_psd_to_occupation(double psd_a2_per_hz, Frequency f, double resistance_ohm,
                                 Sidedness sidedness = Sidedness::two_sided);

/// First two transmon transitions of a Josephson junction shunted by C_Q,
/// with bare resonance omega0. E_C = q^2/2C_Q, omega01 = omega0 - E_C/hbar,
/// omega12 = omega0 - 2E_C/hbar, anharmonicity = omega12 - omega01 (< 0).
struct TransmonLevels {
    Frequency omega01;
    Frequency omega12;
    double anharmonicity_rad_per_s;
};
TransmonLevels transmon_frequencies(Frequency omega0, double shunt_capacitance_f);

}  // namespace cryowire
