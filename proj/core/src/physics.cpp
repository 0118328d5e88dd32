#include "cryowire/physics.hpp"

#include <cmath>

namespace cryowire {

Frequency Frequency::from_hz(double hz) {
    if (!(hz > 0.0) || !std::isfinite(hz)) {
        throw range_error("frequency must be positive and finite");
    }
    return Frequency(2.0 * M_PI * hz);
}

Frequency Frequency::from_ghz(double ghz) { return from_hz(ghz * 1e9); }

Frequency Frequency::from_angular(double rad_per_s) {
    if (!(rad_per_s > 0.0) || !std::isfinite(rad_per_s)) {
        throw range_error("angular frequency must be positive and finite");
    }
    return Frequency(rad_per_s);
}

double Frequency::hz() const { return angular_ / (2.0 * M_PI); }

PowerLevel PowerLevel::from_watts(double watts) {
    if (watts < 0.0 || !std::isfinite(watts)) {
        throw range_error("power must be non-negative and finite");
    }
    return PowerLevel(watts);
}

PowerLevel PowerLevel::from_dbm(double dbm) {
    if (!std::isfinite(dbm)) throw range_error("dBm value must be finite");
    return PowerLevel(1e-3 * std::pow(10.0, dbm / 10.0));
}

double PowerLevel::dbm() const {
    // 0 W has no finite dBm representation.
    return 10.0 * std::log10(watts_ / 1e-3);
}

AttenuationFactor AttenuationFactor::from_linear(double linear) {
    if (!(linear >= 1.0) || !std::isfinite(linear)) {
        throw range_error("attenuation factor must be >= 1 (no gain)");
    }
    return AttenuationFactor(linear);
}

AttenuationFactor AttenuationFactor::from_db(double db) {
    if (db < 0.0 || !std::isfinite(db)) {
        throw range_error("attenuation in dB must be >= 0");
    }
    return AttenuationFactor(std::pow(10.0, db / 10.0));
}

double AttenuationFactor::db() const { return 10.0 * std::log10(linear_); }

AttenuationFactor AttenuationFactor::composed_with(const AttenuationFactor& other) const {
    return AttenuationFactor(linear_ * other.linear_);
}

double bose_einstein_occupation(double temperature_k, Frequency f) {
    if (!(temperature_k > 0.0) || !std::isfinite(temperature_k)) {
        throw range_error("temperature must be positive for thermal occupation");
    }
    const double x = constants::reduced_planck * f.angular() /
                     (constants::boltzmann * temperature_k);
    // expm1 keeps the classical limit (x -> 0) accurate.
    return 1.0 / std::expm1(x);
}

double thermal_voltage_psd_two_sided(double temperature_k, Frequency f, double resistance_ohm) {
    if (!(resistance_ohm > 0.0)) throw range_error("resistance must be positive");
    return 2.0 * resistance_ohm * constants::reduced_planck * f.angular() *
           bose_einstein_occupation(temperature_k, f);
}

double thermal_current_psd(double temperature_k, Frequency f, double resistance_ohm,
                           Sidedness sidedness) {
    const double two_sided = thermal_voltage_psd_two_sided(temperature_k, f, resistance_ohm) /
                             (resistance_ohm * resistance_ohm);
    return sidedness == Sidedness::two_sided ? two_sided : 2.0 * two_sided;
}

double occupation_to_current_psd(double occupation, Frequency f, double resistance_ohm,
                                 Sidedness sidedness) {
    if (occupation < 0.0 || !std::isfinite(occupation)) {
        throw range_error("occupation must be non-negative");
    }
    if (!(resistance_ohm > 0.0)) throw range_error("resistance must be positive");
    const double two_sided =
        2.0 * constants::reduced_planck * f.angular() * occupation / resistance_ohm;
    return sidedness == Sidedness::two_sided ? two_sided : 2.0 * two_sided;
}

double current_psd_to_occupation(double psd_a2_per_hz, Frequency f, double resistance_ohm,
                                 Sidedness sidedness) {
    if (psd_a2_per_hz < 0.0 || !std::isfinite(psd_a2_per_hz)) {
        throw range_error("PSD must be non-negative");
    }
    if (!(resistance_ohm > 0.0)) throw range_error("resistance must be positive");
    const double two_sided =
        sidedness == Sidedness::two_sided ? psd_a2_per_hz : 0.5 * psd_a2_per_hz;
    return two_sided * resistance_ohm / (2.0 * constants::reduced_planck * f.angular());
}

TransmonLevels transmon_frequencies(Frequency omega0, double shunt_capacitance_f) {
    if (!(shunt_capacitance_f > 0.0) || !std::isfinite(shunt_capacitance_f)) {
        throw range_error("shunt capacitance must be positive");
    }
    const double q = constants::electron_charge;
    const double charging_energy = q * q / (2.0 * shunt_capacitance_f);  // E_C, joules
    const double ec_over_hbar = charging_energy / constants::reduced_planck;
    const double w01 = omega0.angular() - ec_over_hbar;
    const double w12 = omega0.angular() - 2.0 * ec_over_hbar;
    if (!(w01 > 0.0) || !(w12 > 0.0)) {
        throw range_error("charging energy exceeds bare resonance; no valid transition");
    }
    return TransmonLevels{Frequency::from_angular(w01), Frequency::from_angular(w12),
                          -ec_over_hbar};
}

}  // namespace cryowire
