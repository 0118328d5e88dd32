#pragma once

#include "cryowire/physics.hpp"

#include <string>

namespace cryowire {

/// Laser + Mach-Zehnder modulator + photodiode front end of the RF-photonic
/// link. All noise PSDs derived from it are one-sided.
struct PhotonicFrontEnd {
    double laser_rin_db_per_hz = -150.0;  // <= -100
    double v_pi_volt = 2.0;
    double drive_temperature_k = 300.0;
    double drive_impedance_ohm = 50.0;
    double pd_responsivity_a_per_w = 1.0;  // in (0, 1.6]
    double pd_bandwidth_hz = 10e9;
    double mean_photocurrent_a = 0.0;

    void validate() const;
    PhotonicFrontEnd with_photocurrent(double amps) const;
};

/// Cryogenic transimpedance amplifier after the photodiode. NF = 0 dB with
/// 50 ohm gain and zero dissipation encodes the no-amplifier case.
struct CryoAmplifier {
    double noise_figure_db = 0.0;        // >= 0
    double transimpedance_gain_ohm = 50.0;
    double dissipation_w = 0.0;
    double ambient_k = 4.0;

    static CryoAmplifier none() { return CryoAmplifier{}; }
    void validate() const;
};

/// An attenuator thermalized at a fridge stage. The physical temperature
/// defaults to the stage temperature unless explicitly overridden.
struct StageAttenuator {
    std::string stage;
    AttenuationFactor attenuation = AttenuationFactor::identity();
    double physical_temperature_k = 0.0;
};

/// One-sided current-noise PSD at a point in the signal chain.
struct NoiseState {
    Frequency frequency;
    double current_psd_one_sided = 0.0;  // A^2/Hz, >= 0
    double reference_impedance_ohm = 0.0;

    double amplitude_asd() const;  // A/sqrt(Hz)
};

// Source terms (one-sided, A^2/Hz). The photodiode transfer function is taken
// as 1 in band; carriers above pd_bandwidth are rejected, not rolled off.
double shot_noise_psd(const PhotonicFrontEnd& front, Frequency carrier);
double rin_noise_psd(const PhotonicFrontEnd& front);
double eom_drive_noise_psd(const PhotonicFrontEnd& front);
double tia_input_noise_psd(const CryoAmplifier& amp, double impedance_ohm);
double photodiode_noise_psd(const PhotonicFrontEnd& front, Frequency carrier);

/// Noise photon occupation through one attenuator:
///   n_out = n_in/A + (A-1)/A * n_BE(T_att, w)
double propagate_occupation(double occupation_in, const StageAttenuator& att, Frequency f);

/// Same recursion on a one-sided current PSD; the thermal term is evaluated
/// in the state's sidedness and impedance.
NoiseState propagate_psd(const NoiseState& state, const StageAttenuator& att,
                         double impedance_ohm);

/// Full chain to the mixing chamber: photodiode + TIA noise scaled by
/// |A(w)/Z|^2 at 4K, then through the CP and MXC attenuators.
NoiseState qubit_noise_full(const PhotonicFrontEnd& front, const CryoAmplifier& amp,
                            const StageAttenuator& att_cp, const StageAttenuator& att_mxc,
                            Frequency carrier, double impedance_ohm = 50.0);

/// Signal power delivered to the qubit: (I*A(w))^2 / (Z * A_CP * A_MXC).
PowerLevel qubit_signal_power(const PhotonicFrontEnd& front, const CryoAmplifier& amp,
                              const StageAttenuator& att_cp, const StageAttenuator& att_mxc,
                              double impedance_ohm = 50.0);

/// Closed-form MXC noise for a given qubit power, valid when the attenuator
/// thermal floors are negligible:
///   S = P_Q/(Z*I^2) * (2qI + (RIN + 4kB*T_dr*Z_dr*(pi/v_pi)^2)*I^2
///                      + (NF-1)*4kB*T_amb/Z)
/// The RIN term is kept even though it is sub-percent at uA currents.
double qubit_noise_closed_form(const PhotonicFrontEnd& front, const CryoAmplifier& amp,
                               PowerLevel qubit_power, double impedance_ohm = 50.0);

}  // namespace cryowire
