#include "cryowire/noise.hpp"

#include <cmath>

namespace cryowire {

void PhotonicFrontEnd::validate() const {
    if (laser_rin_db_per_hz > -100.0) {
        throw validation_error("laser RIN must be <= -100 dB/Hz");
    }
    if (!(v_pi_volt > 0.0)) throw validation_error("v_pi must be positive");
    if (!(drive_temperature_k > 0.0)) throw validation_error("drive temperature must be positive");
    if (!(drive_impedance_ohm > 0.0)) throw validation_error("drive impedance must be positive");
    if (!(pd_responsivity_a_per_w > 0.0) || pd_responsivity_a_per_w > 1.6) {
        throw validation_error("photodiode responsivity must be in (0, 1.6] A/W");
    }
    if (!(pd_bandwidth_hz > 0.0)) throw validation_error("photodiode bandwidth must be positive");
    if (mean_photocurrent_a < 0.0) {
        throw validation_error("mean photocurrent must be non-negative");
    }
}

PhotonicFrontEnd PhotonicFrontEnd::with_photocurrent(double amps) const {
    PhotonicFrontEnd copy = *this;
    copy.mean_photocurrent_a = amps;
    copy.validate();
    return copy;
}

void CryoAmplifier::validate() const {
    if (noise_figure_db < 0.0) throw range_error("noise figure must be >= 0 dB");
    if (!(transimpedance_gain_ohm > 0.0)) {
        throw validation_error("transimpedance gain must be positive");
    }
    if (dissipation_w < 0.0) throw validation_error("amplifier dissipation must be >= 0");
    if (!(ambient_k > 0.0)) throw validation_error("amplifier ambient must be positive");
}

double NoiseState::amplitude_asd() const { return std::sqrt(current_psd_one_sided); }

namespace {
void check_in_band(const PhotonicFrontEnd& front, Frequency carrier) {
    if (carrier.hz() > front.pd_bandwidth_hz) {
        throw validation_error("carrier above photodiode bandwidth (H(w)=1 only holds in band)");
    }
}
}  // namespace

double shot_noise_psd(const PhotonicFrontEnd& front, Frequency carrier) {
    front.validate();
    check_in_band(front, carrier);
    return 2.0 * constants::electron_charge * front.mean_photocurrent_a;
}

double rin_noise_psd(const PhotonicFrontEnd& front) {
    front.validate();
    const double rin_linear = std::pow(10.0, front.laser_rin_db_per_hz / 10.0);
    return front.mean_photocurrent_a * front.mean_photocurrent_a * rin_linear;
}

double eom_drive_noise_psd(const PhotonicFrontEnd& front) {
    front.validate();
    const double drive_voltage_psd =
        4.0 * constants::boltzmann * front.drive_temperature_k * front.drive_impedance_ohm;
    const double conversion = front.mean_photocurrent_a * M_PI / front.v_pi_volt;
    return drive_voltage_psd * conversion * conversion;
}

double tia_input_noise_psd(const CryoAmplifier& amp, double impedance_ohm) {
    amp.validate();
    if (!(impedance_ohm > 0.0)) throw validation_error("impedance must be positive");
    const double nf_linear = std::pow(10.0, amp.noise_figure_db / 10.0);
    return (nf_linear - 1.0) * 4.0 * constants::boltzmann * amp.ambient_k / impedance_ohm;
}

double photodiode_noise_psd(const PhotonicFrontEnd& front, Frequency carrier) {
    return shot_noise_psd(front, carrier) + rin_noise_psd(front) + eom_drive_noise_psd(front);
}

double propagate_occupation(double occupation_in, const StageAttenuator& att, Frequency f) {
    if (occupation_in < 0.0) throw range_error("occupation must be non-negative");
    const double a = att.attenuation.linear();
    const double thermal = bose_einstein_occupation(att.physical_temperature_k, f);
    return occupation_in / a + (a - 1.0) / a * thermal;
}

NoiseState propagate_psd(const NoiseState& state, const StageAttenuator& att,
                         double impedance_ohm) {
    if (state.reference_impedance_ohm != impedance_ohm) {
        throw validation_error("noise state impedance does not match attenuator chain impedance");
    }
    const double a = att.attenuation.linear();
    const double thermal = thermal_current_psd(att.physical_temperature_k, state.frequency,
                                               impedance_ohm, Sidedness::one_sided);
    NoiseState out = state;
    out.current_psd_one_sided = state.current_psd_one_sided / a + (a - 1.0) / a * thermal;
    return out;
}

NoiseState qubit_noise_full(const PhotonicFrontEnd& front, const CryoAmplifier& amp,
                            const StageAttenuator& att_cp, const StageAttenuator& att_mxc,
                            Frequency carrier, double impedance_ohm) {
    const double source = photodiode_noise_psd(front, carrier) +
                          tia_input_noise_psd(amp, impedance_ohm);
    const double gain = amp.transimpedance_gain_ohm / impedance_ohm;
    NoiseState at_4k{carrier, source * gain * gain, impedance_ohm};
    const NoiseState at_cp = propagate_psd(at_4k, att_cp, impedance_ohm);
    return propagate_psd(at_cp, att_mxc, impedance_ohm);
}

PowerLevel qubit_signal_power(const PhotonicFrontEnd& front, const CryoAmplifier& amp,
                              const StageAttenuator& att_cp, const StageAttenuator& att_mxc,
                              double impedance_ohm) {
    front.validate();
    amp.validate();
    if (!(impedance_ohm > 0.0)) throw validation_error("impedance must be positive");
    const double v = front.mean_photocurrent_a * amp.transimpedance_gain_ohm;
    return PowerLevel::from_watts(
        v * v / (impedance_ohm * att_cp.attenuation.linear() * att_mxc.attenuation.linear()));
}

double qubit_noise_closed_form(const PhotonicFrontEnd& front, const CryoAmplifier& amp,
                               PowerLevel qubit_power, double impedance_ohm) {
    front.validate();
    amp.validate();
    const double current = front.mean_photocurrent_a;
    if (!(current > 0.0)) throw range_error("closed form requires positive photocurrent");
    const double shot = 2.0 * constants::electron_charge * current;
    const double rin_linear = std::pow(10.0, front.laser_rin_db_per_hz / 10.0);
    const double eom = 4.0 * constants::boltzmann * front.drive_temperature_k *
                       front.drive_impedance_ohm * std::pow(M_PI / front.v_pi_volt, 2);
    const double nf_linear = std::pow(10.0, amp.noise_figure_db / 10.0);
    const double tia =
        (nf_linear - 1.0) * 4.0 * constants::boltzmann * amp.ambient_k / impedance_ohm;
    const double bracket = shot + (rin_linear + eom) * current * current + tia;
    return qubit_power.watts() / (impedance_ohm * current * current) * bracket;
}

}  // namespace cryowire
