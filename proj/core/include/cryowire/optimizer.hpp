#pragma once

#include "cryowire/noise.hpp"
#include "cryowire/thermal.hpp"

#include <string>
#include <vector>

namespace cryowire {

/// Qubit-referred noise requirement: either a thermal photon occupation or a
/// one-sided current amplitude spectral density, never both at once.
class NoiseTarget {
  public:
    static NoiseTarget occupation(double max_occupation,
                                  Frequency f = Frequency::from_ghz(6.0));
    static NoiseTarget current_asd(double max_asd_a_per_sqrt_hz,
                                   Frequency f = Frequency::from_ghz(6.0));

    bool is_occupation() const { return occupation_.has_value(); }
    bool is_current_asd() const { return asd_.has_value(); }
    double max_occupation() const;
    double max_current_asd() const;
    Frequency frequency() const { return frequency_; }

    /// The target expressed as an occupation at the given impedance,
    /// converting a one-sided ASD target when necessary.
    double occupation_at(double impedance_ohm) const;

  private:
    NoiseTarget(std::optional<double> occupation, std::optional<double> asd, Frequency f)
        : occupation_(occupation), asd_(asd), frequency_(f) {}
    std::optional<double> occupation_;
    std::optional<double> asd_;
    Frequency frequency_;
};

struct AttenuationPlanEntry {
    std::string stage;
    double attenuation_db = 0.0;
    double attenuator_temperature_k = 0.0;
    double dissipation_w = 0.0;      // duty-weighted signal power absorbed here
    double cooling_w = 0.0;
    double dissipation_ratio = 0.0;  // dissipation / cooling
};

struct AttenuationPlan {
    std::vector<AttenuationPlanEntry> entries;  // hot to cold
    double achieved_occupation = 0.0;
    double target_occupation = 0.0;
    double worst_dissipation_ratio = 0.0;

    double total_db() const;
};

/// Eq.-3-style estimate: attenuation needed to squeeze the source occupation
/// down to the target, 10*log10(n_source/n_target). Zero when the source is
/// already at or below target.
double required_total_attenuation_db(double source_temperature_k, const NoiseTarget& target,
                                     double impedance_ohm = 50.0);

/// Grid search over per-stage attenuation splits. Feasibility is the chained
/// per-stage occupation recursion evaluated at the target frequency; the
/// ranking among feasible plans is lexicographic:
///   1. smallest single-stage attenuation (balanced plans first),
///   2. least total attenuation,
///   3. smallest worst-case attenuator-dissipation/cooling-power ratio,
///   4. less attenuation at colder stages.
/// Attenuator dissipation at a stage is (A-1) * P_qubit * (product of
/// attenuations below) * duty. Throws infeasible_error when no split within
/// 120 dB total meets the target, naming the limiting contribution.
AttenuationPlan optimize_attenuation_split(const FridgeModel& fridge,
                                           const std::vector<std::string>& stages_allowed,
                                           double grid_step_db,
                                           PowerLevel signal_power_at_qubit,
                                           const NoiseTarget& target, double duty,
                                           double impedance_ohm = 50.0);

/// Smallest mean photocurrent whose closed-form qubit noise meets an ASD
/// target, by bisection over [1 pA, 1 A] to 1e-4 relative. Throws
/// infeasible_error naming the dominant photocurrent-independent term when
/// even 1 A cannot meet the target.
double min_photocurrent(const PhotonicFrontEnd& front_template, const CryoAmplifier& amp,
                        const NoiseTarget& target, PowerLevel qubit_power,
                        double impedance_ohm = 50.0);

struct SweepPoint {
    double photocurrent_a = 0.0;
    double noise_figure_db = 0.0;
    double noise_asd_a_per_sqrt_hz = 0.0;
};

/// Closed-form qubit noise over a log-spaced photocurrent grid for each NF
/// value; rows ordered by (NF ascending, photocurrent ascending).
std::vector<SweepPoint> noise_vs_photocurrent_sweep(const PhotonicFrontEnd& front_template,
                                                    const CryoAmplifier& amp_template,
                                                    const std::vector<double>& nf_values_db,
                                                    PowerLevel qubit_power,
                                                    double photocurrent_min_a,
                                                    double photocurrent_max_a, int points,
                                                    double impedance_ohm = 50.0);

}  // namespace cryowire
