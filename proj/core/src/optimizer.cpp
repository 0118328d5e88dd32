#include "cryowire/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cryowire {

NoiseTarget NoiseTarget::occupation(double max_occupation, Frequency f) {
    if (!(max_occupation > 0.0)) throw validation_error("occupation target must be positive");
    return NoiseTarget(max_occupation, std::nullopt, f);
}

NoiseTarget NoiseTarget::current_asd(double max_asd, Frequency f) {
    if (!(max_asd > 0.0)) throw validation_error("current ASD target must be positive");
    return NoiseTarget(std::nullopt, max_asd, f);
}

double NoiseTarget::max_occupation() const {
    if (!occupation_) throw validation_error("noise target is not an occupation target");
    return *occupation_;
}

double NoiseTarget::max_current_asd() const {
    if (!asd_) throw validation_error("noise target is not a current-ASD target");
    return *asd_;
}

double NoiseTarget::occupation_at(double impedance_ohm) const {
    if (occupation_) return *occupation_;
    const double psd_one_sided = *asd_ * *asd_;
    return current_psd_to_occupation(psd_one_sided, frequency_, impedance_ohm,
                                     Sidedness::one_sided);
}

double AttenuationPlan::total_db() const {
    double total = 0.0;
    for (const auto& e : entries) total += e.attenuation_db;
    return total;
}

double required_total_attenuation_db(double source_temperature_k, const NoiseTarget& target,
                                     double impedance_ohm) {
    const double n_source = bose_einstein_occupation(source_temperature_k, target.frequency());
    const double n_target = target.occupation_at(impedance_ohm);
    if (n_target >= n_source) return 0.0;
    return 10.0 * std::log10(n_source / n_target);
}

namespace {

struct ChainStage {
    std::string name;
    double thermal_occupation = 0.0;  // n_BE at the attenuator temperature
    double cooling_w = 0.0;
};

// Occupation at the qubit for one allocation (linear attenuation factors,
// hot to cold), plus the additive decomposition used for diagnostics.
double chain_occupation(double n_source, const std::vector<ChainStage>& stages,
                        const std::vector<double>& linear, std::vector<double>* terms) {
    if (terms) {
        terms->assign(stages.size() + 1, 0.0);
        double transmission = 1.0;
        for (double a : linear) transmission *= a;
        (*terms)[0] = n_source / transmission;
    }
    double n = n_source;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const double a = linear[i];
        n = n / a + (a - 1.0) / a * stages[i].thermal_occupation;
        if (terms) {
            double downstream = 1.0;
            for (std::size_t j = i + 1; j < stages.size(); ++j) downstream *= linear[j];
            (*terms)[i + 1] = (a - 1.0) / a * stages[i].thermal_occupation / downstream;
        }
    }
    return n;
}

// Duty-weighted attenuator dissipation per stage: (A_i - 1) * P_Q * (product
// of attenuations below i) * duty.
std::vector<double> attenuator_dissipation(const std::vector<double>& linear, double p_qubit_w,
                                           double duty) {
    std::vector<double> out(linear.size(), 0.0);
    double downstream = 1.0;
    for (std::size_t i = linear.size(); i-- > 0;) {
        out[i] = (linear[i] - 1.0) * downstream * p_qubit_w * duty;
        downstream *= linear[i];
    }
    return out;
}

struct RankKey {
    int max_steps = 0;
    int total_steps = 0;
    double worst_ratio = 0.0;
    std::vector<int> coldest_first;

    bool operator<(const RankKey& other) const {
        if (max_steps != other.max_steps) return max_steps < other.max_steps;
        if (total_steps != other.total_steps) return total_steps < other.total_steps;
        if (worst_ratio != other.worst_ratio) return worst_ratio < other.worst_ratio;
        return coldest_first < other.coldest_first;
    }
};

}  // namespace

AttenuationPlan optimize_attenuation_split(const FridgeModel& fridge,
                                           const std::vector<std::string>& stages_allowed,
                                           double grid_step_db,
                                           PowerLevel signal_power_at_qubit,
                                           const NoiseTarget& target, double duty,
                                           double impedance_ohm) {
    if (!(grid_step_db >= 0.5) || !(grid_step_db <= 5.0)) {
        throw validation_error("grid step must be in [0.5, 5] dB");
    }
    if (stages_allowed.empty()) throw validation_error("need at least one allowed stage");
    if (!(duty > 0.0) || !(duty <= 1.0)) throw validation_error("duty must be in (0, 1]");

    // Allowed stages in fridge (hot to cold) order; attenuators thermalize at
    // the stage temperature.
    std::vector<std::size_t> indices;
    for (const auto& name : stages_allowed) indices.push_back(fridge.index_of(name));
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
        throw validation_error("duplicate stage in stages_allowed");
    }
    if (indices.front() == 0) {
        throw validation_error("cannot place an attenuator at the source stage");
    }

    const Frequency f = target.frequency();
    const double n_source = bose_einstein_occupation(fridge.stages().front().temperature_k, f);
    const double n_target = target.occupation_at(impedance_ohm);
    std::vector<ChainStage> chain;
    for (std::size_t idx : indices) {
        const Stage& s = fridge.stages()[idx];
        chain.push_back({s.name, bose_einstein_occupation(s.temperature_k, f),
                         s.cooling_power_w});
    }

    const int n_stages = static_cast<int>(chain.size());
    const int max_total_steps = static_cast<int>(std::floor(120.0 / grid_step_db + 1e-9));
    double combos = 1.0;
    for (int i = 0; i < n_stages; ++i) combos *= (max_total_steps + 1.0 + i) / (i + 1.0);
    if (combos > 5e7) {
        throw validation_error("grid too fine for this many stages; coarsen the step");
    }
    std::vector<double> linear_of_step(max_total_steps + 1);
    for (int k = 0; k <= max_total_steps; ++k) {
        linear_of_step[k] = std::pow(10.0, k * grid_step_db / 10.0);
    }

    bool found = false;
    RankKey best_key;
    std::vector<int> best_steps;
    double best_occupation = 0.0;

    double min_occupation = std::numeric_limits<double>::infinity();
    std::vector<int> min_occ_steps;

    std::vector<int> steps(n_stages, 0);
    std::vector<double> linear(n_stages, 1.0);

    // Exhaustive enumeration of grid allocations with total <= 120 dB. The
    // evaluation order never affects the result: the rank key is a total
    // order over allocations.
    const std::function<void(int, int)> recurse = [&](int stage, int used) {
        if (stage == n_stages) {
            for (int i = 0; i < n_stages; ++i) linear[i] = linear_of_step[steps[i]];
            const double n = chain_occupation(n_source, chain, linear, nullptr);
            if (n < min_occupation) {
                min_occupation = n;
                min_occ_steps = steps;
            }
            if (n > n_target) return;
            const std::vector<double> diss = attenuator_dissipation(
                linear, signal_power_at_qubit.watts(), duty);
            RankKey key;
            key.max_steps = *std::max_element(steps.begin(), steps.end());
            key.total_steps = used;
            for (int i = 0; i < n_stages; ++i) {
                key.worst_ratio = std::max(key.worst_ratio, diss[i] / chain[i].cooling_w);
            }
            key.coldest_first.assign(steps.rbegin(), steps.rend());
            if (!found || key < best_key) {
                found = true;
                best_key = key;
                best_steps = steps;
                best_occupation = n;
            }
            return;
        }
        for (int k = 0; k + used <= max_total_steps; ++k) {
            steps[stage] = k;
            recurse(stage + 1, used + k);
        }
        steps[stage] = 0;
    };
    recurse(0, 0);

    if (!found) {
        // Name the dominant contribution at the lowest-noise allocation.
        for (int i = 0; i < n_stages; ++i) linear[i] = linear_of_step[min_occ_steps[i]];
        std::vector<double> terms;
        chain_occupation(n_source, chain, linear, &terms);
        std::size_t worst = static_cast<std::size_t>(
            std::max_element(terms.begin(), terms.end()) - terms.begin());
        const std::string limiting =
            worst == 0 ? fridge.stages().front().name + " source" : chain[worst - 1].name;
        std::ostringstream msg;
        msg << "attenuation target infeasible within 120 dB total: best achievable occupation "
            << min_occupation << " vs target " << n_target << "; limiting stage: " << limiting;
        throw infeasible_error(msg.str());
    }

    AttenuationPlan plan;
    for (int i = 0; i < n_stages; ++i) linear[i] = linear_of_step[best_steps[i]];
    const std::vector<double> diss =
        attenuator_dissipation(linear, signal_power_at_qubit.watts(), duty);
    for (int i = 0; i < n_stages; ++i) {
        AttenuationPlanEntry entry;
        entry.stage = chain[i].name;
        entry.attenuation_db = best_steps[i] * grid_step_db;
        entry.attenuator_temperature_k = fridge.stage(chain[i].name).temperature_k;
        entry.dissipation_w = diss[i];
        entry.cooling_w = chain[i].cooling_w;
        entry.dissipation_ratio = diss[i] / chain[i].cooling_w;
        plan.entries.push_back(entry);
    }
    plan.achieved_occupation = best_occupation;
    plan.target_occupation = n_target;
    plan.worst_dissipation_ratio = best_key.worst_ratio;
    return plan;
}

double min_photocurrent(const PhotonicFrontEnd& front_template, const CryoAmplifier& amp,
                        const NoiseTarget& target, PowerLevel qubit_power,
                        double impedance_ohm) {
    if (!target.is_current_asd()) {
        throw validation_error("min_photocurrent requires a current-ASD noise target");
    }
    const double target_psd = target.max_current_asd() * target.max_current_asd();
    const auto noise_at = [&](double current) {
        return qubit_noise_closed_form(front_template.with_photocurrent(current), amp,
                                       qubit_power, impedance_ohm);
    };

    constexpr double lo_bound = 1e-12, hi_bound = 1.0;
    if (noise_at(hi_bound) > target_psd) {
        // Photocurrent-independent floor dominates: identify it.
        const double rin_linear = std::pow(10.0, front_template.laser_rin_db_per_hz / 10.0);
        const double eom = 4.0 * constants::boltzmann * front_template.drive_temperature_k *
                           front_template.drive_impedance_ohm *
                           std::pow(M_PI / front_template.v_pi_volt, 2);
        std::ostringstream msg;
        msg << "noise target unreachable at any photocurrent up to 1 A; dominant term: "
            << (rin_linear >= eom ? "laser RIN" : "EOM drive thermal noise");
        throw infeasible_error(msg.str());
    }
    if (noise_at(lo_bound) <= target_psd) return lo_bound;

    double lo = lo_bound, hi = hi_bound;  // noise(lo) > target >= noise(hi)
    while ((hi - lo) / hi > 1e-4) {
        const double mid = std::sqrt(lo * hi);
        (noise_at(mid) <= target_psd ? hi : lo) = mid;
    }
    return hi;
}

std::vector<SweepPoint> noise_vs_photocurrent_sweep(const PhotonicFrontEnd& front_template,
                                                    const CryoAmplifier& amp_template,
                                                    const std::vector<double>& nf_values_db,
                                                    PowerLevel qubit_power,
                                                    double photocurrent_min_a,
                                                    double photocurrent_max_a, int points,
                                                    double impedance_ohm) {
    if (!(photocurrent_min_a > 0.0) || !(photocurrent_max_a > photocurrent_min_a)) {
        throw validation_error("photocurrent range must be positive and increasing");
    }
    if (points < 2) throw validation_error("sweep needs at least 2 points");
    if (nf_values_db.empty()) throw validation_error("sweep needs at least one NF value");

    std::vector<double> nf_sorted = nf_values_db;
    std::sort(nf_sorted.begin(), nf_sorted.end());

    const double log_lo = std::log10(photocurrent_min_a);
    const double log_hi = std::log10(photocurrent_max_a);
    std::vector<SweepPoint> rows;
    rows.reserve(nf_sorted.size() * static_cast<std::size_t>(points));
    for (double nf : nf_sorted) {
        CryoAmplifier amp = amp_template;
        amp.noise_figure_db = nf;
        for (int i = 0; i < points; ++i) {
            const double frac = static_cast<double>(i) / (points - 1);
            const double current = std::pow(10.0, log_lo + frac * (log_hi - log_lo));
            const double psd = qubit_noise_closed_form(
                front_template.with_photocurrent(current), amp, qubit_power, impedance_ohm);
            rows.push_back({current, nf, std::sqrt(psd)});
        }
    }
    return rows;
}

}  // namespace cryowire
