#pragma once

#include "cryowire/noise.hpp"
#include "cryowire/thermal.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cryowire {

/// A named XY-control delivery scenario: per-line wiring, per-line active
/// components, attenuation plan, and the optional photonic front end. Every
/// numeric parameter of a builtin carries a provenance note.
struct Architecture {
    std::string name;
    std::vector<ThermalLink> links;          // per line
    std::vector<ActiveComponent> actives;    // per line
    std::vector<StageAttenuator> attenuation_plan;
    std::optional<PhotonicFrontEnd> front_end;
    std::optional<CryoAmplifier> amplifier;
    double lines_share_factor = 1.0;         // lines per physical link
    std::map<std::string, std::string> provenance;

    void validate(const FridgeModel& fridge) const;
};

const std::vector<std::string>& builtin_architecture_names();

/// The four scenarios studied in the source analysis: "conventional",
/// "cryo_cmos", "deep_photonic", and "proposed".
Architecture builtin_architecture(const std::string& name, const FridgeModel& fridge,
                                  const MaterialLibrary& materials);

struct StageCapacity {
    std::string stage;
    double temperature_k = 0.0;
    double cooling_w = 0.0;
    double per_line_passive_w = 0.0;
    double per_line_active_w = 0.0;     // duty applied
    double headroom_ratio = 0.0;        // cooling / per-line total; inf when unloaded
    double max_lines = 0.0;             // floor(headroom); inf sentinel when unloaded
};

struct StagePowerBreakdown {
    std::string stage;
    double active_w = 0.0;
    double passive_w = 0.0;
    double active_4k_equivalent_w = 0.0;
    double passive_4k_equivalent_w = 0.0;
};

/// Per-qubit power, with loads at stages other than 4K scaled to a
/// 4K-equivalent by the ratio of the 4K cooling power to that stage's
/// cooling power before summing.
struct PerQubitPower {
    double active_w = 0.0;   // 4K-equivalent total
    double passive_w = 0.0;  // 4K-equivalent total
    std::vector<StagePowerBreakdown> breakdown;
};

struct CapacityReport {
    std::string architecture;
    std::vector<StageCapacity> stages;
    std::string bottleneck_stage;
    double overall_max_lines = 0.0;
    PerQubitPower per_qubit;
};

/// Maximum XY-line count per stage and overall. Stages carrying no per-line
/// load report an unbounded sentinel and are excluded from the minimum.
CapacityReport capacity(const Architecture& arch, const FridgeModel& fridge, double duty,
                        const MaterialLibrary& materials);

PerQubitPower per_qubit_power(const Architecture& arch, const FridgeModel& fridge, double duty,
                              const MaterialLibrary& materials);

struct ComparisonTable {
    std::vector<CapacityReport> reports;  // one per architecture, input order
};

ComparisonTable compare_architectures(const std::vector<Architecture>& archs,
                                      const FridgeModel& fridge, double duty,
                                      const MaterialLibrary& materials);

}  // namespace cryowire
