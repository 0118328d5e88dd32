#pragma once

#include "cryowire/errors.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace cryowire {

struct Stage {
    std::string name;
    double temperature_k = 0.0;
    double cooling_power_w = 0.0;  // +inf for the room-temperature pseudo-stage
};

/// Ordered dilution-refrigerator stages, strictly decreasing in temperature
/// from room temperature down. The default instance is a Bluefors XLD400
/// preceded by an RT pseudo-stage with unbounded cooling power.
class FridgeModel {
  public:
    explicit FridgeModel(std::vector<Stage> stages);

    static FridgeModel bluefors_xld400();

    const std::vector<Stage>& stages() const { return stages_; }
    const Stage& stage(const std::string& name) const;
    std::size_t index_of(const std::string& name) const;
    bool has_stage(const std::string& name) const;

  private:
    std::vector<Stage> stages_;  // hot to cold
};

/// Tabulated thermal conductivity of one material, interpolated linearly in
/// log-log space. No extrapolation: queries outside the table are errors.
class ConductivityModel {
  public:
    ConductivityModel(std::string material, std::vector<std::pair<double, double>> points);

    const std::string& material() const { return material_; }
    double min_temperature_k() const { return points_.front().first; }
    double max_temperature_k() const { return points_.back().first; }
    const std::vector<std::pair<double, double>>& points() const { return points_; }

    double conductivity_at(double temperature_k) const;  // W/m/K

  private:
    std::string material_;
    std::vector<std::pair<double, double>> points_;  // (T, k), ascending T
};

class MaterialLibrary {
  public:
    MaterialLibrary() = default;

    /// The tables shipped with the library (silica, ptfe, stainless_steel,
    /// cuni, nbti), identical to core/data/materials.csv.
    static const MaterialLibrary& bundled();
    static MaterialLibrary from_csv_text(const std::string& csv);
    static MaterialLibrary from_csv_file(const std::string& path);

    void add(ConductivityModel model);
    const ConductivityModel& get(const std::string& material) const;
    bool has(const std::string& material) const;
    std::vector<std::string> material_names() const;

  private:
    std::map<std::string, ConductivityModel> models_;
};

enum class LinkKind { rf_coax, sc_coax, fiber, dc_wire };

std::string to_string(LinkKind kind);
LinkKind link_kind_from_string(const std::string& s);

struct LinkLayer {
    std::string material;
    double cross_section_m2 = 0.0;
};

/// A physical connection between two fridge stages. Conduction load follows
/// Fourier's law through the layer stack unless fixed_load_override_w is set
/// (used for literature-measured loads such as SC coax values).
struct ThermalLink {
    LinkKind kind = LinkKind::rf_coax;
    std::string name;
    std::vector<LinkLayer> layers;
    double length_m = 0.0;
    std::string hot_stage;
    std::string cold_stage;
    std::optional<double> fixed_load_override_w;
};

struct ActiveComponent {
    std::string name;
    std::string stage;
    double dissipation_w = 0.0;
    bool duty_cycled = false;
};

/// Fourier-law conduction load of a link in watts:
///   sum_layers (A/L) * integral_{T_cold}^{T_hot} k(T) dT
/// evaluated per log-log segment by adaptive Simpson quadrature.
double conduction_load(const ThermalLink& link, const FridgeModel& fridge,
                       const MaterialLibrary& materials);

struct StageLoadRow {
    std::string stage;
    double temperature_k = 0.0;
    double cooling_w = 0.0;
    double passive_w = 0.0;
    double active_w = 0.0;
    double total_w = 0.0;
    double headroom_ratio = 0.0;  // cooling/total; +inf when total == 0
};

/// Per-stage heat budget. Conduction from a link is charged entirely to its
/// cold endpoint; active dissipation is scaled by duty only for components
/// flagged duty_cycled.
std::vector<StageLoadRow> stage_heat_report(const FridgeModel& fridge,
                                            const std::vector<ThermalLink>& links,
                                            const std::vector<ActiveComponent>& actives,
                                            double duty, const MaterialLibrary& materials);

namespace detail {
/// Adaptive Simpson on [a, b]. rel_tol is an accuracy floor; the conduction
/// integrals run it per table segment so split-path additivity holds to 1e-9.
double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, int max_depth);
}  // namespace detail

}  // namespace cryowire
