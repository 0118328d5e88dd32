#include "cryowire/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace cryowire {

namespace generated {
// Defined in materials_data.cpp, generated from core/data/materials.csv at
// configure time.
extern const char* const bundled_materials_csv;
}  // namespace generated

FridgeModel::FridgeModel(std::vector<Stage> stages) : stages_(std::move(stages)) {
    if (stages_.size() < 2) {
        throw validation_error("fridge model needs at least 2 stages");
    }
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        const Stage& s = stages_[i];
        if (s.name.empty()) throw validation_error("fridge stage with empty name");
        if (!(s.temperature_k > 0.0)) {
            throw validation_error("fridge stage '" + s.name + "' has non-positive temperature");
        }
        if (!(s.cooling_power_w > 0.0)) {
            throw validation_error("fridge stage '" + s.name + "' has non-positive cooling power");
        }
        if (i > 0 && !(s.temperature_k < stages_[i - 1].temperature_k)) {
            throw validation_error("fridge stages must be strictly decreasing in temperature");
        }
        for (std::size_t j = 0; j < i; ++j) {
            if (stages_[j].name == s.name) {
                throw validation_error("duplicate fridge stage name '" + s.name + "'");
            }
        }
    }
}

FridgeModel FridgeModel::bluefors_xld400() {
    return FridgeModel({
        {"RT", 300.0, std::numeric_limits<double>::infinity()},
        {"50K", 35.0, 30.0},
        {"4K", 2.85, 1.5},
        {"Still", 0.882, 40e-3},
        {"CP", 0.082, 200e-6},
        {"MXC", 0.006, 19e-6},
    });
}

const Stage& FridgeModel::stage(const std::string& name) const {
    return stages_[index_of(name)];
}

std::size_t FridgeModel::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < stages_.size(); ++i) {
        if (stages_[i].name == name) return i;
    }
    throw validation_error("unknown fridge stage '" + name + "'");
}

bool FridgeModel::has_stage(const std::string& name) const {
    return std::any_of(stages_.begin(), stages_.end(),
                       [&](const Stage& s) { return s.name == name; });
}

ConductivityModel::ConductivityModel(std::string material,
                                     std::vector<std::pair<double, double>> points)
    : material_(std::move(material)), points_(std::move(points)) {
    if (points_.size() < 4) {
        throw validation_error("conductivity table for '" + material_ + "' needs >= 4 points");
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!(points_[i].first > 0.0) || !(points_[i].second > 0.0)) {
            throw validation_error("conductivity table for '" + material_ +
                                   "' must have positive T and k");
        }
        if (i > 0 && !(points_[i].first > points_[i - 1].first)) {
            throw validation_error("conductivity table for '" + material_ +
                                   "' must be strictly ascending in T");
        }
    }
    if (points_.front().first > 1.0 || points_.back().first < 300.0) {
        throw validation_error("conductivity table for '" + material_ +
                               "' must span at least [1 K, 300 K]");
    }
}

double ConductivityModel::conductivity_at(double temperature_k) const {
    if (!(temperature_k >= min_temperature_k()) || !(temperature_k <= max_temperature_k())) {
        throw range_error("temperature " + std::to_string(temperature_k) +
                          " K outside conductivity table for '" + material_ + "'");
    }
    auto upper = std::lower_bound(points_.begin(), points_.end(), temperature_k,
                                  [](const auto& p, double t) { return p.first < t; });
    if (upper->first == temperature_k) return upper->second;
    auto lower = upper - 1;
    const double log_t = std::log(temperature_k);
    const double t0 = std::log(lower->first), t1 = std::log(upper->first);
    const double k0 = std::log(lower->second), k1 = std::log(upper->second);
    return std::exp(k0 + (k1 - k0) * (log_t - t0) / (t1 - t0));
}

const MaterialLibrary& MaterialLibrary::bundled() {
    static const MaterialLibrary lib = from_csv_text(generated::bundled_materials_csv);
    return lib;
}

MaterialLibrary MaterialLibrary::from_csv_text(const std::string& csv) {
    MaterialLibrary lib;
    std::istringstream in(csv);
    std::string line;
    bool saw_header = false;
    std::map<std::string, std::vector<std::pair<double, double>>> tables;
    std::vector<std::string> order;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!saw_header) {
            if (line != "material,T_kelvin,k_W_per_mK") {
                throw validation_error("materials CSV: unexpected header '" + line + "'");
            }
            saw_header = true;
            continue;
        }
        std::istringstream row(line);
        std::string material, t_str, k_str;
        if (!std::getline(row, material, ',') || !std::getline(row, t_str, ',') ||
            !std::getline(row, k_str)) {
            throw validation_error("materials CSV: malformed row at line " +
                                   std::to_string(line_no));
        }
        double t = 0.0, k = 0.0;
        try {
            t = std::stod(t_str);
            k = std::stod(k_str);
        } catch (const std::exception&) {
            throw validation_error("materials CSV: non-numeric value at line " +
                                   std::to_string(line_no));
        }
        if (tables.find(material) == tables.end()) order.push_back(material);
        tables[material].emplace_back(t, k);
    }
    if (!saw_header) throw validation_error("materials CSV: missing header row");
    for (const auto& name : order) {
        lib.add(ConductivityModel(name, tables[name]));
    }
    return lib;
}

MaterialLibrary MaterialLibrary::from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open materials file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return from_csv_text(buf.str());
}

void MaterialLibrary::add(ConductivityModel model) {
    const std::string name = model.material();
    models_.erase(name);
    models_.emplace(name, std::move(model));
}

const ConductivityModel& MaterialLibrary::get(const std::string& material) const {
    auto it = models_.find(material);
    if (it == models_.end()) throw validation_error("unknown material '" + material + "'");
    return it->second;
}

bool MaterialLibrary::has(const std::string& material) const {
    return models_.count(material) != 0;
}

std::vector<std::string> MaterialLibrary::material_names() const {
    std::vector<std::string> names;
    names.reserve(models_.size());
    for (const auto& [name, _] : models_) names.push_back(name);
    return names;
}

std::string to_string(LinkKind kind) {
    switch (kind) {
        case LinkKind::rf_coax: return "rf_coax";
        case LinkKind::sc_coax: return "sc_coax";
        case LinkKind::fiber: return "fiber";
        case LinkKind::dc_wire: return "dc_wire";
    }
    throw validation_error("invalid link kind");
}

LinkKind link_kind_from_string(const std::string& s) {
    if (s == "rf_coax") return LinkKind::rf_coax;
    if (s == "sc_coax") return LinkKind::sc_coax;
    if (s == "fiber") return LinkKind::fiber;
    if (s == "dc_wire") return LinkKind::dc_wire;
    throw validation_error("unknown link kind '" + s + "'");
}

namespace detail {

namespace {
double simpson(double fa, double fm, double fb, double a, double b) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double b, double fa,
                     double fm, double fb, double whole, double abs_tol, int depth,
                     int max_depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(fa, flm, fm, a, m);
    const double right = simpson(fm, frm, fb, m, b);
    const double delta = left + right - whole;
    if (depth >= max_depth || std::abs(delta) <= 15.0 * abs_tol) {
        return left + right + delta / 15.0;
    }
    return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * abs_tol, depth + 1, max_depth) +
           adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * abs_tol, depth + 1, max_depth);
}
}  // namespace

double integrate_adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                                  double rel_tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = simpson(fa, fm, fb, a, b);
    const double abs_tol = rel_tol * std::max(std::abs(whole), 1e-300);
    return adaptive_step(f, a, b, fa, fm, fb, whole, abs_tol, 0, max_depth);
}

}  // namespace detail

namespace {

// Contract accuracy is 1e-6 relative; the implementation runs tighter so the
// split-path additivity invariant (1e-9 relative) holds.
constexpr double kQuadratureRelTol = 1e-10;
constexpr int kQuadratureMaxDepth = 20;

// Integral of k(T) dT over [t_lo, t_hi], one quadrature call per log-log
// segment so the integrand handed to Simpson is smooth.
double conductivity_integral(const ConductivityModel& model, double t_lo, double t_hi) {
    if (t_lo == t_hi) return 0.0;
    if (t_lo < model.min_temperature_k() || t_hi > model.max_temperature_k()) {
        throw range_error("link temperature range [" + std::to_string(t_lo) + ", " +
                          std::to_string(t_hi) + "] K exceeds conductivity table for '" +
                          model.material() + "'");
    }
    const auto k = [&](double t) { return model.conductivity_at(t); };
    std::vector<double> cuts{t_lo};
    for (const auto& [knot_t, knot_k] : model.points()) {
        if (knot_t > t_lo && knot_t < t_hi) cuts.push_back(knot_t);
    }
    cuts.push_back(t_hi);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        total += detail::integrate_adaptive_simpson(k, cuts[i], cuts[i + 1], kQuadratureRelTol,
                                                    kQuadratureMaxDepth);
    }
    return total;
}

}  // namespace

double conduction_load(const ThermalLink& link, const FridgeModel& fridge,
                       const MaterialLibrary& materials) {
    const Stage& hot = fridge.stage(link.hot_stage);
    const Stage& cold = fridge.stage(link.cold_stage);
    if (!(hot.temperature_k > cold.temperature_k)) {
        throw validation_error("link '" + link.name + "' endpoints must satisfy T_hot > T_cold");
    }
    if (link.fixed_load_override_w.has_value()) {
        const double v = *link.fixed_load_override_w;
        if (v < 0.0) throw validation_error("fixed_load_override must be >= 0");
        return v;
    }
    if (!(link.length_m > 0.0)) throw validation_error("link length must be positive");
    if (link.layers.empty()) throw validation_error("link '" + link.name + "' has no layers");
    double load = 0.0;
    for (const LinkLayer& layer : link.layers) {
        if (!(layer.cross_section_m2 > 0.0)) {
            throw validation_error("layer cross sections must be positive");
        }
        const ConductivityModel& model = materials.get(layer.material);
        load += layer.cross_section_m2 / link.length_m *
                conductivity_integral(model, cold.temperature_k, hot.temperature_k);
    }
    return load;
}

std::vector<StageLoadRow> stage_heat_report(const FridgeModel& fridge,
                                            const std::vector<ThermalLink>& links,
                                            const std::vector<ActiveComponent>& actives,
                                            double duty, const MaterialLibrary& materials) {
    if (!(duty > 0.0) || !(duty <= 1.0)) {
        throw validation_error("duty must be in (0, 1]");
    }
    std::vector<StageLoadRow> rows;
    rows.reserve(fridge.stages().size());
    for (const Stage& s : fridge.stages()) {
        StageLoadRow row;
        row.stage = s.name;
        row.temperature_k = s.temperature_k;
        row.cooling_w = s.cooling_power_w;
        rows.push_back(row);
    }
    for (const ThermalLink& link : links) {
        const double load = conduction_load(link, fridge, materials);
        rows[fridge.index_of(link.cold_stage)].passive_w += load;
    }
    for (const ActiveComponent& a : actives) {
        if (a.dissipation_w < 0.0) {
            throw validation_error("active component '" + a.name + "' has negative dissipation");
        }
        rows[fridge.index_of(a.stage)].active_w += a.dissipation_w * (a.duty_cycled ? duty : 1.0);
    }
    for (StageLoadRow& row : rows) {
        row.total_w = row.passive_w + row.active_w;
        row.headroom_ratio = row.total_w > 0.0 ? row.cooling_w / row.total_w
                                               : std::numeric_limits<double>::infinity();
    }
    return rows;
}

}  // namespace cryowire
