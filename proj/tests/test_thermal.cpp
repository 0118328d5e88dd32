#include "cryowire/thermal.hpp"

#include "helpers.hpp"

#include <cmath>

#include <doctest.h>

using namespace cryowire;
using testutil::close_rel;

namespace {

// Independent oracle: exact integral of the log-log interpolant. Each
// segment is k(T) = k0 * (T/T0)^m, integrable in closed form.
double oracle_integral_exact(const ConductivityModel& model, double t_lo, double t_hi) {
    double total = 0.0;
    const auto& pts = model.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = std::max(t_lo, pts[i].first);
        const double b = std::min(t_hi, pts[i + 1].first);
        if (a >= b) continue;
        const double t0 = pts[i].first, k0 = pts[i].second;
        const double m = std::log(pts[i + 1].second / k0) / std::log(pts[i + 1].first / t0);
        if (std::abs(m + 1.0) < 1e-12) {
            total += k0 * t0 * std::log(b / a);
        } else {
            total += k0 * t0 / (m + 1.0) *
                     (std::pow(b / t0, m + 1.0) - std::pow(a / t0, m + 1.0));
        }
    }
    return total;
}

// Independent oracle: fixed-step trapezoid with 1e5 uniform steps.
double oracle_integral_trapezoid(const ConductivityModel& model, double t_lo, double t_hi) {
    constexpr int steps = 100000;
    const double h = (t_hi - t_lo) / steps;
    double sum = 0.5 * (model.conductivity_at(t_lo) + model.conductivity_at(t_hi));
    for (int i = 1; i < steps; ++i) {
        sum += model.conductivity_at(t_lo + i * h);
    }
    return sum * h;
}

double oracle_link_load(const ThermalLink& link, const FridgeModel& fridge,
                        const MaterialLibrary& materials,
                        double (*integral)(const ConductivityModel&, double, double)) {
    const double t_hot = fridge.stage(link.hot_stage).temperature_k;
    const double t_cold = fridge.stage(link.cold_stage).temperature_k;
    double load = 0.0;
    for (const auto& layer : link.layers) {
        load += layer.cross_section_m2 / link.length_m *
                integral(materials.get(layer.material), t_cold, t_hot);
    }
    return load;
}

ThermalLink smf28(double length_m = 1.0) {
    ThermalLink link;
    link.kind = LinkKind::fiber;
    link.name = "smf28";
    link.hot_stage = "RT";
    link.cold_stage = "4K";
    link.length_m = length_m;
    const double silica_d = 125e-6, buffer_d = 250e-6;
    const double silica_a = M_PI / 4.0 * silica_d * silica_d;
    link.layers = {{"silica", silica_a},
                   {"ptfe", M_PI / 4.0 * buffer_d * buffer_d - silica_a}};
    return link;
}

}  // namespace

TEST_CASE("default fridge equals the XLD400 stage table") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    REQUIRE(fridge.stages().size() == 6);
    CHECK(fridge.stage("RT").temperature_k == 300.0);
    CHECK(std::isinf(fridge.stage("RT").cooling_power_w));
    CHECK(fridge.stage("50K").temperature_k == 35.0);
    CHECK(fridge.stage("50K").cooling_power_w == 30.0);
    CHECK(fridge.stage("4K").temperature_k == 2.85);
    CHECK(fridge.stage("4K").cooling_power_w == 1.5);
    CHECK(fridge.stage("Still").temperature_k == 0.882);
    CHECK(fridge.stage("Still").cooling_power_w == 40e-3);
    CHECK(fridge.stage("CP").temperature_k == 0.082);
    CHECK(fridge.stage("CP").cooling_power_w == 200e-6);
    CHECK(fridge.stage("MXC").temperature_k == 0.006);
    CHECK(fridge.stage("MXC").cooling_power_w == 19e-6);
}

TEST_CASE("fridge model invariants") {
    CHECK_THROWS_AS(FridgeModel({{"only", 4.0, 1.0}}), validation_error);
    CHECK_THROWS_AS(FridgeModel({{"a", 4.0, 1.0}, {"b", 4.0, 1.0}}), validation_error);
    CHECK_THROWS_AS(FridgeModel({{"a", 4.0, 1.0}, {"b", 10.0, 1.0}}), validation_error);
    CHECK_THROWS_AS(FridgeModel({{"a", 10.0, 0.0}, {"b", 4.0, 1.0}}), validation_error);
    CHECK_THROWS_AS(FridgeModel({{"a", 10.0, 1.0}, {"a", 4.0, 1.0}}), validation_error);
}

TEST_CASE("conductivity interpolation is exact at table points") {
    const auto& lib = MaterialLibrary::bundled();
    for (const auto& name : lib.material_names()) {
        const auto& model = lib.get(name);
        for (const auto& [t, k] : model.points()) {
            CHECK(model.conductivity_at(t) == doctest::Approx(k).epsilon(1e-12));
        }
    }
}

TEST_CASE("log-log interpolation: geometric mean of temperatures maps to geometric mean of k") {
    const auto& model = MaterialLibrary::bundled().get("silica");
    const auto& pts = model.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double t_mid = std::sqrt(pts[i].first * pts[i + 1].first);
        const double k_mid = std::sqrt(pts[i].second * pts[i + 1].second);
        CHECK(close_rel(model.conductivity_at(t_mid), k_mid, 1e-12));
    }
}

TEST_CASE("silica near room temperature sits in the published band") {
    const auto& model = MaterialLibrary::bundled().get("silica");
    const double k = model.conductivity_at(300.0);
    CHECK(k >= 1.3);
    CHECK(k <= 1.5);
}

TEST_CASE("no extrapolation outside the table") {
    const auto& model = MaterialLibrary::bundled().get("silica");
    CHECK_THROWS_AS(model.conductivity_at(0.5), range_error);
    CHECK_THROWS_AS(model.conductivity_at(400.0), range_error);
}

TEST_CASE("conductivity table invariants") {
    CHECK_THROWS_AS(ConductivityModel("x", {{1.0, 1.0}, {300.0, 2.0}}), validation_error);
    CHECK_THROWS_AS(
        ConductivityModel("x", {{2.0, 1.0}, {10.0, 1.0}, {100.0, 1.0}, {300.0, 2.0}}),
        validation_error);
    CHECK_THROWS_AS(
        ConductivityModel("x", {{1.0, 1.0}, {10.0, -1.0}, {100.0, 1.0}, {300.0, 2.0}}),
        validation_error);
}

TEST_CASE("SMF-28 fiber, 1 m, RT to 4K lands near 5.6 uW") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    const double load = conduction_load(smf28(), fridge, lib);
    CHECK(load > 5.6e-6 * 0.8);
    CHECK(load < 5.6e-6 * 1.2);
}

TEST_CASE("quadrature matches the 1e5-step trapezoid oracle within 1e-6 relative") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    for (const auto& name : lib.material_names()) {
        ThermalLink link;
        link.name = "probe_" + name;
        link.hot_stage = "RT";
        link.cold_stage = "4K";
        link.length_m = 1.0;
        link.layers = {{name, 1e-6}};
        const double quad = conduction_load(link, fridge, lib);
        const double trap = oracle_link_load(link, fridge, lib, oracle_integral_trapezoid);
        CHECK(close_rel(quad, trap, 1e-6));
        const double exact = oracle_link_load(link, fridge, lib, oracle_integral_exact);
        CHECK(close_rel(quad, exact, 1e-8));
    }
    const double quad = conduction_load(smf28(), fridge, lib);
    CHECK(close_rel(quad, oracle_link_load(smf28(), fridge, lib, oracle_integral_trapezoid),
                    1e-6));
}

TEST_CASE("zero temperature difference gives zero load") {
    // Same nominal endpoints via a two-stage fridge with equal-ish span:
    // the integral over an empty range must vanish.
    const auto& lib = MaterialLibrary::bundled();
    const auto& model = lib.get("silica");
    CHECK(oracle_integral_exact(model, 77.0, 77.0) == 0.0);
    CHECK(detail::integrate_adaptive_simpson(
              [&](double t) { return model.conductivity_at(t); }, 77.0, 77.0, 1e-9, 20) == 0.0);
}

TEST_CASE("split-path additivity within 1e-9 relative") {
    const auto& lib = MaterialLibrary::bundled();
    testutil::Rng rng(0x5eed010);
    const auto& silica = lib.get("silica");
    const auto integrate = [&](double a, double b) {
        double total = 0.0;
        std::vector<double> cuts{a};
        for (const auto& [t, k] : silica.points()) {
            if (t > a && t < b) cuts.push_back(t);
        }
        cuts.push_back(b);
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            total += detail::integrate_adaptive_simpson(
                [&](double t) { return silica.conductivity_at(t); }, cuts[i], cuts[i + 1],
                1e-10, 20);
        }
        return total;
    };
    const double whole = integrate(4.0, 300.0);
    for (int i = 0; i < 60; ++i) {
        const double mid = rng.uniform(4.5, 299.0);
        const double split = integrate(4.0, mid) + integrate(mid, 300.0);
        CHECK(close_rel(split, whole, 1e-9));
    }
}

TEST_CASE("conduction load is monotone in cross-section, hot temperature, and 1/length") {
    // Bundled tables span [1 K, 300 K], so integrable links end at 4K here;
    // colder endpoints use fixed overrides in practice.
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    testutil::Rng rng(0x5eed011);
    const std::vector<std::string> names = lib.material_names();
    for (int i = 0; i < 300; ++i) {
        ThermalLink link;
        link.name = "prop";
        link.hot_stage = "RT";
        link.cold_stage = "4K";
        link.length_m = rng.log_uniform(0.05, 5.0);
        link.layers = {{names[static_cast<std::size_t>(rng.uniform_int(
                            0, static_cast<int>(names.size()) - 1))],
                        rng.log_uniform(1e-9, 1e-5)}};
        const double base = conduction_load(link, fridge, lib);
        CHECK(base > 0.0);

        ThermalLink wider = link;
        wider.layers[0].cross_section_m2 *= rng.uniform(1.1, 3.0);
        CHECK(conduction_load(wider, fridge, lib) > base);

        ThermalLink longer = link;
        longer.length_m *= rng.uniform(1.1, 3.0);
        CHECK(conduction_load(longer, fridge, lib) < base);

        ThermalLink cooler_hot_end = link;
        cooler_hot_end.hot_stage = "50K";
        CHECK(conduction_load(cooler_hot_end, fridge, lib) < base);
    }
}

TEST_CASE("fixed load override bypasses the integral") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    ThermalLink coax;
    coax.kind = LinkKind::rf_coax;
    coax.name = "ss_coax";
    coax.hot_stage = "RT";
    coax.cold_stage = "4K";
    coax.fixed_load_override_w = 1e-3;
    CHECK(conduction_load(coax, fridge, lib) == 1e-3);
}

TEST_CASE("stage heat report: empty inputs give zero rows with infinite headroom") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto rows = stage_heat_report(fridge, {}, {}, 0.33, MaterialLibrary::bundled());
    REQUIRE(rows.size() == 6);
    for (const auto& row : rows) {
        CHECK(row.passive_w == 0.0);
        CHECK(row.active_w == 0.0);
        CHECK(row.total_w == 0.0);
        CHECK(std::isinf(row.headroom_ratio));
    }
}

TEST_CASE("stage heat report: 1 mW stainless coax charges the 4K stage") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    ThermalLink coax;
    coax.kind = LinkKind::rf_coax;
    coax.name = "ss";
    coax.hot_stage = "RT";
    coax.cold_stage = "4K";
    coax.fixed_load_override_w = 1e-3;
    const auto rows = stage_heat_report(fridge, {coax}, {}, 0.33, MaterialLibrary::bundled());
    CHECK(rows[2].stage == "4K");
    CHECK(rows[2].passive_w == 1e-3);
    CHECK(rows[0].passive_w == 0.0);  // nothing charged to the hot endpoint
}

TEST_CASE("stage heat report: fiber plus photodiode at full duty") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    const ActiveComponent pd{"photodiode", "4K", 1.4e-6, true};
    const auto rows = stage_heat_report(fridge, {smf28()}, {pd}, 1.0, lib);
    CHECK(close_rel(rows[2].total_w, 7.0e-6, 0.17));
    CHECK(rows[2].headroom_ratio > 1.8e5);
    CHECK(rows[2].headroom_ratio < 2.6e5);
}

TEST_CASE("duty scales only duty_cycled components") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    const ActiveComponent cycled{"pd", "4K", 1e-6, true};
    const ActiveComponent constant{"bias", "4K", 1e-6, false};
    const auto rows = stage_heat_report(fridge, {smf28()}, {cycled, constant}, 0.25, lib);
    const auto rows_full = stage_heat_report(fridge, {smf28()}, {cycled, constant}, 1.0, lib);
    CHECK(close_rel(rows[2].active_w, 0.25e-6 + 1e-6, 1e-12));
    CHECK(close_rel(rows_full[2].active_w, 2e-6, 1e-12));
    // Passive conduction is never duty-cycled.
    CHECK(rows[2].passive_w == rows_full[2].passive_w);
}

TEST_CASE("stage heat report is additive over disjoint link sets") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    ThermalLink a = smf28();
    ThermalLink b = smf28(0.5);
    b.cold_stage = "50K";
    const auto ra = stage_heat_report(fridge, {a}, {}, 0.33, lib);
    const auto rb = stage_heat_report(fridge, {b}, {}, 0.33, lib);
    const auto rboth = stage_heat_report(fridge, {a, b}, {}, 0.33, lib);
    for (std::size_t i = 0; i < ra.size(); ++i) {
        CHECK(close_rel(rboth[i].passive_w, ra[i].passive_w + rb[i].passive_w, 1e-12));
    }
}

TEST_CASE("validation failures") {
    const FridgeModel fridge = FridgeModel::bluefors_xld400();
    const auto& lib = MaterialLibrary::bundled();
    ThermalLink backwards = smf28();
    backwards.hot_stage = "4K";
    backwards.cold_stage = "RT";
    CHECK_THROWS_AS(conduction_load(backwards, fridge, lib), validation_error);
    CHECK_THROWS_AS(stage_heat_report(fridge, {smf28()}, {}, 0.0, lib), validation_error);
    CHECK_THROWS_AS(stage_heat_report(fridge, {smf28()}, {}, 1.5, lib), validation_error);

    ThermalLink bad_material = smf28();
    bad_material.layers[0].material = "unobtainium";
    CHECK_THROWS_AS(conduction_load(bad_material, fridge, lib), validation_error);

    // A link spanning below the table minimum is a range error.
    ConductivityModel narrow("narrow", {{1.0, 0.1}, {10.0, 0.2}, {100.0, 0.5}, {300.0, 1.0}});
    MaterialLibrary lib2;
    lib2.add(narrow);
    FridgeModel tiny({{"hot", 350.0, 1.0}, {"cold", 4.0, 1.0}});
    ThermalLink span;
    span.name = "span";
    span.hot_stage = "hot";
    span.cold_stage = "cold";
    span.length_m = 1.0;
    span.layers = {{"narrow", 1e-6}};
    CHECK_THROWS_AS(conduction_load(span, tiny, lib2), range_error);
}

TEST_CASE("bundled materials file matches the embedded tables") {
    // Keeps core/data/materials.csv and the compiled-in copy in sync.
    const MaterialLibrary from_file =
        MaterialLibrary::from_csv_file(std::string(CRYOWIRE_SOURCE_DIR) +
                                       "/core/data/materials.csv");
    const auto& bundled = MaterialLibrary::bundled();
    REQUIRE(from_file.material_names() == bundled.material_names());
    for (const auto& name : bundled.material_names()) {
        CHECK(from_file.get(name).points() == bundled.get(name).points());
    }
}
