#include "cryowire/catalog.hpp"

#include <cmath>
#include <limits>

namespace cryowire {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// SMF-28 geometry with the 8.2 um core merged into the 125 um silica
// cladding; polymer buffer fills the annulus out to 250 um.
constexpr double kFiberSilicaDiameter_m = 125e-6;
constexpr double kFiberBufferDiameter_m = 250e-6;

double disk_area(double d) { return M_PI / 4.0 * d * d; }

ThermalLink smf28_fiber(const std::string& hot, const std::string& cold) {
    ThermalLink link;
    link.kind = LinkKind::fiber;
    link.name = "smf28_fiber";
    link.hot_stage = hot;
    link.cold_stage = cold;
    link.length_m = 1.0;
    link.layers = {
        {"silica", disk_area(kFiberSilicaDiameter_m)},
        {"ptfe", disk_area(kFiberBufferDiameter_m) - disk_area(kFiberSilicaDiameter_m)},
    };
    return link;
}

ThermalLink sc_coax(const std::string& hot, const std::string& cold, double override_w) {
    ThermalLink link;
    link.kind = LinkKind::sc_coax;
    link.name = "nbti_sc_coax";
    link.hot_stage = hot;
    link.cold_stage = cold;
    link.length_m = 0.2;
    link.layers = {{"nbti", 1.0e-7}};
    link.fixed_load_override_w = override_w;
    return link;
}

StageAttenuator attenuator_at(const FridgeModel& fridge, const std::string& stage, double db) {
    return StageAttenuator{stage, AttenuationFactor::from_db(db),
                           fridge.stage(stage).temperature_k};
}

Architecture make_conventional(const FridgeModel& fridge) {
    Architecture arch;
    arch.name = "conventional";

    ThermalLink coax;
    coax.kind = LinkKind::rf_coax;
    coax.name = "stainless_rf_coax";
    coax.hot_stage = "RT";
    coax.cold_stage = "4K";
    coax.length_m = 1.0;
    coax.layers = {{"stainless_steel", 5.0e-7}};
    coax.fixed_load_override_w = 1.0e-3;
    arch.links.push_back(coax);
    arch.links.push_back(sc_coax("4K", "CP", 0.06e-6));
    arch.links.push_back(sc_coax("CP", "MXC", 0.004e-6));

    arch.attenuation_plan = {attenuator_at(fridge, "4K", 20.0),
                             attenuator_at(fridge, "CP", 20.0),
                             attenuator_at(fridge, "MXC", 20.0)};

    arch.provenance = {
        {"links.stainless_rf_coax.fixed_load_override",
         "stainless RF coax passive load, ~1 mW per cable at the 4K stage"},
        {"links.nbti_sc_coax.4K->CP.fixed_load_override",
         "NbTi-NbTi 0.034\" SC coax, measured ~0.06 uW per cable at CP"},
        {"links.nbti_sc_coax.CP->MXC.fixed_load_override",
         "NbTi-NbTi 0.034\" SC coax, measured ~0.004 uW per cable at MXC"},
        {"attenuation_plan",
         "reference ~20 dB per stage at 4K/CP/MXC; Joule heating of the plan is studied by the "
         "attenuation optimizer, not charged in capacity comparisons"},
    };
    return arch;
}

Architecture make_cryo_cmos(const FridgeModel& fridge) {
    Architecture arch;
    arch.name = "cryo_cmos";

    ThermalLink loom;
    loom.kind = LinkKind::dc_wire;
    loom.name = "dc_loom";
    loom.hot_stage = "RT";
    loom.cold_stage = "4K";
    loom.length_m = 1.0;
    loom.layers = {{"cuni", 1.0e-8}};
    loom.fixed_load_override_w = 1.0e-5;
    arch.links.push_back(loom);
    arch.links.push_back(sc_coax("4K", "CP", 0.06e-6));
    arch.links.push_back(sc_coax("CP", "MXC", 0.004e-6));

    arch.actives.push_back({"cmos_controller", "4K", 2.0e-3, true});

    arch.attenuation_plan = {attenuator_at(fridge, "CP", 20.0),
                             attenuator_at(fridge, "MXC", 20.0)};

    arch.provenance = {
        {"links.dc_loom.fixed_load_override",
         "DC/digital loom, two orders of magnitude below stainless coax (1 mW -> 10 uW), "
         "configurable"},
        {"links.nbti_sc_coax.4K->CP.fixed_load_override", "NbTi SC coax, ~0.06 uW per cable"},
        {"links.nbti_sc_coax.CP->MXC.fixed_load_override", "NbTi SC coax, ~0.004 uW per cable"},
        {"actives.cmos_controller.dissipation",
         "lowest reported cryo-CMOS controller power, ~2 mW per qubit in 28 nm; duty-cycled "
         "with the control activity rate"},
        {"attenuation_plan",
         "excess CMOS noise still needs >40 dB below 4K; not charged in capacity comparisons"},
    };
    return arch;
}

Architecture make_deep_photonic(const FridgeModel&) {
    Architecture arch;
    arch.name = "deep_photonic";

    arch.links.push_back(smf28_fiber("RT", "4K"));
    ThermalLink fiber_cp = smf28_fiber("4K", "CP");
    fiber_cp.fixed_load_override_w = 3e-12;
    arch.links.push_back(fiber_cp);
    ThermalLink fiber_mxc = smf28_fiber("CP", "MXC");
    fiber_mxc.fixed_load_override_w = 3e-12;
    arch.links.push_back(fiber_mxc);

    arch.actives.push_back({"mxc_photodiode_optical", "MXC", 1.0e-6, true});

    arch.provenance = {
        {"links.smf28_fiber.RT->4K", "SMF-28 fiber conduction, Fourier-law integral"},
        {"links.smf28_fiber.4K->CP.fixed_load_override",
         "claimed ~3 pW fiber passive load at CP (not experimentally verified)"},
        {"links.smf28_fiber.CP->MXC.fixed_load_override",
         "claimed ~3 pW fiber passive load at MXC (not experimentally verified)"},
        {"actives.mxc_photodiode_optical.dissipation",
         "optical-to-microwave conversion at MXC, ~1 uW range; dark current and ring-tuning "
         "overheads unquantified, taken as zero"},
    };
    return arch;
}

Architecture make_proposed(const FridgeModel& fridge) {
    Architecture arch;
    arch.name = "proposed";

    arch.links.push_back(smf28_fiber("RT", "4K"));
    arch.links.push_back(sc_coax("4K", "CP", 0.06e-6));
    arch.links.push_back(sc_coax("CP", "MXC", 0.004e-6));

    PhotonicFrontEnd front;
    front.mean_photocurrent_a = 1.4e-6;
    arch.front_end = front;
    arch.amplifier = CryoAmplifier::none();

    // P_opt = I / PD_responsivity, fully dissipated at the 4K photodiode.
    arch.actives.push_back({"pd_optical_power", "4K",
                            front.mean_photocurrent_a / front.pd_responsivity_a_per_w, true});

    arch.attenuation_plan = {attenuator_at(fridge, "CP", 0.0),
                             attenuator_at(fridge, "MXC", 0.0)};

    arch.provenance = {
        {"links.smf28_fiber.RT->4K", "SMF-28 fiber conduction, Fourier-law integral (~5.6 uW)"},
        {"links.nbti_sc_coax.4K->CP.fixed_load_override", "NbTi SC coax, ~0.06 uW per cable"},
        {"links.nbti_sc_coax.CP->MXC.fixed_load_override", "NbTi SC coax, ~0.004 uW per cable"},
        {"front_end.mean_photocurrent", "operating point I ~ 1.4 uA meeting <0.7 pA/rtHz"},
        {"front_end.laser_rin", "high-quality laser RIN below -150 dB/Hz"},
        {"front_end.v_pi", "Mach-Zehnder drive, v_pi = 2 V"},
        {"front_end.pd_responsivity", "cryogenic photodiode responsivity ~1 A/W"},
        {"front_end.pd_bandwidth", "cryogenic photodiodes reach >10 GHz"},
        {"actives.pd_optical_power.dissipation",
         "P_opt = I / PD_responsivity, optical power fully dissipated at 4K; duty-cycled"},
        {"amplifier", "no TIA: NF = 0 dB, gain 50 ohm, P_TIA = 0"},
        {"attenuation_plan", "no CP/MXC attenuators; (A-1) loads are zero"},
    };
    return arch;
}

double scale_to_4k(double load_w, double stage_cooling_w, double cooling_4k_w) {
    if (load_w == 0.0) return 0.0;
    if (std::isinf(stage_cooling_w)) return 0.0;  // RT pseudo-stage carries no budget
    if (stage_cooling_w == cooling_4k_w) return load_w;
    return load_w * cooling_4k_w / stage_cooling_w;
}

}  // namespace

void Architecture::validate(const FridgeModel& fridge) const {
    for (const auto& link : links) {
        if (!fridge.has_stage(link.hot_stage) || !fridge.has_stage(link.cold_stage)) {
            throw validation_error("architecture '" + name + "' references unknown stage in link '" +
                                   link.name + "'");
        }
    }
    for (const auto& active : actives) {
        if (!fridge.has_stage(active.stage)) {
            throw validation_error("architecture '" + name +
                                   "' references unknown stage in active '" + active.name + "'");
        }
    }
    for (const auto& att : attenuation_plan) {
        if (!fridge.has_stage(att.stage)) {
            throw validation_error("architecture '" + name +
                                   "' references unknown stage in attenuator");
        }
    }
    if (!(lines_share_factor >= 1.0)) {
        throw validation_error("lines_share_factor must be >= 1");
    }
    if (front_end) front_end->validate();
    if (amplifier) amplifier->validate();
}

const std::vector<std::string>& builtin_architecture_names() {
    static const std::vector<std::string> names{"conventional", "cryo_cmos", "deep_photonic",
                                                "proposed"};
    return names;
}

Architecture builtin_architecture(const std::string& name, const FridgeModel& fridge,
                                  const MaterialLibrary& materials) {
    Architecture arch;
    if (name == "conventional") {
        arch = make_conventional(fridge);
    } else if (name == "cryo_cmos") {
        arch = make_cryo_cmos(fridge);
    } else if (name == "deep_photonic") {
        arch = make_deep_photonic(fridge);
    } else if (name == "proposed") {
        arch = make_proposed(fridge);
    } else {
        throw validation_error("unknown builtin architecture '" + name + "'");
    }
    arch.validate(fridge);
    // Fail fast if a conduction table cannot cover a link.
    for (const auto& link : arch.links) conduction_load(link, fridge, materials);
    return arch;
}

PerQubitPower per_qubit_power(const Architecture& arch, const FridgeModel& fridge, double duty,
                              const MaterialLibrary& materials) {
    arch.validate(fridge);
    const auto rows = stage_heat_report(fridge, arch.links, arch.actives, duty, materials);
    const double cooling_4k = fridge.stage("4K").cooling_power_w;

    PerQubitPower result;
    for (const auto& row : rows) {
        StagePowerBreakdown b;
        b.stage = row.stage;
        b.active_w = row.active_w / arch.lines_share_factor;
        b.passive_w = row.passive_w / arch.lines_share_factor;
        const double cooling = fridge.stage(row.stage).cooling_power_w;
        b.active_4k_equivalent_w = scale_to_4k(b.active_w, cooling, cooling_4k);
        b.passive_4k_equivalent_w = scale_to_4k(b.passive_w, cooling, cooling_4k);
        result.active_w += b.active_4k_equivalent_w;
        result.passive_w += b.passive_4k_equivalent_w;
        result.breakdown.push_back(b);
    }
    return result;
}

CapacityReport capacity(const Architecture& arch, const FridgeModel& fridge, double duty,
                        const MaterialLibrary& materials) {
    arch.validate(fridge);
    const auto rows = stage_heat_report(fridge, arch.links, arch.actives, duty, materials);

    CapacityReport report;
    report.architecture = arch.name;
    report.overall_max_lines = kInf;
    for (const auto& row : rows) {
        StageCapacity cap;
        cap.stage = row.stage;
        cap.temperature_k = row.temperature_k;
        cap.cooling_w = row.cooling_w;
        cap.per_line_passive_w = row.passive_w / arch.lines_share_factor;
        cap.per_line_active_w = row.active_w / arch.lines_share_factor;
        const double per_line = cap.per_line_passive_w + cap.per_line_active_w;
        if (per_line > 0.0 && !std::isinf(row.cooling_w)) {
            cap.headroom_ratio = row.cooling_w / per_line;
            cap.max_lines = std::floor(cap.headroom_ratio);
            if (cap.max_lines < report.overall_max_lines) {
                report.overall_max_lines = cap.max_lines;
                report.bottleneck_stage = cap.stage;
            }
        } else {
            cap.headroom_ratio = kInf;
            cap.max_lines = kInf;
        }
        report.stages.push_back(cap);
    }
    report.per_qubit = per_qubit_power(arch, fridge, duty, materials);
    return report;
}

ComparisonTable compare_architectures(const std::vector<Architecture>& archs,
                                      const FridgeModel& fridge, double duty,
                                      const MaterialLibrary& materials) {
    ComparisonTable table;
    table.reports.reserve(archs.size());
    for (const auto& arch : archs) {
        table.reports.push_back(capacity(arch, fridge, duty, materials));
    }
    return table;
}

}  // namespace cryowire
