#include "cryowire/config.hpp"

#include "cryowire/sha256.hpp"

#include <json.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace cryowire {

using nlohmann::json;
using nlohmann::ordered_json;

namespace {

struct UnitDef {
    const char* token;
    double scale;
};

const std::vector<UnitDef>& units_for(UnitFamily family) {
    static const std::vector<UnitDef> power{{"W", 1.0},    {"mW", 1e-3}, {"uW", 1e-6},
                                            {"nW", 1e-9},  {"pW", 1e-12}, {"kW", 1e3}};
    static const std::vector<UnitDef> temperature{{"K", 1.0}, {"mK", 1e-3}, {"uK", 1e-6}};
    static const std::vector<UnitDef> frequency{
        {"Hz", 1.0}, {"kHz", 1e3}, {"MHz", 1e6}, {"GHz", 1e9}};
    static const std::vector<UnitDef> current{
        {"A", 1.0}, {"mA", 1e-3}, {"uA", 1e-6}, {"nA", 1e-9}, {"pA", 1e-12}};
    static const std::vector<UnitDef> voltage{{"V", 1.0}, {"mV", 1e-3}};
    static const std::vector<UnitDef> impedance{{"ohm", 1.0}, {"Ohm", 1.0}, {"kohm", 1e3}};
    static const std::vector<UnitDef> attenuation{{"dB", 1.0}};
    static const std::vector<UnitDef> rin{{"dB/Hz", 1.0}};
    static const std::vector<UnitDef> length{
        {"m", 1.0}, {"cm", 1e-2}, {"mm", 1e-3}, {"um", 1e-6}};
    static const std::vector<UnitDef> area{{"m^2", 1.0},    {"m2", 1.0},
                                           {"mm^2", 1e-6},  {"mm2", 1e-6},
                                           {"um^2", 1e-12}, {"um2", 1e-12}};
    static const std::vector<UnitDef> responsivity{{"A/W", 1.0}};
    static const std::vector<UnitDef> current_asd{{"A/sqrtHz", 1.0},
                                                  {"mA/sqrtHz", 1e-3},
                                                  {"uA/sqrtHz", 1e-6},
                                                  {"nA/sqrtHz", 1e-9},
                                                  {"pA/sqrtHz", 1e-12},
                                                  {"fA/sqrtHz", 1e-15}};
    switch (family) {
        case UnitFamily::power: return power;
        case UnitFamily::temperature: return temperature;
        case UnitFamily::frequency: return frequency;
        case UnitFamily::current: return current;
        case UnitFamily::voltage: return voltage;
        case UnitFamily::impedance: return impedance;
        case UnitFamily::attenuation: return attenuation;
        case UnitFamily::rin: return rin;
        case UnitFamily::length: return length;
        case UnitFamily::area: return area;
        case UnitFamily::responsivity: return responsivity;
        case UnitFamily::current_asd: return current_asd;
    }
    throw validation_error("invalid unit family");
}

const char* family_name(UnitFamily family) {
    switch (family) {
        case UnitFamily::power: return "power (W or dBm)";
        case UnitFamily::temperature: return "temperature (K)";
        case UnitFamily::frequency: return "frequency (Hz)";
        case UnitFamily::current: return "current (A)";
        case UnitFamily::voltage: return "voltage (V)";
        case UnitFamily::impedance: return "impedance (ohm)";
        case UnitFamily::attenuation: return "attenuation (dB)";
        case UnitFamily::rin: return "RIN (dB/Hz)";
        case UnitFamily::length: return "length (m)";
        case UnitFamily::area: return "area (m^2)";
        case UnitFamily::responsivity: return "responsivity (A/W)";
        case UnitFamily::current_asd: return "current ASD (A/sqrtHz)";
    }
    return "?";
}

}  // namespace

double parse_quantity(const std::string& text, UnitFamily family) {
    const std::size_t split = text.find_first_not_of("+-0123456789.eEinfINF");
    std::string num_str = text.substr(0, split == std::string::npos ? text.size() : split);
    std::string unit = split == std::string::npos ? "" : text.substr(split);
    while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.front()))) {
        unit.erase(unit.begin());
    }
    while (!unit.empty() && std::isspace(static_cast<unsigned char>(unit.back()))) {
        unit.pop_back();
    }
    if (num_str.empty() || unit.empty()) {
        throw validation_error("'" + text + "' must be \"<number> <unit>\" with an explicit " +
                               std::string(family_name(family)) + " unit");
    }
    double value = 0.0;
    if (num_str == "inf" || num_str == "+inf") {
        value = std::numeric_limits<double>::infinity();
    } else if (num_str == "-inf") {
        value = -std::numeric_limits<double>::infinity();
    } else {
        std::size_t consumed = 0;
        try {
            value = std::stod(num_str, &consumed);
        } catch (const std::exception&) {
            throw validation_error("cannot parse number in quantity '" + text + "'");
        }
        if (consumed != num_str.size()) {
            throw validation_error("cannot parse number in quantity '" + text + "'");
        }
    }
    if (family == UnitFamily::power && unit == "dBm") {
        return PowerLevel::from_dbm(value).watts();
    }
    for (const UnitDef& def : units_for(family)) {
        if (unit == def.token) return value * def.scale;
    }
    throw validation_error("unit '" + unit + "' in '" + text + "' is not a valid " +
                           family_name(family) + " unit");
}

namespace {

// ---- schema helpers -------------------------------------------------------

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw validation_error(path + ": " + what);
}

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) {
            if (key == a) {
                ok = true;
                break;
            }
        }
        if (!ok) fail(path + "." + key, "unknown key");
    }
}

double get_quantity(const json& obj, const std::string& path, const char* key, UnitFamily family) {
    const json& v = obj.at(key);
    if (!v.is_string()) {
        fail(path + "." + key, "physical quantities must be unit-tagged strings, e.g. \"1.5 W\"");
    }
    try {
        return parse_quantity(v.get<std::string>(), family);
    } catch (const validation_error& e) {
        fail(path + "." + key, e.what());
    }
}

double get_quantity_or(const json& obj, const std::string& path, const char* key,
                       UnitFamily family, double fallback) {
    if (!obj.contains(key)) return fallback;
    return get_quantity(obj, path, key, family);
}

double get_number(const json& obj, const std::string& path, const char* key) {
    const json& v = obj.at(key);
    if (!v.is_number()) fail(path + "." + key, "expected a plain number (dimensionless)");
    return v.get<double>();
}

std::string get_string(const json& obj, const std::string& path, const char* key) {
    const json& v = obj.at(key);
    if (!v.is_string()) fail(path + "." + key, "expected a string");
    return v.get<std::string>();
}

void require(const json& obj, const std::string& path, const char* key) {
    if (!obj.contains(key)) fail(path, std::string("missing required key '") + key + "'");
}

// ---- section parsers ------------------------------------------------------

FridgeModel parse_fridge(const json& j, const std::string& path) {
    check_keys(j, path, {"stages"});
    require(j, path, "stages");
    const json& stages = j.at("stages");
    if (!stages.is_array()) fail(path + ".stages", "expected an array");
    std::vector<Stage> out;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const std::string spath = path + ".stages[" + std::to_string(i) + "]";
        const json& s = stages[i];
        check_keys(s, spath, {"name", "temperature", "cooling_power"});
        require(s, spath, "name");
        require(s, spath, "temperature");
        require(s, spath, "cooling_power");
        out.push_back({get_string(s, spath, "name"),
                       get_quantity(s, spath, "temperature", UnitFamily::temperature),
                       get_quantity(s, spath, "cooling_power", UnitFamily::power)});
    }
    try {
        return FridgeModel(std::move(out));
    } catch (const validation_error& e) {
        fail(path, e.what());
    }
}

MaterialLibrary parse_materials(const json& j, const std::string& path,
                                std::optional<std::string>* file_out) {
    check_keys(j, path, {"file", "inline"});
    if (j.contains("file") && j.contains("inline")) {
        fail(path, "'file' and 'inline' are mutually exclusive");
    }
    if (j.contains("file")) {
        const std::string file = get_string(j, path, "file");
        *file_out = file;
        try {
            return MaterialLibrary::from_csv_file(file);
        } catch (const validation_error& e) {
            fail(path + ".file", e.what());
        }
    }
    if (j.contains("inline")) {
        const json& rows = j.at("inline");
        if (!rows.is_array()) fail(path + ".inline", "expected an array");
        std::map<std::string, std::vector<std::pair<double, double>>> tables;
        std::vector<std::string> order;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const std::string rpath = path + ".inline[" + std::to_string(i) + "]";
            const json& r = rows[i];
            check_keys(r, rpath, {"material", "T", "k"});
            require(r, rpath, "material");
            require(r, rpath, "T");
            require(r, rpath, "k");
            const std::string material = get_string(r, rpath, "material");
            const double t = get_quantity(r, rpath, "T", UnitFamily::temperature);
            const json& kv = r.at("k");
            if (!kv.is_string()) fail(rpath + ".k", "expected string like \"1.38 W/m/K\"");
            std::string k_str = kv.get<std::string>();
            const std::string suffix = " W/m/K";
            if (k_str.size() <= suffix.size() ||
                k_str.compare(k_str.size() - suffix.size(), suffix.size(), suffix) != 0) {
                fail(rpath + ".k", "conductivity must end in \"W/m/K\"");
            }
            double k = 0.0;
            try {
                k = std::stod(k_str.substr(0, k_str.size() - suffix.size()));
            } catch (const std::exception&) {
                fail(rpath + ".k", "cannot parse conductivity number");
            }
            if (tables.find(material) == tables.end()) order.push_back(material);
            tables[material].emplace_back(t, k);
        }
        MaterialLibrary lib;
        for (const auto& name : order) {
            try {
                lib.add(ConductivityModel(name, tables[name]));
            } catch (const validation_error& e) {
                fail(path + ".inline", e.what());
            }
        }
        return lib;
    }
    fail(path, "needs either 'file' or 'inline'");
}

ThermalLink parse_link(const json& j, const std::string& path) {
    check_keys(j, path,
               {"kind", "name", "hot_stage", "cold_stage", "length", "layers",
                "fixed_load_override"});
    require(j, path, "kind");
    require(j, path, "hot_stage");
    require(j, path, "cold_stage");
    ThermalLink link;
    try {
        link.kind = link_kind_from_string(get_string(j, path, "kind"));
    } catch (const validation_error& e) {
        fail(path + ".kind", e.what());
    }
    link.name = j.contains("name") ? get_string(j, path, "name") : to_string(link.kind);
    link.hot_stage = get_string(j, path, "hot_stage");
    link.cold_stage = get_string(j, path, "cold_stage");
    if (j.contains("fixed_load_override")) {
        link.fixed_load_override_w =
            get_quantity(j, path, "fixed_load_override", UnitFamily::power);
    }
    if (!j.contains("length") && !link.fixed_load_override_w) {
        fail(path, "link needs 'length' unless 'fixed_load_override' is set");
    }
    link.length_m = get_quantity_or(j, path, "length", UnitFamily::length, 1.0);
    if (j.contains("layers")) {
        const json& layers = j.at("layers");
        if (!layers.is_array()) fail(path + ".layers", "expected an array");
        for (std::size_t i = 0; i < layers.size(); ++i) {
            const std::string lpath = path + ".layers[" + std::to_string(i) + "]";
            const json& l = layers[i];
            check_keys(l, lpath, {"material", "cross_section"});
            require(l, lpath, "material");
            require(l, lpath, "cross_section");
            link.layers.push_back({get_string(l, lpath, "material"),
                                   get_quantity(l, lpath, "cross_section", UnitFamily::area)});
        }
    }
    if (!link.fixed_load_override_w && link.layers.empty()) {
        fail(path, "link needs 'layers' unless 'fixed_load_override' is set");
    }
    return link;
}

ActiveComponent parse_active(const json& j, const std::string& path) {
    check_keys(j, path, {"name", "stage", "dissipation", "duty_cycled"});
    require(j, path, "name");
    require(j, path, "stage");
    require(j, path, "dissipation");
    ActiveComponent a;
    a.name = get_string(j, path, "name");
    a.stage = get_string(j, path, "stage");
    a.dissipation_w = get_quantity(j, path, "dissipation", UnitFamily::power);
    if (j.contains("duty_cycled")) {
        const json& d = j.at("duty_cycled");
        if (!d.is_boolean()) fail(path + ".duty_cycled", "expected a boolean");
        a.duty_cycled = d.get<bool>();
    }
    return a;
}

StageAttenuator parse_attenuator(const json& j, const std::string& path,
                                 const FridgeModel& fridge) {
    check_keys(j, path, {"stage", "attenuation", "physical_temperature"});
    require(j, path, "stage");
    require(j, path, "attenuation");
    StageAttenuator att;
    att.stage = get_string(j, path, "stage");
    if (!fridge.has_stage(att.stage)) fail(path + ".stage", "unknown stage '" + att.stage + "'");
    try {
        att.attenuation =
            AttenuationFactor::from_db(get_quantity(j, path, "attenuation", UnitFamily::attenuation));
    } catch (const range_error& e) {
        fail(path + ".attenuation", e.what());
    }
    att.physical_temperature_k =
        get_quantity_or(j, path, "physical_temperature", UnitFamily::temperature,
                        fridge.stage(att.stage).temperature_k);
    return att;
}

PhotonicFrontEnd parse_front_end(const json& j, const std::string& path) {
    check_keys(j, path,
               {"laser_rin", "v_pi", "drive_temperature", "drive_impedance", "pd_responsivity",
                "pd_bandwidth", "mean_photocurrent"});
    PhotonicFrontEnd f;
    f.laser_rin_db_per_hz = get_quantity_or(j, path, "laser_rin", UnitFamily::rin,
                                            f.laser_rin_db_per_hz);
    f.v_pi_volt = get_quantity_or(j, path, "v_pi", UnitFamily::voltage, f.v_pi_volt);
    f.drive_temperature_k = get_quantity_or(j, path, "drive_temperature", UnitFamily::temperature,
                                            f.drive_temperature_k);
    f.drive_impedance_ohm = get_quantity_or(j, path, "drive_impedance", UnitFamily::impedance,
                                            f.drive_impedance_ohm);
    f.pd_responsivity_a_per_w = get_quantity_or(j, path, "pd_responsivity",
                                                UnitFamily::responsivity,
                                                f.pd_responsivity_a_per_w);
    f.pd_bandwidth_hz = get_quantity_or(j, path, "pd_bandwidth", UnitFamily::frequency,
                                        f.pd_bandwidth_hz);
    require(j, path, "mean_photocurrent");
    f.mean_photocurrent_a = get_quantity(j, path, "mean_photocurrent", UnitFamily::current);
    try {
        f.validate();
    } catch (const validation_error& e) {
        fail(path, e.what());
    }
    return f;
}

CryoAmplifier parse_amplifier(const json& j, const std::string& path) {
    check_keys(j, path, {"noise_figure", "transimpedance_gain", "dissipation", "ambient"});
    CryoAmplifier a;
    a.noise_figure_db = get_quantity_or(j, path, "noise_figure", UnitFamily::attenuation,
                                        a.noise_figure_db);
    a.transimpedance_gain_ohm = get_quantity_or(j, path, "transimpedance_gain",
                                                UnitFamily::impedance, a.transimpedance_gain_ohm);
    a.dissipation_w = get_quantity_or(j, path, "dissipation", UnitFamily::power, a.dissipation_w);
    a.ambient_k = get_quantity_or(j, path, "ambient", UnitFamily::temperature, a.ambient_k);
    try {
        a.validate();
    } catch (const std::exception& e) {
        fail(path, e.what());
    }
    return a;
}

NoiseTarget parse_target(const json& j, const std::string& path) {
    check_keys(j, path, {"max_occupation", "max_current_asd", "frequency"});
    const bool has_occ = j.contains("max_occupation");
    const bool has_asd = j.contains("max_current_asd");
    if (has_occ == has_asd) {
        fail(path, "exactly one of 'max_occupation' and 'max_current_asd' must be set");
    }
    Frequency f = Frequency::from_ghz(6.0);
    if (j.contains("frequency")) {
        f = Frequency::from_hz(get_quantity(j, path, "frequency", UnitFamily::frequency));
    }
    try {
        if (has_occ) return NoiseTarget::occupation(get_number(j, path, "max_occupation"), f);
        return NoiseTarget::current_asd(
            get_quantity(j, path, "max_current_asd", UnitFamily::current_asd), f);
    } catch (const validation_error& e) {
        fail(path, e.what());
    }
}

SweepSpec parse_sweep(const json& j, const std::string& path) {
    check_keys(j, path, {"photocurrent_min", "photocurrent_max", "points", "nf_values"});
    require(j, path, "photocurrent_min");
    require(j, path, "photocurrent_max");
    require(j, path, "points");
    require(j, path, "nf_values");
    SweepSpec s;
    s.photocurrent_min_a = get_quantity(j, path, "photocurrent_min", UnitFamily::current);
    s.photocurrent_max_a = get_quantity(j, path, "photocurrent_max", UnitFamily::current);
    const double pts = get_number(j, path, "points");
    if (pts != std::floor(pts) || pts < 2) fail(path + ".points", "expected an integer >= 2");
    s.points = static_cast<int>(pts);
    const json& nfs = j.at("nf_values");
    if (!nfs.is_array() || nfs.empty()) fail(path + ".nf_values", "expected a non-empty array");
    for (std::size_t i = 0; i < nfs.size(); ++i) {
        const json& v = nfs[i];
        if (!v.is_string()) {
            fail(path + ".nf_values[" + std::to_string(i) + "]", "expected \"<number> dB\"");
        }
        s.nf_values_db.push_back(parse_quantity(v.get<std::string>(), UnitFamily::attenuation));
    }
    return s;
}

OptimizeSpec parse_optimize(const json& j, const std::string& path) {
    check_keys(j, path, {"attenuation", "photocurrent"});
    OptimizeSpec spec;
    if (j.contains("attenuation")) {
        const json& a = j.at("attenuation");
        const std::string apath = path + ".attenuation";
        check_keys(a, apath, {"stages_allowed", "grid_step"});
        require(a, apath, "stages_allowed");
        AttenuationOptimizeSpec aspec;
        const json& stages = a.at("stages_allowed");
        if (!stages.is_array() || stages.empty()) {
            fail(apath + ".stages_allowed", "expected a non-empty array of stage names");
        }
        for (const auto& s : stages) {
            if (!s.is_string()) fail(apath + ".stages_allowed", "expected stage-name strings");
            aspec.stages_allowed.push_back(s.get<std::string>());
        }
        aspec.grid_step_db = get_quantity_or(a, apath, "grid_step", UnitFamily::attenuation, 1.0);
        spec.attenuation = aspec;
    }
    if (j.contains("photocurrent")) {
        const json& p = j.at("photocurrent");
        check_keys(p, path + ".photocurrent", {});
        spec.photocurrent = true;
    }
    return spec;
}

Architecture parse_architecture_body(const json& j, const std::string& path,
                                     const FridgeModel& fridge) {
    check_keys(j, path,
               {"name", "links", "actives", "attenuators", "front_end", "amplifier",
                "lines_share_factor"});
    require(j, path, "name");
    Architecture arch;
    arch.name = get_string(j, path, "name");
    if (j.contains("links")) {
        const json& links = j.at("links");
        if (!links.is_array()) fail(path + ".links", "expected an array");
        for (std::size_t i = 0; i < links.size(); ++i) {
            arch.links.push_back(parse_link(links[i], path + ".links[" + std::to_string(i) + "]"));
        }
    }
    if (j.contains("actives")) {
        const json& actives = j.at("actives");
        if (!actives.is_array()) fail(path + ".actives", "expected an array");
        for (std::size_t i = 0; i < actives.size(); ++i) {
            arch.actives.push_back(
                parse_active(actives[i], path + ".actives[" + std::to_string(i) + "]"));
        }
    }
    if (j.contains("attenuators")) {
        const json& atts = j.at("attenuators");
        if (!atts.is_array()) fail(path + ".attenuators", "expected an array");
        for (std::size_t i = 0; i < atts.size(); ++i) {
            arch.attenuation_plan.push_back(parse_attenuator(
                atts[i], path + ".attenuators[" + std::to_string(i) + "]", fridge));
        }
    }
    if (j.contains("front_end")) {
        arch.front_end = parse_front_end(j.at("front_end"), path + ".front_end");
    }
    if (j.contains("amplifier")) {
        arch.amplifier = parse_amplifier(j.at("amplifier"), path + ".amplifier");
    }
    if (j.contains("lines_share_factor")) {
        arch.lines_share_factor = get_number(j, path, "lines_share_factor");
    }
    try {
        arch.validate(fridge);
    } catch (const validation_error& e) {
        fail(path, e.what());
    }
    return arch;
}

// ---- serialization --------------------------------------------------------

// Shortest decimal form that parses back to the same double.
std::string fmt_full(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string quantity_str(double v, const char* unit) { return fmt_full(v) + " " + unit; }

ordered_json dump_link(const ThermalLink& link) {
    ordered_json j;
    j["kind"] = to_string(link.kind);
    j["name"] = link.name;
    j["hot_stage"] = link.hot_stage;
    j["cold_stage"] = link.cold_stage;
    j["length"] = quantity_str(link.length_m, "m");
    if (!link.layers.empty()) {
        ordered_json layers = ordered_json::array();
        for (const auto& l : link.layers) {
            layers.push_back({{"material", l.material},
                              {"cross_section", quantity_str(l.cross_section_m2, "m^2")}});
        }
        j["layers"] = layers;
    }
    if (link.fixed_load_override_w) {
        j["fixed_load_override"] = quantity_str(*link.fixed_load_override_w, "W");
    }
    return j;
}

ordered_json dump_scenario_body(const ScenarioConfig& c) {
    ordered_json j;
    {
        ordered_json stages = ordered_json::array();
        for (const Stage& s : c.fridge.stages()) {
            stages.push_back({{"name", s.name},
                              {"temperature", quantity_str(s.temperature_k, "K")},
                              {"cooling_power", quantity_str(s.cooling_power_w, "W")}});
        }
        j["fridge"] = ordered_json{{"stages", stages}};
    }
    if (c.materials_file) j["materials"] = ordered_json{{"file", *c.materials_file}};
    if (!c.links.empty()) {
        ordered_json links = ordered_json::array();
        for (const auto& l : c.links) links.push_back(dump_link(l));
        j["links"] = links;
    }
    if (!c.actives.empty()) {
        ordered_json actives = ordered_json::array();
        for (const auto& a : c.actives) {
            actives.push_back({{"name", a.name},
                               {"stage", a.stage},
                               {"dissipation", quantity_str(a.dissipation_w, "W")},
                               {"duty_cycled", a.duty_cycled}});
        }
        j["actives"] = actives;
    }
    if (!c.attenuators.empty()) {
        ordered_json atts = ordered_json::array();
        for (const auto& a : c.attenuators) {
            atts.push_back({{"stage", a.stage},
                            {"attenuation", quantity_str(a.attenuation.db(), "dB")},
                            {"physical_temperature",
                             quantity_str(a.physical_temperature_k, "K")}});
        }
        j["attenuators"] = atts;
    }
    if (c.front_end) {
        const PhotonicFrontEnd& f = *c.front_end;
        j["front_end"] = ordered_json{
            {"laser_rin", quantity_str(f.laser_rin_db_per_hz, "dB/Hz")},
            {"v_pi", quantity_str(f.v_pi_volt, "V")},
            {"drive_temperature", quantity_str(f.drive_temperature_k, "K")},
            {"drive_impedance", quantity_str(f.drive_impedance_ohm, "ohm")},
            {"pd_responsivity", quantity_str(f.pd_responsivity_a_per_w, "A/W")},
            {"pd_bandwidth", quantity_str(f.pd_bandwidth_hz, "Hz")},
            {"mean_photocurrent", quantity_str(f.mean_photocurrent_a, "A")},
        };
    }
    if (c.amplifier) {
        const CryoAmplifier& a = *c.amplifier;
        j["amplifier"] = ordered_json{
            {"noise_figure", quantity_str(a.noise_figure_db, "dB")},
            {"transimpedance_gain", quantity_str(a.transimpedance_gain_ohm, "ohm")},
            {"dissipation", quantity_str(a.dissipation_w, "W")},
            {"ambient", quantity_str(a.ambient_k, "K")},
        };
    }
    if (c.lines_share_factor != 1.0) j["lines_share_factor"] = c.lines_share_factor;
    {
        ordered_json signal;
        signal["frequency"] = quantity_str(c.signal_frequency.hz(), "Hz");
        signal["impedance"] = quantity_str(c.impedance_ohm, "ohm");
        if (c.power_at_qubit) {
            signal["power_at_qubit"] = quantity_str(c.power_at_qubit->watts(), "W");
        }
        j["signal"] = signal;
    }
    if (c.target) {
        ordered_json t;
        if (c.target->is_occupation()) {
            t["max_occupation"] = c.target->max_occupation();
        } else {
            t["max_current_asd"] = quantity_str(c.target->max_current_asd(), "A/sqrtHz");
        }
        t["frequency"] = quantity_str(c.target->frequency().hz(), "Hz");
        j["target"] = t;
    }
    j["duty"] = c.duty;
    if (c.sweep) {
        j["sweep"] = ordered_json{
            {"photocurrent_min", quantity_str(c.sweep->photocurrent_min_a, "A")},
            {"photocurrent_max", quantity_str(c.sweep->photocurrent_max_a, "A")},
            {"points", c.sweep->points},
            {"nf_values", [&] {
                 ordered_json arr = ordered_json::array();
                 for (double nf : c.sweep->nf_values_db) arr.push_back(quantity_str(nf, "dB"));
                 return arr;
             }()},
        };
    }
    if (c.optimize) {
        ordered_json o;
        if (c.optimize->attenuation) {
            o["attenuation"] = ordered_json{
                {"stages_allowed", c.optimize->attenuation->stages_allowed},
                {"grid_step", quantity_str(c.optimize->attenuation->grid_step_db, "dB")},
            };
        }
        if (c.optimize->photocurrent) o["photocurrent"] = ordered_json::object();
        j["optimize"] = o;
    }
    if (c.compare) {
        ordered_json arr = ordered_json::array();
        for (const auto& ref : c.compare->architectures) {
            if (ref.builtin_name) {
                arr.push_back(*ref.builtin_name);
            } else {
                const Architecture& a = *ref.inline_arch;
                ordered_json aj;
                aj["name"] = a.name;
                if (!a.links.empty()) {
                    ordered_json links = ordered_json::array();
                    for (const auto& l : a.links) links.push_back(dump_link(l));
                    aj["links"] = links;
                }
                if (!a.actives.empty()) {
                    ordered_json actives = ordered_json::array();
                    for (const auto& ac : a.actives) {
                        actives.push_back({{"name", ac.name},
                                           {"stage", ac.stage},
                                           {"dissipation", quantity_str(ac.dissipation_w, "W")},
                                           {"duty_cycled", ac.duty_cycled}});
                    }
                    aj["actives"] = actives;
                }
                if (!a.attenuation_plan.empty()) {
                    ordered_json atts = ordered_json::array();
                    for (const auto& at : a.attenuation_plan) {
                        atts.push_back({{"stage", at.stage},
                                        {"attenuation", quantity_str(at.attenuation.db(), "dB")},
                                        {"physical_temperature",
                                         quantity_str(at.physical_temperature_k, "K")}});
                    }
                    aj["attenuators"] = atts;
                }
                if (a.front_end) {
                    const PhotonicFrontEnd& f = *a.front_end;
                    aj["front_end"] = ordered_json{
                        {"laser_rin", quantity_str(f.laser_rin_db_per_hz, "dB/Hz")},
                        {"v_pi", quantity_str(f.v_pi_volt, "V")},
                        {"drive_temperature", quantity_str(f.drive_temperature_k, "K")},
                        {"drive_impedance", quantity_str(f.drive_impedance_ohm, "ohm")},
                        {"pd_responsivity", quantity_str(f.pd_responsivity_a_per_w, "A/W")},
                        {"pd_bandwidth", quantity_str(f.pd_bandwidth_hz, "Hz")},
                        {"mean_photocurrent", quantity_str(f.mean_photocurrent_a, "A")},
                    };
                }
                if (a.amplifier) {
                    const CryoAmplifier& amp = *a.amplifier;
                    aj["amplifier"] = ordered_json{
                        {"noise_figure", quantity_str(amp.noise_figure_db, "dB")},
                        {"transimpedance_gain",
                         quantity_str(amp.transimpedance_gain_ohm, "ohm")},
                        {"dissipation", quantity_str(amp.dissipation_w, "W")},
                        {"ambient", quantity_str(amp.ambient_k, "K")},
                    };
                }
                if (a.lines_share_factor != 1.0) aj["lines_share_factor"] = a.lines_share_factor;
                arr.push_back(aj);
            }
        }
        j["compare"] = ordered_json{{"architectures", arr}};
    }
    return j;
}

}  // namespace

ScenarioConfig ScenarioConfig::parse_text(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::exception& e) {
        throw validation_error(std::string("config is not valid JSON: ") + e.what());
    }
    const std::string path = "config";
    check_keys(root, path,
               {"fridge", "materials", "architecture", "links", "actives", "attenuators",
                "front_end", "amplifier", "lines_share_factor", "signal", "target", "duty",
                "sweep", "optimize", "compare"});

    ScenarioConfig c;
    if (root.contains("fridge")) c.fridge = parse_fridge(root.at("fridge"), path + ".fridge");
    if (root.contains("materials")) {
        c.materials = parse_materials(root.at("materials"), path + ".materials",
                                      &c.materials_file);
    }

    if (root.contains("architecture")) {
        for (const char* clash : {"links", "actives", "attenuators", "front_end", "amplifier"}) {
            if (root.contains(clash)) {
                fail(path + ".architecture",
                     std::string("mutually exclusive with explicit '") + clash + "'");
            }
        }
        const std::string name = get_string(root, path, "architecture");
        Architecture arch;
        try {
            arch = builtin_architecture(name, c.fridge, c.materials);
        } catch (const validation_error& e) {
            fail(path + ".architecture", e.what());
        }
        c.links = arch.links;
        c.actives = arch.actives;
        c.attenuators = arch.attenuation_plan;
        c.front_end = arch.front_end;
        c.amplifier = arch.amplifier;
        c.lines_share_factor = arch.lines_share_factor;
    } else {
        if (root.contains("links")) {
            const json& links = root.at("links");
            if (!links.is_array()) fail(path + ".links", "expected an array");
            for (std::size_t i = 0; i < links.size(); ++i) {
                c.links.push_back(
                    parse_link(links[i], path + ".links[" + std::to_string(i) + "]"));
            }
        }
        if (root.contains("actives")) {
            const json& actives = root.at("actives");
            if (!actives.is_array()) fail(path + ".actives", "expected an array");
            for (std::size_t i = 0; i < actives.size(); ++i) {
                c.actives.push_back(
                    parse_active(actives[i], path + ".actives[" + std::to_string(i) + "]"));
            }
        }
        if (root.contains("attenuators")) {
            const json& atts = root.at("attenuators");
            if (!atts.is_array()) fail(path + ".attenuators", "expected an array");
            for (std::size_t i = 0; i < atts.size(); ++i) {
                c.attenuators.push_back(parse_attenuator(
                    atts[i], path + ".attenuators[" + std::to_string(i) + "]", c.fridge));
            }
        }
        if (root.contains("front_end")) {
            c.front_end = parse_front_end(root.at("front_end"), path + ".front_end");
        }
        if (root.contains("amplifier")) {
            c.amplifier = parse_amplifier(root.at("amplifier"), path + ".amplifier");
        }
        if (root.contains("lines_share_factor")) {
            c.lines_share_factor = get_number(root, path, "lines_share_factor");
            if (!(c.lines_share_factor >= 1.0)) {
                fail(path + ".lines_share_factor", "must be >= 1");
            }
        }
    }

    // Links and actives must reference fridge stages; attenuators already did.
    for (const auto& link : c.links) {
        if (!c.fridge.has_stage(link.hot_stage)) {
            fail(path + ".links", "unknown stage '" + link.hot_stage + "'");
        }
        if (!c.fridge.has_stage(link.cold_stage)) {
            fail(path + ".links", "unknown stage '" + link.cold_stage + "'");
        }
    }
    for (const auto& a : c.actives) {
        if (!c.fridge.has_stage(a.stage)) {
            fail(path + ".actives", "unknown stage '" + a.stage + "'");
        }
    }

    if (root.contains("signal")) {
        const json& signal = root.at("signal");
        const std::string spath = path + ".signal";
        check_keys(signal, spath, {"frequency", "impedance", "power_at_qubit"});
        if (signal.contains("frequency")) {
            c.signal_frequency =
                Frequency::from_hz(get_quantity(signal, spath, "frequency", UnitFamily::frequency));
        }
        if (signal.contains("impedance")) {
            c.impedance_ohm = get_quantity(signal, spath, "impedance", UnitFamily::impedance);
            if (!(c.impedance_ohm > 0.0)) fail(spath + ".impedance", "must be positive");
        }
        if (signal.contains("power_at_qubit")) {
            c.power_at_qubit = PowerLevel::from_watts(
                get_quantity(signal, spath, "power_at_qubit", UnitFamily::power));
        }
    }
    if (root.contains("target")) c.target = parse_target(root.at("target"), path + ".target");
    if (root.contains("duty")) {
        c.duty = get_number(root, path, "duty");
        if (!(c.duty > 0.0) || !(c.duty <= 1.0)) fail(path + ".duty", "must be in (0, 1]");
    }
    if (root.contains("sweep")) c.sweep = parse_sweep(root.at("sweep"), path + ".sweep");
    if (root.contains("optimize")) {
        c.optimize = parse_optimize(root.at("optimize"), path + ".optimize");
    }
    if (root.contains("compare")) {
        const json& cmp = root.at("compare");
        const std::string cpath = path + ".compare";
        check_keys(cmp, cpath, {"architectures"});
        require(cmp, cpath, "architectures");
        const json& archs = cmp.at("architectures");
        if (!archs.is_array() || archs.empty()) {
            fail(cpath + ".architectures", "expected a non-empty array");
        }
        CompareSpec spec;
        for (std::size_t i = 0; i < archs.size(); ++i) {
            const std::string apath = cpath + ".architectures[" + std::to_string(i) + "]";
            const json& entry = archs[i];
            ArchitectureRef ref;
            if (entry.is_string()) {
                ref.builtin_name = entry.get<std::string>();
                try {
                    builtin_architecture(*ref.builtin_name, c.fridge, c.materials);
                } catch (const validation_error& e) {
                    fail(apath, e.what());
                }
            } else if (entry.is_object()) {
                ref.inline_arch = parse_architecture_body(entry, apath, c.fridge);
            } else {
                fail(apath, "expected a builtin name or an architecture object");
            }
            spec.architectures.push_back(std::move(ref));
        }
        c.compare = spec;
    }
    return c;
}

ScenarioConfig ScenarioConfig::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

Architecture ScenarioConfig::as_architecture(const std::string& name) const {
    Architecture arch;
    arch.name = name;
    arch.links = links;
    arch.actives = actives;
    arch.attenuation_plan = attenuators;
    arch.front_end = front_end;
    arch.amplifier = amplifier;
    arch.lines_share_factor = lines_share_factor;
    arch.validate(fridge);
    return arch;
}

std::vector<Architecture> ScenarioConfig::resolve_compare() const {
    if (!compare) throw validation_error("config has no 'compare' section");
    std::vector<Architecture> out;
    for (const auto& ref : compare->architectures) {
        if (ref.builtin_name) {
            out.push_back(builtin_architecture(*ref.builtin_name, fridge, materials));
        } else {
            out.push_back(*ref.inline_arch);
        }
    }
    return out;
}

std::string ScenarioConfig::dump_string() const {
    return dump_scenario_body(*this).dump(2) + "\n";
}

std::string ScenarioConfig::digest() const { return sha256_hex(dump_string()); }

ScenarioConfig builtin_scenario(const std::string& builtin_name) {
    ScenarioConfig c;
    const Architecture arch =
        builtin_architecture(builtin_name, c.fridge, c.materials);
    c.links = arch.links;
    c.actives = arch.actives;
    c.attenuators = arch.attenuation_plan;
    c.front_end = arch.front_end;
    c.amplifier = arch.amplifier;
    c.lines_share_factor = arch.lines_share_factor;
    return c;
}

}  // namespace cryowire
