#pragma once

#include "cryowire/catalog.hpp"
#include "cryowire/optimizer.hpp"

#include <optional>
#include <string>
#include <vector>

namespace cryowire {

/// A physical-quantity unit family. Every physical value in a scenario file
/// is a string with an explicit unit ("1.5 W", "20 dB", "6 GHz"); bare
/// numbers are rejected for all but dimensionless fields.
enum class UnitFamily {
    power,        // W (SI prefixes) or dBm
    temperature,  // K
    frequency,    // Hz
    current,      // A
    voltage,      // V
    impedance,    // ohm
    attenuation,  // dB
    rin,          // dB/Hz
    length,       // m
    area,         // m^2
    responsivity, // A/W
    current_asd,  // A/sqrtHz
};

/// Parse "<number> <unit>" into the family's SI base value. Throws
/// validation_error on a missing unit, an unknown unit, or a family
/// mismatch. "inf" is accepted as the number.
double parse_quantity(const std::string& text, UnitFamily family);

struct SweepSpec {
    double photocurrent_min_a = 0.0;
    double photocurrent_max_a = 0.0;
    int points = 0;
    std::vector<double> nf_values_db;
};

struct AttenuationOptimizeSpec {
    std::vector<std::string> stages_allowed;
    double grid_step_db = 1.0;
};

struct OptimizeSpec {
    std::optional<AttenuationOptimizeSpec> attenuation;
    bool photocurrent = false;
};

/// One compare entry: a builtin name or an inline architecture definition.
struct ArchitectureRef {
    std::optional<std::string> builtin_name;
    std::optional<Architecture> inline_arch;
};

struct CompareSpec {
    std::vector<ArchitectureRef> architectures;
};

/// A fully validated scenario. Parsing rejects unknown keys (with the
/// offending key path), unit-less physical quantities, and invariant
/// violations; a top-level "architecture" builtin reference expands to
/// explicit links/actives/front-end fields.
struct ScenarioConfig {
    FridgeModel fridge = FridgeModel::bluefors_xld400();
    MaterialLibrary materials = MaterialLibrary::bundled();
    std::optional<std::string> materials_file;

    std::vector<ThermalLink> links;
    std::vector<ActiveComponent> actives;
    std::vector<StageAttenuator> attenuators;
    std::optional<PhotonicFrontEnd> front_end;
    std::optional<CryoAmplifier> amplifier;
    double lines_share_factor = 1.0;

    Frequency signal_frequency = Frequency::from_ghz(6.0);
    double impedance_ohm = 50.0;
    std::optional<PowerLevel> power_at_qubit;

    std::optional<NoiseTarget> target;
    double duty = 0.33;

    std::optional<SweepSpec> sweep;
    std::optional<OptimizeSpec> optimize;
    std::optional<CompareSpec> compare;

    static ScenarioConfig parse_text(const std::string& json_text);
    static ScenarioConfig parse_file(const std::string& path);

    /// The scenario links/actives/attenuators/front end as an Architecture.
    Architecture as_architecture(const std::string& name) const;

    /// Resolve compare entries to concrete architectures.
    std::vector<Architecture> resolve_compare() const;

    /// Canonical serialization: fixed key order, shortest-round-trip
    /// quantity strings. parse(dump(x)) dumps back to the same bytes.
    std::string dump_string() const;

    /// SHA-256 of the canonical serialization. Two configs describing the
    /// same scenario (e.g. a builtin reference and its explicit dump) share
    /// a digest.
    std::string digest() const;
};

/// Scenario config for a builtin architecture over the default fridge, as
/// emitted by `dump-builtin`.
ScenarioConfig builtin_scenario(const std::string& builtin_name);

}  // namespace cryowire
