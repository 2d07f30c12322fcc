#pragma once

#include "ddm/noise_model.hpp"
#include "ddm/pulse_sequences.hpp"
#include "ddm/quadrature.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ddm {

inline constexpr std::string_view kToolVersion = "0.1.0";

enum class Quantity { R, Omega, Xi2, Xi2Numeric, Purity, Qfi, Eta, EtaClosed };

std::string_view to_string(Quantity q);
Quantity parse_quantity(std::string_view name);

/// Rejected configuration keys or values.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct SweepConfig {
    int n_atoms = 200;
    double alpha = 0.1;
    double omega_c = 1.0;
    double temperature = 1.0;
    SequenceFamily family = SequenceFamily::UDD;
    int pulses = 50;
    double t_min = 0.0;
    double t_max = 20.0;
    int points = 400;
    std::vector<Quantity> quantities{Quantity::R, Quantity::Omega, Quantity::Xi2};
    double chi = 0.0;
    double lambda = 1.0;
    bool zero_decoherence = false; // force R = 0 (ideal twisting)
    QuadratureSpec quadrature;

    NoiseSpec noise() const { return {alpha, omega_c, temperature}; }
    std::vector<double> time_grid() const;
    void validate() const;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Keys accepted by apply_setting, in canonical order.
const std::vector<std::string>& sweep_config_keys();

void apply_setting(SweepConfig& config, const std::string& key, const std::string& value);

/// Flat `key = value` listing of every field; parse_sweep_config inverts it.
KeyValues to_key_values(const SweepConfig& config);

/// Parses the flat config text: one `key = value` per line, `#` comments,
/// optional double quotes around values.
KeyValues parse_key_values(std::string_view text);
SweepConfig parse_sweep_config(std::string_view text);

/// Tabular output: the first column is the abscissa (t or N).
struct Dataset {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;
    KeyValues metadata;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    const std::vector<double>& column(std::string_view name) const;
    bool has_column(std::string_view name) const;
    void add_column(std::string name, std::vector<double> values);
};

/// Evaluates the requested quantities on the time grid.
Dataset run_sweep(const SweepConfig& config);

/// One point of a sweep, exposed for callers that need a single time.
std::map<Quantity, double> evaluate_point(const SweepConfig& config, double t);

struct SqueezingOptimum {
    double t = 0.0;
    double xi2 = 1.0;
};

/// min over t in [t_min, t_max] of the analytic squeezing: coarse scan with
/// config.points samples then golden-section refinement.
SqueezingOptimum best_squeezing(const SweepConfig& config);

/// eta (mixed-state numeric route) and the pure-state closed form versus atom
/// number at one time.
Dataset eta_vs_atoms(const SweepConfig& config, const std::vector<int>& atoms, double t);

inline const std::vector<std::string> kFigureIds = {"1", "2a", "2b", "3a", "3b", "4", "5a", "5b"};

/// Preset reproductions. `overrides` may hold any sweep key plus the
/// figure-level lists figure.alphas, figure.temperatures, figure.pulses,
/// figure.atoms and the scalar figure.time.
Dataset run_figure(const std::string& figure_id, const KeyValues& overrides = {});

} // namespace ddm
