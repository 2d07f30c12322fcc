#include "ddm/experiments.hpp"

#include "ddm/error.hpp"
#include "ddm/parallel.hpp"
#include "ddm/qfi.hpp"
#include "ddm/spin_system.hpp"
#include "ddm/squeezing.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <sstream>

namespace ddm {

namespace {

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) throw ConfigError("key '" + key + "': not a number: '" + value + "'");
    return out;
}

int to_int(const std::string& key, const std::string& value) {
    int out = 0;
    const auto* end = value.data() + value.size();
    auto res = std::from_chars(value.data(), end, out);
    if (res.ec != std::errc() || res.ptr != end) throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
    return out;
}

bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError("key '" + key + "': expected true or false, got '" + value + "'");
}

std::vector<std::string> split_list(const std::string& value) {
    std::vector<std::string> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string join(const std::vector<std::string>& items) {
    std::string out;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ',';
        out += items[i];
    }
    return out;
}

std::string valid_key_list(const std::vector<std::string>& keys) {
    std::string out;
    for (const auto& k : keys) out += "\n  " + k;
    return out;
}

bool needs_state(const std::vector<Quantity>& qs) {
    for (Quantity q : qs)
        if (q == Quantity::Purity || q == Quantity::Qfi || q == Quantity::Eta || q == Quantity::Xi2Numeric) return true;
    return false;
}

bool needs_qfi(const std::vector<Quantity>& qs) {
    return std::find(qs.begin(), qs.end(), Quantity::Qfi) != qs.end() ||
           std::find(qs.begin(), qs.end(), Quantity::Eta) != qs.end();
}

DephasingRecord record_for(const SweepConfig& config, double t) {
    DephasingRecord rec = dephasing_record(config.noise(), config.family, config.pulses, t, config.quadrature);
    if (config.zero_decoherence) rec.r = 0.0;
    return rec;
}

std::map<Quantity, double> evaluate_with(const SweepConfig& config, const DephasingRecord& rec,
                                         const CollectiveState& css, const CollectiveOps& ops) {
    std::map<Quantity, double> out;
    const double theta = effective_twist(rec, config.chi);
    const bool want_state = needs_state(config.quantities);
    std::optional<CollectiveState> state;
    if (want_state) state.emplace(evolve(css, rec, config.lambda, config.chi));
    std::optional<QfiResult> qfi;
    if (needs_qfi(config.quantities)) qfi = qfi_max(c_matrix_mixed(*state, ops), config.n_atoms);

    for (Quantity q : config.quantities) {
        switch (q) {
        case Quantity::R: out[q] = rec.r; break;
        case Quantity::Omega: out[q] = rec.omega_twist; break;
        case Quantity::Xi2: out[q] = squeezing_analytic(config.n_atoms, theta, rec.r).xi2; break;
        case Quantity::Xi2Numeric: out[q] = squeezing_numeric(*state, ops).xi2; break;
        case Quantity::Purity: out[q] = purity(*state); break;
        case Quantity::Qfi: out[q] = qfi->f_max; break;
        case Quantity::Eta: out[q] = qfi->eta; break;
        case Quantity::EtaClosed: out[q] = eta_pure_closed(config.n_atoms, theta); break;
        }
    }
    return out;
}

const std::vector<std::string> kFigureKeys = {"figure.alphas", "figure.temperatures", "figure.pulses", "figure.atoms",
                                              "figure.time"};

std::string label_number(double v) { return shortest(v); }

} // namespace

std::string_view to_string(Quantity q) {
    switch (q) {
    case Quantity::R: return "R";
    case Quantity::Omega: return "Omega";
    case Quantity::Xi2: return "xi2";
    case Quantity::Xi2Numeric: return "xi2_numeric";
    case Quantity::Purity: return "purity";
    case Quantity::Qfi: return "qfi";
    case Quantity::Eta: return "eta";
    case Quantity::EtaClosed: return "eta_closed";
    }
    return "?";
}

Quantity parse_quantity(std::string_view name) {
    for (Quantity q : {Quantity::R, Quantity::Omega, Quantity::Xi2, Quantity::Xi2Numeric, Quantity::Purity,
                       Quantity::Qfi, Quantity::Eta, Quantity::EtaClosed})
        if (to_string(q) == name) return q;
    throw ConfigError("unknown quantity '" + std::string(name) +
                      "' (valid: R, Omega, xi2, xi2_numeric, purity, qfi, eta, eta_closed)");
}

std::vector<double> SweepConfig::time_grid() const {
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = t_min + (t_max - t_min) * i / (points - 1);
    grid.back() = t_max;
    return grid;
}

void SweepConfig::validate() const {
    if (n_atoms < 2) throw ConfigError("n_atoms must be >= 2");
    if (n_atoms > 1000) throw ConfigError("n_atoms above 1000 is not supported");
    try {
        noise().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (pulses < 0) throw ConfigError("sequence.n must be >= 0");
    if (family == SequenceFamily::Custom) throw ConfigError("sweeps need sequence.family free, pdd or udd");
    if (!(t_min >= 0.0) || !(t_max > t_min)) throw ConfigError("time grid needs 0 <= t_min < t_max");
    if (points < 2) throw ConfigError("time_grid.points must be >= 2");
    if (quantities.empty()) throw ConfigError("quantities must not be empty");
    try {
        quadrature.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("quadrature: ") + e.what());
    }
}

const std::vector<std::string>& sweep_config_keys() {
    static const std::vector<std::string> keys = {
        "n_atoms", "alpha", "omega_c", "temperature", "sequence.family", "sequence.n", "time_grid.t_min",
        "time_grid.t_max", "time_grid.points", "quantities", "chi", "lambda", "zero_decoherence",
        "quadrature.rel_tol", "quadrature.abs_floor", "quadrature.max_panels"};
    return keys;
}

void apply_setting(SweepConfig& c, const std::string& key, const std::string& value) {
    if (key == "n_atoms") c.n_atoms = to_int(key, value);
    else if (key == "alpha") c.alpha = to_double(key, value);
    else if (key == "omega_c") c.omega_c = to_double(key, value);
    else if (key == "temperature") c.temperature = to_double(key, value);
    else if (key == "sequence.family") {
        try {
            c.family = parse_family(value);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
    } else if (key == "sequence.n") c.pulses = to_int(key, value);
    else if (key == "time_grid.t_min") c.t_min = to_double(key, value);
    else if (key == "time_grid.t_max") c.t_max = to_double(key, value);
    else if (key == "time_grid.points") c.points = to_int(key, value);
    else if (key == "quantities") {
        c.quantities.clear();
        for (const auto& item : split_list(value)) c.quantities.push_back(parse_quantity(item));
    } else if (key == "chi") c.chi = to_double(key, value);
    else if (key == "lambda") c.lambda = to_double(key, value);
    else if (key == "zero_decoherence") c.zero_decoherence = to_bool(key, value);
    else if (key == "quadrature.rel_tol") c.quadrature.rel_tol = to_double(key, value);
    else if (key == "quadrature.abs_floor") c.quadrature.abs_floor = to_double(key, value);
    else if (key == "quadrature.max_panels") c.quadrature.max_panels = to_int(key, value);
    else throw ConfigError("unknown key '" + key + "'; valid keys are:" + valid_key_list(sweep_config_keys()));
}

KeyValues to_key_values(const SweepConfig& c) {
    std::vector<std::string> qs;
    for (Quantity q : c.quantities) qs.emplace_back(to_string(q));
    return {{"n_atoms", std::to_string(c.n_atoms)},
            {"alpha", shortest(c.alpha)},
            {"omega_c", shortest(c.omega_c)},
            {"temperature", shortest(c.temperature)},
            {"sequence.family", std::string(to_string(c.family))},
            {"sequence.n", std::to_string(c.pulses)},
            {"time_grid.t_min", shortest(c.t_min)},
            {"time_grid.t_max", shortest(c.t_max)},
            {"time_grid.points", std::to_string(c.points)},
            {"quantities", join(qs)},
            {"chi", shortest(c.chi)},
            {"lambda", shortest(c.lambda)},
            {"zero_decoherence", c.zero_decoherence ? "true" : "false"},
            {"quadrature.rel_tol", shortest(c.quadrature.rel_tol)},
            {"quadrature.abs_floor", shortest(c.quadrature.abs_floor)},
            {"quadrature.max_panels", std::to_string(c.quadrature.max_panels)}};
}

KeyValues parse_key_values(std::string_view text) {
    KeyValues out;
    std::istringstream in{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'key = value'");
        std::string key = trim(std::string_view(line).substr(0, eq));
        std::string value = trim(std::string_view(line).substr(eq + 1));
        if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
        if (key.empty()) throw ConfigError("line " + std::to_string(lineno) + ": empty key");
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

SweepConfig parse_sweep_config(std::string_view text) {
    SweepConfig c;
    for (const auto& [k, v] : parse_key_values(text)) apply_setting(c, k, v);
    c.validate();
    return c;
}

const std::vector<double>& Dataset::column(std::string_view name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return columns[i];
    throw std::out_of_range("no column named '" + std::string(name) + "'");
}

bool Dataset::has_column(std::string_view name) const {
    return std::find(names.begin(), names.end(), name) != names.end();
}

void Dataset::add_column(std::string name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) throw std::invalid_argument("column length mismatch");
    if (has_column(name)) throw std::invalid_argument("duplicate column '" + name + "'");
    names.push_back(std::move(name));
    columns.push_back(std::move(values));
}

std::map<Quantity, double> evaluate_point(const SweepConfig& config, double t) {
    config.validate();
    const CollectiveState css = css_state(config.n_atoms);
    const CollectiveOps ops = collective_ops(config.n_atoms);
    return evaluate_with(config, record_for(config, t), css, ops);
}

Dataset run_sweep(const SweepConfig& config) {
    config.validate();
    const std::vector<double> grid = config.time_grid();
    const bool want_state = needs_state(config.quantities);
    const CollectiveState css = want_state ? css_state(config.n_atoms) : css_state(2);
    const CollectiveOps ops = want_state ? collective_ops(config.n_atoms) : CollectiveOps{};

    std::vector<std::map<Quantity, double>> rows(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) {
        try {
            rows[i] = evaluate_with(config, record_for(config, grid[i]), css, ops);
        } catch (const NumericFailure& e) {
            throw NumericFailure("grid point " + std::to_string(i) + " (t = " + shortest(grid[i]) + "): " + e.what(),
                                 e.partial_value(), e.achieved_error());
        }
    });

    Dataset ds;
    ds.add_column("t", grid);
    for (Quantity q : config.quantities) {
        std::vector<double> col(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) col[i] = rows[i].at(q);
        ds.add_column(std::string(to_string(q)), std::move(col));
    }
    ds.metadata = to_key_values(config);
    ds.metadata.emplace_back("tool_version", std::string(kToolVersion));
    return ds;
}

SqueezingOptimum best_squeezing(const SweepConfig& config) {
    config.validate();
    const auto xi2_at = [&](double t) {
        const DephasingRecord rec = record_for(config, t);
        return squeezing_analytic(config.n_atoms, rec, config.chi).xi2;
    };
    // Coarse grid evaluated concurrently, refinement serially.
    const std::vector<double> grid = config.time_grid();
    std::vector<double> values(grid.size());
    parallel_for(grid.size(), [&](std::size_t i) { values[i] = xi2_at(grid[i]); });
    const auto best = static_cast<int>(std::min_element(values.begin(), values.end()) - values.begin());
    const int lo = std::max(0, best - 1), hi = std::min(config.points - 1, best + 1);
    if (lo == hi) return {grid[best], values[best]};
    const ScalarMinimum refined = minimize_scan_golden(xi2_at, grid[lo], grid[hi], 3, 1e-9 * config.t_max);
    if (refined.value < values[best]) return {refined.x, refined.value};
    return {grid[best], values[best]};
}

Dataset eta_vs_atoms(const SweepConfig& config, const std::vector<int>& atoms, double t) {
    config.validate();
    const DephasingRecord rec = record_for(config, t);
    const double theta = effective_twist(rec, config.chi);
    std::vector<double> eta(atoms.size()), closed(atoms.size()), n_col(atoms.size());
    parallel_for(atoms.size(), [&](std::size_t i) {
        const int n = atoms[i];
        if (n < 2) throw ConfigError("atom numbers must be >= 2");
        const CollectiveState state = evolve(css_state(n), rec, config.lambda, config.chi);
        eta[i] = qfi_max(c_matrix_mixed(state, collective_ops(n)), n).eta;
        closed[i] = eta_pure_closed(n, theta);
        n_col[i] = n;
    });
    Dataset ds;
    ds.add_column("N", std::move(n_col));
    ds.add_column("eta", std::move(eta));
    ds.add_column("eta_closed", std::move(closed));
    ds.metadata = to_key_values(config);
    ds.metadata.emplace_back("figure.time", shortest(t));
    ds.metadata.emplace_back("tool_version", std::string(kToolVersion));
    return ds;
}

namespace {

struct FigurePlan {
    SweepConfig base;
    std::vector<double> alphas, temperatures;
    std::vector<int> pulses, atoms;
    double time = 5.0;
};

FigurePlan figure_plan(const std::string& id) {
    FigurePlan p;
    SweepConfig& b = p.base;
    b.n_atoms = 200;
    b.t_min = 0.0;
    b.t_max = 20.0;
    b.points = 400;
    if (id == "1") {
        b.alpha = 0.1;
        b.temperature = 1.0;
        b.quantities = {Quantity::R, Quantity::Omega};
        p.pulses = {50};
    } else if (id == "2a") {
        b.temperature = 0.0;
        b.family = SequenceFamily::Free;
        b.pulses = 0;
        b.quantities = {Quantity::Xi2};
        p.alphas = {0.01, 0.05, 0.1};
    } else if (id == "2b") {
        b.alpha = 0.1;
        b.family = SequenceFamily::Free;
        b.pulses = 0;
        b.quantities = {Quantity::Xi2};
        p.temperatures = {0.0, 1.0, 5.0};
    } else if (id == "3a" || id == "3b") {
        b.alpha = 0.01;
        b.temperature = 1.0;
        b.family = id == "3a" ? SequenceFamily::PDD : SequenceFamily::UDD;
        b.quantities = {Quantity::Xi2};
        p.pulses = {10, 20, 50};
    } else if (id == "4") {
        b.temperature = 1.0;
        b.quantities = {Quantity::Purity};
        p.alphas = {0.1, 0.05, 0.01};
        p.pulses = {20, 50};
    } else if (id == "5a") {
        b.temperature = 1.0;
        b.family = SequenceFamily::UDD;
        b.pulses = 50;
        b.quantities = {Quantity::Eta, Quantity::EtaClosed};
        p.alphas = {0.01, 0.05};
    } else if (id == "5b") {
        b.alpha = 0.05;
        b.temperature = 1.0;
        b.family = SequenceFamily::UDD;
        b.pulses = 50;
        p.time = 5.0;
        for (int n = 10; n <= 400; n += 10) p.atoms.push_back(n);
    } else {
        throw ConfigError("unknown figure id '" + id + "' (valid: 1, 2a, 2b, 3a, 3b, 4, 5a, 5b)");
    }
    return p;
}

template <class T, class Parse>
std::vector<T> parse_list(const std::string& key, const std::string& value, Parse parse) {
    std::vector<T> out;
    for (const auto& item : split_list(value)) out.push_back(parse(key, item));
    if (out.empty()) throw ConfigError("key '" + key + "' needs at least one value");
    return out;
}

void apply_figure_overrides(FigurePlan& p, const KeyValues& overrides) {
    for (const auto& [k, v] : overrides) {
        if (k == "figure.alphas") p.alphas = parse_list<double>(k, v, to_double);
        else if (k == "figure.temperatures") p.temperatures = parse_list<double>(k, v, to_double);
        else if (k == "figure.pulses") p.pulses = parse_list<int>(k, v, to_int);
        else if (k == "figure.atoms") p.atoms = parse_list<int>(k, v, to_int);
        else if (k == "figure.time") p.time = to_double(k, v);
        else {
            try {
                apply_setting(p.base, k, v);
            } catch (const ConfigError& e) {
                if (std::string(e.what()).rfind("unknown key", 0) != 0) throw;
                std::vector<std::string> keys = sweep_config_keys();
                keys.insert(keys.end(), kFigureKeys.begin(), kFigureKeys.end());
                throw ConfigError("unknown key '" + k + "'; valid keys are:" + valid_key_list(keys));
            }
        }
    }
}

std::string number_list(const std::vector<double>& v) {
    std::vector<std::string> s;
    for (double x : v) s.push_back(shortest(x));
    return join(s);
}

std::string number_list(const std::vector<int>& v) {
    std::vector<std::string> s;
    for (int x : v) s.push_back(std::to_string(x));
    return join(s);
}

void merge_variant(Dataset& out, const Dataset& part, const std::string& label) {
    if (out.names.empty()) out.add_column("t", part.column("t"));
    for (std::size_t i = 1; i < part.names.size(); ++i) out.add_column(part.names[i] + "_" + label, part.columns[i]);
}

} // namespace

Dataset run_figure(const std::string& figure_id, const KeyValues& overrides) {
    FigurePlan plan = figure_plan(figure_id);
    apply_figure_overrides(plan, overrides);
    plan.base.validate();
    Dataset out;

    if (figure_id == "1") {
        SweepConfig c = plan.base;
        c.family = SequenceFamily::Free;
        c.pulses = 0;
        merge_variant(out, run_sweep(c), "free");
        for (int n : plan.pulses)
            for (SequenceFamily fam : {SequenceFamily::PDD, SequenceFamily::UDD}) {
                c.family = fam;
                c.pulses = n;
                merge_variant(out, run_sweep(c), std::string(to_string(fam)) + std::to_string(n));
            }
    } else if (figure_id == "2a") {
        for (double a : plan.alphas) {
            SweepConfig c = plan.base;
            c.alpha = a;
            merge_variant(out, run_sweep(c), "a" + label_number(a));
        }
    } else if (figure_id == "2b") {
        for (double temp : plan.temperatures) {
            SweepConfig c = plan.base;
            c.temperature = temp;
            merge_variant(out, run_sweep(c), "T" + label_number(temp));
        }
    } else if (figure_id == "3a" || figure_id == "3b") {
        for (int n : plan.pulses) {
            SweepConfig c = plan.base;
            c.pulses = n;
            merge_variant(out, run_sweep(c), std::string(to_string(c.family)) + std::to_string(n));
        }
        out.add_column("xi2_limit", std::vector<double>(out.rows(), squeezing_limit(plan.base.n_atoms)));
    } else if (figure_id == "4") {
        for (int n : plan.pulses)
            for (SequenceFamily fam : {SequenceFamily::UDD, SequenceFamily::PDD})
                for (double a : plan.alphas) {
                    SweepConfig c = plan.base;
                    c.family = fam;
                    c.pulses = n;
                    c.alpha = a;
                    merge_variant(out, run_sweep(c),
                                  std::string(to_string(fam)) + std::to_string(n) + "_a" + label_number(a));
                }
    } else if (figure_id == "5a") {
        for (double a : plan.alphas) {
            SweepConfig c = plan.base;
            c.alpha = a;
            merge_variant(out, run_sweep(c), "a" + label_number(a));
        }
    } else if (figure_id == "5b") {
        out = eta_vs_atoms(plan.base, plan.atoms, plan.time);
    }

    out.metadata.clear();
    out.metadata.emplace_back("figure", figure_id);
    for (auto& kv : to_key_values(plan.base)) out.metadata.push_back(std::move(kv));
    if (!plan.alphas.empty()) out.metadata.emplace_back("figure.alphas", number_list(plan.alphas));
    if (!plan.temperatures.empty()) out.metadata.emplace_back("figure.temperatures", number_list(plan.temperatures));
    if (!plan.pulses.empty()) out.metadata.emplace_back("figure.pulses", number_list(plan.pulses));
    if (!plan.atoms.empty()) {
        out.metadata.emplace_back("figure.atoms", number_list(plan.atoms));
        out.metadata.emplace_back("figure.time", shortest(plan.time));
    }
    out.metadata.emplace_back("tool_version", std::string(kToolVersion));
    return out;
}

} // namespace ddm
