#include "cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "ustokes/verify.hpp"

namespace ustokes::cli {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

std::string canonical_key(std::string key) {
    for (char& c : key) {
        if (c == '-') c = '_';
    }
    return key;
}

int parse_int(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const int v = std::stoi(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected an integer, got '" + value + "'");
    }
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key + ": expected a number, got '" + value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "on") return true;
    if (value == "false" || value == "0" || value == "off") return false;
    throw ConfigError(key + ": expected true/false, got '" + value + "'");
}

/// Applies one canonical key = value setting to the config.
void apply_value(RunConfig& config, const std::string& key, const std::string& value) {
    if (key == "levels") {
        const auto sep = value.find("..");
        const std::string lo = sep == std::string::npos ? value : value.substr(0, sep);
        const std::string hi = sep == std::string::npos ? value : value.substr(sep + 2);
        config.level_min = parse_int(key, trim(lo));
        config.level_max = parse_int(key, trim(hi));
    } else if (key == "variant") {
        if (value == "collocation") {
            config.variant = VariantChoice::collocation;
        } else if (value == "interpolation") {
            config.variant = VariantChoice::interpolation;
        } else if (value == "both") {
            config.variant = VariantChoice::both;
        } else {
            throw ConfigError("variant: expected collocation|interpolation|both, got '" +
                              value + "'");
        }
    } else if (key == "solver_tol") {
        config.solver_tolerance = parse_double(key, value);
    } else if (key == "output") {
        config.output_path = value;
    } else if (key == "format") {
        if (value == "csv") {
            config.format = OutputFormat::csv;
        } else if (value == "markdown") {
            config.format = OutputFormat::markdown;
        } else {
            throw ConfigError("format: expected csv|markdown, got '" + value + "'");
        }
    } else if (key == "time_quad") {
        config.time_quad_points = parse_int(key, value);
    } else if (key == "error_quad") {
        config.error_quad_points = parse_int(key, value);
    } else if (key == "seed") {
        config.seed = static_cast<unsigned int>(parse_int(key, value));
    } else if (key == "inject_fault") {
        config.inject_fault = parse_bool(key, value);
    } else {
        throw ConfigError("unknown setting '" + key + "'");
    }
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string text = trim(line);
        if (text.empty()) continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        const std::string key = canonical_key(trim(text.substr(0, eq)));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError(path + ":" + std::to_string(lineno) +
                              ": expected 'key = value'");
        }
        values[key] = value;
    }
    return values;
}

void validate(const RunConfig& config) {
    if (config.level_min < 0 || config.level_max < config.level_min) {
        throw ConfigError("levels: need 0 <= min <= max, got " +
                          std::to_string(config.level_min) + ".." +
                          std::to_string(config.level_max));
    }
    if (!(config.solver_tolerance > 0.0) || config.solver_tolerance > 1e-4) {
        throw ConfigError("solver_tol: must lie in (0, 1e-4]");
    }
    if (config.time_quad_points < 5) {
        throw ConfigError("time_quad: need at least 5 points per interval");
    }
    if (config.error_quad_points < 5 || config.error_quad_points > 6) {
        throw ConfigError("error_quad: need 5 or 6 points per axis");
    }
    if (config.output_path.empty()) throw ConfigError("output: empty path");
    if (config.command == Command::run && config.level_min != config.level_max) {
        throw ConfigError("run: expects a single level (use --levels L)");
    }
}

/// Probes that every output target can be created/written, before any
/// computation starts.  Freshly created probe files are removed again.
void check_writable(const std::vector<std::string>& paths) {
    for (const auto& path : paths) {
        if (path == "-") continue;
        std::error_code ec;
        const bool existed = std::filesystem::exists(path, ec);
        std::ofstream probe(path, std::ios::app);
        if (!probe) throw ConfigError("output path '" + path + "' is not writable");
        probe.close();
        if (!existed) std::filesystem::remove(path, ec);
    }
}

std::vector<Variant> selected_variants(VariantChoice choice) {
    switch (choice) {
        case VariantChoice::collocation: return {Variant::collocation};
        case VariantChoice::interpolation: return {Variant::interpolation};
        case VariantChoice::both:
            return {Variant::collocation, Variant::interpolation};
    }
    return {};
}

std::vector<std::string> output_targets(const RunConfig& config) {
    std::vector<std::string> targets;
    if (config.output_path == "-") return targets;
    const bool both = config.variant == VariantChoice::both;
    for (Variant v : selected_variants(config.variant)) {
        const std::string base =
            both ? variant_tagged_path(config.output_path, v) : config.output_path;
        if (config.format == OutputFormat::markdown) {
            targets.push_back(base);
        } else {
            const auto files = family_output_paths(base);
            targets.insert(targets.end(), files.begin(), files.end());
        }
    }
    return targets;
}

int run_reports(const RunConfig& config, std::ostream& out) {
    StudyConfig study;
    study.solver_tolerance = config.solver_tolerance;
    study.time_quad_points = config.time_quad_points;
    study.error_quad_points = config.error_quad_points;

    const bool both = config.variant == VariantChoice::both;
    std::vector<ConvergenceReport> reports;
    if (both) {
        const auto pair = run_convergence_study_both(config.level_min, config.level_max, study);
        reports.assign(pair.begin(), pair.end());
    } else {
        reports.push_back(run_convergence_study(config.level_min, config.level_max,
                                                selected_variants(config.variant)[0],
                                                study));
    }
    for (const auto& report : reports) {
        std::string target = config.output_path;
        if (both && target != "-") target = variant_tagged_path(target, report.variant);
        if (target == "-" && config.format == OutputFormat::csv) {
            out << "# variant: " << to_string(report.variant) << "\n";
        }
        emit_report(report, config.format, target);
    }
    return 0;
}

}  // namespace

std::string variant_tagged_path(const std::string& base_path, Variant variant) {
    const std::size_t slash = base_path.find_last_of('/');
    const std::size_t dot = base_path.find_last_of('.');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) {
        return base_path.substr(0, dot) + "_" + to_string(variant) + base_path.substr(dot);
    }
    return base_path + "_" + to_string(variant);
}

RunConfig parse_config(const std::vector<std::string>& args, std::ostream& diagnostics) {
    RunConfig config;
    std::size_t i = 0;
    if (!args.empty() && !args[0].starts_with("--")) {
        if (args[0] == "run") {
            config.command = Command::run;
        } else if (args[0] == "convergence") {
            config.command = Command::convergence;
        } else if (args[0] == "verify") {
            config.command = Command::verify;
        } else {
            throw ConfigError("unknown command '" + args[0] +
                              "' (expected run, convergence, or verify)");
        }
        i = 1;
    }

    // Collect flag assignments in order; --config is handled first so that
    // command-line flags override file values.
    std::vector<std::pair<std::string, std::string>> flag_values;
    std::optional<std::string> config_file;
    for (; i < args.size(); ++i) {
        std::string flag = args[i];
        if (!flag.starts_with("--")) {
            throw ConfigError("unexpected argument '" + flag + "'");
        }
        flag = flag.substr(2);
        std::string value;
        const auto eq = flag.find('=');
        if (eq != std::string::npos) {
            value = flag.substr(eq + 1);
            flag = flag.substr(0, eq);
        } else if (flag == "inject-fault") {
            value = "true";
        } else {
            if (i + 1 >= args.size()) {
                throw ConfigError("--" + flag + ": missing value");
            }
            value = args[++i];
        }
        const std::string key = canonical_key(flag);
        if (key == "config") {
            config_file = value;
        } else {
            flag_values.emplace_back(key, value);
        }
    }

    std::map<std::string, std::string> file_values;
    if (config_file) {
        file_values = parse_config_file(*config_file);
        for (const auto& [key, value] : file_values) apply_value(config, key, value);
    }
    for (const auto& [key, value] : flag_values) {
        if (file_values.count(key) != 0) {
            diagnostics << "warning: --" << key << " overrides config file value\n";
        }
        apply_value(config, key, value);
    }

    validate(config);
    return config;
}

int run_cli(const RunConfig& config, std::ostream& out, std::ostream& diagnostics) {
    if (config.command == Command::verify) {
        VerifyOptions options;
        options.seed = config.seed;
        options.inject_fault = config.inject_fault;
        options.solver_tolerance = config.solver_tolerance;
        const VerifyReport report = run_verification(options);
        print_verification(report, out);
        if (!report.all_passed()) {
            diagnostics << "verification failed\n";
            return 1;
        }
        return 0;
    }
    check_writable(output_targets(config));
    return run_reports(config, out);
}

int main_entry(int argc, char** argv) {
    try {
        const std::vector<std::string> args(argv + 1, argv + argc);
        const RunConfig config = parse_config(args, std::cerr);
        return run_cli(config, std::cout, std::cerr);
    } catch (const ConfigError& err) {
        std::cerr << "config error: " << err.what() << "\n";
        return 2;
    } catch (const SolverError& err) {
        std::cerr << "solver error: " << err.what() << "\n";
        return 3;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << "\n";
        return 2;
    }
}

}  // namespace ustokes::cli
