#include <clocale>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "bandedge/errors.hpp"
#include "commands.hpp"

#include "CLI11.hpp"
#include "json.hpp"

namespace {

void print_error(const std::string& code, const std::string& message) {
    nlohmann::ordered_json j;
    j["error"] = code;
    j["message"] = message;
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

// 2: the request itself is unusable (bad flags, bad parameter domain, config
//    or output problems, a grid too coarse for the accuracy contract).
// 3: the computation failed (degenerate roots, overflow, non-convergence, ...).
int exit_code_for(const std::string& code) {
    if (code == "usage" || code == "io" || code == "invalid_params" || code == "step_too_large") {
        return 2;
    }
    return 3;
}

// Flat key=value config files. Keys are the long flag names (either - or _
// spelling); values set the same targets the flags do. Precedence is
// defaults < config file < flags, implemented by skipping any key whose flag
// was given on the command line.
using Bindings = std::vector<std::pair<std::string, std::function<void(const std::string&)>>>;

double config_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw bandedge::Error("usage", "config key '" + key + "': expected a number, got '" + value + "'");
}

std::uint64_t config_count(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const std::uint64_t v = std::stoull(value, &used);
        if (used == value.size()) return v;
    } catch (const std::exception&) {
    }
    throw bandedge::Error("usage", "config key '" + key + "': expected a nonnegative integer, got '" +
                                       value + "'");
}

bool config_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes" || value == "on") return true;
    if (value == "false" || value == "0" || value == "no" || value == "off") return false;
    throw bandedge::Error("usage", "config key '" + key + "': expected a boolean, got '" + value + "'");
}

void bind_double(Bindings& b, const char* key, double& target) {
    std::string k = key;
    b.emplace_back(k, [k, &target](const std::string& v) { target = config_double(k, v); });
}

void bind_count(Bindings& b, const char* key, std::uint64_t& target) {
    std::string k = key;
    b.emplace_back(k, [k, &target](const std::string& v) { target = config_count(k, v); });
}

void bind_text(Bindings& b, const char* key, std::string& target) {
    b.emplace_back(key, [&target](const std::string& v) { target = v; });
}

void bind_flag(Bindings& b, const char* key, bool& target) {
    std::string k = key;
    b.emplace_back(k, [k, &target](const std::string& v) { target = config_bool(k, v); });
}

void bind_params(Bindings& b, bandedge::tools::CommonParams& p) {
    bind_double(b, "beta", p.beta);
    bind_double(b, "gamma", p.gamma);
    bind_double(b, "delta", p.delta);
    bind_double(b, "delta-g", p.delta_g);
    bind_double(b, "omega", p.omega);
    bind_double(b, "chi-prefactor", p.chi_prefactor);
}

std::string normalized(const std::string& key) {
    std::string out = key;
    for (char& c : out) {
        if (c == '_') c = '-';
    }
    return out;
}

std::string trimmed(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto z = s.find_last_not_of(" \t\r");
    return s.substr(a, z - a + 1);
}

void apply_config(CLI::App* cmd, const std::string& path, const Bindings& bindings) {
    std::ifstream in(path);
    if (!in) {
        throw bandedge::Error("io", "cannot read config file '" + path + "'");
    }
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string body = trimmed(line);
        if (body.empty() || body[0] == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw bandedge::Error("usage", path + ":" + std::to_string(lineno) +
                                               ": expected key=value, got '" + body + "'");
        }
        const std::string key = trimmed(body.substr(0, eq));
        const std::string value = trimmed(body.substr(eq + 1));

        const std::string want = normalized(key);
        const auto hit = std::find_if(bindings.begin(), bindings.end(),
                                      [&want](const auto& b) { return b.first == want; });
        if (hit == bindings.end()) {
            throw bandedge::Error("usage", path + ":" + std::to_string(lineno) +
                                               ": unknown config key '" + key + "'");
        }
        if (cmd->count("--" + hit->first) > 0) continue;  // flags win
        hit->second(value);
    }
}

void add_param_options(CLI::App* cmd, bandedge::tools::CommonParams& p) {
    cmd->add_option("--beta", p.beta, "reservoir coupling beta (sets the time unit)")
        ->capture_default_str();
    cmd->add_option("--gamma", p.gamma, "decay rate out of the upper state")
        ->capture_default_str();
    cmd->add_option("--delta", p.delta, "probe detuning")->capture_default_str();
    cmd->add_option("--delta-g", p.delta_g, "band-edge (gap) detuning")->capture_default_str();
    cmd->add_option("--omega", p.omega, "probe Rabi frequency")->capture_default_str();
    cmd->add_option("--chi-prefactor", p.chi_prefactor, "overall susceptibility scale")
        ->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
    std::setlocale(LC_ALL, "C");

    CLI::App app{"transient probe response of a three-level emitter near a reservoir band edge"};
    app.require_subcommand(1);

    bandedge::tools::TraceOptions topt;
    bandedge::tools::SweepOptions sopt;
    bandedge::tools::ValidateOptions vopt;
    bandedge::tools::RootsOptions ropt;
    std::string trace_config, sweep_config, validate_config, roots_config;
    Bindings trace_keys, sweep_keys, validate_keys, roots_keys;

    CLI::App* trace = app.add_subcommand("trace", "compute one time trace of b1 and chi");
    add_param_options(trace, topt.p);
    bind_params(trace_keys, topt.p);
    trace->add_option("--t-max", topt.t_max, "trace length")->capture_default_str();
    trace->add_option("--steps", topt.steps, "number of grid steps")->capture_default_str();
    trace->add_option("--method", topt.method, "closed_form | volterra | both")
        ->check(CLI::IsMember({"closed_form", "closed", "volterra", "both"}))
        ->capture_default_str();
    trace->add_option("--format", topt.format, "csv | json (default: from extension, else csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    trace->add_option("--output", topt.output, "output file (default: stdout)");
    trace->add_flag("--full-system", topt.full_system,
                    "co-evolve b0 instead of freezing it (volterra methods)");
    trace->add_option("--gnuplot", topt.gnuplot, "also write a gnuplot script to this path");
    trace->add_option("--config", trace_config, "flat key=value config file; flags override");
    bind_double(trace_keys, "t-max", topt.t_max);
    bind_count(trace_keys, "steps", topt.steps);
    bind_text(trace_keys, "method", topt.method);
    bind_text(trace_keys, "format", topt.format);
    bind_text(trace_keys, "output", topt.output);
    bind_flag(trace_keys, "full-system", topt.full_system);
    bind_text(trace_keys, "gnuplot", topt.gnuplot);

    CLI::App* sweep = app.add_subcommand("sweep", "run one trace per parameter value");
    add_param_options(sweep, sopt.base.p);
    bind_params(sweep_keys, sopt.base.p);
    sweep->add_option("--t-max", sopt.base.t_max, "trace length")->capture_default_str();
    sweep->add_option("--steps", sopt.base.steps, "number of grid steps")->capture_default_str();
    sweep->add_option("--method", sopt.base.method, "closed_form | volterra | both")
        ->check(CLI::IsMember({"closed_form", "closed", "volterra", "both"}))
        ->capture_default_str();
    sweep->add_option("--format", sopt.base.format, "csv | json for the per-value files")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_flag("--full-system", sopt.base.full_system,
                    "co-evolve b0 instead of freezing it (volterra methods)");
    sweep->add_option("--param", sopt.param, "swept parameter")
        ->required()
        ->check(CLI::IsMember({"gamma", "delta", "delta-g", "delta_g", "omega"}));
    sweep->add_option("--values", sopt.values_csv, "comma-separated values (may be empty)");
    sweep->add_option("--output-dir", sopt.output_dir, "directory for traces and index.json")
        ->required();
    sweep->add_option("--config", sweep_config, "flat key=value config file; flags override");
    bind_double(sweep_keys, "t-max", sopt.base.t_max);
    bind_count(sweep_keys, "steps", sopt.base.steps);
    bind_text(sweep_keys, "method", sopt.base.method);
    bind_text(sweep_keys, "format", sopt.base.format);
    bind_flag(sweep_keys, "full-system", sopt.base.full_system);
    bind_text(sweep_keys, "param", sopt.param);
    bind_text(sweep_keys, "values", sopt.values_csv);
    bind_text(sweep_keys, "output-dir", sopt.output_dir);

    CLI::App* validate = app.add_subcommand("validate", "cross-method and kernel consistency checks");
    validate->set_help_flag("--help", "print help");  // frees -h / --h for the grid step
    add_param_options(validate, vopt.p);
    bind_params(validate_keys, vopt.p);
    validate->add_option("--h", vopt.h, "grid step for the oracle comparison")
        ->capture_default_str();
    validate->add_option("--t-max", vopt.t_max, "comparison window")->capture_default_str();
    validate->add_option("--gammas", vopt.gammas_csv, "comma-separated gamma values")
        ->capture_default_str();
    validate->add_option("--checks", vopt.checks_csv, "subset of oracle,markovian,kernel")
        ->capture_default_str();
    validate->add_option("--config", validate_config, "flat key=value config file; flags override");
    bind_double(validate_keys, "h", vopt.h);
    bind_double(validate_keys, "t-max", vopt.t_max);
    bind_text(validate_keys, "gammas", vopt.gammas_csv);
    bind_text(validate_keys, "checks", vopt.checks_csv);

    CLI::App* roots = app.add_subcommand("roots", "characteristic quintic diagnostics as JSON");
    add_param_options(roots, ropt.p);
    bind_params(roots_keys, ropt.p);
    roots->add_option("--output", ropt.output, "output file (default: stdout)");
    roots->add_option("--config", roots_config, "flat key=value config file; flags override");
    bind_text(roots_keys, "output", ropt.output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    try {
        if (trace->parsed()) {
            if (!trace_config.empty()) apply_config(trace, trace_config, trace_keys);
            return bandedge::tools::run_trace(topt);
        }
        if (sweep->parsed()) {
            if (!sweep_config.empty()) apply_config(sweep, sweep_config, sweep_keys);
            return bandedge::tools::run_sweep(sopt);
        }
        if (validate->parsed()) {
            if (!validate_config.empty()) apply_config(validate, validate_config, validate_keys);
            return bandedge::tools::run_validate(vopt);
        }
        if (roots->parsed()) {
            if (!roots_config.empty()) apply_config(roots, roots_config, roots_keys);
            return bandedge::tools::run_roots(ropt);
        }
    } catch (const bandedge::Error& e) {
        print_error(e.code(), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 3;
    }
    return 2;
}
