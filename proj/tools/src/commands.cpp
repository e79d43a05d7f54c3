#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <future>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "bandedge/closedform.hpp"
#include "bandedge/errors.hpp"
#include "bandedge/kernels.hpp"
#include "bandedge/params.hpp"
#include "bandedge/polyroots.hpp"
#include "bandedge/volterra.hpp"
#include "trace_io.hpp"

#include "json.hpp"

namespace bandedge::tools {

namespace {

using cplx = std::complex<double>;
using nlohmann::ordered_json;

enum class Method { closed, volterra, both };

SystemParams to_params(const CommonParams& c) {
    SystemParams p;
    p.beta = c.beta;
    p.gamma = c.gamma;
    p.delta = c.delta;
    p.delta_g = c.delta_g;
    p.omega_rabi = c.omega;
    p.chi_prefactor = c.chi_prefactor;
    return p;
}

Method parse_method(const std::string& m) {
    if (m == "closed_form" || m == "closed") return Method::closed;
    if (m == "volterra") return Method::volterra;
    if (m == "both") return Method::both;
    throw InvalidParams("unknown method '" + m + "'");
}

std::string method_name(Method m) {
    switch (m) {
        case Method::closed: return "closed_form";
        case Method::volterra: return "volterra";
        case Method::both: return "both";
    }
    return "closed_form";
}

std::vector<double> parse_list(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string item = csv.substr(pos, comma - pos);
        const auto first = item.find_first_not_of(" \t");
        if (first == std::string::npos) throw InvalidParams("empty item in list '" + csv + "'");
        const auto last = item.find_last_not_of(" \t");
        item = item.substr(first, last - first + 1);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            throw InvalidParams("cannot parse '" + item + "' as a number");
        }
        if (used != item.size()) throw InvalidParams("cannot parse '" + item + "' as a number");
        out.push_back(v);
        pos = comma + 1;
    }
    return out;
}

std::vector<std::string> parse_names(const std::string& csv) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < csv.size()) {
        std::size_t comma = csv.find(',', pos);
        if (comma == std::string::npos) comma = csv.size();
        std::string item = csv.substr(pos, comma - pos);
        const auto first = item.find_first_not_of(" \t");
        if (first != std::string::npos) {
            const auto last = item.find_last_not_of(" \t");
            out.push_back(item.substr(first, last - first + 1));
        }
        pos = comma + 1;
    }
    return out;
}

// The extension, when recognized, is authoritative against the flag and
// supplies the default when the flag is absent.
std::string effective_format(const std::string& flag, const std::string& output) {
    std::string from_ext;
    const std::string ext = std::filesystem::path(output).extension().string();
    if (ext == ".csv") from_ext = "csv";
    if (ext == ".json") from_ext = "json";
    if (!flag.empty()) {
        if (!from_ext.empty() && from_ext != flag) {
            throw InvalidParams("output extension '" + ext + "' conflicts with --format " + flag);
        }
        return flag;
    }
    return from_ext.empty() ? "csv" : from_ext;
}

void print_warning(const std::string& text) {
    ordered_json j;
    j["warning"] = text;
    std::fprintf(stderr, "%s\n", j.dump().c_str());
}

struct Bundle {
    std::optional<AmplitudeTrace> c_amp;
    std::optional<SusceptibilityTrace> c_sus;
    std::optional<AmplitudeTrace> v_amp;
    std::optional<SusceptibilityTrace> v_sus;
};

Bundle compute(const SystemParams& params, const TimeGrid& grid, Method m, bool full) {
    Bundle b;
    if (m != Method::volterra) {
        const RootSystem rs = build_root_system(params);
        b.c_amp = eval_b1(rs, grid);
        b.c_sus = eval_susceptibility(params, *b.c_amp);
    }
    if (m != Method::closed) {
        SolverConfig cfg;
        cfg.grid = grid;
        cfg.mode = full ? VolterraMode::full_system : VolterraMode::perturbative;
        const KernelSpec ks = KernelSpec::from_params(params);
        b.v_amp = full ? solve_full_system(params, ks, cfg) : solve_perturbative(params, ks, cfg);
        b.v_sus = eval_susceptibility(params, *b.v_amp);
    }
    return b;
}

TraceTable tabulate(const Bundle& b, const TimeGrid& grid) {
    TraceTable t;
    t.columns = {"t", "re_b1", "im_b1", "re_chi", "im_chi", "neg_im_chi", "pop1"};
    const bool both = b.c_amp.has_value() && b.v_amp.has_value();
    if (both) {
        for (const char* c : {"volterra_re_b1", "volterra_im_b1", "volterra_re_chi",
                              "volterra_im_chi", "volterra_neg_im_chi", "volterra_pop1"}) {
            t.columns.push_back(c);
        }
        t.columns.push_back("abs_diff");
    }
    const AmplitudeTrace& amp = b.c_amp ? *b.c_amp : *b.v_amp;
    const SusceptibilityTrace& sus = b.c_amp ? *b.c_sus : *b.v_sus;

    t.rows.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        std::vector<double> row;
        row.reserve(t.columns.size());
        row.push_back(canonical_zero(grid.time_at(k)));
        row.push_back(canonical_zero(amp.b1[k].real()));
        row.push_back(canonical_zero(amp.b1[k].imag()));
        row.push_back(canonical_zero(sus.chi[k].real()));
        row.push_back(canonical_zero(sus.chi[k].imag()));
        row.push_back(canonical_zero(sus.neg_im_chi[k]));
        row.push_back(canonical_zero(sus.population1[k]));
        if (both) {
            row.push_back(canonical_zero(b.v_amp->b1[k].real()));
            row.push_back(canonical_zero(b.v_amp->b1[k].imag()));
            row.push_back(canonical_zero(b.v_sus->chi[k].real()));
            row.push_back(canonical_zero(b.v_sus->chi[k].imag()));
            row.push_back(canonical_zero(b.v_sus->neg_im_chi[k]));
            row.push_back(canonical_zero(b.v_sus->population1[k]));
            row.push_back(canonical_zero(std::abs(b.c_amp->b1[k] - b.v_amp->b1[k])));
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

ordered_json trace_json(const SystemParams& p, const TimeGrid& grid, Method m, bool full,
                        const Bundle& b, const TraceTable& table) {
    ordered_json j;
    j["schema"] = "trace-1";
    ordered_json params;
    params["beta"] = canonical_zero(p.beta);
    params["gamma"] = canonical_zero(p.gamma);
    params["delta"] = canonical_zero(p.delta);
    params["delta_g"] = canonical_zero(p.delta_g);
    params["omega"] = canonical_zero(p.omega_rabi);
    params["chi_prefactor"] = canonical_zero(p.chi_prefactor);
    j["params"] = std::move(params);
    ordered_json grid_j;
    grid_j["t_max"] = canonical_zero(grid.t_max);
    grid_j["steps"] = grid.n_steps;
    j["grid"] = std::move(grid_j);
    j["method"] = method_name(m);
    j["full_system"] = full;
    if (full && b.v_amp) j["max_b0_deviation"] = canonical_zero(max_b0_deviation(*b.v_amp));
    j["columns"] = table.columns;
    ordered_json rows = ordered_json::array();
    for (const auto& row : table.rows) rows.push_back(row);
    j["rows"] = std::move(rows);
    return j;
}

std::string gnuplot_script(const std::string& csv_path) {
    std::string s;
    s += "# probe response trace plot\n";
    s += "set datafile separator ','\n";
    s += "set xlabel 't  (units of 1/beta)'\n";
    s += "set ylabel 'response'\n";
    s += "set key top right\n";
    s += "plot '" + csv_path + "' every ::1 using 1:6 with lines lw 2 title '-Im chi(t)', \\\n";
    s += "     '" + csv_path + "' every ::1 using 1:7 with lines lw 2 title '|b1(t)|^2'\n";
    return s;
}

void emit_warnings(const SystemParams& params, const TimeGrid& grid, Method m, bool full) {
    std::vector<std::string> warns;
    if (m == Method::closed) {
        warns = param_warnings(params);
    } else {
        SolverConfig cfg;
        cfg.grid = grid;
        cfg.mode = full ? VolterraMode::full_system : VolterraMode::perturbative;
        warns = solver_warnings(params, KernelSpec::from_params(params), cfg);
    }
    for (const auto& w : warns) print_warning(w);
}

std::string render_body(const SystemParams& params, const TimeGrid& grid, Method m, bool full,
                        const std::string& fmt) {
    const Bundle b = compute(params, grid, m, full);
    const TraceTable table = tabulate(b, grid);
    if (fmt == "csv") return render_csv(table);
    return dump_json(trace_json(params, grid, m, full, b, table));
}

TimeGrid make_grid(double t_max, std::uint64_t steps) {
    TimeGrid g;
    g.t_max = t_max;
    g.n_steps = static_cast<std::size_t>(steps);
    validate(g);
    return g;
}

}  // namespace

int run_trace(const TraceOptions& opt) {
    const SystemParams params = to_params(opt.p);
    validate(params);
    const TimeGrid grid = make_grid(opt.t_max, opt.steps);
    const Method m = parse_method(opt.method);
    if (opt.full_system && m == Method::closed) {
        throw InvalidParams("--full-system needs --method volterra or both");
    }
    const std::string fmt = effective_format(opt.format, opt.output);
    if (!opt.gnuplot.empty() && (fmt != "csv" || opt.output.empty())) {
        throw InvalidParams("--gnuplot needs csv format and an --output file");
    }

    emit_warnings(params, grid, m, opt.full_system);
    const std::string body = render_body(params, grid, m, opt.full_system, fmt);
    if (opt.output.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
    } else {
        write_atomic(opt.output, body);
    }
    if (!opt.gnuplot.empty()) write_atomic(opt.gnuplot, gnuplot_script(opt.output));
    return 0;
}

int run_sweep(const SweepOptions& opt) {
    const SystemParams base = to_params(opt.base.p);
    validate(base);
    const TimeGrid grid = make_grid(opt.base.t_max, opt.base.steps);
    const Method m = parse_method(opt.base.method);
    if (opt.base.full_system && m == Method::closed) {
        throw InvalidParams("--full-system needs --method volterra or both");
    }
    const std::string fmt = opt.base.format.empty() ? "csv" : opt.base.format;

    std::string param = opt.param;
    if (param == "delta-g") param = "delta_g";
    if (param != "gamma" && param != "delta" && param != "delta_g" && param != "omega") {
        throw InvalidParams("sweep parameter must be one of gamma, delta, delta-g, omega");
    }
    const std::vector<double> values = parse_list(opt.values_csv);

    emit_warnings(base, grid, m, opt.base.full_system);

    const std::filesystem::path dir(opt.output_dir.empty() ? "." : opt.output_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoFailure("cannot create directory " + dir.string() + ": " + ec.message());

    auto file_name = [&](std::size_t i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%s_%04zu.%s", param.c_str(), i, fmt.c_str());
        return std::string(buf);
    };
    auto apply = [](SystemParams p, const std::string& name, double v) {
        if (name == "gamma") p.gamma = v;
        else if (name == "delta") p.delta = v;
        else if (name == "delta_g") p.delta_g = v;
        else p.omega_rabi = v;
        return p;
    };

    struct Outcome {
        bool ok = false;
        std::string code;
        std::string message;
    };
    std::vector<std::future<Outcome>> futures;
    futures.reserve(values.size());
    const bool full = opt.base.full_system;
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double v = values[i];
        const std::filesystem::path out_path = dir / file_name(i);
        futures.push_back(std::async(std::launch::async, [=]() -> Outcome {
            try {
                const SystemParams p = apply(base, param, v);
                validate(p);
                write_atomic(out_path, render_body(p, grid, m, full, fmt));
                return {true, {}, {}};
            } catch (const Error& e) {
                return {false, e.code(), e.what()};
            } catch (const std::exception& e) {
                return {false, "internal", e.what()};
            }
        }));
    }

    ordered_json index;
    index["param"] = param;
    ordered_json entries = ordered_json::array();
    std::size_t failed = 0;
    for (std::size_t i = 0; i < futures.size(); ++i) {
        const Outcome oc = futures[i].get();
        ordered_json e;
        e["value"] = canonical_zero(values[i]);
        if (oc.ok) {
            e["file"] = file_name(i);
            e["status"] = "ok";
        } else {
            e["status"] = "error";
            e["error"] = oc.code;
            e["message"] = oc.message;
            ++failed;
        }
        entries.push_back(std::move(e));
    }
    index["entries"] = std::move(entries);
    index["failed"] = failed;
    write_atomic(dir / "index.json", dump_json(index));
    return failed > 0 ? 3 : 0;
}

namespace {

double oracle_rel_err(const SystemParams& p, double t_max, std::size_t n_steps) {
    TimeGrid g;
    g.t_max = t_max;
    g.n_steps = n_steps;
    const RootSystem rs = build_root_system(p);
    const AmplitudeTrace cf = eval_b1(rs, g);
    SolverConfig cfg;
    cfg.grid = g;
    const AmplitudeTrace vt = solve_perturbative(p, KernelSpec::from_params(p), cfg);
    double maxdiff = 0.0;
    double maxabs = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        maxdiff = std::max(maxdiff, std::abs(cf.b1[k] - vt.b1[k]));
        maxabs = std::max(maxabs, std::abs(cf.b1[k]));
    }
    return maxabs > 0.0 ? maxdiff / maxabs : maxdiff;
}

// Int_0^200 e^{-st} K(t) dt, t = u^2: (2 kappa / sqrt(pi)) Int_0^{sqrt(200)} e^{-(s+i dp)u^2} du,
// composite Simpson (integrand is smooth; the 1/sqrt(t) singularity is gone).
cplx kernel_transform_quadrature(double beta, double dp, cplx s) {
    const double mag = std::pow(beta, 1.5);
    const double c = std::cos(std::numbers::pi / 4.0);
    const cplx kappa(mag * c, -mag * c);
    const cplx a = s + cplx(0.0, dp);
    const double umax = std::sqrt(200.0);
    const std::size_t n = 40000;
    const double hu = umax / static_cast<double>(n);
    auto f = [&](double u) { return std::exp(-a * (u * u)); };
    cplx acc = f(0.0) + f(umax);
    for (std::size_t k = 1; k < n; ++k) {
        acc += f(static_cast<double>(k) * hu) * ((k % 2 != 0) ? 4.0 : 2.0);
    }
    return kappa * (2.0 / std::sqrt(std::numbers::pi)) * acc * hu / 3.0;
}

}  // namespace

int run_validate(const ValidateOptions& opt) {
    const SystemParams base = to_params(opt.p);
    validate(base);
    if (opt.h <= 0.0 || !std::isfinite(opt.h) || opt.t_max <= 0.0 || !std::isfinite(opt.t_max)) {
        throw InvalidParams("--h and --t-max must be positive finite");
    }
    const std::vector<double> gammas = parse_list(opt.gammas_csv);
    const std::vector<std::string> checks = parse_names(opt.checks_csv);
    for (const auto& c : checks) {
        if (c != "oracle" && c != "markovian" && c != "kernel") {
            throw InvalidParams("unknown check '" + c + "' (oracle, markovian, kernel)");
        }
    }
    auto has_check = [&](const char* name) {
        return std::find(checks.begin(), checks.end(), name) != checks.end();
    };
    for (const auto& w : param_warnings(base)) print_warning(w);

    const auto n_of = [&](double h) {
        const auto n = static_cast<std::size_t>(std::llround(opt.t_max / h));
        return std::max<std::size_t>(n, 2);
    };

    bool all_pass = true;
    auto report = [&](const char* name, const std::string& detail, double value,
                      const char* bound_label, double bound, bool pass) {
        std::printf("check %s%s%s: value=%.3e %s=%.3e %s\n", name, detail.empty() ? "" : " ",
                    detail.c_str(), value, bound_label, bound, pass ? "PASS" : "FAIL");
        all_pass = all_pass && pass;
    };

    if (has_check("oracle") && !gammas.empty()) {
        constexpr double tol = 5e-3;
        std::map<double, double> errs;
        for (const double g : gammas) {
            SystemParams p = base;
            p.gamma = g;
            const double err = oracle_rel_err(p, opt.t_max, n_of(opt.h));
            errs[g] = err;
            char detail[48];
            std::snprintf(detail, sizeof detail, "gamma=%g", g);
            report("oracle", detail, err, "tol", tol, err <= tol);
        }
        const double gs =
            std::find(gammas.begin(), gammas.end(), 1.0) != gammas.end() ? 1.0 : gammas.front();
        SystemParams p = base;
        p.gamma = gs;
        const double e_h = errs.at(gs);
        const double e_h2 = oracle_rel_err(p, opt.t_max, 2 * n_of(opt.h));
        const double ratio = e_h2 > 0.0 ? e_h / e_h2 : std::numeric_limits<double>::infinity();
        char detail[48];
        std::snprintf(detail, sizeof detail, "gamma=%g", gs);
        report("oracle_shrink", detail, ratio, "min", 2.5, ratio >= 2.5);
    }

    if (has_check("markovian")) {
        constexpr double gamma_flat = 1.0;
        constexpr double tol = 1e-8;
        TimeGrid g;
        g.t_max = 20.0;
        g.n_steps = 20000;
        SolverConfig cfg;
        cfg.grid = g;
        const AmplitudeTrace vt = solve_perturbative(base, KernelSpec::flat(gamma_flat), cfg);
        const cplx big_delta(base.delta, (base.gamma + gamma_flat) / 2.0);
        double err = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double t = g.time_at(k);
            const cplx ref =
                base.omega_rabi / big_delta * (1.0 - std::exp(cplx(0.0, 1.0) * big_delta * t));
            err = std::max(err, std::abs(vt.b1[k] - ref));
        }
        report("markovian", "", err, "tol", tol, err <= tol);
    }

    if (has_check("kernel")) {
        constexpr double tol = 1e-6;
        const double dp = base.delta_g - base.delta;
        const KernelSpec ks = KernelSpec::edge(base.beta, dp);
        const cplx points[] = {{0.5, 0.0}, {1.0, 1.0}, {2.0, -0.5}};
        for (const cplx& s : points) {
            const cplx q = kernel_transform_quadrature(base.beta, dp, s);
            const cplx ref = kernel_laplace(ks, s);
            const double rel = std::abs(q - ref) / std::abs(ref);
            char detail[64];
            std::snprintf(detail, sizeof detail, "laplace s=(%g,%g)", s.real(), s.imag());
            report("kernel", detail, rel, "tol", tol, rel <= tol);
        }
    }

    std::printf("overall: %s\n", all_pass ? "PASS" : "FAIL");
    return all_pass ? 0 : 1;
}

int run_roots(const RootsOptions& opt) {
    const SystemParams params = to_params(opt.p);
    validate(params);
    const ComplexPolynomial quintic = build_quintic(params);
    const RootList rl = find_roots(quintic);
    const RootSystem rs = build_root_system(params);

    auto pair_of = [](const cplx& z) {
        return ordered_json::array({canonical_zero(z.real()), canonical_zero(z.imag())});
    };

    cplx sum = 0.0;
    for (const cplx& r : rl.roots) sum += r;

    // Monic expansion prod_i (x - x_i) in ascending order, compared
    // coefficient-wise against the assembled quintic; normalized by the
    // largest coefficient magnitude.
    std::vector<cplx> expanded{1.0};
    for (const cplx& r : rl.roots) {
        std::vector<cplx> next(expanded.size() + 1, cplx(0.0, 0.0));
        for (std::size_t k = 0; k < expanded.size(); ++k) {
            next[k + 1] += expanded[k];
            next[k] -= r * expanded[k];
        }
        expanded = std::move(next);
    }
    double coeff_scale = 0.0;
    for (const cplx& c : quintic.coefficients) coeff_scale = std::max(coeff_scale, std::abs(c));
    double fact_err = 0.0;
    for (std::size_t k = 0; k < quintic.coefficients.size(); ++k) {
        fact_err = std::max(fact_err, std::abs(expanded[k] - quintic.coefficients[k]));
    }
    fact_err /= coeff_scale;

    ordered_json j;
    ordered_json roots = ordered_json::array();
    ordered_json residuals = ordered_json::array();
    ordered_json ys = ordered_json::array();
    ordered_json alphas = ordered_json::array();
    ordered_json contributing = ordered_json::array();
    for (std::size_t i = 0; i < 5; ++i) {
        roots.push_back(pair_of(rl.roots[i]));
        residuals.push_back(canonical_zero(rl.residuals[i]));
        ys.push_back(pair_of(rs.y[i]));
        alphas.push_back(pair_of(rs.alpha[i]));
        contributing.push_back(rs.contributing[i]);
    }
    j["roots"] = std::move(roots);
    j["residuals"] = std::move(residuals);
    j["y"] = std::move(ys);
    j["alpha"] = std::move(alphas);
    j["contributing"] = std::move(contributing);
    j["sum_of_roots"] = pair_of(sum);
    j["factorization_max_rel_err"] = canonical_zero(fact_err);
    ordered_json pairs = ordered_json::array();
    for (const auto& [a, b] : rl.close_pairs) pairs.push_back(ordered_json::array({a, b}));
    j["degenerate_pairs"] = std::move(pairs);

    const std::string body = dump_json(j);
    if (opt.output.empty()) {
        std::fwrite(body.data(), 1, body.size(), stdout);
    } else {
        write_atomic(opt.output, body);
    }
    return 0;
}

}  // namespace bandedge::tools
