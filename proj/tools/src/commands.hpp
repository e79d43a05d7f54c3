#pragma once

#include <cstdint>
#include <string>

namespace bandedge::tools {

struct CommonParams {
    double beta = 1.0;
    double gamma = 0.2;
    double delta = 0.0;
    double delta_g = 0.0;
    double omega = 0.01;
    double chi_prefactor = 1.0;
};

struct TraceOptions {
    CommonParams p;
    double t_max = 50.0;
    std::uint64_t steps = 5000;
    std::string method = "closed_form";  // closed_form | closed | volterra | both
    std::string format;                  // csv | json | "" (infer from extension, else csv)
    std::string output;                  // empty: stdout
    bool full_system = false;
    std::string gnuplot;                 // optional companion plot script path
};

struct SweepOptions {
    TraceOptions base;       // output/gnuplot ignored; format applies to every trace
    std::string param;       // gamma | delta | delta-g | delta_g | omega
    std::string values_csv;  // comma-separated reals; empty string = empty sweep
    std::string output_dir;
};

struct ValidateOptions {
    CommonParams p;
    double h = 0.005;
    double t_max = 50.0;
    std::string gammas_csv = "5,1,0.5,0.2";
    std::string checks_csv = "oracle,markovian,kernel";
};

struct RootsOptions {
    CommonParams p;
    std::string output;  // empty: stdout
};

// Each returns a process exit status; domain errors propagate as
// bandedge::Error for main() to map onto exit codes 2/3.
int run_trace(const TraceOptions& opt);
int run_sweep(const SweepOptions& opt);
int run_validate(const ValidateOptions& opt);
int run_roots(const RootsOptions& opt);

}  // namespace bandedge::tools
