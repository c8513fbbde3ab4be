// Command-line surface for the quaternion multiplication kernels: oracle
// verification, operation counting, netlist export, fixed-point error
// sweeps, and the 2D quaternion-Fourier-transform harness.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "qmk/dqft.hpp"
#include "qmk/fixedpoint.hpp"
#include "qmk/io.hpp"
#include "qmk/netlist.hpp"
#include "qmk/verify.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error(out_path + ": cannot open file for writing");
    out << text;
    if (!out) throw std::runtime_error(out_path + ": write failed");
}

// --- count ------------------------------------------------------------

struct Claim {
    qmk::KernelId id;
    int mult;
    std::map<int, int> adders;
};

const std::vector<Claim>& claims() {
    static const std::vector<Claim> c = {
        {qmk::KernelId::direct, 16, {{2, 12}}},
        {qmk::KernelId::sq, 6, {{2, 6}}},
        {qmk::KernelId::qt, 6, {{2, 6}}},
        {qmk::KernelId::sqt, 9, {{2, 6}, {4, 4}}},
    };
    return c;
}

std::string hist_to_string(const std::map<int, int>& hist) {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (const auto& [fan_in, n] : hist) {
        if (!first) os << ",";
        os << fan_in << ":" << n;
        first = false;
    }
    os << "}";
    return os.str();
}

int equiv_adds(const std::map<int, int>& hist) {
    int total = 0;
    for (const auto& [fan_in, n] : hist) total += (fan_in - 1) * n;
    return total;
}

int cmd_count(bool json) {
    std::ostringstream os;
    bool all_match = true;
    if (!json)
        os << "kernel  mults  adders      2-in equiv  depth(m,a)  tally(m/a)  claimed      result\n";
    else
        os << "[";

    bool first = true;
    for (const Claim& claim : claims()) {
        const qmk::DataflowGraph g = qmk::build_graph(claim.id);
        const qmk::CostReport r = qmk::cost_report(g);
        const qmk::OpTally t = qmk::count_ops(claim.id);
        const bool match = r.mult_count == claim.mult && r.adder_hist == claim.adders &&
                           t.mul == claim.mult && t.add == r.two_input_equiv;
        all_match = all_match && match;

        if (json) {
            if (!first) os << ",";
            os << "{\"kernel\":\"" << qmk::kernel_name(claim.id) << "\",\"mults\":" << r.mult_count
               << ",\"adders\":\"" << hist_to_string(r.adder_hist)
               << "\",\"two_input_equiv\":" << r.two_input_equiv << ",\"tally_mul\":" << t.mul
               << ",\"tally_add\":" << t.add << ",\"match\":" << (match ? "true" : "false") << "}";
            first = false;
        } else {
            const std::string tally = std::to_string(t.mul) + "/" + std::to_string(t.add);
            const std::string claimed = std::to_string(claim.mult) + "m/" +
                                        std::to_string(equiv_adds(claim.adders)) + "a";
            char buf[200];
            std::snprintf(buf, sizeof buf, "%-7s %-6d %-11s %-11d (%d,%d)       %-11s %-12s %s\n",
                          qmk::kernel_name(claim.id), r.mult_count,
                          hist_to_string(r.adder_hist).c_str(), r.two_input_equiv, r.depth_mult,
                          r.depth_add, tally.c_str(), claimed.c_str(),
                          match ? "MATCH" : "MISMATCH");
            os << buf;
        }
    }
    if (json) os << "]\n";
    std::cout << os.str();
    return all_match ? 0 : kExitFailure;
}

// --- bench ------------------------------------------------------------

double time_transform(const qmk::QImage& img, qmk::Method method, qmk::Backend backend,
                      int reps) {
    using clock = std::chrono::steady_clock;
    const auto start = clock::now();
    for (int i = 0; i < reps; ++i) {
        const qmk::QImage F = qmk::dqft_forward(img, method, backend);
        (void)F;
    }
    const std::chrono::duration<double, std::milli> elapsed = clock::now() - start;
    return elapsed.count() / reps;
}

int cmd_bench(const std::vector<int>& sizes, int reps, qmk::Method method) {
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::printf("size  kernel_ms  oracle_ms  mults(scheme)  mults(baseline)\n");
    for (int n : sizes) {
        qmk::QImage img = qmk::make_qimage(n, n);
        for (qmk::Quat& q : img.pix) q = {unit(rng), unit(rng), unit(rng), unit(rng)};
        const double t_kernel = time_transform(img, method, qmk::Backend::kernel, reps);
        const double t_oracle = time_transform(img, method, qmk::Backend::oracle, reps);
        const qmk::OpBudget budget = qmk::dqft_op_budget(n, n, method);
        std::printf("%-5d %-10.3f %-10.3f %-14ld %ld\n", n, t_kernel, t_oracle,
                    budget.scheme_total.mul, budget.baseline_total.mul);
    }
    return 0;
}

// --- dqft -------------------------------------------------------------

int cmd_dqft(const std::string& input, const std::string& output, const std::string& direction,
             qmk::Method method) {
    if (direction == "forward") {
        const qmk::RgbImage rgb = qmk::read_ppm(input);
        const qmk::QImage spectrum = qmk::dqft_forward(qmk::rgb_to_qimage(rgb), method);
        qmk::write_qspc(output, spectrum);
    } else {
        const qmk::QImage spectrum = qmk::read_qspc(input);
        const qmk::QImage img = qmk::dqft_inverse(spectrum, method);
        qmk::write_ppm(output, qmk::qimage_to_rgb(img));
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hardware-oriented quaternion multiplication kernels"};
    app.require_subcommand(1);

    // verify
    long trials = 1000;
    std::uint64_t seed = 0;
    bool json = false;
    CLI::App* verify = app.add_subcommand("verify", "check kernels against the direct product");
    verify->add_option("--trials", trials, "random trials per kernel");
    verify->add_option("--seed", seed, "RNG seed");
    verify->add_flag("--json", json, "machine-readable output");

    // count
    CLI::App* count = app.add_subcommand("count", "operation counts vs the claimed costs");
    count->add_flag("--json", json, "machine-readable output");

    // netlist
    std::string kernel_arg = "sq";
    std::string format_arg = "json";
    std::string out_path;
    CLI::App* netlist = app.add_subcommand("netlist", "export a kernel dataflow graph");
    netlist->add_option("kernel", kernel_arg, "direct|sq|qt|sqt")->required();
    netlist->add_option("--format", format_arg, "dot|json")
        ->check(CLI::IsMember({"dot", "json"}));
    netlist->add_option("--out", out_path, "output file (default stdout)");

    // fxp
    qmk::SweepSpec spec;
    long fxp_trials = 1000;
    CLI::App* fxp = app.add_subcommand("fxp", "fixed-point error sweep (CSV)");
    fxp->add_option("kernel", kernel_arg, "direct|sq|qt|sqt")->required();
    fxp->add_option("--fmin", spec.frac_min, "smallest fraction width");
    fxp->add_option("--fmax", spec.frac_max, "largest fraction width");
    fxp->add_option("--fstep", spec.frac_step, "fraction width step");
    fxp->add_option("--int-bits", spec.integer_bits, "integer bits incl. sign");
    fxp->add_option("--trials", fxp_trials, "trials per fraction width");
    fxp->add_option("--seed", seed, "RNG seed");
    fxp->add_option("--out", out_path, "output file (default stdout)");

    // dqft
    std::string input_path;
    std::string direction = "forward";
    std::string method_arg = "rowcol";
    CLI::App* dqft = app.add_subcommand("dqft", "transform a PPM image / invert a spectrum");
    dqft->add_option("input", input_path, "P6 PPM (forward) or QSPC spectrum (inverse)")
        ->required();
    dqft->add_option("--out", out_path, "output file")->required();
    dqft->add_option("--direction", direction, "forward|inverse")
        ->check(CLI::IsMember({"forward", "inverse"}));
    dqft->add_option("--method", method_arg, "naive|rowcol")
        ->check(CLI::IsMember({"naive", "rowcol"}));

    // bench
    std::vector<int> sizes = {4, 8};
    int reps = 3;
    CLI::App* bench = app.add_subcommand("bench", "kernel vs oracle transform timings");
    bench->add_option("--sizes", sizes, "square image sizes")->delimiter(',');
    bench->add_option("--reps", reps, "repetitions per size");
    bench->add_option("--method", method_arg, "naive|rowcol")
        ->check(CLI::IsMember({"naive", "rowcol"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const qmk::Method method = method_arg == "naive" ? qmk::Method::naive : qmk::Method::rowcol;

        if (verify->parsed()) {
            if (trials < 1) {
                std::cerr << "verify: --trials must be >= 1\n";
                return kExitUsage;
            }
            const qmk::VerifyReport report = qmk::verify_kernels(trials, seed);
            std::cout << qmk::format_report(report, json);
            return report.passed ? 0 : kExitFailure;
        }
        if (count->parsed()) return cmd_count(json);
        if (netlist->parsed()) {
            qmk::KernelId id;
            try {
                id = qmk::parse_kernel(kernel_arg);
            } catch (const std::invalid_argument& e) {
                std::cerr << "netlist: " << e.what() << "\n";
                return kExitUsage;
            }
            const auto format =
                format_arg == "dot" ? qmk::ExportFormat::dot : qmk::ExportFormat::json;
            write_output(out_path, qmk::export_graph(qmk::build_graph(id), format));
            return 0;
        }
        if (fxp->parsed()) {
            qmk::KernelId id;
            try {
                id = qmk::parse_kernel(kernel_arg);
            } catch (const std::invalid_argument& e) {
                std::cerr << "fxp: " << e.what() << "\n";
                return kExitUsage;
            }
            if (fxp_trials < 1 || spec.frac_step < 1 || spec.frac_min < 0 ||
                spec.frac_max < spec.frac_min || spec.integer_bits < 1 ||
                spec.integer_bits + spec.frac_max > 64) {
                std::cerr << "fxp: bad sweep range\n";
                return kExitUsage;
            }
            write_output(out_path, qmk::sweep_csv(qmk::error_sweep(id, spec, fxp_trials, seed)));
            return 0;
        }
        if (dqft->parsed()) return cmd_dqft(input_path, out_path, direction, method);
        if (bench->parsed()) {
            if (reps < 1 || sizes.empty()) {
                std::cerr << "bench: --reps must be >= 1 and --sizes non-empty\n";
                return kExitUsage;
            }
            return cmd_bench(sizes, reps, method);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return 0;
}
