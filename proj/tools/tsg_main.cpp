#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "tsg/experiments.hpp"
#include "tsg/feasibility.hpp"
#include "tsg/payoff.hpp"

namespace {

// Carries validate_instance results out of a subcommand (exit code 2).
struct ValidationFailure : std::runtime_error {
    explicit ValidationFailure(const tsg::ValidationReport& report)
        : std::runtime_error(join(report)) {}

    static std::string join(const tsg::ValidationReport& report) {
        std::string msg = "instance validation failed:";
        for (const std::string& v : report.violations) msg += "\n  " + v;
        return msg;
    }
};

tsg::Instance load_valid_instance(const std::string& path) {
    tsg::Instance inst = tsg::load_instance(path);
    tsg::ValidationReport report = tsg::validate_instance(inst);
    if (!report.ok()) throw ValidationFailure(report);
    return inst;
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw tsg::FormatError("cannot open output file: " + path);
    out << text;
}

// Accepts "6", "2,4,6" or "2:20:2" (inclusive range with step).
std::vector<int> parse_user_counts(const std::string& arg) {
    std::vector<int> counts;
    auto bad = [&] { throw tsg::ConfigError("cannot parse user counts '" + arg + "'"); };
    try {
        if (arg.find(':') != std::string::npos) {
            std::istringstream in(arg);
            std::string lo, hi, step;
            if (!std::getline(in, lo, ':') || !std::getline(in, hi, ':')) bad();
            std::getline(in, step, ':');
            int a = std::stoi(lo), b = std::stoi(hi);
            int s = step.empty() ? 1 : std::stoi(step);
            if (s <= 0 || a < 0 || b < a) bad();
            for (int n = a; n <= b; n += s) counts.push_back(n);
        } else {
            std::istringstream in(arg);
            std::string item;
            while (std::getline(in, item, ',')) counts.push_back(std::stoi(item));
        }
    } catch (const std::logic_error&) {
        bad();
    }
    if (counts.empty()) bad();
    for (int n : counts)
        if (n < 0) bad();
    return counts;
}

struct GenerateArgs {
    std::uint64_t seed = 0;
    int tasks = 8;
    int users = 2;
    std::string type = "walking";
    double region = 5000.0;
    double horizon = 7200.0;
    double availability = 1.0;
    double budget = std::numeric_limits<double>::infinity();
    double reward_mean = 10.0;
    double window_mean = 1800.0;
    double exec_time_mean = 600.0;
    double exec_cost_mean = 1.0;
    std::string out = "-";
};

void run_generate(const GenerateArgs& a) {
    tsg::GenConfig config;
    config.seed = a.seed;
    config.n_tasks = a.tasks;
    config.n_users = a.users;
    config.region_side = a.region;
    config.horizon = a.horizon;
    config.availability_prob = a.availability;
    config.budget = a.budget;
    config.reward = tsg::DistParams::from_mean(a.reward_mean);
    config.window_length = tsg::DistParams::from_mean(a.window_mean);
    config.exec_time = tsg::DistParams::from_mean(a.exec_time_mean);
    config.exec_cost = tsg::DistParams::from_mean(a.exec_cost_mean);
    config.mix = tsg::pure_mix(tsg::parse_user_type(a.type));

    tsg::Instance inst = tsg::generate(config);
    write_text(a.out, tsg::instance_to_json(inst).dump(2) + "\n");
}

struct SolveArgs {
    std::string instance;
    std::string mode = "exact";
    std::string out = "-";
    std::string trace_out;
    double delta = tsg::kEps;
    int max_rounds = 100;
    double joint_cap = 1e7;
    std::size_t enum_cap = 8;
};

void run_solve(const SolveArgs& a) {
    tsg::Instance inst = load_valid_instance(a.instance);

    tsg::SolveOptions opts;
    opts.mode = tsg::parse_solve_mode(a.mode);
    opts.dynamics.delta = a.delta;
    opts.dynamics.max_rounds = a.max_rounds;
    opts.optimizer.joint_cap = a.joint_cap;
    opts.optimizer.enumeration_cap = a.enum_cap;

    tsg::SolveReport report = tsg::run_single(inst, opts);
    write_text(a.out, tsg::report_to_json(inst, report).dump(2) + "\n");
    if (!a.trace_out.empty()) {
        std::ofstream out(a.trace_out, std::ios::binary);
        if (!out) throw tsg::FormatError("cannot open trace file: " + a.trace_out);
        tsg::write_trace_csv(out, report.trace);
    }
}

struct SweepArgs {
    std::string users = "2:6:2";
    std::string type = "walking";
    std::string mode = "exact";
    int reps = 200;
    std::uint64_t seed_base = 0;
    int tasks = 8;
    double region = 5000.0;
    double horizon = 7200.0;
    double availability = 1.0;
    int threads = 1;
    double delta = tsg::kEps;
    int max_rounds = 100;
    double joint_cap = 1e7;
    std::size_t enum_cap = 8;
    std::string out = "-";
    bool summary = false;
};

void run_sweep_cmd(const SweepArgs& a) {
    tsg::SweepSpec spec;
    spec.user_counts = parse_user_counts(a.users);
    spec.user_type = tsg::parse_user_type(a.type);
    spec.mode = tsg::parse_solve_mode(a.mode);
    spec.reps = a.reps;
    spec.seed_base = a.seed_base;
    spec.base.n_tasks = a.tasks;
    spec.base.region_side = a.region;
    spec.base.horizon = a.horizon;
    spec.base.availability_prob = a.availability;
    spec.dynamics.delta = a.delta;
    spec.dynamics.max_rounds = a.max_rounds;
    spec.optimizer.joint_cap = a.joint_cap;
    spec.optimizer.enumeration_cap = a.enum_cap;
    spec.threads = a.threads;

    std::vector<tsg::SweepRow> rows = tsg::run_sweep(spec);
    std::ostringstream csv;
    tsg::write_sweep_csv(csv, rows);
    write_text(a.out, csv.str());

    if (a.summary) {
        for (const tsg::SummaryRow& s : tsg::summarize(rows)) {
            std::cerr << "N=" << s.n_users << " type=" << to_string(s.user_type)
                      << " reps=" << s.n << " sw_se=" << s.mean_sw_se << "±" << s.stderr_sw_se
                      << " sw_ne_dyn=" << s.mean_sw_ne_dyn << "±" << s.stderr_sw_ne_dyn;
            if (s.mean_ratio)
                std::cerr << " ratio=" << *s.mean_ratio << "±" << *s.stderr_ratio << " (n="
                          << s.n_ratio << ")";
            std::cerr << " jain=" << s.mean_jain << " mk_ne=" << s.mean_sum_mk_ne
                      << " mk_se=" << s.mean_sum_mk_se << " rounds=" << s.mean_rounds << "\n";
        }
    }
}

struct VerifyArgs {
    std::string instance;
    std::string profile;
    double delta = tsg::kEps;
};

int run_verify(const VerifyArgs& a) {
    tsg::Instance inst = load_valid_instance(a.instance);
    tsg::Profile profile = tsg::load_profile(inst, a.profile);

    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (!tsg::schedule_well_formed(inst.users[i], profile[i])) {
            std::cerr << "user " << inst.users[i].id << ": schedule is not well formed\n";
            return 2;
        }
        if (!tsg::is_feasible(inst, inst.users[i], profile[i])) {
            std::cerr << "user " << inst.users[i].id << ": schedule is infeasible\n";
            return 2;
        }
    }

    tsg::NeCheck check = tsg::verify_ne(inst, profile, a.delta);
    if (check.is_ne) {
        std::cout << "equilibrium: yes\n"
                  << "potential: " << tsg::potential(inst, profile) << "\n"
                  << "welfare: " << tsg::social_welfare(inst, profile) << "\n";
        return 0;
    }
    const tsg::NeWitness& w = *check.witness;
    std::cout << "equilibrium: no\n"
              << "user " << inst.users[w.user_index].id << " can gain " << w.gain
              << " by switching to [";
    for (std::size_t j = 0; j < w.deviation.size(); ++j)
        std::cout << (j ? "," : "") << w.deviation[j];
    std::cout << "]\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"task scheduling game: generator, solvers and experiment sweeps"};
    app.require_subcommand(1);

    GenerateArgs gen;
    CLI::App* cmd_gen = app.add_subcommand("generate", "generate a random instance");
    cmd_gen->add_option("--seed", gen.seed, "rng seed");
    cmd_gen->add_option("--tasks", gen.tasks, "number of tasks");
    cmd_gen->add_option("--users", gen.users, "number of users");
    cmd_gen->add_option("--type", gen.type, "user type: walking, bike or driving");
    cmd_gen->add_option("--region", gen.region, "square region side in meters");
    cmd_gen->add_option("--horizon", gen.horizon, "time horizon in seconds");
    cmd_gen->add_option("--availability", gen.availability, "per-task availability probability");
    cmd_gen->add_option("--budget", gen.budget, "execution cost budget per user");
    cmd_gen->add_option("--reward-mean", gen.reward_mean, "mean task reward");
    cmd_gen->add_option("--window-mean", gen.window_mean, "mean window length in seconds");
    cmd_gen->add_option("--exec-time-mean", gen.exec_time_mean, "mean execution time in seconds");
    cmd_gen->add_option("--exec-cost-mean", gen.exec_cost_mean, "mean execution cost");
    cmd_gen->add_option("--out", gen.out, "output path, - for stdout");

    SolveArgs solve;
    CLI::App* cmd_solve = app.add_subcommand("solve", "solve one instance file");
    cmd_solve->add_option("instance", solve.instance, "instance JSON file")->required();
    cmd_solve->add_option("--mode", solve.mode, "exact or heuristic");
    cmd_solve->add_option("--out", solve.out, "report path, - for stdout");
    cmd_solve->add_option("--trace-out", solve.trace_out, "dynamics trace CSV path");
    cmd_solve->add_option("--delta", solve.delta, "improvement threshold for dynamics");
    cmd_solve->add_option("--max-rounds", solve.max_rounds, "dynamics round cap");
    cmd_solve->add_option("--joint-cap", solve.joint_cap, "joint search space cap");
    cmd_solve->add_option("--enum-cap", solve.enum_cap, "per-user task count cap");

    SweepArgs sweep;
    CLI::App* cmd_sweep = app.add_subcommand("sweep", "run a replicated experiment sweep");
    cmd_sweep->add_option("--users", sweep.users, "counts: '6', '2,4,6' or lo:hi:step");
    cmd_sweep->add_option("--type", sweep.type, "user type: walking, bike or driving");
    cmd_sweep->add_option("--mode", sweep.mode, "exact or heuristic");
    cmd_sweep->add_option("--reps", sweep.reps, "replications per user count");
    cmd_sweep->add_option("--seed-base", sweep.seed_base, "base seed for replications");
    cmd_sweep->add_option("--tasks", sweep.tasks, "number of tasks");
    cmd_sweep->add_option("--region", sweep.region, "square region side in meters");
    cmd_sweep->add_option("--horizon", sweep.horizon, "time horizon in seconds");
    cmd_sweep->add_option("--availability", sweep.availability, "availability probability");
    cmd_sweep->add_option("--threads", sweep.threads, "worker threads");
    cmd_sweep->add_option("--delta", sweep.delta, "improvement threshold for dynamics");
    cmd_sweep->add_option("--max-rounds", sweep.max_rounds, "dynamics round cap");
    cmd_sweep->add_option("--joint-cap", sweep.joint_cap, "joint search space cap");
    cmd_sweep->add_option("--enum-cap", sweep.enum_cap, "per-user task count cap");
    cmd_sweep->add_option("--out", sweep.out, "CSV path, - for stdout");
    cmd_sweep->add_flag("--summary", sweep.summary, "print per-point means to stderr");

    VerifyArgs verify;
    CLI::App* cmd_verify = app.add_subcommand("verify", "check a profile for equilibrium");
    cmd_verify->add_option("instance", verify.instance, "instance JSON file")->required();
    cmd_verify->add_option("--profile", verify.profile, "profile JSON file")->required();
    cmd_verify->add_option("--delta", verify.delta, "improvement threshold");

    try {
        app.parse(argc, argv);
        if (*cmd_gen) run_generate(gen);
        if (*cmd_solve) run_solve(solve);
        if (*cmd_sweep) run_sweep_cmd(sweep);
        if (*cmd_verify) return run_verify(verify);
        return 0;
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const tsg::CapExceededError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const tsg::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
