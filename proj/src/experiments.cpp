#include "tsg/experiments.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <nlohmann/json.hpp>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "tsg/csv.hpp"
#include "tsg/payoff.hpp"

namespace tsg {

const char* to_string(SolveMode mode) {
    return mode == SolveMode::Exact ? "exact" : "heuristic";
}

SolveMode parse_solve_mode(const std::string& name) {
    if (name == "exact") return SolveMode::Exact;
    if (name == "heuristic") return SolveMode::Heuristic;
    throw ConfigError("unknown mode '" + name + "', expected exact or heuristic");
}

namespace {

int executions(const Profile& profile) {
    int total = 0;
    for (const Schedule& s : profile) total += static_cast<int>(s.size());
    return total;
}

// Sum of payoffs must reproduce the welfare on every profile we report.
void check_payoff_sum(const Instance& inst, const Profile& profile) {
    double sum = 0.0;
    for (std::size_t i = 0; i < inst.users.size(); ++i)
        sum += user_payoff(inst, profile, i);
    if (std::abs(sum - social_welfare(inst, profile)) > 1e-9)
        throw std::logic_error("payoff sum does not match social welfare");
}

nlohmann::json payoffs_json(const Instance& inst, const Profile& profile) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < inst.users.size(); ++i)
        arr.push_back(user_payoff(inst, profile, i));
    return arr;
}

}  // namespace

SolveReport run_single(const Instance& inst, const SolveOptions& opts) {
    SolveReport report;
    report.mode = opts.mode;

    if (opts.mode == SolveMode::Exact) {
        JointOptimum se = maximize_welfare(inst, opts.optimizer);
        report.se_profile = std::move(se.profile);
        report.sw_se = se.value;
        JointOptimum phi = maximize_potential(inst, opts.optimizer);
        report.sw_ne_phi = social_welfare(inst, phi.profile);
        report.ne_phi_verified = verify_ne(inst, phi.profile).is_ne;
        check_payoff_sum(inst, phi.profile);
        report.ne_phi_profile = std::move(phi.profile);
    } else {
        report.se_profile = greedy_welfare_heuristic(inst);
        report.sw_se = social_welfare(inst, report.se_profile);
    }
    check_payoff_sum(inst, report.se_profile);
    report.sum_mk_se = executions(report.se_profile);

    Profile start(inst.users.size());
    DynamicsResult dyn = best_response_dynamics(inst, std::move(start), opts.dynamics);
    report.trace = std::move(dyn.trace);
    report.ne_dyn_profile = std::move(dyn.profile);
    report.sw_ne_dyn = social_welfare(inst, report.ne_dyn_profile);
    report.ne_dyn_verified = verify_ne(inst, report.ne_dyn_profile).is_ne;
    report.sum_mk_ne = executions(report.ne_dyn_profile);
    check_payoff_sum(inst, report.ne_dyn_profile);

    std::vector<double> payoffs;
    payoffs.reserve(inst.users.size());
    for (std::size_t i = 0; i < inst.users.size(); ++i)
        payoffs.push_back(user_payoff(inst, report.ne_dyn_profile, i));
    report.jain_ne = jain_index(payoffs);

    if (inst.tasks.empty() || inst.users.empty())
        report.ratio = 1.0;
    else if (report.sw_se > kEps)
        report.ratio = report.sw_ne_dyn / report.sw_se;

    return report;
}

nlohmann::json report_to_json(const Instance& inst, const SolveReport& report) {
    nlohmann::json trace = nlohmann::json::array();
    for (const TraceRow& row : report.trace.rows)
        trace.push_back({{"round", row.round},
                         {"user", row.user},
                         {"old_payoff", row.old_payoff},
                         {"new_payoff", row.new_payoff},
                         {"potential", row.potential_after}});

    nlohmann::json j{
        {"mode", to_string(report.mode)},
        {"se",
         {{"profile", profile_to_json(inst, report.se_profile)["schedules"]},
          {"welfare", report.sw_se},
          {"sum_mk", report.sum_mk_se},
          {"payoffs", payoffs_json(inst, report.se_profile)}}},
        {"ne_dynamics",
         {{"profile", profile_to_json(inst, report.ne_dyn_profile)["schedules"]},
          {"welfare", report.sw_ne_dyn},
          {"potential", potential(inst, report.ne_dyn_profile)},
          {"verified", report.ne_dyn_verified},
          {"converged", report.trace.status == DynamicsStatus::Converged},
          {"rounds", report.trace.rounds},
          {"sum_mk", report.sum_mk_ne},
          {"jain", report.jain_ne},
          {"payoffs", payoffs_json(inst, report.ne_dyn_profile)},
          {"trace", trace}}},
        {"ratio", report.ratio ? nlohmann::json(*report.ratio) : nlohmann::json()},
    };

    if (report.ne_phi_profile) {
        j["ne_potential"] = {{"profile", profile_to_json(inst, *report.ne_phi_profile)["schedules"]},
                             {"welfare", *report.sw_ne_phi},
                             {"potential", potential(inst, *report.ne_phi_profile)},
                             {"verified", report.ne_phi_verified},
                             {"payoffs", payoffs_json(inst, *report.ne_phi_profile)}};
    } else {
        j["ne_potential"] = nullptr;
    }
    return j;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

std::uint64_t replication_seed(std::uint64_t seed_base, int n_users, UserType type, int rep) {
    std::uint64_t s = splitmix64(seed_base);
    s = splitmix64(s ^ static_cast<std::uint64_t>(n_users));
    s = splitmix64(s ^ static_cast<std::uint64_t>(type));
    s = splitmix64(s ^ static_cast<std::uint64_t>(rep));
    return s;
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
    if (spec.reps < 1) throw ConfigError("reps must be >= 1");
    if (spec.threads < 1) throw ConfigError("threads must be >= 1");

    struct Job {
        int n_users;
        int rep;
    };
    std::vector<Job> jobs;
    jobs.reserve(spec.user_counts.size() * static_cast<std::size_t>(spec.reps));
    for (int n : spec.user_counts)
        for (int rep = 0; rep < spec.reps; ++rep) jobs.push_back({n, rep});

    std::vector<SweepRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size() || failed.load()) return;
            try {
                GenConfig config = spec.base;
                config.n_users = jobs[i].n_users;
                config.mix = pure_mix(spec.user_type);
                config.seed =
                    replication_seed(spec.seed_base, jobs[i].n_users, spec.user_type, jobs[i].rep);
                Instance inst = generate(config);

                SolveOptions opts;
                opts.mode = spec.mode;
                opts.dynamics = spec.dynamics;
                opts.optimizer = spec.optimizer;
                SolveReport report = run_single(inst, opts);
                if (!report.ne_dyn_verified)
                    throw std::runtime_error("dynamics produced a non-equilibrium profile (seed " +
                                             std::to_string(config.seed) + ")");

                SweepRow& row = rows[i];
                row.n_users = jobs[i].n_users;
                row.user_type = spec.user_type;
                row.mode = spec.mode;
                row.rep = jobs[i].rep;
                row.sw_se = report.sw_se;
                row.sw_ne_dyn = report.sw_ne_dyn;
                row.sw_ne_phi = report.sw_ne_phi;
                row.ratio = report.ratio;
                row.jain = report.jain_ne;
                row.sum_mk_ne = report.sum_mk_ne;
                row.sum_mk_se = report.sum_mk_se;
                row.rounds = report.trace.rounds;
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };

    if (spec.threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(spec.threads));
        for (int t = 0; t < spec.threads; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }
    if (error) std::rethrow_exception(error);
    return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "n_users,user_type,mode,rep,sw_se,sw_ne_dyn,sw_ne_phi,ratio,jain,"
           "sum_mk_ne,sum_mk_se,rounds\n";
    for (const SweepRow& row : rows) {
        out << row.n_users << ',' << to_string(row.user_type) << ',' << to_string(row.mode) << ','
            << row.rep << ',' << csv_number(row.sw_se) << ',' << csv_number(row.sw_ne_dyn) << ',';
        if (row.sw_ne_phi) out << csv_number(*row.sw_ne_phi);
        out << ',';
        if (row.ratio) out << csv_number(*row.ratio);
        out << ',' << csv_number(row.jain) << ',' << row.sum_mk_ne << ',' << row.sum_mk_se << ','
            << row.rounds << '\n';
    }
}

namespace {

struct Accumulator {
    std::vector<double> values;

    void add(double v) { values.push_back(v); }

    double mean() const {
        double sum = 0.0;
        for (double v : values) sum += v;
        return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
    }

    // Standard error of the mean, sample std over sqrt(n).
    double stderr_mean() const {
        if (values.size() < 2) return 0.0;
        double m = mean();
        double ss = 0.0;
        for (double v : values) ss += (v - m) * (v - m);
        double var = ss / static_cast<double>(values.size() - 1);
        return std::sqrt(var / static_cast<double>(values.size()));
    }
};

}  // namespace

std::vector<SummaryRow> summarize(const std::vector<SweepRow>& rows) {
    struct Group {
        int n_users;
        UserType type;
        Accumulator sw_se, sw_ne_dyn, sw_ne_phi, ratio, jain, mk_ne, mk_se, rounds;
        int n = 0;
    };
    std::vector<Group> groups;

    for (const SweepRow& row : rows) {
        Group* g = nullptr;
        for (Group& existing : groups)
            if (existing.n_users == row.n_users && existing.type == row.user_type) {
                g = &existing;
                break;
            }
        if (!g) {
            groups.push_back(Group{row.n_users, row.user_type, {}, {}, {}, {}, {}, {}, {}, {}, 0});
            g = &groups.back();
        }
        ++g->n;
        g->sw_se.add(row.sw_se);
        g->sw_ne_dyn.add(row.sw_ne_dyn);
        if (row.sw_ne_phi) g->sw_ne_phi.add(*row.sw_ne_phi);
        if (row.ratio) g->ratio.add(*row.ratio);
        g->jain.add(row.jain);
        g->mk_ne.add(row.sum_mk_ne);
        g->mk_se.add(row.sum_mk_se);
        g->rounds.add(row.rounds);
    }

    std::vector<SummaryRow> out;
    out.reserve(groups.size());
    for (const Group& g : groups) {
        SummaryRow s;
        s.n_users = g.n_users;
        s.user_type = g.type;
        s.n = g.n;
        s.n_ratio = static_cast<int>(g.ratio.values.size());
        s.mean_sw_se = g.sw_se.mean();
        s.stderr_sw_se = g.sw_se.stderr_mean();
        s.mean_sw_ne_dyn = g.sw_ne_dyn.mean();
        s.stderr_sw_ne_dyn = g.sw_ne_dyn.stderr_mean();
        if (!g.sw_ne_phi.values.empty()) {
            s.mean_sw_ne_phi = g.sw_ne_phi.mean();
            s.stderr_sw_ne_phi = g.sw_ne_phi.stderr_mean();
        }
        if (!g.ratio.values.empty()) {
            s.mean_ratio = g.ratio.mean();
            s.stderr_ratio = g.ratio.stderr_mean();
        }
        s.mean_jain = g.jain.mean();
        s.mean_sum_mk_ne = g.mk_ne.mean();
        s.mean_sum_mk_se = g.mk_se.mean();
        s.mean_rounds = g.rounds.mean();
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace tsg
