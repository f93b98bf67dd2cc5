#pragma once

// Discrete-time Monte Carlo simulation of user transaction arrivals and
// per-user processor-sharing service. Each timestep every user draws a new
// transaction with probability p*dt; a user with k queued transactions serves
// each of them (r_g/k)*dt bits. The instantaneous base-station demand is
// (active users) * max(r_t/R_max, 1/N_max).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "bsplanner/capacity.hpp"
#include "bsplanner/errors.hpp"

namespace bsplanner {

struct SimConfig {
    double horizon = 1000.0;  // seconds
    double dt = 0.1;          // seconds
    int iterations = 100;
    std::uint64_t seed = 0;

    void validate() const {
        if (horizon <= 0.0) throw invalid_parameter("horizon must be positive");
        if (dt <= 0.0) throw invalid_parameter("dt must be positive");
        if (dt > horizon) throw invalid_parameter("dt must not exceed horizon");
        if (iterations < 1) throw invalid_parameter("iterations must be at least 1");
    }
};

struct Transaction {
    double remaining_bits;
    double size_bits;
    double start_time;
};

// A user is active iff its queue is non-empty.
struct UserState {
    std::vector<Transaction> queue;
    bool active() const { return !queue.empty(); }
};

struct StepMetrics {
    long active_users = 0;
    double fractional_demand = 0.0;
    double bits_served = 0.0;
    long completions = 0;
};

struct IterationStats {
    double mean_active_fraction = 0.0;
    double mean_nbs_fractional = 0.0;
    long nbs_required = 0;         // ceiling of mean_nbs_fractional
    long completed = 0;
    double mean_completion_time = 0.0;
    double bits_served = 0.0;
};

struct SimStats {
    double mean_active_fraction = 0.0;
    double mean_nbs_fractional = 0.0;
    double nbs_required = 0.0;     // per-iteration ceilings, averaged
    long completed = 0;
    double mean_completion_time = 0.0;
    std::vector<IterationStats> per_iteration;
};

using SimRng = std::mt19937_64;

// Deterministic substream for one iteration: the engine is seeded from a
// seed_seq over (master seed, iteration index).
inline SimRng make_iteration_rng(std::uint64_t master_seed, int iteration) {
    std::seed_seq seq{
        static_cast<std::uint32_t>(master_seed),
        static_cast<std::uint32_t>(master_seed >> 32),
        static_cast<std::uint32_t>(iteration),
    };
    return SimRng(seq);
}

// Inverse-CDF draw over the ordered entry list.
inline double sample_file_size(const FileSizeDistribution& files, SimRng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double u = unit(rng);
    double acc = 0.0;
    for (const auto& e : files.entries()) {
        acc += e.prob;
        if (u < acc) return e.size_bits;
    }
    return files.entries().back().size_bits;
}

// One timestep: arrivals first, then service over the queue as it stands
// after arrivals. k stays fixed within the step, so capacity freed by a
// mid-step completion is not redistributed until the next step.
inline StepMetrics step(std::vector<UserState>& users, const ScenarioParams& scenario,
                        double r_g, double dt, double now, SimRng& rng,
                        std::vector<double>* completion_times = nullptr) {
    if (r_g <= 0.0) throw invalid_parameter("r_g must be positive");
    if (scenario.p * dt > 1.0)
        throw invalid_parameter("p*dt exceeds 1; reduce the timestep");

    std::bernoulli_distribution arrival(scenario.p * dt);
    StepMetrics metrics;
    const double per_user = scenario.per_user_demand();

    for (auto& user : users) {
        if (arrival(rng)) {
            const double size = sample_file_size(scenario.files, rng);
            user.queue.push_back({size, size, now});
        }

        if (!user.active()) continue;
        ++metrics.active_users;

        const double share = r_g / static_cast<double>(user.queue.size()) * dt;
        for (auto& txn : user.queue) {
            const double served = std::min(share, txn.remaining_bits);
            txn.remaining_bits -= served;
            metrics.bits_served += served;
            if (txn.remaining_bits <= 0.0) {
                ++metrics.completions;
                if (completion_times) completion_times->push_back(now + dt - txn.start_time);
            }
        }
        std::erase_if(user.queue, [](const Transaction& t) { return t.remaining_bits <= 0.0; });
    }

    metrics.fractional_demand = static_cast<double>(metrics.active_users) * per_user;
    return metrics;
}

inline IterationStats run_iteration(const ScenarioParams& scenario, const SimConfig& sim,
                                    double r_g, SimRng& rng) {
    scenario.validate();
    sim.validate();
    if (scenario.p * sim.dt > 1.0) throw invalid_parameter("p*dt exceeds 1");

    const long steps = static_cast<long>(std::llround(sim.horizon / sim.dt));
    std::vector<UserState> users(static_cast<std::size_t>(scenario.n));
    std::vector<double> completion_times;

    double active_sum = 0.0;
    double demand_sum = 0.0;
    IterationStats stats;
    for (long s = 0; s < steps; ++s) {
        const StepMetrics m = step(users, scenario, r_g, sim.dt, static_cast<double>(s) * sim.dt, rng,
                                   &completion_times);
        active_sum += static_cast<double>(m.active_users);
        demand_sum += m.fractional_demand;
        stats.completed += m.completions;
        stats.bits_served += m.bits_served;
    }

    const double denom = static_cast<double>(steps);
    stats.mean_active_fraction =
        scenario.n > 0 ? active_sum / (denom * static_cast<double>(scenario.n)) : 0.0;
    stats.mean_nbs_fractional = demand_sum / denom;
    stats.nbs_required = static_cast<long>(std::ceil(stats.mean_nbs_fractional));
    stats.mean_completion_time =
        completion_times.empty()
            ? 0.0
            : std::accumulate(completion_times.begin(), completion_times.end(), 0.0) /
                  static_cast<double>(completion_times.size());
    return stats;
}

namespace detail {

inline int thread_budget(int iterations) {
    int budget = static_cast<int>(std::thread::hardware_concurrency());
    if (budget < 1) budget = 1;
    if (const char* env = std::getenv("BSPLANNER_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) budget = std::min(budget, cap);
    }
    return std::min(budget, iterations);
}

}  // namespace detail

// Runs `iterations` independent runs with per-iteration substreams derived
// from (seed, iteration index), so results are bit-identical for identical
// inputs no matter how many threads execute them.
inline SimStats run_simulation(const ScenarioParams& scenario, const SimConfig& sim, double r_g) {
    scenario.validate();
    sim.validate();

    SimStats stats;
    stats.per_iteration.resize(static_cast<std::size_t>(sim.iterations));

    const int threads = detail::thread_budget(sim.iterations);
    auto work = [&](int first, int stride) {
        for (int i = first; i < sim.iterations; i += stride) {
            SimRng rng = make_iteration_rng(sim.seed, i);
            stats.per_iteration[static_cast<std::size_t>(i)] = run_iteration(scenario, sim, r_g, rng);
        }
    };
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t) pool.emplace_back(work, t, threads);
        for (auto& th : pool) th.join();
    }

    // Aggregate over iteration index; completion times are weighted by count.
    double completion_weighted = 0.0;
    for (const auto& it : stats.per_iteration) {
        stats.mean_active_fraction += it.mean_active_fraction;
        stats.mean_nbs_fractional += it.mean_nbs_fractional;
        stats.nbs_required += static_cast<double>(it.nbs_required);
        stats.completed += it.completed;
        completion_weighted += it.mean_completion_time * static_cast<double>(it.completed);
    }
    const double k = static_cast<double>(sim.iterations);
    stats.mean_active_fraction /= k;
    stats.mean_nbs_fractional /= k;
    stats.nbs_required /= k;
    stats.mean_completion_time =
        stats.completed > 0 ? completion_weighted / static_cast<double>(stats.completed) : 0.0;
    return stats;
}

}  // namespace bsplanner
