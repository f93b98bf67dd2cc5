#pragma once

// Closed-form activity probability and base-station demand. A user that
// initiates transactions with per-second probability p and drains them at
// goodput r_g is active a min(1, (mu_f/r_g)*p) fraction of the time
// (Little's Law); each active user consumes max(r_t/R_max, 1/N_max) of one
// base station.

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "bsplanner/errors.hpp"

namespace bsplanner {

// Discrete distribution over file sizes, in bits.
class FileSizeDistribution {
public:
    struct Entry {
        double size_bits;
        double prob;
    };

    FileSizeDistribution() = default;

    explicit FileSizeDistribution(std::vector<Entry> entries) : entries_(std::move(entries)) {
        validate();
    }

    const std::vector<Entry>& entries() const { return entries_; }

    // mu_f, always computed from the entries.
    double mean_bits() const {
        double mu = 0.0;
        for (const auto& e : entries_) mu += e.size_bits * e.prob;
        return mu;
    }

    void validate() const {
        if (entries_.empty()) throw invalid_parameter("file size distribution has no entries");
        double total = 0.0;
        for (const auto& e : entries_) {
            if (e.size_bits <= 0.0)
                throw invalid_parameter("file size must be positive, got " + std::to_string(e.size_bits));
            if (e.prob < 0.0)
                throw invalid_parameter("file probability must be nonnegative, got " + std::to_string(e.prob));
            total += e.prob;
        }
        if (std::abs(total - 1.0) > 1e-9)
            throw invalid_parameter("file probabilities sum to " + std::to_string(total) + ", expected 1");
        if (mean_bits() <= 0.0) throw invalid_parameter("mean file size must be positive");
    }

private:
    std::vector<Entry> entries_;
};

// Population and provisioning knobs for one scenario.
struct ScenarioParams {
    long n = 0;                   // users
    double p = 0.0;               // transaction-initiation probability per 1 s slot
    FileSizeDistribution files;
    double r_t = 0.0;             // provisioned per-user throughput, bits/s
    double r_max = 0.0;           // per-base-station throughput capacity, bits/s
    long n_max = 1;               // per-base-station active-user capacity

    void validate() const {
        if (n < 0) throw invalid_parameter("n must be nonnegative");
        if (p < 0.0 || p > 1.0) throw invalid_parameter("p must lie in [0,1], got " + std::to_string(p));
        if (r_t <= 0.0) throw invalid_parameter("r_t must be positive");
        if (r_max <= 0.0) throw invalid_parameter("R_max must be positive");
        if (n_max < 1) throw invalid_parameter("N_max must be at least 1");
        files.validate();
    }

    // Base-station share one active user consumes.
    double per_user_demand() const {
        return std::max(r_t / r_max, 1.0 / static_cast<double>(n_max));
    }
};

// Expected transaction duration, mu_f / r_g, in seconds.
inline double mean_transaction_duration(const FileSizeDistribution& files, double r_g) {
    if (r_g <= 0.0) throw invalid_parameter("r_g must be positive");
    files.validate();
    return files.mean_bits() / r_g;
}

// P(Delta, p) = min(1, Delta * p). Unstable scenarios saturate at 1.
inline double activity_probability(const FileSizeDistribution& files, double p, double r_g) {
    if (p < 0.0 || p > 1.0) throw invalid_parameter("p must lie in [0,1], got " + std::to_string(p));
    return std::min(1.0, mean_transaction_duration(files, r_g) * p);
}

inline bool is_stable(const FileSizeDistribution& files, double p, double r_g) {
    if (p < 0.0 || p > 1.0) throw invalid_parameter("p must lie in [0,1], got " + std::to_string(p));
    return mean_transaction_duration(files, r_g) * p < 1.0;
}

// Fractional expected base-station count: n * P(Delta,p) * max(r_t/R_max, 1/N_max).
inline double expected_base_stations(const ScenarioParams& params, double r_g) {
    params.validate();
    const double activity = activity_probability(params.files, params.p, r_g);
    return static_cast<double>(params.n) * activity * params.per_user_demand();
}

inline long required_base_stations(const ScenarioParams& params, double r_g) {
    return static_cast<long>(std::ceil(expected_base_stations(params, r_g)));
}

}  // namespace bsplanner
