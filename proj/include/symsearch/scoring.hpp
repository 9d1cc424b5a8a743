#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "symsearch/rng.hpp"

namespace symsearch {

/// Annealed constraint-scoring parameters. Valid candidates score in
/// [1-beta, 1+beta]; invalid candidates are shrunk by sigma(t) and shifted
/// down by delta(t) as the sample budget is consumed.
struct PaceParams {
    double beta = 0.6;
    double alpha = 1.2;
    double eta = 1.0;
    double base = 60.0;
};

struct BudgetState {
    uint64_t n_curr = 0;
    uint64_t n_max = 10000;

    double t() const { return n_max == 0 ? 1.0 : double(n_curr) / double(n_max); }
};

struct TemperatureSchedule {
    double tau_init = 0.1;
    uint64_t period = 30000;
};

/// Score s = -MSE(pred, target); 0 iff exact fit. Throws on length mismatch
/// or non-finite input.
double s_mse(std::span<const double> pred, std::span<const double> target);

/// MSE normalized by population variance of the target. Throws on zero
/// target variance.
double nmse(std::span<const double> pred, std::span<const double> target);

/// Min-max normalization into [0,1]; all-equal (or singleton) input maps to
/// 0.5. Throws on empty input.
std::vector<double> normalize_scores(std::span<const double> scores);

double pace_phi(double t, const PaceParams& pp);
double pace_sigma(double t, const PaceParams& pp);
double pace_delta(double t, const PaceParams& pp);

/// The annealed score transform applied to an island-normalized score.
double pace_score(double s_norm, bool valid, const BudgetState& budget,
                  const PaceParams& pp);

/// Softmax over cluster scores at temperature tau (max-subtracted).
std::vector<double> cluster_distribution(std::span<const double> scores, double tau);

/// Sawtooth linear decay from tau_init, floored at tau_init/100.
double temperature(uint64_t n_samples, const TemperatureSchedule& sched);

/// Monte-Carlo estimate of the empirical Rademacher complexity of a finite
/// candidate set given each candidate's output vector on a shared sample.
/// Sign draws depend only on (trials, seed, N), so estimates for a subset
/// and its superset share sign vectors.
double empirical_rademacher(const std::vector<std::vector<double>>& outputs,
                            int trials, uint64_t seed);

}  // namespace symsearch
