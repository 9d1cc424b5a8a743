#include "symsearch/scoring.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace symsearch {

double s_mse(std::span<const double> pred, std::span<const double> target) {
    if (pred.size() != target.size())
        throw std::invalid_argument("s_mse: length mismatch");
    if (pred.empty()) throw std::invalid_argument("s_mse: empty input");
    double acc = 0.0;
    for (size_t i = 0; i < pred.size(); ++i) {
        if (!std::isfinite(pred[i]) || !std::isfinite(target[i]))
            throw std::invalid_argument("s_mse: non-finite input");
        const double d = target[i] - pred[i];
        acc += d * d;
    }
    return -acc / double(pred.size());
}

double nmse(std::span<const double> pred, std::span<const double> target) {
    if (pred.size() != target.size())
        throw std::invalid_argument("nmse: length mismatch");
    if (pred.empty()) throw std::invalid_argument("nmse: empty input");
    const size_t n = target.size();
    double mean = 0.0;
    for (double y : target) mean += y;
    mean /= double(n);
    double var = 0.0;
    for (double y : target) var += (y - mean) * (y - mean);
    var /= double(n);
    if (var <= 0.0) throw std::invalid_argument("nmse: zero target variance");
    double mse = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const double d = target[i] - pred[i];
        mse += d * d;
    }
    mse /= double(n);
    return mse / var;
}

std::vector<double> normalize_scores(std::span<const double> scores) {
    if (scores.empty()) throw std::invalid_argument("normalize_scores: empty input");
    const auto [mn_it, mx_it] = std::minmax_element(scores.begin(), scores.end());
    const double mn = *mn_it, mx = *mx_it;
    std::vector<double> out(scores.size());
    if (mx == mn) {
        std::fill(out.begin(), out.end(), 0.5);
        return out;
    }
    const double inv = 1.0 / (mx - mn);
    for (size_t i = 0; i < scores.size(); ++i) out[i] = (scores[i] - mn) * inv;
    return out;
}

double pace_phi(double t, const PaceParams& pp) {
    return (std::pow(pp.base, t) - 1.0) / (pp.base - 1.0);
}

double pace_sigma(double t, const PaceParams& pp) {
    return std::max(0.0, 1.0 - pp.eta * pace_phi(t, pp));
}

double pace_delta(double t, const PaceParams& pp) {
    return pp.alpha * pace_phi(t, pp);
}

double pace_score(double s_norm, bool valid, const BudgetState& budget,
                  const PaceParams& pp) {
    const double base = (1.0 - pp.beta) + 2.0 * pp.beta * s_norm;
    if (valid) return base;
    const double t = budget.t();
    return pace_sigma(t, pp) * base - pace_delta(t, pp);
}

std::vector<double> cluster_distribution(std::span<const double> scores, double tau) {
    if (scores.empty()) throw std::invalid_argument("cluster_distribution: empty input");
    if (!(tau > 0.0)) throw std::invalid_argument("cluster_distribution: tau must be > 0");
    const double mx = *std::max_element(scores.begin(), scores.end());
    std::vector<double> out(scores.size());
    double sum = 0.0;
    for (size_t i = 0; i < scores.size(); ++i) {
        out[i] = std::exp((scores[i] - mx) / tau);
        sum += out[i];
    }
    for (double& p : out) p /= sum;
    return out;
}

double temperature(uint64_t n_samples, const TemperatureSchedule& sched) {
    const uint64_t phase = sched.period == 0 ? 0 : n_samples % sched.period;
    const double tau =
        sched.tau_init * (1.0 - double(phase) / double(std::max<uint64_t>(sched.period, 1)));
    return std::max(tau, sched.tau_init / 100.0);
}

double empirical_rademacher(const std::vector<std::vector<double>>& outputs,
                            int trials, uint64_t seed) {
    if (outputs.empty()) throw std::invalid_argument("empirical_rademacher: empty candidate set");
    if (trials < 1) throw std::invalid_argument("empirical_rademacher: trials must be >= 1");
    const size_t n = outputs.front().size();
    for (const auto& v : outputs)
        if (v.size() != n)
            throw std::invalid_argument("empirical_rademacher: unequal output lengths");
    if (n == 0) throw std::invalid_argument("empirical_rademacher: empty output vectors");

    Rng rng(seed);
    std::vector<double> signs(n);
    double acc = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
        for (size_t i = 0; i < n; ++i) signs[i] = (rng.next_u64() & 1u) ? 1.0 : -1.0;
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& f : outputs) {
            double corr = 0.0;
            for (size_t i = 0; i < n; ++i) corr += signs[i] * f[i];
            best = std::max(best, corr / double(n));
        }
        acc += best;
    }
    return acc / double(trials);
}

}  // namespace symsearch
