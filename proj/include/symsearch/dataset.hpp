#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "symsearch/expr.hpp"

namespace symsearch {

enum class Split : uint8_t { Train, IdVal, OodVal };

const char* split_name(Split s);
std::optional<Split> split_from_name(const std::string& s);

struct VariableInfo {
    std::string name;
    std::string description;
    std::string units;
};

/// Labeled numeric table with per-row split tags. Immutable once built;
/// per-split column copies are materialized up front so evaluators can bind
/// contiguous columns.
class Dataset {
public:
    Dataset(std::vector<VariableInfo> variables, std::string target_name,
            std::vector<std::vector<double>> rows, std::vector<Split> splits,
            std::string provenance);

    const std::vector<VariableInfo>& variables() const { return variables_; }
    const std::string& target_name() const { return target_name_; }
    const std::string& provenance() const { return provenance_; }
    size_t num_rows() const { return splits_.size(); }
    size_t num_vars() const { return variables_.size(); }
    const std::vector<double>& row(size_t i) const { return rows_[i]; }
    Split split_of(size_t i) const { return splits_[i]; }
    size_t count(Split s) const;

    /// Column-major view of one split: inputs bound by variable name plus
    /// the target vector.
    struct View {
        EvalTable table;                       // input columns
        std::span<const double> target;
        size_t rows() const { return target.size(); }
    };
    View view(Split s) const;

    /// Input column of one split by variable index.
    std::span<const double> column(Split s, size_t var) const;

private:
    struct SplitColumns {
        std::vector<std::vector<double>> inputs;  // one per variable
        std::vector<double> target;
    };
    const SplitColumns& block(Split s) const;

    std::vector<VariableInfo> variables_;
    std::string target_name_;
    std::vector<std::vector<double>> rows_;   // row-major, d+1 wide (target last)
    std::vector<Split> splits_;
    std::string provenance_;
    std::array<SplitColumns, 3> blocks_;
};

enum class SystemId { Ecoli, Crk, Osc1, Osc2, StressCsv };

const char* system_name(SystemId id);
std::optional<SystemId> system_from_name(const std::string& name);

/// Benchmark definition: printed ground truth with fixed coefficients plus
/// the sampling configuration used to generate its dataset.
struct SystemSpec {
    SystemId id;
    Expression ground_truth;                   // empty for stress_csv
    std::vector<VariableInfo> variables;
    std::string target_name;
    std::string description;                   // problem text used in prompts

    // oscillators / crk trajectory config
    double t_end = 50.0;
    double dt = 0.02;
    double x0 = 0.5, v0 = 0.5;                 // oscillators
    double a0 = 5.0;                           // crk initial concentration
    // crk grid
    double crk_grid_max = 6.0, crk_ood_max = 9.0;
    int crk_grid_points = 257, crk_ood_points = 129;
    // ecoli grids (train box and extended box; 6 points per axis)
    std::array<std::array<double, 2>, 4> ecoli_train_box;
    std::array<std::array<double, 2>, 4> ecoli_outer_box;
    int ecoli_points_per_axis = 6;
    std::string stress_path;                   // raw csv for stress_csv

    static SystemSpec standard(SystemId id);
};

struct NoiseSpec {
    double sigma = 0.0;
    uint64_t seed = 0;
};

/// One sample of a second-order trajectory; `accel` is the rhs evaluated at
/// the sample state.
struct TrajectoryPoint {
    double t, x, v, accel;
};

struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& msg, size_t step)
        : std::runtime_error(msg + " (step " + std::to_string(step) + ")"), step(step) {}
    size_t step;
};

/// Classical fixed-step RK4 on x_dot = v, v_dot = rhs(t, x, v). Throws
/// IntegrationError if the rhs produces a non-finite value.
std::vector<TrajectoryPoint> integrate_ode(const Expression& rhs, double x0, double v0,
                                           double t_begin, double t_end, double dt,
                                           std::span<const double> params = {},
                                           const EvalGuard& guard = {});

/// Scalar RK4 on x_dot = rhs(t, x); returns (t, x, rhs) samples in the
/// TrajectoryPoint layout with v = rhs.
std::vector<TrajectoryPoint> integrate_scalar_ode(const Expression& rhs, double x0,
                                                  double t_begin, double t_end, double dt,
                                                  std::span<const double> params = {},
                                                  const EvalGuard& guard = {});

Dataset make_dataset(const SystemSpec& spec);

Dataset add_noise(const Dataset& d, const NoiseSpec& spec);
Dataset subsample(const Dataset& d, double fraction, uint64_t seed);

void save_csv(const Dataset& d, const std::string& path);
Dataset load_csv(const std::string& path);

/// Bisection root of the CRK rate equation on [0.5, 5]; used when
/// generating the dataset to record the equilibrium concentration.
double crk_equilibrium();

}  // namespace symsearch
