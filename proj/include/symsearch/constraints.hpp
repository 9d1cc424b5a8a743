#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "symsearch/dataset.hpp"
#include "symsearch/expr.hpp"

namespace symsearch {

enum class CheckKind {
    DynamicsForm,       // candidate may only use a declared variable set
    ValueAt,            // |f - target| <= tol on the probe grid
    SignAt,             // sign requirement on the probe grid
    MonotoneOn,         // finite-difference monotonicity along one variable
    UnimodalOn,         // rise-then-fall along each listed variable
    BoundedOn,          // |f| <= bound on the probe grid
    Nonlinearity,       // best affine fit must leave relative residual > tol
    Equilibrium,        // |f| <= tol at the data-estimated equilibrium
    BoundedTrajectory,  // integrating the candidate as dynamics stays bounded
    Asymmetry,          // two-sided response asymmetry
};

enum class CheckMode { Pointwise, Statistical };
enum class SignRule { NonNegative, NonPositive, OpposesAxis };

/// One probe axis. Unlisted dataset variables are held at their train
/// medians.
struct ProbeAxis {
    std::string var;
    enum class Kind {
        Fixed,       // single value a
        Absolute,    // linspace [a, b]
        TrainRange,  // linspace over [min + a*w, min + b*w], w = train width
        SymBand,     // +-[a, b] * absmax(var), both signs
    } kind = Kind::TrainRange;
    double a = 0.0, b = 1.0;
    int points = 16;

    static ProbeAxis fixed(std::string v, double value) {
        return {std::move(v), Kind::Fixed, value, value, 1};
    }
    static ProbeAxis absolute(std::string v, double lo, double hi, int n) {
        return {std::move(v), Kind::Absolute, lo, hi, n};
    }
    static ProbeAxis train(std::string v, int n, double lo = 0.0, double hi = 1.0) {
        return {std::move(v), Kind::TrainRange, lo, hi, n};
    }
    static ProbeAxis sym_band(std::string v, double inner, double outer, int n) {
        return {std::move(v), Kind::SymBand, inner, outer, n};
    }
};

struct Check {
    std::string name;
    std::string description;  // rendered into prompts and catalog exports
    CheckKind kind;
    double tolerance = 1e-6;
    std::vector<ProbeAxis> axes;
    // additional disjoint probe zones (e.g. several lethal regions); when
    // non-empty, `axes` is ignored and the union of zones is probed
    std::vector<std::vector<ProbeAxis>> zones;

    std::vector<std::string> allowed_vars;  // DynamicsForm
    double target_value = 0.0;              // ValueAt
    bool tolerance_rel_target = false;      // tol scales with absmax(target)

    SignRule sign_rule = SignRule::NonNegative;
    bool subtract_base = false;          // compare f(probe) - f(axis = base)
    bool center_at_equilibrium = false;  // OpposesAxis about the estimated equilibrium
    double eq_ball = 0.2;                // exclusion radius around the equilibrium

    bool increasing = true;  // MonotoneOn direction

    double bound_rel_target = 0.0;  // BoundedOn: bound = rel * absmax(target)
    double abs_bound = 0.0;         //            used when rel is 0

    double traj_x0 = 0.5, traj_v0 = 0.5, traj_t_end = 50.0, traj_dt = 0.02;
    double traj_bound_rel_x = 10.0;  // bound = rel * absmax(x over train)

    enum class Asym { AboutZero, PeakDecay } asym = Asym::AboutZero;
    double asym_rel = 0.05;  // minimum relative two-sided gap (AboutZero)
};

struct ConstraintSet {
    SystemId system;
    CheckMode default_mode = CheckMode::Pointwise;
    std::vector<Check> checks;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double measured = 0.0;
    double threshold = 0.0;
    std::string detail;
};

struct CheckReport {
    bool valid = false;
    std::vector<CheckResult> per_check;
    std::string failure_reason;  // first failing check
};

/// Train-split summary the checker probes against. `zero_crossing` is a
/// per-variable estimate of where the target changes sign from + to -
/// (binned means refined by a local linear fit); absent when there is no
/// such crossing.
struct DataStats {
    struct VarStats {
        std::string name;
        double min = 0, max = 0, mean = 0, median = 0, absmax = 0;
        std::optional<double> zero_crossing;
    };
    std::vector<VarStats> vars;
    double target_min = 0, target_max = 0, target_mean = 0, target_absmax = 0,
           target_std = 0;
    double noise_sigma = 0.0;
    size_t train_rows = 0;

    static DataStats from_dataset(const Dataset& d, double noise_sigma = 0.0);
    const VarStats& var(const std::string& name) const;
    bool has_var(const std::string& name) const;
};

/// Runs every check; `valid` is the conjunction. A guard violation while
/// probing fails the offending check with detail "non-finite output".
CheckReport check(const Expression& expr, std::span<const double> params,
                  const ConstraintSet& cs, const DataStats& stats,
                  std::optional<CheckMode> mode_override = std::nullopt,
                  const EvalGuard& guard = {});

/// The documented per-benchmark catalogs. Throws std::invalid_argument for
/// an unknown system.
ConstraintSet catalog(SystemId id);
ConstraintSet catalog_by_name(const std::string& system);

/// Plain-text constraint block rendered into generation prompts.
std::string render_hard_rules(const ConstraintSet& cs);

std::string report_to_text(const CheckReport& report);

/// Structured export for expert editing / inspection.
std::string catalog_to_json(const ConstraintSet& cs);

}  // namespace symsearch
