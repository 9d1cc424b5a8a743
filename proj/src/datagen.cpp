#include "symsearch/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "symsearch/rng.hpp"

namespace symsearch {

const char* split_name(Split s) {
    switch (s) {
        case Split::Train: return "train";
        case Split::IdVal: return "id_val";
        case Split::OodVal: return "ood_val";
    }
    return "?";
}

std::optional<Split> split_from_name(const std::string& s) {
    if (s == "train") return Split::Train;
    if (s == "id_val") return Split::IdVal;
    if (s == "ood_val") return Split::OodVal;
    return std::nullopt;
}

const char* system_name(SystemId id) {
    switch (id) {
        case SystemId::Ecoli: return "ecoli";
        case SystemId::Crk: return "crk";
        case SystemId::Osc1: return "osc1";
        case SystemId::Osc2: return "osc2";
        case SystemId::StressCsv: return "stress_csv";
    }
    return "?";
}

std::optional<SystemId> system_from_name(const std::string& name) {
    if (name == "ecoli") return SystemId::Ecoli;
    if (name == "crk") return SystemId::Crk;
    if (name == "osc1") return SystemId::Osc1;
    if (name == "osc2") return SystemId::Osc2;
    if (name == "stress_csv") return SystemId::StressCsv;
    return std::nullopt;
}

Dataset::Dataset(std::vector<VariableInfo> variables, std::string target_name,
                 std::vector<std::vector<double>> rows, std::vector<Split> splits,
                 std::string provenance)
    : variables_(std::move(variables)),
      target_name_(std::move(target_name)),
      rows_(std::move(rows)),
      splits_(std::move(splits)),
      provenance_(std::move(provenance)) {
    if (rows_.size() != splits_.size())
        throw std::invalid_argument("Dataset: rows/splits size mismatch");
    const size_t width = variables_.size() + 1;
    for (auto& b : blocks_) b.inputs.resize(variables_.size());
    for (size_t i = 0; i < rows_.size(); ++i) {
        if (rows_[i].size() != width)
            throw std::invalid_argument("Dataset: row " + std::to_string(i) + " has wrong width");
        for (double v : rows_[i])
            if (!std::isfinite(v))
                throw std::invalid_argument("Dataset: non-finite entry in row " +
                                            std::to_string(i));
        auto& b = blocks_[size_t(splits_[i])];
        for (size_t c = 0; c < variables_.size(); ++c) b.inputs[c].push_back(rows_[i][c]);
        b.target.push_back(rows_[i].back());
    }
}

size_t Dataset::count(Split s) const { return blocks_[size_t(s)].target.size(); }

const Dataset::SplitColumns& Dataset::block(Split s) const { return blocks_[size_t(s)]; }

Dataset::View Dataset::view(Split s) const {
    const auto& b = block(s);
    View v;
    for (size_t c = 0; c < variables_.size(); ++c)
        v.table.add(variables_[c].name, std::span<const double>(b.inputs[c]));
    v.target = std::span<const double>(b.target);
    return v;
}

std::span<const double> Dataset::column(Split s, size_t var) const {
    return std::span<const double>(block(s).inputs.at(var));
}

// ---------------------------------------------------------------------------
// System definitions
// ---------------------------------------------------------------------------

namespace {

// E. coli growth parameters: the benchmark equation's symbolic coefficients
// are fixed here as documented synthetic defaults.
constexpr double kEcMuMax = 0.8, kEcKs = 0.5, kEcK = 0.5, kEcX0 = 30.0, kEcC = 1e-3,
                 kEcXDecay = 37.0, kEcPhOpt = 7.0, kEcPhMin = 4.0, kEcPhMax = 10.0;

std::string ecoli_truth_text() {
    std::ostringstream os;
    os << kEcMuMax << "*B*(S/(" << kEcKs << " + S))"
       << "*(tanh(" << kEcK << "*(T - " << kEcX0 << "))/(1 + " << kEcC << "*(T - " << kEcXDecay
       << ")^4))"
       << "*exp(-abs(pH - " << kEcPhOpt << "))"
       << "*sin((pH - " << kEcPhMin << ")*3.141592653589793/" << (kEcPhMax - kEcPhMin) << ")^2";
    return os.str();
}

constexpr const char* kCrkTruth = "-0.1899*A^2 + 0.4598*A^2/(0.7498*A^4 + 1)";
constexpr const char* kOsc1Truth =
    "0.8*sin(x) - 0.5*v^3 - 0.2*x^3 - 0.5*x*v - x*cos(x)";
constexpr const char* kOsc2Truth =
    "0.3*sin(t) - 0.5*v^3 - x*v - 5*x*exp(0.5*x)";

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(size_t(n));
    if (n == 1) {
        out[0] = lo;
        return out;
    }
    for (int i = 0; i < n; ++i) out[size_t(i)] = lo + (hi - lo) * double(i) / double(n - 1);
    return out;
}

}  // namespace

SystemSpec SystemSpec::standard(SystemId id) {
    SystemSpec s;
    s.id = id;
    switch (id) {
        case SystemId::Ecoli:
            s.ground_truth = parse(ecoli_truth_text());
            s.variables = {{"B", "bacterial population density", ""},
                           {"S", "substrate concentration", ""},
                           {"T", "temperature", "degC"},
                           {"pH", "acidity level", ""}};
            s.target_name = "dB_dt";
            s.description =
                "Growth dynamics of E. coli as a function of population density B, "
                "substrate concentration S, temperature T and pH; the target is the "
                "instantaneous growth rate dB_dt.";
            s.ecoli_train_box = {{{0.0, 2.0}, {0.0, 4.0}, {20.0, 45.0}, {4.5, 9.5}}};
            s.ecoli_outer_box = {{{0.0, 3.0}, {0.0, 6.0}, {10.0, 55.0}, {3.5, 10.5}}};
            break;
        case SystemId::Crk:
            s.ground_truth = parse(kCrkTruth);
            s.variables = {{"t", "time", "s"}, {"A", "substance concentration", ""}};
            s.target_name = "dA_dt";
            s.description =
                "Chemical reaction kinetics: concentration A of a species evolving over "
                "time t; the target is the reaction rate dA_dt.";
            s.dt = 0.05;
            break;
        case SystemId::Osc1:
            s.ground_truth = parse(kOsc1Truth);
            s.variables = {{"t", "time", "s"},
                           {"x", "position", ""},
                           {"v", "velocity", ""}};
            s.target_name = "a";
            s.description =
                "Damped nonlinear oscillator without temporal forcing: position x and "
                "velocity v; the target is the acceleration a.";
            break;
        case SystemId::Osc2:
            s.ground_truth = parse(kOsc2Truth);
            s.variables = {{"t", "time", "s"},
                           {"x", "position", ""},
                           {"v", "velocity", ""}};
            s.target_name = "a";
            s.description =
                "Driven nonlinear oscillator with explicit temporal forcing and an "
                "exponential restoring term: time t, position x, velocity v; the target "
                "is the acceleration a.";
            break;
        case SystemId::StressCsv:
            s.variables = {{"strain", "engineering strain", ""},
                           {"T", "temperature", "degC"}};
            s.target_name = "stress";
            s.description =
                "Tensile stress of Al 6061-T651 as a function of strain and temperature; "
                "the target is the measured stress.";
            break;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Integration
// ---------------------------------------------------------------------------

namespace {

/// Single-point rhs evaluation shared by both integrators.
class PointEval {
public:
    PointEval(const Expression& rhs, std::vector<std::string> names, const EvalGuard& guard)
        : names_(std::move(names)), vals_(names_.size(), 0.0) {
        for (size_t i = 0; i < names_.size(); ++i)
            table_.add(names_[i], std::span<const double>(&vals_[i], 1));
        ev_ = std::make_unique<Evaluator>(rhs, table_, guard);
        if (!ev_->compile_ok())
            throw IntegrationError("rhs cannot be evaluated: " + ev_->compile_detail(), 0);
    }

    double operator()(std::span<const double> point, std::span<const double> params,
                      size_t step) {
        std::copy(point.begin(), point.end(), vals_.begin());
        std::span<const double> out;
        std::string detail;
        if (ev_->eval(params, out, &detail) != EvalStatus::Ok)
            throw IntegrationError("rhs evaluation failed: " + detail, step);
        return out[0];
    }

private:
    std::vector<std::string> names_;
    std::vector<double> vals_;
    EvalTable table_;
    std::unique_ptr<Evaluator> ev_;
};

}  // namespace

std::vector<TrajectoryPoint> integrate_ode(const Expression& rhs, double x0, double v0,
                                           double t_begin, double t_end, double dt,
                                           std::span<const double> params,
                                           const EvalGuard& guard) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_ode: dt must be > 0");
    PointEval f(rhs, {"t", "x", "v"}, guard);
    const size_t steps = size_t(std::floor((t_end - t_begin) / dt + 1e-9));
    std::vector<TrajectoryPoint> out;
    out.reserve(steps + 1);
    double x = x0, v = v0;
    for (size_t k = 0; k <= steps; ++k) {
        const double t = t_begin + double(k) * dt;
        const double a0 = f(std::array{t, x, v}, params, k);
        out.push_back({t, x, v, a0});
        if (k == steps) break;
        // RK4 on (x' = v, v' = f)
        const double k1x = v, k1v = a0;
        const double k2x = v + 0.5 * dt * k1v,
                     k2v = f(std::array{t + 0.5 * dt, x + 0.5 * dt * k1x, v + 0.5 * dt * k1v},
                             params, k);
        const double k3x = v + 0.5 * dt * k2v,
                     k3v = f(std::array{t + 0.5 * dt, x + 0.5 * dt * k2x, v + 0.5 * dt * k2v},
                             params, k);
        const double k4x = v + dt * k3v,
                     k4v = f(std::array{t + dt, x + dt * k3x, v + dt * k3v}, params, k);
        x += dt / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        if (!std::isfinite(x) || !std::isfinite(v))
            throw IntegrationError("state became non-finite", k + 1);
    }
    return out;
}

std::vector<TrajectoryPoint> integrate_scalar_ode(const Expression& rhs, double x0,
                                                  double t_begin, double t_end, double dt,
                                                  std::span<const double> params,
                                                  const EvalGuard& guard) {
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_scalar_ode: dt must be > 0");
    PointEval f(rhs, {"t", "A", "x"}, guard);
    auto call = [&](double t, double x, size_t k) {
        return f(std::array{t, x, x}, params, k);  // bind both A and x to the state
    };
    const size_t steps = size_t(std::floor((t_end - t_begin) / dt + 1e-9));
    std::vector<TrajectoryPoint> out;
    out.reserve(steps + 1);
    double x = x0;
    for (size_t k = 0; k <= steps; ++k) {
        const double t = t_begin + double(k) * dt;
        const double d0 = call(t, x, k);
        out.push_back({t, x, d0, d0});
        if (k == steps) break;
        const double k1 = d0;
        const double k2 = call(t + 0.5 * dt, x + 0.5 * dt * k1, k);
        const double k3 = call(t + 0.5 * dt, x + 0.5 * dt * k2, k);
        const double k4 = call(t + dt, x + dt * k3, k);
        x += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!std::isfinite(x)) throw IntegrationError("state became non-finite", k + 1);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Dataset generation
// ---------------------------------------------------------------------------

namespace {

std::string format17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Dataset make_oscillator(const SystemSpec& spec) {
    const auto traj =
        integrate_ode(spec.ground_truth, spec.x0, spec.v0, 0.0, spec.t_end, spec.dt);
    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;
    rows.reserve(traj.size());
    size_t in_domain_index = 0;
    for (const auto& p : traj) {
        rows.push_back({p.t, p.x, p.v, p.accel});
        if (p.t < 20.0) {
            splits.push_back(Split::OodVal);
        } else {
            splits.push_back(in_domain_index % 5 == 4 ? Split::IdVal : Split::Train);
            ++in_domain_index;
        }
    }
    std::ostringstream prov;
    prov << "system=" << system_name(spec.id) << " dt=" << spec.dt << " t_end=" << spec.t_end
         << " x0=" << spec.x0 << " v0=" << spec.v0
         << " truth=" << spec.ground_truth.serialize();
    return Dataset(spec.variables, spec.target_name, std::move(rows), std::move(splits),
                   prov.str());
}

Dataset make_crk(const SystemSpec& spec) {
    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;

    const auto traj =
        integrate_scalar_ode(spec.ground_truth, spec.a0, 0.0, spec.t_end, spec.dt);
    for (const auto& p : traj) rows.push_back({p.t, p.x, p.accel});

    EvalTable one;
    double a_val = 0.0;
    one.add("A", std::span<const double>(&a_val, 1));
    Evaluator ev(spec.ground_truth, one);
    auto rate_at = [&](double a) {
        a_val = a;
        std::span<const double> out;
        if (ev.eval({}, out) != EvalStatus::Ok)
            throw std::runtime_error("crk ground truth failed to evaluate");
        return out[0];
    };

    for (double a : linspace(0.0, spec.crk_grid_max, spec.crk_grid_points))
        rows.push_back({0.0, a, rate_at(a)});
    const size_t in_domain = rows.size();
    for (size_t i = 0; i < in_domain; ++i)
        splits.push_back(i % 5 == 4 ? Split::IdVal : Split::Train);

    // out-of-domain: concentrations beyond the training range
    const double step = (spec.crk_ood_max - spec.crk_grid_max) / double(spec.crk_ood_points);
    for (int i = 1; i <= spec.crk_ood_points; ++i) {
        const double a = spec.crk_grid_max + double(i) * step;
        rows.push_back({0.0, a, rate_at(a)});
        splits.push_back(Split::OodVal);
    }

    std::ostringstream prov;
    prov << "system=crk dt=" << spec.dt << " t_end=" << spec.t_end << " a0=" << spec.a0
         << " grid=[0," << spec.crk_grid_max << "]x" << spec.crk_grid_points << " ood=("
         << spec.crk_grid_max << "," << spec.crk_ood_max << "]x" << spec.crk_ood_points
         << " A_eq=" << format17(crk_equilibrium())
         << " truth=" << spec.ground_truth.serialize();
    return Dataset(spec.variables, spec.target_name, std::move(rows), std::move(splits),
                   prov.str());
}

Dataset make_ecoli(const SystemSpec& spec) {
    EvalTable one;
    std::array<double, 4> point{};
    const char* names[4] = {"B", "S", "T", "pH"};
    for (size_t i = 0; i < 4; ++i)
        one.add(names[i], std::span<const double>(&point[i], 1));
    Evaluator ev(spec.ground_truth, one);
    auto rate_at = [&](const std::array<double, 4>& p) {
        point = p;
        std::span<const double> out;
        if (ev.eval({}, out) != EvalStatus::Ok)
            throw std::runtime_error("ecoli ground truth failed to evaluate");
        return out[0];
    };

    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;
    const int npts = spec.ecoli_points_per_axis;

    std::array<std::vector<double>, 4> inner, outer;
    for (size_t i = 0; i < 4; ++i) {
        inner[i] = linspace(spec.ecoli_train_box[i][0], spec.ecoli_train_box[i][1], npts);
        outer[i] = linspace(spec.ecoli_outer_box[i][0], spec.ecoli_outer_box[i][1], npts);
    }

    size_t idx = 0;
    for (double b : inner[0])
        for (double s : inner[1])
            for (double t : inner[2])
                for (double ph : inner[3]) {
                    rows.push_back({b, s, t, ph, rate_at({b, s, t, ph})});
                    splits.push_back(idx % 5 == 4 ? Split::IdVal : Split::Train);
                    ++idx;
                }

    auto inside_train_box = [&](double b, double s, double t, double ph) {
        const double eps = 1e-9;
        return b <= spec.ecoli_train_box[0][1] + eps && s <= spec.ecoli_train_box[1][1] + eps &&
               t >= spec.ecoli_train_box[2][0] - eps && t <= spec.ecoli_train_box[2][1] + eps &&
               ph >= spec.ecoli_train_box[3][0] - eps && ph <= spec.ecoli_train_box[3][1] + eps;
    };
    for (double b : outer[0])
        for (double s : outer[1])
            for (double t : outer[2])
                for (double ph : outer[3]) {
                    if (inside_train_box(b, s, t, ph)) continue;
                    rows.push_back({b, s, t, ph, rate_at({b, s, t, ph})});
                    splits.push_back(Split::OodVal);
                }

    std::ostringstream prov;
    prov << "system=ecoli points_per_axis=" << npts
         << " truth=" << spec.ground_truth.serialize();
    return Dataset(spec.variables, spec.target_name, std::move(rows), std::move(splits),
                   prov.str());
}

Dataset make_stress(const SystemSpec& spec) {
    if (spec.stress_path.empty())
        throw std::invalid_argument("stress_csv: no input file configured");
    std::ifstream in(spec.stress_path);
    if (!in) throw std::runtime_error("stress_csv: cannot open " + spec.stress_path);

    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("stress_csv: empty file " + spec.stress_path);
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) header.push_back(tok);
    }
    int c_strain = -1, c_temp = -1, c_stress = -1;
    for (size_t i = 0; i < header.size(); ++i) {
        if (header[i] == "strain") c_strain = int(i);
        if (header[i] == "T") c_temp = int(i);
        if (header[i] == "stress") c_stress = int(i);
    }
    if (c_strain < 0 || c_temp < 0 || c_stress < 0)
        throw std::runtime_error("stress_csv: header must contain strain,T,stress");

    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;
    size_t in_domain = 0, line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<double> vals;
        while (std::getline(ss, tok, ',')) vals.push_back(std::strtod(tok.c_str(), nullptr));
        if (vals.size() != header.size())
            throw std::runtime_error("stress_csv: malformed line " + std::to_string(line_no));
        const double strain = vals[size_t(c_strain)], temp = vals[size_t(c_temp)],
                     stress = vals[size_t(c_stress)];
        rows.push_back({strain, temp, stress});
        // the 200 degC isotherm is held out entirely as the out-of-domain set
        if (temp == 200.0) {
            splits.push_back(Split::OodVal);
        } else {
            splits.push_back(in_domain % 5 == 4 ? Split::IdVal : Split::Train);
            ++in_domain;
        }
    }
    return Dataset(spec.variables, spec.target_name, std::move(rows), std::move(splits),
                   "system=stress_csv source=" + spec.stress_path);
}

}  // namespace

Dataset make_dataset(const SystemSpec& spec) {
    switch (spec.id) {
        case SystemId::Osc1:
        case SystemId::Osc2: return make_oscillator(spec);
        case SystemId::Crk: return make_crk(spec);
        case SystemId::Ecoli: return make_ecoli(spec);
        case SystemId::StressCsv: return make_stress(spec);
    }
    throw std::invalid_argument("make_dataset: unknown system");
}

double crk_equilibrium() {
    static const Expression truth = parse(kCrkTruth);
    EvalTable one;
    double a_val = 0.0;
    one.add("A", std::span<const double>(&a_val, 1));
    Evaluator ev(truth, one);
    auto f = [&](double a) {
        a_val = a;
        std::span<const double> out;
        ev.eval({}, out);
        return out[0];
    };
    double lo = 0.5, hi = 5.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------
// Noise / subsampling / CSV
// ---------------------------------------------------------------------------

Dataset add_noise(const Dataset& d, const NoiseSpec& spec) {
    if (spec.sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;
    rows.reserve(d.num_rows());
    for (size_t i = 0; i < d.num_rows(); ++i) {
        rows.push_back(d.row(i));
        splits.push_back(d.split_of(i));
    }
    if (spec.sigma > 0.0) {
        Rng rng(spec.seed);
        for (size_t i = 0; i < rows.size(); ++i) {
            if (splits[i] != Split::Train) continue;  // validation stays clean
            for (size_t c = 0; c < d.num_vars(); ++c)
                rows[i][c] += rng.normal(0.0, spec.sigma);
        }
    }
    std::ostringstream prov;
    prov << d.provenance() << " noise_sigma=" << spec.sigma << " noise_seed=" << spec.seed;
    return Dataset(d.variables(), d.target_name(), std::move(rows), std::move(splits),
                   prov.str());
}

Dataset subsample(const Dataset& d, double fraction, uint64_t seed) {
    if (!(fraction > 0.0) || fraction > 1.0)
        throw std::invalid_argument("subsample: fraction must be in (0, 1]");
    std::vector<size_t> train_idx;
    for (size_t i = 0; i < d.num_rows(); ++i)
        if (d.split_of(i) == Split::Train) train_idx.push_back(i);

    std::vector<bool> keep(d.num_rows(), true);
    if (fraction < 1.0) {
        const size_t k =
            std::max<size_t>(1, size_t(std::llround(fraction * double(train_idx.size()))));
        Rng rng(seed);
        // partial Fisher-Yates: the first k entries are the kept sample
        for (size_t i = 0; i < k && i + 1 < train_idx.size(); ++i) {
            const size_t j = i + size_t(rng.below(train_idx.size() - i));
            std::swap(train_idx[i], train_idx[j]);
        }
        for (size_t i = k; i < train_idx.size(); ++i) keep[train_idx[i]] = false;
    }

    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;
    for (size_t i = 0; i < d.num_rows(); ++i) {
        if (!keep[i]) continue;
        rows.push_back(d.row(i));
        splits.push_back(d.split_of(i));
    }
    std::ostringstream prov;
    prov << d.provenance() << " subsample_fraction=" << fraction << " subsample_seed=" << seed;
    return Dataset(d.variables(), d.target_name(), std::move(rows), std::move(splits),
                   prov.str());
}

void save_csv(const Dataset& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("save_csv: cannot open " + path);
    for (const auto& v : d.variables()) out << v.name << ',';
    out << d.target_name() << ",split\n";
    for (size_t i = 0; i < d.num_rows(); ++i) {
        const auto& row = d.row(i);
        for (double v : row) out << format17(v) << ',';
        out << split_name(d.split_of(i)) << '\n';
    }
}

Dataset load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("load_csv: cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("load_csv: empty file " + path);
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();

    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string tok;
        while (std::getline(ss, tok, ',')) header.push_back(tok);
    }
    if (header.size() < 3 || header.back() != "split")
        throw std::runtime_error("load_csv: expected '<vars...>,<target>,split' header");
    std::vector<VariableInfo> vars;
    for (size_t i = 0; i + 2 < header.size(); ++i) vars.push_back({header[i], "", ""});
    const std::string target = header[header.size() - 2];

    std::vector<std::vector<double>> rows;
    std::vector<Split> splits;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string tok;
        std::vector<std::string> toks;
        while (std::getline(ss, tok, ',')) toks.push_back(tok);
        if (toks.size() != header.size())
            throw std::runtime_error("load_csv: malformed line " + std::to_string(line_no));
        std::vector<double> row;
        for (size_t i = 0; i + 1 < toks.size(); ++i) {
            char* end = nullptr;
            row.push_back(std::strtod(toks[i].c_str(), &end));
            if (end == toks[i].c_str())
                throw std::runtime_error("load_csv: bad number at line " +
                                         std::to_string(line_no));
        }
        const auto sp = split_from_name(toks.back());
        if (!sp)
            throw std::runtime_error("load_csv: bad split tag at line " +
                                     std::to_string(line_no));
        rows.push_back(std::move(row));
        splits.push_back(*sp);
    }
    return Dataset(std::move(vars), target, std::move(rows), std::move(splits),
                   "csv:" + path);
}

}  // namespace symsearch
