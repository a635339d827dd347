#include "fockidx/io/commands.hpp"

#include "fockidx/io/reports.hpp"
#include "fockidx/selftest.hpp"
#include "fockidx/subsystem.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace fockidx::io {

using nlohmann::json;
using nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

struct Entry {
    Command command;
    const char* name;
};

constexpr Entry kCommands[] = {
    {Command::kernel, "kernel"},         {Command::semigroup, "semigroup"},
    {Command::gram, "gram"},             {Command::inner, "inner"},
    {Command::unitalg, "unitalg"},       {Command::membership, "membership"},
    {Command::witness, "witness"},       {Command::approx, "approx"},
    {Command::index, "index"},           {Command::selftest, "selftest"},
};

class Outputs {
public:
    Outputs(fs::path dir, CommandOutcome& outcome) : dir_(std::move(dir)), outcome_(outcome) {}

    void write(const std::string& name, const std::string& content) {
        std::ofstream out(dir_ / name, std::ios::binary);
        if (!out) throw Error("cannot write " + (dir_ / name).string());
        out << content;
        outcome_.files.push_back(name);
    }

    void json(const std::string& name, ordered_json body) { write(name, dump_report(std::move(body))); }

private:
    fs::path dir_;
    CommandOutcome& outcome_;
};

std::string fixed(double v) {
    std::ostringstream out;
    out.precision(3);
    out << std::scientific << v;
    return out.str();
}

std::string verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

void element_rows(CsvWriter& csv, const AlgebraElement& e, const std::vector<std::string>& prefix) {
    for (std::size_t k = 0; k <= e.size(); ++k) {
        for (const auto& p : prefix) csv.cell(p);
        csv.cell(k);
        if (k < e.size()) {
            csv.cell(e.grid().point(k));
        } else {
            csv.cell(std::string("inf"));
        }
        const Complex z = e.coordinate(k);
        csv.cell(z.real()).cell(z.imag()).end_row();
    }
}

std::vector<FockUnit> probes_or_default(const ExperimentConfig& cfg) {
    return cfg.has("probes") ? cfg.units("probes") : default_probe_units(cfg.grid());
}

FockUnit unit_or(const ExperimentConfig& cfg, const std::string& key, const char* fallback) {
    return cfg.unit(cfg.has(key) ? cfg.at(key) : json(fallback));
}

std::vector<AlgebraElement> functions_or(const ExperimentConfig& cfg, const std::string& key) {
    std::vector<AlgebraElement> out;
    if (!cfg.has(key)) {
        out.push_back(constant(cfg.grid(), 1.0));
        return out;
    }
    const json& spec = cfg.at(key);
    if (spec.is_array() && !(spec.size() == 2 && spec[0].is_number() && spec[1].is_number())) {
        for (const json& item : spec) out.push_back(cfg.function(item));
    } else {
        out.push_back(cfg.function(spec));
    }
    return out;
}

void cmd_kernel(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const FockUnit u = unit_or(cfg, "u", "xi");
    const FockUnit v = unit_or(cfg, "v", "xi");
    const AlgebraElement b = cfg.function("b", 1.0);
    const KernelOperator l = kernel(u, v);
    const AlgebraElement lb = apply(l, b);
    const double herm = sup_distance(apply(kernel(v, u), b), star(apply(l, star(b))));
    const bool ok = herm <= cfg.tolerances().hermitian;

    std::ostringstream csv;
    write_element_csv(csv, lb);
    files.write("kernel.csv", csv.str());
    if (cfg.has("dump_matrix") && cfg.at("dump_matrix").get<bool>()) {
        std::ostringstream dense;
        write_kernel_csv(dense, l);
        files.write("kernel_matrix.csv", dense.str());
    }
    ordered_json body;
    body["command"] = "kernel";
    body["operator_norm"] = operator_norm(l);
    body["hermitian_residual"] = herm;
    body["hermitian_tolerance"] = cfg.tolerances().hermitian;
    body["unresolved_input"] = b.unresolved(cfg.tolerances().tail) ||
                               u.zeta().unresolved(cfg.tolerances().tail) ||
                               v.zeta().unresolved(cfg.tolerances().tail);
    body["passed"] = ok;
    files.json("kernel.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("kernel: |L| = " + fixed(operator_norm(l)) +
                            ", hermitian residual " + fixed(herm) + " " + verdict(ok));
}

void cmd_semigroup(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const FockUnit u = unit_or(cfg, "u", "xi");
    const FockUnit v = unit_or(cfg, "v", "xi");
    const AlgebraElement b = cfg.function("b", 1.0);
    const std::vector<double> times = cfg.reals("t", {0.0, 0.5, 1.0, 2.0});
    const double etol = cfg.tolerances().exp;
    const KernelOperator l = kernel(u, v);

    std::vector<KernelOperator> ks;
    std::ostringstream table;
    CsvWriter csv(table, {"t", "grid_point", "s", "re", "im"});
    ordered_json entries = ordered_json::array();
    for (double t : times) {
        ks.push_back(exponential(l, t, etol));
        element_rows(csv, apply(ks.back(), b), {format_number(t)});
        entries.push_back({{"t", t}, {"operator_norm", operator_norm(ks.back())}});
    }
    ordered_json law = ordered_json::array();
    double worst = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        for (std::size_t j = i; j < times.size(); ++j) {
            const double r = operator_norm(exponential(l, times[i] + times[j], etol) -
                                           compose(ks[i], ks[j]));
            worst = std::max(worst, r);
            law.push_back({{"s", times[i]}, {"t", times[j]}, {"residual", r}});
        }
    }
    const bool ok = worst <= cfg.tolerances().semigroup_law;
    files.write("semigroup.csv", table.str());
    ordered_json body;
    body["command"] = "semigroup";
    body["times"] = std::move(entries);
    body["semigroup_law"] = std::move(law);
    body["max_law_residual"] = worst;
    body["tolerance"] = cfg.tolerances().semigroup_law;
    body["passed"] = ok;
    files.json("semigroup.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("semigroup: max law residual " + fixed(worst) + " " + verdict(ok));
}

void cmd_gram(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const std::vector<FockUnit> units = cfg.units("units");
    const std::vector<double> times = cfg.reals("t", {0.5, 1.0});
    const std::vector<AlgebraElement> bs = functions_or(cfg, "b");
    ordered_json cases = ordered_json::array();
    bool ok = true;
    double lowest = 0.0;
    for (double t : times) {
        for (std::size_t i = 0; i < bs.size(); ++i) {
            const GramReport r =
                gram_psd_check(gram_matrix(units, t, bs[i], cfg.tolerances().exp), cfg.tolerances().psd);
            ok = ok && r.psd;
            lowest = std::min(lowest, r.min_eigenvalue);
            ordered_json entry;
            entry["t"] = t;
            entry["b_index"] = i;
            const ordered_json report = to_json(r);
            for (const auto& [k, val] : report.items()) entry[k] = val;
            cases.push_back(std::move(entry));
        }
    }
    ordered_json body;
    body["command"] = "gram";
    body["units"] = units.size();
    body["tolerance"] = cfg.tolerances().psd;
    body["passed"] = ok;
    body["cases"] = std::move(cases);
    files.json("gram.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("gram: " + std::to_string(units.size()) + " units, min eigenvalue " +
                            fixed(lowest) + " " + verdict(ok));
}

void cmd_inner(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const FockUnit reference = unit_or(cfg, "reference", "omega");
    const std::vector<FockUnit> units = cfg.units("units");
    const AlgebraElement b = cfg.function("b", 1.0);
    std::vector<ReferencedUnit> xs;
    for (const auto& u : units) xs.emplace_back(u, reference);

    std::ostringstream table;
    CsvWriter csv(table, {"i", "j", "grid_point", "s", "re", "im"});
    double herm = 0.0;
    bool positive = true;
    const bool b_positive = is_positive(b);
    ordered_json norms = ordered_json::array();
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < xs.size(); ++j) {
            const AlgebraElement ip = semi_inner(xs[i], xs[j], b);
            element_rows(csv, ip, {std::to_string(i), std::to_string(j)});
            herm = std::max(herm, sup_distance(ip, star(semi_inner(xs[j], xs[i], star(b)))));
            if (i == j && b_positive) positive = positive && is_positive(ip, cfg.tolerances().psd);
        }
        norms.push_back(index_norm(xs[i]));
    }
    const bool ok = herm <= cfg.tolerances().inner && positive;
    files.write("inner.csv", table.str());
    ordered_json body;
    body["command"] = "inner";
    body["hermitian_residual"] = herm;
    body["diagonal_positive"] = b_positive ? ordered_json(positive) : ordered_json(nullptr);
    body["index_norms"] = std::move(norms);
    body["passed"] = ok;
    files.json("inner.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("inner: hermitian residual " + fixed(herm) + " " + verdict(ok));
}

void cmd_unitalg(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const GridSpec& g = cfg.grid();
    const FockUnit reference = unit_or(cfg, "reference", "omega");
    const std::vector<FockUnit> units = cfg.units("units");
    if (units.size() < 2) throw ConfigError("unitalg needs at least two units");
    const std::vector<FockUnit> probes = probes_or_default(cfg);
    using C = Complex;
    const AlgebraElement beta = cfg.has("beta") ? cfg.function(cfg.at("beta"))
                                                : sample(ExpApproachPreset{C{0.3}, 1.0, C{0.0}}, g);
    const AlgebraElement kappa = cfg.has("kappa") ? cfg.function(cfg.at("kappa"))
                                                  : sample(ExpApproachPreset{C{0.5}, 0.7, C{0.5}}, g);
    const AlgebraElement a = cfg.has("a") ? cfg.function(cfg.at("a"))
                                          : sample(PiecewiseLinearPreset{{{0.0, C{2.0}}, {3.0, C{0.0, 1.0}}}}, g);
    const ReferencedUnit x{units[0], reference};
    const ReferencedUnit y{units[1], reference};
    const std::vector<AlgebraElement> kappas{kappa, constant(g, 1.0) - kappa};

    const std::vector<std::pair<std::string, ReferencedUnit>> ops{
        {"power_beta", power_beta(x, beta)},
        {"boxplus_left", boxplus_left(kappas, {x, y})},
        {"boxplus_right", boxplus_right({x, y}, kappas)},
        {"add", add(x, y)},
        {"left_mul", left_mul(a, x)},
        {"right_mul", right_mul(x, a)},
    };
    std::ostringstream table;
    CsvWriter csv(table, {"op", "residual", "tolerance", "passed"});
    ordered_json list = ordered_json::array();
    bool ok = true;
    const double tol = cfg.tolerances().coherence;
    for (const auto& [name, unit] : ops) {
        const double r = dual_path_residual(unit, probes);
        const bool pass = r <= tol;
        ok = ok && pass;
        csv.cell(name).cell(r).cell(tol).cell(std::string(pass ? "true" : "false")).end_row();
        list.push_back({{"op", name}, {"residual", r}, {"passed", pass}});
        outcome.lines.push_back("unitalg " + name + ": " + fixed(r) + " " + verdict(pass));
    }
    files.write("unitalg.csv", table.str());
    ordered_json body;
    body["command"] = "unitalg";
    body["probes"] = probes.size();
    body["tolerance"] = tol;
    body["operations"] = std::move(list);
    body["passed"] = ok;
    files.json("unitalg.json", std::move(body));
    outcome.passed = ok;
}

void cmd_membership(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    std::vector<FockUnit> units;
    if (cfg.has("units")) {
        units = cfg.units("units");
    } else {
        units.push_back(cfg.unit(cfg.at("unit")));
    }
    std::vector<bool> expect;
    if (cfg.has("expect")) expect = cfg.at("expect").get<std::vector<bool>>();
    if (!expect.empty() && expect.size() != units.size()) {
        throw ConfigError("'expect' must have one entry per unit");
    }
    ordered_json reports = ordered_json::array();
    bool ok = true;
    for (std::size_t i = 0; i < units.size(); ++i) {
        const MembershipReport r = membership(units[i], cfg.tolerances().membership);
        ordered_json j = to_json(r);
        if (!expect.empty()) {
            j["expected"] = static_cast<bool>(expect[i]);
            ok = ok && r.in_E == expect[i];
        }
        reports.push_back(std::move(j));
        outcome.lines.push_back("membership[" + std::to_string(i) + "]: in_E=" +
                                (r.in_E ? "true" : "false") + " limit=(" +
                                format_number(r.zeta_limit.real()) + "," +
                                format_number(r.zeta_limit.imag()) + ")");
    }
    ordered_json body;
    body["command"] = "membership";
    body["tolerance"] = cfg.tolerances().membership;
    if (units.size() == 1 && !cfg.has("units")) {
        for (auto& [k, v] : reports[0].items()) body[k] = v;
    } else {
        body["reports"] = std::move(reports);
    }
    body["passed"] = ok;
    files.json("membership.json", std::move(body));
    outcome.passed = ok;
}

void cmd_witness(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const AlgebraElement zeta = cfg.function(cfg.at("zeta"));
    const double delta = cfg.real("delta", 0.25);
    const std::vector<FockUnit> probes = probes_or_default(cfg);
    const auto from = eventually_one_from(zeta);
    if (!from) throw ConfigError("witness: zeta is not eventually 1 on the grid");
    const int n = cfg.integer("n", *from);
    const MembershipReport m = membership(FockUnit{zeta, constant(cfg.grid(), 0.0)},
                                          cfg.tolerances().membership);

    ordered_json body;
    body["command"] = "witness";
    body["n"] = n;
    body["membership"] = to_json(m);
    bool ok = m.in_E;
    if (m.positive_before) {
        const Step1Witness w = witness_step1(zeta, n);
        const bool pass = w.max_identity_residual <= cfg.tolerances().witness;
        ok = ok && pass;
        body["step1"] = {{"max_identity_residual", w.max_identity_residual},
                         {"b0_sup_norm", sup_norm(w.b0)},
                         {"b1_sup_norm", sup_norm(w.b1)},
                         {"passed", pass}};
        outcome.lines.push_back("witness step1: residual " + fixed(w.max_identity_residual) + " " +
                                verdict(pass));
    } else {
        body["step1"] = {{"skipped", "zeta is not positive on [0, n)"}};
    }
    const ThetaCheck th = theta_check(zeta, n, probes, delta);
    const bool theta_ok = th.max_kernel_residual <= cfg.tolerances().theta &&
                          th.step1_residual <= cfg.tolerances().witness;
    ok = ok && theta_ok;
    body["theta"] = {{"alpha", th.alpha},
                     {"delta", delta},
                     {"convexified_step1_residual", th.step1_residual},
                     {"max_kernel_residual", th.max_kernel_residual},
                     {"probes", probes.size()},
                     {"passed", theta_ok}};
    body["passed"] = ok;
    files.json("witness.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("witness theta: alpha " + format_number(th.alpha) + ", residual " +
                            fixed(th.max_kernel_residual) + " " + verdict(theta_ok));
}

void cmd_approx(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const AlgebraElement zeta = cfg.function(cfg.at("zeta"));
    const double t = cfg.real("t", 1.0);
    const std::vector<int> ns = cfg.integers("ns", {2, 4, 6, 8, 10});
    const FockUnit probe = unit_or(cfg, "probe", "xi");
    const ConvergenceReport r = convergence_report(zeta, t, ns, probe);
    const bool ok = r.monotone && r.max_index_gap <= cfg.tolerances().index_gap;
    std::ostringstream csv;
    write_convergence_csv(csv, r);
    files.write("approx.csv", csv.str());
    ordered_json body = to_json(r);
    body["command"] = "approx";
    body["index_gap_tolerance"] = cfg.tolerances().index_gap;
    body["passed"] = ok;
    files.json("approx.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("approx: monotone=" + std::string(r.monotone ? "true" : "false") +
                            ", index gap " + fixed(r.max_index_gap) + " " + verdict(ok));
}

void cmd_index(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    const GridSpec& g = cfg.grid();
    const std::vector<FockUnit> units = cfg.units("units");
    using C = Complex;
    const AlgebraElement a = cfg.has("a") ? cfg.function(cfg.at("a"))
                                          : sample(ExpApproachPreset{C{1.0}, 1.0, C{0.0}}, g);
    const FockUnit xi = FockUnit::xi(g);
    const AlgebraElement one = constant(g, 1.0);
    const double mtol = cfg.tolerances().membership;

    std::ostringstream table;
    CsvWriter csv(table, {"unit", "grid_point", "s", "re", "im"});
    std::vector<AlgebraElement> reps;
    std::vector<ReferencedUnit> xs;
    for (std::size_t i = 0; i < units.size(); ++i) {
        reps.push_back(index_representative(units[i], mtol));
        xs.emplace_back(units[i], xi);
        element_rows(csv, reps.back(), {std::to_string(i)});
    }
    double add_r = 0.0, left_r = 0.0, right_r = 0.0, inner_r = 0.0, iso_r = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        left_r = std::max(left_r, sup_distance(index_representative(left_mul(a, xs[i]).candidate(), mtol),
                                               shift(a, 1.0) * reps[i]));
        right_r = std::max(right_r, sup_distance(index_representative(right_mul(xs[i], a).candidate(), mtol),
                                                 reps[i] * a));
        for (std::size_t j = 0; j < xs.size(); ++j) {
            add_r = std::max(add_r, sup_distance(index_representative(add(xs[i], xs[j]).candidate(), mtol),
                                                 reps[i] + reps[j]));
            inner_r = std::max(inner_r, sup_distance(semi_inner(xs[i], xs[j], one), star(reps[i]) * reps[j]));
            if (j > i) {
                // compare squares when the units nearly coincide: sqrt amplifies rounding there
                const double d = sup_distance(reps[i], reps[j]);
                const double n = index_norm(subtract(xs[i], xs[j]));
                iso_r = std::max(iso_r, d >= 1e-4 ? std::abs(n - d) : std::abs(n * n - d * d));
            }
        }
    }
    const double tol = cfg.tolerances().index;
    const bool ok = std::max({add_r, left_r, right_r, inner_r}) <= tol &&
                    iso_r <= cfg.tolerances().index_gap;
    files.write("index.csv", table.str());
    ordered_json body;
    body["command"] = "index";
    body["members"] = units.size();
    body["homomorphism"] = {{"add", add_r}, {"left_mul", left_r}, {"right_mul", right_r}, {"inner", inner_r}};
    body["tolerance"] = tol;
    body["isometry_residual"] = iso_r;
    body["isometry_tolerance"] = cfg.tolerances().index_gap;
    body["passed"] = ok;
    files.json("index.json", std::move(body));
    outcome.passed = ok;
    outcome.lines.push_back("index: homomorphism residual " +
                            fixed(std::max({add_r, left_r, right_r, inner_r})) + ", isometry residual " +
                            fixed(iso_r) + " " + verdict(ok));
}

void cmd_selftest(const ExperimentConfig& cfg, Outputs& files, CommandOutcome& outcome) {
    SelftestOptions opts;
    opts.grid = cfg.grid();
    if (cfg.has("seed")) opts.seed = cfg.at("seed").get<std::uint64_t>();
    opts.random_cases = cfg.integer("cases", opts.random_cases);
    const std::vector<CheckResult> checks = run_selftest(opts);
    const auto passed = std::count_if(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
    for (const auto& c : checks) {
        outcome.lines.push_back(verdict(c.passed) + " " + c.module + "." + c.name + " " +
                                fixed(c.value) + " <= " + fixed(c.tolerance));
    }
    outcome.passed = passed == static_cast<long>(checks.size());
    outcome.lines.push_back(std::to_string(passed) + "/" + std::to_string(checks.size()) +
                            " properties passed");
    ordered_json body;
    body["command"] = "selftest";
    body["seed"] = opts.seed;
    body["checks"] = to_json(checks);
    body["passed"] = outcome.passed;
    files.json("selftest.json", std::move(body));
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
    for (const auto& e : kCommands) {
        if (name == e.name) return e.command;
    }
    return std::nullopt;
}

std::string to_string(Command command) {
    for (const auto& e : kCommands) {
        if (e.command == command) return e.name;
    }
    return "unknown";
}

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& e : kCommands) out.emplace_back(e.name);
        return out;
    }();
    return names;
}

CommandOutcome run(Command command, const ExperimentConfig& config, const fs::path& out_dir) {
    fs::create_directories(out_dir);
    CommandOutcome outcome;
    Outputs files(out_dir, outcome);
    switch (command) {
    case Command::kernel: cmd_kernel(config, files, outcome); break;
    case Command::semigroup: cmd_semigroup(config, files, outcome); break;
    case Command::gram: cmd_gram(config, files, outcome); break;
    case Command::inner: cmd_inner(config, files, outcome); break;
    case Command::unitalg: cmd_unitalg(config, files, outcome); break;
    case Command::membership: cmd_membership(config, files, outcome); break;
    case Command::witness: cmd_witness(config, files, outcome); break;
    case Command::approx: cmd_approx(config, files, outcome); break;
    case Command::index: cmd_index(config, files, outcome); break;
    case Command::selftest: cmd_selftest(config, files, outcome); break;
    }
    return outcome;
}

int run_cli(Command command, const fs::path& config_path, const fs::path& out_dir,
            std::ostream& out, std::ostream& err) {
    try {
        const ExperimentConfig config = load_config(config_path);
        const CommandOutcome outcome = run(command, config, out_dir);
        for (const auto& line : outcome.lines) out << line << '\n';
        for (const auto& file : outcome.files) out << "wrote " << (out_dir / file).string() << '\n';
        return outcome.passed ? kExitOk : kExitToleranceFailure;
    } catch (const json::exception& e) {
        err << "config error: " << e.what() << '\n';
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
    }
    return kExitConfigError;
}

}  // namespace fockidx::io
