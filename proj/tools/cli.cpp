#include "cli.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "walkwait/engine.hpp"
#include "walkwait/errors.hpp"
#include "walkwait/mc.hpp"

namespace walkwait::cli {

namespace {

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += sep;
        s += parts[i];
    }
    return s;
}

// Field-by-field optional view of the config; file values first, flags
// overlaid on top.
struct RawConfig {
    std::optional<double> d, d2, vw, vb, tw, tb;
    std::optional<std::string> dist;
    std::optional<std::uint64_t> trials, seed;
};

RawConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("IoError", "cannot open config file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("BadConfig", "config file " + path + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) {
        throw ParseError("BadConfig", "config must be a flat JSON object");
    }

    RawConfig raw;
    std::vector<std::string> problems;
    const auto number = [&problems](const nlohmann::json& value, const char* key,
                                    std::optional<double>& slot) {
        if (value.is_number()) {
            slot = value.get<double>();
        } else {
            problems.push_back(std::string(key) + " must be a number");
        }
    };
    const auto count = [&problems](const nlohmann::json& value, const char* key,
                                   std::optional<std::uint64_t>& slot) {
        if (value.is_number_unsigned()) {
            slot = value.get<std::uint64_t>();
        } else {
            problems.push_back(std::string(key) + " must be a nonnegative integer");
        }
    };
    for (const auto& [key, value] : doc.items()) {
        if (key == "d") number(value, "d", raw.d);
        else if (key == "d2") number(value, "d2", raw.d2);
        else if (key == "vw") number(value, "vw", raw.vw);
        else if (key == "vb") number(value, "vb", raw.vb);
        else if (key == "tw") number(value, "tw", raw.tw);
        else if (key == "tb") number(value, "tb", raw.tb);
        else if (key == "dist") {
            if (value.is_string()) raw.dist = value.get<std::string>();
            else problems.push_back("dist must be a string");
        } else if (key == "trials") count(value, "trials", raw.trials);
        else if (key == "seed") count(value, "seed", raw.seed);
        else problems.push_back("unknown key \"" + key + "\"");
    }
    if (!problems.empty()) {
        throw ParseError("BadConfig", "config file " + path + ": " + join(problems, "; "));
    }
    return raw;
}

std::uint64_t env_seed() {
    const char* env = std::getenv("WALKWAIT_SEED");
    if (env == nullptr || *env == '\0') return 0;
    for (const char* p = env; *p; ++p) {
        if (!std::isdigit(static_cast<unsigned char>(*p))) {
            throw ParseError("BadSeed", std::string("WALKWAIT_SEED must be a decimal integer, got \"") + env + "\"");
        }
    }
    errno = 0;
    const unsigned long long v = std::strtoull(env, nullptr, 10);
    if (errno == ERANGE) {
        throw ParseError("BadSeed", std::string("WALKWAIT_SEED does not fit in 64 bits: \"") + env + "\"");
    }
    return v;
}

// Everything a command needs, fully merged and validated.
struct ResolvedConfig {
    Scenario scenario;
    std::optional<ArrivalDistribution> dist;
    std::optional<double> tb;
    std::uint64_t trials = 1000000;
    std::uint64_t seed = 0;
};

ResolvedConfig resolve(const RawConfig& raw, bool need_dist) {
    std::vector<std::string> missing;
    const auto need = [&missing](const std::optional<double>& v, const char* key) {
        if (!v) missing.push_back(key);
        return v.value_or(0.0);
    };

    ResolvedConfig cfg;
    cfg.scenario.d = need(raw.d, "d");
    cfg.scenario.d2 = need(raw.d2, "d2");
    cfg.scenario.vw = need(raw.vw, "vw");
    cfg.scenario.vb = need(raw.vb, "vb");
    cfg.scenario.tw = raw.tw.value_or(0.0);
    if (need_dist && !raw.dist) missing.push_back("dist");
    if (!missing.empty()) {
        throw ValidationError("MissingField", "missing required config fields: " + join(missing, ", "));
    }

    const std::vector<std::string> bad = violations(cfg.scenario);
    if (!bad.empty()) {
        throw ValidationError(bad.front(), "invalid scenario: " + join(bad, ", "));
    }

    if (raw.dist) cfg.dist = parse_distribution(*raw.dist);
    cfg.tb = raw.tb;
    if (raw.trials) {
        if (*raw.trials == 0) throw ValidationError("NoTrials", "trials must be >= 1");
        cfg.trials = *raw.trials;
    }
    cfg.seed = raw.seed ? *raw.seed : env_seed();
    return cfg;
}

std::string config_echo(const ResolvedConfig& cfg) {
    std::ostringstream os;
    os << "config: d=" << fmt12(cfg.scenario.d) << " d2=" << fmt12(cfg.scenario.d2)
       << " vw=" << fmt12(cfg.scenario.vw) << " vb=" << fmt12(cfg.scenario.vb)
       << " tw=" << fmt12(cfg.scenario.tw);
    if (cfg.dist) os << " dist=" << cfg.dist->spec_string();
    if (cfg.tb) os << " tb=" << fmt12(*cfg.tb);
    os << " trials=" << cfg.trials << " seed=" << cfg.seed;
    return os.str();
}

FormulaVariant variant_from(const std::string& name) {
    for (FormulaVariant v : kAllVariants) {
        if (name == to_string(v)) return v;
    }
    throw ValidationError("UnknownVariant", "unknown variant \"" + name + "\"");
}

StrategyKind strategy_from(const std::string& name) {
    for (StrategyKind k : {StrategyKind::WalkThenWait, StrategyKind::WaitAtStop1, StrategyKind::WalkAll}) {
        if (name == to_string(k)) return k;
    }
    throw ValidationError("UnknownStrategy", "unknown strategy \"" + name + "\"");
}

double z_score(double total, const SimStats& mc) {
    const double diff = std::fabs(total - mc.mean);
    if (mc.std_error == 0.0) {
        return diff <= 1e-12 ? 0.0 : std::numeric_limits<double>::infinity();
    }
    return diff / mc.std_error;
}

// Common per-command options; every command can take the scenario from a
// config file, from flags, or both (flags win field-by-field).
struct CommonOpts {
    std::optional<std::string> config_path;
    RawConfig flags;
    bool csv = false;

    void attach(CLI::App* cmd, bool with_csv) {
        cmd->add_option("--config", config_path, "flat JSON config file");
        cmd->add_option("--d", flags.d, "distance from stop 1 to the destination");
        cmd->add_option("--d2", flags.d2, "distance from stop 1 to stop 2");
        cmd->add_option("--vw", flags.vw, "walking speed");
        cmd->add_option("--vb", flags.vb, "bus speed (must exceed vw)");
        cmd->add_option("--tw", flags.tw, "waiting budget");
        cmd->add_option("--tb", flags.tb, "headway width t_b (residual diagnostics)");
        cmd->add_option("--dist", flags.dist, "arrival law: uniform:<a>,<b> or exp:<rate>");
        cmd->add_option("--trials", flags.trials, "Monte Carlo trial count");
        cmd->add_option("--seed", flags.seed, "master seed (default: WALKWAIT_SEED, then 0)");
        if (with_csv) cmd->add_flag("--csv", csv, "emit a CSV header and row on stdout");
    }

    ResolvedConfig resolved(bool need_dist) const {
        RawConfig merged = config_path ? load_config_file(*config_path) : RawConfig{};
        const auto overlay = [](auto& dst, const auto& src) {
            if (src) dst = src;
        };
        overlay(merged.d, flags.d);
        overlay(merged.d2, flags.d2);
        overlay(merged.vw, flags.vw);
        overlay(merged.vb, flags.vb);
        overlay(merged.tw, flags.tw);
        overlay(merged.tb, flags.tb);
        overlay(merged.dist, flags.dist);
        overlay(merged.trials, flags.trials);
        overlay(merged.seed, flags.seed);
        return resolve(merged, need_dist);
    }
};

void render_breakdown(std::ostream& out, const EvalBreakdown& b) {
    out << "pre_walk: " << fmt12(b.pre_walk) << "\n"
        << "board_term: " << fmt12(b.board_term) << "\n"
        << "fallback_term: " << fmt12(b.fallback_term) << "\n"
        << "total: " << fmt12(b.total) << "\n"
        << "p_board: " << fmt12(b.p_board) << "\n"
        << "p_missed_early: " << fmt12(b.p_missed_early) << "\n"
        << "p_no_bus: " << fmt12(b.p_no_bus) << "\n";
    if (b.literal_out_of_support) {
        out << "note: literal 1/t_b factor integrated beyond the support (tw > t_b)\n";
    }
}

int do_eval(const CommonOpts& common, const std::string& variant_name, std::ostream& out,
            std::ostream& err) {
    const ResolvedConfig cfg = common.resolved(true);
    const FormulaVariant variant = variant_from(variant_name);
    const EvalBreakdown b = evaluate_variant(cfg.scenario, *cfg.dist, variant);

    if (common.csv) {
        err << config_echo(cfg) << "\n";
        out << "variant,pre_walk,board_term,fallback_term,total,p_board,p_missed_early,p_no_bus\n"
            << to_string(variant) << ',' << fmt12(b.pre_walk) << ',' << fmt12(b.board_term) << ','
            << fmt12(b.fallback_term) << ',' << fmt12(b.total) << ',' << fmt12(b.p_board) << ','
            << fmt12(b.p_missed_early) << ',' << fmt12(b.p_no_bus) << "\n";
    } else {
        out << config_echo(cfg) << "\n"
            << "variant: " << to_string(variant) << "\n";
        render_breakdown(out, b);
    }
    return 0;
}

int do_compare(const CommonOpts& common, const std::string& gate_name, std::ostream& out,
               std::ostream& /*err*/) {
    const ResolvedConfig cfg = common.resolved(true);
    const FormulaVariant gate = variant_from(gate_name);
    const SimStats mc =
        run_mc(cfg.scenario, StrategyKind::WalkThenWait, *cfg.dist, cfg.trials, cfg.seed);

    out << config_echo(cfg) << "\n"
        << "mc: mean " << fmt12(mc.mean) << " stderr " << fmt12(mc.std_error) << " trials "
        << mc.trials << "\n";

    std::optional<double> gate_z;
    for (FormulaVariant v : kAllVariants) {
        out << to_string(v) << ": ";
        try {
            const EvalBreakdown b = evaluate_variant(cfg.scenario, *cfg.dist, v);
            const double z = z_score(b.total, mc);
            out << "total " << fmt12(b.total) << " z " << fmt12(z) << "\n";
            if (v == gate) gate_z = z;
        } catch (const ValidationError& e) {
            out << "not evaluable (" << e.name() << ")\n";
        }
    }

    if (!gate_z) {
        throw ValidationError("UnknownVariant",
                              std::string("gate variant ") + to_string(gate) +
                                  " cannot be evaluated for this distribution");
    }
    if (*gate_z > 4.0) {
        out << "gate: " << to_string(gate) << " z " << fmt12(*gate_z) << " exceeds 4 sigma\n";
        return 3;
    }
    out << "gate: " << to_string(gate) << " z " << fmt12(*gate_z) << " within 4 sigma\n";
    return 0;
}

struct SweepSpec {
    std::string param;
    double from = 0.0;
    double to = 0.0;
    std::uint64_t steps = 0;
    std::string out_path;
};

int do_sweep(const CommonOpts& common, const SweepSpec& sweep, std::ostream& out,
             std::ostream& err) {
    if (!(sweep.from < sweep.to)) {
        throw ValidationError("InvalidSweep", "sweep needs from < to");
    }
    const bool sweeps_dist = sweep.param == "tb";
    const ResolvedConfig cfg = common.resolved(!sweeps_dist);

    std::ofstream file(sweep.out_path);
    if (!file) throw IoError("IoError", "cannot open output file " + sweep.out_path);
    file << "param,value,variant,total,p_board,p_missed_early,p_no_bus,recommended\n";

    std::uint64_t rows = 0;
    bool variant_warned[4] = {false, false, false, false};
    for (std::uint64_t i = 0; i < sweep.steps; ++i) {
        const double value = (i + 1 == sweep.steps)
                                 ? sweep.to
                                 : sweep.from + static_cast<double>(i) * (sweep.to - sweep.from) /
                                                    static_cast<double>(sweep.steps - 1);
        Scenario sc = cfg.scenario;
        std::optional<ArrivalDistribution> dist = cfg.dist;
        if (sweep.param == "tw") sc.tw = value;
        else if (sweep.param == "d2") sc.d2 = value;
        else if (sweep.param == "vb") sc.vb = value;
        else if (sweep.param == "vw") sc.vw = value;
        else {
            try {
                dist = ArrivalDistribution::uniform(0.0, value);
            } catch (const ValidationError& e) {
                err << "warning: skipping tb=" << fmt12(value) << ": " << e.name() << "\n";
                continue;
            }
        }

        const std::vector<std::string> bad = violations(sc);
        if (!bad.empty()) {
            err << "warning: skipping " << sweep.param << "=" << fmt12(value) << ": "
                << join(bad, ", ") << "\n";
            continue;
        }

        const DecisionReport report = decide(sc, *dist);
        for (std::size_t vi = 0; vi < 4; ++vi) {
            const FormulaVariant v = kAllVariants[vi];
            EvalBreakdown b;
            try {
                b = evaluate_variant(sc, *dist, v);
            } catch (const ValidationError& e) {
                if (!variant_warned[vi]) {
                    err << "warning: skipping variant " << to_string(v) << ": " << e.name()
                        << "\n";
                    variant_warned[vi] = true;
                }
                continue;
            }
            file << sweep.param << ',' << fmt12(value) << ',' << to_string(v) << ','
                 << fmt12(b.total) << ',' << fmt12(b.p_board) << ',' << fmt12(b.p_missed_early)
                 << ',' << fmt12(b.p_no_bus) << ',' << to_string(report.recommended) << "\n";
            ++rows;
        }
    }
    file.flush();
    if (!file) throw IoError("IoError", "failed writing " + sweep.out_path);

    out << config_echo(cfg) << "\n"
        << "sweep: wrote " << rows << " rows to " << sweep.out_path << "\n";
    return 0;
}

int do_breakeven(const CommonOpts& common, const std::string& solve_for, double lo, double hi,
                 std::ostream& out, std::ostream& /*err*/) {
    const ResolvedConfig cfg = common.resolved(true);
    out << config_echo(cfg) << "\n";
    try {
        const double root = solve_for == "tw" ? breakeven_tw(cfg.scenario, *cfg.dist, lo, hi)
                                              : breakeven_d2(cfg.scenario, *cfg.dist, lo, hi);
        out << "indifference " << solve_for << ": " << fmt12(root) << "\n";
    } catch (const NoSignChange& e) {
        out << "no indifference point in [" << fmt12(lo) << ", " << fmt12(hi) << "]: "
            << (e.f_lo() > 0.0 ? "walk-all dominates walk-then-wait"
                               : "walk-then-wait dominates walk-all")
            << " (f(lo) = " << fmt12(e.f_lo()) << ", f(hi) = " << fmt12(e.f_hi()) << ")\n";
    }
    return 0;
}

int do_residual(const CommonOpts& common, std::ostream& out, std::ostream& /*err*/) {
    const ResolvedConfig cfg = common.resolved(false);
    if (!cfg.tb) {
        throw ValidationError("MissingHeadway", "residual needs t_b (config key tb or --tb)");
    }
    const double tb = *cfg.tb;
    const double quad = residual_uniform(cfg.scenario, tb);
    const double closed = residual_closed_form(cfg.scenario, tb);
    const RenewalStats rs = run_renewal(cfg.scenario, tb, cfg.trials, cfg.seed);

    out << config_echo(cfg) << "\n"
        << "assumption: d2/vw = " << fmt12(cfg.scenario.d2 / cfg.scenario.vw)
        << " < t_b = " << fmt12(tb) << "\n"
        << "quadrature: " << fmt12(quad) << "\n"
        << "closed_form: " << fmt12(closed) << "\n";
    if (rs.overtakes == 0) {
        out << "renewal: conditioning event never occurred (0 of " << rs.trials << " trials)\n";
    } else {
        out << "renewal: mean_extra_wait " << fmt12(rs.mean_extra_wait) << " stderr "
            << fmt12(rs.std_error) << " p_overtake " << fmt12(rs.p_overtake) << " overtakes "
            << rs.overtakes << " trials " << rs.trials << "\n";
    }
    return 0;
}

int do_simulate(const CommonOpts& common, const std::string& strategy_name, int threads,
                std::uint64_t chunk_size, std::ostream& out, std::ostream& err) {
    const ResolvedConfig cfg = common.resolved(true);
    const StrategyKind strategy = strategy_from(strategy_name);
    McOptions options;
    options.threads = threads;
    options.chunk_size = chunk_size;
    const SimStats st =
        run_mc(cfg.scenario, strategy, *cfg.dist, cfg.trials, cfg.seed, options);

    if (common.csv) {
        err << config_echo(cfg) << "\n";
        out << "strategy,trials,seed,mean,stderr,freq_board,freq_missed_early,freq_no_bus\n"
            << to_string(strategy) << ',' << st.trials << ',' << cfg.seed << ',' << fmt12(st.mean)
            << ',' << fmt12(st.std_error) << ',' << fmt12(st.freq_board) << ','
            << fmt12(st.freq_missed_early) << ',' << fmt12(st.freq_no_bus) << "\n";
    } else {
        out << config_echo(cfg) << "\n"
            << "strategy: " << to_string(strategy) << "\n"
            << "trials: " << st.trials << "\n"
            << "mean: " << fmt12(st.mean) << "\n"
            << "stderr: " << fmt12(st.std_error) << "\n"
            << "freq_board: " << fmt12(st.freq_board) << "\n"
            << "freq_missed_early: " << fmt12(st.freq_missed_early) << "\n"
            << "freq_no_bus: " << fmt12(st.freq_no_bus) << "\n";
    }
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"walk-or-wait: expected travel times for the walk-to-the-next-stop problem",
                 "walkwait"};
    app.require_subcommand(1);

    static const std::vector<std::string> kVariantNames = {
        "original-expr", "original-indiff", "distance-corrected", "fully-corrected"};
    static const std::vector<std::string> kStrategyNames = {"walk-then-wait", "wait-at-stop1",
                                                            "walk-all"};

    CommonOpts eval_common;
    std::string eval_variant = "fully-corrected";
    CLI::App* eval = app.add_subcommand("eval", "evaluate one formula variant");
    eval_common.attach(eval, true);
    eval->add_option("--variant", eval_variant, "formula stage to evaluate")
        ->check(CLI::IsMember(kVariantNames));

    CommonOpts compare_common;
    std::string compare_gate = "fully-corrected";
    CLI::App* compare =
        app.add_subcommand("compare", "all variants against a Monte Carlo estimate");
    compare_common.attach(compare, false);
    compare->add_option("--gate", compare_gate, "variant whose 4-sigma agreement sets the exit code")
        ->check(CLI::IsMember(kVariantNames));

    CommonOpts sweep_common;
    SweepSpec sweep_spec;
    CLI::App* sweep = app.add_subcommand("sweep", "evaluate all variants over a parameter grid");
    sweep_common.attach(sweep, false);
    sweep->add_option("--param", sweep_spec.param, "parameter to sweep")
        ->required()
        ->check(CLI::IsMember({"tw", "d2", "vb", "vw", "tb"}));
    sweep->add_option("--from", sweep_spec.from, "first grid value")->required();
    sweep->add_option("--to", sweep_spec.to, "last grid value (inclusive)")->required();
    sweep->add_option("--steps", sweep_spec.steps, "grid size (>= 2)")
        ->required()
        ->check(CLI::Range(std::uint64_t{2}, std::numeric_limits<std::uint64_t>::max()));
    sweep->add_option("--out", sweep_spec.out_path, "CSV output path")->required();

    CommonOpts breakeven_common;
    std::string solve_for = "tw";
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    CLI::App* breakeven =
        app.add_subcommand("breakeven", "solve the corrected indifference equation");
    breakeven_common.attach(breakeven, false);
    breakeven->add_option("--solve-for", solve_for, "unknown to solve for")
        ->check(CLI::IsMember({"tw", "d2"}));
    breakeven->add_option("--lo", bracket_lo, "bracket lower end")->required();
    breakeven->add_option("--hi", bracket_hi, "bracket upper end")->required();

    CommonOpts residual_common;
    CLI::App* residual =
        app.add_subcommand("residual", "overtake-en-route diagnostics (needs tb)");
    residual_common.attach(residual, false);

    CommonOpts simulate_common;
    std::string strategy_name = "walk-then-wait";
    int threads = 1;
    std::uint64_t chunk_size = 65536;
    CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo run for one strategy");
    simulate_common.attach(simulate, true);
    simulate->add_option("--strategy", strategy_name, "strategy to simulate")
        ->check(CLI::IsMember(kStrategyNames));
    simulate->add_option("--threads", threads, "worker threads (never changes the result)")
        ->check(CLI::PositiveNumber);
    simulate->add_option("--chunk-size", chunk_size, "trials per chunk")
        ->check(CLI::PositiveNumber);

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("walkwait");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        if (eval->parsed()) return do_eval(eval_common, eval_variant, out, err);
        if (compare->parsed()) return do_compare(compare_common, compare_gate, out, err);
        if (sweep->parsed()) return do_sweep(sweep_common, sweep_spec, out, err);
        if (breakeven->parsed()) {
            return do_breakeven(breakeven_common, solve_for, bracket_lo, bracket_hi, out, err);
        }
        if (residual->parsed()) return do_residual(residual_common, out, err);
        if (simulate->parsed()) {
            return do_simulate(simulate_common, strategy_name, threads, chunk_size, out, err);
        }
    } catch (const AssumptionViolated& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace walkwait::cli
