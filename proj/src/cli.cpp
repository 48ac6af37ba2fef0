#include "gangsched/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "gangsched/generator.hpp"

namespace gangsched::cli {

using nlohmann::ordered_json;

int exit_code(const AnalysisVerdict &v)
{
    if (v.any_inapplicable())
        return kExitInapplicable;
    if (v.any_not_proven())
        return kExitNotProven;
    return kExitOk;
}

namespace {

template <typename T>
std::string join(const std::vector<T> &xs)
{
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < xs.size(); ++i)
        os << (i ? ", " : "") << xs[i];
    os << ']';
    return os.str();
}

ordered_json summary_json(const InterferenceSummary &s)
{
    return ordered_json{
        {"k", s.point.k},   {"delta", s.point.delta}, {"a", s.point.a},          {"w", s.point.w},
        {"h", s.point.h},   {"i1", s.i1},             {"i2", s.i2},              {"i_diff", s.i_diff},
        {"carry_in", s.carry_in}, {"lhs", s.lhs},     {"rhs", s.rhs},
    };
}

void write_summary_text(std::ostream &out, const InterferenceSummary &s, const std::string &indent)
{
    out << indent << "k=" << s.point.k << " delta=" << s.point.delta << " A=" << s.point.a
        << " w=" << s.point.w << " h=" << s.point.h << '\n';
    out << indent << "I1=" << join(s.i1) << " I2=" << join(s.i2) << " I_diff=" << join(s.i_diff)
        << " carry_in=" << s.carry_in << '\n';
    out << indent << "lhs=" << s.lhs << " rhs=" << s.rhs << '\n';
}

ordered_json outcome_json(const TaskOutcome &o)
{
    if (const auto *c = std::get_if<Certified>(&o))
        return {{"outcome", "certified"}, {"scanned_up_to", c->scanned_up_to}};
    if (const auto *np = std::get_if<NotProven>(&o))
        return {{"outcome", "not_proven"}, {"witness_delta", np->witness_delta}, {"summary", summary_json(np->summary)}};
    const auto &in = std::get<Inapplicable>(o);
    ordered_json j{{"outcome", "inapplicable"}, {"denominator", in.denominator.str()}, {"scanned_up_to", in.scanned_up_to}};
    j["exploratory_witness"] = in.exploratory_witness ? ordered_json(*in.exploratory_witness) : ordered_json(nullptr);
    return j;
}

std::string outcome_text(const TaskOutcome &o)
{
    std::ostringstream os;
    if (const auto *c = std::get_if<Certified>(&o)) {
        os << "certified (checked delta <= " << c->scanned_up_to << ")";
    } else if (const auto *np = std::get_if<NotProven>(&o)) {
        os << "not proven, condition violated at delta=" << np->witness_delta << " (lhs=" << np->summary.lhs
           << " rhs=" << np->summary.rhs << ")";
    } else {
        const auto &in = std::get<Inapplicable>(o);
        os << "inapplicable, interval-bound denominator " << in.denominator.str() << " <= 0";
        if (in.exploratory_witness)
            os << "; exploratory scan violated at delta=" << *in.exploratory_witness;
        else
            os << "; exploratory scan clean up to delta=" << in.scanned_up_to;
    }
    return os.str();
}

}  // namespace

void write_verdict(std::ostream &out, const TaskSystem &ts, const AnalysisVerdict &v,
                   const AnalysisConfig &config, bool json)
{
    const char *system = v.schedulable() ? "schedulable" : v.any_inapplicable() ? "inapplicable" : "not_proven";
    if (json) {
        ordered_json j;
        j["variant"] = to_string(config.variant);
        j["carry_in"] = to_string(config.carry_in);
        j["delta_cap"] = config.delta_cap.value_or(default_delta_cap(ts));
        j["tasks"] = ordered_json::array();
        for (const auto &o : v.tasks)
            j["tasks"].push_back(outcome_json(o));
        j["system"] = system;
        out << j.dump(2) << '\n';
        return;
    }
    out << "variant: " << to_string(config.variant) << ", carry-in: " << to_string(config.carry_in)
        << ", delta-cap: " << config.delta_cap.value_or(default_delta_cap(ts)) << '\n';
    for (std::size_t k = 0; k < v.tasks.size(); ++k)
        out << "task " << k << ": " << outcome_text(v.tasks[k]) << '\n';
    out << "system: " << system << '\n';
}

int cmd_analyze(const std::string &path, const AnalysisConfig &config, bool json, std::ostream &out,
                std::ostream &err)
{
    TaskSystem ts;
    try {
        ts = load_task_system(path);
    } catch (const ParseError &e) {
        err << path << ": " << e.what() << '\n';
        return kExitInputError;
    }
    const AnalysisVerdict v = analyze(ts, config);
    write_verdict(out, ts, v, config, json);
    return exit_code(v);
}

void write_trace_csv(std::ostream &out, const ScheduleTrace &trace)
{
    out << "slot,task,processor\n";
    for (std::size_t slot = 0; slot < trace.slots.size(); ++slot)
        for (const auto &alloc : trace.slots[slot])
            for (int p : alloc.processors)
                out << slot << ',' << alloc.task << ',' << p << '\n';
    if (trace.first_miss)
        out << "MISS," << trace.first_miss->task << ',' << trace.first_miss->deadline << '\n';
}

int cmd_simulate(const std::string &path, std::optional<Time> horizon, bool continue_after_miss,
                 std::ostream &out, std::ostream &err)
{
    try {
        const TaskSystem ts = load_task_system(path);
        SimulationOptions opts;
        opts.horizon = horizon;
        opts.stop_at_first_miss = !continue_after_miss;
        const ScheduleTrace trace = simulate_synchronous(ts, opts);
        write_trace_csv(out, trace);
        return trace.first_miss ? kExitMiss : kExitOk;
    } catch (const ParseError &e) {
        err << path << ": " << e.what() << '\n';
    } catch (const std::exception &e) {
        err << "simulate: " << e.what() << '\n';
    }
    return kExitInputError;
}

// ---------------------------------------------------------------------------
// counterexample

namespace {

struct Fact {
    std::string name;
    std::string expected;
    std::string actual;
    bool ok() const { return expected == actual; }
};

std::string slot_text(const std::vector<Allocation> &slot)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < slot.size(); ++i) {
        os << (i ? " " : "") << "task" << slot[i].task << "@";
        for (std::size_t p = 0; p < slot[i].processors.size(); ++p)
            os << (p ? "+" : "") << slot[i].processors[p];
    }
    return slot.empty() ? "idle" : os.str();
}

}  // namespace

int cmd_counterexample(std::ostream &out, bool json)
{
    const TaskSystem ts = counterexample_system();
    constexpr std::size_t k = 1;
    constexpr Time delta = 2;

    AnalysisConfig original;
    original.variant = Variant::Original;
    AnalysisConfig strict;
    strict.variant = Variant::StrictFix;

    const ScheduleTrace trace = simulate_synchronous(ts);
    const InterferenceSummary summary = interference_summary(ts, k, delta, original.carry_in);
    const IntervalTerms terms = interval_terms(ts, k, original.carry_in);
    const TaskOutcome orig_outcome = analyze_task(ts, k, original);
    const TaskOutcome strict_outcome = analyze_task(ts, k, strict);

    std::vector<Fact> facts;

    // (a) schedule
    std::string slots;
    for (std::size_t s = 0; s < trace.slots.size(); ++s)
        slots += (s ? "; " : "") + slot_text(trace.slots[s]);
    facts.push_back({"schedule slots [0,2)", "task0@0+1; task0@0+1", slots});
    facts.push_back({"first miss", "task 1 at 2",
                     trace.first_miss ? "task " + std::to_string(trace.first_miss->task) + " at " +
                                            std::to_string(trace.first_miss->deadline)
                                      : "none"});

    // (b) interference at (k = tau_2, delta = 2)
    facts.push_back({"w, h", "1, 2", std::to_string(summary.point.w) + ", " + std::to_string(summary.point.h)});
    facts.push_back({"I1", "[2, 0]", join(summary.i1)});
    facts.push_back({"I2", "[2, 0]", join(summary.i2)});
    facts.push_back({"I_diff", "[0, 0]", join(summary.i_diff)});
    facts.push_back({"carry-in", "0", std::to_string(summary.carry_in)});
    facts.push_back({"lhs vs rhs", "2 vs 2", std::to_string(summary.lhs) + " vs " + std::to_string(summary.rhs)});

    // (c) interval bound and original verdict
    facts.push_back({"interval denominator", "-1", terms.denominator.str()});
    facts.push_back({"original verdict", "inapplicable",
                     std::holds_alternative<Inapplicable>(orig_outcome) ? "inapplicable" : "other"});

    // (d) strict verdict
    std::string strict_text = "other";
    if (const auto *np = std::get_if<NotProven>(&strict_outcome))
        strict_text = "not_proven at delta=" + std::to_string(np->witness_delta);
    facts.push_back({"strict verdict", "not_proven at delta=2", strict_text});

    bool all_ok = true;
    for (const auto &f : facts)
        all_ok = all_ok && f.ok();

    if (json) {
        ordered_json j;
        std::ostringstream sys;
        print_task_system(sys, ts);
        j["system"] = sys.str();
        j["trace"] = ordered_json::array();
        for (std::size_t s = 0; s < trace.slots.size(); ++s)
            for (const auto &alloc : trace.slots[s])
                j["trace"].push_back({{"slot", s}, {"task", alloc.task}, {"processors", alloc.processors}});
        j["first_miss"] = trace.first_miss ? ordered_json{{"task", trace.first_miss->task},
                                                          {"deadline", trace.first_miss->deadline}}
                                           : ordered_json(nullptr);
        j["summary"] = summary_json(summary);
        j["interval"] = {{"numerator", terms.numerator.str()}, {"denominator", terms.denominator.str()}};
        j["original"] = outcome_json(orig_outcome);
        j["strict"] = outcome_json(strict_outcome);
        j["facts"] = ordered_json::array();
        for (const auto &f : facts)
            j["facts"].push_back({{"name", f.name}, {"expected", f.expected}, {"actual", f.actual}, {"ok", f.ok()}});
        j["ok"] = all_ok;
        out << j.dump(2) << '\n';
        return all_ok ? kExitOk : kExitInputError;
    }

    out << "counterexample system\n";
    print_task_system(out, ts);
    out << "\n(a) synchronous Gang EDF schedule over one hyperperiod\n";
    for (std::size_t s = 0; s < trace.slots.size(); ++s)
        out << "  slot " << s << ": " << slot_text(trace.slots[s]) << '\n';
    if (trace.first_miss)
        out << "  first miss: task " << trace.first_miss->task << " at deadline " << trace.first_miss->deadline
            << '\n';
    out << "\n(b) interference at k=" << k << ", delta=" << delta << " (carry-in: " << to_string(original.carry_in)
        << ")\n";
    write_summary_text(out, summary, "  ");
    out << "\n(c) interval bound for k=" << k << ": numerator " << terms.numerator.str() << ", denominator "
        << terms.denominator.str() << '\n';
    out << "  original: " << outcome_text(orig_outcome) << '\n';
    out << "\n(d) strict: " << outcome_text(strict_outcome) << '\n';
    out << "\nchecks\n";
    for (const auto &f : facts) {
        out << "  " << (f.ok() ? "ok  " : "FAIL") << "  " << f.name << ": " << f.actual;
        if (!f.ok())
            out << " (expected " << f.expected << ")";
        out << '\n';
    }
    out << (all_ok ? "all facts reproduced\n" : "MISMATCH\n");
    return all_ok ? kExitOk : kExitInputError;
}

// ---------------------------------------------------------------------------
// experiment

std::vector<ExperimentRow> run_experiment(const ExperimentOptions &opts)
{
    if (opts.points < 1)
        throw std::invalid_argument("points must be >= 1");
    if (opts.trials < 0)
        throw std::invalid_argument("trials must be >= 0");

    std::vector<ExperimentRow> rows;
    if (opts.trials == 0)
        return rows;
    for (int point = 1; point <= opts.points; ++point) {
        ExperimentRow row;
        row.utilization = Rational(point, opts.points);
        row.trials = opts.trials;
        row.variant = opts.analysis.variant;
        row.carry_in = opts.analysis.carry_in;

        GenParams gp;
        gp.n = opts.n;
        gp.m = opts.m;
        gp.load_mode = opts.axis;
        gp.target_load = opts.axis == LoadMode::ProcessorLoad ? row.utilization
                                                              : row.utilization * Rational(opts.n) / Rational(opts.m);
        gp.t_min = opts.t_min;
        gp.t_max = opts.t_max;
        gp.deadline_mode = opts.deadline_mode;
        gp.seed = opts.seed;

        for (int trial = 0; trial < opts.trials; ++trial) {
            const auto trial_id = static_cast<std::uint64_t>(point - 1) * static_cast<std::uint64_t>(opts.trials) +
                                  static_cast<std::uint64_t>(trial);
            TaskSystem ts;
            try {
                ts = gen_task_system(gp, trial_id);
            } catch (const GenerationError &) {
                ++row.gen_errors;
                continue;
            }

            if (has_inapplicable_bound(ts))
                ++row.inapplicable;
            else if (analyze(ts, opts.analysis).schedulable())
                ++row.certified;
            else
                ++row.not_proven;

            SimulationOptions sim;
            sim.record_slots = false;
            if (opts.sim_horizon) {
                sim.horizon = *opts.sim_horizon;
            } else {
                Time max_t = 0;
                for (const auto &t : ts.tasks())
                    max_t = std::max(max_t, t.t);
                const Time cap = 10 * max_t;
                Time h = cap;
                try {
                    h = std::min(hyperperiod(ts), cap);
                } catch (const HorizonOverflow &) {
                }
                sim.horizon = h;
            }
            if (simulate_synchronous(ts, sim).first_miss)
                ++row.sim_miss;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_experiment_csv(std::ostream &out, const std::vector<ExperimentRow> &rows)
{
    out << kExperimentHeader << '\n';
    for (const auto &r : rows) {
        out << r.utilization.to_decimal(9) << ',' << r.trials << ',' << r.certified << ',' << r.not_proven << ','
            << r.inapplicable << ',' << r.sim_miss << ',' << r.gen_errors << ',' << to_string(r.variant) << ','
            << to_string(r.carry_in) << '\n';
    }
}

int cmd_experiment(const ExperimentOptions &opts, const std::string &out_path, std::ostream &out,
                   std::ostream &err)
{
    std::vector<ExperimentRow> rows;
    try {
        rows = run_experiment(opts);
    } catch (const std::exception &e) {
        err << "experiment: " << e.what() << '\n';
        return kExitInputError;
    }
    if (out_path.empty() || out_path == "-") {
        write_experiment_csv(out, rows);
        return kExitOk;
    }
    std::ofstream file(out_path, std::ios::binary);
    if (!file) {
        err << "experiment: cannot write '" << out_path << "'\n";
        return kExitInputError;
    }
    write_experiment_csv(file, rows);
    return kExitOk;
}

// ---------------------------------------------------------------------------
// gen

std::string gen_file_name(std::uint64_t seed, std::uint64_t trial)
{
    return "ts_" + std::to_string(seed) + "_" + std::to_string(trial) + ".txt";
}

int cmd_gen(const GenParams &params, int count, const std::string &out_dir, std::ostream &out,
            std::ostream &err)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) {
        err << "gen: cannot create '" << out_dir << "': " << ec.message() << '\n';
        return kExitInputError;
    }
    try {
        check_params(params);
    } catch (const GenerationError &e) {
        err << "gen: " << e.what() << '\n';
        return kExitInputError;
    }

    int failures = 0;
    for (int trial = 0; trial < count; ++trial) {
        const auto t = static_cast<std::uint64_t>(trial);
        try {
            const TaskSystem ts = gen_task_system(params, t);
            const fs::path path = fs::path(out_dir) / gen_file_name(params.seed, t);
            std::ofstream file(path, std::ios::binary);
            if (!file)
                throw std::runtime_error("cannot write '" + path.string() + "'");
            print_task_system(file, ts);
            // C_i rounding moves the achieved sum off the target; show both.
            Rational achieved;
            for (const auto &task : ts.tasks())
                achieved += params.load_mode == LoadMode::ProcessorLoad ? utilization(task) * Rational(task.v)
                                                                        : utilization(task);
            out << path.string() << " target=" << (params.target_load * Rational(params.m)).to_decimal(6)
                << " achieved=" << achieved.to_decimal(6) << '\n';
        } catch (const std::exception &e) {
            err << "gen: trial " << trial << ": " << e.what() << '\n';
            ++failures;
        }
    }
    return failures == 0 ? kExitOk : kExitInputError;
}

// ---------------------------------------------------------------------------
// command line

namespace {

Variant parse_variant(const std::string &s)
{
    return s == "original" ? Variant::Original : Variant::StrictFix;
}

CarryInStrategy parse_carry_in(const std::string &s)
{
    return s == "all" ? CarryInStrategy::AllTasks : CarryInStrategy::TopHMinusOne;
}

std::optional<Time> parse_horizon(const std::string &s)
{
    if (s == "auto")
        return std::nullopt;
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos != s.size() || v < 0)
        throw std::invalid_argument("horizon must be 'auto' or a non-negative integer");
    return v;
}

}  // namespace

int run(int argc, char **argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Gang EDF schedulability analysis and simulation"};
    app.require_subcommand(1);

    std::string input;
    std::string variant = "strict";
    std::string carry_in = "top";
    std::optional<Time> delta_cap;
    std::string horizon = "auto";
    bool continue_after_miss = false;
    bool json = false;
    int n = 10;
    int m = 6;
    int trials = 300;
    int points = 20;
    int count = 1;
    std::uint64_t seed = 1;
    std::string out_path;
    std::string load = "1/2";
    Time t_min = 10;
    Time t_max = 1000;
    std::string deadlines = "implicit";
    std::string sim_horizon = "auto";
    std::string axis = "util";

    auto add_analysis_flags = [&](CLI::App *sub) {
        sub->add_option("--variant", variant, "Condition variant")
            ->check(CLI::IsMember({"original", "strict"}))
            ->capture_default_str();
        sub->add_option("--carry-in", carry_in, "Carry-in aggregation")
            ->check(CLI::IsMember({"top", "all"}))
            ->capture_default_str();
        sub->add_option("--delta-cap", delta_cap, "Scan horizon when the interval bound is inapplicable")
            ->check(CLI::PositiveNumber);
    };
    auto add_gen_flags = [&](CLI::App *sub) {
        sub->add_option("--n", n, "Tasks per system")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--m", m, "Processors")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--seed", seed, "Random seed")->capture_default_str();
        sub->add_option("--t-min", t_min, "Smallest period")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--t-max", t_max, "Largest period")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--deadlines", deadlines, "Deadline mode")
            ->check(CLI::IsMember({"implicit", "constrained"}))
            ->capture_default_str();
        sub->add_option("--axis", axis, "Load axis: util (sum U_i) or load (sum U_i * v_i)")
            ->check(CLI::IsMember({"util", "load"}))
            ->capture_default_str();
    };

    auto *ce = app.add_subcommand("counterexample", "Reproduce the two-task counterexample");
    ce->add_flag("--json", json, "JSON output");

    auto *an = app.add_subcommand("analyze", "Run the schedulability test on a task-set file");
    an->add_option("--input", input, "Task-set file")->required();
    add_analysis_flags(an);
    an->add_flag("--json", json, "JSON output");

    auto *sim = app.add_subcommand("simulate", "Simulate the synchronous Gang EDF schedule");
    sim->add_option("--input", input, "Task-set file")->required();
    sim->add_option("--horizon", horizon, "Slots to simulate, or 'auto' for one hyperperiod")->capture_default_str();
    sim->add_flag("--continue", continue_after_miss, "Keep simulating after the first miss");

    auto *ex = app.add_subcommand("experiment", "Applicability sweep over utilization");
    add_gen_flags(ex);
    add_analysis_flags(ex);
    ex->add_option("--trials", trials, "Systems per utilization point")->check(CLI::NonNegativeNumber)->capture_default_str();
    ex->add_option("--points", points, "Number of utilization points")->check(CLI::PositiveNumber)->capture_default_str();
    ex->add_option("--sim-horizon", sim_horizon, "Simulation slots per system, or 'auto'")->capture_default_str();
    ex->add_option("--out", out_path, "Output CSV (default stdout)");

    auto *gen = app.add_subcommand("gen", "Write generated task-set files");
    add_gen_flags(gen);
    gen->add_option("--load", load, "Target load as p/q: the --axis sum divided by m")->capture_default_str();
    gen->add_option("--count", count, "Number of files")->check(CLI::NonNegativeNumber)->capture_default_str();
    gen->add_option("--out", out_path, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitInputError;
    }

    AnalysisConfig config;
    config.variant = parse_variant(variant);
    config.carry_in = parse_carry_in(carry_in);
    config.delta_cap = delta_cap;

    try {
        if (*ce)
            return cmd_counterexample(out, json);
        if (*an)
            return cmd_analyze(input, config, json, out, err);
        if (*sim)
            return cmd_simulate(input, parse_horizon(horizon), continue_after_miss, out, err);
        if (*ex) {
            ExperimentOptions opts;
            opts.n = n;
            opts.m = m;
            opts.points = points;
            opts.trials = trials;
            opts.seed = seed;
            opts.analysis = config;
            opts.t_min = t_min;
            opts.t_max = t_max;
            opts.deadline_mode = deadlines == "constrained" ? DeadlineMode::Constrained : DeadlineMode::Implicit;
            opts.sim_horizon = parse_horizon(sim_horizon);
            opts.axis = axis == "load" ? LoadMode::ProcessorLoad : LoadMode::TaskUtilization;
            return cmd_experiment(opts, out_path, out, err);
        }
        if (*gen) {
            GenParams gp;
            gp.n = n;
            gp.m = m;
            gp.seed = seed;
            gp.t_min = t_min;
            gp.t_max = t_max;
            gp.deadline_mode = deadlines == "constrained" ? DeadlineMode::Constrained : DeadlineMode::Implicit;
            gp.target_load = Rational::from_string(load);
            gp.load_mode = axis == "load" ? LoadMode::ProcessorLoad : LoadMode::TaskUtilization;
            return cmd_gen(gp, count, out_path, out, err);
        }
    } catch (const std::exception &e) {
        err << "error: " << e.what() << '\n';
        return kExitInputError;
    }
    return kExitInputError;
}

}  // namespace gangsched::cli
