#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gangsched/analysis.hpp"
#include "gangsched/generator.hpp"
#include "gangsched/simulator.hpp"
#include "gangsched/task_model.hpp"

namespace gangsched::cli {

// Exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitNotProven = 2;     // analyze
inline constexpr int kExitMiss = 2;          // simulate
inline constexpr int kExitInapplicable = 3;  // analyze

int exit_code(const AnalysisVerdict &v);

// Reproduces the four facts about the built-in counterexample; returns 0
// iff all of them hold exactly.
int cmd_counterexample(std::ostream &out, bool json);

void write_verdict(std::ostream &out, const TaskSystem &ts, const AnalysisVerdict &v,
                   const AnalysisConfig &config, bool json);
int cmd_analyze(const std::string &path, const AnalysisConfig &config, bool json, std::ostream &out,
                std::ostream &err);

// Trace CSV: "slot,task,processor" rows, then "MISS,<task>,<deadline>" if a
// deadline was missed.
void write_trace_csv(std::ostream &out, const ScheduleTrace &trace);
int cmd_simulate(const std::string &path, std::optional<Time> horizon, bool continue_after_miss,
                 std::ostream &out, std::ostream &err);

struct ExperimentOptions {
    int n = 10;
    int m = 6;
    int points = 20;
    int trials = 300;
    std::uint64_t seed = 1;
    AnalysisConfig analysis;
    Time t_min = 10;
    Time t_max = 1000;
    DeadlineMode deadline_mode = DeadlineMode::Implicit;
    // TaskUtilization: a point u means sum U_i = u * n.
    // ProcessorLoad: a point u means sum U_i * v_i = u * m.
    LoadMode axis = LoadMode::TaskUtilization;
    // Simulation horizon per system; empty means min(hyperperiod, 10 * max T).
    std::optional<Time> sim_horizon;
};

struct ExperimentRow {
    Rational utilization;  // sum U_i / n, or sum U_i * v_i / m on the load axis
    int trials = 0;
    int certified = 0;
    int not_proven = 0;
    int inapplicable = 0;
    int sim_miss = 0;
    int gen_errors = 0;
    Variant variant = Variant::StrictFix;
    CarryInStrategy carry_in = CarryInStrategy::TopHMinusOne;
};

inline constexpr const char *kExperimentHeader =
    "utilization,trials,certified,not_proven,inapplicable,sim_miss,gen_errors,variant,carry_in";

std::vector<ExperimentRow> run_experiment(const ExperimentOptions &opts);
void write_experiment_csv(std::ostream &out, const std::vector<ExperimentRow> &rows);
int cmd_experiment(const ExperimentOptions &opts, const std::string &out_path, std::ostream &out,
                   std::ostream &err);

std::string gen_file_name(std::uint64_t seed, std::uint64_t trial);
int cmd_gen(const GenParams &params, int count, const std::string &out_dir, std::ostream &out,
            std::ostream &err);

// Full command-line entry point.
int run(int argc, char **argv, std::ostream &out, std::ostream &err);

}  // namespace gangsched::cli
