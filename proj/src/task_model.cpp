#include "gangsched/task_model.hpp"

#include <charconv>
#include <fstream>
#include <limits>
#include <istream>
#include <ostream>
#include <sstream>

namespace gangsched {

TaskSystem::TaskSystem(int m, std::vector<GangTask> tasks) : m_(m), tasks_(std::move(tasks))
{
    for (std::size_t i = 0; i < tasks_.size(); ++i)
        tasks_[i].index = i;
}

Rational utilization(const GangTask &t) { return Rational(t.c, t.t); }

const char *to_string(Constraint c)
{
    switch (c) {
    case Constraint::PlatformSize: return "m >= 1";
    case Constraint::NonEmpty: return "at least one task";
    case Constraint::WidthPositive: return "v >= 1";
    case Constraint::WcetPositive: return "C >= 1";
    case Constraint::DeadlinePositive: return "D >= 1";
    case Constraint::PeriodPositive: return "T >= 1";
    case Constraint::WcetWithinDeadline: return "C <= D";
    case Constraint::DeadlineWithinPeriod: return "D <= T";
    case Constraint::WidthWithinPlatform: return "v <= m";
    case Constraint::IndexOrder: return "index matches list position";
    }
    return "?";
}

std::string ValidationError::message() const
{
    std::string s = "violates ";
    s += to_string(constraint);
    if (task_index)
        s = "task " + std::to_string(*task_index) + " " + s;
    return s;
}

std::optional<ValidationError> validate(const TaskSystem &ts)
{
    if (ts.m() < 1)
        return ValidationError{std::nullopt, Constraint::PlatformSize};
    if (ts.size() == 0)
        return ValidationError{std::nullopt, Constraint::NonEmpty};

    for (std::size_t i = 0; i < ts.size(); ++i) {
        const GangTask &t = ts[i];
        auto fail = [i](Constraint c) { return ValidationError{i, c}; };
        if (t.index != i)
            return fail(Constraint::IndexOrder);
        if (t.v < 1)
            return fail(Constraint::WidthPositive);
        if (t.c < 1)
            return fail(Constraint::WcetPositive);
        if (t.d < 1)
            return fail(Constraint::DeadlinePositive);
        if (t.t < 1)
            return fail(Constraint::PeriodPositive);
        if (t.c > t.d)
            return fail(Constraint::WcetWithinDeadline);
        if (t.d > t.t)
            return fail(Constraint::DeadlineWithinPeriod);
        if (t.v > ts.m())
            return fail(Constraint::WidthWithinPlatform);
    }
    return std::nullopt;
}

ParseError::ParseError(std::size_t line, const std::string &reason)
    : std::runtime_error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason)
{
}

namespace {

std::vector<std::string> split_ws(const std::string &line)
{
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok)
        out.push_back(tok);
    return out;
}

std::int64_t parse_positive(const std::string &tok, std::size_t line)
{
    std::int64_t v = 0;
    const char *first = tok.data();
    const char *last = tok.data() + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last)
        throw ParseError(line, "not an integer: '" + tok + "'");
    if (v < 1)
        throw ParseError(line, "not a positive integer: '" + tok + "'");
    return v;
}

}  // namespace

TaskSystem parse_task_system(std::istream &in)
{
    std::optional<int> m;
    std::vector<GangTask> tasks;
    std::string line;
    std::size_t lineno = 0;
    std::size_t last_line = 0;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        auto toks = split_ws(line);
        if (toks.empty() || toks[0][0] == '#')
            continue;
        last_line = lineno;

        if (!m) {
            if (toks[0] != "m")
                throw ParseError(lineno, "expected 'm <processors>' first");
            if (toks.size() != 2)
                throw ParseError(lineno, "expected exactly one value after 'm'");
            const auto v = parse_positive(toks[1], lineno);
            if (v > std::numeric_limits<int>::max())
                throw ParseError(lineno, "processor count too large");
            m = static_cast<int>(v);
            continue;
        }

        if (toks[0] == "m")
            throw ParseError(lineno, "duplicate 'm' line");
        if (toks[0] != "task")
            throw ParseError(lineno, "unknown directive '" + toks[0] + "'");
        if (toks.size() != 5)
            throw ParseError(lineno, "expected 'task <v> <C> <D> <T>'");

        GangTask t;
        const auto v = parse_positive(toks[1], lineno);
        if (v > std::numeric_limits<int>::max())
            throw ParseError(lineno, "width too large");
        t.v = static_cast<int>(v);
        t.c = parse_positive(toks[2], lineno);
        t.d = parse_positive(toks[3], lineno);
        t.t = parse_positive(toks[4], lineno);
        t.index = tasks.size();
        tasks.push_back(t);

        // Report per-task violations against the line that introduced them.
        if (t.c > t.d)
            throw ParseError(lineno, "task " + std::to_string(t.index) + " violates C <= D");
        if (t.d > t.t)
            throw ParseError(lineno, "task " + std::to_string(t.index) + " violates D <= T");
        if (t.v > *m)
            throw ParseError(lineno, "task " + std::to_string(t.index) + " violates v <= m");
    }

    if (!m)
        throw ParseError(lineno, "missing 'm' line");

    TaskSystem ts(*m, std::move(tasks));
    if (auto err = validate(ts))
        throw ParseError(last_line, err->message());
    return ts;
}

TaskSystem parse_task_system(const std::string &text)
{
    std::istringstream in(text);
    return parse_task_system(in);
}

TaskSystem load_task_system(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ParseError(0, "cannot open '" + path + "'");
    return parse_task_system(in);
}

void print_task_system(std::ostream &os, const TaskSystem &ts)
{
    os << "m " << ts.m() << '\n';
    for (const auto &t : ts.tasks())
        os << "task " << t.v << ' ' << t.c << ' ' << t.d << ' ' << t.t << '\n';
}

std::string print_task_system(const TaskSystem &ts)
{
    std::ostringstream os;
    print_task_system(os, ts);
    return os.str();
}

TaskSystem counterexample_system()
{
    return TaskSystem(3, {
        GangTask{0, 2, 2, 2, 2},
        GangTask{1, 2, 1, 2, 2},
    });
}

}  // namespace gangsched
