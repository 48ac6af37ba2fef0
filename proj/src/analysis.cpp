#include "gangsched/analysis.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "gangsched/demand.hpp"

namespace gangsched {

const char *to_string(Variant v)
{
    return v == Variant::Original ? "original" : "strict";
}

const char *to_string(CarryInStrategy s)
{
    return s == CarryInStrategy::TopHMinusOne ? "top" : "all";
}

Time default_delta_cap(const TaskSystem &ts)
{
    Time widest = 0;
    for (const auto &t : ts.tasks())
        widest = std::max(widest, t.d + t.t);
    return 10 * widest;
}

AnalysisPoint interference_rectangle(const TaskSystem &ts, std::size_t k, Time delta)
{
    if (k >= ts.size())
        throw std::invalid_argument("task index out of range");
    const GangTask &tk = ts[k];
    if (delta < tk.d)
        throw std::invalid_argument("window length " + std::to_string(delta) +
                                    " is shorter than D_k = " + std::to_string(tk.d));
    AnalysisPoint p;
    p.k = k;
    p.delta = delta;
    p.a = delta - tk.d;
    p.w = delta - tk.c;
    p.h = ts.m() - tk.v + 1;
    return p;
}

namespace {

// Shared body of I1 and I2; `demand` is hbf or hbf' evaluated at delta.
Work interference(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p, Time demand)
{
    const Work height = std::min(ts[i].v, p.h);
    Time width;
    if (i == p.k)
        width = std::min(demand - ts[p.k].c, p.a);
    else
        width = std::min(demand, p.w);
    return std::max<Time>(width, 0) * height;
}

}  // namespace

Work i1(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p)
{
    return interference(ts, i, p, hbf(ts[i], p.delta));
}

Work i2(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p)
{
    return interference(ts, i, p, hbf_prime(ts[i], p.delta));
}

Work i_diff(const TaskSystem &ts, std::size_t i, const AnalysisPoint &p)
{
    return i2(ts, i, p) - i1(ts, i, p);
}

namespace {

// Reorders `diffs`.
Work carry_in_bound_inplace(std::span<Work> diffs, int h, CarryInStrategy strategy)
{
    std::size_t take = diffs.size();
    if (strategy == CarryInStrategy::TopHMinusOne) {
        take = std::min(take, static_cast<std::size_t>(std::max(h - 1, 0)));
        if (take < diffs.size())
            std::nth_element(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(take), diffs.end(),
                             std::greater<>());
    }
    return std::accumulate(diffs.begin(), diffs.begin() + static_cast<std::ptrdiff_t>(take), Work{0});
}

}  // namespace

Work carry_in_bound(std::span<const Work> diffs, int h, CarryInStrategy strategy)
{
    std::vector<Work> scratch(diffs.begin(), diffs.end());
    return carry_in_bound_inplace(scratch, h, strategy);
}

Work carry_in_bound(const TaskSystem &ts, const AnalysisPoint &p, CarryInStrategy strategy)
{
    std::vector<Work> diffs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i)
        diffs[i] = i_diff(ts, i, p);
    return carry_in_bound(diffs, p.h, strategy);
}

InterferenceSummary interference_summary(const TaskSystem &ts, std::size_t k, Time delta,
                                         CarryInStrategy strategy)
{
    InterferenceSummary s;
    s.point = interference_rectangle(ts, k, delta);
    const std::size_t n = ts.size();
    s.i1.resize(n);
    s.i2.resize(n);
    s.i_diff.resize(n);
    Work sum_i1 = 0;
    for (std::size_t i = 0; i < n; ++i) {
        s.i1[i] = i1(ts, i, s.point);
        s.i2[i] = i2(ts, i, s.point);
        s.i_diff[i] = s.i2[i] - s.i1[i];
        sum_i1 += s.i1[i];
    }
    s.carry_in = carry_in_bound(s.i_diff, s.point.h, strategy);
    s.lhs = sum_i1 + s.carry_in;
    s.rhs = s.point.w * s.point.h;
    return s;
}

namespace {

bool condition_holds(Work lhs, Work rhs, Variant variant)
{
    return variant == Variant::StrictFix ? lhs < rhs : lhs <= rhs;
}

// Evaluates lhs and rhs for a fixed task under analysis over many window
// lengths without allocating per point.
class ScanEvaluator {
public:
    ScanEvaluator(const TaskSystem &ts, std::size_t k, const AnalysisConfig &config)
        : ts_(ts), k_(k), config_(config), diffs_(ts.size())
    {
    }

    bool holds(Time delta)
    {
        const AnalysisPoint p = interference_rectangle(ts_, k_, delta);
        Work sum_i1 = 0;
        for (std::size_t i = 0; i < ts_.size(); ++i) {
            const Work a = interference(ts_, i, p, hbf(ts_[i], delta));
            const Work b = interference(ts_, i, p, hbf_prime(ts_[i], delta));
            sum_i1 += a;
            diffs_[i] = b - a;
        }
        const Work lhs = sum_i1 + carry_in_bound_inplace(diffs_, p.h, config_.carry_in);
        return condition_holds(lhs, p.w * p.h, config_.variant);
    }

    // First violating delta in [from, to], if any.
    std::optional<Time> first_violation(Time from, Time to)
    {
        for (Time delta = from; delta <= to; ++delta)
            if (!holds(delta))
                return delta;
        return std::nullopt;
    }

private:
    const TaskSystem &ts_;
    std::size_t k_;
    const AnalysisConfig &config_;
    std::vector<Work> diffs_;
};

}  // namespace

ConditionCheck condition_check(const TaskSystem &ts, std::size_t k, Time delta,
                              const AnalysisConfig &config)
{
    ConditionCheck r;
    r.summary = interference_summary(ts, k, delta, config.carry_in);
    r.holds = condition_holds(r.summary.lhs, r.summary.rhs, config.variant);
    return r;
}

IntervalTerms interval_terms(const TaskSystem &ts, std::size_t k, CarryInStrategy strategy)
{
    if (k >= ts.size())
        throw std::invalid_argument("task index out of range");
    IntervalTerms terms;
    terms.h = ts.m() - ts[k].v + 1;

    Rational slack_sum;  // sum (D_i - T_i) U_i min(v_i, h)
    Rational load_sum;   // sum U_i min(v_i, h)
    std::vector<Work> wcets;
    for (const auto &t : ts.tasks()) {
        const Rational u = utilization(t);
        const Rational height(std::min(t.v, terms.h));
        slack_sum += Rational(t.d - t.t) * u * height;
        load_sum += u * height;
        wcets.push_back(t.c);
    }
    terms.c_carry_in = carry_in_bound(wcets, terms.h, strategy);
    terms.numerator = Rational(terms.h) * Rational(ts[k].c) - slack_sum + Rational(terms.c_carry_in);
    terms.denominator = Rational(terms.h) - load_sum;
    return terms;
}

DeltaUpperBound delta_upper_bound(const TaskSystem &ts, std::size_t k, CarryInStrategy strategy)
{
    const IntervalTerms terms = interval_terms(ts, k, strategy);
    if (terms.denominator.sign() <= 0)
        return BoundInapplicable{terms.denominator};
    return DeltaBound{terms.numerator / terms.denominator};
}

// Only integer window lengths are examined. Between consecutive integers n
// and n + 1 every hbf value is constant and every I1/I2 term is linear in
// delta, so each carry-in aggregate (a maximum over subsets of linear
// terms) and hence lhs - rhs is convex there; at n + 1 the hbf jumps can
// only raise lhs (raising I1_i by x lowers its carry-in share by at most x).
// A violation at a fractional delta therefore shows up at floor(delta) or
// ceil(delta), and the scan runs to ceil(bound).
TaskOutcome analyze_task(const TaskSystem &ts, std::size_t k, const AnalysisConfig &config)
{
    const Time first = ts[k].d;
    ScanEvaluator eval(ts, k, config);

    // delta = D_k belongs to the checked domain whatever the interval bound
    // says, so it is decided before looking at the bound.
    if (!eval.holds(first))
        return NotProven{first, interference_summary(ts, k, first, config.carry_in)};

    const DeltaUpperBound bound = delta_upper_bound(ts, k, config.carry_in);
    if (const auto *b = std::get_if<DeltaBound>(&bound)) {
        const Time last = std::max(first, b->value.ceil());
        if (auto witness = eval.first_violation(first + 1, last))
            return NotProven{*witness, interference_summary(ts, k, *witness, config.carry_in)};
        return Certified{last};
    }

    const auto &inapplicable = std::get<BoundInapplicable>(bound);
    const Time cap = std::max(first, config.delta_cap.value_or(default_delta_cap(ts)));
    Inapplicable out{inapplicable.denominator, cap, std::nullopt};
    if (auto witness = eval.first_violation(first + 1, cap)) {
        out.exploratory_witness = *witness;
        out.scanned_up_to = *witness;
    }
    return out;
}

bool AnalysisVerdict::schedulable() const
{
    return std::all_of(tasks.begin(), tasks.end(),
                       [](const TaskOutcome &o) { return std::holds_alternative<Certified>(o); });
}

bool AnalysisVerdict::any_not_proven() const
{
    return std::any_of(tasks.begin(), tasks.end(),
                       [](const TaskOutcome &o) { return std::holds_alternative<NotProven>(o); });
}

bool AnalysisVerdict::any_inapplicable() const
{
    return std::any_of(tasks.begin(), tasks.end(),
                       [](const TaskOutcome &o) { return std::holds_alternative<Inapplicable>(o); });
}

AnalysisVerdict analyze(const TaskSystem &ts, const AnalysisConfig &config)
{
    AnalysisVerdict v;
    v.tasks.reserve(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k)
        v.tasks.push_back(analyze_task(ts, k, config));
    return v;
}

bool has_inapplicable_bound(const TaskSystem &ts)
{
    for (std::size_t k = 0; k < ts.size(); ++k)
        if (interval_terms(ts, k, CarryInStrategy::AllTasks).denominator.sign() <= 0)
            return true;
    return false;
}

}  // namespace gangsched
