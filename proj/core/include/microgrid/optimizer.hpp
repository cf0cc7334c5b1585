#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "microgrid/dispatch.hpp"
#include "microgrid/economics.hpp"

namespace microgrid {

/// Candidate values per sizing variable; each list nonempty, nonnegative and strictly increasing.
struct SearchSpace {
    std::vector<int> n_pv{0};
    std::vector<int> n_wt{0};
    std::vector<int> n_batt{0};
    std::vector<double> genset_kw{0.0};
    std::vector<double> converter_kw{0.0};

    void validate() const;
    std::size_t size() const;
    friend bool operator==(const SearchSpace&, const SearchSpace&) = default;
};

struct Constraints {
    double max_unmet_fraction = 0.0;
    double min_renewable_fraction = 0.0;

    void validate() const;
    friend bool operator==(const Constraints&, const Constraints&) = default;
};

/// Everything held fixed while the fleet varies.
struct EvaluationInputs {
    SystemConfig base;  // specs and strategy; base.fleet is ignored
    ResourceSeries resources;
    TimeSeries load;
    PriceSet prices;
    FinanceSpec finance;
    std::optional<double> initial_soc;
};

struct Evaluation {
    Fleet fleet;
    DispatchTotals totals;
    EconomicSummary economics;
    double unmet_fraction = 0.0;
    bool feasible = false;
    /// Empty when feasible; otherwise names the violated constraint and margin.
    std::string reason;
};

/// Cartesian product in lexicographic order: n_pv varies slowest, converter_kw fastest.
std::vector<Fleet> enumerate(const SearchSpace& space);

Evaluation evaluate(const Fleet& candidate, const EvaluationInputs& inputs, const Constraints& constraints);

/// Strict ranking order: NPC ascending, then fleet lexicographically.
bool ranks_before(const Evaluation& a, const Evaluation& b);

struct InfeasibilityStats {
    std::size_t unmet_violations = 0;
    std::size_t renewable_violations = 0;
    double best_unmet_fraction = 1.0;
    double best_renewable_fraction = 0.0;
};

struct RankedResult {
    std::vector<Evaluation> ranked;      // feasible, best first
    std::vector<Evaluation> infeasible;  // enumeration order
    std::size_t evaluated = 0;
    InfeasibilityStats stats;

    bool empty() const { return ranked.empty(); }
};

/// Evaluates every candidate (on `workers` threads) and ranks the feasible ones.
/// The result does not depend on the worker count.
RankedResult optimize(const SearchSpace& space, const EvaluationInputs& inputs, const Constraints& constraints,
                      unsigned workers = 1);

struct LocalSearchResult {
    std::optional<Evaluation> best;
    std::size_t evaluations = 0;
};

/// Coordinate descent over the grid, starting from the largest value in every
/// dimension. Each pass line-searches one variable at a time and stops when a
/// full pass makes no improvement. Cheaper than enumeration, not guaranteed optimal.
LocalSearchResult local_search(const SearchSpace& space, const EvaluationInputs& inputs,
                               const Constraints& constraints);

}  // namespace microgrid
