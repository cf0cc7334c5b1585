#include "microgrid/optimizer.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <map>
#include <thread>

#include "microgrid/errors.hpp"
#include "text_util.hpp"

namespace microgrid {

namespace {

template <typename T>
void check_dimension(const std::vector<T>& values, const char* name) {
    if (values.empty()) throw ValidationError(std::string("search space dimension '") + name + "' is empty");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] >= 0)) throw ValidationError(std::string("search space '") + name + "' has a negative value");
        if (i > 0 && !(values[i] > values[i - 1])) {
            throw ValidationError(std::string("search space '") + name + "' must be strictly increasing");
        }
    }
}

constexpr double kTolerance = 1e-12;

using GridIndex = std::array<std::size_t, 5>;

Fleet fleet_at(const SearchSpace& s, const GridIndex& i) {
    return Fleet{s.n_pv[i[0]], s.n_wt[i[1]], s.n_batt[i[2]], s.genset_kw[i[3]], s.converter_kw[i[4]]};
}

std::array<std::size_t, 5> dims(const SearchSpace& s) {
    return {s.n_pv.size(), s.n_wt.size(), s.n_batt.size(), s.genset_kw.size(), s.converter_kw.size()};
}

}  // namespace

void SearchSpace::validate() const {
    check_dimension(n_pv, "n_pv");
    check_dimension(n_wt, "n_wt");
    check_dimension(n_batt, "n_batt");
    check_dimension(genset_kw, "genset_kw");
    check_dimension(converter_kw, "converter_kw");
}

std::size_t SearchSpace::size() const {
    return n_pv.size() * n_wt.size() * n_batt.size() * genset_kw.size() * converter_kw.size();
}

void Constraints::validate() const {
    if (!(max_unmet_fraction >= 0.0 && max_unmet_fraction <= 1.0)) {
        throw ValidationError("max_unmet_fraction must lie in [0, 1]");
    }
    if (!(min_renewable_fraction >= 0.0 && min_renewable_fraction <= 1.0)) {
        throw ValidationError("min_renewable_fraction must lie in [0, 1]");
    }
}

std::vector<Fleet> enumerate(const SearchSpace& space) {
    space.validate();
    std::vector<Fleet> out;
    out.reserve(space.size());
    for (int pv : space.n_pv)
        for (int wt : space.n_wt)
            for (int bt : space.n_batt)
                for (double dg : space.genset_kw)
                    for (double cv : space.converter_kw) out.push_back(Fleet{pv, wt, bt, dg, cv});
    return out;
}

Evaluation evaluate(const Fleet& candidate, const EvaluationInputs& inputs, const Constraints& constraints) {
    SystemConfig cfg = inputs.base;
    cfg.fleet = candidate;
    const auto dispatch = simulate_year(cfg, inputs.resources, inputs.load, inputs.initial_soc);

    Evaluation ev;
    ev.fleet = candidate;
    ev.totals = dispatch.totals;
    ev.economics = system_costs(cfg, dispatch.totals, inputs.prices, inputs.finance);
    ev.unmet_fraction = dispatch.totals.load_kwh > 0.0 ? dispatch.totals.unmet_kwh / dispatch.totals.load_kwh : 0.0;

    const double rf = dispatch.totals.renewable_fraction;
    if (ev.unmet_fraction > constraints.max_unmet_fraction + kTolerance) {
        ev.reason = "unmet_fraction " + detail::format_double(ev.unmet_fraction) + " exceeds max " +
                    detail::format_double(constraints.max_unmet_fraction) + " by " +
                    detail::format_double(ev.unmet_fraction - constraints.max_unmet_fraction);
    } else if (rf < constraints.min_renewable_fraction - kTolerance ||
               (constraints.min_renewable_fraction >= 1.0 && dispatch.totals.genset_kwh > 0.0)) {
        ev.reason = "renewable_fraction " + detail::format_double(rf) + " below min " +
                    detail::format_double(constraints.min_renewable_fraction) + " by " +
                    detail::format_double(constraints.min_renewable_fraction - rf);
    }
    ev.feasible = ev.reason.empty();
    return ev;
}

bool ranks_before(const Evaluation& a, const Evaluation& b) {
    if (a.economics.npc != b.economics.npc) return a.economics.npc < b.economics.npc;
    return a.fleet < b.fleet;
}

RankedResult optimize(const SearchSpace& space, const EvaluationInputs& inputs, const Constraints& constraints,
                      unsigned workers) {
    constraints.validate();
    const auto candidates = enumerate(space);
    std::vector<std::optional<Evaluation>> slots(candidates.size());
    std::vector<std::exception_ptr> errors(candidates.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < candidates.size(); i = next++) {
            try {
                slots[i] = evaluate(candidates[i], inputs, constraints);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(candidates.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    RankedResult result;
    result.evaluated = candidates.size();
    for (auto& slot : slots) {
        auto& ev = *slot;
        if (ev.feasible) {
            result.ranked.push_back(std::move(ev));
            continue;
        }
        auto& st = result.stats;
        if (ev.unmet_fraction > constraints.max_unmet_fraction + kTolerance) ++st.unmet_violations;
        else ++st.renewable_violations;
        st.best_unmet_fraction = std::min(st.best_unmet_fraction, ev.unmet_fraction);
        st.best_renewable_fraction = std::max(st.best_renewable_fraction, ev.totals.renewable_fraction);
        result.infeasible.push_back(std::move(ev));
    }
    std::stable_sort(result.ranked.begin(), result.ranked.end(), ranks_before);
    return result;
}

LocalSearchResult local_search(const SearchSpace& space, const EvaluationInputs& inputs,
                               const Constraints& constraints) {
    space.validate();
    constraints.validate();
    const auto extent = dims(space);

    std::map<GridIndex, Evaluation> cache;
    auto eval_at = [&](const GridIndex& idx) -> const Evaluation& {
        auto it = cache.find(idx);
        if (it == cache.end()) it = cache.emplace(idx, evaluate(fleet_at(space, idx), inputs, constraints)).first;
        return it->second;
    };
    // Feasible beats infeasible; among feasible, ranking order; among infeasible, smaller violation.
    auto better = [](const Evaluation& a, const Evaluation& b) {
        if (a.feasible != b.feasible) return a.feasible;
        if (a.feasible) return ranks_before(a, b);
        if (a.unmet_fraction != b.unmet_fraction) return a.unmet_fraction < b.unmet_fraction;
        return a.totals.renewable_fraction > b.totals.renewable_fraction;
    };

    GridIndex current{};
    for (std::size_t d = 0; d < 5; ++d) current[d] = extent[d] - 1;

    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t d = 0; d < 5; ++d) {
            GridIndex best_idx = current;
            for (std::size_t v = 0; v < extent[d]; ++v) {
                GridIndex probe = current;
                probe[d] = v;
                if (better(eval_at(probe), eval_at(best_idx))) best_idx = probe;
            }
            if (best_idx != current) {
                current = best_idx;
                improved = true;
            }
        }
    }

    LocalSearchResult out;
    out.evaluations = cache.size();
    const auto& final_eval = eval_at(current);
    if (final_eval.feasible) out.best = final_eval;
    return out;
}

}  // namespace microgrid
