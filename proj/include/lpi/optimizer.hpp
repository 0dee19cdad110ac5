#pragma once

// Exhaustive search over non-negative integer combinations with
// sum_l l b_l <= budget, per interval and over an (alpha, beta) grid.

#include "lpi/exponent.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

namespace lpi {

/// Every non-zero (b_1..b_lmax) >= 0 with sum l b_l <= budget, ordered by
/// weighted degree, then lexicographically.
inline std::vector<ChebCombo> enumerate_combos(std::uint32_t budget, int l_max) {
    if (l_max < 1 || l_max > 62) throw std::domain_error("enumerate_combos: l_max must lie in [1, 62]");
    std::vector<std::vector<std::uint32_t>> raw;
    std::vector<std::uint32_t> b(l_max, 0);
    std::function<void(int, std::uint32_t)> rec = [&](int l, std::uint32_t left) {
        if (l > l_max) {
            raw.push_back(b);
            return;
        }
        for (std::uint32_t c = 0; c * static_cast<std::uint32_t>(l) <= left; ++c) {
            b[l - 1] = c;
            rec(l + 1, left - c * l);
        }
        b[l - 1] = 0;
    };
    rec(1, budget);
    std::vector<ChebCombo> out;
    out.reserve(raw.size());
    for (auto& v : raw) {
        ChebCombo c(std::move(v));
        if (c.valid()) out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ChebCombo& x, const ChebCombo& y) {
        auto wx = x.weighted_degree(), wy = y.weighted_degree();
        return wx != wy ? wx < wy : x < y;
    });
    return out;
}

struct SearchSpec {
    std::uint32_t budget = 42;
    int l_max = 8;
    ExponentParams params;
    unsigned threads = 1;
};

namespace detail {

/// Side-minimum status at one breakpoint.
struct SideMin {
    enum class State : std::uint8_t { empty, positive, nonpositive };
    State state = State::nonpositive;
    double lower = 0.0;  // rounded down; meaningful when positive
};

struct CellBest {
    double exponent = std::numeric_limits<double>::infinity();
    std::int64_t combo = -1;
};

inline bool better(double e, const ChebCombo& c, const CellBest& cur, const std::vector<ChebCombo>& combos) {
    if (cur.combo < 0) return true;
    if (e != cur.exponent) return e < cur.exponent;
    const auto& o = combos[static_cast<std::size_t>(cur.combo)];
    auto wc = c.weighted_degree(), wo = o.weighted_degree();
    if (wc != wo) return wc < wo;
    return c < o;
}

/// Minima of P_b over [-2, g_i] (left) and [g_i, 2] (right) for sorted
/// breakpoints g. Scans stop at the first non-positive minimum, since every
/// larger side is then non-positive as well.
inline void side_minima(const ComboMinimizer& m, const std::vector<Rational>& g, std::vector<SideMin>& left,
                        std::vector<SideMin>& right) {
    const std::size_t n = g.size();
    const auto& crit = m.critical();
    left.assign(n, {});
    right.assign(n, {});

    // first_ge[r]: first breakpoint >= root r; last_le[r]: last breakpoint <= r (-1 if none).
    std::vector<std::ptrdiff_t> first_ge(crit.size()), last_le(crit.size());
    for (std::size_t r = 0; r < crit.size(); ++r) {
        std::size_t lo = 0, hi = n;
        while (lo < hi) {
            std::size_t mid = (lo + hi) / 2;
            if (m.root_vs(r, g[mid]) <= 0) hi = mid; else lo = mid + 1;
        }
        first_ge[r] = static_cast<std::ptrdiff_t>(lo);
        bool on_breakpoint = lo < n && m.root_vs(r, g[lo]) == 0;
        last_le[r] = on_breakpoint ? first_ge[r] : first_ge[r] - 1;
    }

    {
        Rational running;
        bool started = false;
        std::size_t next_crit = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (g[i] == -2) {
                left[i].state = SideMin::State::empty;
                continue;
            }
            if (!started) {
                running = m.value(Rational(-2));
                started = true;
            }
            while (next_crit < crit.size() && first_ge[next_crit] <= static_cast<std::ptrdiff_t>(i)) {
                if (crit[next_crit].lower < running) running = crit[next_crit].lower;
                ++next_crit;
            }
            Rational v = m.value(g[i]);
            if (v < running) running = v;
            if (running <= 0) break;
            left[i] = {SideMin::State::positive, to_double_down(running)};
        }
    }
    {
        Rational running;
        bool started = false;
        std::size_t next_crit = crit.size();
        for (std::size_t j = n; j-- > 0;) {
            if (g[j] == 2) {
                right[j].state = SideMin::State::empty;
                continue;
            }
            if (!started) {
                running = m.value(Rational(2));
                started = true;
            }
            while (next_crit > 0 && last_le[next_crit - 1] >= static_cast<std::ptrdiff_t>(j)) {
                --next_crit;
                if (crit[next_crit].lower < running) running = crit[next_crit].lower;
            }
            Rational v = m.value(g[j]);
            if (v < running) running = v;
            if (running <= 0) break;
            right[j] = {SideMin::State::positive, to_double_down(running)};
        }
    }
}

/// Best combo per cell (indices into breakpoints). Deterministic for any
/// thread count: each cell keeps the minimum of a total order.
inline std::vector<CellBest> sweep(const std::vector<Rational>& breakpoints,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& cells,
                                   const std::vector<ChebCombo>& combos, const std::vector<double>& numerators,
                                   const ExponentParams& params, unsigned threads) {
    threads = std::max(1u, threads);
    std::vector<std::vector<CellBest>> partial(threads, std::vector<CellBest>(cells.size()));
    // Cells whose complement is empty can never be filled; they must not stop pruning.
    std::vector<std::size_t> live;
    for (std::size_t k = 0; k < cells.size(); ++k)
        if (!(breakpoints[cells[k].first] == -2 && breakpoints[cells[k].second] == 2)) live.push_back(k);

    auto work = [&](unsigned t) {
        auto& best = partial[t];
        std::vector<SideMin> left, right;
        for (std::size_t c = t; c < combos.size(); c += threads) {
            const ChebCombo& combo = combos[c];
            const double num = numerators[c];
            bool wanted = false;
            for (std::size_t k : live)
                if (!(num / 2 > best[k].exponent)) {
                    wanted = true;
                    break;
                }
            if (!wanted) continue;

            ComboMinimizer m(combo);
            side_minima(m, breakpoints, left, right);
            const double floor_d = to_double_down(m.floor().lo);
            for (std::size_t k : live) {
                if (num / 2 > best[k].exponent) continue;
                const auto& l = left[cells[k].first];
                const auto& r = right[cells[k].second];
                using S = SideMin::State;
                if (l.state == S::nonpositive || r.state == S::nonpositive) continue;
                if (l.state == S::empty && r.state == S::empty) continue;
                double kappa = l.state == S::empty ? r.lower : (r.state == S::empty ? l.lower : std::min(l.lower, r.lower));
                double e = num / (1.0 + denominator_g(kappa, floor_d));
                if (better(e, combo, best[k], combos)) best[k] = {e, static_cast<std::int64_t>(c)};
            }
        }
    };

    if (threads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }

    std::vector<CellBest> merged(cells.size());
    for (const auto& p : partial)
        for (std::size_t k = 0; k < cells.size(); ++k)
            if (p[k].combo >= 0 && better(p[k].exponent, combos[static_cast<std::size_t>(p[k].combo)], merged[k], combos))
                merged[k] = p[k];
    (void)params;
    return merged;
}

/// Combos sorted so cheap numerators come first (maximizes pruning).
inline std::vector<ChebCombo> search_order(const SearchSpec& spec, std::vector<double>& numerators) {
    auto combos = enumerate_combos(spec.budget, spec.l_max);
    std::vector<std::pair<double, std::size_t>> keyed;
    keyed.reserve(combos.size());
    for (std::size_t i = 0; i < combos.size(); ++i) keyed.emplace_back(numerator(combos[i], spec.params), i);
    std::stable_sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<ChebCombo> out;
    out.reserve(combos.size());
    numerators.clear();
    for (auto& [num, i] : keyed) {
        out.push_back(std::move(combos[i]));
        numerators.push_back(num);
    }
    return out;
}

}  // namespace detail

/// Feasible combo minimizing the aspect's exponent over all combos in the
/// search space, ties broken by (weighted degree, lexicographic b). Returns
/// nullopt when no combo is certified positive off I.
inline std::optional<ExponentReport> best_for_interval(const IntervalI& interval, const SearchSpec& spec) {
    if (interval.is_full()) throw std::domain_error("best_for_interval: interval [-2,2] leaves an empty complement");
    std::vector<double> nums;
    auto combos = detail::search_order(spec, nums);
    std::vector<Rational> bp{interval.alpha};
    if (interval.beta != interval.alpha) bp.push_back(interval.beta);
    auto best = detail::sweep(bp, {{0, bp.size() - 1}}, combos, nums, spec.params, spec.threads);
    if (best[0].combo < 0) return std::nullopt;
    const auto& combo = combos[static_cast<std::size_t>(best[0].combo)];
    return exponent_bound(combo, interval, spec.params);
}

/// Inclusive rational range lo, lo + step, ..., <= hi.
struct GridAxis {
    Rational lo, hi, step;

    std::vector<Rational> points() const {
        if (!(step > 0)) throw std::domain_error("grid step must be positive");
        std::vector<Rational> out;
        for (Rational x = lo; x <= hi; x += step) out.push_back(x);
        return out;
    }

    /// "a:b:step".
    static GridAxis parse(const std::string& s) {
        auto c1 = s.find(':');
        auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
        if (c2 == std::string::npos) throw ParseError("range '" + s + "' must look like a:b:step");
        GridAxis g{parse_rational(s.substr(0, c1)), parse_rational(s.substr(c1 + 1, c2 - c1 - 1)),
                   parse_rational(s.substr(c2 + 1))};
        if (!(g.step > 0)) throw ParseError("range step must be positive");
        if (g.lo < -2 || g.hi > 2) throw ParseError("range '" + s + "' must lie within [-2,2]");
        return g;
    }
};

struct HeatmapCell {
    Rational alpha, beta;
    std::optional<ExponentReport> best;  // nullopt: infeasible
};

struct HeatmapGrid {
    GridAxis alpha, beta;
    std::vector<HeatmapCell> cells;  // sorted by (alpha, beta)
};

inline HeatmapGrid heatmap(const GridAxis& alpha_axis, const GridAxis& beta_axis, const SearchSpec& spec) {
    HeatmapGrid grid{alpha_axis, beta_axis, {}};
    auto as = alpha_axis.points(), bs = beta_axis.points();
    std::vector<Rational> bp = as;
    bp.insert(bp.end(), bs.begin(), bs.end());
    std::sort(bp.begin(), bp.end());
    bp.erase(std::unique(bp.begin(), bp.end()), bp.end());
    auto index_of = [&](const Rational& x) {
        return static_cast<std::size_t>(std::lower_bound(bp.begin(), bp.end(), x) - bp.begin());
    };

    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (const auto& a : as)
        for (const auto& b : bs)
            if (a < b) {
                grid.cells.push_back({a, b, std::nullopt});
                cells.emplace_back(index_of(a), index_of(b));
            }
    if (cells.empty()) return grid;

    std::vector<double> nums;
    auto combos = detail::search_order(spec, nums);
    auto best = detail::sweep(bp, cells, combos, nums, spec.params, spec.threads);
    for (std::size_t k = 0; k < cells.size(); ++k) {
        if (best[k].combo < 0) continue;
        IntervalI interval(grid.cells[k].alpha, grid.cells[k].beta);
        grid.cells[k].best = exponent_bound(combos[static_cast<std::size_t>(best[k].combo)], interval, spec.params);
    }
    return grid;
}

}  // namespace lpi
