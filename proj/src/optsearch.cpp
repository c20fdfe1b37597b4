#include "hypk/optsearch.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

#include "hypk/curves.hpp"
#include "hypk/errors.hpp"
#include "hypk/estimator.hpp"
#include "hypk/parallel.hpp"

namespace hypk {

double fold_twist(double t) {
    double f = t - std::floor(t + 0.5);
    return f >= 0.5 ? f - 1.0 : f;
}

namespace {

// Added to the objective of uncertified or degenerate points so the search leaves them.
constexpr double kPenalty = 1e6;

struct Evaluation {
    double khat = 0, sys = 0, sys_h = 0, cutoff = 0;
    bool certified = false;
};

double cutoff_for(const FNCoordinates& x, const SearchConfig& c) {
    if (c.cutoff > 0) return c.cutoff;
    return 4.0 * *std::max_element(x.lengths.begin(), x.lengths.end());
}

Evaluation evaluate(const PantsGraph& g, const FNCoordinates& x, double cutoff, const SearchConfig& c) {
    static std::mutex mu;
    static std::map<std::pair<std::uint64_t, double>, Evaluation> memo;
    const auto key = std::pair{surface_hash(g, x), cutoff};
    {
        std::lock_guard lock(mu);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
    }
    Evaluation ev;
    ev.cutoff = cutoff;
    const Holonomy h = build_holonomy(g, x);
    EnumerationConfig ec;
    ec.max_word_length = c.max_word_length;
    ec.workers = c.workers;
    const CurveTable table = enumerate_classes(h, cutoff, ec);
    ev.certified = table.certified;
    try {
        ev.sys = systole(h, table).length;
        ev.sys_h = homological_systole(h, table).length;
        ev.khat = k_lower_bound(h, table, c.workers).value;
    } catch (const EmptyTable&) {
        ev.certified = false;
    }
    if (ev.khat == 0) ev.certified = false;
    std::lock_guard lock(mu);
    memo.emplace(key, ev);
    return ev;
}

struct Run {
    const PantsGraph& g;
    const SearchConfig& c;
    int restart;
    int edges;
    std::vector<SearchIterate> iterates;
    int evaluations = 0;
    bool exhausted = false;

    FNCoordinates coords(const std::vector<double>& p) const {
        FNCoordinates x;
        for (int e = 0; e < edges; ++e) {
            x.lengths.push_back(std::exp(p[e]));
            x.twists.push_back(fold_twist(p[edges + e]));
        }
        return x;
    }

    bool spent() const { return evaluations >= c.max_evaluations; }

    double objective(const std::vector<double>& p) {
        ++evaluations;
        FNCoordinates x = coords(p);
        for (double l : x.lengths)
            if (!(l >= c.min_length && l <= c.max_length)) return kPenalty * 10;
        Evaluation ev = evaluate(g, x, cutoff_for(x, c), c);
        iterates.push_back({restart, x, ev.khat, ev.sys, ev.sys_h, ev.cutoff, ev.certified});
        return ev.certified ? ev.khat : kPenalty + ev.khat;
    }

    void nelder_mead(std::vector<double> start) {
        const int n = static_cast<int>(start.size());
        std::vector<std::vector<double>> s(n + 1, start);
        for (int i = 0; i < n; ++i) s[i + 1][i] += c.step;
        std::vector<double> f(n + 1);
        for (int i = 0; i <= n && !spent(); ++i) f[i] = objective(s[i]);
        if (spent()) {
            exhausted = true;
            return;
        }
        std::vector<int> order(n + 1);
        auto point = [&](const std::vector<double>& centre, const std::vector<double>& worst, double t) {
            std::vector<double> p(n);
            for (int k = 0; k < n; ++k) p[k] = centre[k] + t * (worst[k] - centre[k]);
            return p;
        };
        while (true) {
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return f[a] < f[b]; });
            const int lo = order.front(), hi = order.back(), nh = order[n - 1];
            double size = 0;
            for (int i = 0; i <= n; ++i)
                for (int k = 0; k < n; ++k) size = std::max(size, std::fabs(s[i][k] - s[lo][k]));
            if (size < c.tolerance || f[hi] - f[lo] <= c.tolerance * std::max(1e-12, std::fabs(f[lo]))) return;
            if (spent()) {
                exhausted = true;
                return;
            }
            std::vector<double> centre(n, 0.0);
            for (int i = 0; i <= n; ++i)
                if (i != hi)
                    for (int k = 0; k < n; ++k) centre[k] += s[i][k] / n;
            auto xr = point(centre, s[hi], -1.0);
            double fr = objective(xr);
            if (fr < f[lo]) {
                if (spent()) {
                    s[hi] = xr, f[hi] = fr;
                    continue;
                }
                auto xe = point(centre, s[hi], -2.0);
                double fe = objective(xe);
                if (fe < fr) s[hi] = xe, f[hi] = fe;
                else s[hi] = xr, f[hi] = fr;
            } else if (fr < f[nh]) {
                s[hi] = xr, f[hi] = fr;
            } else {
                if (spent()) continue;
                const bool outside = fr < f[hi];
                auto xc = point(centre, s[hi], outside ? -0.5 : 0.5);
                double fc = objective(xc);
                if (fc < (outside ? fr : f[hi])) {
                    s[hi] = xc, f[hi] = fc;
                } else {
                    for (int i = 0; i <= n && !spent(); ++i) {
                        if (i == lo) continue;
                        s[i] = point(s[lo], s[i], 0.5);
                        f[i] = objective(s[i]);
                    }
                }
            }
        }
    }

    void coordinate_descent(std::vector<double> p) {
        double fp = objective(p);
        for (double step = c.step; step >= c.tolerance;) {
            bool improved = false;
            for (std::size_t k = 0; k < p.size(); ++k)
                for (double dir : {1.0, -1.0}) {
                    if (spent()) {
                        exhausted = true;
                        return;
                    }
                    auto q = p;
                    q[k] += dir * step;
                    double fq = objective(q);
                    if (fq < fp) {
                        p = q, fp = fq;
                        improved = true;
                        break;
                    }
                }
            if (!improved) step *= 0.5;
        }
    }
};

std::string real(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

SearchTrace minimize_k(const PantsGraph& g, const FNCoordinates& init, const SearchConfig& config) {
    g.validate();
    init.validate(g);
    if (config.restarts < 1 || config.max_evaluations < 1) throw DomainError("search needs restarts and budget");
    const int edges = g.num_edges();
    std::vector<std::vector<double>> starts;
    for (int r = 0; r < config.restarts; ++r) {
        std::vector<double> p;
        for (int e = 0; e < edges; ++e) p.push_back(std::log(init.lengths[e]));
        for (int e = 0; e < edges; ++e) p.push_back(fold_twist(init.twists[e]));
        if (r > 0) {
            std::seed_seq seq{config.seed, static_cast<std::uint64_t>(r)};
            std::mt19937_64 rng(seq);
            std::uniform_real_distribution<double> u(-0.5, 0.5);
            for (double& v : p) v += u(rng);
        }
        starts.push_back(std::move(p));
    }
    std::vector<Run> runs;
    for (int r = 0; r < config.restarts; ++r) runs.push_back(Run{g, config, r, edges, {}, 0, false});
    // Restarts share nothing but the memo, which only caches deterministic values.
    parallel_for(runs.size(), config.workers, [&](std::size_t r) {
        if (config.method == SearchMethod::NelderMead) runs[r].nelder_mead(starts[r]);
        else runs[r].coordinate_descent(starts[r]);
    });

    SearchTrace t;
    t.config = config;
    for (auto& run : runs) {
        t.budget_exhausted |= run.exhausted;
        t.iterates.insert(t.iterates.end(), run.iterates.begin(), run.iterates.end());
    }
    for (int pass : {1, 0}) {
        for (std::size_t i = 0; i < t.iterates.size(); ++i) {
            const auto& it = t.iterates[i];
            if (pass && !it.certified) continue;
            if (t.best < 0 || it.khat < t.iterates[t.best].khat) t.best = static_cast<int>(i);
        }
        if (t.best >= 0) {
            t.best_certified = pass == 1;
            break;
        }
    }
    if (t.best >= 0) {
        const auto& b = t.iterates[t.best];
        Evaluation ev = evaluate(g, b.coords, b.cutoff + config.confirm_margin, config);
        t.confirmed = {b.restart, b.coords, ev.khat, ev.sys, ev.sys_h, ev.cutoff, ev.certified};
    }
    return t;
}

std::string trace_csv(const SearchTrace& t) {
    std::ostringstream os;
    os << "index,restart";
    const std::size_t edges = t.iterates.empty() ? 0 : t.iterates.front().coords.lengths.size();
    for (std::size_t e = 0; e < edges; ++e) os << ",length" << e;
    for (std::size_t e = 0; e < edges; ++e) os << ",twist" << e;
    os << ",khat,sys,sys_h,cutoff,certified,best\n";
    for (std::size_t i = 0; i < t.iterates.size(); ++i) {
        const auto& it = t.iterates[i];
        os << i << ',' << it.restart;
        for (double l : it.coords.lengths) os << ',' << real(l);
        for (double w : it.coords.twists) os << ',' << real(w);
        os << ',' << real(it.khat) << ',' << real(it.sys) << ',' << real(it.sys_h) << ',' << real(it.cutoff) << ','
           << (it.certified ? 1 : 0) << ',' << (static_cast<int>(i) == t.best ? 1 : 0) << '\n';
    }
    return os.str();
}

}  // namespace hypk
