#ifndef GBE_SOLVER_HPP
#define GBE_SOLVER_HPP

#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <thread>

#include "gbe/corrfn.hpp"
#include "gbe/merge.hpp"
#include "gbe/serialize.hpp"

namespace gbe {

// ----------------------------------------------------------------------------
// Scheduling: dependency closure of the loop equations ordered by chi = 2g+n.
// ----------------------------------------------------------------------------

inline int chi(int n, int g) { return 2 * g + n; }

inline std::vector<std::pair<int, int>> loop_dependencies(int n, int g) {
    std::vector<std::pair<int, int>> d;
    if (n == 1 && g == 0) return d;
    auto push = [&](int nn, int gg) {
        if (!(nn == 1 && gg == 0)) d.emplace_back(nn, gg);
    };
    if (g >= 1) push(n, g - 1);
    if (g >= 2) push(n + 1, g - 2);
    if (n >= 2) push(n - 1, g);
    for (int jsize = 0; jsize <= n - 1; ++jsize)
        for (int p = 0; p <= g; ++p) {
            if (jsize == 0 && p == 0) continue;
            if (jsize == n - 1 && p == g) continue;
            push(jsize + 1, p);
            push(n - jsize, g - p);
        }
    std::sort(d.begin(), d.end());
    d.erase(std::unique(d.begin(), d.end()), d.end());
    return d;
}

// Dependency-closed evaluation order. Every dependency of an entry has
// strictly smaller chi; validated while building.
struct Schedule {
    std::vector<std::pair<int, int>> entries;

    bool contains(int n, int g) const {
        for (const auto& e : entries)
            if (e.first == n && e.second == g) return true;
        return false;
    }
};

inline Schedule make_schedule(const std::vector<std::pair<int, int>>& targets) {
    std::set<std::pair<int, int>> seen;
    std::vector<std::pair<int, int>> stack(targets.begin(), targets.end());
    while (!stack.empty()) {
        auto [n, g] = stack.back();
        stack.pop_back();
        GBE_CHECK(n >= 1 && g >= 0, "schedule: bad target");
        if (!seen.insert({n, g}).second) continue;
        for (auto [dn, dg] : loop_dependencies(n, g)) {
            GBE_CHECK(chi(dn, dg) < chi(n, g), "schedule: dependency does not lower chi");
            stack.emplace_back(dn, dg);
        }
    }
    Schedule s;
    s.entries.assign(seen.begin(), seen.end());
    std::sort(s.entries.begin(), s.entries.end(), [](const auto& a, const auto& b) {
        int ca = chi(a.first, a.second), cb = chi(b.first, b.second);
        if (ca != cb) return ca < cb;
        return a < b;
    });
    return s;
}

// ----------------------------------------------------------------------------
// Helpers shared by the solver and the checks.
// ----------------------------------------------------------------------------

// Sum of rational functions over their common DenForm, accumulated term-wise.
class RatFnAccum {
public:
    explicit RatFnAccum(int npoints) : npoints_(npoints) {}

    void add(RatFn f) {
        if (!f.is_zero()) items_.push_back(std::move(f));
    }

    RatFn finalize() const {
        if (items_.empty()) return RatFn::zero(npoints_);
        DenForm common = items_[0].den();
        for (size_t k = 1; k < items_.size(); ++k) common = DenForm::common(common, items_[k].den());
        YPoly total(npoints_);
        for (const auto& f : items_) {
            YPoly t = (f.den().cofactor_poly(common) * f.num())
                          .mul_scalar(common.scalar() / f.den().scalar());
            total += t;
        }
        return RatFn(std::move(total), std::move(common));
    }

private:
    int npoints_;
    std::vector<RatFn> items_;
};

// Derivative-difference term of the loop equations, acting on a single
// hbar part w of W_{n-1}: d/dx_i [ (w(x, I\x_i) - w(I)) / (x - x_i) ],
// lifted to the n-point context with x = x_1.
inline RatFn dd_term_part(const RatFn& w, int i) {
    int nm = w.npoints();
    int n = nm + 1;
    GBE_CHECK(i >= 2 && i <= n, "dd_term: index must name a point of I");
    // w(x, I \ x_i): stored slot 1 -> 1, slots 2.. -> ascending points of I w/o i
    std::vector<int> mapA(static_cast<size_t>(nm) + 1, 0);
    int next = 2;
    mapA[1] = 1;
    for (int s = 2; s <= nm; ++s) {
        if (next == i) ++next;
        mapA[static_cast<size_t>(s)] = next++;
    }
    // w(I): stored slots -> ascending points 2..n
    std::vector<int> mapB(static_cast<size_t>(nm) + 1, 0);
    for (int s = 1; s <= nm; ++s) mapB[static_cast<size_t>(s)] = s + 1;

    RatFn a = w.remap_points(n, mapA);
    RatFn b = w.remap_points(n, mapB);
    RatFn quotient = (a - b).div_diff(1, i);
    return quotient.derive(i);
}

// ----------------------------------------------------------------------------
// Recursive solver of the hbar-graded Gaussian loop equations.
// ----------------------------------------------------------------------------

struct SolverOptions {
    std::string cache_dir;       // empty: in-memory only
    int threads = 1;             // parallelism across same-chi schedule levels
    size_t term_limit = 200'000'000; // guard against runaway multivariate sizes
};

// W_1^{(0)}(x) = (x - y)/2, the spectral-curve seed.
inline CorrFn base_w1_0() {
    CorrFn w(1, 0);
    DenForm d(1);
    d.set_scalar(Rat(2));
    YPoly num = YPoly::from_mpoly(MPoly::x_var(1, 1)) - YPoly::y_var(1, 1);
    w.part(0) = RatFn(std::move(num), std::move(d));
    return w;
}

class Solver {
public:
    explicit Solver(SolverOptions opts = {}) : opts_(std::move(opts)) {}

    const SolverOptions& options() const { return opts_; }

    std::shared_ptr<const CorrFn> solve(int n, int g) {
        GBE_CHECK(n >= 1 && g >= 0, "solve: bad (n,g)");
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = memo_.find({n, g});
            if (it != memo_.end()) return it->second;
        }
        std::shared_ptr<const CorrFn> value;
        if (auto cached = cache_load(n, g)) {
            value = std::make_shared<const CorrFn>(std::move(*cached));
        } else {
            value = std::make_shared<const CorrFn>(compute(n, g));
            cache_store(*value);
        }
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = memo_.emplace(std::make_pair(n, g), value);
        return it->second;
    }

    // Computes a schedule closure, optionally running same-chi levels on
    // worker threads. Results are identical for any thread count.
    void precompute(const std::vector<std::pair<int, int>>& targets) {
        Schedule s = make_schedule(targets);
        size_t i = 0;
        while (i < s.entries.size()) {
            size_t j = i;
            int level = chi(s.entries[i].first, s.entries[i].second);
            while (j < s.entries.size() && chi(s.entries[j].first, s.entries[j].second) == level) ++j;
            if (opts_.threads <= 1 || j - i == 1) {
                for (size_t k = i; k < j; ++k) solve(s.entries[k].first, s.entries[k].second);
            } else {
                std::vector<std::thread> pool;
                std::atomic<size_t> next{i};
                int nw = std::min<int>(opts_.threads, static_cast<int>(j - i));
                for (int w = 0; w < nw; ++w)
                    pool.emplace_back([&] {
                        for (;;) {
                            size_t k = next.fetch_add(1);
                            if (k >= j) return;
                            solve(s.entries[k].first, s.entries[k].second);
                        }
                    });
                for (auto& t : pool) t.join();
            }
            i = j;
        }
    }

    void cache_store(const CorrFn& w) const {
        if (opts_.cache_dir.empty()) return;
        namespace fs = std::filesystem;
        fs::create_directories(opts_.cache_dir);
        fs::path manifest = fs::path(opts_.cache_dir) / "manifest.txt";
        if (!fs::exists(manifest)) {
            std::ofstream m(manifest);
            m << "gbe-cache-format 1\n";
        }
        fs::path file = fs::path(opts_.cache_dir) / cache_name(w.n, w.g);
        std::ofstream out(file);
        out << "corrfn n=" << w.n << " g=" << w.g << " parts=" << w.nparts() << "\n";
        for (int r = 0; r < w.nparts(); ++r) out << "r=" << r << "\n" << to_text(w.part(r)) << "\n";
    }

    std::optional<CorrFn> cache_load(int n, int g) const {
        if (opts_.cache_dir.empty()) return std::nullopt;
        namespace fs = std::filesystem;
        fs::path manifest = fs::path(opts_.cache_dir) / "manifest.txt";
        {
            std::ifstream m(manifest);
            std::string line;
            if (!m || !std::getline(m, line) || line != "gbe-cache-format 1") return std::nullopt;
        }
        std::ifstream in(fs::path(opts_.cache_dir) / cache_name(n, g));
        if (!in) return std::nullopt;
        try {
            std::string header;
            if (!std::getline(in, header)) return std::nullopt;
            char buf[96];
            std::snprintf(buf, sizeof buf, "corrfn n=%d g=%d parts=%d", n, g, g / 2 + 1);
            if (header != buf) return std::nullopt;
            CorrFn w(n, g);
            for (int r = 0; r < w.nparts(); ++r) {
                std::string tag, body;
                if (!std::getline(in, tag) || tag != "r=" + std::to_string(r)) return std::nullopt;
                if (!std::getline(in, body)) return std::nullopt;
                w.part(r) = ratfn_from_text(body);
                if (w.part(r).npoints() != n) return std::nullopt;
            }
            return w;
        } catch (const std::exception&) {
            return std::nullopt; // corrupt cache: reject and recompute
        }
    }

    static std::string cache_name(int n, int g) {
        return "W_" + std::to_string(n) + "_" + std::to_string(g) + ".txt";
    }

private:
    CorrFn compute(int n, int g) {
        if (n == 1 && g == 0) return base_w1_0();

        CorrFn out(n, g);
        std::vector<RatFnAccum> rhs(out.parts.size(), RatFnAccum(n));

        // hbar * d/dx W_n^{(g-1)}(x, I)
        if (g >= 1) {
            auto prev = solve(n, g - 1);
            for (int r = 0; r < prev->nparts(); ++r)
                rhs[static_cast<size_t>(r)].add(prev->part(r).derive(1));
        }

        // W_{n+1}^{(g-2)}(x, x, I): full multivariate value, then the
        // two-point identification x_2 -> x_1.
        if (g >= 2) {
            auto up = solve(n + 1, g - 2);
            for (int r = 0; r < up->nparts(); ++r)
                rhs[static_cast<size_t>(r + 1)].add(merge_pair(up->part(r), 1, 2));
        }

        // sum over J subset of I and p, excluding (empty,0) and (I,g)
        int isize = n - 1;
        for (uint32_t jbits = 0; jbits < (1u << isize); ++jbits) {
            int jsize = __builtin_popcount(jbits);
            std::vector<int> jpts, cpts;
            for (int k = 0; k < isize; ++k)
                ((jbits >> k) & 1u ? jpts : cpts).push_back(k + 2);
            for (int p = 0; p <= g; ++p) {
                if (jsize == 0 && p == 0) continue;
                if (jsize == isize && p == g) continue;
                auto f1 = solve(jsize + 1, p);
                auto f2 = solve(n - jsize, g - p);
                for (int r1 = 0; r1 < f1->nparts(); ++r1)
                    for (int r2 = 0; r2 < f2->nparts(); ++r2) {
                        RatFn prod = embed_part(f1->part(r1), n, jpts) * embed_part(f2->part(r2), n, cpts);
                        rhs[static_cast<size_t>(r1 + r2)].add(std::move(prod));
                    }
            }
        }

        // derivative-difference terms over the points of I
        if (n >= 2) {
            auto down = solve(n - 1, g);
            for (int i = 2; i <= n; ++i)
                for (int r = 0; r < down->nparts(); ++r)
                    rhs[static_cast<size_t>(r)].add(dd_term_part(down->part(r), i));
        }

        for (int r = 0; r < out.nparts(); ++r) {
            out.part(r) = rhs[static_cast<size_t>(r)].finalize().div_y(1);
            GBE_CHECK(out.part(r).num().term_count() <= opts_.term_limit, "solve: term limit exceeded");
        }
        validate(out);
        return out;
    }

    // Lift a stored k-point function onto points {1} U pts of an n-point context.
    static RatFn embed_part(const RatFn& part, int n, const std::vector<int>& pts) {
        std::vector<int> map(static_cast<size_t>(part.npoints()) + 1, 0);
        map[1] = 1;
        for (size_t s = 0; s < pts.size(); ++s) map[s + 2] = pts[s];
        return part.remap_points(n, map);
    }
    // Structural checks on every computed function: weighted homogeneity of
    // degree 4 - 3n - 2g in (T, x, y).
    static void validate(const CorrFn& w) {
        int expect = 4 - 3 * w.n - 2 * w.g;
        for (const auto& p : w.parts) {
            if (p.is_zero()) continue;
            auto [lo, hi] = p.weighted_degree_range();
            GBE_CHECK(lo == expect && hi == expect, "solve: homogeneity violated");
        }
    }

    SolverOptions opts_;
    std::mutex mu_;
    std::map<std::pair<int, int>, std::shared_ptr<const CorrFn>> memo_;
};

} // namespace gbe

#endif
