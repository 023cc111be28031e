#include "gmc/zeros.hpp"

#include "gmc/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <tuple>

namespace gmc {

// ---------------------------------------------------------------- Blaschke

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros) : zeros_(std::move(zeros))
{
    for (const cplx& a : zeros_)
        if (!(std::abs(a) < 1.0))
            throw ParameterError("Blaschke zeros must lie in the open disc");
}

BlaschkeProduct make_blaschke(std::vector<cplx> zeros) { return BlaschkeProduct(std::move(zeros)); }

cplx BlaschkeProduct::value(cplx z) const { return value_and_derivative(z).first; }

std::pair<cplx, cplx> BlaschkeProduct::value_and_derivative(cplx z) const
{
    cplx p = 1.0, dp = 0.0;
    for (const cplx& a : zeros_) {
        cplx b, db;
        if (a == 0.0) {
            b = z;
            db = 1.0;
        } else {
            const cplx u = std::abs(a) / a;
            const cplx den = 1.0 - std::conj(a) * z;
            b = u * (a - z) / den;
            db = u * (std::norm(a) - 1.0) / (den * den);
        }
        dp = dp * b + p * db;
        p *= b;
    }
    return {p, dp};
}

int ZeroSet::total_multiplicity() const
{
    int n = 0;
    for (const Zero& z : zeros)
        n += z.multiplicity;
    return n;
}

std::vector<std::pair<int, int>> annulus_counts(const std::vector<Zero>& zeros)
{
    std::map<int, int> counts;
    for (const Zero& z : zeros) {
        const double u = 1.0 - std::abs(z.z);
        int k = static_cast<int>(std::floor(-std::log2(u)));
        while (k > 0 && u > std::ldexp(1.0, -k))
            --k;
        while (u <= std::ldexp(1.0, -k - 1))
            ++k;
        counts[k] += z.multiplicity;
    }
    std::vector<std::pair<int, int>> out;
    if (counts.empty())
        return out;
    for (int k = 0; k <= counts.rbegin()->first; ++k)
        out.emplace_back(k, counts.count(k) ? counts[k] : 0);
    return out;
}

// ------------------------------------------------------- phase tracking

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Degenerate {};
struct BudgetExhausted {};

cplx polar(double r, double t) { return {r * std::cos(t), r * std::sin(t)}; }

class Tracker {
public:
    Tracker(const AnalyticSelfMap& f, std::size_t budget) : f_(f), budget_(budget) {}

    std::size_t evaluations() const { return evals_; }
    const AnalyticSelfMap& function() const { return f_; }

    // Continuous change of arg f along a path z(s), s in [0, 1]. Steps are
    // halved until the principal phase increment is below pi/4 and the
    // step times |f'/f| at both ends is below pi/2.
    template <class Path>
    double track(const Path& path, double length, int segments, double floor)
    {
        struct Node {
            double s;
            cplx v;
            double speed;
        };
        auto eval = [&](double s) {
            if (++evals_ > budget_)
                throw BudgetExhausted{};
            const cplx z = path(s);
            auto [v, d] = f_.value_and_derivative(z);
            const double av = std::abs(v);
            if (!(av > floor))
                throw Degenerate{};
            return Node{s, v, std::abs(d) / av};
        };
        std::vector<Node> stack;
        for (int i = segments; i >= 1; --i)
            stack.push_back(eval(static_cast<double>(i) / segments));
        Node a = eval(0.0);
        double total = 0.0;
        while (!stack.empty()) {
            const Node b = stack.back();
            const double step = length * (b.s - a.s);
            const double dphi = std::arg(b.v / a.v);
            if (std::abs(dphi) < 0.25 * kPi && step * std::max(a.speed, b.speed) < 0.5 * kPi) {
                total += dphi;
                a = b;
                stack.pop_back();
                continue;
            }
            if (step < 1e-13)
                throw Degenerate{};
            stack.push_back(eval(0.5 * (a.s + b.s)));
        }
        return total;
    }

    double arc(double r, double ta, double tb, double floor)
    {
        const double span = std::abs(tb - ta);
        const int seg = std::max({2, static_cast<int>(std::ceil(span / (kPi / 8))),
                                  static_cast<int>(std::ceil(r * span / max_step(r)))});
        return track([&](double s) { return polar(r, std::lerp(ta, tb, s)); }, r * span, seg,
                     floor);
    }

    double radial(double t, double ra, double rb, double floor)
    {
        const double len = std::abs(rb - ra);
        const int seg = std::max(1, static_cast<int>(std::ceil(len / max_step(std::max(ra, rb)))));
        return track([&](double s) { return polar(std::lerp(ra, rb, s), t); }, len, seg, floor);
    }

private:
    // f varies on the scale of the distance to the unit circle; initial
    // nodes closer than that keep a full phase turn from aliasing between
    // two nodes where |f'/f| happens to be small.
    static double max_step(double r) { return 0.25 * (1.0 - r); }

    const AnalyticSelfMap& f_;
    std::size_t budget_;
    std::size_t evals_ = 0;
};

int winding(double total)
{
    const double w = total / kTwoPi;
    const double n = std::round(w);
    if (std::abs(w - n) > 1e-3 || n < 0)
        throw PrecisionError("non-integer winding number " + std::to_string(w));
    return static_cast<int>(n);
}

constexpr double kContourFloor = 1e-6;
constexpr double kCellFloor = 1e-10;

ContourCount count_with(Tracker& tr, double r)
{
    const double nudges[] = {0.0, 1e-4, -1e-4, 2e-4, -2e-4, 3e-4, -3e-4, 4e-4, -4e-4};
    for (double d : nudges) {
        const double rr = r + d;
        if (!(rr > 0.0) || rr > kEvalGuard)
            continue;
        try {
            const int n = winding(tr.arc(rr, 0.0, kTwoPi, kContourFloor));
            return {n, rr, tr.evaluations()};
        } catch (const Degenerate&) {
        }
    }
    throw ContourDegenerateError("contour |z| = " + std::to_string(r) +
                                 " stays too close to a zero after nudging");
}

// Polar cell [r0, r1] x [t0, t1]; full cells (annuli, discs) have t1 = t0 + 2 pi.
struct Cell {
    double r0, r1, t0, t1;
    bool full;

    double diameter() const
    {
        if (full || t1 - t0 >= kPi)
            return 2.0 * r1;
        return std::hypot(r1 - r0, 2.0 * r1 * std::sin(0.5 * (t1 - t0)));
    }
    cplx center() const
    {
        if (full && r0 == 0.0)
            return 0.0;
        return polar(0.5 * (r0 + r1), 0.5 * (t0 + t1));
    }
    bool contains(cplx z, double margin) const
    {
        const double rho = std::abs(z);
        if (rho < r0 - margin || rho > r1 + margin)
            return false;
        if (full)
            return true;
        const double half = 0.5 * (t1 - t0);
        const double dt = std::remainder(std::arg(z) - 0.5 * (t0 + t1), kTwoPi);
        return std::abs(dt) <= half + margin / std::max(rho, 1e-300);
    }
};

class CellCounter {
public:
    explicit CellCounter(Tracker& tr) : tr_(tr) {}

    int count(const Cell& c)
    {
        double total = arc(c.r1, c.t0, c.t1);
        if (!c.full)
            total += radial(c.t1, c.r1, c.r0) + radial(c.t0, c.r0, c.r1);
        if (c.r0 > 0.0)
            total += arc(c.r0, c.t1, c.t0);
        return winding(total);
    }

private:
    using Key = std::tuple<int, double, double, double>;

    double cached(int kind, double fixed, double a, double b)
    {
        const bool fwd = a < b;
        const Key key{kind, fixed, fwd ? a : b, fwd ? b : a};
        auto it = cache_.find(key);
        double v;
        if (it != cache_.end()) {
            v = it->second;
        } else {
            v = kind == 0 ? tr_.arc(fixed, std::get<2>(key), std::get<3>(key), kCellFloor)
                          : tr_.radial(fixed, std::get<2>(key), std::get<3>(key), kCellFloor);
            cache_.emplace(key, v);
        }
        return fwd ? v : -v;
    }
    double arc(double r, double ta, double tb) { return cached(0, r, ta, tb); }
    double radial(double t, double ra, double rb) { return cached(1, t, ra, rb); }

    Tracker& tr_;
    std::map<Key, double> cache_;
};

constexpr double kSplitFractions[] = {0.5, 0.4375, 0.5625, 0.40625, 0.59375, 0.46875, 0.53125,
                                      0.375};

std::vector<Cell> split(const Cell& c, double f)
{
    if (c.full && c.r0 == 0.0) {
        const double rm = c.r1 * f;
        return {{0.0, rm, c.t0, c.t0 + kTwoPi, true}, {rm, c.r1, c.t0, c.t0 + kTwoPi, true}};
    }
    if (c.full) {
        std::vector<Cell> out;
        const double off = c.t0 + (f - 0.5);
        for (int i = 0; i < 4; ++i)
            out.push_back({c.r0, c.r1, off + kTwoPi * i / 4.0, off + kTwoPi * (i + 1) / 4.0, false});
        out.back().t1 = off + kTwoPi;
        return out;
    }
    const double rm = std::lerp(c.r0, c.r1, f);
    const double tm = std::lerp(c.t0, c.t1, f);
    return {{c.r0, rm, c.t0, tm, false},
            {c.r0, rm, tm, c.t1, false},
            {rm, c.r1, c.t0, tm, false},
            {rm, c.r1, tm, c.t1, false}};
}

bool polish(const AnalyticSelfMap& f, const Cell& cell, int mult, cplx& out)
{
    cplx z = cell.center();
    const double diam = cell.diameter();
    for (int it = 0; it < 100; ++it) {
        auto [v, d] = f.value_and_derivative(z);
        if (std::abs(v) < 1e-15)
            break;
        if (d == 0.0)
            return false;
        cplx step = static_cast<double>(mult) * v / d;
        if (std::abs(step) > diam)
            step *= diam / std::abs(step);
        z -= step;
        if (!(std::abs(z) <= kEvalGuard))
            return false;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z)))
            break;
    }
    if (!(std::abs(f.value(z)) < 1e-12) || !cell.contains(z, 1e-9))
        return false;
    out = z;
    return true;
}

std::vector<Cell> top_level_cells(double r_eff, int attempt)
{
    const double toff = 0.1234567 * attempt;
    std::vector<double> levels{0.0};
    const double first = 0.5 * (1.0 - 1e-3 * attempt);
    if (first < r_eff * 0.75)
        levels.push_back(first);
    for (int k = 2;; ++k) {
        const double rho = (1.0 - std::ldexp(1.0, -k)) * (1.0 - 1e-6 * attempt);
        // Skip a level that would leave a sliver below r_eff.
        if (rho >= r_eff - 0.25 * (r_eff - levels.back()))
            break;
        levels.push_back(rho);
    }
    levels.push_back(r_eff);
    std::vector<Cell> cells;
    cells.push_back({0.0, levels[1], toff, toff + kTwoPi, true});
    for (std::size_t i = 1; i + 1 < levels.size(); ++i) {
        const double a = levels[i], b = levels[i + 1];
        const double want = kTwoPi * b / (2.0 * (b - a));
        std::size_t S = 8;
        while (static_cast<double>(S) < want)
            S *= 2;
        for (std::size_t s = 0; s < S; ++s) {
            const double t0 = toff + kTwoPi * static_cast<double>(s) / static_cast<double>(S);
            const double t1 = (s + 1 == S) ? toff + kTwoPi
                                           : toff + kTwoPi * static_cast<double>(s + 1) /
                                                        static_cast<double>(S);
            cells.push_back({a, b, t0, t1, false});
        }
    }
    return cells;
}

std::vector<Zero> merge_duplicates(std::vector<Zero> raw)
{
    std::vector<Zero> out;
    for (const Zero& z : raw) {
        bool merged = false;
        for (Zero& o : out)
            if (std::abs(o.z - z.z) < 1e-8) {
                o.multiplicity += z.multiplicity;
                merged = true;
                break;
            }
        if (!merged)
            out.push_back(z);
    }
    std::sort(out.begin(), out.end(), [](const Zero& a, const Zero& b) {
        return std::abs(a.z) < std::abs(b.z) ||
               (std::abs(a.z) == std::abs(b.z) && std::arg(a.z) < std::arg(b.z));
    });
    return out;
}

// Resolves all zeros of the given cells. Throws Degenerate when the top-level
// grid itself must be moved.
void resolve(const AnalyticSelfMap& f, CellCounter& counter, std::vector<std::pair<Cell, int>> todo,
             std::vector<Zero>& found)
{
    while (!todo.empty()) {
        auto [cell, n] = todo.back();
        todo.pop_back();
        if (n == 0)
            continue;
        const double diam = cell.diameter();
        const bool tiny = diam <= 1e-6;
        if (n == 1 || tiny) {
            cplx z;
            if (polish(f, cell, tiny ? n : 1, z)) {
                found.push_back({z, n});
                continue;
            }
            if (tiny) {
                // Cluster below the subdivision floor: keep the centre.
                found.push_back({cell.center(), n});
                continue;
            }
        }
        bool done = false, below_floor = true;
        for (double frac : kSplitFractions) {
            try {
                auto kids = split(cell, frac);
                std::vector<int> counts;
                int sum = 0;
                for (const Cell& k : kids) {
                    counts.push_back(counter.count(k));
                    sum += counts.back();
                }
                if (sum != n) {
                    below_floor = false;
                    continue;
                }
                for (std::size_t i = 0; i < kids.size(); ++i)
                    todo.emplace_back(kids[i], counts[i]);
                done = true;
                break;
            } catch (const Degenerate&) {
            } catch (const PrecisionError&) {
                below_floor = false;
            }
        }
        if (!done && below_floor) {
            // |f| under the floor on every split contour: a tight cluster.
            cplx z;
            found.push_back({polish(f, cell, n, z) ? z : cell.center(), n});
            continue;
        }
        if (!done)
            throw ConsistencyError("could not subdivide a cell holding " + std::to_string(n) +
                                   " zeros");
    }
}

}  // namespace

ContourCount count_zeros_detail(const AnalyticSelfMap& f, double r)
{
    if (!(r > 0.0) || !(r < 1.0))
        throw ParameterError("contour radius must lie in (0, 1)");
    Tracker tr(f, std::numeric_limits<std::size_t>::max());
    return count_with(tr, r);
}

int count_zeros(const AnalyticSelfMap& f, double r) { return count_zeros_detail(f, r).count; }

ZeroSet locate_zeros(const AnalyticSelfMap& f, double r_max, std::size_t budget)
{
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw ParameterError("search radius must lie in (0, 1)");
    const double res = f.angular_resolution();
    if (res > 0.0 && r_max > 1.0 - 4.0 * res + 1e-15)
        throw ParameterError("search radius beyond 1 - 4 * (angular resolution)");

    Tracker tr(f, budget);
    ZeroSet zs;
    ContourCount outer;
    try {
        outer = count_with(tr, r_max);
    } catch (const BudgetExhausted&) {
        zs.r_max = r_max;
        zs.complete = false;
        zs.evaluations = tr.evaluations();
        return zs;
    }
    zs.r_max = outer.radius;

    std::vector<Zero> found;
    bool resolved = false;
    for (int attempt = 0; attempt < 8 && !resolved; ++attempt) {
        found.clear();
        CellCounter counter(tr);
        try {
            std::vector<std::pair<Cell, int>> todo;
            int sum = 0;
            for (const Cell& c : top_level_cells(outer.radius, attempt)) {
                const int n = counter.count(c);
                sum += n;
                todo.emplace_back(c, n);
            }
            if (sum != outer.count)
                continue;
            resolve(f, counter, std::move(todo), found);
            resolved = true;
        } catch (const Degenerate&) {
        } catch (const PrecisionError&) {
        } catch (const BudgetExhausted&) {
            zs.complete = false;
            break;
        }
    }
    zs.evaluations = tr.evaluations();
    zs.zeros = merge_duplicates(std::move(found));
    zs.annulus_counts = annulus_counts(zs.zeros);
    if (!zs.complete)
        return zs;
    if (!resolved)
        throw ConsistencyError("zero location failed on every cell grid");
    if (zs.total_multiplicity() != outer.count)
        throw ConsistencyError("located " + std::to_string(zs.total_multiplicity()) +
                               " zeros but the contour count is " + std::to_string(outer.count));
    return zs;
}

ZeroSet restrict_zeros(const ZeroSet& zs, double r)
{
    ZeroSet out;
    out.r_max = std::min(r, zs.r_max);
    out.complete = zs.complete;
    out.evaluations = zs.evaluations;
    for (const Zero& z : zs.zeros)
        if (std::abs(z.z) <= r)
            out.zeros.push_back(z);
    out.annulus_counts = annulus_counts(out.zeros);
    return out;
}

double beta_sum(const ZeroSet& zs, double beta)
{
    if (!(beta > 0.0) || beta > 1.0)
        throw ParameterError("beta must lie in (0, 1]");
    double s = 0.0;
    for (const Zero& z : zs.zeros)
        s += z.multiplicity * std::pow(1.0 - std::abs(z.z), beta);
    return s;
}

double area_functional(const AnalyticSelfMap& f, double beta, double r_max)
{
    if (!(beta > 0.0) || !(beta < 1.0))
        throw ParameterError("beta must lie in (0, 1)");
    if (!(r_max > 0.0) || !(r_max < 1.0))
        throw ParameterError("r_max must lie in (0, 1)");
    using Rule = boost::math::quadrature::gauss<double, 20>;

    // Radial panels: graded toward 0 (log singularity of a zero at the
    // origin) and dyadically toward r_max.
    std::vector<double> edges{0.0};
    for (int k = 8; k >= 1; --k)
        edges.push_back(std::min(r_max, std::ldexp(1.0, -k)));
    for (int k = 2; edges.back() < r_max; ++k)
        edges.push_back(std::min(r_max, 1.0 - std::ldexp(1.0, -k)));
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    const auto& x = Rule::abscissa();
    const auto& w = Rule::weights();
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
        const double a = edges[p], b = edges[p + 1];
        const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (std::size_t i = 0; i < x.size(); ++i) {
            for (int sign : {-1, 1}) {
                if (x[i] == 0.0 && sign < 0)
                    continue;
                const double rho = mid + sign * half * x[i];
                const double wr = half * w[i];
                std::size_t nt = 128;
                while (static_cast<double>(nt) < 32.0 / (1.0 - rho))
                    nt *= 2;
                const double dt = kTwoPi / static_cast<double>(nt);
                double ring = 0.0;
                for (std::size_t j = 0; j < nt; ++j) {
                    const cplx z = polar(rho, (static_cast<double>(j) + 0.5) * dt);
                    double g = -f.log_abs(z);
                    if (g == std::numeric_limits<double>::infinity()) {
                        // Node sits on a zero: use the mean of
                        // m log(1/|z - z0|) + R over a disc of the node's area.
                        const double rad = std::sqrt(wr * rho * dt / kPi);
                        const double l1 = -f.log_abs(z + rad);
                        const double l2 = -f.log_abs(z + 0.5 * rad);
                        const double m = std::max(1.0, std::round((l2 - l1) / std::log(2.0)));
                        const double R = l1 - m * std::log(1.0 / rad);
                        g = m * (std::log(1.0 / rad) + 0.5) + R;
                    }
                    if (!std::isfinite(g))
                        throw QuadratureError("non-finite integrand in area functional");
                    ring += g;
                }
                total += wr * std::pow(1.0 - rho * rho, beta - 2.0) * rho * ring * dt;
            }
        }
    }
    return total;
}

}  // namespace gmc
