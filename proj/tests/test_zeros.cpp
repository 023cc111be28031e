#include "gmc/errors.hpp"
#include "gmc/zeros.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

using namespace gmc;
using std::numbers::pi;

namespace {

InnerFunctionEval roots_of_unity(int n)
{
    std::vector<double> t(n), m(n, 1.0 / n);
    for (int k = 0; k < n; ++k)
        t[k] = 2 * pi * k / n;
    return InnerFunctionEval(t, m);
}

std::vector<cplx> random_zeros(Rng& rng, int n, double rmax)
{
    std::vector<cplx> z(n);
    for (auto& w : z)
        w = std::polar(rmax * std::sqrt(rng.uniform()), 2 * pi * rng.uniform());
    return z;
}

bool recovered(const ZeroSet& zs, const std::vector<cplx>& truth, double tol)
{
    if (zs.total_multiplicity() != static_cast<int>(truth.size()))
        return false;
    for (const cplx& t : truth) {
        bool hit = false;
        for (const auto& z : zs.zeros)
            hit = hit || std::abs(z.z - t) < tol;
        if (!hit)
            return false;
    }
    return true;
}

ChaosMeasure chaos(std::size_t r, int N)
{
    Rng rng(derive_seed(12, stream::field, r));
    return build_measure(sample_canonical(N, GridSpec::circle(4 * N), rng), 1.0);
}

}  // namespace

TEST_CASE("Blaschke oracle")
{
    const BlaschkeProduct one = make_blaschke({});
    CHECK(one.value(cplx(0.3, 0.2)) == cplx(1.0, 0.0));
    const BlaschkeProduct id = make_blaschke({0.0});
    CHECK(std::abs(id.value(cplx(0.3, 0.2)) - cplx(0.3, 0.2)) < 1e-15);
    const cplx a(0.4, -0.5);
    CHECK(std::abs(make_blaschke({a}).value(a)) < 1e-14);
    CHECK_THROWS_AS(make_blaschke({cplx(1.0, 0.0)}), ParameterError);
    // Derivative against central differences.
    const BlaschkeProduct b = make_blaschke({0.5, cplx(0, 0.3), -0.7});
    const cplx z(0.1, 0.6), h(1e-6, 0);
    const cplx fd = (b.value(z + h) - b.value(z - h)) / (2.0 * h);
    CHECK(std::abs(b.value_and_derivative(z).second - fd) < 1e-6 * std::abs(fd));
}

TEST_CASE("count_zeros oracles")
{
    CHECK(count_zeros(InnerFunctionEval({1.0}, {1.0}), 0.5) == 1);
    for (int n = 2; n <= 6; ++n)
        CHECK(count_zeros(roots_of_unity(n), 0.9) == n);
    CHECK(count_zeros(make_blaschke({0.5, cplx(0, 0.3), -0.7}), 0.9) == 3);
    CHECK(count_zeros(make_blaschke({0.5, cplx(0, 0.3), -0.7}), 0.6) == 2);
}

TEST_CASE("count_zeros nudges off a zero on the contour")
{
    const BlaschkeProduct b = make_blaschke({0.5});
    const ContourCount c = count_zeros_detail(b, 0.5);
    CHECK(c.radius != 0.5);
    CHECK(c.count == (c.radius > 0.5 ? 1 : 0));
}

TEST_CASE("locate_zeros on exact oracles")
{
    for (int n = 1; n <= 6; ++n) {
        const ZeroSet zs = locate_zeros(roots_of_unity(n), 0.9);
        REQUIRE(zs.zeros.size() == 1);
        CHECK(std::abs(zs.zeros[0].z) < 1e-6);
        CHECK(zs.zeros[0].multiplicity == n);
    }
    const std::vector<cplx> truth{0.5, cplx(0, 0.3)};
    const ZeroSet zs = locate_zeros(make_blaschke(truth), 0.9);
    CHECK(recovered(zs, truth, 1e-9));
}

TEST_CASE("random Blaschke products are recovered exactly")
{
    Rng rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = 1 + static_cast<int>(rng.uniform() * 8);
        const auto truth = random_zeros(rng, n, 0.85);
        const ZeroSet zs = locate_zeros(make_blaschke(truth), 0.9);
        CHECK(recovered(zs, truth, 1e-9));
        int annulus = 0;
        for (const auto& [k, c] : zs.annulus_counts)
            annulus += c;
        CHECK(annulus == zs.total_multiplicity());
    }
}

TEST_CASE("zeros of a chaos inner function")
{
    const InnerFunctionEval f(chaos(0, 128));
    const ZeroSet zs = locate_zeros(f, 0.9);
    CHECK(zs.complete);
    CHECK(zs.total_multiplicity() == count_zeros(f, 0.9));
    for (const auto& z : zs.zeros) {
        CHECK(std::abs(f.phi(z.z)) < 1e-12);
        CHECK(std::abs(z.z) <= 0.9);
    }
    // Guard: zeros closer to the boundary than the grid resolution are refused.
    CHECK_THROWS_AS(locate_zeros(f, 1.0 - 2.0 * 2 * pi / 512), ParameterError);
}

TEST_CASE("contour counts near the edge match a dense phase unwrap")
{
    // Where |h| is large, |phi'/phi| is small and a coarse start can alias a turn.
    const double r = 1.0 - std::ldexp(1.0, -7);
    for (std::size_t k = 0; k < 12; ++k) {
        const InnerFunctionEval f(chaos(100 + k, 1024));
        const ContourCount c = count_zeros_detail(f, r);
        const int n = 1 << 15;
        double total = 0.0;
        cplx prev = f.phi(c.radius);
        for (int j = 1; j <= n; ++j) {
            const cplx v = f.phi(std::polar(c.radius, 2 * pi * j / n));
            total += std::arg(v / prev);
            prev = v;
        }
        CHECK(c.count == static_cast<int>(std::lround(total / (2 * pi))));
        const ZeroSet zs = locate_zeros(f, r);
        CHECK(zs.total_multiplicity() == c.count);
    }
}

TEST_CASE("count_zeros is monotone in r")
{
    const InnerFunctionEval f(chaos(1, 128));
    int prev = 0;
    for (double r = 0.1; r < 0.95; r += 0.05) {
        const int c = count_zeros(f, r);
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("restriction and beta sums")
{
    ZeroSet zs;
    zs.zeros = {{0.0, 1}};
    CHECK(beta_sum(zs, 1.0) == 1.0);
    zs.zeros = {{0.5, 1}, {cplx(0, 0.75), 1}};
    CHECK(beta_sum(zs, 1.0) == doctest::Approx(0.75));
    CHECK(beta_sum(zs, 0.5) == doctest::Approx(std::sqrt(0.5) + 0.5));
    CHECK_THROWS_AS(beta_sum(zs, 0.0), ParameterError);
    const ZeroSet inner = restrict_zeros(zs, 0.6);
    CHECK(inner.zeros.size() == 1);
    const ZeroSet z3 = locate_zeros(roots_of_unity(3), 0.5);
    CHECK(beta_sum(z3, 1.0) == doctest::Approx(3.0).epsilon(1e-6));
}

TEST_CASE("area functional: constant map")
{
    struct Constant : AnalyticSelfMap {
        cplx c;
        cplx value(cplx) const override { return c; }
        std::pair<cplx, cplx> value_and_derivative(cplx) const override { return {c, 0.0}; }
    } f;
    f.c = 0.3;
    for (double beta : {0.3, 0.7}) {
        for (double r : {0.5, 0.9, 0.99}) {
            const double exact = 2 * pi * (1 - std::pow(1 - r * r, beta - 1)) / (2 * (beta - 1)) *
                                 std::log(1 / 0.3);
            CHECK(area_functional(f, beta, r) == doctest::Approx(exact).epsilon(1e-8));
        }
    }
    CHECK_THROWS_AS(area_functional(f, 1.0, 0.5), ParameterError);
}

TEST_CASE("area functional: z^2 against z")
{
    const BlaschkeProduct z1 = make_blaschke({0.0}), z2 = make_blaschke({0.0, 0.0});
    double prev_gap = INFINITY;
    for (double r : {0.9, 0.99, 0.999}) {
        const double q = area_functional(z2, 0.5, r) / area_functional(z1, 0.5, r);
        CHECK(std::abs(q - 2.0) < 1e-6);
        const double gap = std::abs(q - 2.0);
        CHECK(gap <= prev_gap + 1e-12);
        prev_gap = gap;
    }
}

TEST_CASE("area functional is continuous in beta")
{
    const BlaschkeProduct z1 = make_blaschke({0.0});
    double prev = area_functional(z1, 0.9, 0.9);
    for (double beta = 0.91; beta < 0.995; beta += 0.01) {
        const double v = area_functional(z1, beta, 0.9);
        // (1 - |z|^2)^(beta - 2) shrinks as beta grows.
        CHECK(v < prev);
        CHECK(v > prev / 1.1);
        prev = v;
    }
}

TEST_CASE("Jensen-type equivalence on Blaschke oracles")
{
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const auto truth = random_zeros(rng, 1 + trial % 8, 0.95);
        const BlaschkeProduct b = make_blaschke(truth);
        for (double r : {0.9, 0.99}) {
            const ZeroSet zs = locate_zeros(b, r);
            if (zs.zeros.empty())
                continue;
            for (double beta : {0.5, 0.9}) {
                const double s = beta_sum(zs, beta), a = area_functional(b, beta, r);
                CHECK(a / s < 10.0);
                CHECK(s / a < 10.0);
            }
        }
    }
}
