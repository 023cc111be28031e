#include "gmc/field.hpp"

#include "gmc/errors.hpp"
#include "gmc/kernels.hpp"
#include "gmc/trig.hpp"

#include <Eigen/Eigenvalues>

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace gmc {

std::string to_string(KernelKind kind)
{
    switch (kind) {
    case KernelKind::canonical: return "canonical";
    case KernelKind::perturbed: return "perturbed";
    case KernelKind::exact_scaling: return "exact_scaling";
    case KernelKind::residual: return "residual";
    }
    return "unknown";
}

KernelKind kernel_kind_from_string(const std::string& s)
{
    for (auto k : {KernelKind::canonical, KernelKind::perturbed, KernelKind::exact_scaling,
                   KernelKind::residual})
        if (to_string(k) == s)
            return k;
    throw ParameterError("unknown kernel id '" + s + "'");
}

KernelSpec KernelSpec::perturbed(Eigen::MatrixXd g)
{
    if (g.rows() != g.cols() || g.rows() % 2 == 0)
        throw ParameterError("perturbation needs a square (2D+1) coefficient matrix");
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ParameterError("perturbation coefficients must be symmetric");
    return {KernelKind::perturbed, std::move(g)};
}

double KernelSpec::g_value(double t1, double t2) const
{
    if (kind != KernelKind::perturbed)
        return 0.0;
    const auto n = static_cast<std::size_t>(g.rows());
    Eigen::VectorXd e1(n), e2(n);
    for (std::size_t i = 0; i < n; ++i) {
        e1[i] = trig_basis(i, t1);
        e2[i] = trig_basis(i, t2);
    }
    return e1.dot(g * e2);
}

double harmonic_number(int N)
{
    double s = 0.0;
    for (int n = N; n >= 1; --n)
        s += 1.0 / n;
    return s;
}

double covariance_canonical(double delta, std::optional<int> N)
{
    if (!N) {
        const double half = std::abs(std::sin(0.5 * delta));
        if (half == 0.0 || std::abs(std::remainder(delta, 2.0 * std::numbers::pi)) < 1e-300)
            throw SingularityError("canonical covariance is singular at zero lag");
        return -std::log(2.0 * half);
    }
    if (*N < 1)
        throw ParameterError("truncation must be >= 1");
    double s = 0.0;
    for (int n = *N; n >= 1; --n)
        s += std::cos(n * delta) / n;
    return s;
}

CanonicalCoefficients CanonicalCoefficients::draw(int N, Rng& rng)
{
    CanonicalCoefficients c;
    c.A.resize(N);
    c.B.resize(N);
    for (int n = 0; n < N; ++n) {
        c.A[n] = rng.normal();
        c.B[n] = rng.normal();
    }
    return c;
}

FieldSample synthesize_canonical(const CanonicalCoefficients& c, int N, const GridSpec& grid)
{
    if (N < 0 || static_cast<std::size_t>(N) > c.A.size())
        throw ParameterError("not enough coefficients for the requested truncation");
    if (2 * static_cast<std::size_t>(N) > grid.M)
        throw AliasingError("truncation N=" + std::to_string(N) + " exceeds M/2=" +
                            std::to_string(grid.M / 2));
    if (grid.domain != Domain::circle)
        throw ParameterError("the canonical field lives on the circle");
    FieldSample f;
    f.grid = grid;
    f.truncation_N = N;
    f.kernel = KernelKind::canonical;
    f.cos_coeffs.assign(c.A.begin(), c.A.begin() + N);
    f.sin_coeffs.assign(c.B.begin(), c.B.begin() + N);
    std::vector<double> a(N), b(N);
    for (int n = 1; n <= N; ++n) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(n));
        a[n - 1] = scale * c.A[n - 1];
        b[n - 1] = scale * c.B[n - 1];
    }
    f.values.resize(grid.M);
    kernels::parallel::synthesize_trig(a, b, grid.M, f.values.data());
    f.variance.assign(grid.M, harmonic_number(N));
    return f;
}

FieldSample sample_canonical(int N, const GridSpec& grid, Rng& rng)
{
    if (2 * static_cast<std::size_t>(std::max(N, 0)) > grid.M)
        throw AliasingError("truncation N=" + std::to_string(N) + " exceeds M/2=" +
                            std::to_string(grid.M / 2));
    return synthesize_canonical(CanonicalCoefficients::draw(N, rng), N, grid);
}

CovarianceSampler::CovarianceSampler(const Eigen::MatrixXd& K, bool strict)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    if (es.info() != Eigen::Success)
        throw InvalidKernelError("eigendecomposition of the grid covariance failed");
    const Eigen::VectorXd& lam = es.eigenvalues();
    min_eig_ = lam.minCoeff();
    max_eig_ = lam.maxCoeff();
    const double tol = 1e-8 * std::max(max_eig_, 0.0);
    if (strict && min_eig_ < -tol)
        throw InvalidKernelError("grid covariance has eigenvalue " + std::to_string(min_eig_) +
                                 " below -tol_psd");
    factor_ = es.eigenvectors() * lam.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    const Eigen::VectorXd d = factor_.rowwise().squaredNorm();
    variance_.assign(d.data(), d.data() + d.size());
}

std::vector<double> CovarianceSampler::draw(Rng& rng) const
{
    Eigen::VectorXd xi(factor_.cols());
    for (Eigen::Index i = 0; i < xi.size(); ++i)
        xi[i] = rng.normal();
    const Eigen::VectorXd x = factor_ * xi;
    return {x.data(), x.data() + x.size()};
}

Eigen::MatrixXd canonical_grid_covariance(int N, const GridSpec& grid)
{
    const std::size_t M = grid.M;
    std::vector<double> lag(M);
    for (std::size_t d = 0; d < M; ++d)
        lag[d] = covariance_canonical(grid.spacing() * static_cast<double>(d), N);
    Eigen::MatrixXd K(M, M);
    for (std::size_t i = 0; i < M; ++i)
        for (std::size_t j = 0; j < M; ++j)
            K(i, j) = lag[(i + M - j) % M];
    return K;
}

namespace {

Eigen::MatrixXd perturbed_covariance(const KernelSpec& kernel, int N, const GridSpec& grid)
{
    if (kernel.kind != KernelKind::perturbed)
        throw ParameterError("sample_perturbed needs a perturbed kernel");
    if (grid.domain != Domain::circle)
        throw ParameterError("perturbed fields live on the circle");
    if (2 * static_cast<std::size_t>(N) > grid.M)
        throw AliasingError("truncation exceeds M/2");
    Eigen::MatrixXd K = canonical_grid_covariance(N, grid);
    const auto n = kernel.g.rows();
    Eigen::MatrixXd E(grid.M, n);
    for (std::size_t j = 0; j < grid.M; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            E(j, i) = trig_basis(static_cast<std::size_t>(i), grid.point(j));
    K += E * kernel.g * E.transpose();
    return K;
}

Eigen::MatrixXd exact_scaling_covariance(double eps, const GridSpec& grid)
{
    if (grid.domain != Domain::interval)
        throw ParameterError("the exact-scaling field lives on an interval grid");
    if (eps < grid.spacing() * (1.0 - 1e-12))
        throw ResolutionError("eps below grid spacing");
    Eigen::MatrixXd K(grid.M, grid.M);
    for (std::size_t i = 0; i < grid.M; ++i)
        for (std::size_t j = 0; j < grid.M; ++j)
            K(i, j) = -std::log(std::max(std::abs(grid.point(i) - grid.point(j)), eps));
    return K;
}

}  // namespace

PerturbedSampler::PerturbedSampler(const KernelSpec& kernel, int N, const GridSpec& grid)
    : grid_(grid), N_(N), K_(perturbed_covariance(kernel, N, grid)), sampler_(K_, true)
{
}

FieldSample PerturbedSampler::sample(Rng& rng) const
{
    FieldSample f;
    f.grid = grid_;
    f.truncation_N = N_;
    f.kernel = KernelKind::perturbed;
    f.values = sampler_.draw(rng);
    f.variance = sampler_.variance();
    return f;
}

ExactScalingSampler::ExactScalingSampler(double eps, const GridSpec& grid)
    : grid_(grid), eps_(eps), sampler_(exact_scaling_covariance(eps, grid), false)
{
}

FieldSample ExactScalingSampler::sample(Rng& rng) const
{
    FieldSample f;
    f.grid = grid_;
    f.truncation_N = static_cast<int>(std::lround(1.0 / eps_));
    f.kernel = KernelKind::exact_scaling;
    f.values = sampler_.draw(rng);
    f.variance = sampler_.variance();
    return f;
}

FieldSample sample_perturbed(const KernelSpec& kernel, int N, const GridSpec& grid, Rng& rng)
{
    return PerturbedSampler(kernel, N, grid).sample(rng);
}

FieldSample sample_exact_scaling(double eps, const GridSpec& grid, Rng& rng)
{
    return ExactScalingSampler(eps, grid).sample(rng);
}

namespace {

double& mode_slot(FieldSample& f, Mode mode)
{
    auto& v = mode.part == Mode::Part::sin ? f.sin_coeffs : f.cos_coeffs;
    return v[static_cast<std::size_t>(mode.n - 1)];
}

void check_mode(const FieldSample& f, Mode mode)
{
    if (f.kernel != KernelKind::canonical && f.kernel != KernelKind::residual)
        throw ParameterError("mode extraction needs a canonical sample");
    if (mode.n < 1 || mode.n > f.truncation_N ||
        f.sin_coeffs.size() != static_cast<std::size_t>(f.truncation_N))
        throw OutOfRangeError("mode " + std::to_string(mode.n) + " beyond truncation " +
                              std::to_string(f.truncation_N));
}

double mode_shape(const GridSpec& grid, Mode mode, std::size_t j)
{
    const std::size_t k = (static_cast<std::size_t>(mode.n) * j) % grid.M;
    const double t = grid.spacing() * static_cast<double>(k);
    return mode.part == Mode::Part::sin ? std::sin(t) : std::cos(t);
}

}  // namespace

std::pair<double, FieldSample> split_mode(const FieldSample& sample, Mode mode)
{
    check_mode(sample, mode);
    FieldSample r = sample;
    const double coef = mode_slot(r, mode);
    const double scale = 1.0 / std::sqrt(static_cast<double>(mode.n));
    for (std::size_t j = 0; j < r.grid.M; ++j) {
        const double e = mode_shape(r.grid, mode, j);
        r.values[j] -= coef * scale * e;
        r.variance[j] -= e * e / mode.n;
    }
    mode_slot(r, mode) = 0.0;
    r.kernel = KernelKind::residual;
    return {coef, std::move(r)};
}

FieldSample add_mode(const FieldSample& residual, Mode mode, double coefficient)
{
    check_mode(residual, mode);
    FieldSample f = residual;
    const double scale = 1.0 / std::sqrt(static_cast<double>(mode.n));
    for (std::size_t j = 0; j < f.grid.M; ++j) {
        const double e = mode_shape(f.grid, mode, j);
        f.values[j] += coefficient * scale * e;
        f.variance[j] += e * e / mode.n;
    }
    mode_slot(f, mode) = coefficient;
    return f;
}

std::string serialize_row(const FieldSample& s)
{
    std::ostringstream os;
    os << s.grid.M << ' ' << s.truncation_N << ' ' << to_string(s.kernel);
    char buf[32];
    for (double v : s.values) {
        auto res = std::to_chars(buf, buf + sizeof buf, v);
        os << ' ' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    return os.str();
}

FieldSample parse_row(const std::string& row)
{
    std::istringstream is(row);
    std::size_t M = 0;
    int N = 0;
    std::string kind;
    if (!(is >> M >> N >> kind))
        throw ParameterError("malformed field row header");
    FieldSample f;
    f.kernel = kernel_kind_from_string(kind);
    f.grid = f.kernel == KernelKind::exact_scaling ? GridSpec::interval(M) : GridSpec::circle(M);
    f.truncation_N = N;
    f.values.resize(M);
    for (std::size_t j = 0; j < M; ++j) {
        std::string tok;
        if (!(is >> tok))
            throw ParameterError("field row has fewer than M values");
        auto res = std::from_chars(tok.data(), tok.data() + tok.size(), f.values[j]);
        if (res.ec != std::errc())
            throw ParameterError("bad value in field row: " + tok);
    }
    if (f.kernel == KernelKind::canonical)
        f.variance.assign(M, harmonic_number(N));
    return f;
}

}  // namespace gmc
