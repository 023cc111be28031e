#include "gmc/decomp.hpp"

#include "gmc/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace gmc {

namespace {

double psd_tol(const Eigen::MatrixXd& K)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    return 1e-8 * std::max(1.0, es.eigenvalues().maxCoeff());
}

double min_eig(const Eigen::MatrixXd& K)
{
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

int degree_of(const Eigen::MatrixXd& g)
{
    int deg = 0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = 0; j < g.cols(); ++j)
            if (g(i, j) != 0.0)
                deg = std::max({deg, trig_degree_of_index(static_cast<std::size_t>(i)),
                                trig_degree_of_index(static_cast<std::size_t>(j))});
    return deg;
}

}  // namespace

Eigen::MatrixXd OperatorGrid::covariance() const
{
    Eigen::MatrixXd K = A;
    K.diagonal() += C;
    return K;
}

OperatorGrid build_operators(const Eigen::MatrixXd& g, int D)
{
    if (g.rows() != g.cols() || g.rows() % 2 == 0)
        throw ParameterError("g needs a square (2d+1) coefficient matrix");
    if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw ParameterError("g must be symmetric");
    const int gdeg = degree_of(g);
    if (D < gdeg + 2)
        throw ParameterError("cutoff D must be at least deg(g) + 2 = " + std::to_string(gdeg + 2));

    OperatorGrid op;
    op.D = D;
    const Eigen::Index n = 2 * D + 1;
    op.C = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 1; i < n; ++i)
        op.C[i] = 1.0 / trig_degree_of_index(static_cast<std::size_t>(i));
    op.C1 = op.C;
    op.C1[0] = 1.0;
    op.A = Eigen::MatrixXd::Zero(n, n);
    op.A.topLeftCorner(g.rows(), g.cols()) = g;

    const Eigen::VectorXd s = op.C1.cwiseSqrt().cwiseInverse();
    op.T = s.asDiagonal() * op.A * s.asDiagonal();
    op.T = 0.5 * (op.T + op.T.transpose());

    const Eigen::MatrixXd K = op.covariance();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> kes(K, Eigen::EigenvaluesOnly);
    const double tol = 1e-8 * std::max(1.0, kes.eigenvalues().maxCoeff());
    if (kes.eigenvalues().minCoeff() < -tol)
        throw InvalidKernelError("C + A has eigenvalue " +
                                 std::to_string(kes.eigenvalues().minCoeff()) + " < -tol_psd");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes(op.T);
    op.T_eigenvalues = tes.eigenvalues();
    op.T_eigenvectors = tes.eigenvectors();

    // Smoothness of g: W^{2,2} weights (1 + a^2 + b^2)^2 on the coefficient
    // of degrees (a, b). A finite matrix is always summable, so only flag a
    // spectrum whose top shell dominates.
    if (gdeg >= 2) {
        double total = 0.0, top = 0.0;
        for (Eigen::Index i = 0; i < g.rows(); ++i)
            for (Eigen::Index j = 0; j < g.cols(); ++j) {
                const int a = trig_degree_of_index(static_cast<std::size_t>(i));
                const int b = trig_degree_of_index(static_cast<std::size_t>(j));
                const double w = std::pow(1.0 + a * a + b * b, 2) * g(i, j) * g(i, j);
                total += w;
                if (std::max(a, b) == gdeg)
                    top += w;
            }
        if (total > 0.0 && top > 0.5 * total)
            op.warnings.push_back("g coefficients do not decay: top degree carries " +
                                  std::to_string(top / total) + " of the W^{2,2} norm");
    }
    return op;
}

std::vector<Eigen::VectorXd> deficiency_constraints(const OperatorGrid& op, double tol_eig)
{
    std::vector<Eigen::VectorXd> out;
    const Eigen::VectorXd s = op.C1.cwiseSqrt().cwiseInverse();
    for (Eigen::Index i = 0; i < op.T_eigenvalues.size(); ++i) {
        const double gap = std::abs(op.T_eigenvalues[i] + 1.0);
        if (gap <= tol_eig)
            out.push_back(s.asDiagonal() * op.T_eigenvectors.col(i));
        else if (gap <= 10.0 * tol_eig)
            throw AmbiguousDeficiencyError("eigenvalue " + std::to_string(op.T_eigenvalues[i]) +
                                           " straddles the -1 detection window");
    }
    return out;
}

Eigen::MatrixXd covariance_kernel(const OperatorGrid& op)
{
    const Eigen::MatrixXd K = op.covariance();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(K);
    const double tol = 1e-10 * std::max(1.0, es.eigenvalues().maxCoeff());
    std::vector<Eigen::Index> cols;
    for (Eigen::Index i = 0; i < K.rows(); ++i)
        if (es.eigenvalues()[i] <= tol)
            cols.push_back(i);
    Eigen::MatrixXd B(K.rows(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t c = 0; c < cols.size(); ++c)
        B.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(cols[c]);
    return B;
}

double largest_psd_eps(const Eigen::MatrixXd& K, const Eigen::VectorXd& f)
{
    const double tol = psd_tol(K);
    auto ok = [&](double eps) { return min_eig(K - eps * f * f.transpose()) >= -tol; };
    double lo = 0.0, hi = 1.0;
    while (ok(hi)) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e15)
            throw ParameterError("f lies in the kernel of the covariance");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-13 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (ok(mid) ? lo : hi) = mid;
    }
    return lo;
}

TrigPoly PerturbFunctions::effective1() const
{
    auto c = f1.coeffs();
    for (double& v : c)
        v *= std::sqrt(0.5 * eps1);
    return TrigPoly(c);
}

TrigPoly PerturbFunctions::effective2() const
{
    auto c = f2.coeffs();
    for (double& v : c)
        v *= std::sqrt(0.5 * eps2);
    return TrigPoly(c);
}

double PerturbFunctions::effective_A_inf(const GridSpec& grid) const
{
    const auto a = effective1().on_grid(grid), b = effective2().on_grid(grid);
    double m = INFINITY;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::min(m, a[j] * a[j] + b[j] * b[j]);
    return m;
}

double PerturbFunctions::effective_sup(const GridSpec& grid) const
{
    const auto a = effective1().on_grid(grid), b = effective2().on_grid(grid);
    double m = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        m = std::max(m, std::sqrt(a[j] * a[j] + b[j] * b[j]));
    return m;
}

namespace {

// Min over grid rows of base + (G c)^2 / |c|^2.
double objective(const Eigen::VectorXd& base, const Eigen::MatrixXd& G, const Eigen::VectorXd& c)
{
    const Eigen::VectorXd v = G * c;
    const double n2 = c.squaredNorm();
    return (base.array() + v.array().square() / n2).minCoeff();
}

Eigen::VectorXd coordinate_ascent(const Eigen::VectorXd& base, const Eigen::MatrixXd& G,
                                  Eigen::VectorXd c)
{
    c.normalize();
    double best = objective(base, G, c);
    double step = 0.5;
    for (int sweep = 0; sweep < 200 && step > 1e-7; ++sweep) {
        bool improved = false;
        for (Eigen::Index i = 0; i < c.size(); ++i) {
            for (double t : {step, -step}) {
                Eigen::VectorXd trial = c;
                trial[i] += t;
                if (trial.norm() < 1e-12)
                    continue;
                trial.normalize();
                const double v = objective(base, G, trial);
                if (v > best) {
                    best = v;
                    c = trial;
                    improved = true;
                }
            }
        }
        if (!improved)
            step *= 0.5;
    }
    return c;
}

}  // namespace

PerturbFunctions find_f1_f2(const OperatorGrid& op, const std::vector<Eigen::VectorXd>& constraints,
                            int D, const GridSpec& grid)
{
    const int l = static_cast<int>(constraints.size());
    if (D < l + 2)
        throw DegreeTooSmallError("degree must be at least l + 2 = " + std::to_string(l + 2));
    if (D > op.D)
        throw ParameterError("degree of f exceeds the operator cutoff");
    const Eigen::Index n = 2 * D + 1;
    const Eigen::Index nop = op.dimension();

    // Constraint rows: the deficiency vectors plus ker(C + A), restricted to
    // the first 2D+1 coefficients.
    const Eigen::MatrixXd ker = covariance_kernel(op);
    Eigen::MatrixXd rows(static_cast<Eigen::Index>(constraints.size()) + ker.cols(), n);
    Eigen::Index r = 0;
    for (const auto& psi : constraints)
        rows.row(r++) = psi.head(n).transpose();
    for (Eigen::Index k = 0; k < ker.cols(); ++k)
        rows.row(r++) = ker.col(k).head(n).transpose();

    Eigen::MatrixXd null;
    if (rows.rows() == 0) {
        null = Eigen::MatrixXd::Identity(n, n);
    } else {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(rows, Eigen::ComputeFullV);
        const double tol = 1e-10 * std::max(1.0, svd.singularValues().maxCoeff());
        Eigen::Index rank = 0;
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()[i] > tol)
                ++rank;
        null = svd.matrixV().rightCols(n - rank);
    }
    if (null.cols() < 2)
        throw DegreeTooSmallError("constraint null space has dimension " +
                                  std::to_string(null.cols()) + " at degree " + std::to_string(D));

    const Eigen::MatrixXd P = null * null.transpose();
    Eigen::VectorXd f1;
    for (Eigen::Index i = 1; i < n; ++i) {
        const Eigen::VectorXd p = P.col(i);
        if (p.norm() > 1e-6) {
            f1 = p.normalized();
            break;
        }
    }

    Eigen::MatrixXd E(grid.M, n);
    for (std::size_t j = 0; j < grid.M; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            E(static_cast<Eigen::Index>(j), i) = trig_basis(static_cast<std::size_t>(i), grid.point(j));

    const Eigen::VectorXd base = (E * f1).array().square();
    const Eigen::MatrixXd G = E * null;

    Rng rng(0x5eed);
    Eigen::VectorXd best_c;
    double best = -1.0;
    for (int restart = 0; restart < 8; ++restart) {
        Eigen::VectorXd c0(null.cols());
        if (restart == 0 && n > 2) {
            // Start from the projection of cos(t), the optimum when nothing is constrained.
            c0 = null.transpose() * Eigen::VectorXd::Unit(n, 2);
        }
        if (restart > 0 || c0.norm() < 1e-6)
            for (Eigen::Index i = 0; i < c0.size(); ++i)
                c0[i] = rng.normal();
        const Eigen::VectorXd c = coordinate_ascent(base, G, c0);
        const double v = objective(base, G, c);
        if (v > best) {
            best = v;
            best_c = c;
        }
    }
    const Eigen::VectorXd f2 = (null * best_c).normalized();

    PerturbFunctions pf;
    pf.f1 = TrigPoly(std::vector<double>(f1.data(), f1.data() + n));
    pf.f2 = TrigPoly(std::vector<double>(f2.data(), f2.data() + n));
    pf.A_inf = ((E * f1).array().square() + (E * f2).array().square()).minCoeff();
    if (!(pf.A_inf > 1e-8))
        throw CommonZeroError("f1 and f2 share a zero at degree " + std::to_string(D) +
                              "; retry with a larger degree");

    const Eigen::MatrixXd K = op.covariance();
    Eigen::VectorXd F1 = Eigen::VectorXd::Zero(nop), F2 = Eigen::VectorXd::Zero(nop);
    F1.head(n) = f1;
    F2.head(n) = f2;
    pf.eps1 = largest_psd_eps(K, F1);
    pf.eps2 = largest_psd_eps(K, F2);
    pf.residual = K - 0.5 * pf.eps1 * F1 * F1.transpose() - 0.5 * pf.eps2 * F2 * F2.transpose();
    pf.residual = 0.5 * (pf.residual + pf.residual.transpose());
    pf.residual_min_eig = min_eig(pf.residual);
    return pf;
}

DecomposedSampler::DecomposedSampler(const OperatorGrid& op, const PerturbFunctions& pf, int N,
                                     const GridSpec& grid)
    : grid_(grid), N_(N), D_(op.D), residual_(pf.residual, false)
{
    if (grid.domain != Domain::circle)
        throw ParameterError("decomposed sampling lives on the circle");
    if (N < op.D)
        throw ParameterError("truncation must cover the operator cutoff");
    if (2 * static_cast<std::size_t>(N) > grid.M)
        throw AliasingError("truncation exceeds M/2");
    const Eigen::Index n = op.dimension();
    basis_.resize(static_cast<Eigen::Index>(grid.M), n);
    for (std::size_t j = 0; j < grid.M; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            basis_(static_cast<Eigen::Index>(j), i) =
                trig_basis(static_cast<std::size_t>(i), grid.point(j));
    fh1_ = pf.effective1().on_grid(grid);
    fh2_ = pf.effective2().on_grid(grid);
    tail_variance_ = harmonic_number(N) - harmonic_number(op.D);
    const Eigen::VectorXd low = (basis_ * residual_.factor()).rowwise().squaredNorm();
    variance_.resize(grid.M);
    for (std::size_t j = 0; j < grid.M; ++j)
        variance_[j] = low[static_cast<Eigen::Index>(j)] + tail_variance_;
}

DecomposedSampler::Draw DecomposedSampler::sample(Rng& rng) const
{
    Draw d;
    d.V1 = rng.normal();
    d.V2 = rng.normal();
    const std::vector<double> eta = residual_.draw(rng);
    const Eigen::VectorXd low =
        basis_ * Eigen::Map<const Eigen::VectorXd>(eta.data(), static_cast<Eigen::Index>(eta.size()));

    // Canonical modes above the cutoff.
    std::vector<double> a(static_cast<std::size_t>(N_), 0.0), b(static_cast<std::size_t>(N_), 0.0);
    for (int k = D_ + 1; k <= N_; ++k) {
        const double s = 1.0 / std::sqrt(static_cast<double>(k));
        a[static_cast<std::size_t>(k - 1)] = s * rng.normal();
        b[static_cast<std::size_t>(k - 1)] = s * rng.normal();
    }
    std::vector<double> high(grid_.M);
    kernels::parallel::synthesize_trig(a, b, grid_.M, high.data());

    FieldSample& res = d.residual;
    res.grid = grid_;
    res.truncation_N = N_;
    res.kernel = KernelKind::perturbed;
    res.values.resize(grid_.M);
    res.variance.resize(grid_.M);
    res.variance = variance_;
    for (std::size_t j = 0; j < grid_.M; ++j)
        res.values[j] = low[static_cast<Eigen::Index>(j)] + high[j];
    d.full = res;
    for (std::size_t j = 0; j < grid_.M; ++j) {
        d.full.values[j] += d.V1 * fh1_[j] + d.V2 * fh2_[j];
        d.full.variance[j] += fh1_[j] * fh1_[j] + fh2_[j] * fh2_[j];
    }
    return d;
}

UFunction::UFunction(std::vector<double> a, std::vector<double> b1, std::vector<double> b2)
    : a_(std::move(a)), b1_(std::move(b1)), b2_(std::move(b2))
{
    if (a_.size() != b1_.size() || a_.size() != b2_.size())
        throw ParameterError("u needs matching coefficient arrays");
    for (double v : a_)
        if (!(v >= 0.0))
            throw ParameterError("u needs nonnegative weights");
}

double UFunction::operator()(double y1, double y2) const
{
    double s = 0.0;
    for (std::size_t j = 0; j < a_.size(); ++j)
        s += a_[j] * std::exp(y1 * b1_[j] + y2 * b2_[j]);
    return s;
}

UFunction::Derivatives UFunction::derivatives(double y1, double y2) const
{
    Derivatives d{0, 0, 0, 0, 0, 0};
    for (std::size_t j = 0; j < a_.size(); ++j) {
        const double t = a_[j] * std::exp(y1 * b1_[j] + y2 * b2_[j]);
        d.u += t;
        d.u1 += t * b1_[j];
        d.u2 += t * b2_[j];
        d.u11 += t * b1_[j] * b1_[j];
        d.u12 += t * b1_[j] * b2_[j];
        d.u22 += t * b2_[j] * b2_[j];
    }
    return d;
}

UFunction build_u(const ChaosMeasure& residual, cplx z, const PerturbFunctions& pf, double gamma)
{
    check_disc_point(z);
    const GridSpec& grid = residual.grid();
    const auto f1 = pf.effective1().on_grid(grid);
    const auto f2 = pf.effective2().on_grid(grid);
    std::vector<double> a(grid.M), b1(grid.M), b2(grid.M);
    const double one_minus = 1.0 - std::norm(z);
    for (std::size_t j = 0; j < grid.M; ++j) {
        const double t = grid.point(j);
        const double poisson = one_minus / std::norm(cplx(std::cos(t), std::sin(t)) - z);
        a[j] = residual.weights()[j] * poisson *
               std::exp(-0.5 * gamma * gamma * (f1[j] * f1[j] + f2[j] * f2[j]));
        b1[j] = gamma * f1[j];
        b2[j] = gamma * f2[j];
    }
    return UFunction(std::move(a), std::move(b1), std::move(b2));
}

double singular_integral(const UFunction& u, double gamma, double box, int n)
{
    if (n < 2 || !(box > 0.0))
        throw ParameterError("singular integral needs n >= 2 and a positive box");
    const double h = 2.0 * box / n;
    double acc = 0.0;
#pragma omp parallel for reduction(+ : acc) schedule(static)
    for (int i = 0; i < n; ++i) {
        const double y1 = -box + (i + 0.5) * h;
        for (int j = 0; j < n; ++j) {
            const double y2 = -box + (j + 0.5) * h;
            const double v = u(y1, y2);
            acc += std::log1p(4.0 * v / ((v - 1.0) * (v - 1.0))) *
                   std::exp(-0.5 * gamma * gamma * (y1 * y1 + y2 * y2));
        }
    }
    return acc * h * h / (2.0 * std::numbers::pi);
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Max of u on the circle |y - c| = r: dense sampling, then golden-section
// refinement around the best sample (and the min likewise with sign = -1).
double circle_extreme(const UFunction& u, double c1, double c2, double r, double sign)
{
    const int n = 256;
    auto at = [&](double t) { return sign * u(c1 + r * std::cos(t), c2 + r * std::sin(t)); };
    int best = 0;
    double bv = at(0.0);
    for (int i = 1; i < n; ++i) {
        const double v = at(kTwoPi * i / n);
        if (v > bv) {
            bv = v;
            best = i;
        }
    }
    double lo = kTwoPi * (best - 1) / n, hi = kTwoPi * (best + 1) / n;
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
    double f1 = at(x1), f2 = at(x2);
    for (int it = 0; it < 60; ++it) {
        if (f1 > f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = at(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = at(x2);
        }
    }
    return sign * std::max({bv, f1, f2});
}

// Min of the convex u over the closed ball: damped Newton for the free
// minimizer, the boundary minimum when it lies outside.
double ball_min(const UFunction& u, double c1, double c2, double r)
{
    double y1 = c1, y2 = c2;
    double val = u(y1, y2);
    for (int it = 0; it < 100; ++it) {
        const auto d = u.derivatives(y1, y2);
        const double det = d.u11 * d.u22 - d.u12 * d.u12;
        if (!(det > 0.0))
            break;
        const double s1 = (d.u22 * d.u1 - d.u12 * d.u2) / det;
        const double s2 = (d.u11 * d.u2 - d.u12 * d.u1) / det;
        double t = 1.0;
        bool moved = false;
        for (int k = 0; k < 40; ++k, t *= 0.5) {
            const double n1 = y1 - t * s1, n2 = y2 - t * s2;
            const double nv = u(n1, n2);
            if (nv < val) {
                y1 = n1;
                y2 = n2;
                val = nv;
                moved = true;
                break;
            }
        }
        if (!moved || std::hypot(s1, s2) * t < 1e-14)
            break;
    }
    double interior = INFINITY;
    if (std::hypot(y1 - c1, y2 - c2) <= r)
        interior = val;
    return std::min(interior, circle_extreme(u, c1, c2, r, -1.0));
}

}  // namespace

HypothesisReport check_hypotheses(const UFunction& u, double kappa, double K,
                                  const HypothesisOptions& opt)
{
    HypothesisReport rep;
    for (double& m : rep.min_margin)
        m = INFINITY;
    auto record = [&](int idx, const char* name, double y1, double y2, double r, double lhs,
                      double rhs, double scale) {
        const double margin = (lhs - rhs) / scale;
        rep.min_margin[idx] = std::min(rep.min_margin[idx], margin);
        if (margin < -opt.slack) {
            rep.passed = false;
            rep.violations.push_back({name, y1, y2, r, lhs, rhs, margin});
        }
    };

    for (int i = 0; i < opt.grid; ++i)
        for (int j = 0; j < opt.grid; ++j) {
            const double y1 = -opt.box + 2.0 * opt.box * i / (opt.grid - 1);
            const double y2 = -opt.box + 2.0 * opt.box * j / (opt.grid - 1);
            const auto d = u.derivatives(y1, y2);
            const double tr = d.u11 + d.u22;
            const double disc = std::sqrt(0.25 * (d.u11 - d.u22) * (d.u11 - d.u22) + d.u12 * d.u12);
            const double lam = 0.5 * tr - disc;
            const double scale = std::max(d.u, 1e-300);
            record(0, "convexity", y1, y2, 0.0, lam, 0.0, std::max(std::abs(tr), 1e-300));
            record(1, "laplacian", y1, y2, 0.0, tr, kappa * d.u, scale);
            record(2, "gradient", y1, y2, 0.0, K * d.u, std::hypot(d.u1, d.u2), scale);
            ++rep.points;
        }

    Rng rng(opt.seed);
    for (int b = 0; b < opt.balls; ++b) {
        const double c1 = rng.uniform(-opt.box, opt.box);
        const double c2 = rng.uniform(-opt.box, opt.box);
        double r = rng.uniform();
        if (r == 0.0)
            r = 1.0;
        const double Mx = circle_extreme(u, c1, c2, r, 1.0);
        const double mn = ball_min(u, c1, c2, r);
        record(3, "ball", c1, c2, r, Mx, (1.0 + 0.25 * kappa * r * r) * mn, std::max(Mx, 1e-300));
        ++rep.balls;
    }
    return rep;
}

}  // namespace gmc
