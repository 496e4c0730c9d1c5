#include "oqw/analytics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace oqw {

namespace {

constexpr double kPi = std::numbers::pi;
const Cx kI(0.0, 1.0);

// exp(i theta (e^{ia} m + e^{-ia} m^H)) for a 2x2 block m with one
// unit-modulus entry off the diagonal: the Hermitian part squares to the
// identity, so the exponential is cos(theta) I + i sin(theta) H.
Eigen::Matrix2cd expi_block(const Eigen::Matrix2cd& m, const WalkParams& p) {
    Eigen::Matrix2cd h = std::polar(1.0, p.alpha) * m +
                         std::polar(1.0, -p.alpha) * m.adjoint();
    return std::cos(p.theta) * Eigen::Matrix2cd::Identity() +
           kI * std::sin(p.theta) * h;
}

}  // namespace

Eigen::Matrix2cd reduced_adjacency_line1(double k, int sign) {
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
    if (sign >= 0)
        a(0, 1) = std::polar(1.0, -k);
    else
        a(1, 0) = std::polar(1.0, -k);
    return a;
}

Eigen::Matrix2cd reduced_adjacency_line2(double k, int sign) {
    Eigen::Matrix2cd a = Eigen::Matrix2cd::Zero();
    a(0, 1) = std::polar(1.0, sign >= 0 ? -k : k);
    return a;
}

Eigen::Matrix2cd reduced_u_line1(double k, const WalkParams& p) {
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const Cx off = kI * std::sin(2 * p.theta) * std::cos(k - p.alpha);
    Eigen::Matrix2cd u;
    u << c2 - s2 * std::polar(1.0, 2 * (k - p.alpha)), off,
         off, c2 - s2 * std::polar(1.0, -2 * (k - p.alpha));
    return u;
}

Eigen::Matrix2cd reduced_u_line2(double k, const WalkParams& p) {
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const double f = std::sin(2 * p.theta) * std::cos(k);
    Eigen::Matrix2cd u;
    u << c2 - s2 * std::polar(1.0, 2 * k), kI * f * std::polar(1.0, p.alpha),
         kI * f * std::polar(1.0, -p.alpha), c2 - s2 * std::polar(1.0, -2 * k);
    return u;
}

Eigen::Matrix2cd reduced_u_line(LineModel model, double k, const WalkParams& p) {
    return model == LineModel::line1 ? reduced_u_line1(k, p) : reduced_u_line2(k, p);
}

Eigen::Matrix2cd reduced_u_lattice(int k, int l, int n, const WalkParams& p) {
    if (n <= 1) throw std::invalid_argument("lattice requires n > 1");
    if (k < 0 || k >= 2 * n || l < 0 || l >= 2 * n)
        throw std::invalid_argument("momentum indices must lie in [0, 2n)");
    const double kt = kPi * k / n, lt = kPi * l / n;

    auto ax = [kt](int s) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(0, 1) = std::polar(1.0, s * kt);
        return m;
    };
    auto ay = [lt](int s) {
        Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
        m(1, 0) = std::polar(1.0, s * lt);
        return m;
    };
    // exactly the block the assembled torus step conjugates to in the
    // Fourier-pair basis (no extra global phase; at theta = 0 this is I)
    return expi_block(ay(-1), p) * expi_block(ax(-1), p) * expi_block(ay(+1), p) *
           expi_block(ax(+1), p);
}

double dispersion(LineModel model, double k, const WalkParams& p) {
    const double kk = model == LineModel::line1 ? k - p.alpha : k;
    const double c2 = std::cos(p.theta) * std::cos(p.theta);
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    double rhs = c2 - s2 * std::cos(2 * kk);
    // analytically a convex combination of cos values, so inside [-1, 1];
    // anything beyond rounding slop would mean a broken formula
    if (std::abs(rhs) > 1.0 + 1e-12)
        throw std::runtime_error("dispersion rhs escaped [-1,1]: " + std::to_string(rhs));
    rhs = std::clamp(rhs, -1.0, 1.0);
    return std::acos(rhs);
}

namespace {

constexpr double kDegenerateSinLambda = 1e-6;

// Numeric fallback: eigenvectors of the 2x2 unitary, labeled so that
// plus matches e^{+i lambda}. Used at (near-)degenerate points and where the
// closed form's normalizer collapses (sin2theta cos(k-alpha) = 0).
void numeric_vectors(const Eigen::Matrix2cd& u, double lambda, Eigen::Vector2cd& plus,
                     Eigen::Vector2cd& minus) {
    Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(u);
    if (es.info() != Eigen::Success) throw std::runtime_error("2x2 eigensolve failed");
    const Cx ep = std::polar(1.0, lambda);
    Eigen::Vector2cd v0 = es.eigenvectors().col(0), v1 = es.eigenvectors().col(1);
    bool first_is_plus =
        std::abs(es.eigenvalues()(0) - ep) <= std::abs(es.eigenvalues()(1) - ep);
    plus = first_is_plus ? v0 : v1;
    minus = first_is_plus ? v1 : v0;
    // distinct eigenvalues of a unitary give orthogonal vectors already; at a
    // true degeneracy orthonormalize explicitly so any basis handed out is clean
    minus -= plus.dot(minus) * plus;
    double nm = minus.norm();
    if (nm < 1e-12) {
        // fully collapsed (u = phase * I): complete to a basis by hand
        minus = Eigen::Vector2cd(-std::conj(plus(1)), std::conj(plus(0)));
    } else {
        minus /= nm;
    }
    plus.normalize();
}

}  // namespace

Eigenpair eigenpair(LineModel model, double k, const WalkParams& p) {
    const double kk = model == LineModel::line1 ? k - p.alpha : k;
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const Cx up_phase = model == LineModel::line1 ? Cx(1, 0) : std::polar(1.0, p.alpha);

    Eigenpair out;
    out.lambda = dispersion(model, k, p);
    const double sl = std::sin(out.lambda);
    out.c_plus = 2 * sl * (sl + s2 * std::sin(2 * kk));
    out.c_minus = 2 * sl * (sl - s2 * std::sin(2 * kk));

    const double top = std::sin(2 * p.theta) * std::cos(kk);
    const bool closed_form_ok =
        std::abs(sl) >= kDegenerateSinLambda &&
        std::min(out.c_plus, out.c_minus) > 1e-9 * std::max(1.0, std::abs(top));

    if (!closed_form_ok) {
        out.degenerate = std::abs(sl) < kDegenerateSinLambda;
        numeric_vectors(reduced_u_line(model, k, p), out.lambda, out.plus_vector,
                        out.minus_vector);
        return out;
    }

    out.plus_vector << up_phase * top, Cx(s2 * std::sin(2 * kk) + sl, 0);
    out.plus_vector /= std::sqrt(out.c_plus);
    out.minus_vector << up_phase * top, Cx(s2 * std::sin(2 * kk) - sl, 0);
    out.minus_vector /= std::sqrt(out.c_minus);
    // C± already makes these unit vectors analytically; this only strips the
    // last-digit float drift so callers can rely on exact normalization
    out.plus_vector.normalize();
    out.minus_vector.normalize();
    return out;
}

void fourier_pair_line(int half_window, int j, Eigen::VectorXcd& psi0, Eigen::VectorXcd& psi1) {
    const int m = half_window, n = 2 * m;
    const double k = kPi * j / m;
    const double scale = 1.0 / std::sqrt(static_cast<double>(m));
    psi0 = Eigen::VectorXcd::Zero(n);
    psi1 = Eigen::VectorXcd::Zero(n);
    for (int i = 0; i < n; ++i) {
        const int x = line_position(i, m);
        const Cx ph = std::polar(scale, -x * k);
        if (((x % 2) + 2) % 2 == 0)
            psi0(i) = ph;
        else
            psi1(i) = ph;
    }
}

void fourier_pair_lattice(int n, int k, int l, Eigen::VectorXcd& psi0, Eigen::VectorXcd& psi1) {
    const int side = 2 * n;
    const double kt = kPi * k / n, lt = kPi * l / n;
    const double scale = 1.0 / (std::sqrt(2.0) * n);
    psi0 = Eigen::VectorXcd::Zero(side * side);
    psi1 = Eigen::VectorXcd::Zero(side * side);
    for (int y = 0; y < side; ++y) {
        for (int x = 0; x < side; ++x) {
            const Cx ph = std::polar(scale, x * kt + y * lt);
            if ((x + y) % 2 == 0)
                psi0(side * y + x) = ph;
            else
                psi1(side * y + x) = ph;
        }
    }
}

FullEigenvector full_eigenvector(int half_window, double k, int sign, const WalkParams& p) {
    const int m = half_window;
    if (m < 2) throw std::invalid_argument("half-window must be >= 2");
    const double step = kPi / m;
    const long j = std::lround(k / step);
    if (std::abs(k - j * step) > 1e-9)
        throw std::invalid_argument("k must be quantized to pi*j/M on the 2M-cycle");
    const int jm = static_cast<int>(((j % (2 * m)) + 2 * m) % (2 * m));

    FullEigenvector out;
    out.lambda = dispersion(LineModel::line1, k, p);
    const double sl = std::sin(out.lambda);
    if (std::abs(sl) < kDegenerateSinLambda) {
        out.degenerate = true;  // any basis vector is an eigenvector here
        return out;
    }

    const double kk = k - p.alpha;
    const double s2 = std::sin(p.theta) * std::sin(p.theta);
    const double c = sign >= 0 ? 2 * sl * (sl + s2 * std::sin(2 * kk))
                               : 2 * sl * (sl - s2 * std::sin(2 * kk));
    if (c <= 1e-12)
        throw std::invalid_argument("eigenvector normalizer collapsed at this (k, alpha, theta)");

    Eigen::VectorXcd psi0, psi1;
    fourier_pair_line(m, jm, psi0, psi1);
    Eigen::VectorXcd v =
        (std::sin(2 * p.theta) * std::cos(kk) * psi0 +
         (s2 * std::sin(2 * kk) + (sign >= 0 ? sl : -sl)) * psi1) /
        std::sqrt(c);

    out.vector.amp.assign(v.data(), v.data() + v.size());
    return out;
}

double asymptotic_mean_line1(Cx a, Cx b, const WalkParams& p) {
    const double nrm = std::norm(a) + std::norm(b);
    if (std::abs(nrm - 1.0) > 1e-10)
        throw std::invalid_argument("initial amplitudes not normalized: |a|^2+|b|^2 = " +
                                    std::to_string(nrm));
    const double first = 2 * (std::norm(a) - std::norm(b)) * (1 - std::cos(p.theta));
    const Cx z = std::conj(a) * b * std::polar(1.0, p.alpha);
    const Cx combo = kI * (z - std::conj(z));  // i(z - conj z) = -2 Im z, real
    if (std::abs(combo.imag()) > 1e-14)
        throw std::runtime_error("imaginary residue in the mean-rate formula");
    return first + std::sin(2 * p.theta) * combo.real() / (1 + std::abs(std::cos(p.theta)));
}

double asymptotic_second_moment(const WalkParams& p) {
    return 4 * (1 - std::abs(std::cos(p.theta)));
}

namespace {

// golden-section maximization of f on [lo, hi]
template <typename F>
double golden_max(F f, double lo, double hi, double tol) {
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a), d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

TransportOptimum optimize_line_transport(Cx a, Cx b) {
    const double nrm = std::sqrt(std::norm(a) + std::norm(b));
    if (std::abs(nrm - 1.0) > 1e-10)
        throw std::invalid_argument("initial amplitudes not normalized");

    auto objective = [a, b](double alpha, double theta) {
        WalkParams p{alpha, theta};
        return std::abs(asymptotic_mean_line1(a, b, p));
    };

    // dense grid over [0, 2pi) x [0, pi] (theta endpoint included: the
    // |a| != |b| optimum sits at theta = pi)
    const int grid = 720;
    const double da = 2 * kPi / grid, dt = kPi / (grid - 1);
    double best_a = 0.0, best_t = 0.0, best = -1.0;
    for (int i = 0; i < grid; ++i) {
        const double alpha = i * da;
        for (int j = 0; j < grid; ++j) {
            const double theta = j * dt;
            const double v = objective(alpha, theta);
            if (v > best) {
                best = v;
                best_a = alpha;
                best_t = theta;
            }
        }
    }

    // alternate 1-d golden-section refinements around the grid winner; the
    // objective is smooth so a few rounds reach well past 1e-6
    for (int round = 0; round < 4; ++round) {
        const double ta = std::max(0.0, best_t - dt), tb = std::min(kPi, best_t + dt);
        best_t = golden_max([&](double th) { return objective(best_a, th); }, ta, tb, 1e-12);
        const double aa = best_a - da, ab = best_a + da;  // fine to leave [0, 2pi)
        best_a = golden_max([&](double al) { return objective(al, best_t); }, aa, ab, 1e-12);
    }

    TransportOptimum opt;
    opt.alpha = best_a;
    opt.theta = best_t;
    opt.rate = asymptotic_mean_line1(a, b, WalkParams{best_a, best_t});
    return opt;
}

}  // namespace oqw
