#include "frobpencil/numeric/roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "frobpencil/error.hpp"

namespace frob::numeric {
namespace {

bool aberth(const Polynomial& p, std::vector<cplx>& z, const RootOptions& opts) {
    const int n = p.degree();
    const Polynomial dp = p.derivative();
    const double radius = p.root_scale() / 2.0;
    z.resize(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * kPi * k / n + 0.4;
        z[static_cast<std::size_t>(k)] = radius * cplx(std::cos(angle), std::sin(angle));
    }
    const double step_tol = 4e-16 * p.root_scale();
    for (int it = 0; it < opts.max_iterations; ++it) {
        double biggest = 0.0;
        for (int k = 0; k < n; ++k) {
            const cplx zk = z[static_cast<std::size_t>(k)];
            const cplx pk = p(zk);
            if (pk == cplx{}) continue;
            const cplx ratio = pk / dp(zk);
            cplx repulse{};
            for (int j = 0; j < n; ++j)
                if (j != k) repulse += 1.0 / (zk - z[static_cast<std::size_t>(j)]);
            const cplx step = ratio / (1.0 - ratio * repulse);
            if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) return false;
            z[static_cast<std::size_t>(k)] -= step;
            biggest = std::max(biggest, std::abs(step));
        }
        if (biggest <= step_tol) return true;
    }
    // Multiple roots converge only linearly; accept if residuals are small.
    const double scale = p.coefficient_scale() * std::pow(p.root_scale(), n);
    for (cplx r : z)
        if (std::abs(p(r)) > opts.tol * scale) return false;
    return true;
}

/// Taylor coefficients of p at c up to order m-1 are all negligible.
bool looks_multiple(const Polynomial& p, cplx c, int m, double radius, double tol) {
    const Polynomial shifted = p.taylor_shift(c);
    const double scale = std::abs(shifted.coefficient(m)) * std::pow(radius, m);
    double lower = 0.0;
    for (int j = 0; j < m; ++j) lower = std::max(lower, std::abs(shifted.coefficient(j)) * std::pow(radius, j));
    return lower <= tol * std::max(scale, 1e-300);
}

}  // namespace

std::vector<cplx> companion_roots(const Polynomial& p) {
    const int n = p.degree();
    if (n < 1) return {};
    ComplexMatrix c = ComplexMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) c(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) c(i, n - 1) = -p.coefficient(i) / p.leading();
    Eigen::ComplexEigenSolver<ComplexMatrix> es(c, false);
    if (es.info() != Eigen::Success) throw Error(ErrorKind::NonConvergence, "companion eigenvalue solve failed");
    std::vector<cplx> r(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
    return r;
}

std::vector<Root> poly_roots(const Polynomial& p, const RootOptions& opts) {
    if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "poly_roots of the zero polynomial");
    const int n = p.degree();
    if (n > opts.max_degree) throw Error(ErrorKind::InvalidModel, "degree exceeds root-finder cap");
    if (n == 0) return {};

    std::vector<cplx> z;
    if (!aberth(p, z, opts)) {
        z = companion_roots(p);
        const Polynomial dp = p.derivative();
        for (cplx& r : z)
            for (int it = 0; it < 5; ++it) {
                const cplx d = dp(r);
                if (d == cplx{}) break;
                r -= p(r) / d;
            }
        const double scale = p.coefficient_scale() * std::pow(p.root_scale(), n);
        for (cplx r : z)
            if (std::abs(p(r)) > 1e3 * opts.tol * scale)
                throw Error(ErrorKind::NonConvergence, "root iteration did not reach tolerance");
    }

    // Single-linkage clustering at the configured threshold.
    const double scale = p.root_scale();
    const double merge = opts.cluster_tol * scale;
    std::vector<int> label(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) label[i] = static_cast<int>(i);
    auto find = [&](int i) {
        while (label[static_cast<std::size_t>(i)] != i) i = label[static_cast<std::size_t>(i)];
        return i;
    };
    auto link = [&](double radius, bool check_multiplicity) {
        for (std::size_t i = 0; i < z.size(); ++i)
            for (std::size_t j = i + 1; j < z.size(); ++j) {
                const int a = find(static_cast<int>(i));
                const int b = find(static_cast<int>(j));
                if (a == b || std::abs(z[i] - z[j]) >= radius) continue;
                if (check_multiplicity) {
                    // Merge only if the joint centroid is a genuine multiple root.
                    cplx centroid{};
                    int m = 0;
                    for (std::size_t k = 0; k < z.size(); ++k) {
                        const int l = find(static_cast<int>(k));
                        if (l == a || l == b) {
                            centroid += z[k];
                            ++m;
                        }
                    }
                    centroid /= static_cast<double>(m);
                    if (!looks_multiple(p, centroid, m, radius, 1e-6)) continue;
                }
                label[static_cast<std::size_t>(b)] = a;
            }
    };
    link(merge, false);
    // Multiple roots split to roughly eps^(1/m); a wider pass catches them.
    link(1e-3 * scale, true);

    std::vector<Root> out;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (find(static_cast<int>(i)) != static_cast<int>(i)) continue;
        cplx sum{};
        int m = 0;
        for (std::size_t k = 0; k < z.size(); ++k)
            if (find(static_cast<int>(k)) == static_cast<int>(i)) {
                sum += z[k];
                ++m;
            }
        out.push_back({sum / static_cast<double>(m), m});
    }
    std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace frob::numeric
