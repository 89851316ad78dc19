#include "frobpencil/model/abelian_integral.hpp"

#include <algorithm>
#include <cmath>

#include "frobpencil/error.hpp"
#include "frobpencil/numeric/quadrature.hpp"

namespace frob::model {

using elliptic::Lattice;
using elliptic::WpCombination;
using numeric::LaurentSeries;
using numeric::Polynomial;

AbelianIntegral AbelianIntegral::genus0(int n, const std::vector<cplx>& lower) {
    if (n < 1) throw Error(ErrorKind::InvalidModel, "pole order n must be at least 1");
    if (static_cast<int>(lower.size()) != n - 1)
        throw Error(ErrorKind::InvalidModel, "genus 0 needs n-1 coefficients a_0..a_{n-2}");
    std::vector<cplx> c(lower);
    c.resize(static_cast<std::size_t>(n) + 1);
    c[static_cast<std::size_t>(n)] = 1.0;
    AbelianIntegral m;
    m.n_ = n;
    m.f0_ = Polynomial(c);
    return m;
}

AbelianIntegral AbelianIntegral::genus0(const Polynomial& f) {
    if (f.is_zero() || f.degree() < 1) throw Error(ErrorKind::InvalidModel, "f must have positive degree");
    if (!f.is_monic()) throw Error(ErrorKind::NotMonic, "f must be monic");
    const int n = f.degree();
    if (f.coefficient(n - 1) != cplx{}) throw Error(ErrorKind::InvalidModel, "the t^(n-1) coefficient must vanish");
    std::vector<cplx> lower(f.coefficients().begin(), f.coefficients().begin() + (n - 1));
    return genus0(n, lower);
}

AbelianIntegral AbelianIntegral::genus1(cplx tau, const std::vector<cplx>& gamma, cplx c0, cplx period_a,
                                        cplx period_b) {
    if (gamma.empty()) throw Error(ErrorKind::InvalidModel, "genus 1 needs n >= 2 (at least gamma_1)");
    if (gamma.back() == cplx{}) throw Error(ErrorKind::InvalidModel, "gamma_{n-1} must be nonzero");
    AbelianIntegral m;
    m.genus_ = 1;
    m.n_ = static_cast<int>(gamma.size()) + 1;
    Genus1Data d;
    d.lattice = elliptic::lattice_init(tau);
    std::tie(d.alpha, d.beta) = solve_leaf_coefficients(d.lattice, period_a, period_b);
    d.gamma = gamma;
    d.c0 = c0;
    d.period_a = period_a;
    d.period_b = period_b;
    m.g1_ = std::move(d);
    m.build_genus1();
    return m;
}

void AbelianIntegral::build_genus1() {
    const Genus1Data& d = *g1_;
    std::vector<cplx> coeffs{d.beta};
    coeffs.insert(coeffs.end(), d.gamma.begin(), d.gamma.end());
    omega1_ = WpCombination::of_derivatives(d.lattice, d.alpha, coeffs);
    omega1_prime_ = omega1_.derivative(d.lattice);
    fpart_ = WpCombination::of_derivatives(d.lattice, 0.0, d.gamma);
    f_base_ = 0.0;
    f_base_ = F(0.5 * (1.0 + d.lattice.tau));
}

std::vector<cplx> AbelianIntegral::chart() const {
    if (genus_ == 0) return {f0_.coefficients().begin(), f0_.coefficients().begin() + (n_ - 1)};
    std::vector<cplx> c{g1_->lattice.tau};
    c.insert(c.end(), g1_->gamma.begin(), g1_->gamma.end());
    c.push_back(g1_->c0);
    return c;
}

AbelianIntegral AbelianIntegral::with_chart(const std::vector<cplx>& chart) const {
    if (static_cast<int>(chart.size()) != chart_dimension())
        throw Error(ErrorKind::InvalidModel, "chart vector has the wrong dimension");
    if (genus_ == 0) return genus0(n_, chart);
    const std::vector<cplx> gamma(chart.begin() + 1, chart.end() - 1);
    return genus1(chart.front(), gamma, chart.back(), g1_->period_a, g1_->period_b);
}

const Polynomial& AbelianIntegral::polynomial() const {
    if (genus_ != 0) throw Error(ErrorKind::InvalidModel, "not a genus-0 model");
    return f0_;
}

const Genus1Data& AbelianIntegral::genus1_data() const {
    if (genus_ != 1) throw Error(ErrorKind::InvalidModel, "not a genus-1 model");
    return *g1_;
}

const WpCombination& AbelianIntegral::omega_combination() const {
    (void)genus1_data();
    return omega1_;
}

cplx AbelianIntegral::F(cplx u) const {
    const Genus1Data& d = *g1_;
    const Lattice& L = d.lattice;
    cplx v = d.alpha * u + fpart_(L, u);
    if (d.beta != cplx{}) v -= d.beta * elliptic::zeta_w(L, u);
    return v;
}

cplx AbelianIntegral::f(cplx point) const {
    if (genus_ == 0) return f0_(point);
    return g1_->c0 + F(point) - f_base_;
}

cplx AbelianIntegral::omega(cplx point) const {
    if (genus_ == 0) return f0_.derivative()(point);
    return omega1_(g1_->lattice, point);
}

cplx AbelianIntegral::omega_derivative(cplx point) const {
    if (genus_ == 0) return f0_.derivative().derivative()(point);
    return omega1_prime_(g1_->lattice, point);
}

LaurentSeries AbelianIntegral::f_series_at_pole(int truncation_order) const {
    if (genus_ == 0) {
        const int low = -n_;
        std::vector<cplx> c(static_cast<std::size_t>(std::max(truncation_order - low, 0)));
        for (int j = 0; j <= n_; ++j)
            if (-j - low < static_cast<int>(c.size())) c[static_cast<std::size_t>(-j - low)] = f0_.coefficient(j);
        return LaurentSeries(numeric::ExpansionPoint::infinity(), low, c, std::max(truncation_order, low));
    }
    const Genus1Data& d = *g1_;
    const int t = truncation_order;
    LaurentSeries s = LaurentSeries::constant(d.c0 - f_base_, t) + d.alpha * LaurentSeries::variable(t) -
                      d.beta * elliptic::zeta_laurent(d.lattice, t);
    for (std::size_t j = 0; j < d.gamma.size(); ++j)
        s = s + d.gamma[j] * elliptic::wp_laurent(d.lattice, static_cast<int>(j), t);
    return s;
}

cplx AbelianIntegral::omega_residue_at_pole() const {
    if (genus_ == 0) {
        // f'(1/w) d(1/w) = -sum_k b_k w^{-k-2} dw
        const Polynomial fp = f0_.derivative();
        const int low = -(fp.degree() + 2);
        std::vector<cplx> c(static_cast<std::size_t>(-low + 2));
        for (int k = 0; k <= fp.degree(); ++k) c[static_cast<std::size_t>(-k - 2 - low)] = -fp.coefficient(k);
        return numeric::residue_at(LaurentSeries(numeric::ExpansionPoint::infinity(), low, c, 2));
    }
    const Genus1Data& d = *g1_;
    const int order = 4;
    LaurentSeries s = LaurentSeries::constant(d.alpha, order) + d.beta * elliptic::wp_laurent(d.lattice, 0, order);
    for (std::size_t j = 0; j < d.gamma.size(); ++j)
        s = s + d.gamma[j] * elliptic::wp_laurent(d.lattice, static_cast<int>(j) + 1, order);
    return numeric::residue_at(s);
}

std::pair<cplx, cplx> solve_leaf_coefficients(const Lattice& L, cplx period_a, cplx period_b) {
    // determinant tau eta1 - eta2 = 2 pi i by the Legendre relation
    const cplx det = L.tau * L.eta1 - L.eta2;
    const cplx alpha = (L.eta1 * period_b - L.eta2 * period_a) / det;
    const cplx beta = (period_b - L.tau * period_a) / det;
    return {alpha, beta};
}

OneForm differential(const AbelianIntegral& m) {
    return [m](cplx point) { return m.omega(point); };
}

namespace {

struct RetryGrid {};

CriticalData genus0_critical(const AbelianIntegral& m, const CriticalOptions& opts) {
    const Polynomial& f = m.polynomial();
    const Polynomial fp = f.derivative();
    CriticalData cd;
    if (fp.degree() == 0) return cd;
    numeric::RootOptions ro;
    ro.cluster_tol = opts.cluster_tol;
    for (const auto& r : numeric::poly_roots(fp, ro)) {
        if (r.multiplicity > 1) throw Error(ErrorKind::NonSemisimplePoint, "omega has a multiple zero");
        cd.points.push_back(r.value);
        cd.values.push_back(f(r.value));
        cd.omega_deriv.push_back(fp.derivative()(r.value));
    }
    if (static_cast<int>(cd.size()) != m.chart_dimension())
        throw Error(ErrorKind::RootCountMismatch, "critical point count differs from 2g+n-1");
    return cd;
}

class CellSearch {
public:
    CellSearch(const AbelianIntegral& m, cplx offset)
        : m_(m), L_(m.lattice()), offset_(offset), w_(m.omega_combination()), wd_(w_.derivative(L_)) {
        // coordinates (a, b) of the origin in offset + a + b tau
        const cplx w = -offset_;
        pole_b_ = w.imag() / L_.tau.imag();
        pole_a_ = (w - pole_b_ * L_.tau).real();
    }

    std::vector<cplx> run(int cells) {
        const double h = 1.0 / cells;
        for (int i = 0; i < cells; ++i)
            for (int j = 0; j < cells; ++j)
                cell(-0.5 + i * h, -0.5 + (i + 1) * h, -0.5 + j * h, -0.5 + (j + 1) * h, 0);
        return zeros_;
    }

private:
    const AbelianIntegral& m_;
    const Lattice& L_;
    cplx offset_;
    const WpCombination& w_;
    WpCombination wd_;
    double pole_a_ = 0.0;
    double pole_b_ = 0.0;
    std::vector<cplx> zeros_;

    static constexpr int kMaxDepth = 7;

    cplx at(double a, double b) const { return offset_ + a + b * L_.tau; }

    cplx log_derivative(cplx u) const {
        const cplx p = elliptic::wp(L_, u);
        const cplx pp = elliptic::wp(L_, u, 1);
        return wd_.at(p, pp) / w_.at(p, pp);
    }

    std::pair<cplx, cplx> moments(double a0, double a1, double b0, double b1) const {
        const cplx corners[4] = {at(a0, b0), at(a1, b0), at(a1, b1), at(a0, b1)};
        cplx m0{}, m1{};
        for (int e = 0; e < 4; ++e) {
            const cplx s = corners[e], t = corners[(e + 1) % 4];
            try {
                m0 += numeric::integrate_segment([&](cplx u) { return log_derivative(u); }, s, t, 1e-8).value;
                m1 += numeric::integrate_segment([&](cplx u) { return u * log_derivative(u); }, s, t, 1e-8).value;
            } catch (const Error&) {
                throw RetryGrid{};
            }
        }
        return {m0 / kTwoPiI, m1 / kTwoPiI};
    }

    void cell(double a0, double a1, double b0, double b1, int depth) {
        const auto [m0, m1] = moments(a0, a1, b0, b1);
        const double count_real = m0.real();
        const long base = std::lround(count_real);
        if (std::abs(m0 - static_cast<double>(base)) > 0.05) throw RetryGrid{};
        const bool has_pole = pole_a_ > a0 && pole_a_ < a1 && pole_b_ > b0 && pole_b_ < b1;
        const long count = base + (has_pole ? m_.n() + 1 : 0);
        if (count < 0) throw RetryGrid{};
        if (count == 0) return;
        if (count == 1) {
            zeros_.push_back(polish(m1));
            return;
        }
        if (depth >= kMaxDepth) throw Error(ErrorKind::NonSemisimplePoint, "omega has a multiple zero");
        const double ha = (a1 - a0) / 3.0, hb = (b1 - b0) / 3.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                cell(a0 + i * ha, a0 + (i + 1) * ha, b0 + j * hb, b0 + (j + 1) * hb, depth + 1);
    }

    cplx polish(cplx u) const {
        for (int it = 0; it < 60; ++it) {
            const cplx step = m_.omega(u) / m_.omega_derivative(u);
            u -= step;
            if (std::abs(step) < 1e-15 * std::max(1.0, std::abs(u))) break;
        }
        return u;
    }
};

double lattice_distance(const Lattice& L, cplx a, cplx b) { return std::abs(elliptic::reduce(L, a - b).reduced); }

CriticalData genus1_critical(const AbelianIntegral& m, const CriticalOptions& opts) {
    const Lattice& L = m.lattice();
    const cplx offsets[] = {{0.0123, 0.0371}, {-0.0311, 0.0207}, {0.0419, -0.0283}, {-0.0173, -0.0437}};
    std::vector<cplx> zeros;
    bool found = false;
    for (const cplx off : offsets) {
        try {
            zeros = CellSearch(m, off).run(opts.cells | 1);
            found = true;
            break;
        } catch (const RetryGrid&) {
        }
    }
    if (!found) throw Error(ErrorKind::NonConvergence, "argument-principle search did not stabilise");
    if (static_cast<int>(zeros.size()) != m.chart_dimension())
        throw Error(ErrorKind::RootCountMismatch, "critical point count differs from 2g+n-1");
    for (auto& z : zeros) z = elliptic::reduce(L, z).reduced;
    for (std::size_t i = 0; i < zeros.size(); ++i)
        for (std::size_t j = i + 1; j < zeros.size(); ++j)
            if (lattice_distance(L, zeros[i], zeros[j]) < opts.cluster_tol)
                throw Error(ErrorKind::NonSemisimplePoint, "omega has a multiple zero");
    std::sort(zeros.begin(), zeros.end(), [](cplx x, cplx y) {
        return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
    });
    CriticalData cd;
    for (const cplx z : zeros) {
        cd.points.push_back(z);
        cd.values.push_back(m.f(z));
        cd.omega_deriv.push_back(m.omega_derivative(z));
    }
    return cd;
}

}  // namespace

CriticalData critical_data(const AbelianIntegral& m, const CriticalOptions& opts) {
    return m.genus() == 0 ? genus0_critical(m, opts) : genus1_critical(m, opts);
}

AbelianIntegral deform(const AbelianIntegral& m, const std::vector<cplx>& direction, cplx eps,
                       const CriticalOptions& opts) {
    if (static_cast<int>(direction.size()) != m.chart_dimension())
        throw Error(ErrorKind::InvalidModel, "direction has the wrong dimension");
    std::vector<cplx> chart = m.chart();
    for (std::size_t i = 0; i < chart.size(); ++i) chart[i] += eps * direction[i];
    AbelianIntegral out = m.with_chart(chart);
    try {
        (void)critical_data(out, opts);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::NonSemisimplePoint)
            throw Error(ErrorKind::LeftSemisimpleLocus, "deformation left the semisimple locus");
        throw;
    }
    return out;
}

}  // namespace frob::model
