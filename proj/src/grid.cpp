#include "genfield/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace genfield {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

int checked_pow(int base, int exp) {
    int r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

}  // namespace

MomentumGrid::MomentumGrid(int d, int K, double L, double m) : d_(d), K_(K), L_(L), m_(m) {
    if (d != 1 && d != 3) throw std::invalid_argument("grid: d must be 1 or 3");
    if (K < 1 || K % 2 == 0) throw std::invalid_argument("grid: K must be odd and >= 1");
    if (!(L > 0.0)) throw std::invalid_argument("grid: L must be positive");
    if (!(m > 0.0)) throw std::invalid_argument("grid: m must be positive");

    n_modes_ = checked_pow(K, d);
    const int h = (K - 1) / 2;
    const double dp = kTwoPi / L;
    double w = 1.0;
    for (int a = 0; a < d; ++a) w *= dp;

    n_.resize(n_modes_);
    p_.resize(n_modes_);
    omega_.resize(n_modes_);
    w_.assign(n_modes_, w);

    for (int i = 0; i < n_modes_; ++i) {
        std::array<int, 3> lab{0, 0, 0};
        int rest = i;
        for (int a = 0; a < d; ++a) {
            lab[a] = rest % K - h;
            rest /= K;
        }
        n_[i] = lab;
        std::array<double, 3> p{0.0, 0.0, 0.0};
        double p2 = 0.0;
        for (int a = 0; a < d; ++a) {
            p[a] = dp * lab[a];
            p2 += p[a] * p[a];
        }
        p_[i] = p;
        // keep omega == m bit-exact at p = 0 so the minimum-at-rest invariant is sharp
        omega_[i] = (p2 == 0.0) ? m : std::sqrt(p2 + m * m);
    }
}

int MomentumGrid::index_of(const std::array<int, 3>& labels) const {
    const int h = (K_ - 1) / 2;
    int idx = 0, stride = 1;
    for (int a = 0; a < d_; ++a) {
        int shifted = labels[a] + h;
        if (shifted < 0 || shifted >= K_) throw std::out_of_range("grid: label out of range");
        idx += stride * shifted;
        stride *= K_;
    }
    return idx;
}

int MomentumGrid::negated_index(int i) const {
    std::array<int, 3> lab = n_[i];
    for (int a = 0; a < d_; ++a) lab[a] = -lab[a];
    return index_of(lab);
}

MomentumGrid MomentumGrid::with_perturbed_omega(int mode, double delta) const {
    if (mode < 0 || mode >= n_modes_) throw std::out_of_range("grid: mode out of range");
    MomentumGrid g = *this;
    g.omega_[mode] += delta;
    return g;
}

PositionLattice::PositionLattice(int d, int K, double L) : d_(d), K_(K), L_(L) {
    if (d != 1 && d != 3) throw std::invalid_argument("lattice: d must be 1 or 3");
    if (K < 1 || K % 2 == 0) throw std::invalid_argument("lattice: K must be odd and >= 1");
    if (!(L > 0.0)) throw std::invalid_argument("lattice: L must be positive");

    n_sites_ = checked_pow(K, d);
    const double step = L / K;
    dx_ = 1.0;
    for (int a = 0; a < d; ++a) dx_ *= step;

    j_.resize(n_sites_);
    x_.resize(n_sites_);
    for (int s = 0; s < n_sites_; ++s) {
        std::array<int, 3> lab{0, 0, 0};
        int rest = s;
        for (int a = 0; a < d; ++a) {
            lab[a] = rest % K;
            rest /= K;
        }
        j_[s] = lab;
        std::array<double, 3> x{0.0, 0.0, 0.0};
        for (int a = 0; a < d; ++a) x[a] = step * lab[a];
        x_[s] = x;
    }
}

int PositionLattice::index_of(const std::array<int, 3>& labels) const {
    int idx = 0, stride = 1;
    for (int a = 0; a < d_; ++a) {
        if (labels[a] < 0 || labels[a] >= K_) throw std::out_of_range("lattice: label out of range");
        idx += stride * labels[a];
        stride *= K_;
    }
    return idx;
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

cplx sigma_inner(const MomentumGrid& g, std::span<const cplx> f, std::span<const cplx> h) {
    if (static_cast<int>(f.size()) != g.n_modes() || static_cast<int>(h.size()) != g.n_modes())
        throw std::invalid_argument("sigma_inner: function length must match mode count");
    cplx acc = 0.0;
    for (int i = 0; i < g.n_modes(); ++i)
        acc += g.weight(i) * std::conj(f[i]) * h[i] / g.omega(i);
    return acc;
}

cplx mode_phase_sum(const MomentumGrid& g, const std::array<double, 3>& y) {
    cplx acc = 0.0;
    for (int i = 0; i < g.n_modes(); ++i) {
        const double phase = dot3(g.p(i), y);
        acc += cplx(std::cos(phase), std::sin(phase));
    }
    return acc;
}

}  // namespace genfield
