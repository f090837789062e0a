#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace genfield {

using cplx = std::complex<double>;

// Symmetric momentum lattice for a massive scalar on the torus [0, L)^d.
// Per axis the integer labels run over [-(K-1)/2, (K-1)/2] (K odd), so the
// points are p = (2*pi/L) * n and the point set is inversion symmetric.
// Each point carries the raw quadrature weight dp = (2*pi/L)^d and the
// dispersion value omega = sqrt(|p|^2 + m^2).
class MomentumGrid {
public:
    MomentumGrid(int d, int K, double L, double m);

    int dimension() const { return d_; }
    int points_per_axis() const { return K_; }
    double box_length() const { return L_; }
    double mass() const { return m_; }
    int n_modes() const { return n_modes_; }

    // momentum vector of mode i (only the first d components are meaningful)
    const std::array<double, 3>& p(int i) const { return p_[i]; }
    double omega(int i) const { return omega_[i]; }
    double weight(int i) const { return w_[i]; }
    const std::vector<double>& omegas() const { return omega_; }
    const std::vector<double>& weights() const { return w_; }

    // integer axis labels of mode i, each in [-(K-1)/2, (K-1)/2]
    const std::array<int, 3>& labels(int i) const { return n_[i]; }

    // index of the inversion partner (p -> -p)
    int negated_index(int i) const;
    // flattened index from axis labels
    int index_of(const std::array<int, 3>& labels) const;

    // diagnostic hook for negative controls: copy of this grid with
    // omega(mode) shifted by delta (breaks the dispersion relation on purpose)
    MomentumGrid with_perturbed_omega(int mode, double delta) const;

private:
    int d_, K_;
    double L_, m_;
    int n_modes_;
    std::vector<std::array<int, 3>> n_;
    std::vector<std::array<double, 3>> p_;
    std::vector<double> omega_;
    std::vector<double> w_;
};

// Position lattice x_j = j * (L/K) per axis, j in [0, K), with cell volume
// dx = (L/K)^d. Shares (d, K, L) with the momentum grid above.
class PositionLattice {
public:
    PositionLattice(int d, int K, double L);
    explicit PositionLattice(const MomentumGrid& g)
        : PositionLattice(g.dimension(), g.points_per_axis(), g.box_length()) {}

    int dimension() const { return d_; }
    int points_per_axis() const { return K_; }
    double box_length() const { return L_; }
    int n_sites() const { return n_sites_; }
    double cell_volume() const { return dx_; }

    const std::array<double, 3>& x(int j) const { return x_[j]; }
    const std::array<int, 3>& labels(int j) const { return j_[j]; }
    int index_of(const std::array<int, 3>& labels) const;

private:
    int d_, K_;
    double L_;
    int n_sites_;
    double dx_;
    std::vector<std::array<int, 3>> j_;
    std::vector<std::array<double, 3>> x_;
};

// Inner product of the measure space carrying the ladder calculus:
// (f, g) = sum_i w_i * conj(f_i) * g_i / omega_i.
cplx sigma_inner(const MomentumGrid& g, std::span<const cplx> f, std::span<const cplx> h);

// sum_i exp(i p_i . y) over all modes; equals K^d when y is a lattice period
// multiple and ~0 for any nonzero lattice displacement (completeness).
cplx mode_phase_sum(const MomentumGrid& g, const std::array<double, 3>& y);

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b);

}  // namespace genfield
