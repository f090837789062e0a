#include "genfield/hamiltonian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace genfield {

namespace {

double box_volume(const MomentumGrid& g) {
    return std::pow(g.box_length(), g.dimension());
}

// symbolic ladder expression of a field: sum_i lower_i a(i) + raise_i ad(i)
LadderExpression field_expression(const MomentumGrid& g, const ConventionProfile& profile,
                                  FieldKind kind, int axis, double t,
                                  const std::array<double, 3>& x) {
    const ModeCoefficients mc = field_mode_coefficients(g, profile, kind, axis, t, x);
    LadderExpression e;
    for (int i = 0; i < g.n_modes(); ++i) {
        if (mc.lower[i] != cplx(0.0)) e = e + LadderExpression::symbol(i, false, mc.lower[i]);
        if (mc.raise[i] != cplx(0.0)) e = e + LadderExpression::symbol(i, true, mc.raise[i]);
    }
    return e;
}

void check_translation_steps(const MomentumGrid& g, const std::array<double, 3>& a) {
    const double step = g.box_length() / g.points_per_axis();
    for (int ax = 0; ax < g.dimension(); ++ax) {
        const double ratio = a[ax] / step;
        if (std::abs(ratio - std::round(ratio)) > 1e-9)
            throw std::invalid_argument("translation displacement must be a lattice multiple");
    }
}

}  // namespace

double mode_weight(const MomentumGrid& g, const ConventionProfile& profile, int mode) {
    const double gam = profile.gamma(g, mode);
    return 2.0 * g.omega(mode) * gam * gam * box_volume(g);
}

double zero_point_energy(const MomentumGrid& g, const ConventionProfile& profile) {
    double e0 = 0.0;
    for (int i = 0; i < g.n_modes(); ++i) e0 += 0.5 * mode_weight(g, profile, i) * g.omega(i);
    return e0;
}

HamiltonianBundle build_free_hamiltonian(const MomentumGrid& g, const OccupationBasis& basis,
                                         const ConventionProfile& profile, double t) {
    if (basis.n_max() < 2)
        throw std::invalid_argument("free hamiltonian needs n_max >= 2 (squared fields)");
    const PositionLattice lattice(g);
    const int dim = basis.dim();
    const double m2 = g.mass() * g.mass();

    HamiltonianBundle bundle;
    bundle.h_product = OperatorMatrix::Zero(dim, dim);
    for (int j = 0; j < lattice.n_sites(); ++j) {
        const auto& x = lattice.x(j);
        const OperatorMatrix pi = assemble_field(g, basis, profile, FieldKind::Pi, t, x).matrix;
        OperatorMatrix density = pi * pi;
        for (int ax = 0; ax < g.dimension(); ++ax) {
            const OperatorMatrix grad =
                assemble_field(g, basis, profile, FieldKind::GradPhi, t, x, ax).matrix;
            density += grad * grad;
        }
        const OperatorMatrix phi = assemble_field(g, basis, profile, FieldKind::Phi, t, x).matrix;
        density += m2 * (phi * phi);
        bundle.h_product += (0.5 * lattice.cell_volume()) * density;
    }

    bundle.h_mode = OperatorMatrix::Zero(dim, dim);
    for (int i = 0; i < g.n_modes(); ++i) {
        const OperatorMatrix b = mode_ladder(basis, i, false);
        const OperatorMatrix bd = mode_ladder(basis, i, true);
        bundle.h_mode += (0.5 * mode_weight(g, profile, i) * g.omega(i)) * (bd * b + b * bd);
    }

    bundle.h_wick = to_matrix(wick_order(hamiltonian_expression(g, profile, t)), basis);
    bundle.e0 = zero_point_energy(g, profile);
    return bundle;
}

OperatorMatrix build_phi4(const MomentumGrid& g, const OccupationBasis& basis,
                          const ConventionProfile& profile, double lambda, double t) {
    const PositionLattice lattice(g);
    OperatorMatrix V = OperatorMatrix::Zero(basis.dim(), basis.dim());
    if (lambda == 0.0) return V;
    for (int j = 0; j < lattice.n_sites(); ++j) {
        const OperatorMatrix phi =
            assemble_field(g, basis, profile, FieldKind::Phi, t, lattice.x(j)).matrix;
        const OperatorMatrix phi2 = phi * phi;
        V += (lambda * lattice.cell_volume()) * (phi2 * phi2);
    }
    return V;
}

LadderExpression hamiltonian_expression(const MomentumGrid& g, const ConventionProfile& profile,
                                        double t) {
    const PositionLattice lattice(g);
    const double m2 = g.mass() * g.mass();
    LadderExpression h;
    for (int j = 0; j < lattice.n_sites(); ++j) {
        const auto& x = lattice.x(j);
        LadderExpression density =
            field_expression(g, profile, FieldKind::Pi, 0, t, x).pow(2);
        for (int ax = 0; ax < g.dimension(); ++ax)
            density = density + field_expression(g, profile, FieldKind::GradPhi, ax, t, x).pow(2);
        density = density +
                  field_expression(g, profile, FieldKind::Phi, 0, t, x).pow(2) * cplx(m2);
        h = h + density * cplx(0.5 * lattice.cell_volume());
    }
    return h;
}

LadderExpression phi4_expression(const MomentumGrid& g, const ConventionProfile& profile,
                                 double lambda, double t) {
    const PositionLattice lattice(g);
    LadderExpression v;
    if (lambda == 0.0) return v;
    for (int j = 0; j < lattice.n_sites(); ++j) {
        const LadderExpression phi =
            field_expression(g, profile, FieldKind::Phi, 0, t, lattice.x(j));
        v = v + phi.pow(4) * cplx(lambda * lattice.cell_volume());
    }
    return v;
}

OperatorMatrix momentum_operator(const MomentumGrid& g, const OccupationBasis& basis, int axis) {
    if (axis < 0 || axis >= g.dimension())
        throw std::invalid_argument("momentum axis out of range");
    OperatorMatrix P = OperatorMatrix::Zero(basis.dim(), basis.dim());
    for (int v = 0; v < basis.dim(); ++v) {
        const auto& occ = basis.occupations(v);
        double eig = 0.0;
        for (int i = 0; i < basis.n_modes(); ++i) eig += occ[i] * g.p(i)[axis];
        P(v, v) = eig;
    }
    return P;
}

OperatorMatrix translation_unitary(const MomentumGrid& g, const OccupationBasis& basis,
                                   const std::array<double, 3>& a) {
    check_translation_steps(g, a);
    OperatorMatrix U = OperatorMatrix::Zero(basis.dim(), basis.dim());
    const cplx I(0.0, 1.0);
    for (int v = 0; v < basis.dim(); ++v) {
        const auto& occ = basis.occupations(v);
        double pa = 0.0;
        for (int i = 0; i < basis.n_modes(); ++i)
            if (occ[i] > 0) pa += occ[i] * dot3(g.p(i), a);
        U(v, v) = std::exp(-I * pa);
    }
    return U;
}

double translation_check(const MomentumGrid& g, const OccupationBasis& basis,
                         const ConventionProfile& profile, double t,
                         const std::array<double, 3>& x, const std::array<double, 3>& a) {
    const OperatorMatrix U = translation_unitary(g, basis, a);
    const OperatorMatrix phi = assemble_field(g, basis, profile, FieldKind::Phi, t, x).matrix;
    std::array<double, 3> shifted = x;
    for (int ax = 0; ax < g.dimension(); ++ax) shifted[ax] -= a[ax];
    const OperatorMatrix target =
        assemble_field(g, basis, profile, FieldKind::Phi, t, shifted).matrix;
    return max_abs(U * phi * U.adjoint() - target);
}

std::vector<double> restricted_spectrum(const OperatorMatrix& M, const OccupationBasis& basis,
                                        int cap) {
    const std::vector<int> keep = basis.sector_indices(cap);
    const int n = static_cast<int>(keep.size());
    OperatorMatrix sub(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) sub(r, c) = M(keep[r], keep[c]);
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(sub);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue solve failed");
    std::vector<double> eig(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(eig.begin(), eig.end());
    return eig;
}

std::vector<double> oscillator_spectrum(const MomentumGrid& g, const ConventionProfile& profile,
                                        const OccupationBasis& basis, int cap) {
    const double e0 = zero_point_energy(g, profile);
    std::vector<double> eig;
    for (int v : basis.sector_indices(cap)) {
        const auto& occ = basis.occupations(v);
        double e = e0;
        for (int i = 0; i < basis.n_modes(); ++i)
            e += occ[i] * mode_weight(g, profile, i) * g.omega(i);
        eig.push_back(e);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

}  // namespace genfield
