#pragma once

#include "genfield/fields.hpp"
#include "genfield/wick.hpp"

namespace genfield {

// The free Hamiltonian along three assembly routes that must agree:
//   h_product: 1/2 sum_x dx [Pi^2 + (grad Phi)^2 + m^2 Phi^2] (matrix products)
//   h_mode:    1/2 sum_i mu_i omega_i (b_i' b_i + b_i b_i') from ladder matrices
//   h_wick:    matrix of the normal-ordered symbolic expansion of the product form
// e0 is the zero-point constant (1/2 sum mu_i omega_i); h_product = h_wick + e0*I
// on the exact sub-basis.
struct HamiltonianBundle {
    OperatorMatrix h_product;
    OperatorMatrix h_mode;
    OperatorMatrix h_wick;
    double e0 = 0.0;
};

// Per-mode weight mu_i = 2 omega_i gamma_i^2 L^d of the mode-sum form; 1 for
// the standard profile.
double mode_weight(const MomentumGrid& g, const ConventionProfile& profile, int mode);

double zero_point_energy(const MomentumGrid& g, const ConventionProfile& profile);

// Throws for n_max < 2 (squared fields have an empty exact sub-basis).
HamiltonianBundle build_free_hamiltonian(const MomentumGrid& g, const OccupationBasis& basis,
                                         const ConventionProfile& profile, double t);

// lambda * sum_x dx Phi(t,x)^4 as an ordinary product of field matrices
OperatorMatrix build_phi4(const MomentumGrid& g, const OccupationBasis& basis,
                          const ConventionProfile& profile, double lambda, double t);

// Same assemblies expanded in the symbolic ladder algebra (the oracle route;
// matrix realization agrees with the products of truncated field matrices
// entrywise because both insert the truncation between consecutive symbols).
LadderExpression hamiltonian_expression(const MomentumGrid& g, const ConventionProfile& profile,
                                        double t);
LadderExpression phi4_expression(const MomentumGrid& g, const ConventionProfile& profile,
                                 double lambda, double t);

// P_axis = sum_i p_i[axis] n_i, diagonal in the occupation basis
OperatorMatrix momentum_operator(const MomentumGrid& g, const OccupationBasis& basis, int axis);

// exp(-i P . a) via the exact diagonal exponential; a must be an integer
// multiple of L/K per axis
OperatorMatrix translation_unitary(const MomentumGrid& g, const OccupationBasis& basis,
                                   const std::array<double, 3>& a);

// max entry of U Phi(t,x) U' - Phi(t,x-a); exact (rounding-level) on-lattice
double translation_check(const MomentumGrid& g, const OccupationBasis& basis,
                         const ConventionProfile& profile, double t,
                         const std::array<double, 3>& x, const std::array<double, 3>& a);

// Sorted eigenvalues of the principal submatrix over occupations <= cap.
std::vector<double> restricted_spectrum(const OperatorMatrix& M, const OccupationBasis& basis,
                                        int cap);

// Oracle spectrum {sum_i n_i mu_i omega_i + e0} over occupations <= cap, sorted.
std::vector<double> oscillator_spectrum(const MomentumGrid& g, const ConventionProfile& profile,
                                        const OccupationBasis& basis, int cap);

}  // namespace genfield
