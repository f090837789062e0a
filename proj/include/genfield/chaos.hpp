#pragma once

#include <span>
#include <vector>

#include "genfield/fock.hpp"
#include "genfield/grid.hpp"

namespace genfield {

// Coefficient system of a chaos expansion: one dense symmetric tensor per
// particle-number sector, rank n over the mode set, truncated at n_max.
// Sector n is stored flat with little-endian multi-indexing
// (index = i_0 + N*i_1 + N^2*i_2 + ...).
struct ChaosExpansion {
    int n_modes = 0;
    int n_max = 0;
    std::vector<std::vector<cplx>> sectors;

    static ChaosExpansion zero(int n_modes, int n_max);
};

// bilinear mode pairing <f, g> = sum_i w_i f_i g_i (no conjugation) — the
// pairing under which lattice deltas reproduce point evaluation
cplx w_pairing(const MomentumGrid& g, std::span<const cplx> f, std::span<const cplx> h);

// average over all slot permutations of a rank-`rank` tensor
std::vector<cplx> symmetrize_sector(int n_modes, int rank, const std::vector<cplx>& data);

// D_z: sector n-1 of the result is n * (z contracted against one slot of f_n).
// The top sector of the result is zero (no sector n_max+1 input exists).
ChaosExpansion hida_derivative(const MomentumGrid& g, std::span<const cplx> z,
                               const ChaosExpansion& f);

// D*_z: sector n+1 of the result is sym(z tensor F_n); the rank n_max+1
// component is dropped (truncation).
ChaosExpansion hida_dual(const MomentumGrid& g, std::span<const cplx> z, const ChaosExpansion& F);

// D_eta D*_xi F via the direct one-shot formula
// (n+1) * eta-contraction of sym(xi tensor F_n); agrees with the sequential
// composition below the truncation sector and satisfies
// D_eta D*_xi - D*_xi D_eta = <eta, xi> * Id there.
ChaosExpansion compose_dual_then_deriv(const MomentumGrid& g, std::span<const cplx> eta,
                                       std::span<const cplx> xi, const ChaosExpansion& F);

// <<F, f>> = sum_n n! <F_n, f_n> with the bilinear w-pairing on every slot.
// Relates to the sesquilinear Fock product by conjugating the left argument.
cplx dual_pairing(const MomentumGrid& g, const ChaosExpansion& F, const ChaosExpansion& f);

// Evaluation f(zeta) = sum_n <:zeta^n:, f_n> with the Wick tensors generated by
//   :zeta^0: = 1,  :zeta^1: = zeta,
//   :zeta^n: = sym(zeta (x) :zeta^(n-1):) - (n-1) sym(tau (x) :zeta^(n-2):),
// where tau is the identity kernel of the w-pairing (tau_ij = delta_ij / w_i).
class WickEvaluator {
public:
    explicit WickEvaluator(const MomentumGrid& g);

    cplx evaluate(const ChaosExpansion& f, std::span<const cplx> zeta) const;

    // the Wick tensors :zeta^0: .. :zeta^rank: themselves (for oracle tests)
    std::vector<std::vector<cplx>> wick_tensors(std::span<const cplx> zeta, int rank) const;

    // <tau, xi (x) eta>
    cplx tau_pairing(std::span<const cplx> xi, std::span<const cplx> eta) const;

private:
    int n_modes_;
    std::vector<double> w_;
};

// unitary occupation <-> chaos correspondence fixed by b_i' = D*_{e_i}/sqrt(w_i)
FockVector to_fock(const MomentumGrid& g, const ChaosExpansion& f, const OccupationBasis& basis);
ChaosExpansion to_chaos(const MomentumGrid& g, const FockVector& F);

// | central finite difference (with one Richardson step) of the pointwise
// product (f1*f2)(zeta) along z  minus  the Leibniz combination
// (D_z f1)(zeta) f2(zeta) + f1(zeta) (D_z f2)(zeta) |
double leibniz_check(const MomentumGrid& g, std::span<const cplx> z, const ChaosExpansion& f1,
                     const ChaosExpansion& f2, std::span<const cplx> zeta, double eps_fd);

// |forward difference of f along z at step eps minus (D_z f)(zeta)| for each
// step; the log-log slope of these against eps is ~1 for smooth chaos vectors
std::vector<double> gateaux_errors(const MomentumGrid& g, const ChaosExpansion& f,
                                   std::span<const cplx> zeta, std::span<const cplx> z,
                                   std::span<const double> eps);

// least-squares slope of log(y) against log(x); also reports the rms residual
// of the fit in log space. Requires >= 2 points and positive data.
struct SlopeFit {
    double slope = 0.0;
    double rms_residual = 0.0;
};
SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace genfield
