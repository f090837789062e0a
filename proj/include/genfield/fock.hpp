#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "genfield/grid.hpp"

namespace genfield {

using OperatorMatrix = Eigen::MatrixXcd;

// Occupation-number basis over `n_modes` modes, truncated at total particle
// number <= n_max. States are enumerated sector by sector (total number
// ascending), lexicographically within a sector, so state 0 is the vacuum.
class OccupationBasis {
public:
    OccupationBasis(int n_modes, int n_max);

    int n_modes() const { return n_modes_; }
    int n_max() const { return n_max_; }
    int dim() const { return static_cast<int>(states_.size()); }

    const std::vector<std::uint8_t>& occupations(int idx) const { return states_[idx]; }
    int total(int idx) const { return totals_[idx]; }

    // index of an occupation vector, or -1 if it exceeds the truncation
    int index_of(const std::vector<std::uint8_t>& occ) const;

    // basis indices with total occupation <= cap (the "exact sub-basis" used
    // when k sector-shifting factors have been composed, cap = n_max - k)
    std::vector<int> sector_indices(int cap) const;

private:
    int n_modes_, n_max_;
    std::vector<std::vector<std::uint8_t>> states_;
    std::vector<int> totals_;
    std::map<std::vector<std::uint8_t>, int> lookup_;
};

// State in the truncated symmetric Fock space, stored as dense amplitudes
// over an OccupationBasis.
struct FockVector {
    const OccupationBasis* basis = nullptr;
    Eigen::VectorXcd amp;

    double norm() const { return amp.norm(); }
    // squared norm restricted to one particle-number sector
    double sector_weight(int n) const;
};

FockVector vacuum(const OccupationBasis& basis);

// Smeared creation operator: A'(f) = sum_i f_i sqrt(w_i/omega_i) b_i'
// (b_i the canonical per-mode ladder), so that [A(f), A'(g)] = (f,g)_sigma.
// Components created above n_max are dropped (truncation).
FockVector apply_creation(const MomentumGrid& g, std::span<const cplx> f, const FockVector& F);

// Smeared annihilation operator: exact matrix adjoint of apply_creation,
// i.e. A(f) = sum_i conj(f_i) sqrt(w_i/omega_i) b_i.
FockVector apply_annihilation(const MomentumGrid& g, std::span<const cplx> f, const FockVector& F);

// Canonical single-mode ladder matrix b_i (dagger=false) or b_i' (dagger=true)
// with the usual sqrt(n) factors; [b_i, b_j'] = delta_ij below truncation.
OperatorMatrix mode_ladder(const OccupationBasis& basis, int mode, bool dagger);

// Point ladder a_p at mode i: the smeared operator evaluated on the lattice
// delta (value 1/w_i at mode i), i.e. b_i / sqrt(w_i * omega_i). Its CCR
// constant [a_i, a_j'] = delta_ij / (w_i omega_i) is measured and reported
// by the ccr suite rather than assumed.
OperatorMatrix point_ladder(const MomentumGrid& g, const OccupationBasis& basis, int mode, bool dagger);

// Matrix of a linear map in the occupation basis, built column by column.
OperatorMatrix operator_matrix(const OccupationBasis& basis,
                               const std::function<FockVector(const FockVector&)>& op);

OperatorMatrix matrix_of_creation(const MomentumGrid& g, const OccupationBasis& basis,
                                  std::span<const cplx> f);
OperatorMatrix matrix_of_annihilation(const MomentumGrid& g, const OccupationBasis& basis,
                                      std::span<const cplx> f);

// ---- matrix predicates shared by the verification suites ----

bool is_hermitian(const OperatorMatrix& M, double tol);

// max |M_uv - c*delta_uv| over u,v restricted to total occupation <= cap
double max_deviation_from_identity_multiple(const OperatorMatrix& M, const OccupationBasis& basis,
                                            cplx c, int cap);

// mean diagonal entry over the restricted sub-basis (the measured identity
// multiple when the deviation above is small)
cplx mean_diagonal(const OperatorMatrix& M, const OccupationBasis& basis, int cap);

// max |A_uv - B_uv| over the restricted sub-basis
double max_abs_diff(const OperatorMatrix& A, const OperatorMatrix& B, const OccupationBasis& basis,
                    int cap);

double max_abs(const OperatorMatrix& M);

}  // namespace genfield
