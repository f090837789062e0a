#pragma once

#include <span>
#include <string>
#include <string_view>

#include "genfield/fock.hpp"
#include "genfield/grid.hpp"

namespace genfield {

// Mode-prefactor convention for assembling position-space field operators.
// "standard" uses nu = 1/sqrt(2 omega L^d) attached directly to the canonical
// ladders (plain mode sum), which makes the equal-time commutator exactly
// i * K^d/L^d * delta on the lattice. "paper-literal" uses
// nu = 1/sqrt(omega) routed through the quadrature weight (effective ladder
// coefficient sqrt(w/omega)); its commutator constant is measured and
// reported rather than assumed.
struct ConventionProfile {
    std::string name;

    static ConventionProfile standard();
    static ConventionProfile paper_literal();
    static ConventionProfile from_name(std::string_view name);

    bool is_standard() const { return name == "standard"; }

    // the published prefactor nu(p)
    double nu(const MomentumGrid& g, int mode) const;
    // effective coefficient on the canonical ladder pair of mode i
    double gamma(const MomentumGrid& g, int mode) const;
};

enum class FieldKind { PhiMinus, PhiPlus, Phi, PiMinus, PiPlus, Pi, GradPhi };

std::string_view field_kind_name(FieldKind kind);

struct FieldOperator {
    FieldKind kind = FieldKind::Phi;
    int axis = 0;  // GradPhi component
    double t = 0.0;
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::string profile;
    OperatorMatrix matrix;
};

// Coefficients of b_i (lower) and b_i^dagger (raise) in a field at (t, x).
// The annihilation part carries e^{+i(omega t - p.x)}; the creation part its
// conjugate, so Phi, Pi and grad Phi come out hermitian.
struct ModeCoefficients {
    std::vector<cplx> lower;
    std::vector<cplx> raise;
};

ModeCoefficients field_mode_coefficients(const MomentumGrid& g, const ConventionProfile& profile,
                                         FieldKind kind, int axis, double t,
                                         const std::array<double, 3>& x);

// Throws std::invalid_argument for an off-lattice x unless allow_off_lattice
// is set (the commutator identities are promised on-lattice only).
FieldOperator assemble_field(const MomentumGrid& g, const OccupationBasis& basis,
                             const ConventionProfile& profile, FieldKind kind, double t,
                             const std::array<double, 3>& x, int axis = 0,
                             bool allow_off_lattice = false);

// sum_i lower_i b_i + raise_i b_i^dagger as a matrix (single basis walk)
OperatorMatrix ladder_combination(const OccupationBasis& basis, std::span<const cplx> lower,
                                  std::span<const cplx> raise);

OperatorMatrix commutator(const OperatorMatrix& A, const OperatorMatrix& B);

struct CcrCheck {
    bool is_identity_multiple = false;
    cplx c_measured;       // mean diagonal of [Pi(x1), Phi(x2)] on the exact sub-basis
    cplx c_predicted;      // independent mode-sum prediction
    cplx c_canonical;      // i * delta_lattice(x1 - x2)
    double max_deviation;  // entrywise distance from c_measured * I there
};

// Structure and constant of [Pi(t,x1), Phi(t,x2)] on occupations n <= n_max-2.
CcrCheck ccr_check(const MomentumGrid& g, const OccupationBasis& basis,
                   const ConventionProfile& profile, double t, const std::array<double, 3>& x1,
                   const std::array<double, 3>& x2, double structure_tol = 1e-12);

// Mode-sum prediction 2i sum_i gamma_i^2 omega_i cos(p_i . (x1 - x2)),
// evaluated without any operator matrices.
cplx ccr_mode_sum(const MomentumGrid& g, const ConventionProfile& profile,
                  const std::array<double, 3>& x1, const std::array<double, 3>& x2);

// i * K^d/L^d at lattice coincidence (mod the box), 0 otherwise
cplx ccr_canonical_value(const MomentumGrid& g, const std::array<double, 3>& x1,
                         const std::array<double, 3>& x2);

// Max matrix-entry magnitude of (d^2/dt^2 - laplacian + m^2) Phi at (t, x),
// with time derivatives taken analytically and space spectrally; zero up to
// rounding because each mode satisfies omega^2 = |p|^2 + m^2.
double kg_residual(const MomentumGrid& g, const OccupationBasis& basis,
                   const ConventionProfile& profile, double t, const std::array<double, 3>& x);

}  // namespace genfield
