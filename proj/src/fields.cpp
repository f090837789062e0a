#include "genfield/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace genfield {

namespace {

double box_volume(const MomentumGrid& g) {
    return std::pow(g.box_length(), g.dimension());
}

bool on_lattice(const MomentumGrid& g, const std::array<double, 3>& x) {
    const double step = g.box_length() / g.points_per_axis();
    for (int a = 0; a < g.dimension(); ++a) {
        const double ratio = x[a] / step;
        if (std::abs(ratio - std::round(ratio)) > 1e-9) return false;
    }
    return true;
}

// displacement folded to (-L/2, L/2] per axis
std::array<double, 3> folded_delta(const MomentumGrid& g, const std::array<double, 3>& x1,
                                   const std::array<double, 3>& x2) {
    std::array<double, 3> y{0.0, 0.0, 0.0};
    const double L = g.box_length();
    for (int a = 0; a < g.dimension(); ++a) {
        double v = x1[a] - x2[a];
        v -= L * std::round(v / L);
        y[a] = v;
    }
    return y;
}

}  // namespace

ConventionProfile ConventionProfile::standard() { return {"standard"}; }
ConventionProfile ConventionProfile::paper_literal() { return {"paper-literal"}; }

ConventionProfile ConventionProfile::from_name(std::string_view name) {
    if (name == "standard") return standard();
    if (name == "paper-literal") return paper_literal();
    throw std::invalid_argument("unknown convention profile: " + std::string(name));
}

double ConventionProfile::nu(const MomentumGrid& g, int mode) const {
    const double om = g.omega(mode);
    if (is_standard()) return 1.0 / std::sqrt(2.0 * om * box_volume(g));
    return 1.0 / std::sqrt(om);
}

double ConventionProfile::gamma(const MomentumGrid& g, int mode) const {
    if (is_standard()) return nu(g, mode);  // plain mode sum
    return std::sqrt(g.weight(mode)) * nu(g, mode);
}

std::string_view field_kind_name(FieldKind kind) {
    switch (kind) {
        case FieldKind::PhiMinus: return "phi_minus";
        case FieldKind::PhiPlus: return "phi_plus";
        case FieldKind::Phi: return "phi";
        case FieldKind::PiMinus: return "pi_minus";
        case FieldKind::PiPlus: return "pi_plus";
        case FieldKind::Pi: return "pi";
        case FieldKind::GradPhi: return "grad_phi";
    }
    throw std::invalid_argument("unknown field kind");
}

ModeCoefficients field_mode_coefficients(const MomentumGrid& g, const ConventionProfile& profile,
                                         FieldKind kind, int axis, double t,
                                         const std::array<double, 3>& x) {
    if (kind == FieldKind::GradPhi && (axis < 0 || axis >= g.dimension()))
        throw std::invalid_argument("grad component axis out of range");
    const int N = g.n_modes();
    ModeCoefficients mc;
    mc.lower.assign(N, cplx(0.0));
    mc.raise.assign(N, cplx(0.0));
    const cplx I(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
        const double om = g.omega(i);
        const double gam = profile.gamma(g, i);
        const cplx chi = gam * std::exp(I * (om * t - dot3(g.p(i), x)));
        cplx lower, raise;
        switch (kind) {
            case FieldKind::PhiMinus: lower = chi; raise = 0.0; break;
            case FieldKind::PhiPlus: lower = 0.0; raise = std::conj(chi); break;
            case FieldKind::Phi: lower = chi; raise = std::conj(chi); break;
            case FieldKind::PiMinus: lower = I * om * chi; raise = 0.0; break;
            case FieldKind::PiPlus: lower = 0.0; raise = std::conj(I * om * chi); break;
            case FieldKind::Pi: lower = I * om * chi; raise = std::conj(I * om * chi); break;
            case FieldKind::GradPhi: {
                const cplx dchi = -I * g.p(i)[axis] * chi;
                lower = dchi;
                raise = std::conj(dchi);
                break;
            }
        }
        mc.lower[i] = lower;
        mc.raise[i] = raise;
    }
    return mc;
}

OperatorMatrix ladder_combination(const OccupationBasis& basis, std::span<const cplx> lower,
                                  std::span<const cplx> raise) {
    if (static_cast<int>(lower.size()) != basis.n_modes() ||
        static_cast<int>(raise.size()) != basis.n_modes())
        throw std::invalid_argument("ladder_combination: coefficient length mismatch");
    OperatorMatrix M = OperatorMatrix::Zero(basis.dim(), basis.dim());
    std::vector<std::uint8_t> occ;
    for (int v = 0; v < basis.dim(); ++v) {
        occ = basis.occupations(v);
        const int total = basis.total(v);
        for (int i = 0; i < basis.n_modes(); ++i) {
            if (lower[i] != cplx(0.0) && occ[i] > 0) {
                occ[i] -= 1;
                M(basis.index_of(occ), v) += lower[i] * std::sqrt(double(occ[i] + 1));
                occ[i] += 1;
            }
            if (raise[i] != cplx(0.0) && total + 1 <= basis.n_max()) {
                occ[i] += 1;
                M(basis.index_of(occ), v) += raise[i] * std::sqrt(double(occ[i]));
                occ[i] -= 1;
            }
        }
    }
    return M;
}

FieldOperator assemble_field(const MomentumGrid& g, const OccupationBasis& basis,
                             const ConventionProfile& profile, FieldKind kind, double t,
                             const std::array<double, 3>& x, int axis, bool allow_off_lattice) {
    if (basis.n_modes() != g.n_modes())
        throw std::invalid_argument("assemble_field: basis/grid mode count mismatch");
    if (!allow_off_lattice && !on_lattice(g, x))
        throw std::invalid_argument("assemble_field: x is off the position lattice");
    const ModeCoefficients mc = field_mode_coefficients(g, profile, kind, axis, t, x);
    FieldOperator op;
    op.kind = kind;
    op.axis = axis;
    op.t = t;
    op.x = x;
    op.profile = profile.name;
    op.matrix = ladder_combination(basis, mc.lower, mc.raise);
    return op;
}

OperatorMatrix commutator(const OperatorMatrix& A, const OperatorMatrix& B) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("commutator: dimension mismatch");
    return A * B - B * A;
}

cplx ccr_mode_sum(const MomentumGrid& g, const ConventionProfile& profile,
                  const std::array<double, 3>& x1, const std::array<double, 3>& x2) {
    const auto y = folded_delta(g, x1, x2);
    double acc = 0.0;
    for (int i = 0; i < g.n_modes(); ++i) {
        const double gam = profile.gamma(g, i);
        acc += gam * gam * g.omega(i) * std::cos(dot3(g.p(i), y));
    }
    return cplx(0.0, 2.0 * acc);
}

cplx ccr_canonical_value(const MomentumGrid& g, const std::array<double, 3>& x1,
                         const std::array<double, 3>& x2) {
    const auto y = folded_delta(g, x1, x2);
    const double step = g.box_length() / g.points_per_axis();
    for (int a = 0; a < g.dimension(); ++a)
        if (std::abs(y[a]) > 1e-9 * step) return cplx(0.0, 0.0);
    const double density =
        std::pow(g.points_per_axis(), g.dimension()) / std::pow(g.box_length(), g.dimension());
    return cplx(0.0, density);
}

CcrCheck ccr_check(const MomentumGrid& g, const OccupationBasis& basis,
                   const ConventionProfile& profile, double t, const std::array<double, 3>& x1,
                   const std::array<double, 3>& x2, double structure_tol) {
    const auto pi1 = assemble_field(g, basis, profile, FieldKind::Pi, t, x1);
    const auto phi2 = assemble_field(g, basis, profile, FieldKind::Phi, t, x2);
    const OperatorMatrix C = commutator(pi1.matrix, phi2.matrix);
    const int cap = basis.n_max() - 2;  // two sector-shifting factors composed
    CcrCheck r;
    r.c_measured = mean_diagonal(C, basis, cap);
    r.c_predicted = ccr_mode_sum(g, profile, x1, x2);
    r.c_canonical = ccr_canonical_value(g, x1, x2);
    r.max_deviation = max_deviation_from_identity_multiple(C, basis, r.c_measured, cap);
    r.is_identity_multiple = r.max_deviation < structure_tol;
    return r;
}

double kg_residual(const MomentumGrid& g, const OccupationBasis& basis,
                   const ConventionProfile& profile, double t, const std::array<double, 3>& x) {
    const int N = g.n_modes();
    std::vector<cplx> lower(N), raise(N);
    const cplx I(0.0, 1.0);
    for (int i = 0; i < N; ++i) {
        const double om = g.omega(i);
        const double p2 = dot3(g.p(i), g.p(i));
        // (d/dt)^2 acts analytically on e^{+/- i omega t}, the laplacian
        // spectrally on e^{-/+ i p.x}: each mode picks up m^2 + |p|^2 - omega^2
        const double multiplier = g.mass() * g.mass() + p2 - om * om;
        const cplx chi = profile.gamma(g, i) * std::exp(I * (om * t - dot3(g.p(i), x)));
        lower[i] = multiplier * chi;
        raise[i] = std::conj(lower[i]);
    }
    return max_abs(ladder_combination(basis, lower, raise));
}

}  // namespace genfield
