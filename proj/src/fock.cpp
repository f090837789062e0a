#include "genfield/fock.hpp"

#include <cmath>
#include <stdexcept>

namespace genfield {

namespace {

// enumerate occupation vectors of `modes` modes summing to exactly `total`,
// lexicographically (first mode most significant)
void enumerate_sector(int modes, int total, std::vector<std::uint8_t>& scratch,
                      std::vector<std::vector<std::uint8_t>>& out) {
    if (modes == 1) {
        scratch.push_back(static_cast<std::uint8_t>(total));
        out.push_back(scratch);
        scratch.pop_back();
        return;
    }
    for (int k = total; k >= 0; --k) {
        scratch.push_back(static_cast<std::uint8_t>(k));
        enumerate_sector(modes - 1, total - k, scratch, out);
        scratch.pop_back();
    }
}

}  // namespace

OccupationBasis::OccupationBasis(int n_modes, int n_max) : n_modes_(n_modes), n_max_(n_max) {
    if (n_modes < 1) throw std::invalid_argument("basis: need at least one mode");
    if (n_max < 0) throw std::invalid_argument("basis: n_max must be >= 0");
    std::vector<std::uint8_t> scratch;
    for (int n = 0; n <= n_max; ++n) enumerate_sector(n_modes, n, scratch, states_);
    totals_.resize(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) {
        int t = 0;
        for (auto o : states_[i]) t += o;
        totals_[i] = t;
        lookup_[states_[i]] = static_cast<int>(i);
    }
}

int OccupationBasis::index_of(const std::vector<std::uint8_t>& occ) const {
    auto it = lookup_.find(occ);
    return it == lookup_.end() ? -1 : it->second;
}

std::vector<int> OccupationBasis::sector_indices(int cap) const {
    std::vector<int> idx;
    for (int i = 0; i < dim(); ++i)
        if (totals_[i] <= cap) idx.push_back(i);
    return idx;
}

double FockVector::sector_weight(int n) const {
    double acc = 0.0;
    for (int i = 0; i < basis->dim(); ++i)
        if (basis->total(i) == n) acc += std::norm(amp[i]);
    return acc;
}

FockVector vacuum(const OccupationBasis& basis) {
    FockVector F;
    F.basis = &basis;
    F.amp = Eigen::VectorXcd::Zero(basis.dim());
    F.amp[0] = 1.0;
    return F;
}

namespace {

// shared body of the smeared ladder pair; creation=true raises, else lowers
FockVector apply_smeared(const MomentumGrid& g, std::span<const cplx> f, const FockVector& F,
                         bool creation) {
    const OccupationBasis& basis = *F.basis;
    if (static_cast<int>(f.size()) != g.n_modes())
        throw std::invalid_argument("fock: smearing function length must match mode count");
    if (basis.n_modes() != g.n_modes())
        throw std::invalid_argument("fock: basis mode count must match grid");

    FockVector out;
    out.basis = &basis;
    out.amp = Eigen::VectorXcd::Zero(basis.dim());

    for (int v = 0; v < basis.dim(); ++v) {
        const cplx a = F.amp[v];
        if (a == cplx(0.0)) continue;
        std::vector<std::uint8_t> occ = basis.occupations(v);
        for (int i = 0; i < g.n_modes(); ++i) {
            const cplx c = creation ? f[i] : std::conj(f[i]);
            if (c == cplx(0.0)) continue;
            const double scale = std::sqrt(g.weight(i) / g.omega(i));
            if (creation) {
                if (basis.total(v) + 1 > basis.n_max()) continue;  // truncation drop
                occ[i] += 1;
                const int u = basis.index_of(occ);
                out.amp[u] += a * c * scale * std::sqrt(static_cast<double>(occ[i]));
                occ[i] -= 1;
            } else {
                if (occ[i] == 0) continue;
                const double root = std::sqrt(static_cast<double>(occ[i]));
                occ[i] -= 1;
                const int u = basis.index_of(occ);
                out.amp[u] += a * c * scale * root;
                occ[i] += 1;
            }
        }
    }
    return out;
}

}  // namespace

FockVector apply_creation(const MomentumGrid& g, std::span<const cplx> f, const FockVector& F) {
    return apply_smeared(g, f, F, true);
}

FockVector apply_annihilation(const MomentumGrid& g, std::span<const cplx> f, const FockVector& F) {
    return apply_smeared(g, f, F, false);
}

OperatorMatrix mode_ladder(const OccupationBasis& basis, int mode, bool dagger) {
    if (mode < 0 || mode >= basis.n_modes()) throw std::out_of_range("fock: mode out of range");
    OperatorMatrix M = OperatorMatrix::Zero(basis.dim(), basis.dim());
    for (int v = 0; v < basis.dim(); ++v) {
        std::vector<std::uint8_t> occ = basis.occupations(v);
        if (dagger) {
            if (basis.total(v) + 1 > basis.n_max()) continue;
            occ[mode] += 1;
            M(basis.index_of(occ), v) = std::sqrt(static_cast<double>(occ[mode]));
        } else {
            if (occ[mode] == 0) continue;
            const double root = std::sqrt(static_cast<double>(occ[mode]));
            occ[mode] -= 1;
            M(basis.index_of(occ), v) = root;
        }
    }
    return M;
}

OperatorMatrix point_ladder(const MomentumGrid& g, const OccupationBasis& basis, int mode,
                            bool dagger) {
    const double scale = 1.0 / std::sqrt(g.weight(mode) * g.omega(mode));
    return scale * mode_ladder(basis, mode, dagger);
}

OperatorMatrix operator_matrix(const OccupationBasis& basis,
                               const std::function<FockVector(const FockVector&)>& op) {
    OperatorMatrix M(basis.dim(), basis.dim());
    for (int v = 0; v < basis.dim(); ++v) {
        FockVector e;
        e.basis = &basis;
        e.amp = Eigen::VectorXcd::Zero(basis.dim());
        e.amp[v] = 1.0;
        M.col(v) = op(e).amp;
    }
    return M;
}

OperatorMatrix matrix_of_creation(const MomentumGrid& g, const OccupationBasis& basis,
                                  std::span<const cplx> f) {
    return operator_matrix(basis, [&](const FockVector& F) { return apply_creation(g, f, F); });
}

OperatorMatrix matrix_of_annihilation(const MomentumGrid& g, const OccupationBasis& basis,
                                      std::span<const cplx> f) {
    return operator_matrix(basis, [&](const FockVector& F) { return apply_annihilation(g, f, F); });
}

bool is_hermitian(const OperatorMatrix& M, double tol) {
    return (M - M.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

double max_deviation_from_identity_multiple(const OperatorMatrix& M, const OccupationBasis& basis,
                                            cplx c, int cap) {
    const auto idx = basis.sector_indices(cap);
    double worst = 0.0;
    for (int u : idx)
        for (int v : idx) {
            const cplx want = (u == v) ? c : cplx(0.0);
            worst = std::max(worst, std::abs(M(u, v) - want));
        }
    return worst;
}

cplx mean_diagonal(const OperatorMatrix& M, const OccupationBasis& basis, int cap) {
    const auto idx = basis.sector_indices(cap);
    if (idx.empty()) throw std::invalid_argument("mean_diagonal: empty sub-basis");
    cplx acc = 0.0;
    for (int u : idx) acc += M(u, u);
    return acc / static_cast<double>(idx.size());
}

double max_abs_diff(const OperatorMatrix& A, const OperatorMatrix& B, const OccupationBasis& basis,
                    int cap) {
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw std::invalid_argument("max_abs_diff: dimension mismatch");
    const auto idx = basis.sector_indices(cap);
    double worst = 0.0;
    for (int u : idx)
        for (int v : idx) worst = std::max(worst, std::abs(A(u, v) - B(u, v)));
    return worst;
}

double max_abs(const OperatorMatrix& M) {
    return M.size() == 0 ? 0.0 : M.cwiseAbs().maxCoeff();
}

}  // namespace genfield
