#include "genfield/chaos.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace genfield {

namespace {

std::size_t ipow(std::size_t base, int exp) {
    std::size_t r = 1;
    for (int k = 0; k < exp; ++k) r *= base;
    return r;
}

void decode(std::size_t flat, int n_modes, int rank, int* digits) {
    for (int k = 0; k < rank; ++k) {
        digits[k] = static_cast<int>(flat % n_modes);
        flat /= n_modes;
    }
}

std::size_t encode(const int* digits, int n_modes, int rank) {
    std::size_t flat = 0;
    for (int k = rank - 1; k >= 0; --k) flat = flat * n_modes + digits[k];
    return flat;
}

void check_shape(const ChaosExpansion& f) {
    if (static_cast<int>(f.sectors.size()) != f.n_max + 1)
        throw std::invalid_argument("chaos: expansion must carry sectors 0..n_max");
    for (int n = 0; n <= f.n_max; ++n)
        if (f.sectors[n].size() != ipow(f.n_modes, n))
            throw std::invalid_argument("chaos: sector tensor has wrong size");
}

double factorial(int n) {
    double r = 1.0;
    for (int k = 2; k <= n; ++k) r *= k;
    return r;
}

// sum over all multi-indices of prod_k w_{i_k} * a * b
cplx weighted_pairing(const std::vector<double>& w, const std::vector<cplx>& a,
                      const std::vector<cplx>& b, int rank) {
    const int N = static_cast<int>(w.size());
    cplx acc = 0.0;
    int digits[16];
    for (std::size_t flat = 0; flat < a.size(); ++flat) {
        decode(flat, N, rank, digits);
        double wp = 1.0;
        for (int k = 0; k < rank; ++k) wp *= w[digits[k]];
        acc += wp * a[flat] * b[flat];
    }
    return acc;
}

// contract z against the first slot under the w-pairing
std::vector<cplx> contract_first(const std::vector<double>& w, std::span<const cplx> z,
                                 const std::vector<cplx>& T, int rank) {
    const int N = static_cast<int>(w.size());
    const std::size_t out_size = ipow(N, rank - 1);
    std::vector<cplx> out(out_size, cplx(0.0));
    for (std::size_t rest = 0; rest < out_size; ++rest) {
        cplx acc = 0.0;
        for (int i = 0; i < N; ++i) acc += w[i] * z[i] * T[i + N * rest];
        out[rest] = acc;
    }
    return out;
}

// symmetrized tensor product sym(z (x) T), T of rank `rank`
std::vector<cplx> sym_vector_tensor(int n_modes, std::span<const cplx> z,
                                    const std::vector<cplx>& T, int rank) {
    const int out_rank = rank + 1;
    const std::size_t out_size = ipow(n_modes, out_rank);
    std::vector<cplx> out(out_size);
    int digits[16], rest[16];
    for (std::size_t flat = 0; flat < out_size; ++flat) {
        decode(flat, n_modes, out_rank, digits);
        cplx acc = 0.0;
        for (int k = 0; k < out_rank; ++k) {
            int r = 0;
            for (int j = 0; j < out_rank; ++j)
                if (j != k) rest[r++] = digits[j];
            acc += z[digits[k]] * T[encode(rest, n_modes, rank)];
        }
        out[flat] = acc / static_cast<double>(out_rank);
    }
    return out;
}

}  // namespace

ChaosExpansion ChaosExpansion::zero(int n_modes, int n_max) {
    ChaosExpansion f;
    f.n_modes = n_modes;
    f.n_max = n_max;
    f.sectors.resize(n_max + 1);
    for (int n = 0; n <= n_max; ++n) f.sectors[n].assign(ipow(n_modes, n), cplx(0.0));
    return f;
}

cplx w_pairing(const MomentumGrid& g, std::span<const cplx> f, std::span<const cplx> h) {
    if (static_cast<int>(f.size()) != g.n_modes() || static_cast<int>(h.size()) != g.n_modes())
        throw std::invalid_argument("w_pairing: length mismatch");
    cplx acc = 0.0;
    for (int i = 0; i < g.n_modes(); ++i) acc += g.weight(i) * f[i] * h[i];
    return acc;
}

std::vector<cplx> symmetrize_sector(int n_modes, int rank, const std::vector<cplx>& data) {
    if (data.size() != ipow(n_modes, rank))
        throw std::invalid_argument("symmetrize: tensor size mismatch");
    if (rank <= 1) return data;
    std::vector<cplx> out(data.size(), cplx(0.0));
    int digits[16], perm[16], permuted[16];
    std::iota(perm, perm + rank, 0);
    double count = 0.0;
    do {
        for (std::size_t flat = 0; flat < data.size(); ++flat) {
            decode(flat, n_modes, rank, digits);
            for (int k = 0; k < rank; ++k) permuted[k] = digits[perm[k]];
            out[flat] += data[encode(permuted, n_modes, rank)];
        }
        count += 1.0;
    } while (std::next_permutation(perm, perm + rank));
    for (auto& v : out) v /= count;
    return out;
}

ChaosExpansion hida_derivative(const MomentumGrid& g, std::span<const cplx> z,
                               const ChaosExpansion& f) {
    check_shape(f);
    if (f.n_modes != g.n_modes()) throw std::invalid_argument("chaos: mode count mismatch");
    ChaosExpansion out = ChaosExpansion::zero(f.n_modes, f.n_max);
    for (int n = 1; n <= f.n_max; ++n) {
        auto c = contract_first(g.weights(), z, f.sectors[n], n);
        for (auto& v : c) v *= static_cast<double>(n);
        out.sectors[n - 1] = std::move(c);
    }
    return out;
}

ChaosExpansion hida_dual(const MomentumGrid& g, std::span<const cplx> z, const ChaosExpansion& F) {
    check_shape(F);
    if (F.n_modes != g.n_modes()) throw std::invalid_argument("chaos: mode count mismatch");
    ChaosExpansion out = ChaosExpansion::zero(F.n_modes, F.n_max);
    // rank n_max+1 output is dropped: top input sector has nowhere to go
    for (int n = 0; n + 1 <= F.n_max; ++n)
        out.sectors[n + 1] = sym_vector_tensor(F.n_modes, z, F.sectors[n], n);
    return out;
}

ChaosExpansion compose_dual_then_deriv(const MomentumGrid& g, std::span<const cplx> eta,
                                       std::span<const cplx> xi, const ChaosExpansion& F) {
    check_shape(F);
    if (F.n_modes != g.n_modes()) throw std::invalid_argument("chaos: mode count mismatch");
    ChaosExpansion out = ChaosExpansion::zero(F.n_modes, F.n_max);
    for (int n = 0; n <= F.n_max; ++n) {
        auto raised = sym_vector_tensor(F.n_modes, xi, F.sectors[n], n);
        auto lowered = contract_first(g.weights(), eta, raised, n + 1);
        for (auto& v : lowered) v *= static_cast<double>(n + 1);
        out.sectors[n] = std::move(lowered);
    }
    return out;
}

cplx dual_pairing(const MomentumGrid& g, const ChaosExpansion& F, const ChaosExpansion& f) {
    check_shape(F);
    check_shape(f);
    if (F.n_modes != g.n_modes() || f.n_modes != g.n_modes() || F.n_max != f.n_max)
        throw std::invalid_argument("dual_pairing: shape mismatch");
    cplx acc = 0.0;
    for (int n = 0; n <= F.n_max; ++n)
        acc += factorial(n) * weighted_pairing(g.weights(), F.sectors[n], f.sectors[n], n);
    return acc;
}

WickEvaluator::WickEvaluator(const MomentumGrid& g) : n_modes_(g.n_modes()), w_(g.weights()) {}

cplx WickEvaluator::tau_pairing(std::span<const cplx> xi, std::span<const cplx> eta) const {
    // <tau, xi (x) eta> with tau_ij = delta_ij / w_i collapses to the w-pairing
    cplx acc = 0.0;
    for (int i = 0; i < n_modes_; ++i) acc += w_[i] * xi[i] * eta[i];
    return acc;
}

std::vector<std::vector<cplx>> WickEvaluator::wick_tensors(std::span<const cplx> zeta,
                                                           int rank) const {
    if (static_cast<int>(zeta.size()) != n_modes_)
        throw std::invalid_argument("evaluate: zeta length mismatch");
    std::vector<std::vector<cplx>> W(rank + 1);
    W[0] = {cplx(1.0)};
    if (rank >= 1) W[1].assign(zeta.begin(), zeta.end());
    for (int n = 2; n <= rank; ++n) {
        auto grown = sym_vector_tensor(n_modes_, zeta, W[n - 1], n - 1);
        // tau (x) :zeta^(n-2):, tau the w-pairing identity kernel, then symmetrize
        const std::size_t low_size = W[n - 2].size();
        std::vector<cplx> trace_term(ipow(n_modes_, n), cplx(0.0));
        for (int i = 0; i < n_modes_; ++i) {
            const std::size_t diag = i + static_cast<std::size_t>(n_modes_) * i;
            for (std::size_t rest = 0; rest < low_size; ++rest)
                trace_term[diag + static_cast<std::size_t>(n_modes_) * n_modes_ * rest] =
                    W[n - 2][rest] / w_[i];
        }
        trace_term = symmetrize_sector(n_modes_, n, trace_term);
        W[n].resize(grown.size());
        const double nm1 = static_cast<double>(n - 1);
        for (std::size_t k = 0; k < grown.size(); ++k) W[n][k] = grown[k] - nm1 * trace_term[k];
    }
    return W;
}

cplx WickEvaluator::evaluate(const ChaosExpansion& f, std::span<const cplx> zeta) const {
    check_shape(f);
    if (f.n_modes != n_modes_) throw std::invalid_argument("evaluate: mode count mismatch");
    const auto W = wick_tensors(zeta, f.n_max);
    cplx acc = 0.0;
    for (int n = 0; n <= f.n_max; ++n) acc += weighted_pairing(w_, W[n], f.sectors[n], n);
    return acc;
}

FockVector to_fock(const MomentumGrid& g, const ChaosExpansion& f, const OccupationBasis& basis) {
    check_shape(f);
    if (basis.n_modes() != f.n_modes || basis.n_max() != f.n_max)
        throw std::invalid_argument("to_fock: basis shape mismatch");
    FockVector F;
    F.basis = &basis;
    F.amp = Eigen::VectorXcd::Zero(basis.dim());
    int digits[16];
    for (int u = 0; u < basis.dim(); ++u) {
        const auto& occ = basis.occupations(u);
        const int n = basis.total(u);
        int pos = 0;
        double unit_scale = factorial(n);  // n! * prod_i w_i^{n_i/2} / sqrt(n_i!)
        for (int i = 0; i < basis.n_modes(); ++i) {
            for (int k = 0; k < occ[i]; ++k) digits[pos++] = i;
            unit_scale *= std::pow(g.weight(i), occ[i] / 2.0) / std::sqrt(factorial(occ[i]));
        }
        F.amp[u] = unit_scale * f.sectors[n][encode(digits, f.n_modes, n)];
    }
    return F;
}

ChaosExpansion to_chaos(const MomentumGrid& g, const FockVector& F) {
    const OccupationBasis& basis = *F.basis;
    if (basis.n_modes() != g.n_modes()) throw std::invalid_argument("to_chaos: mode mismatch");
    ChaosExpansion f = ChaosExpansion::zero(basis.n_modes(), basis.n_max());
    std::vector<int> digits;
    for (int u = 0; u < basis.dim(); ++u) {
        if (F.amp[u] == cplx(0.0)) continue;
        const auto& occ = basis.occupations(u);
        const int n = basis.total(u);
        digits.clear();
        double unit_scale = 1.0 / factorial(n);  // sqrt(n_i!) * w_i^{-n_i/2} / n!
        for (int i = 0; i < basis.n_modes(); ++i) {
            for (int k = 0; k < occ[i]; ++k) digits.push_back(i);
            unit_scale *= std::sqrt(factorial(occ[i])) * std::pow(g.weight(i), -occ[i] / 2.0);
        }
        const cplx value = F.amp[u] * unit_scale;
        // symmetric tensor: the same value on every distinct slot arrangement
        do {
            f.sectors[n][encode(digits.data(), f.n_modes, n)] = value;
        } while (std::next_permutation(digits.begin(), digits.end()));
    }
    return f;
}

double leibniz_check(const MomentumGrid& g, std::span<const cplx> z, const ChaosExpansion& f1,
                     const ChaosExpansion& f2, std::span<const cplx> zeta, double eps_fd) {
    WickEvaluator ev(g);
    const int N = g.n_modes();
    auto shifted = [&](double h) {
        std::vector<cplx> zh(zeta.begin(), zeta.end());
        for (int i = 0; i < N; ++i) zh[i] += h * z[i];
        return ev.evaluate(f1, zh) * ev.evaluate(f2, zh);
    };
    auto central = [&](double h) { return (shifted(h) - shifted(-h)) / (2.0 * h); };
    const cplx fd = (4.0 * central(eps_fd / 2.0) - central(eps_fd)) / 3.0;  // Richardson

    const cplx exact = ev.evaluate(hida_derivative(g, z, f1), zeta) * ev.evaluate(f2, zeta) +
                       ev.evaluate(f1, zeta) * ev.evaluate(hida_derivative(g, z, f2), zeta);
    return std::abs(fd - exact);
}

std::vector<double> gateaux_errors(const MomentumGrid& g, const ChaosExpansion& f,
                                   std::span<const cplx> zeta, std::span<const cplx> z,
                                   std::span<const double> eps) {
    WickEvaluator ev(g);
    const int N = g.n_modes();
    const cplx base = ev.evaluate(f, zeta);
    const cplx exact = ev.evaluate(hida_derivative(g, z, f), zeta);
    std::vector<double> errs;
    errs.reserve(eps.size());
    for (double h : eps) {
        std::vector<cplx> zh(zeta.begin(), zeta.end());
        for (int i = 0; i < N; ++i) zh[i] += h * z[i];
        const cplx fd = (ev.evaluate(f, zh) - base) / h;
        errs.push_back(std::abs(fd - exact));
    }
    return errs;
}

SlopeFit fit_loglog(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog: need >= 2 paired points");
    const int n = static_cast<int>(x.size());
    std::vector<double> lx(n), ly(n);
    for (int k = 0; k < n; ++k) {
        if (!(x[k] > 0.0) || !(y[k] > 0.0))
            throw std::invalid_argument("fit_loglog: data must be positive");
        lx[k] = std::log(x[k]);
        ly[k] = std::log(y[k]);
    }
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int k = 0; k < n; ++k) {
        sx += lx[k];
        sy += ly[k];
        sxx += lx[k] * lx[k];
        sxy += lx[k] * ly[k];
    }
    const double denom = n * sxx - sx * sx;
    SlopeFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    const double intercept = (sy - fit.slope * sx) / n;
    double rss = 0.0;
    for (int k = 0; k < n; ++k) {
        const double r = ly[k] - (fit.slope * lx[k] + intercept);
        rss += r * r;
    }
    fit.rms_residual = std::sqrt(rss / n);
    return fit;
}

}  // namespace genfield
