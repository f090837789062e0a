#include "genfield/colombeau.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>

namespace genfield {

namespace {

constexpr double kInvSqrt2Pi = 0.39894228040143267794;
const double kNegInf = -std::numeric_limits<double>::infinity();

// standard normal density derivatives: phi^(n)(u) = (-1)^n He_n(u) phi(u)
double gauss_deriv(double u, int order) {
    const double phi = kInvSqrt2Pi * std::exp(-0.5 * u * u);
    switch (order) {
        case 0: return phi;
        case 1: return -u * phi;
        case 2: return (u * u - 1.0) * phi;
        case 3: return (3.0 * u - u * u * u) * phi;
        default: throw std::invalid_argument("gaussian derivative order > 3");
    }
}

// unnormalized bump exp(-1/(1-u^2)) on |u|<1 and its derivatives via the
// logarithmic derivative chain g = -2u/s^2, s = 1-u^2
double bump_deriv(double u, int order) {
    const double s = 1.0 - u * u;
    if (s <= 1e-12) return 0.0;
    const double rho = std::exp(-1.0 / s);
    if (rho == 0.0) return 0.0;
    const double g = -2.0 * u / (s * s);
    const double gp = -2.0 * (1.0 + 3.0 * u * u) / (s * s * s);
    const double gpp = -24.0 * u * (1.0 + u * u) / (s * s * s * s);
    switch (order) {
        case 0: return rho;
        case 1: return g * rho;
        case 2: return (g * g + gp) * rho;
        case 3: return (g * g * g + 3.0 * g * gp + gpp) * rho;
        default: throw std::invalid_argument("bump derivative order > 3");
    }
}

double bump_norm() {
    // one-time quadrature of the bump over its support (Simpson)
    static const double c = [] {
        const int n = 20000;
        const double h = 2.0 / n;
        double acc = bump_deriv(-1.0, 0) + bump_deriv(1.0, 0);
        for (int k = 1; k < n; ++k) acc += bump_deriv(-1.0 + k * h, 0) * (k % 2 ? 4.0 : 2.0);
        return acc * h / 3.0;
    }();
    return c;
}

std::string fmt(const char* pattern, double a, double b = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b);
    return buf;
}

}  // namespace

std::vector<double> EpsSchedule::samples() const {
    if (!(start > 0.0) || start > 1.0) throw std::invalid_argument("eps schedule start not in (0,1]");
    if (!(ratio > 0.0) || ratio >= 1.0) throw std::invalid_argument("eps schedule ratio not in (0,1)");
    if (count < 1) throw std::invalid_argument("eps schedule count < 1");
    std::vector<double> eps(count);
    double v = start;
    for (int k = 0; k < count; ++k, v *= ratio) eps[k] = v;
    return eps;
}

std::string_view net_kind_name(NetKind kind) {
    return kind == NetKind::SType ? "rapidly-decreasing" : "tempered";
}

std::string_view net_verdict_name(NetVerdict verdict) {
    switch (verdict) {
        case NetVerdict::Moderate: return "Moderate";
        case NetVerdict::Negligible: return "Negligible";
        case NetVerdict::Unclassified: return "Unclassified";
    }
    return "Unclassified";
}

ColombeauNet::ColombeauNet(std::string name, NetKind kind, Evaluator eval, int analytic_order,
                           bool window_certified, double center, double scale_power)
    : name_(std::move(name)),
      kind_(kind),
      eval_(std::move(eval)),
      analytic_order_(analytic_order),
      window_certified_(window_certified),
      center_(center),
      scale_power_(scale_power) {
    if (analytic_order_ < 0) throw std::invalid_argument("net needs analytic order >= 0");
}

double ColombeauNet::derivative(double eps, double x, int order) const {
    if (order < 0) throw std::invalid_argument("derivative order < 0");
    if (order <= analytic_order_) return eval_(eps, x, order);
    // central difference on the highest available order, O(h^2)
    const double h = 6e-6 * std::pow(eps, scale_power_);
    return (derivative(eps, x + h, order - 1) - derivative(eps, x - h, order - 1)) / (2.0 * h);
}

namespace {

// a tau-type factor can grow in x, so the combination is only classifiable
// under the tempered weights
NetKind combined_kind(NetKind a, NetKind b) {
    return (a == NetKind::SType && b == NetKind::SType) ? NetKind::SType : NetKind::TauType;
}

}  // namespace

ColombeauNet ColombeauNet::operator*(const ColombeauNet& rhs) const {
    const ColombeauNet a = *this, b = rhs;
    const int ord = std::min(a.analytic_order_, b.analytic_order_);
    auto eval = [a, b](double eps, double x, int order) {
        double acc = 0.0, binom = 1.0;
        for (int k = 0; k <= order; ++k) {
            acc += binom * a.derivative(eps, x, k) * b.derivative(eps, x, order - k);
            binom = binom * (order - k) / (k + 1);
        }
        return acc;
    };
    const bool a_finer = a.scale_power_ >= b.scale_power_;
    return ColombeauNet("(" + a.name_ + ")*(" + b.name_ + ")", combined_kind(kind_, rhs.kind_),
                        eval, ord, a.window_certified_ && b.window_certified_,
                        a_finer ? a.center_ : b.center_,
                        std::max(a.scale_power_, b.scale_power_));
}

ColombeauNet ColombeauNet::operator+(const ColombeauNet& rhs) const {
    const ColombeauNet a = *this, b = rhs;
    const int ord = std::min(a.analytic_order_, b.analytic_order_);
    auto eval = [a, b](double eps, double x, int order) {
        return a.derivative(eps, x, order) + b.derivative(eps, x, order);
    };
    const bool a_finer = a.scale_power_ >= b.scale_power_;
    return ColombeauNet("(" + a.name_ + ")+(" + b.name_ + ")", combined_kind(kind_, rhs.kind_),
                        eval, ord, a.window_certified_ && b.window_certified_,
                        a_finer ? a.center_ : b.center_,
                        std::max(a.scale_power_, b.scale_power_));
}

double seminorm(const ColombeauNet& net, int q, int l, double eps, const SeminormOptions& opt) {
    if (l < 0) throw std::invalid_argument("seminorm derivative count < 0");
    if (opt.coarse_points < 3 || opt.fine_points < 3)
        throw std::invalid_argument("seminorm lattice too small");
    double sup = 0.0;
    auto visit = [&](double x) {
        double val = 0.0;
        for (int order = 0; order <= l; ++order)
            val = std::max(val, std::abs(net.derivative(eps, x, order)));
        const double term = std::pow(1.0 + std::abs(x), q) * val;
        if (!std::isfinite(term)) {
            sup = std::numeric_limits<double>::infinity();
            return;
        }
        sup = std::max(sup, term);
    };
    for (int k = 0; k < opt.coarse_points && std::isfinite(sup); ++k)
        visit(-opt.window + 2.0 * opt.window * k / (opt.coarse_points - 1));
    // fine lattice resolving features of width ~ eps^scale_power
    const double half = opt.fine_halfwidth * std::pow(eps, net.scale_power());
    for (int k = 0; k < opt.fine_points && std::isfinite(sup); ++k)
        visit(net.center() - half + 2.0 * half * k / (opt.fine_points - 1));
    return sup;
}

GrowthFit growth_exponent(const ColombeauNet& net, int q, int l, const EpsSchedule& schedule,
                          const SeminormOptions& opt) {
    const auto eps = schedule.samples();
    if (eps.size() < 4)
        throw std::invalid_argument("growth exponent needs >= 4 schedule points");
    GrowthFit fit;
    fit.seminorms.reserve(eps.size());
    for (double e : eps) fit.seminorms.push_back(seminorm(net, q, l, e, opt));
    const double lo = *std::min_element(fit.seminorms.begin(), fit.seminorms.end());
    if (lo < 1e-280) {  // underflow-level decay: report as -inf exponent
        fit.slope = kNegInf;
        return fit;
    }
    std::vector<double> inv_eps(eps.size());
    for (std::size_t k = 0; k < eps.size(); ++k) inv_eps[k] = 1.0 / eps[k];
    const SlopeFit s = fit_loglog(inv_eps, fit.seminorms);
    fit.slope = s.slope;
    fit.rms_residual = s.rms_residual;
    return fit;
}

namespace {

enum class RecStatus { Zero, Negligible, Moderate, Wild };

struct Record {
    RecStatus status = RecStatus::Wild;
    double slope = 0.0;
    int q = 0, l = 0;
};

SlopeFit fit_range(const std::vector<double>& inv_eps, const std::vector<double>& v,
                   std::size_t from, std::size_t to) {
    std::vector<double> x(inv_eps.begin() + from, inv_eps.begin() + to);
    std::vector<double> y(v.begin() + from, v.begin() + to);
    return fit_loglog(x, y);
}

Record classify_cell(const ColombeauNet& net, int q, int l, const std::vector<double>& eps,
                     const ClassifyOptions& copt, const SeminormOptions& sopt) {
    Record rec;
    rec.q = q;
    rec.l = l;
    std::vector<double> v, inv_eps;
    for (double e : eps) {
        v.push_back(seminorm(net, q, l, e, sopt));
        inv_eps.push_back(1.0 / e);
    }
    const double hi = *std::max_element(v.begin(), v.end());
    if (hi < 1e-280) {
        rec.status = RecStatus::Zero;
        rec.slope = kNegInf;
        return rec;
    }
    if (!std::isfinite(hi) || *std::min_element(v.begin(), v.end()) < 1e-280) {
        // overflow, or a mix of underflowed and live samples: treat the
        // all-small case as negligible evidence, anything else as wild
        const double lo = *std::min_element(v.begin(), v.end());
        if (std::isfinite(hi) && lo >= 0.0 && hi < 1e-200) {
            rec.status = RecStatus::Negligible;
            rec.slope = kNegInf;
        }
        return rec;
    }
    const std::size_t n = v.size(), half = n / 2;
    const double slope_a = fit_range(inv_eps, v, 0, half).slope;
    const double slope_b = fit_range(inv_eps, v, half, n).slope;
    rec.slope = fit_loglog(inv_eps, v).slope;
    if (slope_b <= -copt.p_max) {
        rec.status = RecStatus::Negligible;  // downward drift is fine here
        rec.slope = slope_b;
    } else if (std::abs(slope_a - slope_b) <= copt.drift_tol) {
        rec.status = RecStatus::Moderate;
    } else {
        rec.status = RecStatus::Wild;
    }
    return rec;
}

bool window_stable_cell(const ColombeauNet& net, int q, int l, double eps,
                        const ClassifyOptions& copt, const SeminormOptions& sopt) {
    if (net.window_certified()) return true;
    SeminormOptions doubled = sopt;
    doubled.window *= 2.0;
    doubled.coarse_points = sopt.coarse_points * 2 - 1;
    const double w1 = seminorm(net, q, l, eps, sopt);
    const double w2 = seminorm(net, q, l, eps, doubled);
    if (!std::isfinite(w1) || !std::isfinite(w2)) return false;
    return w2 <= w1 * (1.0 + copt.window_growth_tol) + 1e-300;
}

struct GroupVerdict {
    NetVerdict verdict;
    double n_hat;
    std::string note;
};

GroupVerdict judge(const std::vector<Record>& recs) {
    bool any_live = false, all_decaying = true;
    double n_hat = kNegInf;
    for (const auto& r : recs) {
        if (r.status == RecStatus::Wild)
            return {NetVerdict::Unclassified, 0.0,
                    fmt("slope unstable across schedule halves at (q=%g,l=%g)", r.q, r.l)};
        if (r.status == RecStatus::Moderate) {
            all_decaying = false;
            n_hat = std::max(n_hat, r.slope);
        }
        if (r.status != RecStatus::Zero) any_live = true;
    }
    if (!any_live) return {NetVerdict::Negligible, kNegInf, "seminorms identically ~0"};
    if (all_decaying)
        return {NetVerdict::Negligible, kNegInf,
                "every weighted seminorm decays at least as fast as eps^p_max"};
    return {NetVerdict::Moderate, n_hat, fmt("stable growth exponents, max %.3f", n_hat)};
}

}  // namespace

Classification classify(const ColombeauNet& net, const EpsSchedule& schedule,
                        const ClassifyOptions& copt, const SeminormOptions& sopt) {
    const auto eps = schedule.samples();
    if (eps.size() < 6)
        throw std::invalid_argument("classification needs >= 6 schedule points");
    Classification out;

    if (net.kind() == NetKind::SType) {
        std::vector<Record> recs;
        for (int q : copt.s_q)
            for (int l = 0; l <= copt.l_max; ++l) {
                if (!window_stable_cell(net, q, l, eps.front(), copt, sopt)) {
                    out.verdict = NetVerdict::Unclassified;
                    out.window_stable = false;
                    out.note = fmt("sup grows under window doubling at (q=%g,l=%g)", q, l);
                    return out;
                }
                recs.push_back(classify_cell(net, q, l, eps, copt, sopt));
            }
        const GroupVerdict gv = judge(recs);
        out.verdict = gv.verdict;
        out.n_hat = gv.n_hat;
        out.note = gv.note + " [evidence at finite sampling]";
        return out;
    }

    // tempered type: existential over the negative-weight exponents
    for (int q : copt.tau_q) {
        bool stable = true;
        std::vector<Record> recs;
        for (int l = 0; l <= copt.l_max && stable; ++l) {
            if (!window_stable_cell(net, -q, l, eps.front(), copt, sopt)) {
                stable = false;
                break;
            }
            recs.push_back(classify_cell(net, -q, l, eps, copt, sopt));
        }
        if (!stable) continue;
        const GroupVerdict gv = judge(recs);
        if (gv.verdict == NetVerdict::Unclassified) continue;
        out.verdict = gv.verdict;
        out.n_hat = gv.n_hat;
        out.note = gv.note + fmt(" [witness weight q=%g, evidence at finite sampling]", q);
        return out;
    }
    out.verdict = NetVerdict::Unclassified;
    out.window_stable = false;
    out.note = "no tempered weight keeps the sup window-stable [evidence at finite sampling]";
    return out;
}

MollifierId mollifier_from_name(std::string_view name) {
    if (name == "gaussian") return MollifierId::Gaussian;
    if (name == "bump") return MollifierId::Bump;
    throw std::invalid_argument("unknown mollifier: " + std::string(name));
}

namespace {

ColombeauNet make_mollifier(std::string name, double p, MollifierId rho) {
    ColombeauNet::Evaluator eval;
    if (rho == MollifierId::Gaussian) {
        eval = [p](double eps, double x, int order) {
            return std::pow(eps, -1.0 - order) * gauss_deriv((x - p) / eps, order);
        };
    } else {
        const double c = bump_norm();
        eval = [p, c](double eps, double x, int order) {
            return std::pow(eps, -1.0 - order) * bump_deriv((x - p) / eps, order) / c;
        };
    }
    return ColombeauNet(std::move(name), NetKind::SType, std::move(eval), 3,
                        /*window_certified=*/true, p, /*scale_power=*/1.0);
}

}  // namespace

ColombeauNet mollified_delta(double p, MollifierId rho) {
    const char* base = rho == MollifierId::Gaussian ? "delta_gauss" : "delta_bump";
    std::string name = p == 0.0 ? base : (std::string(base) + fmt("(p=%g)", p));
    return make_mollifier(std::move(name), p, rho);
}

double delta_pairing(const ColombeauNet& net, const std::function<double(double)>& g, double eps) {
    // Simpson in the scaled variable; the lattice is eps-independent there
    const int n = 20000;
    const double width = std::pow(eps, net.scale_power());
    const double lo = net.center() - 12.0 * width, hi = net.center() + 12.0 * width;
    const double h = (hi - lo) / n;
    auto f = [&](double x) { return net.derivative(eps, x, 0) * g(x); };
    double acc = f(lo) + f(hi);
    for (int k = 1; k < n; ++k) acc += f(lo + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{
        "gaussian_fixed", "poly_gauss",       "sqrt_scaled_gauss", "delta_gauss",
        "delta_bump",     "negligible_gauss", "poly_growth",       "exp_x2"};
    return names;
}

ColombeauNet catalog_net(const std::string& name) {
    if (name == "gaussian_fixed")
        return ColombeauNet(
            name, NetKind::SType,
            [](double, double x, int order) { return gauss_deriv(x, order); }, 3, true);
    if (name == "poly_gauss")
        return ColombeauNet(
            name, NetKind::SType,
            [](double, double x, int order) {
                // (1+x^2) * phi(x) via the product rule
                switch (order) {
                    case 0: return (1.0 + x * x) * gauss_deriv(x, 0);
                    case 1: return 2.0 * x * gauss_deriv(x, 0) + (1.0 + x * x) * gauss_deriv(x, 1);
                    case 2:
                        return 2.0 * gauss_deriv(x, 0) + 4.0 * x * gauss_deriv(x, 1) +
                               (1.0 + x * x) * gauss_deriv(x, 2);
                    default:
                        return 6.0 * gauss_deriv(x, 1) + 6.0 * x * gauss_deriv(x, 2) +
                               (1.0 + x * x) * gauss_deriv(x, 3);
                }
            },
            3, true);
    if (name == "sqrt_scaled_gauss")
        return ColombeauNet(
            name, NetKind::SType,
            [](double eps, double x, int order) {
                const double s = std::sqrt(eps);
                return std::pow(s, -1.0 - order) * gauss_deriv(x / s, order);
            },
            3, true, 0.0, 0.5);
    if (name == "delta_gauss") return make_mollifier(name, 0.0, MollifierId::Gaussian);
    if (name == "delta_bump") return make_mollifier(name, 0.0, MollifierId::Bump);
    if (name == "negligible_gauss")
        return ColombeauNet(
            name, NetKind::SType,
            [](double eps, double x, int order) {
                return std::exp(-1.0 / eps) * gauss_deriv(x, order);
            },
            3, true);
    if (name == "poly_growth")
        return ColombeauNet(
            name, NetKind::TauType,
            [](double, double x, int order) {
                switch (order) {
                    case 0: return 1.0 + x * x;
                    case 1: return 2.0 * x;
                    case 2: return 2.0;
                    default: return 0.0;
                }
            },
            3, false);
    if (name == "exp_x2")
        return ColombeauNet(
            name, NetKind::TauType,
            [](double, double x, int order) {
                const double f = std::exp(x * x);
                switch (order) {
                    case 0: return f;
                    case 1: return 2.0 * x * f;
                    case 2: return (2.0 + 4.0 * x * x) * f;
                    default: return (12.0 * x + 8.0 * x * x * x) * f;
                }
            },
            3, false);
    throw std::invalid_argument("unknown catalog net: " + name);
}

}  // namespace genfield
