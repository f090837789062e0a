#pragma once

#include <functional>
#include <string>
#include <vector>

#include "genfield/chaos.hpp"  // SlopeFit / fit_loglog

namespace genfield {

// Geometric sampling of the regularization index set (0, 1].
struct EpsSchedule {
    double start = 0.5;
    double ratio = 0.5;
    int count = 8;

    std::vector<double> samples() const;  // validates, strictly decreasing
};

enum class NetKind { SType, TauType };
enum class NetVerdict { Moderate, Negligible, Unclassified };

std::string_view net_kind_name(NetKind kind);
std::string_view net_verdict_name(NetVerdict verdict);

// A net of smooth functions on a 1-d window: for each eps a function with
// analytic derivatives up to analytic_order (higher orders fall back to
// central differences on the top analytic order, O(h^2)). window_certified
// marks nets whose construction guarantees the weighted sup lives inside the
// evaluation window (superpolynomially decaying catalog families); nets
// without the certificate get a window-doubling stability check during
// classification.
class ColombeauNet {
public:
    // eval(eps, x, order) for order <= analytic_order
    using Evaluator = std::function<double(double, double, int)>;

    ColombeauNet(std::string name, NetKind kind, Evaluator eval, int analytic_order,
                 bool window_certified, double center = 0.0, double scale_power = 0.0);

    const std::string& name() const { return name_; }
    NetKind kind() const { return kind_; }
    bool window_certified() const { return window_certified_; }
    int analytic_order() const { return analytic_order_; }
    double center() const { return center_; }
    // features live at width ~ eps^scale_power around center
    double scale_power() const { return scale_power_; }

    double derivative(double eps, double x, int order) const;

    // Leibniz / linear combination of derivative data; certificates AND
    ColombeauNet operator*(const ColombeauNet& rhs) const;
    ColombeauNet operator+(const ColombeauNet& rhs) const;

private:
    std::string name_;
    NetKind kind_;
    Evaluator eval_;
    int analytic_order_;
    bool window_certified_;
    double center_;
    double scale_power_;
};

struct SeminormOptions {
    double window = 12.0;       // coarse lattice on [-window, window] + center
    int coarse_points = 961;    // odd, so the center is a lattice point
    int fine_points = 961;      // fine lattice at the net's eps-scale
    double fine_halfwidth = 12.0;  // in units of eps^scale_power
};

// mu_{q,l}(f_eps) = sup (1+|x|)^q max_{order<=l} |f_eps^(order)(x)| over the
// two-scale lattice; q may be negative (tempered-type weights).
double seminorm(const ColombeauNet& net, int q, int l, double eps,
                const SeminormOptions& opt = {});

struct GrowthFit {
    double slope = 0.0;  // of log mu vs log(1/eps); -inf when mu underflows
    double rms_residual = 0.0;
    std::vector<double> seminorms;
};

GrowthFit growth_exponent(const ColombeauNet& net, int q, int l, const EpsSchedule& schedule,
                          const SeminormOptions& opt = {});

struct ClassifyOptions {
    int l_max = 3;
    std::vector<int> s_q{0, 1, 2};    // weights (1+|x|)^q
    std::vector<int> tau_q{1, 2, 4};  // weights (1+|x|)^-q, existential
    double p_max = 6.0;               // negligibility depth
    double drift_tol = 0.75;          // half-schedule slope drift for "stable"
    double window_growth_tol = 0.05;  // sup growth allowed under doubling
};

struct Classification {
    NetVerdict verdict = NetVerdict::Unclassified;
    double n_hat = 0.0;  // max stable growth exponent (moderateness evidence)
    bool window_stable = true;
    std::string note;  // evidence wording for reports
};

// Finite-sampling EVIDENCE, not proof: slopes over the schedule, negligible
// when every weighted seminorm decays at least as fast as eps^p_max, moderate
// when slopes are stable and the window is trustworthy, else unclassified.
Classification classify(const ColombeauNet& net, const EpsSchedule& schedule,
                        const ClassifyOptions& copt = {}, const SeminormOptions& sopt = {});

enum class MollifierId { Gaussian, Bump };

MollifierId mollifier_from_name(std::string_view name);

// delta_eps(x) = eps^-1 rho((x - p)/eps) with unit integral
ColombeauNet mollified_delta(double p, MollifierId rho);

// <delta_eps, g> by quadrature across the mollifier support
double delta_pairing(const ColombeauNet& delta_net, const std::function<double(double)>& g,
                     double eps);

// Built-in nets referenced by name from configs and tests.
const std::vector<std::string>& catalog_names();
ColombeauNet catalog_net(const std::string& name);

}  // namespace genfield
