#include "nwell/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nwell/semiclassics.hpp"

namespace nwell {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

PotentialModel PotentialModel::cosine(double q, double lc, int n_wells) {
    if (q <= 0 || lc <= 0) throw domain_error("cosine: q and lc must be positive");
    if (n_wells < 1) throw domain_error("cosine: need at least one well");
    PotentialModel m;
    m.family_ = PotentialFamily::Cosine;
    m.q_ = q;
    m.lc_ = lc;
    m.n_wells_ = n_wells;
    m.a_ = kPi * lc;
    m.x1_ = 0.5 * kPi * lc; // first minimum of 2q cos(2x/lc)
    m.v0_ = -2.0 * q;
    // window ends at the barrier tops flanking the outermost wells
    m.domain_min_ = m.x1_ - 0.5 * m.a_;
    m.domain_max_ = m.x1_ + (n_wells - 1) * m.a_ + 0.5 * m.a_;
    return m;
}

PotentialModel PotentialModel::parabolic_chain(double v0, double curvature,
                                               double a, double x1, int n_wells) {
    if (curvature <= 0) throw domain_error("parabolic_chain: curvature must be positive");
    if (a <= 0) throw domain_error("parabolic_chain: period must be positive");
    if (n_wells < 1) throw domain_error("parabolic_chain: need at least one well");
    PotentialModel m;
    m.family_ = PotentialFamily::ParabolicChain;
    m.v0_ = v0;
    m.curvature_ = curvature;
    m.a_ = a;
    m.x1_ = x1;
    m.n_wells_ = n_wells;
    // grows quadratically outside the chain; defined everywhere
    m.domain_min_ = -std::numeric_limits<double>::infinity();
    m.domain_max_ = std::numeric_limits<double>::infinity();
    return m;
}

PotentialModel PotentialModel::tabulated(std::vector<double> x, std::vector<double> v) {
    if (x.size() != v.size()) throw domain_error("tabulated: x and V size mismatch");
    if (x.size() < 4) throw domain_error("tabulated: need at least 4 samples");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw domain_error("tabulated: x samples must be strictly increasing");
    PotentialModel m;
    m.family_ = PotentialFamily::Tabulated;
    m.domain_min_ = x.front();
    m.domain_max_ = x.back();
    m.tab_x_ = std::move(x);
    m.tab_v_ = std::move(v);

    // natural cubic spline second derivatives
    const std::size_t n = m.tab_x_.size();
    m.tab_m_.assign(n, 0.0);
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double sig = (m.tab_x_[i] - m.tab_x_[i - 1]) / (m.tab_x_[i + 1] - m.tab_x_[i - 1]);
        double p = sig * m.tab_m_[i - 1] + 2.0;
        m.tab_m_[i] = (sig - 1.0) / p;
        double d = (m.tab_v_[i + 1] - m.tab_v_[i]) / (m.tab_x_[i + 1] - m.tab_x_[i]) -
                   (m.tab_v_[i] - m.tab_v_[i - 1]) / (m.tab_x_[i] - m.tab_x_[i - 1]);
        u[i] = (6.0 * d / (m.tab_x_[i + 1] - m.tab_x_[i - 1]) - sig * u[i - 1]) / p;
    }
    for (std::size_t i = n - 1; i-- > 1;)
        m.tab_m_[i] = m.tab_m_[i] * m.tab_m_[i + 1] + u[i];
    m.tab_m_.front() = m.tab_m_.back() = 0.0;

    m.locate_tabulated_wells();
    return m;
}

void PotentialModel::locate_tabulated_wells() {
    // interior sample minima, refined by a derivative root on the spline
    std::vector<double> minima;
    for (std::size_t i = 1; i + 1 < tab_x_.size(); ++i) {
        if (tab_v_[i] <= tab_v_[i - 1] && tab_v_[i] <= tab_v_[i + 1]) {
            double lo = tab_x_[i - 1], hi = tab_x_[i + 1];
            // bisection on V'
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                if (spline_eval(lo, 1) * spline_eval(mid, 1) <= 0)
                    hi = mid;
                else
                    lo = mid;
            }
            minima.push_back(0.5 * (lo + hi));
        }
    }
    if (minima.empty()) throw domain_error("tabulated: no interior minimum found");
    n_wells_ = static_cast<int>(minima.size());
    x1_ = minima.front();
    v0_ = spline_eval(x1_, 0);
    a_ = n_wells_ > 1 ? (minima.back() - minima.front()) / (n_wells_ - 1)
                      : (domain_max_ - domain_min_);
}

double PotentialModel::spline_eval(double x, int deriv) const {
    auto it = std::upper_bound(tab_x_.begin(), tab_x_.end(), x);
    std::size_t hi = std::clamp<std::size_t>(it - tab_x_.begin(), 1, tab_x_.size() - 1);
    std::size_t lo = hi - 1;
    double h = tab_x_[hi] - tab_x_[lo];
    double A = (tab_x_[hi] - x) / h;
    double B = (x - tab_x_[lo]) / h;
    switch (deriv) {
        case 0:
            return A * tab_v_[lo] + B * tab_v_[hi] +
                   ((A * A * A - A) * tab_m_[lo] + (B * B * B - B) * tab_m_[hi]) * h * h / 6.0;
        case 1:
            return (tab_v_[hi] - tab_v_[lo]) / h +
                   (-(3.0 * A * A - 1.0) * tab_m_[lo] + (3.0 * B * B - 1.0) * tab_m_[hi]) * h / 6.0;
        default:
            return A * tab_m_[lo] + B * tab_m_[hi];
    }
}

double PotentialModel::evaluate(double x) const {
    if (x < domain_min_ || x > domain_max_)
        throw domain_error("evaluate: x outside the model domain");
    switch (family_) {
        case PotentialFamily::Cosine:
            return 2.0 * q_ * std::cos(2.0 * x / lc_);
        case PotentialFamily::ParabolicChain: {
            // distance to the nearest well center
            double j = std::round((x - x1_) / a_);
            j = std::clamp(j, 0.0, static_cast<double>(n_wells_ - 1));
            double d = x - x1_ - j * a_;
            return v0_ + 0.5 * curvature_ * d * d;
        }
        case PotentialFamily::Tabulated:
            return spline_eval(x, 0);
    }
    throw domain_error("evaluate: unknown family");
}

double PotentialModel::barrier_top_value() const {
    switch (family_) {
        case PotentialFamily::Cosine:
            return 2.0 * q_;
        case PotentialFamily::ParabolicChain:
            return v0_ + 0.125 * curvature_ * a_ * a_;
        case PotentialFamily::Tabulated: {
            if (n_wells_ < 2) return evaluate(domain_max_);
            // sample the first barrier
            double best = -std::numeric_limits<double>::infinity();
            for (int i = 0; i <= 256; ++i)
                best = std::max(best, evaluate(x1_ + a_ * i / 256.0));
            return best;
        }
    }
    throw domain_error("barrier_top_value: unknown family");
}

double PotentialModel::cosine_q() const {
    if (family_ != PotentialFamily::Cosine) throw domain_error("not a cosine model");
    return q_;
}

double PotentialModel::cosine_lc() const {
    if (family_ != PotentialFamily::Cosine) throw domain_error("not a cosine model");
    return lc_;
}

QuadraticParams PotentialModel::quadratic_params(double mass) const {
    if (mass <= 0) throw domain_error("quadratic_params: mass must be positive");
    switch (family_) {
        case PotentialFamily::Cosine:
            return {v0_, std::sqrt(8.0 * q_ / mass) / lc_};
        case PotentialFamily::ParabolicChain:
            return {v0_, std::sqrt(curvature_ / mass)};
        case PotentialFamily::Tabulated: {
            // central second difference of the interpolant at the minimum
            double h = a_ * 1e-3;
            double vpp =
                (spline_eval(x1_ + h, 0) - 2.0 * spline_eval(x1_, 0) + spline_eval(x1_ - h, 0)) /
                (h * h);
            if (vpp <= 0)
                throw domain_error("quadratic_params: non-positive curvature at minimum");
            return {v0_, std::sqrt(vpp / mass)};
        }
    }
    throw domain_error("quadratic_params: unknown family");
}

SemiclassicalContext SemiclassicalContext::from_model(const PotentialModel& model,
                                                      double hbar, double mass) {
    if (hbar <= 0 || mass <= 0)
        throw domain_error("context: hbar and mass must be positive");
    auto qp = model.quadratic_params(mass);
    SemiclassicalContext ctx;
    ctx.hbar = hbar;
    ctx.mass = mass;
    ctx.omega = qp.omega;
    ctx.l = std::sqrt(hbar / (mass * qp.omega));
    ctx.a = model.period();
    ctx.x1 = model.first_minimum();
    ctx.v0 = qp.v0;
    ctx.n_wells = model.well_count();
    return ctx;
}

DiagnosticsReport validate_context(const PotentialModel& model,
                                   const SemiclassicalContext& ctx,
                                   const std::vector<int>& bands) {
    DiagnosticsReport rep;
    rep.a_over_l = ctx.a / ctx.l;
    rep.ratio_flag = rep.a_over_l < 5.0;
    rep.bands = bands;

    // periodicity probe over the window where both x and x+a are defined
    if (ctx.n_wells >= 2) {
        double lo = std::max(model.domain_min(), ctx.x1 - 0.4 * ctx.a);
        double hi = std::min(model.domain_max() - ctx.a,
                             ctx.x1 + (ctx.n_wells - 2) * ctx.a + 0.4 * ctx.a);
        const int probes = 512;
        double scale = std::max(1.0, std::abs(model.barrier_top_value() - ctx.v0));
        for (int i = 0; i <= probes && lo < hi; ++i) {
            double x = lo + (hi - lo) * i / probes;
            double dv = std::abs(model.evaluate(x + ctx.a) - model.evaluate(x));
            rep.max_periodicity_violation =
                std::max(rep.max_periodicity_violation, dv / scale);
        }
    }

    for (int n : bands) {
        double mag;
        try {
            mag = hopping_delta(model, ctx, n) / (ctx.hbar * ctx.omega);
        } catch (const std::exception&) {
            mag = std::numeric_limits<double>::quiet_NaN();
        }
        rep.delta_magnitude.push_back(mag);
        if (!(mag <= 0.1)) rep.delta_flag = true;
    }
    return rep;
}

} // namespace nwell
