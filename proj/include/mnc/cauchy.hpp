#pragma once

// Cauchy problems x' = f(x), x(0) = x0 on the block-c0 model, solved by
// Picard iteration with a measure-of-noncompactness convergence certificate.
//
// The right-hand side acts on head coordinates through a linear map, a
// constant and polynomial monomials; optional per-block tail gains g_j make
// f act on the tail of block j as multiplication by g_j. Since x0 is finitely
// supported, the tail part of the solution is identically zero and the point
// solution lives in the head coordinates.
//
// The set iteration B_{n+1} = co(A(B_n)) is tracked through two channels:
//   head  an interval tube, propagated by interval evaluation of f and
//         intersected with the previous tube;
//   tail  the scalar u_n(t) >= mu(B_n(t)), propagated by the Kamke update
//         u_{n+1} = min(u_n, int w(s, u_n)) starting from u_0(t) = mu(xi t B_X).
//
// The interval [0, a1] is split into windows [t_k, t_k + h_k] on which
// h_k * xi_k <= r, where xi_k bounds |f| on the ball B(x(t_k), r), so every
// Picard iterate started at x(t_k) stays in that ball for the whole window.

#include "mnc/errors.hpp"
#include "mnc/interval.hpp"
#include "mnc/mnc.hpp"
#include "mnc/polynomial.hpp"
#include "mnc/quadrature.hpp"
#include "mnc/structured_set.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mnc {

struct KamkeFn {
    enum class Kind { linear, weighted };

    Kind kind = Kind::linear;
    double rate = 1.0;              // linear: w(t, u) = rate * u
    PiecewisePolynomial weight{};   // weighted: w(t, u) = weight(t) * u

    static KamkeFn linear(double l) {
        if (!(l >= 0.0) || !std::isfinite(l))
            throw construction_error("kamke: linear rate must be finite and >= 0");
        return {Kind::linear, l, {}};
    }

    static KamkeFn weighted(PiecewisePolynomial w) {
        if (!w.certify_nonnegative())
            throw construction_error("kamke: weight must be nonnegative");
        return {Kind::weighted, 0.0, std::move(w)};
    }

    double rate_at(double t) const { return kind == Kind::linear ? rate : weight(std::clamp(t, weight.start(), weight.end())); }
    double operator()(double t, double u) const { return rate_at(t) * u; }

    /// Lower bound of the rate over [lo, hi].
    double min_rate(double lo, double hi) const { return kind == Kind::linear ? rate : weight.bounds(lo, hi).lo; }
};

inline const char* to_string(KamkeFn::Kind k) { return k == KamkeFn::Kind::linear ? "linear" : "weighted"; }

/// coef * prod_l x_l^powers[l], added to component `output`.
struct Monomial {
    double coef = 0.0;
    std::size_t output = 0;
    std::vector<unsigned> powers;
};

inline constexpr unsigned max_monomial_degree = 8;

struct CauchyProblem {
    explicit CauchyProblem(Mnc measure) : mnc(std::move(measure)) {}

    double horizon = 1.0;
    std::vector<std::size_t> head_dims; // N_j per block
    std::vector<double> x0;             // concatenated head coordinates
    std::vector<std::vector<double>> linear; // D x D, empty means zero
    std::vector<double> constant;            // D, empty means zero
    std::vector<Monomial> monomials;
    std::vector<double> tail_gain; // per block, empty means zero
    KamkeFn kamke = KamkeFn::linear(1.0);
    Mnc mnc;
    double radius = 1.0;

    std::size_t blocks() const noexcept { return head_dims.size(); }

    std::size_t dimension() const noexcept {
        std::size_t d = 0;
        for (std::size_t n : head_dims)
            d += n;
        return d;
    }

    double max_tail_gain() const {
        double g = 0.0;
        for (double x : tail_gain)
            g = std::max(g, std::abs(x));
        return g;
    }

    void validate() const {
        if (!(horizon > 0.0) || !std::isfinite(horizon))
            throw construction_error("cauchy problem: horizon must be positive");
        if (head_dims.empty())
            throw construction_error("cauchy problem: needs at least one block");
        if (!(radius > 0.0) || !std::isfinite(radius))
            throw construction_error("cauchy problem: radius must be positive");
        const std::size_t d = dimension();
        if (x0.size() != d)
            throw construction_error("cauchy problem: initial point has " + std::to_string(x0.size()) +
                                     " coordinates, head dimension is " + std::to_string(d));
        if (!linear.empty()) {
            if (linear.size() != d)
                throw construction_error("cauchy problem: linear map must have D rows");
            for (const auto& row : linear)
                if (row.size() != d)
                    throw construction_error("cauchy problem: linear map must have D columns");
        }
        if (!constant.empty() && constant.size() != d)
            throw construction_error("cauchy problem: constant term must have D entries");
        for (const Monomial& m : monomials) {
            if (m.output >= d || m.powers.size() != d)
                throw construction_error("cauchy problem: monomial output or exponent vector out of range");
            unsigned deg = 0;
            for (unsigned p : m.powers)
                deg += p;
            if (deg > max_monomial_degree)
                throw construction_error("cauchy problem: monomial degree exceeds " +
                                         std::to_string(max_monomial_degree));
        }
        if (!tail_gain.empty() && tail_gain.size() != head_dims.size())
            throw construction_error("cauchy problem: tail_gain must have one entry per block");
        if (mnc.blocks() != 0 && mnc.blocks() != blocks())
            throw construction_error("cauchy problem: measure expects " + std::to_string(mnc.blocks()) + " blocks");
        if (kamke.kind == KamkeFn::Kind::weighted &&
            (kamke.weight.start() > 0.0 || kamke.weight.end() < std::min(horizon, mnc.is_sublinear() ? horizon : 1.0)))
            throw construction_error("cauchy problem: Kamke weight must cover the solution interval");
    }

    std::vector<double> rhs(const std::vector<double>& x) const {
        const std::size_t d = dimension();
        std::vector<double> out = constant.empty() ? std::vector<double>(d, 0.0) : constant;
        if (!linear.empty())
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t l = 0; l < d; ++l)
                    out[i] += linear[i][l] * x[l];
        for (const Monomial& m : monomials) {
            double v = m.coef;
            for (std::size_t l = 0; l < d; ++l)
                if (m.powers[l] != 0)
                    v *= std::pow(x[l], static_cast<double>(m.powers[l]));
            out[m.output] += v;
        }
        return out;
    }

    IntervalBox rhs(const IntervalBox& x) const {
        const std::size_t d = dimension();
        IntervalBox out(d);
        for (std::size_t i = 0; i < d; ++i)
            out[i] = Interval::point(constant.empty() ? 0.0 : constant[i]);
        if (!linear.empty())
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t l = 0; l < d; ++l)
                    if (linear[i][l] != 0.0)
                        out[i] = out[i] + linear[i][l] * x[l];
        for (const Monomial& m : monomials) {
            Interval v = Interval::point(m.coef);
            for (std::size_t l = 0; l < d; ++l)
                if (m.powers[l] != 0)
                    v = v * pow(x[l], m.powers[l]);
            out[m.output] = out[m.output] + v;
        }
        return out;
    }

    /// Row-sum bound of the Jacobian over the box: a Lipschitz constant of
    /// the head part of f in the sup norm.
    double lipschitz_bound(const IntervalBox& x) const {
        const std::size_t d = dimension();
        std::vector<IntervalBox> jac(d, IntervalBox(d, Interval::point(0.0)));
        if (!linear.empty())
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t l = 0; l < d; ++l)
                    jac[i][l] = Interval::point(linear[i][l]);
        for (const Monomial& m : monomials)
            for (std::size_t l = 0; l < d; ++l) {
                if (m.powers[l] == 0)
                    continue;
                Interval v = Interval::point(m.coef * m.powers[l]);
                for (std::size_t q = 0; q < d; ++q) {
                    const unsigned p = q == l ? m.powers[q] - 1 : m.powers[q];
                    if (p != 0)
                        v = v * pow(x[q], p);
                }
                jac[m.output][l] = jac[m.output][l] + v;
            }
        double best = max_tail_gain();
        for (const auto& row : jac) {
            double s = 0.0;
            for (const Interval& e : row)
                s += e.mag();
            best = std::max(best, s);
        }
        return best;
    }

    /// Certified bound of |f| on the ball B(c, r) (head box plus tail ball).
    double bound_on_ball(const std::vector<double>& c, double r) const {
        IntervalBox box(c.size());
        for (std::size_t i = 0; i < c.size(); ++i)
            box[i] = Interval::around(c[i], r);
        double xi = max_tail_gain() * r;
        for (const Interval& v : rhs(box))
            xi = std::max(xi, v.mag());
        return xi;
    }
};

/// Samples t0 + i * dt, i = 0..M, of a vector-valued function.
struct GridFunction {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<std::vector<double>> values;

    std::size_t size() const noexcept { return values.size(); }
    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
};

/// Samples of a scalar function on a uniform grid.
struct ScalarGrid {
    double t0 = 0.0;
    double dt = 0.0;
    std::vector<double> values;

    double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
    double max() const {
        double m = 0.0;
        for (double v : values)
            m = std::max(m, v);
        return m;
    }
};

struct PicardStep {
    GridFunction value;
    double quadrature_error = 0.0; // step-halving estimate
};

namespace detail {

inline void require_in_ball(const std::vector<double>& center, const std::vector<double>& x, double r, double t) {
    double dist = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        dist = std::max(dist, std::abs(x[i] - center[i]));
    if (dist > r * (1.0 + 1e-12))
        throw hypothesis_violation("trajectory_within_ball", "iterate leaves the working ball at t = " +
                                                                 std::to_string(t) + ": distance " +
                                                                 std::to_string(dist) + " > r = " + std::to_string(r));
}

// (A x)(t) = start + int_{t0}^t f(x(s)) ds by trapezoids on the grid of x.
inline PicardStep picard_from(const CauchyProblem& p, const std::vector<double>& start, const GridFunction& x) {
    const std::size_t d = p.dimension();
    std::vector<std::vector<double>> fx;
    fx.reserve(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        require_in_ball(start, x.values[i], p.radius, x.time(i));
        fx.push_back(p.rhs(x.values[i]));
    }
    PicardStep out;
    out.value = GridFunction{x.t0, x.dt, std::vector<std::vector<double>>(x.size(), start)};
    std::vector<double> comp(x.size());
    for (std::size_t c = 0; c < d; ++c) {
        for (std::size_t i = 0; i < x.size(); ++i)
            comp[i] = fx[i][c];
        const std::vector<double> run = cumulative_trapezoid(comp, x.dt);
        for (std::size_t i = 0; i < x.size(); ++i)
            out.value.values[i][c] += run[i];
        out.quadrature_error = std::max(out.quadrature_error, trapezoid_halving_error(comp, x.dt));
    }
    return out;
}

inline double sup_distance(const GridFunction& a, const GridFunction& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t c = 0; c < a.values[i].size(); ++c)
            m = std::max(m, std::abs(a.values[i][c] - b.values[i][c]));
    return m;
}

} // namespace detail

/// One application of the Picard operator from t = 0 with start x0.
inline PicardStep picard_step(const CauchyProblem& p, const GridFunction& x) {
    p.validate();
    if (x.size() == 0 || x.t0 != 0.0 || !(x.dt > 0.0))
        throw domain_error("picard_step: grid must start at 0 with positive step");
    for (const auto& v : x.values)
        if (v.size() != p.dimension())
            throw domain_error("picard_step: grid values have the wrong dimension");
    return detail::picard_from(p, p.x0, x);
}

/// u_1..u_n with u_{k+1}(t) = int_{t0}^t w(s, u_k(s)) ds, by fourth-order
/// cumulative quadrature on the grid of u0.
inline std::vector<ScalarGrid> kamke_iterate(const KamkeFn& w, const ScalarGrid& u0, std::size_t iterations) {
    for (double v : u0.values)
        if (v < 0.0)
            throw domain_error("kamke_iterate: u0 must be nonnegative");
    std::vector<ScalarGrid> out;
    ScalarGrid cur = u0;
    std::vector<double> integrand(cur.values.size());
    for (std::size_t n = 0; n < iterations; ++n) {
        for (std::size_t i = 0; i < cur.values.size(); ++i)
            integrand[i] = w(cur.time(i), cur.values[i]);
        ScalarGrid next{cur.t0, cur.dt, cumulative_cubic(integrand, cur.dt)};
        for (double& v : next.values)
            v = std::max(0.0, v);
        out.push_back(next);
        cur = std::move(next);
    }
    return out;
}

struct Tube {
    std::vector<double> grid;
    std::vector<IntervalBox> head;              // per grid point
    std::vector<std::vector<double>> tail_radii; // per grid point and block, from the initial ball bound
    std::vector<double> u;                       // final certificate iterate per grid point
    double lipschitz_bound = 0.0;                // xi, max over windows
};

/// omega(B, eps) <= xi * eps for a tube of xi-Lipschitz functions.
inline double modulus_of_continuity(const Tube& tube, double eps) {
    if (eps < 0.0)
        throw domain_error("modulus_of_continuity: eps must be >= 0");
    return tube.lipschitz_bound * eps;
}

struct Certificate {
    std::vector<double> u_history; // max_t u_n(t), n = 0..iterations
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> kamke_residuals; // per iteration: max |cubic - trapezoid| running integral gap
    std::vector<double> head_width_history;
    // Linear Kamke and degree-one homogeneous mu: u_n(t) = C L^n tau^{n+1} / (n+1)!
    std::optional<std::vector<double>> closed_form_history;
    std::optional<std::vector<double>> closed_form_deviation;
};

struct Window {
    double start = 0.0;
    double end = 0.0;
    std::size_t steps = 0;
    double xi = 0.0;        // bound of |f| on B(x(start), r)
    double lipschitz = 0.0; // head Lipschitz constant on that ball
};

struct SolveOptions {
    double dt = 1e-3;
    std::size_t max_iterations = 200;
    double residual_tol = 1e-6;
    double certificate_tol = 1e-10;
    bool continuation = true;
};

struct SolveResult {
    GridFunction solution;
    Tube tube;
    Certificate certificate;
    std::vector<Window> windows;
    double horizon_used = 0.0;
    bool full_horizon = false; // mu sublinear, so a1 = a
    std::size_t picard_iterations = 0;
    double residual = 0.0;          // ||x - A x|| with the solver's quadrature
    double verified_residual = 0.0; // re-check by Simpson at doubled resolution
    double continuity_margin = 0.0;      // max of |u0(t) - u0(s)| - L_B xi |t - s|
    bool continuity_holds = false;
    bool solution_in_tube = false;
    bool success = false;
    std::string failure;
};

namespace detail {

inline double ball_measure(const Mnc& m, std::size_t k, double radius) {
    return m.from_radii(VElement{std::vector<double>(k, radius)});
}

inline bool degree_one(const Mnc& m) {
    if (m.spec().kind != MncKind::convex_of_radii)
        return true;
    const auto d = m.spec().phi->homogeneity_degree();
    return d && *d == 1.0;
}

// Residual of x against A x computed with Simpson's rule on doubled
// resolution; midpoints come from cubic Hermite interpolation.
inline double simpson_residual(const CauchyProblem& p, const std::vector<double>& start, const GridFunction& x) {
    const std::size_t d = p.dimension();
    std::vector<double> acc(d, 0.0);
    double worst = 0.0;
    std::vector<double> f0 = p.rhs(x.values[0]);
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const std::vector<double> f1 = p.rhs(x.values[i + 1]);
        std::vector<double> mid(d);
        for (std::size_t c = 0; c < d; ++c)
            mid[c] = 0.5 * (x.values[i][c] + x.values[i + 1][c]) + x.dt / 8.0 * (f0[c] - f1[c]);
        const std::vector<double> fm = p.rhs(mid);
        for (std::size_t c = 0; c < d; ++c) {
            acc[c] += x.dt / 6.0 * (f0[c] + 4.0 * fm[c] + f1[c]);
            worst = std::max(worst, std::abs(x.values[i + 1][c] - start[c] - acc[c]));
        }
        f0 = f1;
    }
    return worst;
}

} // namespace detail

inline SolveResult solve(const CauchyProblem& p, const SolveOptions& opts = {}) {
    p.validate();
    if (!(opts.dt > 0.0) || !(opts.residual_tol > 0.0) || !(opts.certificate_tol >= 0.0) || opts.max_iterations == 0)
        throw domain_error("solve: invalid options");

    const Mnc& mu = p.mnc;
    const std::size_t k = p.blocks();
    const std::size_t d = p.dimension();
    const double g = p.max_tail_gain();

    // mu(f(t, B)) <= F(g v(B)) <= w(t, mu(B)) needs L >= g, and g <= 1 when
    // F is not positively homogeneous.
    SolveResult res;
    res.full_horizon = mu.is_sublinear();
    res.horizon_used = res.full_horizon ? p.horizon : std::min(1.0, p.horizon);
    const double a1 = res.horizon_used;
    if (g > 0.0) {
        if (p.kamke.min_rate(0.0, a1) < g)
            throw hypothesis_violation("kamke_comparison", "Kamke rate is below the tail gain " + std::to_string(g));
        if (!detail::degree_one(mu) && g > 1.0)
            throw hypothesis_violation("kamke_comparison",
                                       "tail gain above 1 is not dominated for a non-homogeneous measure");
    }

    const std::size_t m_steps = static_cast<std::size_t>(std::ceil(a1 / opts.dt - 1e-9));
    const double dt = a1 / static_cast<double>(m_steps);

    // Phase 1: windows and point Picard iteration.
    res.solution = GridFunction{0.0, dt, {p.x0}};
    std::size_t done = 0;
    while (done < m_steps) {
        const std::vector<double> xk = res.solution.values.back();
        Window w;
        w.start = static_cast<double>(done) * dt;
        w.xi = p.bound_on_ball(xk, p.radius);
        IntervalBox ball(d);
        for (std::size_t i = 0; i < d; ++i)
            ball[i] = Interval::around(xk[i], p.radius);
        w.lipschitz = p.lipschitz_bound(ball);
        const std::size_t remaining = m_steps - done;
        if (!opts.continuation) {
            if (w.xi * a1 > p.radius)
                throw hypothesis_violation("rhs_bound_within_radius",
                                           "sup |f| on the working ball is " + std::to_string(w.xi) +
                                               ", which exceeds r / a1 = " + std::to_string(p.radius / a1));
            w.steps = remaining;
        } else if (w.xi == 0.0) {
            w.steps = remaining;
        } else {
            const double fit = std::floor(p.radius / (w.xi * dt) + 1e-9);
            w.steps = fit >= static_cast<double>(remaining) ? remaining : static_cast<std::size_t>(fit);
            if (w.steps == 0)
                throw hypothesis_violation("rhs_bound_within_radius",
                                           "sup |f| on the working ball is " + std::to_string(w.xi) +
                                               ", so no grid step h satisfies h * xi <= r");
        }
        w.end = static_cast<double>(done + w.steps) * dt;

        GridFunction x{w.start, dt, std::vector<std::vector<double>>(w.steps + 1, xk)};
        double resid = 0.0;
        std::size_t it = 0;
        bool settled = false;
        for (; it < opts.max_iterations; ++it) {
            PicardStep step = detail::picard_from(p, xk, x);
            resid = detail::sup_distance(step.value, x);
            x = std::move(step.value);
            if (resid <= 1e-2 * opts.residual_tol) {
                settled = true;
                ++it;
                break;
            }
        }
        res.picard_iterations = std::max(res.picard_iterations, it);
        res.residual = std::max(res.residual, resid);
        res.verified_residual = std::max(res.verified_residual, detail::simpson_residual(p, xk, x));
        if (!settled && res.failure.empty())
            res.failure = "Picard iteration did not reach the residual tolerance on window [" +
                          std::to_string(w.start) + ", " + std::to_string(w.end) + "]";
        for (std::size_t i = 1; i < x.size(); ++i)
            res.solution.values.push_back(x.values[i]);
        res.windows.push_back(w);
        done += w.steps;
    }
    if (res.failure.empty() && res.verified_residual > opts.residual_tol)
        res.failure = "independent residual check gives " + std::to_string(res.verified_residual) +
                      " > residual_tol";

    // Phase 2: set iteration, all windows in lockstep.
    struct Channel {
        std::size_t first = 0; // global index of the window start
        std::vector<double> u;
        std::vector<IntervalBox> head;
        double c = 0.0; // mu(xi B_X)
    };
    std::vector<Channel> ch;
    const bool closed = p.kamke.kind == KamkeFn::Kind::linear && detail::degree_one(mu);
    const double l_b = detail::ball_measure(mu, k, 1.0 + p.radius);
    res.continuity_margin = -std::numeric_limits<double>::infinity();
    std::size_t first = 0;
    for (const Window& w : res.windows) {
        Channel c;
        c.first = first;
        c.c = detail::ball_measure(mu, k, w.xi);
        const std::vector<double>& xk = res.solution.values[first];
        for (std::size_t i = 0; i <= w.steps; ++i) {
            const double tau = static_cast<double>(i) * dt;
            c.u.push_back(detail::ball_measure(mu, k, w.xi * tau));
            IntervalBox box(d);
            for (std::size_t q = 0; q < d; ++q)
                box[q] = Interval::around(xk[q], w.xi * tau);
            c.head.push_back(std::move(box));
        }
        for (std::size_t i = 0; i < c.u.size(); ++i)
            for (std::size_t j = i + 1; j < c.u.size(); ++j) {
                const double gap = std::abs(c.u[j] - c.u[i]) - l_b * w.xi * static_cast<double>(j - i) * dt;
                res.continuity_margin = std::max(res.continuity_margin, gap);
            }
        ch.push_back(std::move(c));
        first += w.steps;
    }
    res.continuity_holds = res.continuity_margin <= 1e-12 * (1.0 + l_b);

    Certificate& cert = res.certificate;
    auto record = [&](std::size_t n) {
        double top = 0.0;
        double width = 0.0;
        double model = 0.0;
        double dev = 0.0;
        for (std::size_t w = 0; w < ch.size(); ++w) {
            for (std::size_t i = 0; i < ch[w].u.size(); ++i) {
                top = std::max(top, ch[w].u[i]);
                width = std::max(width, max_width(ch[w].head[i]));
                if (closed) {
                    const double tau = static_cast<double>(i) * dt;
                    const double v = ch[w].c * std::pow(p.kamke.rate, static_cast<double>(n)) *
                                     std::pow(tau, static_cast<double>(n + 1)) /
                                     std::tgamma(static_cast<double>(n + 2));
                    model = std::max(model, v);
                    dev = std::max(dev, std::abs(v - ch[w].u[i]));
                }
            }
        }
        cert.u_history.push_back(top);
        cert.head_width_history.push_back(width);
        if (closed) {
            cert.closed_form_history->push_back(model);
            cert.closed_form_deviation->push_back(dev);
        }
    };
    if (closed) {
        cert.closed_form_history.emplace();
        cert.closed_form_deviation.emplace();
    }
    record(0);

    std::size_t n = 0;
    while (cert.u_history.back() > opts.certificate_tol && n < opts.max_iterations) {
        double gap = 0.0;
        for (std::size_t w = 0; w < ch.size(); ++w) {
            Channel& c = ch[w];
            const Window& win = res.windows[w];
            std::vector<double> integrand(c.u.size());
            for (std::size_t i = 0; i < c.u.size(); ++i)
                integrand[i] = p.kamke(win.start + static_cast<double>(i) * dt, c.u[i]);
            const std::vector<double> cubic = cumulative_cubic(integrand, dt);
            const std::vector<double> trap = cumulative_trapezoid(integrand, dt);
            for (std::size_t i = 0; i < c.u.size(); ++i) {
                gap = std::max(gap, std::abs(cubic[i] - trap[i]));
                c.u[i] = std::min(c.u[i], std::max(0.0, cubic[i]));
            }

            // head: x(t_k) + sum dt * f(hull of neighbouring boxes), intersected
            const std::vector<double>& xk = res.solution.values[c.first];
            IntervalBox acc(d);
            for (std::size_t q = 0; q < d; ++q)
                acc[q] = Interval::point(xk[q]);
            std::vector<IntervalBox> next{acc};
            for (std::size_t i = 0; i + 1 < c.head.size(); ++i) {
                IntervalBox span(d);
                for (std::size_t q = 0; q < d; ++q)
                    span[q] = hull(c.head[i][q], c.head[i + 1][q]);
                const IntervalBox fv = p.rhs(span);
                for (std::size_t q = 0; q < d; ++q)
                    acc[q] = acc[q] + dt * fv[q];
                IntervalBox cut(d);
                for (std::size_t q = 0; q < d; ++q)
                    cut[q] = intersect(acc[q], c.head[i + 1][q]);
                next.push_back(std::move(cut));
            }
            c.head = std::move(next);
        }
        cert.kamke_residuals.push_back(gap);
        ++n;
        record(n);
    }
    cert.iterations = n;
    cert.converged = cert.u_history.back() <= opts.certificate_tol;
    if (!cert.converged && res.failure.empty())
        res.failure = "certificate did not fall below certificate_tol within max_iterations";

    // Tube assembly and containment of the point solution.
    Tube& tube = res.tube;
    res.solution_in_tube = true;
    for (std::size_t w = 0; w < ch.size(); ++w) {
        const Window& win = res.windows[w];
        tube.lipschitz_bound = std::max(tube.lipschitz_bound, win.xi);
        for (std::size_t i = (w == 0 ? 0 : 1); i < ch[w].u.size(); ++i) {
            const std::size_t gi = ch[w].first + i;
            tube.grid.push_back(res.solution.time(gi));
            tube.head.push_back(ch[w].head[i]);
            tube.tail_radii.emplace_back(k, win.xi * static_cast<double>(i) * dt);
            tube.u.push_back(ch[w].u[i]);
            for (std::size_t q = 0; q < d; ++q)
                res.solution_in_tube =
                    res.solution_in_tube && ch[w].head[i][q].contains(res.solution.values[gi][q], 1e-9);
        }
    }
    if (res.failure.empty() && !res.solution_in_tube)
        res.failure = "point solution leaves the head tube";
    if (res.failure.empty() && !res.continuity_holds)
        res.failure = "continuity bound of mu along the initial tube violated";
    res.success = res.failure.empty();
    return res;
}

} // namespace mnc
