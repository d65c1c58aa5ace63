#pragma once

// A small compositional catalog of scalarizations of the radii vector. Every
// node is a nonnegative, convex, componentwise nondecreasing function on the
// positive orthant (except `constant`, which exists only so that broken
// measures can be built on purpose). Convexity and monotonicity are closed
// under the catalog's combinators:
//   - norm(q), linear(w >= 0): convex, monotone, degree 1
//   - power(g, p >= 1): h(t) = t^p is convex nondecreasing on t >= 0
//   - sum(c_i >= 0, g_i), max(g_i)

#include "mnc/errors.hpp"
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

enum class NormOrder { one, two, inf };

/// A finite set of positive functionals on the radii cone.
struct FunctionalSet {
    std::vector<std::vector<double>> vectors;
};

inline double pairing(const std::vector<double>& w, const VElement& v) {
    if (w.size() != v.size())
        throw domain_error("functional and radii vector have different lengths");
    double s = 0.0;
    for (std::size_t j = 0; j < w.size(); ++j)
        s += w[j] * v.radii[j];
    return s;
}

/// sup over M of <w, v>.
inline double functional_sup(const FunctionalSet& m, const VElement& v) {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& w : m.vectors)
        best = std::max(best, pairing(w, v));
    return best;
}

class Phi {
public:
    enum class Op { norm, linear, power, sum, max, constant };

    static Phi norm(NormOrder q) {
        Phi p(Op::norm);
        p.order_ = q;
        return p;
    }

    static Phi linear(std::vector<double> w) {
        for (double x : w)
            if (!std::isfinite(x) || x < 0.0)
                throw construction_error("phi: linear weights must be finite and >= 0");
        Phi p(Op::linear);
        p.weights_ = std::move(w);
        return p;
    }

    static Phi power(Phi arg, double exponent) {
        if (!std::isfinite(exponent) || exponent < 1.0)
            throw construction_error("phi: power exponent must be >= 1");
        Phi p(Op::power);
        p.value_ = exponent;
        p.args_.push_back(std::move(arg));
        return p;
    }

    static Phi sum(std::vector<double> coefs, std::vector<Phi> args) {
        if (coefs.size() != args.size() || args.empty())
            throw construction_error("phi: sum needs one coefficient per term");
        for (double c : coefs)
            if (!std::isfinite(c) || c < 0.0)
                throw construction_error("phi: sum coefficients must be finite and >= 0");
        Phi p(Op::sum);
        p.weights_ = std::move(coefs);
        p.args_ = std::move(args);
        return p;
    }

    static Phi max(std::vector<Phi> args) {
        if (args.empty())
            throw construction_error("phi: max needs at least one argument");
        Phi p(Op::max);
        p.args_ = std::move(args);
        return p;
    }

    /// Not a valid scalarization unless c == 0. Used for negative controls.
    static Phi constant(double c) {
        Phi p(Op::constant);
        p.value_ = c;
        return p;
    }

    Op op() const noexcept { return op_; }
    NormOrder order() const noexcept { return order_; }
    double value() const noexcept { return value_; }
    const std::vector<double>& weights() const noexcept { return weights_; }
    const std::vector<Phi>& args() const noexcept { return args_; }

    double operator()(const VElement& v) const {
        switch (op_) {
        case Op::norm: {
            double s = 0.0;
            switch (order_) {
            case NormOrder::one:
                for (double r : v.radii)
                    s += r;
                return s;
            case NormOrder::two:
                for (double r : v.radii)
                    s += r * r;
                return std::sqrt(s);
            case NormOrder::inf:
                return v.norm();
            }
            return s;
        }
        case Op::linear:
            return pairing(weights_, v);
        case Op::power: {
            const double x = args_[0](v);
            if (value_ == 1.0)
                return x;
            if (value_ == 2.0)
                return x * x;
            return std::pow(x, value_);
        }
        case Op::sum: {
            double s = 0.0;
            for (std::size_t i = 0; i < args_.size(); ++i)
                s += weights_[i] * args_[i](v);
            return s;
        }
        case Op::max: {
            double s = -std::numeric_limits<double>::infinity();
            for (const Phi& a : args_)
                s = std::max(s, a(v));
            return s;
        }
        case Op::constant:
            return value_;
        }
        return 0.0;
    }

    /// Degree d with phi(t v) = t^d phi(v) for t >= 0, when there is one.
    std::optional<double> homogeneity_degree() const {
        switch (op_) {
        case Op::norm:
        case Op::linear:
            return 1.0;
        case Op::power: {
            auto d = args_[0].homogeneity_degree();
            if (!d)
                return std::nullopt;
            return *d * value_;
        }
        case Op::sum:
        case Op::max: {
            std::optional<double> d;
            for (std::size_t i = 0; i < args_.size(); ++i) {
                if (op_ == Op::sum && weights_[i] == 0.0)
                    continue;
                auto di = args_[i].homogeneity_degree();
                if (!di || (d && *d != *di))
                    return std::nullopt;
                d = di;
            }
            return d;
        }
        case Op::constant:
            return std::nullopt;
        }
        return std::nullopt;
    }

    /// phi(max(u, v)) == max(phi(u), phi(v)) on the orthant.
    bool preserves_max() const {
        switch (op_) {
        case Op::norm:
            return order_ == NormOrder::inf;
        case Op::linear:
            return std::count_if(weights_.begin(), weights_.end(), [](double w) { return w != 0.0; }) <= 1;
        case Op::power:
            return args_[0].preserves_max();
        case Op::max:
            return std::all_of(args_.begin(), args_.end(), [](const Phi& a) { return a.preserves_max(); });
        case Op::sum: {
            std::size_t live = 0;
            bool ok = true;
            for (std::size_t i = 0; i < args_.size(); ++i)
                if (weights_[i] != 0.0) {
                    ++live;
                    ok = ok && args_[i].preserves_max();
                }
            return live <= 1 && ok;
        }
        case Op::constant:
            return true;
        }
        return false;
    }

    /// phi(t e_j) > 0 for t > 0.
    bool positive_on(std::size_t j) const {
        switch (op_) {
        case Op::norm:
            return true;
        case Op::linear:
            return j < weights_.size() && weights_[j] > 0.0;
        case Op::power:
            return args_[0].positive_on(j);
        case Op::sum:
            for (std::size_t i = 0; i < args_.size(); ++i)
                if (weights_[i] > 0.0 && args_[i].positive_on(j))
                    return true;
            return false;
        case Op::max:
            return std::any_of(args_.begin(), args_.end(), [j](const Phi& a) { return a.positive_on(j); });
        case Op::constant:
            return value_ > 0.0;
        }
        return false;
    }

    /// Length forced by linear weights, or 0 when any length works.
    std::size_t required_length() const {
        std::size_t k = op_ == Op::linear ? weights_.size() : 0;
        for (const Phi& a : args_) {
            const std::size_t ka = a.required_length();
            if (ka != 0 && k != 0 && ka != k)
                throw construction_error("phi: linear weight vectors of different lengths");
            k = std::max(k, ka);
        }
        return k;
    }

    bool has_constant() const {
        return op_ == Op::constant ||
               std::any_of(args_.begin(), args_.end(), [](const Phi& a) { return a.has_constant(); });
    }

    /// Finite M with phi(v) = max_{w in M} <w, v> on the orthant, for the
    /// degree-1 part of the catalog that admits one. The l2 norm needs an
    /// infinite M and yields nullopt.
    std::optional<FunctionalSet> functionals(std::size_t k) const {
        switch (op_) {
        case Op::norm:
            if (order_ == NormOrder::inf) {
                FunctionalSet m;
                for (std::size_t j = 0; j < k; ++j) {
                    std::vector<double> e(k, 0.0);
                    e[j] = 1.0;
                    m.vectors.push_back(std::move(e));
                }
                return m;
            }
            if (order_ == NormOrder::one)
                return FunctionalSet{{std::vector<double>(k, 1.0)}};
            return std::nullopt;
        case Op::linear:
            return FunctionalSet{{weights_}};
        case Op::power:
            if (value_ != 1.0)
                return std::nullopt;
            return args_[0].functionals(k);
        case Op::max: {
            FunctionalSet m;
            for (const Phi& a : args_) {
                auto ma = a.functionals(k);
                if (!ma)
                    return std::nullopt;
                m.vectors.insert(m.vectors.end(), ma->vectors.begin(), ma->vectors.end());
            }
            return m;
        }
        case Op::sum: {
            // sup of a nonnegative combination = Minkowski combination of the sets
            FunctionalSet m{{std::vector<double>(k, 0.0)}};
            for (std::size_t i = 0; i < args_.size(); ++i) {
                auto ma = args_[i].functionals(k);
                if (!ma)
                    return std::nullopt;
                FunctionalSet next;
                for (const auto& base : m.vectors)
                    for (const auto& w : ma->vectors) {
                        std::vector<double> s = base;
                        for (std::size_t j = 0; j < k; ++j)
                            s[j] += weights_[i] * w[j];
                        next.vectors.push_back(std::move(s));
                    }
                m = std::move(next);
            }
            return m;
        }
        case Op::constant:
            return std::nullopt;
        }
        return std::nullopt;
    }

    std::string describe() const {
        switch (op_) {
        case Op::norm:
            return order_ == NormOrder::one ? "l1" : order_ == NormOrder::two ? "l2" : "linf";
        case Op::linear:
            return "linear";
        case Op::power:
            return "(" + args_[0].describe() + ")^" + std::to_string(value_);
        case Op::sum:
            return "sum";
        case Op::max:
            return "max";
        case Op::constant:
            return "constant";
        }
        return "?";
    }

private:
    explicit Phi(Op op) : op_(op) {}

    Op op_;
    NormOrder order_ = NormOrder::inf;
    double value_ = 0.0;
    std::vector<double> weights_;
    std::vector<Phi> args_;
};

} // namespace mnc
