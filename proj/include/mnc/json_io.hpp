#pragma once

// JSON encoding and decoding of the library types. Decoders report the JSON
// path of the first offending field through input_error.

#include "mnc/axioms.hpp"
#include "mnc/cauchy.hpp"
#include "mnc/errors.hpp"
#include "mnc/mnc.hpp"
#include "mnc/phi.hpp"
#include "mnc/polynomial.hpp"
#include "mnc/set_family.hpp"
#include "mnc/structured_set.hpp"
#include "mnc/support.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mnc {

using json = nlohmann::json;

inline constexpr int schema_version = 1;

class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

namespace io {

inline const json& at(const json& j, const std::string& key, const std::string& path) {
    if (!j.is_object())
        throw input_error(path + ": expected an object");
    const auto it = j.find(key);
    if (it == j.end())
        throw input_error(path + "." + key + ": missing field");
    return *it;
}

inline bool has(const json& j, const std::string& key) { return j.is_object() && j.contains(key); }

inline double number(const json& j, const std::string& path) {
    if (!j.is_number())
        throw input_error(path + ": expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x))
        throw input_error(path + ": expected a finite number");
    return x;
}

inline std::size_t count(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw input_error(path + ": expected a nonnegative integer");
    return j.get<std::size_t>();
}

inline bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean())
        throw input_error(path + ": expected true or false");
    return j.get<bool>();
}

inline std::string text(const json& j, const std::string& path) {
    if (!j.is_string())
        throw input_error(path + ": expected a string");
    return j.get<std::string>();
}

inline const json& array(const json& j, const std::string& path) {
    if (!j.is_array())
        throw input_error(path + ": expected an array");
    return j;
}

inline std::vector<double> numbers(const json& j, const std::string& path) {
    std::vector<double> out;
    const json& a = array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(number(a[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

inline std::vector<std::vector<double>> matrix(const json& j, const std::string& path) {
    std::vector<std::vector<double>> out;
    const json& a = array(j, path);
    for (std::size_t i = 0; i < a.size(); ++i)
        out.push_back(numbers(a[i], path + "[" + std::to_string(i) + "]"));
    return out;
}

// Runs a constructor and rewrites its validation error as an input error at path.
template <class F>
auto build(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const input_error&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw input_error(path + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw input_error(path + ": " + e.what());
    }
}

inline std::string index(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

} // namespace io

// ---- encoders -------------------------------------------------------------

/// NaN and infinities become null.
inline json encode(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

inline json encode(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v)
        a.push_back(encode(x));
    return a;
}

inline json encode(const BlockBox& b) {
    return {{"center", encode(b.center)}, {"head_radii", encode(b.head_radii)}, {"tail", b.tail_radius}};
}

inline json encode(const BoxTail& b) {
    json blocks = json::array();
    for (const BlockBox& x : b.blocks)
        blocks.push_back(encode(x));
    return {{"blocks", blocks}};
}

inline json encode(const StructuredSet& s) {
    json ms = json::array();
    for (const BoxTail& m : s.members())
        ms.push_back(encode(m));
    return {{"members", ms}, {"convexified", s.convexified()}};
}

inline json encode(const VElement& v) { return encode(v.radii); }

inline json encode(const Phi& p) {
    json args = json::array();
    for (const Phi& a : p.args())
        args.push_back(encode(a));
    switch (p.op()) {
    case Phi::Op::norm:
        return {{"op", "norm"},
                {"order", p.order() == NormOrder::one ? "1" : p.order() == NormOrder::two ? "2" : "inf"}};
    case Phi::Op::linear:
        return {{"op", "linear"}, {"weights", encode(p.weights())}};
    case Phi::Op::power:
        return {{"op", "power"}, {"exponent", p.value()}, {"arg", args[0]}};
    case Phi::Op::sum:
        return {{"op", "sum"}, {"coefs", encode(p.weights())}, {"args", args}};
    case Phi::Op::max:
        return {{"op", "max"}, {"args", args}};
    case Phi::Op::constant:
        return {{"op", "constant"}, {"value", p.value()}};
    }
    return nullptr;
}

inline json encode(const MncSpec& s) {
    json j{{"kind", to_string(s.kind)}};
    if (s.phi)
        j["phi"] = encode(*s.phi);
    if (s.kind == MncKind::weighted_sup) {
        json w = json::array();
        for (const auto& row : s.weights)
            w.push_back(encode(row));
        j["weights"] = w;
    }
    return j;
}

inline json encode(const Mnc& m) {
    json j = encode(m.spec());
    j["class"] = to_string(m.declared_class());
    return j;
}

inline json encode(const PiecewisePolynomial& p) {
    json pieces = json::array();
    for (const auto& c : p.pieces())
        pieces.push_back(encode(c));
    return {{"breakpoints", encode(p.breakpoints())}, {"pieces", pieces}};
}

inline json encode(const SetFamily& f) {
    json blocks = json::array();
    for (const FamilyBlock& b : f.blocks()) {
        json c = json::array();
        json r = json::array();
        for (const auto& p : b.center)
            c.push_back(encode(p));
        for (const auto& p : b.head_radii)
            r.push_back(encode(p));
        blocks.push_back({{"center", c}, {"head_radii", r}, {"tail", encode(b.tail_radius)}});
    }
    return {{"horizon", f.horizon()}, {"blocks", blocks}, {"regularity", to_string(f.regularity_tag())}};
}

inline json encode(const HausdorffResult& h) {
    return {{"value", h.value}, {"tolerance", h.tolerance}, {"exact", h.exact}};
}

inline json encode(const WitnessReport& w) {
    json j{{"r", w.r},       {"c_r", w.c_r},   {"lhs", w.lhs},
           {"distance", w.distance}, {"rhs", w.rhs}, {"holds", w.holds}};
    j["c_sublinear"] = w.c_sublinear ? json(*w.c_sublinear) : json(nullptr);
    j["holds_sublinear"] = w.holds_sublinear ? json(*w.holds_sublinear) : json(nullptr);
    return j;
}

inline json encode(const FunctionalSet& f) {
    json a = json::array();
    for (const auto& v : f.vectors)
        a.push_back(encode(v));
    return a;
}

inline json encode(const Counterexample& c) {
    json sets = json::array();
    for (const StructuredSet& s : c.sets)
        sets.push_back(encode(s));
    return {{"sets", sets}, {"scalars", encode(c.scalars)}, {"lhs", encode(c.lhs)},
            {"relation", c.relation}, {"rhs", encode(c.rhs)}};
}

inline json encode(const PropertyResult& r) {
    json j{{"property", to_string(r.property)},
           {"required", r.required},
           {"trials", r.trials},
           {"violations", r.violations},
           {"tolerance", r.tolerance}};
    j["counterexample"] = r.counterexample ? encode(*r.counterexample) : json(nullptr);
    return j;
}

inline json encode(const AxiomReport& r) {
    json results = json::array();
    for (const PropertyResult& p : r.results)
        results.push_back(encode(p));
    const PropertyResult* f = r.first_failure();
    return {{"mnc", r.mnc},
            {"declared_class", to_string(r.declared)},
            {"samples", r.samples},
            {"seed", r.seed},
            {"passed", r.passed()},
            {"first_failure", f ? json(to_string(f->property)) : json(nullptr)},
            {"results", results}};
}

inline json encode(const InequalityReport& r) {
    return {{"t", r.t},
            {"lhs", r.lhs},
            {"rhs_scaled", r.rhs_scaled},
            {"rhs_plain", r.rhs_plain},
            {"holds_scaled", r.holds_scaled},
            {"holds_plain", r.holds_plain},
            {"plain_guaranteed", r.plain_guaranteed},
            {"quadrature_error_bound", r.quadrature_error_bound}};
}

inline json encode(const KamkeFn& k) {
    if (k.kind == KamkeFn::Kind::linear)
        return {{"kind", "linear"}, {"rate", k.rate}};
    return {{"kind", "weighted"}, {"weight", encode(k.weight)}};
}

inline json encode(const CauchyProblem& p) {
    json lin = json::array();
    for (const auto& row : p.linear)
        lin.push_back(encode(row));
    json mons = json::array();
    for (const Monomial& m : p.monomials)
        mons.push_back({{"coef", m.coef}, {"output", m.output}, {"powers", m.powers}});
    return {{"horizon", p.horizon},    {"head_dims", p.head_dims},      {"x0", encode(p.x0)},
            {"linear", lin},           {"constant", encode(p.constant)}, {"monomials", mons},
            {"tail_gain", encode(p.tail_gain)}, {"kamke", encode(p.kamke)}, {"mnc", encode(p.mnc)},
            {"radius", p.radius}};
}

inline json encode(const Certificate& c) {
    json j{{"u_history", encode(c.u_history)},
           {"iterations", c.iterations},
           {"converged", c.converged},
           {"kamke_residuals", encode(c.kamke_residuals)},
           {"head_width_history", encode(c.head_width_history)}};
    j["closed_form_history"] = c.closed_form_history ? encode(*c.closed_form_history) : json(nullptr);
    j["closed_form_deviation"] = c.closed_form_deviation ? encode(*c.closed_form_deviation) : json(nullptr);
    return j;
}

inline json encode(const Window& w) {
    return {{"start", w.start}, {"end", w.end}, {"steps", w.steps}, {"xi", w.xi}, {"lipschitz", w.lipschitz}};
}

/// Solve summary; the samples themselves go to the CSV companion.
inline json encode(const SolveResult& r) {
    json windows = json::array();
    for (const Window& w : r.windows)
        windows.push_back(encode(w));
    return {{"success", r.success},
            {"failure", r.failure.empty() ? json(nullptr) : json(r.failure)},
            {"horizon_used", r.horizon_used},
            {"horizon_branch", r.full_horizon ? "sublinear: full interval" : "convex: min(1, a)"},
            {"grid_points", r.solution.size()},
            {"dt", r.solution.dt},
            {"final_state", encode(r.solution.values.back())},
            {"picard_iterations", r.picard_iterations},
            {"residual", r.residual},
            {"verified_residual", r.verified_residual},
            {"continuity_margin", encode(r.continuity_margin)},
            {"continuity_holds", r.continuity_holds},
            {"solution_in_tube", r.solution_in_tube},
            {"lipschitz_bound", r.tube.lipschitz_bound},
            {"windows", windows},
            {"certificate", encode(r.certificate)}};
}

// ---- decoders -------------------------------------------------------------

inline BlockBox decode_block(const json& j, const std::string& path) {
    BlockBox b;
    if (io::has(j, "center"))
        b.center = io::numbers(j["center"], path + ".center");
    if (io::has(j, "head_radii"))
        b.head_radii = io::numbers(j["head_radii"], path + ".head_radii");
    b.tail_radius = io::number(io::at(j, "tail", path), path + ".tail");
    if (b.center.size() < b.head_radii.size())
        b.center.resize(b.head_radii.size(), 0.0);
    if (b.head_radii.size() < b.center.size())
        b.head_radii.resize(b.center.size(), 0.0);
    return b;
}

inline BoxTail decode_box(const json& j, const std::string& path) {
    BoxTail b;
    const json& blocks = io::array(io::at(j, "blocks", path), path + ".blocks");
    for (std::size_t i = 0; i < blocks.size(); ++i)
        b.blocks.push_back(decode_block(blocks[i], io::index(path + ".blocks", i)));
    io::build(path, [&] {
        b.validate();
        return 0;
    });
    return b;
}

inline StructuredSet decode_set(const json& j, const std::string& path) {
    std::vector<BoxTail> ms;
    const json& members = io::array(io::at(j, "members", path), path + ".members");
    for (std::size_t i = 0; i < members.size(); ++i)
        ms.push_back(decode_box(members[i], io::index(path + ".members", i)));
    const bool cvx = io::has(j, "convexified") ? io::boolean(j["convexified"], path + ".convexified") : true;
    return io::build(path, [&] { return StructuredSet(std::move(ms), cvx); });
}

inline Phi decode_phi(const json& j, const std::string& path) {
    const std::string op = io::text(io::at(j, "op", path), path + ".op");
    auto args = [&] {
        std::vector<Phi> out;
        const json& a = io::array(io::at(j, "args", path), path + ".args");
        for (std::size_t i = 0; i < a.size(); ++i)
            out.push_back(decode_phi(a[i], io::index(path + ".args", i)));
        return out;
    };
    return io::build(path, [&]() -> Phi {
        if (op == "norm") {
            const json& o = io::at(j, "order", path);
            const std::string s = o.is_number() ? std::to_string(o.get<int>()) : io::text(o, path + ".order");
            if (s == "1")
                return Phi::norm(NormOrder::one);
            if (s == "2")
                return Phi::norm(NormOrder::two);
            if (s == "inf")
                return Phi::norm(NormOrder::inf);
            throw input_error(path + ".order: expected 1, 2 or \"inf\"");
        }
        if (op == "linear")
            return Phi::linear(io::numbers(io::at(j, "weights", path), path + ".weights"));
        if (op == "power")
            return Phi::power(decode_phi(io::at(j, "arg", path), path + ".arg"),
                              io::number(io::at(j, "exponent", path), path + ".exponent"));
        if (op == "sum")
            return Phi::sum(io::numbers(io::at(j, "coefs", path), path + ".coefs"), args());
        if (op == "max")
            return Phi::max(args());
        if (op == "constant")
            return Phi::constant(io::number(io::at(j, "value", path), path + ".value"));
        throw input_error(path + ".op: unknown phi operation \"" + op + "\"");
    });
}

inline MncSpec decode_mnc_spec(const json& j, const std::string& path) {
    const std::string kind = io::text(io::at(j, "kind", path), path + ".kind");
    if (kind == "hausdorff")
        return MncSpec::hausdorff();
    if (kind == "sum")
        return MncSpec::sum();
    if (kind == "weighted_sup")
        return MncSpec::weighted_sup(io::matrix(io::at(j, "weights", path), path + ".weights"));
    if (kind == "convex_of_radii")
        return MncSpec::convex_of_radii(decode_phi(io::at(j, "phi", path), path + ".phi"));
    throw input_error(path + ".kind: unknown measure kind \"" + kind + "\"");
}

inline MncClass decode_class(const json& j, const std::string& path) {
    const std::string s = io::text(j, path);
    for (MncClass c : {MncClass::convex, MncClass::sublinear, MncClass::homogeneous, MncClass::regular})
        if (s == to_string(c))
            return c;
    throw input_error(path + ": unknown class \"" + s + "\"");
}

/// A validated measure, or an unchecked one when "declared" is present.
inline Mnc decode_mnc(const json& j, const std::string& path) {
    const MncSpec spec = decode_mnc_spec(j, path);
    if (io::has(j, "declared"))
        return make_mnc_unchecked(spec, decode_class(j["declared"], path + ".declared"));
    return io::build(path, [&] { return make_mnc(spec); });
}

inline PiecewisePolynomial decode_pp(const json& j, const std::string& path, double horizon) {
    if (j.is_number())
        return PiecewisePolynomial::constant(io::number(j, path), horizon);
    if (io::has(j, "poly"))
        return io::build(path, [&] {
            return PiecewisePolynomial::polynomial(io::numbers(j["poly"], path + ".poly"), horizon);
        });
    const std::vector<double> br = io::numbers(io::at(j, "breakpoints", path), path + ".breakpoints");
    const std::vector<std::vector<double>> pieces = io::matrix(io::at(j, "pieces", path), path + ".pieces");
    return io::build(path, [&] { return PiecewisePolynomial(br, pieces); });
}

inline SetFamily decode_family(const json& j, const std::string& path) {
    const double a = io::number(io::at(j, "horizon", path), path + ".horizon");
    std::vector<FamilyBlock> blocks;
    const json& bs = io::array(io::at(j, "blocks", path), path + ".blocks");
    for (std::size_t i = 0; i < bs.size(); ++i) {
        const std::string p = io::index(path + ".blocks", i);
        FamilyBlock b;
        if (io::has(bs[i], "center")) {
            const json& c = io::array(bs[i]["center"], p + ".center");
            for (std::size_t q = 0; q < c.size(); ++q)
                b.center.push_back(decode_pp(c[q], io::index(p + ".center", q), a));
        }
        if (io::has(bs[i], "head_radii")) {
            const json& r = io::array(bs[i]["head_radii"], p + ".head_radii");
            for (std::size_t q = 0; q < r.size(); ++q)
                b.head_radii.push_back(decode_pp(r[q], io::index(p + ".head_radii", q), a));
        }
        b.tail_radius = decode_pp(io::at(bs[i], "tail", p), p + ".tail", a);
        // missing head radii or centers default to zero, as for single sets
        while (b.head_radii.size() < b.center.size())
            b.head_radii.push_back(PiecewisePolynomial::constant(0.0, a));
        while (b.center.size() < b.head_radii.size())
            b.center.push_back(PiecewisePolynomial::constant(0.0, a));
        blocks.push_back(std::move(b));
    }
    return io::build(path, [&] { return SetFamily(a, std::move(blocks)); });
}

inline KamkeFn decode_kamke(const json& j, const std::string& path, double horizon) {
    const std::string kind = io::text(io::at(j, "kind", path), path + ".kind");
    if (kind == "linear")
        return io::build(path, [&] { return KamkeFn::linear(io::number(io::at(j, "rate", path), path + ".rate")); });
    if (kind == "weighted")
        return io::build(path, [&] { return KamkeFn::weighted(decode_pp(io::at(j, "weight", path), path + ".weight", horizon)); });
    throw input_error(path + ".kind: unknown Kamke kind \"" + kind + "\"");
}

inline CauchyProblem decode_problem(const json& j, const std::string& path) {
    const double a = io::number(io::at(j, "horizon", path), path + ".horizon");
    std::vector<std::size_t> dims;
    const json& hd = io::array(io::at(j, "head_dims", path), path + ".head_dims");
    for (std::size_t i = 0; i < hd.size(); ++i)
        dims.push_back(io::count(hd[i], io::index(path + ".head_dims", i)));
    CauchyProblem p(decode_mnc(io::at(j, "mnc", path), path + ".mnc"));
    p.horizon = a;
    p.head_dims = std::move(dims);
    p.x0 = io::numbers(io::at(j, "x0", path), path + ".x0");
    if (io::has(j, "linear"))
        p.linear = io::matrix(j["linear"], path + ".linear");
    if (io::has(j, "constant"))
        p.constant = io::numbers(j["constant"], path + ".constant");
    if (io::has(j, "monomials")) {
        const json& ms = io::array(j["monomials"], path + ".monomials");
        for (std::size_t i = 0; i < ms.size(); ++i) {
            const std::string mp = io::index(path + ".monomials", i);
            Monomial m;
            m.coef = io::number(io::at(ms[i], "coef", mp), mp + ".coef");
            m.output = io::count(io::at(ms[i], "output", mp), mp + ".output");
            const json& pw = io::array(io::at(ms[i], "powers", mp), mp + ".powers");
            for (std::size_t q = 0; q < pw.size(); ++q)
                m.powers.push_back(static_cast<unsigned>(io::count(pw[q], io::index(mp + ".powers", q))));
            p.monomials.push_back(std::move(m));
        }
    }
    if (io::has(j, "tail_gain"))
        p.tail_gain = io::numbers(j["tail_gain"], path + ".tail_gain");
    if (io::has(j, "kamke"))
        p.kamke = decode_kamke(j["kamke"], path + ".kamke", a);
    if (io::has(j, "radius"))
        p.radius = io::number(j["radius"], path + ".radius");
    io::build(path, [&] {
        p.validate();
        return 0;
    });
    return p;
}

inline SolveOptions decode_options(const json& j, const std::string& path) {
    SolveOptions o;
    if (io::has(j, "dt"))
        o.dt = io::number(j["dt"], path + ".dt");
    if (io::has(j, "max_iterations"))
        o.max_iterations = io::count(j["max_iterations"], path + ".max_iterations");
    if (io::has(j, "residual_tol"))
        o.residual_tol = io::number(j["residual_tol"], path + ".residual_tol");
    if (io::has(j, "certificate_tol"))
        o.certificate_tol = io::number(j["certificate_tol"], path + ".certificate_tol");
    if (io::has(j, "continuation"))
        o.continuation = io::boolean(j["continuation"], path + ".continuation");
    return o;
}

} // namespace mnc
