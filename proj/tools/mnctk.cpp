// mnctk: command-line front end for the measure-of-noncompactness toolkit.
//
// Exit codes: 0 all checks passed, 1 a mathematical check failed (the report
// carries the evidence), 2 usage or input error (no output is written).

#include "mnc/all.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using mnc::json;

struct Config {
    std::string command;
    std::string input;
    std::string output;
    std::uint64_t seed = 42;
    std::size_t samples = 1000;
    std::optional<double> tol;
};

struct Outcome {
    json results;
    bool passed = true;
    std::string csv; // empty: no companion file
};

class usage_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt(double x) {
    std::ostringstream s;
    s.precision(17);
    s << x;
    return s.str();
}

// ---- sets -----------------------------------------------------------------

mnc::Direction decode_direction(const json& j, const std::string& path) {
    std::vector<mnc::DirectionBlock> blocks;
    const json& bs = mnc::io::array(mnc::io::at(j, "blocks", path), path + ".blocks");
    for (std::size_t i = 0; i < bs.size(); ++i) {
        const std::string p = mnc::io::index(path + ".blocks", i);
        mnc::DirectionBlock b;
        if (mnc::io::has(bs[i], "head"))
            b.head = mnc::io::numbers(bs[i]["head"], p + ".head");
        if (mnc::io::has(bs[i], "tail"))
            b.tail = mnc::io::number(bs[i]["tail"], p + ".tail");
        blocks.push_back(std::move(b));
    }
    return mnc::io::build(path, [&] { return mnc::Direction(std::move(blocks)); });
}

Outcome run_sets(const json& in, const Config& cfg) {
    std::map<std::string, mnc::StructuredSet> named;
    if (mnc::io::has(in, "sets")) {
        const json& s = in["sets"];
        if (!s.is_object())
            throw mnc::input_error("$.sets: expected an object of named sets");
        for (const auto& [name, value] : s.items())
            named.emplace(name, mnc::decode_set(value, "$.sets." + name));
    }
    auto arg = [&](const json& q, const std::string& key, const std::string& path) {
        const json& v = mnc::io::at(q, key, path);
        if (v.is_string()) {
            const auto it = named.find(v.get<std::string>());
            if (it == named.end())
                throw mnc::input_error(path + "." + key + ": no set named \"" + v.get<std::string>() + "\"");
            return it->second;
        }
        return mnc::decode_set(v, path + "." + key);
    };

    mnc::HausdorffOptions hopt;
    if (cfg.tol)
        hopt.eps = *cfg.tol;

    Outcome out;
    out.results = json::array();
    const json& qs = mnc::io::array(mnc::io::at(in, "queries", "$"), "$.queries");
    for (std::size_t i = 0; i < qs.size(); ++i) {
        const std::string p = mnc::io::index("$.queries", i);
        const std::string op = mnc::io::text(mnc::io::at(qs[i], "op", p), p + ".op");
        json r{{"op", op}};
        auto guarded = [&](auto&& f) { return mnc::io::build(p, f); };
        if (op == "v_embed") {
            r["value"] = mnc::encode(mnc::v_embed(arg(qs[i], "a", p)));
        } else if (op == "beta") {
            r["value"] = mnc::beta(arg(qs[i], "a", p));
        } else if (op == "alpha_bracket") {
            const mnc::Bracket b = mnc::alpha_bracket(arg(qs[i], "a", p));
            r["value"] = {{"lower", b.lower}, {"upper", b.upper}};
        } else if (op == "norm") {
            r["value"] = mnc::set_norm(arg(qs[i], "a", p));
        } else if (op == "minkowski_sum") {
            const auto a = arg(qs[i], "a", p);
            const auto b = arg(qs[i], "b", p);
            r["value"] = mnc::encode(guarded([&] { return mnc::minkowski_sum(a, b); }));
        } else if (op == "scale") {
            const double k = mnc::io::number(mnc::io::at(qs[i], "scalar", p), p + ".scalar");
            r["value"] = mnc::encode(mnc::scale(arg(qs[i], "a", p), k));
        } else if (op == "convex_hull") {
            r["value"] = mnc::encode(mnc::convex_hull(arg(qs[i], "a", p)));
        } else if (op == "union") {
            const auto a = arg(qs[i], "a", p);
            const auto b = arg(qs[i], "b", p);
            r["value"] = mnc::encode(guarded([&] { return mnc::set_union(a, b); }));
        } else if (op == "hausdorff") {
            const auto a = arg(qs[i], "a", p);
            const auto b = arg(qs[i], "b", p);
            r["value"] = mnc::encode(guarded([&] { return mnc::hausdorff_distance(a, b, hopt); }));
        } else if (op == "support") {
            const auto a = arg(qs[i], "a", p);
            const mnc::Direction d = decode_direction(mnc::io::at(qs[i], "direction", p), p + ".direction");
            r["value"] = guarded([&] { return mnc::eval_support(a, d); });
        } else if (op == "quotient_leq") {
            const auto a = arg(qs[i], "a", p);
            const auto b = arg(qs[i], "b", p);
            r["value"] = guarded([&] { return mnc::contains_leq(a, b); });
        } else {
            throw mnc::input_error(p + ".op: unknown operation \"" + op + "\"");
        }
        out.results.push_back(std::move(r));
    }
    return out;
}

// ---- mnc-eval -------------------------------------------------------------

Outcome run_mnc_eval(const json& in, const Config&) {
    const mnc::Mnc m = mnc::decode_mnc(mnc::io::at(in, "mnc", "$"), "$.mnc");
    std::vector<mnc::StructuredSet> sets;
    const json& ss = mnc::io::array(mnc::io::at(in, "sets", "$"), "$.sets");
    for (std::size_t i = 0; i < ss.size(); ++i)
        sets.push_back(mnc::decode_set(ss[i], mnc::io::index("$.sets", i)));

    Outcome out;
    json values = json::array();
    std::optional<mnc::FunctionalSet> rep;
    if (!sets.empty() && m.is_sublinear()) {
        try {
            rep = mnc::represent_sublinear(m, sets.front().block_count());
        } catch (const mnc::unsupported_input&) {
        }
    }
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const double v = mnc::io::build(mnc::io::index("$.sets", i), [&] { return mnc::mnc_eval(m, sets[i]); });
        json r{{"value", v}, {"v_embed", mnc::encode(mnc::v_embed(sets[i]))}};
        if (rep) {
            const double dual = mnc::functional_sup(*rep, mnc::v_embed(mnc::convex_hull(sets[i])));
            r["dual_value"] = dual;
            r["dual_matches"] = dual == v;
            out.passed = out.passed && dual == v;
        }
        values.push_back(std::move(r));
    }
    json witnesses = json::array();
    for (std::size_t i = 0; i + 1 < sets.size(); ++i) {
        const mnc::WitnessReport w = mnc::lipschitz_witness(m, sets[i], sets[i + 1]);
        out.passed = out.passed && w.holds && w.holds_sublinear.value_or(true);
        witnesses.push_back(mnc::encode(w));
    }
    out.results = {{"mnc", mnc::encode(m)},
                   {"values", values},
                   {"representation", rep ? mnc::encode(*rep) : json(nullptr)},
                   {"lipschitz_witnesses", witnesses}};
    return out;
}

// ---- check-axioms ---------------------------------------------------------

Outcome run_check_axioms(const json& in, const Config& cfg) {
    const mnc::Mnc m = mnc::io::has(in, "mnc") ? mnc::decode_mnc(in["mnc"], "$.mnc")
                                               : mnc::make_mnc(mnc::MncSpec::hausdorff());
    const std::size_t k = mnc::io::has(in, "blocks") ? mnc::io::count(in["blocks"], "$.blocks") : 3;
    if (k == 0)
        throw mnc::input_error("$.blocks: must be at least 1");
    const mnc::AxiomReport r = mnc::check_axioms(m, cfg.samples, cfg.seed, k);
    Outcome out;
    out.results = mnc::encode(r);
    out.passed = r.passed();
    out.csv = "property,required,trials,violations,tolerance\n";
    for (const mnc::PropertyResult& p : r.results)
        out.csv += std::string(mnc::to_string(p.property)) + "," + (p.required ? "true" : "false") + "," +
                   std::to_string(p.trials) + "," + std::to_string(p.violations) + "," + fmt(p.tolerance) + "\n";
    return out;
}

// ---- ineq-verify ----------------------------------------------------------

std::vector<double> decode_times(const json& j, const std::string& path) {
    if (j.is_number())
        return {mnc::io::number(j, path)};
    return mnc::io::numbers(j, path);
}

bool report_ok(const mnc::InequalityReport& r) { return r.holds_scaled && (r.holds_plain || !r.plain_guaranteed); }

Outcome run_ineq_verify(const json& in, const Config& cfg) {
    const double qtol = cfg.tol.value_or(1e-9);
    Outcome out;
    out.csv = "family,mnc,t,lhs,rhs_scaled,rhs_plain,holds_scaled,holds_plain,plain_guaranteed,quadrature_error\n";
    auto row = [&](const std::string& fam, const std::string& name, const mnc::InequalityReport& r) {
        out.csv += fam + "," + name + "," + fmt(r.t) + "," + fmt(r.lhs) + "," + fmt(r.rhs_scaled) + "," +
                   fmt(r.rhs_plain) + "," + (r.holds_scaled ? "true" : "false") + "," +
                   (r.holds_plain ? "true" : "false") + "," + (r.plain_guaranteed ? "true" : "false") + "," +
                   fmt(r.quadrature_error_bound) + "\n";
    };

    if (mnc::io::has(in, "family")) {
        const mnc::Mnc m = mnc::decode_mnc(mnc::io::at(in, "mnc", "$"), "$.mnc");
        const mnc::SetFamily f = mnc::decode_family(in["family"], "$.family");
        const std::vector<double> ts = decode_times(mnc::io::at(in, "t", "$"), "$.t");
        json reports = json::array();
        for (std::size_t i = 0; i < ts.size(); ++i) {
            const auto r = mnc::io::build(mnc::io::index("$.t", i), [&] { return mnc::verify_inequality(m, f, ts[i], qtol); });
            out.passed = out.passed && report_ok(r);
            reports.push_back(mnc::encode(r));
            row("0", m.describe(), r);
        }
        out.results = {{"mnc", mnc::encode(m)}, {"family", mnc::encode(f)}, {"reports", reports}};
        return out;
    }

    const json& sw = mnc::io::at(in, "sweep", "$");
    const std::size_t families = mnc::io::count(mnc::io::at(sw, "families", "$.sweep"), "$.sweep.families");
    const std::size_t k = mnc::io::has(sw, "blocks") ? mnc::io::count(sw["blocks"], "$.sweep.blocks") : 3;
    const double a = mnc::io::has(sw, "horizon") ? mnc::io::number(sw["horizon"], "$.sweep.horizon") : 2.0;
    const std::vector<double> ts = decode_times(mnc::io::at(sw, "t", "$.sweep"), "$.sweep.t");
    if (k == 0 || !(a > 0.0))
        throw mnc::input_error("$.sweep: blocks must be >= 1 and horizon > 0");
    for (double t : ts)
        if (!(t > 0.0) || t > a)
            throw mnc::input_error("$.sweep.t: every t must lie in (0, horizon]");

    const std::vector<mnc::CatalogEntry> measures = mnc::catalog(k);
    mnc::SetSampler gen(cfg.seed, k);
    std::size_t checked = 0;
    std::size_t scaled_fail = 0;
    std::size_t plain_fail_guaranteed = 0;
    std::size_t plain_fail_outside = 0;
    json failures = json::array();
    for (std::size_t n = 0; n < families; ++n) {
        const mnc::SetFamily f = mnc::random_family(gen, a);
        for (const mnc::CatalogEntry& e : measures)
            for (double t : ts) {
                const mnc::InequalityReport r = mnc::verify_inequality(e.measure, f, t, qtol);
                ++checked;
                row(std::to_string(n), e.name, r);
                if (!r.holds_scaled)
                    ++scaled_fail;
                if (!r.holds_plain && r.plain_guaranteed)
                    ++plain_fail_guaranteed;
                if (!r.holds_plain && !r.plain_guaranteed)
                    ++plain_fail_outside;
                if (!report_ok(r) && failures.size() < 10)
                    failures.push_back({{"family", mnc::encode(f)}, {"mnc", e.name}, {"report", mnc::encode(r)}});
            }
    }
    out.passed = scaled_fail == 0 && plain_fail_guaranteed == 0;
    out.results = {{"families", families},
                   {"blocks", k},
                   {"horizon", a},
                   {"t", ts},
                   {"checks", checked},
                   {"scaled_violations", scaled_fail},
                   {"plain_violations_where_guaranteed", plain_fail_guaranteed},
                   {"plain_failures_outside_guarantee", plain_fail_outside},
                   {"failures", failures}};
    return out;
}

// ---- cauchy-solve ---------------------------------------------------------

Outcome run_cauchy(const json& in, const Config& cfg) {
    const mnc::CauchyProblem p = mnc::decode_problem(mnc::io::at(in, "problem", "$"), "$.problem");
    mnc::SolveOptions opt = mnc::io::has(in, "options") ? mnc::decode_options(in["options"], "$.options")
                                                        : mnc::SolveOptions{};
    if (cfg.tol)
        opt.residual_tol = *cfg.tol;
    Outcome out;
    try {
        const mnc::SolveResult r = mnc::solve(p, opt);
        out.results = mnc::encode(r);
        out.passed = r.success;
        std::string header = "t";
        for (std::size_t i = 0; i < p.dimension(); ++i)
            header += ",x" + std::to_string(i);
        out.csv = header + ",u\n";
        for (std::size_t i = 0; i < r.solution.size(); ++i) {
            std::string line = fmt(r.solution.time(i));
            for (double x : r.solution.values[i])
                line += "," + fmt(x);
            out.csv += line + "," + fmt(r.tube.u[i]) + "\n";
        }
    } catch (const mnc::hypothesis_violation& e) {
        out.passed = false;
        out.results = {{"success", false},
                       {"hypothesis_violation", {{"condition", e.condition()}, {"message", e.what()}}}};
    }
    return out;
}

// ---- demos ----------------------------------------------------------------

Outcome run_demo_inequivalent(const json& in, const Config&) {
    const std::size_t k = mnc::io::has(in, "blocks") ? mnc::io::count(in["blocks"], "$.blocks") : 5;
    if (k == 0)
        throw mnc::input_error("$.blocks: must be at least 1");
    const mnc::Mnc sum = mnc::make_mnc(mnc::MncSpec::sum());
    const mnc::Mnc beta = mnc::make_mnc(mnc::MncSpec::hausdorff());

    // S_m: unit tail radius in the first m blocks, a compact head elsewhere.
    json family = json::array();
    double sup = 0.0;
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t m = 1; m <= k; ++m) {
        mnc::BoxTail b = mnc::BoxTail::uniform(k, {0.0}, {1.0}, 0.0);
        for (std::size_t j = 0; j < m; ++j)
            b.blocks[j].tail_radius = 1.0;
        const mnc::StructuredSet s(b);
        const double vs = mnc::mnc_eval(sum, s);
        const double vb = mnc::mnc_eval(beta, s);
        sup = std::max(sup, vs / vb);
        inf = std::min(inf, vs / vb);
        family.push_back({{"tail_blocks", m}, {"sum", vs}, {"beta", vb}, {"ratio", vs / vb}});
    }
    Outcome out;
    out.passed = sup == static_cast<double>(k) && inf == 1.0;
    out.results = {{"blocks", k}, {"family", family}, {"sup_ratio", sup}, {"inf_ratio", inf}};
    return out;
}

Outcome run_demo_sharpness(const json&, const Config& cfg) {
    const double qtol = cfg.tol.value_or(1e-9);
    const mnc::Mnc beta2 = mnc::make_mnc(
        mnc::MncSpec::convex_of_radii(mnc::Phi::power(mnc::Phi::norm(mnc::NormOrder::inf), 2.0)));

    // rho(s) = s on [0, 1] and rho = 1 on [0, 2], one block, no head
    const mnc::SetFamily ramp(1.0, {mnc::FamilyBlock{{}, {}, mnc::PiecewisePolynomial::polynomial({0.0, 1.0}, 1.0)}});
    const mnc::SetFamily flat(2.0, {mnc::FamilyBlock{{}, {}, mnc::PiecewisePolynomial::constant(1.0, 2.0)}});
    const mnc::InequalityReport a = mnc::verify_inequality(beta2, ramp, 1.0, qtol);
    const mnc::InequalityReport b = mnc::verify_inequality(beta2, flat, 2.0, qtol);

    auto near = [](double x, double y) { return std::abs(x - y) <= 1e-9; };
    const bool a_ok = near(a.lhs, 0.25) && near(a.rhs_plain, 1.0 / 3.0) && a.holds_plain && a.holds_scaled;
    const bool b_ok = near(b.lhs, 4.0) && near(b.rhs_plain, 2.0) && near(b.rhs_scaled, 4.0) && !b.holds_plain &&
                      b.holds_scaled && !b.plain_guaranteed;
    Outcome out;
    out.passed = a_ok && b_ok;
    out.results = {{"mnc", mnc::encode(beta2)},
                   {"ramp", {{"expected", {{"lhs", 0.25}, {"rhs_plain", 1.0 / 3.0}}}, {"report", mnc::encode(a)}, {"matches", a_ok}}},
                   {"flat", {{"expected", {{"lhs", 4.0}, {"rhs_plain", 2.0}, {"rhs_scaled", 4.0}}},
                             {"report", mnc::encode(b)},
                             {"matches", b_ok}}}};
    return out;
}

// ---- plumbing -------------------------------------------------------------

json load_input(const std::string& path) {
    if (path.empty())
        return json::object();
    std::ifstream f(path);
    if (!f)
        throw usage_error("cannot read input file " + path);
    try {
        return json::parse(f);
    } catch (const json::parse_error& e) {
        throw mnc::input_error(path + ": " + e.what());
    }
}

void write_atomic(const std::filesystem::path& target, const std::string& body) {
    const std::filesystem::path tmp = target.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw usage_error("cannot write " + tmp.string());
        f << body;
        if (!f.flush())
            throw usage_error("cannot write " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw usage_error("cannot write " + target.string());
    }
}

Outcome dispatch(const Config& cfg, const json& in) {
    if (cfg.command == "sets")
        return run_sets(in, cfg);
    if (cfg.command == "mnc-eval")
        return run_mnc_eval(in, cfg);
    if (cfg.command == "check-axioms")
        return run_check_axioms(in, cfg);
    if (cfg.command == "ineq-verify")
        return run_ineq_verify(in, cfg);
    if (cfg.command == "cauchy-solve")
        return run_cauchy(in, cfg);
    if (cfg.command == "demo-inequivalent")
        return run_demo_inequivalent(in, cfg);
    if (cfg.command == "demo-sharpness")
        return run_demo_sharpness(in, cfg);
    throw usage_error("unknown command \"" + cfg.command + "\"");
}

} // namespace

int main(int argc, char** argv) {
    Config cfg;
    CLI::App app{"Measures of noncompactness toolkit"};
    app.add_option("command", cfg.command,
                   "sets | mnc-eval | check-axioms | ineq-verify | cauchy-solve | demo-inequivalent | demo-sharpness")
        ->required();
    app.add_option("--input,-i", cfg.input, "JSON input file");
    app.add_option("--output,-o", cfg.output, "JSON report path; a .csv companion is written next to it");
    app.add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    app.add_option("--samples", cfg.samples, "sample count for check-axioms")->capture_default_str();
    app.add_option("--tol", cfg.tol, "tolerance override (Hausdorff eps, quadrature or residual tolerance)");
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const json in = load_input(cfg.input);
        if (!in.is_object())
            throw mnc::input_error("$: expected a JSON object");
        const Outcome out = dispatch(cfg, in);

        json report{{"schema_version", mnc::schema_version},
                    {"command", cfg.command},
                    {"config",
                     {{"seed", cfg.seed},
                      {"samples", cfg.samples},
                      {"tol", cfg.tol ? json(*cfg.tol) : json(nullptr)},
                      {"input", in}}},
                    {"passed", out.passed},
                    {"results", out.results}};
        const std::string body = report.dump(2) + "\n";
        if (cfg.output.empty()) {
            std::cout << body;
        } else {
            const std::filesystem::path target(cfg.output);
            if (!out.csv.empty()) {
                std::filesystem::path csv = target;
                csv.replace_extension(".csv");
                write_atomic(csv, out.csv);
            }
            write_atomic(target, body);
        }
        if (!out.passed)
            std::cerr << "mnctk: " << cfg.command << ": a check failed, see the report\n";
        return out.passed ? 0 : 1;
    } catch (const mnc::input_error& e) {
        std::cerr << "mnctk: input error: " << e.what() << "\n";
        return 2;
    } catch (const usage_error& e) {
        std::cerr << "mnctk: " << e.what() << "\n";
        return 2;
    } catch (const mnc::accuracy_error& e) {
        std::cerr << "mnctk: numerical failure: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "mnctk: error: " << e.what() << "\n";
        return 2;
    }
}
