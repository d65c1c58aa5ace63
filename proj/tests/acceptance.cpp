// Acceptance runner: one PASS/FAIL line per criterion, with wall time.
//
// usage: acceptance --mnctk <path> --inputs <dir> --scratch <dir>

#include "mnc/all.hpp"

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace mnc;

namespace {

struct Paths {
    std::string mnctk;
    fs::path inputs;
    fs::path scratch;
};

// Outcome of one criterion; detail is printed after the verdict.
struct Verdict {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int run_cli(const Paths& p, const std::string& args) {
    const std::string cmd = p.mnctk + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Mnc beta_squared() { return make_mnc(MncSpec::convex_of_radii(Phi::power(Phi::norm(NormOrder::inf), 2.0))); }

// Zero-tail random set in block 0 with `dims` head coordinates.
StructuredSet flat_set(SetSampler& gen, std::size_t dims) {
    std::vector<BoxTail> ms;
    const std::size_t n = 1 + gen.index(3);
    for (std::size_t i = 0; i < n; ++i) {
        BlockBox b;
        for (std::size_t q = 0; q < dims; ++q) {
            b.center.push_back(gen.dyadic(-2, 2));
            b.head_radii.push_back(gen.dyadic(0, 1));
        }
        ms.push_back(BoxTail{{b}});
    }
    return StructuredSet(std::move(ms), true);
}

void axiom_suite(Verdict& v, const Paths&) {
    const AxiomReport r = check_axioms(make_mnc(MncSpec::hausdorff()), 1000, 42);
    std::size_t trials = 0;
    std::size_t violations = 0;
    for (const PropertyResult& p : r.results) {
        trials += p.trials;
        violations += p.violations;
        v.require(p.tolerance == 0.0, std::string("exact comparison for ") + to_string(p.property));
    }
    v.require(r.passed() && violations == 0, "beta passes every property");

    const AxiomReport c =
        check_axioms(make_mnc_unchecked(MncSpec::convex_of_radii(Phi::constant(1.0)), MncClass::regular), 1000, 42);
    const bool c_rejected = !c.passed() && c.result(Property::noncompactness).counterexample.has_value();
    v.require(c_rejected, "constant measure rejected with a counterexample");

    const AxiomReport s = check_axioms(make_mnc_unchecked(beta_squared().spec(), MncClass::sublinear), 1000, 42);
    const bool s_rejected = !s.passed() && s.result(Property::positive_homogeneity).counterexample.has_value();
    v.require(s_rejected, "squared beta declared sublinear rejected with a counterexample");

    v.detail << "beta: " << r.results.size() << " properties, " << trials << " trials, " << violations
             << " violations; constant: first failure "
             << (c.first_failure() ? to_string(c.first_failure()->property) : "none")
             << "; squared beta as sublinear: first failure "
             << (s.first_failure() ? to_string(s.first_failure()->property) : "none");
}

void isometry(Verdict& v, const Paths&) {
    SetSampler gen(2024, 1);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t dims = 1 + static_cast<std::size_t>(i % 3);
        const StructuredSet a = flat_set(gen, dims);
        const StructuredSet b = flat_set(gen, dims);
        const double dual = hausdorff_distance(a, b).value;
        const double primal = brute_force_hausdorff_oracle(a, b, 4000);
        worst = std::max(worst, std::abs(dual - primal));
    }
    v.require(worst <= 1e-3, "agreement within 1e-3");
    v.detail << "100 pairs, max |direction search - primal oracle| = " << worst;
}

void lipschitz_bounds(Verdict& v, const Paths&) {
    SetSampler gen(77, 3);
    const auto cat = catalog(3);
    std::size_t checks = 0;
    std::size_t fails = 0;
    for (int i = 0; i < 1000; ++i) {
        const StructuredSet a = gen.set();
        const StructuredSet b = gen.set();
        for (const CatalogEntry& e : cat) {
            const WitnessReport w = lipschitz_witness(e.measure, a, b);
            ++checks;
            fails += !w.holds || !w.holds_sublinear.value_or(true);
        }
    }
    v.require(fails == 0, "no violations");
    v.detail << checks << " pair/measure checks across " << cat.size() << " measures, " << fails << " violations";
}

void duality(Verdict& v, const Paths&) {
    SetSampler gen(78, 3);
    const std::vector<Mnc> ms{make_mnc(MncSpec::hausdorff()), make_mnc(MncSpec::sum()),
                              make_mnc(MncSpec::weighted_sup({{1, 0.5, 0}, {0, 1, 2}, {0.25, 0.25, 0.25}}))};
    std::vector<FunctionalSet> reps;
    for (const Mnc& m : ms)
        reps.push_back(represent_sublinear(m, 3));
    std::size_t mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const StructuredSet a = gen.set();
        const VElement va = v_embed(convex_hull(a));
        for (std::size_t q = 0; q < ms.size(); ++q)
            mismatches += functional_sup(reps[q], va) != mnc_eval(ms[q], a);
    }
    v.require(mismatches == 0, "exact agreement");
    v.detail << "1000 sets x {beta, sum, weighted_sup}, " << mismatches << " inexact round trips";
}

void inequalities(Verdict& v, const Paths& p) {
    const SetFamily ramp(1.0, {FamilyBlock{{}, {}, PiecewisePolynomial::polynomial({0.0, 1.0}, 1.0)}});
    const InequalityReport a = verify_inequality(beta_squared(), ramp, 1.0);
    v.require(std::abs(a.lhs - 0.25) <= 1e-9 && std::abs(a.rhs_plain - 1.0 / 3.0) <= 1e-9 && a.holds_plain,
              "(a) ramp values");

    const SetFamily flat(2.0, {FamilyBlock{{}, {}, PiecewisePolynomial::constant(1.0, 2.0)}});
    const InequalityReport b = verify_inequality(beta_squared(), flat, 2.0);
    v.require(std::abs(b.lhs - 4.0) <= 1e-9 && std::abs(b.rhs_plain - 2.0) <= 1e-9 &&
                  std::abs(b.rhs_scaled - 4.0) <= 1e-9 && !b.holds_plain && b.holds_scaled,
              "(b) sharpness values");

    const fs::path out = p.scratch / "sweep_a.json";
    const int code = run_cli(p, "ineq-verify -i " + (p.inputs / "sweep.json").string() + " -o " + out.string());
    v.require(code == 0, "(c) sweep exit code 0");
    std::size_t checks = 0;
    std::size_t scaled = 0;
    std::size_t guaranteed = 0;
    std::size_t outside = 0;
    if (fs::exists(out)) {
        const json r = json::parse(slurp(out))["results"];
        checks = r["checks"].get<std::size_t>();
        scaled = r["scaled_violations"].get<std::size_t>();
        guaranteed = r["plain_violations_where_guaranteed"].get<std::size_t>();
        outside = r["plain_failures_outside_guarantee"].get<std::size_t>();
        v.require(r["families"].get<std::size_t>() == 200, "(c) 200 families");
    }
    v.require(checks > 0 && scaled == 0 && guaranteed == 0, "(c) no falsification");
    v.detail << "(a) lhs " << a.lhs << " rhs_plain " << a.rhs_plain << "; (b) lhs " << b.lhs << " rhs_plain "
             << b.rhs_plain << " rhs_scaled " << b.rhs_scaled << "; (c) " << checks << " checks, " << scaled
             << " scaled violations, " << guaranteed << " plain violations where guaranteed, " << outside
             << " plain failures outside the guarantee";
}

void solver(Verdict& v, const Paths&) {
    CauchyProblem decay(make_mnc(MncSpec::hausdorff()));
    decay.head_dims = {1};
    decay.x0 = {1.0};
    decay.linear = {{-1.0}};
    SolveOptions o;
    o.dt = 1e-3;
    const SolveResult d = solve(decay, o);
    const double err_d = std::abs(d.solution.values.back()[0] - std::exp(-1.0));
    v.require(d.success && err_d <= 1e-6, "decay x(1)");

    CauchyProblem rot(make_mnc(MncSpec::hausdorff()));
    rot.head_dims = {2};
    rot.x0 = {1.0, 0.0};
    rot.linear = {{0.0, 1.0}, {-1.0, 0.0}};
    const SolveResult r = solve(rot, o);
    const auto& xr = r.solution.values.back();
    const double err_r = std::max(std::abs(xr[0] - std::cos(1.0)), std::abs(xr[1] + std::sin(1.0)));
    v.require(r.success && err_r <= 1e-6, "rotation x(1)");

    // linear Kamke catalog: rates 1 and 2 with matching tail gains, two measures
    double dev = 0.0;
    std::size_t runs = 0;
    for (double rate : {1.0, 2.0})
        for (const Mnc& m : {make_mnc(MncSpec::hausdorff()), make_mnc(MncSpec::sum())}) {
            CauchyProblem q = decay;
            q.mnc = m;
            q.tail_gain = {rate};
            q.kamke = KamkeFn::linear(rate);
            const SolveResult s = solve(q, o);
            v.require(s.success && s.certificate.converged && s.certificate.closed_form_deviation.has_value(),
                      "certificate converges with a closed form");
            if (s.certificate.closed_form_deviation)
                for (double x : *s.certificate.closed_form_deviation)
                    dev = std::max(dev, x);
            ++runs;
        }
    v.require(dev <= 1e-6, "closed-form deviation within 1e-6");
    v.detail << "decay error " << err_d << ", rotation error " << err_r << ", max closed-form deviation " << dev
             << " over " << runs << " certificate runs";
}

void inequivalence(Verdict& v, const Paths& p) {
    const fs::path out = p.scratch / "inequivalent.json";
    const int code = run_cli(p, "demo-inequivalent -i " + (p.inputs / "inequivalent.json").string() + " -o " +
                                    out.string());
    v.require(code == 0, "exit code 0");
    double sup = 0.0;
    if (fs::exists(out)) {
        const json r = json::parse(slurp(out))["results"];
        sup = r["sup_ratio"].get<double>();
        v.require(r["blocks"].get<std::size_t>() == 5, "k = 5");
    }
    v.require(sup == 5.0, "sup ratio exactly 5");
    v.detail << "k = 5, sup sum/beta = " << sup;
}

void determinism(Verdict& v, const Paths& p) {
    const std::vector<std::pair<std::string, std::string>> runs{
        {"sets", "sets_queries.json"},
        {"mnc-eval", "mnc_eval.json"},
        {"check-axioms", "axioms_beta.json"},
        {"check-axioms", "axioms_constant.json"},
        {"ineq-verify", "sharpness_flat.json"},
        {"cauchy-solve", "cauchy_decay.json"},
        {"cauchy-solve", "cauchy_rotation.json"},
        {"cauchy-solve", "cauchy_gate.json"},
        {"demo-inequivalent", "inequivalent.json"},
        {"demo-sharpness", ""},
    };
    std::size_t compared = 0;
    auto same = [&](const fs::path& a, const fs::path& b, const std::string& label) {
        for (const char* ext : {".json", ".csv"}) {
            const fs::path fa = fs::path(a).replace_extension(ext);
            const fs::path fb = fs::path(b).replace_extension(ext);
            if (!fs::exists(fa) && !fs::exists(fb))
                continue;
            v.require(fs::exists(fa) && fs::exists(fb) && slurp(fa) == slurp(fb), label + ext + " identical");
            ++compared;
        }
    };
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const auto& [cmd, file] = runs[i];
        const std::string in = file.empty() ? "" : " -i " + (p.inputs / file).string();
        const fs::path a = p.scratch / ("det_" + std::to_string(i) + "_a.json");
        const fs::path b = p.scratch / ("det_" + std::to_string(i) + "_b.json");
        const int ca = run_cli(p, cmd + in + " --seed 42 -o " + a.string());
        const int cb = run_cli(p, cmd + in + " --seed 42 -o " + b.string());
        v.require(ca == cb && ca != 2, cmd + " exit codes");
        same(a, b, cmd + " " + file);
    }
    // the sweep report from criterion 5 is the first run
    const fs::path sb = p.scratch / "sweep_b.json";
    run_cli(p, "ineq-verify -i " + (p.inputs / "sweep.json").string() + " -o " + sb.string());
    same(p.scratch / "sweep_a.json", sb, "sweep");
    v.detail << compared << " report files compared byte for byte";
}

} // namespace

int main(int argc, char** argv) {
    Paths p;
    for (int i = 1; i + 1 < argc; i += 2) {
        const std::string flag = argv[i];
        if (flag == "--mnctk")
            p.mnctk = argv[i + 1];
        else if (flag == "--inputs")
            p.inputs = argv[i + 1];
        else if (flag == "--scratch")
            p.scratch = argv[i + 1];
        else {
            std::cerr << "unknown flag " << flag << "\n";
            return 2;
        }
    }
    if (p.mnctk.empty() || p.inputs.empty() || p.scratch.empty()) {
        std::cerr << "usage: acceptance --mnctk <path> --inputs <dir> --scratch <dir>\n";
        return 2;
    }
    fs::create_directories(p.scratch);

    struct Criterion {
        int id;
        const char* name;
        double budget_s; // 0: no runtime bound
        std::function<void(Verdict&, const Paths&)> body;
    };
    const std::vector<Criterion> criteria{
        {1, "axiom suite and negative controls", 10.0, axiom_suite},
        {2, "Hausdorff distance against primal oracle", 60.0, isometry},
        {3, "local Lipschitz bounds of catalog measures", 0.0, lipschitz_bounds},
        {4, "sublinear dual representation round trip", 0.0, duality},
        {5, "integral inequalities: closed forms and sweep", 120.0, inequalities},
        {6, "Cauchy solver and certificate decay", 30.0, solver},
        {7, "inequivalence of sum and beta", 1.0, inequivalence},
        {8, "byte-identical reports for a fixed seed", 0.0, determinism},
    };

    bool all = true;
    for (const Criterion& c : criteria) {
        Verdict v;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            c.body(v, p);
        } catch (const std::exception& e) {
            v.ok = false;
            v.detail << " [exception: " << e.what() << "]";
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (c.budget_s > 0.0 && secs > c.budget_s) {
            v.ok = false;
            v.detail << " [over the " << c.budget_s << " s budget]";
        }
        all = all && v.ok;
        std::printf("%s %d %s (%.2f s): %s\n", v.ok ? "PASS" : "FAIL", c.id, c.name, secs, v.detail.str().c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
