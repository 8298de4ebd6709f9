#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <iostream>

#include "polyden/bernstein.hpp"
#include "polyden/corpus.hpp"
#include "polyden/density.hpp"
#include "polyden/divisor.hpp"
#include "polyden/entire.hpp"
#include "polyden/extremal.hpp"
#include "polyden/family.hpp"
#include "polyden/io.hpp"

using nlohmann::json;
using namespace polyden;

namespace {

struct run_config {
    std::string out = ".";
    std::uint64_t seed = 1;
    double stall_tol = 0.01;
    double zero_floor = 1e-9;
    std::size_t trunc = 5000;
};

json config_json(const run_config& cfg) {
    return {{"out", cfg.out},
            {"seed", cfg.seed},
            {"stall_tol", cfg.stall_tol},
            {"zero_floor", cfg.zero_floor},
            {"trunc", cfg.trunc}};
}

json input_digest(const std::string& path) {
    return {{"path", path}, {"fnv1a", io::digest(io::read_file(path))}};
}

void write_report(const run_config& cfg, const std::string& name, json payload) {
    payload["config"] = config_json(cfg);
    // stable key order and 17-digit numbers keep identical runs byte-identical
    io::write_file(cfg.out + "/" + name + ".json", payload.dump(2));
    std::cout << name << ": report written to " << cfg.out << "/" << name << ".json\n";
}

json verdict_json(const density_report& rep) {
    json diags(rep.diagnostics);
    return {{"verdict", density_verdict_name(rep.verdict)},
            {"rho_alpha", rep.rho_alpha_seq},
            {"rho_alpha2", rep.rho_alpha2_seq},
            {"diagnostics", diags}};
}

norm_param parse_norm(double p, bool supw) {
    return supw ? norm_param::supw() : norm_param::lp(p);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"polyden: weighted polynomial approximation and moment-density toolkit"};
    app.set_config("--config", "", "key=value config file; flags override");
    app.require_subcommand(1);

    run_config cfg;
    app.add_option("--out", cfg.out, "output directory for reports");
    app.add_option("--seed", cfg.seed, "seed recorded in every report");
    app.add_option("--stall-tol", cfg.stall_tol, "plateau detection tolerance");
    app.add_option("--zero-floor", cfg.zero_floor, "rho floor for CONVERGED_TO_ZERO");
    app.add_option("--trunc", cfg.trunc, "default series truncation");

    std::string measure_path, zeros_path, weight_path, pair_path, family_path;
    double p = 2.0;
    bool supw = false;
    int max_degree = 40, n = 4, N = 10, grid = 400, pp = 2, sigma = 1;
    double z_re = 0.0, z_im = 0.0, R = 0.0;
    double alpha = 1.0, gamma = 1.0, delta_alpha = 1.0, theta_C = 1.0;

    // ---- density ----
    auto* density = app.add_subcommand("density", "Theorem 2.1 / Riesz density probes");
    auto* dh = density->add_subcommand("hamburger", "two-tilt rho sweep at z=0");
    dh->add_option("--measure", measure_path, "measure JSON")->required();
    dh->add_option("--p", p, "norm exponent");
    dh->add_flag("--supw", supw, "weighted sup norm instead of L_p");
    dh->add_option("--max-degree", max_degree, "degree sweep bound");
    dh->callback([&] {
        auto mu = io::load_measure(measure_path);
        auto rep = hamburger_verdict(mu, parse_norm(p, supw), max_degree, cfg.stall_tol);
        json j = verdict_json(rep);
        j["inputs"] = json::array({input_digest(measure_path)});
        write_report(cfg, "density_hamburger", j);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < rep.rho_alpha_seq.size(); ++i)
            rows.push_back({double(i), rep.rho_alpha_seq[i],
                            i < rep.rho_alpha2_seq.size() ? rep.rho_alpha2_seq[i] : 0.0});
        io::write_csv(cfg.out + "/density_hamburger.csv", {"n", "rho_alpha", "rho_alpha2"}, rows);
        std::cout << "verdict: " << density_verdict_name(rep.verdict) << "\n";
    });

    auto* dr = density->add_subcommand("riesz", "the (2.2.2) criterion at p=2");
    dr->add_option("--measure", measure_path, "measure JSON")->required();
    dr->add_option("--max-degree", max_degree, "degree sweep bound");
    dr->callback([&] {
        auto mu = io::load_measure(measure_path);
        auto rep = riesz_p2(mu, max_degree, cfg.stall_tol);
        json j = verdict_json(rep);
        j["inputs"] = json::array({input_digest(measure_path)});
        write_report(cfg, "density_riesz", j);
        std::cout << "verdict: " << density_verdict_name(rep.verdict) << "\n";
    });

    auto* dc = density->add_subcommand("crosscheck", "Proposition 2.2 equivalence check");
    dc->add_option("--measure", measure_path, "measure JSON")->required();
    dc->add_option("--p", p, "norm exponent");
    dc->add_flag("--supw", supw, "weighted sup norm");
    dc->add_option("--max-degree", max_degree, "degree sweep bound");
    dc->callback([&] {
        auto mu = io::load_measure(measure_path);
        auto rep = prop22_crosscheck(mu, parse_norm(p, supw), max_degree, cfg.stall_tol);
        json j = {{"err_1_over_1px2", rep.err1_seq},
                  {"err_x_over_1px2", rep.err2_seq},
                  {"hamburger", density_verdict_name(rep.hamburger)},
                  {"equivalent", rep.equivalent},
                  {"inputs", json::array({input_digest(measure_path)})}};
        write_report(cfg, "density_crosscheck", j);
    });

    // ---- extremal ----
    auto* extremal = app.add_subcommand("extremal", "rho_n / M_n quantities");
    auto* er = extremal->add_subcommand("rho", "single rho_n / M_n evaluation");
    er->add_option("--measure", measure_path)->required();
    er->add_option("--p", p);
    er->add_flag("--supw", supw);
    er->add_option("--n", n, "polynomial degree");
    er->add_option("--z-re", z_re);
    er->add_option("--z-im", z_im);
    er->callback([&] {
        auto mu = io::load_measure(measure_path);
        auto nrm = parse_norm(p, supw);
        cplx z(z_re, z_im);
        auto rho = rho_n(mu, nrm, z, n);
        auto M = M_n(mu, nrm, z, n);
        json j = {{"n", n},
                  {"z", {z_re, z_im}},
                  {"rho", rho.value},
                  {"rho_iters", rho.iters},
                  {"rho_residual", rho.residual},
                  {"M", M.status == solve_status::unbounded ? json("unbounded") : json(M.value)},
                  {"minimizer", rho.minimizer.coeffs},
                  {"inputs", json::array({input_digest(measure_path)})}};
        if (M.sandwich) j["M_sandwich"] = {M.sandwich->first, M.sandwich->second};
        write_report(cfg, "extremal_rho", j);
    });

    auto* el = extremal->add_subcommand("limit", "degree sweep of rho_n on a tilt");
    std::string tilt_name = "alpha";
    el->add_option("--measure", measure_path)->required();
    el->add_option("--p", p);
    el->add_flag("--supw", supw);
    el->add_option("--max-degree", max_degree);
    el->add_option("--tilt", tilt_name, "plain | alpha | alpha2");
    el->add_option("--z-re", z_re);
    el->add_option("--z-im", z_im);
    el->callback([&] {
        auto mu = io::load_measure(measure_path);
        auto nrm = parse_norm(p, supw);
        tilt_mode mode = tilt_name == "plain"    ? tilt_mode::plain
                         : tilt_name == "alpha2" ? tilt_mode::alpha2
                                                 : tilt_mode::alpha;
        auto lim = rho_limit(mu, nrm, mode, cplx(z_re, z_im), max_degree, cfg.stall_tol,
                             cfg.zero_floor);
        const char* verdict = lim.verdict == limit_verdict::converged_to_zero ? "CONVERGED_TO_ZERO"
                              : lim.verdict == limit_verdict::plateau         ? "PLATEAU"
                                                                              : "UNDECIDED";
        json j = {{"verdict", verdict},
                  {"limit_estimate", lim.limit_estimate},
                  {"rho", lim.rho},
                  {"inputs", json::array({input_digest(measure_path)})}};
        write_report(cfg, "extremal_limit", j);
        // CSV per the interface: n, rho, M_lower, M_upper
        std::vector<std::vector<double>> rows;
        discrete_measure tilted = tilt(mu, nrm.tilt_exponent(), mode);
        for (std::size_t i = 0; i < lim.rho.size(); ++i) {
            double rho_i = lim.rho[i];
            double lo = rho_i > 0 ? 1.0 / rho_i : 0.0;
            double hi = rho_i > 0 ? 2.0 / rho_i : 0.0;
            rows.push_back({double(i), rho_i, lo, hi});
        }
        io::write_csv(cfg.out + "/extremal_limit.csv", {"n", "rho", "M_lower", "M_upper"}, rows);
        std::cout << "verdict: " << verdict << "\n";
    });

    // ---- entire ----
    auto* entire = app.add_subcommand("entire", "entire functions from zero data");
    auto* ee = entire->add_subcommand("eval", "product evaluation");
    ee->add_option("--zeros", zeros_path)->required();
    ee->add_option("--z-re", z_re);
    ee->add_option("--z-im", z_im);
    ee->add_option("--R", R, "window radius (default: beyond stored zeros)");
    ee->callback([&] {
        auto f = io::load_zeroset(zeros_path);
        double Ruse = R > 0 ? R : f.max_abs_zero() * (1 + 1e-9) + 1e-9;
        auto v = eval(f, cplx(z_re, z_im), Ruse);
        json j = {{"value", {v.value.real(), v.value.imag()}},
                  {"R", Ruse},
                  {"inputs", json::array({input_digest(zeros_path)})}};
        if (v.tail_log_bound) j["tail_log_bound"] = *v.tail_log_bound;
        write_report(cfg, "entire_eval", j);
    });

    auto* ed = entire->add_subcommand("delta", "Delta_f^p partial sum");
    ed->add_option("--zeros", zeros_path)->required();
    ed->add_option("--p", pp, "the exponent p");
    ed->add_option("--z-re", z_re);
    ed->add_option("--z-im", z_im);
    ed->callback([&] {
        auto f = io::load_zeroset(zeros_path);
        auto d = delta_fp(f, pp, cplx(z_re, z_im), cfg.trunc);
        json j = {{"p", pp},
                  {"value", {d.value.real(), d.value.imag()}},
                  {"inputs", json::array({input_digest(zeros_path)})}};
        if (d.tail_bound) j["tail_bound"] = *d.tail_bound;
        write_report(cfg, "entire_delta", j);
    });

    auto* ec = entire->add_subcommand("classify", "Krein / Hamburger class predicates");
    ec->add_option("--zeros", zeros_path)->required();
    ec->callback([&] {
        auto f = io::load_zeroset(zeros_path);
        auto k = class_predicate_krein(f);
        auto h = class_predicate_hamburger(f);
        auto d = estimate_df(f, -1, 4);
        json j = {{"krein", tristate_name(k.verdict)},
                  {"krein_evidence", json(k.notes)},
                  {"hamburger", tristate_name(h.verdict)},
                  {"hamburger_evidence", json(h.notes)},
                  {"d_f", d.d_f},
                  {"inputs", json::array({input_digest(zeros_path)})}};
        write_report(cfg, "entire_classify", j);
        std::cout << "krein: " << tristate_name(k.verdict)
                  << ", hamburger: " << tristate_name(h.verdict) << ", d_f ~ " << d.d_f << "\n";
    });

    // ---- divisor ----
    auto* divisor = app.add_subcommand("divisor", "balanced polynomial divisors");
    auto* db = divisor->add_subcommand("build", "build and verify P_N");
    db->add_option("--zeros", zeros_path)->required();
    db->add_option("--N", N, "window bound")->required();
    db->add_option("--grid", grid, "verification grid points");
    db->callback([&] {
        auto f = io::load_zeroset(zeros_path);
        auto d = build_balanced_divisor(f, N);
        auto v = verify_divisor(d, f, grid);
        json zeros = json::array();
        for (const auto& ze : d.P.zeros()) zeros.push_back({{"x", ze.x}, {"mult", ze.mult}});
        json j = {{"N", N},
                  {"p_N", d.p_N},
                  {"q_N", d.q_N},
                  {"S_value", d.S_value},
                  {"case", d.case_taken == balanced_divisor::sweep::balanced   ? "balanced"
                           : d.case_taken == balanced_divisor::sweep::positive ? "positive"
                           : d.case_taken == balanced_divisor::sweep::negative ? "negative"
                                                                               : "one_sided"},
                  {"zeros", zeros},
                  {"min_ratio", v.min_ratio},
                  {"min_deriv_ratio", v.min_deriv_ratio},
                  {"max_diff_on_disk2", v.max_diff_on_disk},
                  {"inputs", json::array({input_digest(zeros_path)})}};
        if (d.phi_bracket) j["phi_bracket"] = {d.phi_bracket->first, d.phi_bracket->second};
        write_report(cfg, "divisor_build", j);
        io::write_csv(cfg.out + "/divisor_verify.csv", {"min_ratio", "min_deriv_ratio", "diff2"},
                      {{v.min_ratio, v.min_deriv_ratio, v.max_diff_on_disk}});
    });

    // ---- classes ----
    auto* classes = app.add_subcommand("classes", "normal-family membership");
    auto* cc = classes->add_subcommand("check", "Lemma 3.2 / Theorem 3.3 membership");
    cc->add_option("--family", family_path, "JSON array of zero lists")->required();
    cc->add_option("--weight", weight_path, "C+*(R) proxy weight (enables Theorem 3.3)");
    cc->add_option("--alpha", alpha);
    cc->add_option("--gamma", gamma);
    cc->add_option("--delta-alpha", delta_alpha);
    cc->callback([&] {
        auto fam = io::load_family(family_path);
        json members = json::array();
        std::optional<grid_weight> mu;
        if (!weight_path.empty()) mu = io::load_weight(weight_path);
        lemma32_params prm{alpha, 1.0, gamma, delta_alpha, delta_alpha};
        for (const auto& P : fam) {
            auto [l1, l2] = lambda_functionals(P);
            json m = {{"degree", P.degree()}, {"l1", l1}, {"l2", l2},
                      {"lemma32", member_lemma32(P, prm)}};
            if (mu) m["thm33"] = member_thm33(P, *mu, alpha, gamma, delta_alpha);
            members.push_back(m);
        }
        auto diag = family_diagnostic(fam, 2.0);
        json j = {{"members", members},
                  {"sup_l1", diag.sup_l1},
                  {"sup_l2", diag.sup_l2},
                  {"consecutive_distance", diag.consecutive_distance},
                  {"inputs", json::array({input_digest(family_path)})}};
        write_report(cfg, "classes_check", j);
    });

    // ---- bernstein ----
    auto* bern = app.add_subcommand("bernstein", "Chapter-IV sums and representation");
    auto* bs = bern->add_subcommand("sum", "de Branges / Sodin-Yuditskii sum");
    bool use_mh = false;
    bs->add_option("--zeros", zeros_path)->required();
    bs->add_option("--weight", weight_path)->required();
    bs->add_flag("--regularized", use_mh, "use M_h in the denominator (4.1.2)");
    bs->callback([&] {
        auto B = io::load_zeroset(zeros_path);
        auto w = io::load_weight(weight_path);
        auto rep = use_mh ? prop41_sum(B, w, cfg.trunc) : debranges_sum(B, w, cfg.trunc);
        json j = {{"trend", sum_trend_name(rep.trend)},
                  {"infinite_summand", rep.infinite_summand},
                  {"inputs",
                   json::array({input_digest(zeros_path), input_digest(weight_path)})}};
        if (rep.tail_estimate) j["tail_estimate"] = *rep.tail_estimate;
        write_report(cfg, "bernstein_sum", j);
        std::vector<std::vector<double>> rows;
        for (std::size_t i = 0; i < rep.partial_sums.size(); ++i)
            rows.push_back({double(i + 1), rep.partial_sums[i]});
        io::write_csv(cfg.out + "/bernstein_sum.csv", {"k", "partial_sum"}, rows);
        std::cout << "trend: " << sum_trend_name(rep.trend) << "\n";
    });

    auto* bmin = bern->add_subcommand("minimize", "Lemma 4.1 objective minimization");
    std::string strategy_name = "brute";
    bmin->add_option("--weight", weight_path)->required();
    bmin->add_option("--N", N, "polynomial degree")->required();
    bmin->add_option("--theta-C", theta_C, "theta upper-envelope constant");
    bmin->add_option("--sigma", sigma, "0 or 1 = chi_{S_w}(0)");
    bmin->add_option("--strategy", strategy_name, "brute | local");
    bmin->callback([&] {
        auto w = io::load_weight(weight_path);
        theta_spec theta{theta_C / 2.0, theta_C, 1.0};
        auto res = lemma41_minimize(N, w, theta, sigma,
                                    strategy_name == "local" ? search_strategy::local
                                                             : search_strategy::brute,
                                    cfg.seed);
        json j = {{"N", N},
                  {"value", res.value},
                  {"argmin_zeros", res.argmin.zeros},
                  {"strategy", res.strategy},
                  {"inputs", json::array({input_digest(weight_path)})}};
        write_report(cfg, "bernstein_minimize", j);
    });

    auto* brep = bern->add_subcommand("rep", "Theorem 4.1 representation");
    auto* brb = brep->add_subcommand("build", "mu from (w, nu, p)");
    brb->add_option("--pair", pair_path)->required();
    brb->callback([&] {
        auto pair = io::load_pair(pair_path);
        auto mu = build_measure(pair);
        io::save_measure(mu, cfg.out + "/rep_measure.json");
        json j = {{"atoms", mu.size()},
                  {"total_mass", mu.total_mass()},
                  {"inputs", json::array({input_digest(pair_path)})}};
        write_report(cfg, "bernstein_rep_build", j);
    });
    auto* brv = brep->add_subcommand("verify", "check mu against (w, nu, p)");
    brv->add_option("--pair", pair_path)->required();
    brv->add_option("--measure", measure_path)->required();
    brv->callback([&] {
        auto pair = io::load_pair(pair_path);
        auto mu = io::load_measure(measure_path);
        auto rep = verify_representation(mu, pair);
        json j = {{"ok", rep.ok},
                  {"witness", rep.witness},
                  {"inv_w_norm", rep.inv_w_norm},
                  {"inputs",
                   json::array({input_digest(pair_path), input_digest(measure_path)})}};
        write_report(cfg, "bernstein_rep_verify", j);
        if (!rep.ok) fail(errc::assertion_failure, "representation mismatch: " + rep.witness);
    });

    // ---- corpus ----
    auto* corpus = app.add_subcommand("corpus", "acceptance corpus");
    auto* cr = corpus->add_subcommand("run", "run all criteria");
    cr->callback([&] {
        auto results = run_corpus(cfg.seed);
        json j = json::array();
        bool all = true;
        for (const auto& r : results) {
            std::cout << "criterion " << r.id << " [" << r.name << "]: "
                      << (r.passed ? "PASS" : "FAIL") << " (" << r.details << ")\n";
            all = all && r.passed;
            j.push_back({{"id", r.id},
                         {"name", r.name},
                         {"passed", r.passed},
                         {"details", r.details}});
        }
        write_report(cfg, "corpus", json{{"criteria", j}, {"all_passed", all}});
        if (!all) fail(errc::assertion_failure, "acceptance corpus has failures");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const error& e) {
        std::cerr << errc_name(e.code()) << ": " << e.what() << "\n";
        return e.is_assertion() ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
