// Command-line driver: coproducts and comultiplication components, state
// evaluation, GNS summaries, atom-class arithmetic, factorization listings,
// and the named verification suites.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "uhfb/io.hpp"
#include "uhfb/verify.hpp"

using namespace uhfb;

namespace {

struct Driver {
    RunConfig cfg;
    bool json_out = false;
    std::string out_path;
    int rc = 0;

    void emit(const std::string& text, const json& j) const {
        const std::string payload = json_out ? j.dump(2) + "\n" : text;
        if (!out_path.empty()) {
            std::ofstream f(out_path);
            require(f.good(), "cannot open output file '" + out_path + "'");
            f << payload;
            require(f.good(), "failed writing output file '" + out_path + "'");
        } else {
            std::cout << payload;
        }
    }
};

SequencePrefix parse_base_flag(const std::string& s, const char* flag) {
    try {
        return SequencePrefix::component(detail::parse_uint_list(s, flag));
    } catch (const error&) {
        throw;
    }
}

AlgebraElement element_from_flags(const SequencePrefix& base, const std::string& elem,
                                  const std::vector<std::string>& terms, const RunConfig& cfg,
                                  int64_t level_flag) {
    std::vector<std::string> all;
    if (!elem.empty()) all.push_back(elem);
    all.insert(all.end(), terms.begin(), terms.end());
    require(!all.empty(), "give an element with --elem or --term");
    auto x = parse_element(base, all);
    require(x.level() <= cfg.level_cap, "element level exceeds --level-cap");
    if (level_flag > 0)
        require(static_cast<std::size_t>(level_flag) == x.level(),
                "--level disagrees with the element's site count");
    return x;
}

ProductState state_from_flags(const SequencePrefix& base, bool tracial, const std::string& pure,
                              const std::string& sites_file) {
    const int given = int(tracial) + int(!pure.empty()) + int(!sites_file.empty());
    require(given == 1, "pick exactly one of --tracial, --pure, --sites");
    if (tracial) return ProductState::tracial(base);
    if (!pure.empty()) {
        auto d = detail::parse_uint_list(pure, "--pure digits");
        require(d.size() == base.size(), "--pure needs one digit per site");
        std::vector<Mat> sites;
        for (std::size_t i = 0; i < base.size(); ++i) {
            require(d[i] >= 1 && d[i] <= base[i], "--pure digit out of range");
            sites.push_back(matrix_unit(base[i], d[i], d[i]));
        }
        return ProductState(base, std::move(sites));
    }
    std::ifstream f(sites_file);
    require(f.good(), "cannot open sites file '" + sites_file + "'");
    json j = json::parse(f, nullptr, true);
    require(j.is_array() && j.size() == base.size(), "--sites: need one matrix per site");
    std::vector<Mat> sites;
    for (const auto& m : j) sites.push_back(matrix_from_json(m));
    return ProductState(base, std::move(sites));
}

// ------------------------------------------------------------ subcommands

void cmd_delta(Driver& d, const std::string& a_flag, const std::string& elem,
               const std::vector<std::string>& terms, int64_t level, const std::string& pair) {
    d.cfg.validate();
    auto a = parse_base_flag(a_flag, "--a");
    auto x = element_from_flags(a, elem, terms, d.cfg, level);
    auto fam = delta(x);

    std::string text;
    json comps = json::array();
    auto render = [&](const FactorPair& p, const TensorElement& t) {
        text += p.str() + "  " + t.str() + "\n";
        comps.push_back({{"left", prefix_to_json(p.left)},
                         {"right", prefix_to_json(p.right)},
                         {"tensor", tensor_to_json(t)}});
    };

    if (!pair.empty()) {
        auto left = SequencePrefix::component(detail::parse_uint_list(pair, "--pair"));
        const auto parent = x.base();
        require(left.size() == parent.size(), "--pair length differs from the base");
        std::vector<uint32_t> right;
        for (std::size_t i = 0; i < parent.size(); ++i) {
            require(left[i] >= 1 && parent[i] % left[i] == 0,
                    "--pair entry does not divide the base");
            right.push_back(parent[i] / left[i]);
        }
        FactorPair p{left, SequencePrefix::component(right)};
        render(p, fam.component(p));
    } else {
        for (const auto& [p, t] : fam.materialize()) render(p, t);
    }
    d.emit(text, json{{"base", prefix_to_json(x.base())},
                      {"element", element_to_json(x)},
                      {"components", std::move(comps)}});
}

void cmd_coproduct(Driver& d, const std::string& b_flag, const std::string& c_flag,
                   const std::string& elem, const std::vector<std::string>& terms) {
    d.cfg.validate();
    auto b = parse_base_flag(b_flag, "--b");
    auto c = parse_base_flag(c_flag, "--c");
    auto x = element_from_flags(seq_product(b, c), elem, terms, d.cfg, -1);
    auto t = coproduct_phi(b.truncated(x.level()), c.truncated(x.level()), x);
    d.emit(t.str() + "\n", tensor_to_json(t));
}

void cmd_state_eval(Driver& d, const std::string& a_flag, bool tracial, const std::string& pure,
                    const std::string& sites_file, const std::string& elem,
                    const std::vector<std::string>& terms) {
    d.cfg.validate();
    auto a = parse_base_flag(a_flag, "--a");
    auto w = state_from_flags(a, tracial, pure, sites_file);
    auto x = element_from_flags(a, elem, terms, d.cfg, -1);
    const Complex v = w.eval(x);
    d.emit(detail::format_complex(v) + "\n",
           json{{"base", prefix_to_json(x.base())}, {"re", v.real()}, {"im", v.imag()}});
}

void cmd_gns(Driver& d, const std::string& a_flag, bool tracial, const std::string& pure,
             const std::string& sites_file, int64_t level) {
    d.cfg.validate();
    auto a = parse_base_flag(a_flag, "--a");
    auto w = state_from_flags(a, tracial, pure, sites_file);
    const std::size_t lvl = level > 0 ? static_cast<std::size_t>(level) : a.size();
    require(lvl <= d.cfg.level_cap, "--level exceeds --level-cap");
    auto g = gns(w, lvl, d.cfg.tolerance);
    const auto comm = commutant_dimension(g, d.cfg.tolerance);
    const auto cent = center_dimension(g, d.cfg.tolerance);
    std::string text = "dim: " + std::to_string(g.dim()) + "\n" +
                       "commutant_dim: " + std::to_string(comm) + "\n" +
                       "center_dim: " + std::to_string(cent) + "\n" +
                       "state_residual: " + std::to_string(g.state_residual()) + "\n";
    d.emit(text, json{{"dim", g.dim()},
                      {"commutant_dim", comm},
                      {"center_dim", cent},
                      {"state_residual", g.state_residual()}});
}

void cmd_factorizations(Driver& d, const std::string& a_flag) {
    auto a = parse_base_flag(a_flag, "--a");
    auto pairs = enumerate_factorizations(a);
    std::string text;
    json arr = json::array();
    for (const auto& p : pairs) {
        text += p.str() + "\n";
        arr.push_back({{"left", prefix_to_json(p.left)}, {"right", prefix_to_json(p.right)}});
    }
    text += "count: " + std::to_string(pairs.size()) + "\n";
    d.emit(text, json{{"base", prefix_to_json(a)},
                      {"pairs", std::move(arr)},
                      {"count", pairs.size()}});
}

json atom_to_json(const AtomClass& c) {
    return {{"alphabet", c.alphabet}, {"J", c.J.str()}};
}

void cmd_verify(Driver& d, const std::string& suite, const std::string& a_flag,
                const std::string& b_flag, const std::string& c_flag) {
    d.cfg.validate();
    std::vector<SuiteResult> results;
    if (suite == "coassoc" && !a_flag.empty()) {
        require(!b_flag.empty() && !c_flag.empty(), "verify coassoc needs --a, --b and --c");
        auto a = parse_base_flag(a_flag, "--a");
        auto b = parse_base_flag(b_flag, "--b");
        auto c = parse_base_flag(c_flag, "--c");
        const std::size_t lvl = std::min<uint64_t>(a.size(), d.cfg.level_cap);
        require(seq_product(seq_product(a, b), c).dim() <= d.cfg.dim_cap,
                "instance exceeds --dim-cap");
        results.push_back(SuiteResult{"coassoc", {verify_coassoc(a, b, c, lvl)}});
    } else if (suite == "cancellation" && !a_flag.empty()) {
        require(!b_flag.empty(), "verify cancellation needs --a and --b");
        auto a = parse_base_flag(a_flag, "--a");
        auto b = parse_base_flag(b_flag, "--b");
        const std::size_t lvl = std::min<uint64_t>(a.size(), d.cfg.level_cap);
        results.push_back(
            SuiteResult{"cancellation", {verify_cancellation(a, b, lvl, d.cfg.tolerance)}});
    } else if (suite == "all") {
        require(a_flag.empty(), "--a applies only to a single named suite");
        results = run_all(d.cfg);
    } else {
        require(a_flag.empty() || suite == "coassoc" || suite == "cancellation",
                "--a applies only to coassoc or cancellation");
        results.push_back(run_suite(suite, d.cfg));
    }

    bool all_passed = true;
    std::string text;
    json jr = json::array();
    for (const auto& s : results) {
        all_passed = all_passed && s.passed();
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", s.seconds);
        text += "suite " + s.suite + ": " + (s.passed() ? "PASS" : "FAIL") + " (" +
                std::to_string(s.reports.size()) + " checks, " +
                std::to_string(s.instances()) + " instances, " + buf + " s)\n";
        json reps = json::array();
        for (const auto& r : s.reports) {
            text += "  [" + std::string(r.passed() ? "PASS" : "FAIL") + "] " + r.check +
                    " (instances=" + std::to_string(r.instances);
            if (r.rank) text += ", rank=" + std::to_string(*r.rank);
            if (r.full_dim) text += ", full_dim=" + std::to_string(*r.full_dim);
            text += ")\n";
            for (const auto& f : r.failures) text += "    " + f + "\n";
            reps.push_back(report_to_json(r));
        }
        jr.push_back({{"suite", s.suite},
                      {"passed", s.passed()},
                      {"seconds", s.seconds},
                      {"reports", std::move(reps)}});
    }
    text += all_passed ? "all suites passed\n" : "FAILURES detected\n";
    d.emit(text, json{{"suites", std::move(jr)}, {"passed", all_passed}});
    if (!all_passed) d.rc = 1;
}

} // namespace

int main(int argc, char** argv) {
    Driver d;
    CLI::App app{"direct-sum bialgebra toolkit for towers of matrix algebras"};
    app.require_subcommand(1);
    app.fallthrough();

    app.add_option("--tol", d.cfg.tolerance, "numerical tolerance, in (0, 1e-4)");
    app.add_option("--level-cap", d.cfg.level_cap, "maximum truncation level");
    app.add_option("--dim-cap", d.cfg.dim_cap, "maximum composite dimension");
    app.add_option("--seed", d.cfg.seed, "seed for randomized suites");
    app.add_flag("--json", d.json_out, "emit JSON instead of text");
    app.add_option("--out", d.out_path, "write the report to this file");

    // delta
    auto* sd = app.add_subcommand("delta", "components of the comultiplication");
    std::string sd_a, sd_elem, sd_pair;
    std::vector<std::string> sd_terms;
    int64_t sd_level = -1;
    sd->add_option("--a", sd_a, "base prefix, e.g. 6 or 2,3")->required();
    sd->add_option("--elem", sd_elem, "matrix unit, e.g. E:2,2 or E;J=1,2;K=2,1");
    sd->add_option("--term", sd_terms, "term 'coeff*unit', repeatable");
    sd->add_option("--level", sd_level, "expected element level (validated)");
    sd->add_option("--pair", sd_pair, "only the component at this left factor");
    sd->callback([&] { cmd_delta(d, sd_a, sd_elem, sd_terms, sd_level, sd_pair); });

    // coproduct
    auto* sc = app.add_subcommand("coproduct", "one Kronecker coproduct");
    std::string sc_b, sc_c, sc_elem;
    std::vector<std::string> sc_terms;
    sc->add_option("--b", sc_b, "left factor prefix")->required();
    sc->add_option("--c", sc_c, "right factor prefix")->required();
    sc->add_option("--elem", sc_elem, "matrix unit over the product");
    sc->add_option("--term", sc_terms, "term 'coeff*unit', repeatable");
    sc->callback([&] { cmd_coproduct(d, sc_b, sc_c, sc_elem, sc_terms); });

    // state-eval
    auto* ss = app.add_subcommand("state-eval", "evaluate a product state");
    std::string ss_a, ss_pure, ss_sites, ss_elem;
    std::vector<std::string> ss_terms;
    bool ss_tracial = false;
    ss->add_option("--a", ss_a, "base prefix")->required();
    ss->add_flag("--tracial", ss_tracial, "normalized trace at every site");
    ss->add_option("--pure", ss_pure, "diagonal unit digits, e.g. 1,2");
    ss->add_option("--sites", ss_sites, "JSON file with one density matrix per site");
    ss->add_option("--elem", ss_elem, "element to evaluate");
    ss->add_option("--term", ss_terms, "term 'coeff*unit', repeatable");
    ss->callback([&] { cmd_state_eval(d, ss_a, ss_tracial, ss_pure, ss_sites, ss_elem, ss_terms); });

    // gns
    auto* sg = app.add_subcommand("gns", "GNS summary of a product state");
    std::string sg_a, sg_pure, sg_sites;
    bool sg_tracial = false;
    int64_t sg_level = -1;
    sg->add_option("--a", sg_a, "base prefix")->required();
    sg->add_flag("--tracial", sg_tracial, "normalized trace at every site");
    sg->add_option("--pure", sg_pure, "diagonal unit digits");
    sg->add_option("--sites", sg_sites, "JSON file with one density matrix per site");
    sg->add_option("--level", sg_level, "truncation level (default: full prefix)");
    sg->callback([&] { cmd_gns(d, sg_a, sg_tracial, sg_pure, sg_sites, sg_level); });

    // atom
    auto* sa = app.add_subcommand("atom", "atom classes over a fixed alphabet");
    uint32_t sa_n = 0, sa_m = 0;
    std::string sa_J, sa_K;
    sa->add_option("--n", sa_n, "alphabet size of the left class")->required();
    sa->add_option("--J", sa_J, "index sequence 'pre|period', e.g. 1|2")->required();
    sa->require_subcommand(1);

    auto* sa_star = sa->add_subcommand("star", "semigroup product");
    sa_star->add_option("--m", sa_m, "alphabet size of the right class")->required();
    sa_star->add_option("--K", sa_K, "right index sequence")->required();
    sa_star->callback([&] {
        AtomClass x(sa_n, EvPeriodicSeq::parse(sa_J));
        AtomClass y(sa_m, EvPeriodicSeq::parse(sa_K));
        auto p = atom_product(x, y);
        d.emit(p.str() + "\n", atom_to_json(p));
    });

    auto* sa_eq = sa->add_subcommand("equiv", "tail equivalence of two classes");
    sa_eq->add_option("--m", sa_m, "alphabet of the right class (default: --n)");
    sa_eq->add_option("--K", sa_K, "right index sequence")->required();
    sa_eq->callback([&] {
        AtomClass x(sa_n, EvPeriodicSeq::parse(sa_J));
        AtomClass y(sa_m == 0 ? sa_n : sa_m, EvPeriodicSeq::parse(sa_K));
        const bool eq = atom_equiv(x, y);
        d.emit(std::string(eq ? "true" : "false") + "\n", json{{"equal", eq}});
    });

    auto* sa_show = sa->add_subcommand("show", "canonical form and GNS checks");
    bool sa_gns = false;
    sa_show->add_flag("--check-gns", sa_gns, "verify irreducibility at levels up to the cap");
    sa_show->callback([&] {
        d.cfg.validate();
        AtomClass x(sa_n, EvPeriodicSeq::parse(sa_J));
        std::string text = x.str() + "\n";
        json j = atom_to_json(x);
        if (sa_gns) {
            json checks = json::array();
            for (std::size_t lvl = 1; lvl <= std::min<uint64_t>(3, d.cfg.level_cap); ++lvl) {
                auto g = gns(atom_state(x, lvl), lvl, d.cfg.tolerance);
                const auto comm = commutant_dimension(g, d.cfg.tolerance);
                text += "level " + std::to_string(lvl) + ": dim " + std::to_string(g.dim()) +
                        ", commutant_dim " + std::to_string(comm) + "\n";
                checks.push_back({{"level", lvl}, {"dim", g.dim()}, {"commutant_dim", comm}});
            }
            j["gns"] = std::move(checks);
        }
        d.emit(text, j);
    });

    // factorizations
    auto* sf = app.add_subcommand("factorizations", "all factor pairs of a prefix");
    std::string sf_a;
    sf->add_option("--a", sf_a, "base prefix")->required();
    sf->callback([&] { cmd_factorizations(d, sf_a); });

    // verify
    auto* sv = app.add_subcommand("verify", "run verification suites");
    std::string sv_suite = "all", sv_a, sv_b, sv_c;
    sv->add_option("suite", sv_suite, "suite name or 'all'");
    sv->add_option("--a", sv_a, "first prefix for a single instance");
    sv->add_option("--b", sv_b, "second prefix for a single instance");
    sv->add_option("--c", sv_c, "third prefix for a single instance");
    sv->callback([&] { cmd_verify(d, sv_suite, sv_a, sv_b, sv_c); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return d.rc;
}
