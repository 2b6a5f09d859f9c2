// Acceptance harness: one line per criterion, nonzero exit when any fails.
// argv[1] is the path to the command-line binary; the CLI-facing criteria
// spawn it as a real subprocess.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "uhfb/io.hpp"
#include "uhfb/verify.hpp"

using namespace uhfb;

namespace {

// pinned acceptance tolerances
constexpr double kKronTol = 1e-12;
constexpr double kStateTol = 1e-12;
constexpr double kIntertwineTol = 1e-9;
constexpr double kDeltaBudgetSec = 1.0;
constexpr double kCoassocBudgetSec = 10.0;
constexpr double kCancelBudgetSec = 30.0;
constexpr double kAllBudgetSec = 120.0;

int failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& note = "") {
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << number << ": " << what;
    if (!note.empty()) std::cout << " [" << note << "]";
    std::cout << "\n" << std::flush;
    if (!ok) ++failures;
}

template <typename Fn>
void criterion(int number, const std::string& what, Fn&& fn) {
    try {
        std::string note;
        const bool ok = fn(note);
        report(number, what, ok, note);
    } catch (const std::exception& e) {
        report(number, what, false, std::string("exception: ") + e.what());
    }
}

struct CliRun {
    int exit_code = -1;
    double seconds = 0.0;
    std::string output;
};

CliRun run_cli(const std::string& cli, const std::string& args) {
    const auto cap = std::filesystem::temp_directory_path() / "uhfb_acceptance_out.txt";
    const std::string cmd = "\"" + cli + "\" " + args + " > \"" + cap.string() + "\" 2>&1";
    const auto t0 = std::chrono::steady_clock::now();
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream f(cap);
    std::stringstream ss;
    ss << f.rdbuf();
    r.output = ss.str();
    std::filesystem::remove(cap);
    return r;
}

Mat random_matrix(Eigen::Index n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Mat a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = Complex(g(rng), g(rng));
    return a;
}

Mat random_density(Eigen::Index n, std::mt19937_64& rng) {
    Mat a = random_matrix(n, rng);
    Mat t = a * a.adjoint();
    return t / t.trace();
}

ProductState random_state(const SequencePrefix& base, std::mt19937_64& rng) {
    std::vector<Mat> sites;
    for (std::size_t i = 0; i < base.size(); ++i)
        sites.push_back(random_density(static_cast<Eigen::Index>(base[i]), rng));
    return ProductState(base, std::move(sites));
}

std::string fmt(double v) {
    std::ostringstream ss;
    ss.precision(3);
    ss << v;
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 2;
    }
    const std::string cli = argv[1];

    // 1. worked-example fidelity through the real binary, symbolic equality
    criterion(1, "comultiplication table of E[a=6; J=2; K=2] via the CLI", [&](std::string& note) {
        auto run = run_cli(cli, "--json delta --a 6 --elem E:2,2 --level 1");
        if (run.exit_code != 0) {
            note = "exit code " + std::to_string(run.exit_code);
            return false;
        }
        auto j = json::parse(run.output);
        const auto one = SequencePrefix::unit(1);
        const auto b2 = SequencePrefix::base({2});
        const auto b3 = SequencePrefix::base({3});
        const auto b6 = SequencePrefix::base({6});
        const auto x = unit_elem(b6, {2}, {2});
        const std::vector<TensorElement> expected = {
            TensorElement::simple(unit_elem(one, {1}, {1}), x),
            TensorElement::simple(unit_elem(b2, {1}, {1}), unit_elem(b3, {2}, {2})),
            TensorElement::simple(unit_elem(b3, {1}, {1}), unit_elem(b2, {2}, {2})),
            TensorElement::simple(x, unit_elem(one, {1}, {1}))};
        const auto& comps = j.at("components");
        if (comps.size() != expected.size()) {
            note = "expected 4 components, got " + std::to_string(comps.size());
            return false;
        }
        for (std::size_t i = 0; i < expected.size(); ++i)
            if (!(tensor_from_json(comps[i].at("tensor")) == expected[i])) {
                note = "component " + std::to_string(i) + " differs";
                return false;
            }
        note = fmt(run.seconds) + " s";
        return run.seconds < kDeltaBudgetSec;
    });

    // 2. the coproduct inverts the Kronecker product on dense matrices
    criterion(2, "Kronecker duality on 200 random M2/M3 pairs", [&](std::string& note) {
        std::mt19937_64 rng(920);
        const auto b2 = SequencePrefix::base({2});
        const auto b3 = SequencePrefix::base({3});
        const auto b6 = SequencePrefix::base({6});
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const Mat a = random_matrix(2, rng), b = random_matrix(3, rng);
            const auto split = coproduct_phi(b2, b3, from_dense(b6, kron(a, b)));
            const auto expanded = TensorElement::simple(from_dense(b2, a), from_dense(b3, b));
            worst = std::max(worst, split.max_coeff_dist(expanded));
        }
        note = "max deviation " + fmt(worst);
        return worst <= kKronTol;
    });

    // 3. coassociativity, exhaustive on the grid
    criterion(3, "coassociativity grid", [&](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        uint64_t instances = 0;
        for (uint32_t ea = 1; ea <= 3; ++ea)
            for (uint32_t eb = 1; eb <= 3; ++eb)
                for (uint32_t ec = 1; ec <= 3; ++ec) {
                    auto r = verify_coassoc(SequencePrefix::component({ea}),
                                            SequencePrefix::component({eb}),
                                            SequencePrefix::component({ec}), 1);
                    instances += r.instances;
                    if (!r.passed()) {
                        note = r.failures.front();
                        return false;
                    }
                }
        auto r2 = verify_coassoc(SequencePrefix::base({2, 2}), SequencePrefix::base({3, 2}),
                                 SequencePrefix::base({2, 3}), 2);
        instances += r2.instances;
        if (!r2.passed()) {
            note = r2.failures.front();
            return false;
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        note = std::to_string(instances) + " instances, " + fmt(sec) + " s";
        return sec < kCoassocBudgetSec;
    });

    // 4. counit laws, exact on every unit of every base with dim <= 36
    criterion(4, "counit laws", [&](std::string& note) {
        const std::vector<SequencePrefix> grid = {
            SequencePrefix::base({2}),    SequencePrefix::base({3}),
            SequencePrefix::base({4}),    SequencePrefix::base({6}),
            SequencePrefix::base({2, 2}), SequencePrefix::base({2, 3}),
            SequencePrefix::base({3, 3}), SequencePrefix::base({6, 6}),
            SequencePrefix::base({2, 2, 2})};
        uint64_t instances = 0;
        for (const auto& a : grid) {
            const auto one = SequencePrefix::unit(a.size());
            Digits J(a.size(), 1);
            do {
                Digits K(a.size(), 1);
                do {
                    const auto u = unit_elem(a, J, K);
                    instances += 2;
                    if (!(apply_counit_left(coproduct_phi(one, a, u)) == u) ||
                        !(apply_counit_right(coproduct_phi(a, one, u)) == u)) {
                        note = "fails on " + u.str();
                        return false;
                    }
                } while (detail::next_digits(K, a));
            } while (detail::next_digits(J, a));
        }
        note = std::to_string(instances) + " instances, exact";
        return true;
    });

    // 5. cancellation spanning ranks plus the padding identity
    criterion(5, "cancellation law span ranks", [&](std::string& note) {
        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<std::pair<uint32_t, uint32_t>> pairs = {{2, 2}, {2, 3}, {3, 2}};
        for (auto [ea, eb] : pairs) {
            auto r = verify_cancellation(SequencePrefix::base({ea}), SequencePrefix::base({eb}), 1);
            const uint64_t want = (uint64_t(ea) * eb) * (uint64_t(ea) * eb);
            if (!r.passed() || !r.rank || *r.rank != want || !r.full_dim || *r.full_dim != want) {
                note = "pair (" + std::to_string(ea) + "," + std::to_string(eb) + ") rank " +
                       (r.rank ? std::to_string(*r.rank) : "?") + " of " + std::to_string(want);
                return false;
            }
        }
        const double sec = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        note = "ranks 16/36/36 full, padding exact, " + fmt(sec) + " s";
        return sec < kCancelBudgetSec;
    });

    // 6. the flip inequality, in-process and through the CLI
    criterion(6, "non-cocommutativity witness", [&](std::string& note) {
        const auto w = cocommutativity_witness(
            unit_elem(SequencePrefix::base({6}), {2}, {2}),
            FactorPair{SequencePrefix::base({2}), SequencePrefix::base({3})});
        if (w.equal) {
            note = "flip inequality not detected";
            return false;
        }
        auto run = run_cli(cli, "verify noncocommutative");
        note = "cli exit " + std::to_string(run.exit_code);
        return run.exit_code == 0;
    });

    // 7. comodule law on randomized words
    criterion(7, "comodule law on 1000 random words", [&](std::string& note) {
        std::mt19937_64 rng(929);
        std::uniform_int_distribution<uint64_t> idx(1, 50);
        std::uniform_int_distribution<std::size_t> len(1, 3);
        std::uniform_int_distribution<uint32_t> entry(1, 4);
        for (int it = 0; it < 1000; ++it) {
            const std::size_t n = len(rng);
            std::vector<uint64_t> J(n), K(n);
            std::vector<uint32_t> ae(n), be(n);
            for (std::size_t i = 0; i < n; ++i) {
                J[i] = idx(rng);
                K[i] = idx(rng);
                ae[i] = entry(rng);
                be[i] = entry(rng);
            }
            auto c = verify_coaction(J, K, SequencePrefix::component(ae),
                                     SequencePrefix::component(be));
            if (!c.match) {
                note = c.note;
                return false;
            }
        }
        note = "exact";
        return true;
    });

    // 8. tensor of product states equals the state of the Kronecker density
    criterion(8, "state tensor formula on 50 random tuples", [&](std::string& note) {
        std::mt19937_64 rng(931);
        double worst = 0.0;
        for (uint32_t e : {2u, 3u}) {
            const auto base = SequencePrefix::base({e, e});
            const auto ab = seq_product(base, base);
            for (int tuple = 0; tuple < 50; ++tuple) {
                const auto t = random_state(base, rng);
                const auto r = random_state(base, rng);
                const auto tied = state_tensor(t, r);
                const auto boxed = boxtimes_states(t, r);
                Digits J(2, 1);
                do {
                    Digits K(2, 1);
                    do {
                        const auto u = unit_elem(ab, J, K);
                        worst = std::max(worst, std::abs(tied.eval(u) - boxed.eval(u)));
                    } while (detail::next_digits(K, ab));
                } while (detail::next_digits(J, ab));
            }
        }
        note = "max deviation " + fmt(worst);
        return worst <= kStateTol;
    });

    // 9. GNS intertwiner for the tracial pair and a random pair
    criterion(9, "GNS intertwiner", [&](std::string& note) {
        const auto b2 = SequencePrefix::base({2});
        const auto tracial =
            intertwiner_check(ProductState::tracial(b2), ProductState::tracial(b2), 1);
        std::mt19937_64 rng(937);
        const auto rnd = intertwiner_check(random_state(b2, rng),
                                           random_state(SequencePrefix::base({3}), rng), 1);
        const double worst =
            std::max({tracial.unitarity_defect, tracial.intertwine_residual,
                      rnd.unitarity_defect, rnd.intertwine_residual});
        note = "max defect " + fmt(worst);
        return worst <= kIntertwineTol;
    });

    // 10. atom star semigroup, separation, and irreducibility
    criterion(10, "atom semigroup", [&](std::string& note) {
        AtomClass one2(2, EvPeriodicSeq::constant(1));
        AtomClass two2(2, EvPeriodicSeq::constant(2));
        if (!(atom_product(one2, two2).J == EvPeriodicSeq::constant(2)) ||
            atom_product(one2, two2).alphabet != 4) {
            note = "1 * 2 != 2";
            return false;
        }
        if (!(atom_product(two2, one2).J == EvPeriodicSeq::constant(3))) {
            note = "2 * 1 != 3";
            return false;
        }
        if (atom_equiv(AtomClass(4, EvPeriodicSeq::constant(2)),
                       AtomClass(4, EvPeriodicSeq::constant(3)))) {
            note = "P4[2] ~ P4[3]";
            return false;
        }
        for (uint32_t n : {2u, 3u}) {
            AtomClass cl(n, EvPeriodicSeq({1}, {n, 1}));
            for (std::size_t level = 1; level <= 3; ++level)
                if (commutant_dimension(gns(atom_state(cl, level), level)) != 1) {
                    note = cl.str() + " reducible at level " + std::to_string(level);
                    return false;
                }
        }
        note = "exact, commutants trivial at levels 1-3";
        return true;
    });

    // 11. tensor of two atom representations stays irreducible
    criterion(11, "irreducibility of tensor representations", [&](std::string& note) {
        AtomClass x(2, EvPeriodicSeq::constant(1));
        AtomClass y(3, EvPeriodicSeq::constant(2));
        for (std::size_t level = 1; level <= 2; ++level) {
            auto gx = gns(atom_state(x, level), level);
            auto gy = gns(atom_state(y, level), level);
            if (commutant_dimension(rep_tensor(gx, gy)) != 1) {
                note = "reducible at level " + std::to_string(level);
                return false;
            }
        }
        note = "levels 1-2 trivial commutant";
        return true;
    });

    // 12. the full suite through the real binary
    criterion(12, "verify all", [&](std::string& note) {
        auto run = run_cli(cli, "verify all");
        note = "exit " + std::to_string(run.exit_code) + ", " + fmt(run.seconds) + " s";
        return run.exit_code == 0 && run.seconds < kAllBudgetSec;
    });

    if (failures > 0) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all 12 criteria passed\n";
    return 0;
}
