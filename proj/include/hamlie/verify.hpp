#pragma once
// The acceptance suite: one named pass/fail check per criterion, shared by the
// `verify` subcommand and the acceptance test binary.

#include <chrono>
#include <functional>
#include <future>

#include "hamlie/oracles.hpp"
#include "hamlie/wittrestrict.hpp"

namespace hamlie {

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerifyOptions {
    std::uint64_t seed = 1;
    bool timings = false;  // append wall times to details (makes output nondeterministic)
    bool parallel = true;
};

namespace detail {

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

inline std::string ms_string(double s) { return std::to_string(static_cast<long long>(s * 1000)) + " ms"; }

inline std::size_t span_rank(fp_t p, const std::vector<FpVector>& vs, std::size_t n) {
    EchelonBasis e(p, n);
    for (const auto& v : vs) e.insert(v);
    return e.rows().size();
}

inline Check crit_catalog_count(const VerifyOptions& o) {
    Check c{"1 catalog count", true, ""};
    for (auto [p, want, limit] : {std::tuple<fp_t, std::size_t, double>{5, 21, 10.0}, {7, 43, 120.0}}) {
        auto t0 = Clock::now();
        std::size_t n = catalog(p).size();
        double s = seconds_since(t0);
        bool ok = n == want && s < limit;
        c.pass = c.pass && ok;
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + ": " + std::to_string(n) +
                    " classes" + (s < limit ? "" : " (over time budget)");
        if (o.timings) c.detail += " in " + ms_string(s);
    }
    return c;
}

inline Check crit_dimensions(const VerifyOptions&) {
    Check c{"2 dimension table p=5", true, ""};
    std::size_t ones = 0, minus = 0, generic = 0;
    for (const auto& s : catalog(5)) {
        if (s.dim == 1 && s.rep == omega2(5)) ++ones;
        else if (s.dim == 24 && (s.rep == omega0(5) || s.rep == omega1(5))) ++minus;
        else if (!is_exceptional(s.rep, 5) && s.dim == 25 * (weight_gap(s.rep, 5) + 1)) ++generic;
        else c.pass = false;
    }
    c.pass = c.pass && ones == 1 && minus == 2 && generic == 18;
    c.detail = "1 x" + std::to_string(ones) + ", 24 x" + std::to_string(minus) + ", 25(r+1) x" + std::to_string(generic);
    return c;
}

inline Check crit_simplicity(const VerifyOptions&) {
    Check c{"3 simplicity criterion p=5", true, ""};
    std::size_t simple = 0;
    for (auto l : all_weights(5)) {
        bool s = is_simple(*build_induced(5, l).module);
        simple += s;
        if (s == is_exceptional(l, 5)) {
            c.pass = false;
            c.detail += "mismatch at " + weight_label(l, 5) + "; ";
        }
    }
    c.detail += std::to_string(simple) + "/25 simple";
    return c;
}

inline Check crit_tables(const VerifyOptions& o) {
    Check c{"4 composition tables p=5,7", true, ""};
    using Row = std::tuple<std::int64_t, std::int64_t, std::size_t>;
    std::size_t tables = 0;
    for (fp_t p : {5u, 7u}) {
        const std::size_t q = static_cast<std::size_t>(p) * p;
        std::vector<std::pair<std::pair<int, int>, std::vector<Row>>> cases = {
            {{0, 0}, {{0, -1, q - 1}, {0, 0, 1}}},
            {{-1, -1}, {{-1, -1, q - 1}, {0, 0, 1}}},
            {{1, 0}, {{0, 0, 1}, {0, -1, q - 1}, {1, 0, q}}},
            {{0, -1}, {{-1, -1, q - 1}, {0, -1, q - 1}, {0, 0, 1}, {0, 0, 1}}},
            {{-1, -2}, {{-2, -2, q}, {0, 0, 1}, {-1, -2, q - 1}}},
        };
        for (int a = 2; a <= static_cast<int>(p) - 2; ++a) cases.push_back({{a, a - 1}, {{a - 1, a - 1, q}, {a, a - 1, q}}});
        for (const auto& [w, rows] : cases) {
            std::multiset<std::tuple<fp_t, fp_t, std::size_t>> want, got;
            for (auto [a, b, d] : rows) {
                Weight l = make_weight(a, b, p);
                want.insert({l.x, l.y, d});
            }
            for (const auto& e : factor_table(build_induced(p, w.first, w.second), o.seed)) got.insert({e.label.x, e.label.y, e.dim});
            ++tables;
            if (got != want) {
                c.pass = false;
                c.detail += "Z" + weight_label(make_weight(w.first, w.second, p), p) + " at p=" + std::to_string(p) + " differs; ";
            }
        }
    }
    c.detail += std::to_string(tables) + " tables compared";
    return c;
}

inline Check crit_shapes(const VerifyOptions&) {
    Check c{"5 maximal-vector shapes p=5", true, ""};
    for (auto l : all_weights(5)) {
        InducedModule z = build_induced(5, l);
        std::size_t want = z.m0.n <= 1 ? 3 : 1;
        CheckResult r = check_max_vector_shapes(z);
        if (!r.ok || max_vector_shapes(z).size() != want) {
            c.pass = false;
            c.detail += weight_label(l, 5) + ": " + r.detail + "; ";
        }
    }
    if (c.pass) c.detail = "25 modules match";
    return c;
}

inline Check crit_n_generation(const VerifyOptions&) {
    Check c{"6 N-generation", true, ""};
    for (fp_t p : {5u, 7u, 11u}) {
        auto hh = build_p_envelope(p);
        std::vector<FpVector> gens;
        for (const char* n : {"X", "x^(p-1)d_y", "A", "C"}) gens.push_back(named_element(*hh, n));
        std::vector<FpVector> n_basis = filtration_component(*hh, 1);
        n_basis.push_back(named_element(*hh, "X"));
        const std::size_t target = static_cast<std::size_t>(p) * p - 4;
        auto sub = spin_subalgebra(*hh, gens);
        auto equal_to_n = [&](const std::vector<FpVector>& s) {
            std::vector<FpVector> both = s;
            both.insert(both.end(), n_basis.begin(), n_basis.end());
            return s.size() == target && span_rank(p, both, hh->dim()) == target;
        };
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + ": " + std::to_string(sub.size());
        if (p == 5) {
            gens.push_back(named_element(*hh, "J"));
            auto closed = spin_subalgebra(*hh, gens);
            c.detail += ", with J " + std::to_string(closed.size());
            c.pass = c.pass && sub.size() < target && equal_to_n(closed);
        } else {
            c.pass = c.pass && equal_to_n(sub);
        }
    }
    return c;
}

inline Check crit_oracles(const VerifyOptions& o) {
    Check c{"7 oracle agreement", true, ""};
    std::mt19937_64 rng(o.seed);
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally;  // name -> (agree, total)
    const std::vector<std::pair<int, int>> weights = {{0, 0}, {1, 0}, {-1, -1}, {0, -1}, {3, 1}};
    for (fp_t p : {5u, 7u})
        for (auto [a, b] : weights) {
            InducedModule z = build_induced(p, a, b);
            for (const char* name : {"X", "d_y", "Y", "x^(p-1)d_y", "L", "J"}) {
                if (std::string(name) == "J" && p != 5) continue;
                FpVector e = named_element(*z.module->alg, name);
                for (int t = 0; t < 200; ++t) {
                    FpVector v(z.dim());
                    for (auto& x : v) x = static_cast<fp_t>(rng() % p);
                    auto& [agree, total] = tally[name];
                    ++total;
                    agree += oracle_action(z, name, v) == z.module->apply_element(e, v);
                }
            }
        }
    for (const auto& [name, t] : tally) {
        c.pass = c.pass && t.first == t.second;
        c.detail += (c.detail.empty() ? "" : ", ") + name + " " + std::to_string(t.first) + "/" + std::to_string(t.second);
    }
    return c;
}

inline Check crit_invariants(const VerifyOptions&) {
    Check c{"8 algebra invariants", true, ""};
    auto hh = build_p_envelope(5);
    std::size_t bad = 0;
    for (std::size_t i = 0; i < hh->dim(); ++i)
        for (std::size_t j = 0; j < hh->dim(); ++j)
            for (std::size_t k = 0; k < hh->dim(); ++k) bad += !jacobi_holds(*hh, i, j, k);
    c.pass = bad == 0;
    c.detail = "Jacobi failures " + std::to_string(bad);

    std::size_t modules = 0, unrestricted = 0;
    auto restricted = [&](const MatrixModule& m) {
        ++modules;
        if (!check_restricted(m).ok) ++unrestricted;
    };
    for (fp_t p : {5u, 7u}) {
        for (auto l : all_weights(p))
            if (p == 5 || is_exceptional(l, p)) restricted(*build_induced(p, l).module);
        for (const auto& s : catalog(p)) {
            restricted(*s.module);
            if (p == 5) restricted(restrict_to_W(*s.module));
        }
        restricted(build_O_module(p));
        for (fp_t r = 0; r < p; ++r) restricted(chang_module(p, r));
    }
    c.pass = c.pass && unrestricted == 0;
    c.detail += "; restricted " + std::to_string(modules - unrestricted) + "/" + std::to_string(modules) + " modules";

    bool pmap_ok = true;
    for (fp_t p : {5u, 7u, 11u}) {
        Derivation dy = Derivation::dy(p, 0, 0);
        Derivation d = Derivation::dx(p, 0, 0, p - 1) + Derivation::dy(p, p - 1, 1);
        pmap_ok = pmap_ok && is_zero(p_power(dy).coords()) && p_power(d).coords() == Derivation::dy(p, 0, 1).coords();
    }
    c.pass = c.pass && pmap_ok;
    c.detail += std::string("; p-map facts ") + (pmap_ok ? "hold" : "fail");
    return c;
}

inline Check crit_witt(const VerifyOptions& o) {
    Check c{"9 W-restriction p=5", true, ""};
    std::mt19937_64 rng(o.seed);
    std::size_t agree = 0, n = 0;
    for (const auto& s : catalog(5)) {
        ++n;
        FactorMultiset want = predicted_restriction(5, s.rep);
        GradedResult g = graded_restriction(5, s.rep);
        GradedResult gr = graded_restriction(5, s.rep, &rng);
        FactorMultiset d = direct_factors(restrict_to_W(*s.module), o.seed);
        bool ok = g.check.ok && g.factors == want && gr.factors == want && d == want && equal_middle_multiplicities(d, 5) &&
                  multiset_dim(d, 5) == s.dim;
        agree += ok;
        if (!ok) c.detail += weight_label(s.rep, 5) + ": graded " + multiset_string(g.factors) + " direct " + multiset_string(d) + "; ";
    }
    c.pass = agree == n;
    c.detail += std::to_string(agree) + "/" + std::to_string(n) + " simples match";
    return c;
}

inline Check crit_noniso(const VerifyOptions&) {
    Check c{"10 L(0,-1) vs L(-1,-1)", true, ""};
    SimpleClass a = realize_simple(5, omega1(5)), b = realize_simple(5, omega0(5));
    bool by_weights = iso_test(*a.module, *b.module), by_solver = iso_by_intertwiner(*a.module, *b.module);
    c.pass = !by_weights && !by_solver && a.dim == b.dim;
    c.detail = std::string("maximal weights ") + (by_weights ? "agree" : "differ") + ", intertwiners " +
               (by_solver ? "found" : "none invertible");
    return c;
}

inline Check crit_o_module(const VerifyOptions&) {
    Check c{"11 O-module", true, ""};
    for (fp_t p : {5u, 7u}) {
        MatrixModule om = build_O_module(p);
        auto head = realize_simple(p, omega0(p)).module;
        bool ok = verify_module(om).ok && is_simple(om) && om.dim() == static_cast<std::size_t>(p) * p - 1 &&
                  iso_test(om, *head) && iso_by_intertwiner(om, *head);
        c.pass = c.pass && ok;
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + (ok ? " ok" : " fails");
    }
    return c;
}

inline Check crit_balanced(const VerifyOptions&) {
    Check c{"12 balanced toral", true, ""};
    for (fp_t p : {5u, 7u}) {
        BalancedReport r = balanced_toral_check(*build_p_envelope(p), witt_torus_element(p), 1);
        c.pass = c.pass && r.balanced && !r.degenerate;
        c.detail += (c.detail.empty() ? "" : "; ") + std::string("p=") + std::to_string(p) + ": nonzero eigenspaces dim " +
                    std::to_string(r.common) + ", zero eigenspace dim " + std::to_string(r.eigendims[0]);
    }
    return c;
}

}  // namespace detail

inline std::vector<Check> acceptance_checks(const VerifyOptions& o = {}) {
    using Fn = Check (*)(const VerifyOptions&);
    const std::vector<Fn> fns = {detail::crit_catalog_count, detail::crit_dimensions, detail::crit_simplicity,
                                 detail::crit_tables,        detail::crit_shapes,     detail::crit_n_generation,
                                 detail::crit_oracles,       detail::crit_invariants, detail::crit_witt,
                                 detail::crit_noniso,        detail::crit_o_module,   detail::crit_balanced};
    const std::vector<std::string> names = {"1 catalog count", "2 dimension table p=5", "3 simplicity criterion p=5",
                                            "4 composition tables p=5,7", "5 maximal-vector shapes p=5", "6 N-generation",
                                            "7 oracle agreement", "8 algebra invariants", "9 W-restriction p=5",
                                            "10 L(0,-1) vs L(-1,-1)", "11 O-module", "12 balanced toral"};
    auto guarded = [&o, &names, &fns](std::size_t i) {
        Fn f = fns[i];
        auto t0 = detail::Clock::now();
        Check c;
        try {
            c = f(o);
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail = std::string("exception: ") + e.what();
        }
        c.name = names[i];
        if (o.timings) c.detail += " [" + detail::ms_string(detail::seconds_since(t0)) + "]";
        return c;
    };
    std::vector<Check> out;
    // criterion 1 is timed, so it runs alone before the others
    out.push_back(guarded(0));
    if (o.parallel) {
        std::vector<std::future<Check>> jobs;
        for (std::size_t i = 1; i < fns.size(); ++i) jobs.push_back(std::async(std::launch::async, guarded, i));
        for (auto& j : jobs) out.push_back(j.get());
    } else {
        for (std::size_t i = 1; i < fns.size(); ++i) out.push_back(guarded(i));
    }
    return out;
}

}  // namespace hamlie
