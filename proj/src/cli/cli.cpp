#include "uc/cli/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uc/curvemodel/curvemodel.hpp"
#include "uc/errors.hpp"
#include "uc/exactalg/modp.hpp"
#include "uc/numsemigroup/numsemigroup.hpp"
#include "uc/skewpoly/skewpoly.hpp"
#include "uc/twistforms/twistforms.hpp"
#include "uc/ugroup/ugroup.hpp"

namespace uc::cli {

using json = nlohmann::ordered_json;
using exactalg::FieldElem;
using exactalg::Presentation;
using exactalg::PresPtr;
using exactalg::RingElem;
using numsemigroup::NumericalSemigroup;
using skewpoly::SkewPoly;

bool VerificationReport::pass() const {
    return std::all_of(cells.begin(), cells.end(), [](const Cell &c) { return c.pass; });
}

namespace {

std::string join(const std::vector<std::int64_t> &v, const char *sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

class Runner {
public:
    Runner(std::string params, VerificationReport &rep) : params_(std::move(params)), rep_(rep) {}

    // fn returns pass and fills the message.
    void cell(const std::string &check, const std::function<bool(std::string &)> &fn) {
        auto t0 = std::chrono::steady_clock::now();
        Cell c;
        c.params = params_;
        c.check = check;
        try {
            c.pass = fn(c.message);
        } catch (const ConsistencyError &e) {
            c.pass = false;
            c.message = e.what();
        }
        c.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        rep_.cells.push_back(std::move(c));
    }

private:
    std::string params_;
    VerificationReport &rep_;
};

std::string pn(std::uint32_t p, int n) { return "p=" + std::to_string(p) + " n=" + std::to_string(n); }

RingElem random_elem(const PresPtr &pres, std::mt19937_64 &rng, bool nilpotent) {
    std::uint32_t p = pres->characteristic();
    auto coords = RingElem(pres).monomial_coordinates();
    std::uniform_int_distribution<std::uint32_t> coef(0, p - 1);
    std::bernoulli_distribution keep(0.3);
    for (std::size_t i = nilpotent ? 1 : 0; i < coords.size(); ++i)
        if (keep(rng) || i == 0) coords[i] = FieldElem(p, coef(rng));
    return RingElem::from_coordinates(pres, coords);
}

SkewPoly random_skew(const PresPtr &pres, std::mt19937_64 &rng, std::size_t deg) {
    std::vector<RingElem> c;
    for (std::size_t i = 0; i <= deg; ++i) c.push_back(random_elem(pres, rng, false));
    return SkewPoly(pres, c);
}

SkewPoly random_unit(const PresPtr &pres, std::mt19937_64 &rng, std::size_t deg) {
    std::uint32_t p = pres->characteristic();
    std::uniform_int_distribution<std::uint32_t> unit(1, p - 1);
    std::vector<RingElem> c{RingElem(pres, unit(rng)) + random_elem(pres, rng, true)};
    for (std::size_t i = 1; i <= deg; ++i) c.push_back(random_elem(pres, rng, true));
    return SkewPoly(pres, c);
}

void suite_skew(std::uint32_t p, int n, const Options &o, VerificationReport &rep) {
    Runner run(pn(p, n), rep);
    auto pres = curvemodel::un_coordinate_ring(p, static_cast<unsigned>(n));
    std::mt19937_64 rng(o.seed);
    const int trials = 10;
    run.cell("associativity", [&](std::string &msg) {
        for (int t = 0; t < trials; ++t) {
            auto a = random_skew(pres, rng, 2), b = random_skew(pres, rng, 2), c = random_skew(pres, rng, 2);
            if (!((a * b) * c == a * (b * c))) {
                msg = "fails on trial " + std::to_string(t);
                return false;
            }
        }
        return true;
    });
    run.cell("distributivity", [&](std::string &msg) {
        for (int t = 0; t < trials; ++t) {
            auto a = random_skew(pres, rng, 2), b = random_skew(pres, rng, 2), c = random_skew(pres, rng, 2);
            if (!(a * (b + c) == a * b + a * c) || !((a + b) * c == a * c + b * c)) {
                msg = "fails on trial " + std::to_string(t);
                return false;
            }
        }
        return true;
    });
    run.cell("two-sided inverse", [&](std::string &msg) {
        for (int t = 0; t < trials; ++t) {
            auto a = random_unit(pres, rng, 2);
            if (!skewpoly::is_unit_skew(a)) {
                msg = "unit not recognized";
                return false;
            }
            auto b = skewpoly::skew_inverse(a);
            if (!(a * b).is_one() || !(b * a).is_one()) {
                msg = "inverse fails on trial " + std::to_string(t);
                return false;
            }
        }
        return true;
    });
    run.cell("matrix_rep homomorphism", [&](std::string &msg) {
        const std::size_t d = 4;
        for (int t = 0; t < trials; ++t) {
            auto a = random_skew(pres, rng, 2), b = random_skew(pres, rng, 2);
            if (skewpoly::matrix_rep(a * b, d) != skewpoly::matrix_mul(skewpoly::matrix_rep(a, d), skewpoly::matrix_rep(b, d))) {
                msg = "fails on trial " + std::to_string(t);
                return false;
            }
        }
        return true;
    });
    if (n >= 1) {
        run.cell("adjoint matrix", [&](std::string &) {
            auto U = ugroup::universal_ring(p, static_cast<unsigned>(n), 1, o.max_rank);
            const auto &x = U.points[0];
            return ugroup::adjoint_matrix(x) == ugroup::adjoint_by_conjugation(x);
        });
    }
}

void suite_central(std::uint32_t p, int n, const Options &o, VerificationReport &rep) {
    Runner run(pn(p, n), rep);
    auto r = ugroup::verify_central_series(p, static_cast<unsigned>(n), o.max_rank);
    for (const auto &c : r.checks)
        run.cell(c.name + " r=" + std::to_string(c.r), [&](std::string &msg) {
            msg = c.message;
            return c.pass;
        });
    for (int s = 1; s + 1 <= n; ++s)
        run.cell("commutator formula s=" + std::to_string(s), [&](std::string &) {
            return ugroup::commutator_formula_check(p, static_cast<unsigned>(n), static_cast<unsigned>(s));
        });
}

std::string verdict_msg(const curvemodel::Verdict &v) {
    return v.pass ? "" : "d=" + std::to_string(v.d) + " s=" + std::to_string(v.s) + " leaves the semigroup";
}

void suite_extension(std::uint32_t p, int n, const Options &, VerificationReport &rep) {
    Runner run(pn(p, n), rep);
    auto S = numsemigroup::gamma_pn(p, static_cast<unsigned>(n));
    run.cell("extension U_n", [&](std::string &msg) {
        auto v = curvemodel::check_extension_un(p, static_cast<unsigned>(n), S);
        msg = verdict_msg(v);
        return v.pass;
    });
    run.cell("extension Ga", [&](std::string &msg) {
        auto v = curvemodel::check_extension_ga(p, S);
        msg = verdict_msg(v);
        return v.pass;
    });
}

void suite_hilbert(std::uint32_t p, int n, const Options &, VerificationReport &rep) {
    Runner run(pn(p, n), rep);
    std::int64_t N = curvemodel::default_hilbert_bound(p, static_cast<unsigned>(n));
    run.cell("hilbert series", [&](std::string &msg) {
        msg = "to degree " + std::to_string(N);
        return curvemodel::hilbert_series_check(p, static_cast<unsigned>(n), N);
    });
    run.cell("invariants", [&](std::string &msg) {
        auto inv = curvemodel::curve_invariants(p, static_cast<unsigned>(n));
        std::string f;
        for (const auto &s : inv.flags) f += (f.empty() ? "" : "; ") + s;
        msg = f;
        return inv.deg_omega == 2 * inv.genus - 2;
    });
}

void suite_cartier(std::uint32_t p, int n, const Options &, VerificationReport &rep) {
    Runner run(pn(p, n), rep);
    run.cell("cartier", [&](std::string &) { return curvemodel::cartier_check(p, static_cast<unsigned>(n)); });
}

void suite_inertia(std::uint32_t p, int n, const Options &, VerificationReport &rep) {
    Runner run(pn(p, n), rep);
    run.cell("inertia", [&](std::string &) { return curvemodel::inertia_check(p, static_cast<unsigned>(n)); });
}

void suite_twist(std::uint32_t p, VerificationReport &rep) {
    Runner run("p=" + std::to_string(p), rep);
    run.cell("russell level 1", [&](std::string &) { return twistforms::verify_russell_level1(p); });
    run.cell("russell level 1 control", [&](std::string &msg) {
        msg = "broken identity must fail";
        return !twistforms::verify_russell_level1(p, true);
    });
    run.cell("russell level 2", [&](std::string &) { return twistforms::verify_russell_level2(p); });
    run.cell("russell level 2 control", [&](std::string &msg) {
        msg = "broken identity must fail";
        return !twistforms::verify_russell_level2(p, true);
    });
    run.cell("torsor action", [&](std::string &) { return twistforms::verify_torsor_action(p); });
    run.cell("torsor action control", [&](std::string &msg) {
        msg = "broken identity must fail";
        return !twistforms::verify_torsor_action(p, true);
    });
}

} // namespace

VerificationReport run_suite(std::uint32_t p, int n, const std::string &suite, const Options &opts) {
    if (!exactalg::is_prime(p)) throw UsageError("p must be prime");
    bool all = suite == "all";
    if (!all && std::find(kSuites.begin(), kSuites.end(), suite) == kSuites.end())
        throw UsageError("unknown suite '" + suite + "'");
    if (suite != "twist" && n < 0) throw UsageError("suite '" + suite + "' needs n");
    VerificationReport rep;
    rep.suite = suite;
    if (all || suite == "skew") suite_skew(p, n, opts, rep);
    if (all || suite == "central") suite_central(p, n, opts, rep);
    if (all || suite == "extension") suite_extension(p, n, opts, rep);
    if (all || suite == "hilbert") suite_hilbert(p, n, opts, rep);
    if (suite == "cartier" || suite == "inertia") {
        if (n < 1) throw UsageError("suite '" + suite + "' needs n >= 1");
    }
    if ((all && n >= 1) || suite == "cartier") suite_cartier(p, n, opts, rep);
    if ((all && n >= 1) || suite == "inertia") suite_inertia(p, n, opts, rep);
    if (all || suite == "twist") suite_twist(p, rep);
    return rep;
}

namespace {

void print_report(const VerificationReport &rep, const Options &o, std::ostream &out) {
    if (o.json) {
        json j;
        j["suite"] = rep.suite;
        j["pass"] = rep.pass();
        j["cells"] = json::array();
        for (const auto &c : rep.cells)
            j["cells"].push_back({{"params", c.params},
                                  {"check", c.check},
                                  {"pass", c.pass},
                                  {"message", c.message},
                                  {"elapsed_ms", c.elapsed_ms}});
        out << j.dump(2) << "\n";
        return;
    }
    for (const auto &c : rep.cells) {
        std::ostringstream ms;
        ms.imbue(std::locale::classic());
        ms << std::fixed << std::setprecision(1) << c.elapsed_ms;
        out << (c.pass ? "PASS" : "FAIL") << "  " << c.params << "  " << c.check << "  (" << ms.str() << " ms)";
        if (!c.message.empty()) out << "  " << c.message;
        out << "\n";
    }
    out << (rep.pass() ? "all checks passed" : "some checks FAILED") << "\n";
}

json semigroup_json(const NumericalSemigroup &S) {
    return {{"conductor", S.conductor()},     {"genus", S.genus()},
            {"multiplicity", S.multiplicity()}, {"min_generators", S.minimal_generators()},
            {"gaps", S.gaps()},               {"symmetric", numsemigroup::is_symmetric(S)}};
}

void print_semigroup(const NumericalSemigroup &S, const Options &o, std::ostream &out) {
    if (o.json) {
        out << semigroup_json(S).dump(2) << "\n";
        return;
    }
    out << "conductor: " << S.conductor() << "\n"
        << "genus: " << S.genus() << "\n"
        << "multiplicity: " << S.multiplicity() << "\n"
        << "min_generators: " << join(S.minimal_generators()) << "\n"
        << "gaps: " << join(S.gaps()) << "\n"
        << "symmetric: " << (numsemigroup::is_symmetric(S) ? "true" : "false") << "\n";
}

void print_curve(const curvemodel::CurveInvariants &c, const Options &o, std::ostream &out) {
    json j{{"p", c.p},
           {"n", c.n},
           {"genus", c.genus},
           {"conductor", c.conductor},
           {"deg_omega", c.deg_omega},
           {"deg_theta", c.deg_theta},
           {"h0_theta", c.h0_theta},
           {"proj_degree", c.proj_degree},
           {"spin_exponent", c.spin_exponent},
           {"order_Un", c.order_Un},
           {"flags", c.flags}};
    if (o.json) {
        out << j.dump(2) << "\n";
        return;
    }
    for (const auto &[k, v] : j.items()) {
        if (k == "flags") continue;
        out << k << ": " << v.dump() << "\n";
    }
    for (const auto &f : c.flags) out << "flag: " << f << "\n";
}

// "a^2=0, b^2=a, x": nilpotent/relation variables and free variables,
// in order; tails may use earlier names.
PresPtr build_ring(std::uint32_t p, const std::vector<std::string> &params, const std::string &vars) {
    Presentation::Builder b{exactalg::BaseField(p, params)};
    std::stringstream ss(vars);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto trimmed = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto z = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string{} : s.substr(a, z - a + 1);
        };
        item = trimmed(item);
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) {
            b.add_free(item);
            continue;
        }
        std::string lhs = trimmed(item.substr(0, eq)), rhs = trimmed(item.substr(eq + 1));
        auto caret = lhs.find('^');
        if (caret == std::string::npos) throw ParseError("relation '" + item + "' needs the form name^d = tail");
        std::string name = trimmed(lhs.substr(0, caret));
        long d = 0;
        try {
            d = std::stol(lhs.substr(caret + 1));
        } catch (const std::exception &) {
            throw ParseError("bad degree in '" + item + "'");
        }
        if (d < 1 || d > 0xFFFF) throw ParseError("degree out of range in '" + item + "'");
        if (rhs == "0")
            b.add_nilpotent(name, static_cast<std::uint32_t>(d));
        else
            b.add_relation(name, static_cast<std::uint32_t>(d), rhs);
    }
    return b.build();
}

int exit_for(const std::exception &e, std::ostream &err) {
    err << "error: " << e.what() << "\n";
    if (dynamic_cast<const ResourceError *>(&e)) return kResource;
    if (dynamic_cast<const UsageError *>(&e) || dynamic_cast<const ParseError *>(&e) ||
        dynamic_cast<const OutOfDomain *>(&e) || dynamic_cast<const NotNumericalSemigroup *>(&e) ||
        dynamic_cast<const Unsupported *>(&e) || dynamic_cast<const GluingHypothesis *>(&e) ||
        dynamic_cast<const PresentationMismatch *>(&e))
        return kUsage;
    return kFail;
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact computations for unipotent group schemes acting on curves"};
    app.require_subcommand(1);
    app.fallthrough();
    Options o;
    app.add_flag("--json", o.json, "emit JSON");
    app.add_option("--max-rank", o.max_rank, "rank budget for universal rings")->capture_default_str();
    app.add_option("--seed", o.seed, "seed for randomized checks")->capture_default_str();

    std::vector<std::int64_t> gens;
    auto *sg = app.add_subcommand("semigroup", "invariants of the semigroup generated by the arguments");
    sg->add_option("generators", gens)->required();

    std::uint32_t p = 0;
    int n = -1;
    auto *cv = app.add_subcommand("curve", "invariants of the curve X_{p,n}");
    cv->add_option("p", p)->required();
    cv->add_option("n", n)->required()->check(CLI::NonNegativeNumber);

    std::string suite = "all";
    auto *vf = app.add_subcommand("verify", "run verification suites");
    vf->add_option("p", p)->required();
    vf->add_option("n", n)->check(CLI::NonNegativeNumber);
    vf->add_option("--suite", suite)->capture_default_str();

    std::int64_t bound = 0;
    auto *sm = app.add_subcommand("search-max", "search for the largest semigroup passing the extension checks");
    sm->add_option("p", p)->required();
    sm->add_option("n", n)->required()->check(CLI::NonNegativeNumber);
    sm->add_option("--bound", bound, "search window (default 2c)");

    std::vector<std::string> exprs, params;
    std::string vars;
    bool additive = false;
    auto *sk = app.add_subcommand("skew", "arithmetic in R[F], R = F_p(params)[vars]/(relations)");
    sk->add_option("p", p)->required();
    sk->add_option("expr", exprs, "one skew polynomial, or two to multiply")->required()->expected(1, 2);
    sk->add_option("--vars", vars, "comma list: 'a^2=0, b^3=a, x' (x free)");
    sk->add_option("--param", params, "transcendental parameter of the base field");
    sk->add_flag("--additive", additive, "print as additive polynomials");

    unsigned level = 1;
    auto *tw = app.add_subcommand("twist", "twisted forms of Ga");
    auto *tf = tw->add_subcommand("form", "print the Russell form");
    tw->require_subcommand(1);
    tf->add_option("p", p)->required();
    tf->add_option("level", level)->required();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return kPass;
    } catch (const CLI::ParseError &e) {
        std::ostringstream dummy;
        app.exit(e, dummy, err);
        return kUsage;
    }

    try {
        if (*sg) {
            print_semigroup(NumericalSemigroup::from_generators(gens), o, out);
            return kPass;
        }
        if (*cv) {
            if (!exactalg::is_prime(p)) throw UsageError("p must be prime");
            print_curve(curvemodel::curve_invariants(p, static_cast<unsigned>(n)), o, out);
            return kPass;
        }
        if (*vf) {
            auto rep = run_suite(p, n, suite, o);
            print_report(rep, o, out);
            return rep.pass() ? kPass : kFail;
        }
        if (*sm) {
            if (!exactalg::is_prime(p)) throw UsageError("p must be prime");
            auto G = numsemigroup::gamma_pn(p, static_cast<unsigned>(n));
            if (bound == 0) bound = 2 * G.conductor();
            auto S = curvemodel::search_maximal_semigroup(p, static_cast<unsigned>(n), bound);
            auto cex = curvemodel::search_soundness_counterexample(p, static_cast<unsigned>(n), S);
            bool equal = S == G;
            if (o.json) {
                json j = semigroup_json(S);
                j["equals_gamma"] = equal;
                j["sound"] = !cex.has_value();
                if (cex) j["counterexample"] = *cex;
                out << j.dump(2) << "\n";
            } else {
                print_semigroup(S, o, out);
                out << "equals_gamma: " << (equal ? "true" : "false") << "\n";
                out << "sound: " << (cex ? "false (adding " + std::to_string(*cex) + " passes)" : "true") << "\n";
            }
            return equal && !cex ? kPass : kFail;
        }
        if (*sk) {
            if (!exactalg::is_prime(p)) throw UsageError("p must be prime");
            auto pres = build_ring(p, params, vars);
            auto a = SkewPoly::parse(pres, exprs[0]);
            json j;
            j["a"] = a.to_string(additive);
            if (exprs.size() == 2) {
                auto b = SkewPoly::parse(pres, exprs[1]);
                j["b"] = b.to_string(additive);
                j["product"] = (a * b).to_string(additive);
            } else {
                auto tri = [&](auto fn) -> json {
                    try {
                        return fn();
                    } catch (const Undecidable &) {
                        return "undecidable";
                    } catch (const Unsupported &) {
                        return "unsupported";
                    }
                };
                j["degree"] = a.degree();
                bool unit = false;
                j["unit"] = tri([&]() -> json { return unit = skewpoly::is_unit_skew(a); });
                j["nilpotent"] = tri([&]() -> json { return skewpoly::is_nilpotent_skew(a); });
                if (unit) j["inverse"] = skewpoly::skew_inverse(a).to_string(additive);
            }
            if (o.json) {
                out << j.dump(2) << "\n";
            } else {
                for (const auto &[k, v] : j.items()) out << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
            }
            return kPass;
        }
        if (*tf) {
            if (!exactalg::is_prime(p)) throw UsageError("p must be prime");
            auto f = twistforms::russell_form(p, level);
            if (o.json) {
                out << json{{"p", p}, {"level", level}, {"Phi", f.phi.to_string("u")}, {"Psi", f.psi.to_string("v")}}.dump(2)
                    << "\n";
            } else {
                out << "Phi: " << f.phi.to_string("u") << "\n" << "Psi: " << f.psi.to_string("v") << "\n";
            }
            return kPass;
        }
    } catch (const std::exception &e) {
        return exit_for(e, err);
    }
    return kUsage;
}

} // namespace uc::cli
