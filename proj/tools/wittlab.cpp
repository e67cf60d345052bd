// wittlab: exact seminorm calculus on truncated p-typical Witt vectors.
//
// Every value printed is exact: rationals in -log_p scale, elements in a
// canonical grammar that re-parses to the identical value. Identical
// invocations produce byte-identical output.

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "wittlab/wittlab.hpp"

namespace {

using nlohmann::json;
using namespace wittlab;

struct Options {
    long long p = 2;
    int N = 3;
    std::string E = "8";
    int K = 3;
    std::string gamma = "1";
    int jobs = 1;
    std::string format = "text";
    unsigned long long seed = 0;
    bool laurent = false;
};

RingConfig make_config(const Options& o) {
    RingConfig cfg;
    cfg.p = o.p;
    cfg.N = o.N;
    cfg.E = parse_rational(o.E);
    cfg.K = o.K;
    cfg.gamma = parse_rational(o.gamma);
    cfg.validate();
    return cfg;
}

std::string config_echo(const Options& o) {
    std::ostringstream s;
    s << "# wittlab p=" << o.p << " N=" << o.N << " E=" << o.E << " K=" << o.K
      << " gamma=" << o.gamma << " jobs=" << o.jobs << " seed=" << o.seed
      << " format=" << o.format;
    return s.str();
}

json config_json(const Options& o) {
    return json{{"p", o.p},         {"N", o.N},           {"E", o.E},
                {"K", o.K},         {"gamma", o.gamma},   {"jobs", o.jobs},
                {"seed", o.seed},   {"format", o.format}};
}

json lognorm_json(const LogNorm& n) {
    json j;
    if (n.is_zero()) {
        j["zero"] = true;
    } else {
        j["log"] = n.log_value().str();
        j["exact"] = n.is_exact();
    }
    j["display"] = n.str();
    return j;
}

SValue parse_svalue(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "infinity") return SValue::inf();
    return SValue::finite(parse_rational(s));
}

LogNorm parse_radius_log(const std::string& s) {
    if (s == "inf" || s == "+inf" || s == "infinity") return LogNorm::zero();
    return LogNorm::exact(parse_rational(s));
}

json witt_json(const WittElem& w) {
    return json{{"poly", to_string(w)}, {"teich", to_teich_string(w)}};
}

// Printing helpers shared by every subcommand: a config echo line, then the
// payload; JSON output wraps both in one object.
struct Emitter {
    const Options& o;
    json payload;

    void text_line(const std::string& line) { text += line + "\n"; }
    std::string text;

    void flush(std::ostream& os) const {
        if (o.format == "json") {
            json out{{"config", config_json(o)}};
            out.update(payload);
            os << out.dump(2) << "\n";
        } else {
            os << config_echo(o) << "\n" << text;
        }
    }
};

KPoly parse_kpoly(const std::string& s, const RingConfig& cfg) {
    KPoly f;
    std::stringstream ss(s);
    std::string piece;
    while (std::getline(ss, piece, ';'))
        f.coeffs.push_back(parse_perf(piece, cfg, true));
    return f;
}

std::string kpoly_str(const KPoly& f) {
    std::string out;
    for (std::size_t i = 0; i < f.coeffs.size(); ++i) {
        if (i) out += "; ";
        out += to_string(f.coeffs[i]);
    }
    return out;
}

int selftest_oracle(const Options& o, const RingConfig&, int samples, Emitter& em) {
    int failures = 0;
    for (long long p : {2LL, 3LL}) {
        Options op = o;
        op.p = p;
        op.N = 3;
        op.K = 1;
        RingConfig cfg = make_config(op);
        WittOracle oracle(cfg);
        std::mt19937_64 rng(o.seed + static_cast<unsigned long long>(p));
        SampleOpts so;
        so.max_terms = 3;
        so.denom_pow = 1;
        so.max_num = 3;
        for (int trial = 0; trial < samples; ++trial) {
            WittElem a = sample_witt(rng, cfg, so), b = sample_witt(rng, cfg, so);
            for (WittOp op2 : {WittOp::Add, WittOp::Sub, WittOp::Mul}) {
                WittElem r = op2 == WittOp::Add ? a + b : op2 == WittOp::Sub ? a - b : a * b;
                WittCoordElem lhs = bridge_to_coords(r);
                WittCoordElem rhs = oracle.apply(op2, bridge_to_coords(a), bridge_to_coords(b));
                for (int i = 0; i < cfg.N; ++i)
                    if (!(lhs.coords[static_cast<std::size_t>(i)] ==
                          rhs.coords[static_cast<std::size_t>(i)])) {
                        ++failures;
                        em.text_line("counterexample p=" + std::to_string(p) + " op=" +
                                     std::to_string(static_cast<int>(op2)) + " coord=" +
                                     std::to_string(i) + " a=" + to_string(a) + " b=" +
                                     to_string(b));
                    }
            }
        }
    }
    return failures;
}

int selftest_lambda(const Options& o, const RingConfig& cfg, int samples, Emitter& em) {
    std::mt19937_64 rng(o.seed + 17);
    SampleOpts so;
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        WittElem a = sample_witt(rng, cfg, so), b = sample_witt(rng, cfg, so);
        LogNorm la = lambda_norm(a), lb = lambda_norm(b), lab = lambda_norm(a * b);
        if (la.is_exact() && !la.is_infinite() && lb.is_exact() && !lb.is_infinite() &&
            lab.is_exact() && !lab.is_infinite() &&
            lab.log_value() != la.log_value() + lb.log_value()) {
            ++failures;
            em.text_line("lambda not multiplicative: a=" + to_string(a) + " b=" + to_string(b));
        }
    }
    return failures;
}

int selftest_metric(const Options& o, const RingConfig& cfg, int samples, Emitter& em) {
    std::mt19937_64 rng(o.seed + 23);
    SampleOpts so;
    so.denom_pow = std::min(cfg.K, 1);
    int failures = 0;
    for (int i = 0; i < samples; ++i) {
        PerfElem u = sample_center(rng, cfg, so), v = sample_center(rng, cfg, so);
        LogNorm direct = metric_d(u, v), closed = metric_d_closed_form(u, v);
        if (direct.is_exact() && closed.is_exact() && !direct.is_infinite() &&
            !closed.is_infinite() && direct.log_value() != closed.log_value()) {
            ++failures;
            em.text_line("metric mismatch: u=" + to_string(u) + " u'=" + to_string(v) +
                         " direct=" + direct.str() + " closed=" + closed.str());
        }
    }
    return failures;
}

int run(int argc, char** argv) {
    CLI::App app{"wittlab: exact seminorms on truncated p-typical Witt vectors"};
    app.require_subcommand(1);

    Options o;
    app.add_option("--p", o.p, "prime p")->envname("WITTLAB_P");
    app.add_option("--N", o.N, "p-adic precision (digits)")->envname("WITTLAB_N");
    app.add_option("--E", o.E, "t-adic truncation exponent (rational)")->envname("WITTLAB_E");
    app.add_option("--K", o.K, "exponent denominators divide p^K")->envname("WITTLAB_K");
    app.add_option("--gamma", o.gamma, "norm normalization |t| = p^-gamma")
        ->envname("WITTLAB_GAMMA");
    app.add_option("--jobs", o.jobs, "parallelism for candidate searches")
        ->envname("WITTLAB_JOBS");
    app.add_option("--format", o.format, "output format: text|json|tsv")
        ->envname("WITTLAB_FORMAT");
    app.add_option("--seed", o.seed, "seed for randomized suites")->envname("WITTLAB_SEED");
    app.add_flag("--laurent", o.laurent, "work in the Laurent (t-inverted) ring");

    std::string arg_a, arg_b, arg_s, arg_s2, arg_center, arg_pi, arg_poly;
    int samples = 200;
    int ksearch = 1;
    std::string esearch = "3";
    std::string suite = "oracle";

    auto* c_add = app.add_subcommand("add", "sum of two Witt elements");
    c_add->add_option("x", arg_a)->required();
    c_add->add_option("y", arg_b)->required();
    auto* c_mul = app.add_subcommand("mul", "product of two Witt elements");
    c_mul->add_option("x", arg_a)->required();
    c_mul->add_option("y", arg_b)->required();
    auto* c_teich = app.add_subcommand("teich", "Teichmueller lift of a residue element");
    c_teich->add_option("f", arg_a)->required();
    auto* c_expand = app.add_subcommand("expand", "Teichmueller digits of a Witt element");
    c_expand->add_option("x", arg_a)->required();
    auto* c_lambda = app.add_subcommand("lambda", "lifted Gauss norm lambda(alpha)");
    c_lambda->add_option("x", arg_a)->required();
    auto* c_biglam = app.add_subcommand("biglambda", "companion norm Lambda(alpha)");
    c_biglam->add_option("x", arg_a)->required();
    auto* c_stable = app.add_subcommand("stable", "stability of a Witt element");
    c_stable->add_option("x", arg_a)->required();

    auto add_primitive_opts = [&](CLI::App* c) {
        c->add_option("--center", arg_center, "center u of pi = p - [u]");
        c->add_option("--pi", arg_pi, "general primitive element");
    };
    auto* c_hnorm = app.add_subcommand("hnorm", "interpolated quotient seminorm H(alpha,pi,t)");
    add_primitive_opts(c_hnorm);
    c_hnorm->add_option("--s", arg_s, "radius parameter s (t = p^-s), rational or inf")
        ->required();
    c_hnorm->add_option("x", arg_a)->required();
    auto* c_present = app.add_subcommand("present", "stable presentation digits");
    add_primitive_opts(c_present);
    c_present->add_option("x", arg_a)->required();
    auto* c_vcurve = app.add_subcommand("vcurve", "norm profile v_x(s) as a PWL curve");
    add_primitive_opts(c_vcurve);
    c_vcurve->add_option("x", arg_a)->required();

    auto* c_metric = app.add_subcommand("metric", "pseudometric d(u,u'), direct and closed form");
    c_metric->add_option("u", arg_a)->required();
    c_metric->add_option("u2", arg_b)->required();
    auto* c_dom = app.add_subcommand("dominates", "domination of fibre points");
    c_dom->add_option("u1", arg_a)->required();
    c_dom->add_option("s1", arg_s)->required();
    c_dom->add_option("u2", arg_b)->required();
    c_dom->add_option("s2", arg_s2)->required();
    auto* c_join = app.add_subcommand("join", "least upper bound in the domination tree");
    c_join->add_option("u1", arg_a)->required();
    c_join->add_option("s1", arg_s)->required();
    c_join->add_option("u2", arg_b)->required();
    c_join->add_option("s2", arg_s2)->required();
    auto* c_classify = app.add_subcommand("classify", "Berkovich-style type of a fibre point");
    c_classify->add_option("u", arg_a)->required();
    c_classify->add_option("s", arg_s)->required();
    auto* c_homotopy = app.add_subcommand("homotopy", "H(beta_{u,s}, s2)");
    c_homotopy->add_option("u", arg_a)->required();
    c_homotopy->add_option("s", arg_s)->required();
    c_homotopy->add_option("s2", arg_s2)->required();
    auto* c_mu = app.add_subcommand("murestrict", "mu(beta)(f) = beta([f])");
    c_mu->add_option("u", arg_a)->required();
    c_mu->add_option("s", arg_s)->required();
    c_mu->add_option("f", arg_b)->required();

    auto* c_newton = app.add_subcommand("newton", "Newton polygon of a Witt element");
    c_newton->add_option("x", arg_a)->required();
    auto* c_factor = app.add_subcommand("factor", "factor into (p - [u_i]) times a stable unit");
    c_factor->add_option("x", arg_a)->required();
    auto* c_roots = app.add_subcommand("roots-bruteforce", "exhaustive lattice root search");
    c_roots->add_option("x", arg_a)->required();
    c_roots->add_option("--ksearch", ksearch, "search lattice denominator power");
    c_roots->add_option("--esearch", esearch, "search lattice exponent bound");

    auto* c_deval = app.add_subcommand("disc-eval", "Gauss point evaluation on K[T]");
    c_deval->add_option("z", arg_a)->required();
    c_deval->add_option("rlog", arg_s, "radius in log scale, rational or inf")->required();
    c_deval->add_option("poly", arg_poly, "coefficients c0; c1; ... of sum c_i T^i")->required();
    auto* c_dhom = app.add_subcommand("disc-homotopy", "Hasse-derivative homotopy on K[T]");
    c_dhom->add_option("z", arg_a)->required();
    c_dhom->add_option("rlog", arg_s)->required();
    c_dhom->add_option("tlog", arg_s2)->required();
    c_dhom->add_option("poly", arg_poly, "optional: also evaluate the value form");
    auto* c_ddom = app.add_subcommand("disc-dominates", "domination of disc points");
    c_ddom->add_option("z1", arg_a)->required();
    c_ddom->add_option("r1", arg_s)->required();
    c_ddom->add_option("z2", arg_b)->required();
    c_ddom->add_option("r2", arg_s2)->required();
    auto* c_djoin = app.add_subcommand("disc-join", "join of disc points");
    c_djoin->add_option("z1", arg_a)->required();
    c_djoin->add_option("r1", arg_s)->required();
    c_djoin->add_option("z2", arg_b)->required();
    c_djoin->add_option("r2", arg_s2)->required();
    auto* c_dclass = app.add_subcommand("disc-classify", "type of a disc point");
    c_dclass->add_option("z", arg_a)->required();
    c_dclass->add_option("r", arg_s)->required();

    auto* c_bridge = app.add_subcommand("bridge-check", "oracle equivalence of the two arithmetics");
    c_bridge->add_option("--samples", samples, "number of random pairs");
    auto* c_self = app.add_subcommand("selftest", "randomized property suites");
    c_self->add_option("--suite", suite, "oracle|lambda|metric|all");
    c_self->add_option("--samples", samples, "samples per suite");

    CLI11_PARSE(app, argc, argv);

    RingConfig cfg = make_config(o);
    Emitter em{o, json{}, ""};

    auto primitive_of = [&]() -> PrimitiveElem {
        if (!arg_center.empty())
            return PrimitiveElem::from_center(parse_perf(arg_center, cfg, o.laurent));
        if (!arg_pi.empty()) return PrimitiveElem::make(parse_witt(arg_pi, cfg, -1, o.laurent));
        throw ParseError("one of --center or --pi is required");
    };
    auto emit_lognorm = [&](const std::string& name, const LogNorm& n) {
        em.text_line(name + " = " + n.str());
        em.payload[name] = lognorm_json(n);
    };
    auto emit_witt = [&](const std::string& name, const WittElem& w) {
        em.text_line(name + " = " + to_string(w));
        em.text_line(name + " (teich) = " + to_teich_string(w));
        em.payload[name] = witt_json(w);
    };
    auto emit_point = [&](const std::string& name, const PerfElem& u, const SValue& s) {
        em.text_line(name + " = (center " + to_string(u) + ", s = " + s.str() + ")");
        em.payload[name] = json{{"center", to_string(u)}, {"s", s.str()}};
    };

    if (*c_add || *c_mul) {
        WittElem x = parse_witt(arg_a, cfg, -1, o.laurent);
        WittElem y = parse_witt(arg_b, cfg, -1, o.laurent);
        emit_witt("result", *c_add ? x + y : x * y);
    } else if (*c_teich) {
        emit_witt("result", teich(parse_perf(arg_a, cfg, o.laurent)));
    } else if (*c_expand) {
        TeichDigits d = teich_expand(parse_witt(arg_a, cfg, -1, o.laurent));
        json digits = json::array();
        for (std::size_t i = 0; i < d.size(); ++i) {
            em.text_line("digit " + std::to_string(i) + " = " + to_string(d[i]));
            digits.push_back(to_string(d[i]));
        }
        em.payload["digits"] = digits;
    } else if (*c_lambda) {
        emit_lognorm("lambda", lambda_norm(parse_witt(arg_a, cfg, -1, o.laurent)));
    } else if (*c_biglam) {
        emit_lognorm("biglambda", capital_lambda_norm(parse_witt(arg_a, cfg, -1, o.laurent)));
    } else if (*c_stable) {
        bool s = is_stable(parse_witt(arg_a, cfg, -1, o.laurent));
        em.text_line(std::string("stable = ") + (s ? "true" : "false"));
        em.payload["stable"] = s;
    } else if (*c_hnorm) {
        emit_lognorm("hnorm", h_norm(primitive_of(), parse_svalue(arg_s),
                                     parse_witt(arg_a, cfg, -1, o.laurent)));
    } else if (*c_present) {
        StablePresentation pres =
            stable_presentation(parse_witt(arg_a, cfg, -1, o.laurent), primitive_of());
        json digits = json::array();
        for (std::size_t i = 0; i < pres.digits.size(); ++i) {
            em.text_line("digit " + std::to_string(i) + " = " + to_string(pres.digits[i]));
            digits.push_back(witt_json(pres.digits[i]));
        }
        em.text_line(std::string("tail = ") +
                     (pres.tail_negligible ? "negligible beyond p^-(" + pres.tail_floor.str() + ")"
                                           : "unresolved"));
        em.payload["digits"] = digits;
        em.payload["tail_negligible"] = pres.tail_negligible;
        em.payload["tail_floor"] = pres.tail_floor.str();
    } else if (*c_vcurve) {
        PwlCurve curve = v_breakpoints(primitive_of(), parse_witt(arg_a, cfg, -1, o.laurent));
        if (o.format == "tsv") {
            std::cout << curve.to_tsv();
            return 0;
        }
        json pieces = json::array();
        for (const auto& piece : curve.pieces()) {
            em.text_line(piece.s_from.str() + "\t" + piece.value_from.str() + "\t" +
                         std::to_string(piece.slope));
            pieces.push_back(json{{"s", piece.s_from.str()},
                                  {"value", piece.value_from.str()},
                                  {"slope", piece.slope}});
        }
        em.payload["curve"] = pieces;
    } else if (*c_metric) {
        PerfElem u = parse_perf(arg_a, cfg, o.laurent), v = parse_perf(arg_b, cfg, o.laurent);
        emit_lognorm("direct", metric_d(u, v));
        emit_lognorm("closed_form", metric_d_closed_form(u, v));
    } else if (*c_dom) {
        FibrePoint P(parse_perf(arg_a, cfg, o.laurent), parse_svalue(arg_s));
        FibrePoint Q(parse_perf(arg_b, cfg, o.laurent), parse_svalue(arg_s2));
        bool d = dominates(P, Q);
        em.text_line(std::string("dominates = ") + (d ? "true" : "false"));
        em.payload["dominates"] = d;
    } else if (*c_join) {
        FibrePoint P(parse_perf(arg_a, cfg, o.laurent), parse_svalue(arg_s));
        FibrePoint Q(parse_perf(arg_b, cfg, o.laurent), parse_svalue(arg_s2));
        FibrePoint J = tree_join(P, Q);
        emit_point("join", J.center(), J.s());
    } else if (*c_classify) {
        FibrePoint P(parse_perf(arg_a, cfg, o.laurent), parse_svalue(arg_s));
        auto [type, rd] = classify(P);
        em.text_line("type = " + to_string(type));
        em.text_line("residue-field = " + rd.residue_kind_str());
        em.text_line("value-group-rank-increment = " +
                     std::to_string(rd.value_group_rank_increment));
        em.payload["type"] = to_string(type);
        em.payload["residue_field"] = rd.residue_kind_str();
        em.payload["value_group_rank_increment"] = rd.value_group_rank_increment;
    } else if (*c_homotopy) {
        FibrePoint P(parse_perf(arg_a, cfg, o.laurent), parse_svalue(arg_s));
        FibrePoint H = homotopy(P, parse_svalue(arg_s2));
        emit_point("homotopy", H.center(), H.s());
    } else if (*c_mu) {
        FibrePoint P(parse_perf(arg_a, cfg, o.laurent), parse_svalue(arg_s));
        emit_lognorm("murestrict", mu_restrict(P, parse_perf(arg_b, cfg, o.laurent)));
    } else if (*c_newton) {
        NewtonPolygon poly = newton_polygon(parse_witt(arg_a, cfg, -1, o.laurent));
        if (o.format == "tsv") {
            std::cout << poly.to_tsv();
            return 0;
        }
        json segs = json::array();
        for (const auto& seg : poly.segments) {
            em.text_line("slope " + seg.slope.str() + "  length " + std::to_string(seg.length));
            segs.push_back(json{{"slope", seg.slope.str()}, {"length", seg.length}});
        }
        if (poly.empty()) em.text_line("(empty polygon: stable unit)");
        em.payload["segments"] = segs;
    } else if (*c_factor) {
        FactorResult f = factor(parse_witt(arg_a, cfg, -1, o.laurent));
        json roots = json::array();
        for (const auto& r : f.roots) {
            em.text_line("root: " + to_string(r));
            roots.push_back(to_string(r));
        }
        emit_witt("unit", f.unit);
        emit_lognorm("residual", f.residual);
        em.payload["roots"] = roots;
    } else if (*c_roots) {
        RootSearchLattice lat;
        lat.K_search = ksearch;
        lat.E_search = parse_rational(esearch);
        std::vector<PerfElem> roots =
            brute_force_roots(parse_witt(arg_a, cfg, -1, o.laurent), lat, o.jobs);
        json jr = json::array();
        for (const auto& r : roots) {
            em.text_line("root: " + to_string(r));
            jr.push_back(to_string(r));
        }
        if (roots.empty()) em.text_line("(no roots on the lattice)");
        em.payload["roots"] = jr;
    } else if (*c_deval) {
        DiscPoint P(parse_perf(arg_a, cfg, o.laurent), parse_radius_log(arg_s));
        emit_lognorm("value", eval_disc_point(P, parse_kpoly(arg_poly, cfg)));
    } else if (*c_dhom) {
        DiscPoint P(parse_perf(arg_a, cfg, o.laurent), parse_radius_log(arg_s));
        LogNorm t = parse_radius_log(arg_s2);
        DiscPoint H = hasse_homotopy_point(P, t);
        em.text_line("point = (center " + to_string(H.center) + ", rlog = " +
                     (H.radius.is_infinite() ? std::string("inf") : H.radius.log_value().str()) +
                     ")");
        em.payload["point"] = json{
            {"center", to_string(H.center)},
            {"rlog", H.radius.is_infinite() ? std::string("inf") : H.radius.log_value().str()}};
        if (!arg_poly.empty()) {
            KPoly f = parse_kpoly(arg_poly, cfg);
            emit_lognorm("value_form", hasse_homotopy(P, t, f));
            emit_lognorm("point_form", eval_disc_point(H, f));
        }
    } else if (*c_ddom) {
        DiscPoint P(parse_perf(arg_a, cfg, o.laurent), parse_radius_log(arg_s));
        DiscPoint Q(parse_perf(arg_b, cfg, o.laurent), parse_radius_log(arg_s2));
        bool d = dominates_disc(P, Q);
        em.text_line(std::string("dominates = ") + (d ? "true" : "false"));
        em.payload["dominates"] = d;
    } else if (*c_djoin) {
        DiscPoint P(parse_perf(arg_a, cfg, o.laurent), parse_radius_log(arg_s));
        DiscPoint Q(parse_perf(arg_b, cfg, o.laurent), parse_radius_log(arg_s2));
        DiscPoint J = disc_join(P, Q);
        em.text_line("join = (center " + to_string(J.center) + ", rlog = " +
                     (J.radius.is_infinite() ? std::string("inf") : J.radius.log_value().str()) +
                     ")");
        em.payload["join"] = json{
            {"center", to_string(J.center)},
            {"rlog", J.radius.is_infinite() ? std::string("inf") : J.radius.log_value().str()}};
    } else if (*c_dclass) {
        DiscPoint P(parse_perf(arg_a, cfg, o.laurent), parse_radius_log(arg_s));
        auto [type, rd] = classify_disc(P);
        em.text_line("type = " + to_string(type));
        em.text_line("residue-field = " + rd.residue_kind_str());
        em.payload["type"] = to_string(type);
        em.payload["residue_field"] = rd.residue_kind_str();
    } else if (*c_bridge) {
        int failures = selftest_oracle(o, cfg, samples, em);
        em.text_line(failures == 0 ? "bridge-check: pass" : "bridge-check: FAIL");
        em.payload["pass"] = failures == 0;
        em.flush(std::cout);
        return failures == 0 ? 0 : 1;
    } else if (*c_self) {
        int failures = 0;
        if (suite == "oracle" || suite == "all") failures += selftest_oracle(o, cfg, samples, em);
        if (suite == "lambda" || suite == "all") failures += selftest_lambda(o, cfg, samples, em);
        if (suite == "metric" || suite == "all") failures += selftest_metric(o, cfg, samples, em);
        em.text_line(failures == 0 ? "selftest: pass" : "selftest: FAIL");
        em.payload["pass"] = failures == 0;
        em.flush(std::cout);
        return failures == 0 ? 0 : 1;
    }

    em.flush(std::cout);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const wittlab::Error& e) {
        std::cerr << "wittlab: " << e.what() << "\n";
        return static_cast<int>(e.error_class());
    } catch (const std::exception& e) {
        std::cerr << "wittlab: internal error: " << e.what() << "\n";
        return 1;
    }
}
