#ifndef FGCALC_CLI_HPP
#define FGCALC_CLI_HPP

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fgcalc/divisor.hpp"
#include "fgcalc/fgl.hpp"
#include "fgcalc/hopf_io.hpp"
#include "fgcalc/parse.hpp"
#include "fgcalc/print.hpp"
#include "fgcalc/residue.hpp"
#include "fgcalc/ring.hpp"
#include "fgcalc/series.hpp"
#include "fgcalc/weierstrass.hpp"

namespace fgcalc::cli {

// Exit codes: 0 success, 2 parse error, 3 precondition violation,
// 4 verification failure, 5 unsupported ring.
inline int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError:
            return 2;
        case ErrorCode::AxiomViolation:
        case ErrorCode::NotAdditive:
        case ErrorCode::AntipodeVerificationFailed:
            return 4;
        case ErrorCode::UnsupportedRing:
        case ErrorCode::RequiresRationalCoefficients:
            return 5;
        case ErrorCode::InternalError:
            return 1;
        default:
            return 3;  // precondition violations
    }
}

struct Options {
    std::string ring_text = "Z";
    unsigned order = 8;
    std::string format = "text";
    std::string vars = "x,y";
};

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

// Renders one command result in text or as the stable JSON schema
// {command, inputs, result, order, ring}.
struct Emitter {
    std::string command;
    std::string format;
    unsigned order = 0;
    std::string ring;
    nlohmann::json inputs = nlohmann::json::object();
    std::ostream& out;

    void input(const std::string& key, const std::string& value) { inputs[key] = value; }

    void emit(const std::string& text, const nlohmann::json& result) const {
        if (format == "json") {
            nlohmann::json doc{{"command", command},
                               {"inputs", inputs},
                               {"result", result},
                               {"order", order},
                               {"ring", ring}};
            out << doc.dump(2) << "\n";
        } else {
            out << text << "\n";
        }
    }
};

inline Divisor divisor_from_poly_text(const std::string& text, const RingPtr& ring) {
    TruncSeries p = parse_series(text, ring, {"t"}, 64);
    unsigned deg = 0;
    for (const auto& [e, c] : p.terms()) deg = std::max(deg, e[0]);
    std::vector<RingElem> coeffs(deg + 1, RingElem::zero(ring));
    for (const auto& [e, c] : p.terms()) coeffs[deg - e[0]] = c;
    if (coeffs.empty() || !(coeffs[0] == RingElem::one(ring)))
        raise(ErrorCode::NotNilpotentRoot, "divisor polynomial must be monic in t");
    return Divisor::from_coefficients(ring, std::move(coeffs));
}

inline std::vector<RingElem> parse_points(const std::string& text, const RingPtr& ring) {
    std::vector<RingElem> pts;
    if (text.empty()) return pts;
    for (const auto& piece : split_list(text)) pts.push_back(parse_elem(piece, ring));
    return pts;
}

inline FGL load_fgl(const Options& opt, const std::string& fgl_text) {
    RingPtr ring = parse_ring(opt.ring_text);
    auto vars = split_list(opt.vars);
    if (vars.size() != 2) raise(ErrorCode::VariableMismatch, "--vars must name two variables");
    TruncSeries F = parse_series(fgl_text, ring, vars, opt.order);
    return fgl_validate(F, opt.order);
}

inline std::string regularity_text(Regularity r) {
    switch (r) {
        case Regularity::Regular: return "regular";
        case Regularity::NotRegular: return "not regular";
        case Regularity::Unknown: return "unknown";
    }
    return "unknown";
}

}  // namespace detail

// Runs one command line (without argv[0]); output goes to `out`, error text
// to `err`.  Returns the process exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"fgcalc - exact arithmetic for formal group laws, divisors and residues"};
    app.require_subcommand(1);

    Options opt;
    std::string fgl_text, target_text, phi_text, coord_text, series_text, modulus_text;
    std::string elem_text, points_text, d1_text, d2_text, d_text, file_path, vector_text;
    std::string laurent_var = "x";
    long nval = 0;
    unsigned kval = 0, nmax = 1;
    unsigned long prime = 2;
    bool universal = false;

    auto add_common = [&](CLI::App* cmd, bool with_ring = true) {
        if (with_ring) cmd->add_option("--ring", opt.ring_text, "ring expression");
        cmd->add_option("--order", opt.order, "truncation order (>= 2)")->check(CLI::Range(2u, 1000u));
        cmd->add_option("--format", opt.format, "text | json")
            ->check(CLI::IsMember({"text", "json"}));
    };

    struct Cmd {
        CLI::App* app;
        std::function<void(detail::Emitter&)> run;
    };
    std::vector<Cmd> cmds;
    auto make = [&](const std::string& name, const std::string& desc, bool with_ring,
                    std::function<void(detail::Emitter&)> fn) {
        CLI::App* c = app.add_subcommand(name, desc);
        add_common(c, with_ring);
        cmds.push_back({c, std::move(fn)});
        return c;
    };

    // ---- fgl ----
    make("fgl-check", "validate the formal-group-law axioms", true, [&](detail::Emitter& em) {
        em.input("fgl", fgl_text);
        FGL F = detail::load_fgl(opt, fgl_text);
        em.emit("valid to order " + std::to_string(F.order()),
                {{"valid", true}, {"order", F.order()}});
    })->add_option("--fgl", fgl_text, "bivariate series")->required();

    make("fgl-universal", "the universal group law at the given order", false,
         [&](detail::Emitter& em) {
             auto u = universal_fgl(opt.order);
             em.ring = print_ring_desc(*u.ring);
             em.emit("ring = " + print_ring_desc(*u.ring) + "\nF = " + print_series(u.F),
                     {{"ring", print_ring_desc(*u.ring)}, {"F", print_series(u.F)}});
         });

    make("fgl-relations", "associativity relations of the universal law", false,
         [&](detail::Emitter& em) {
             auto u = universal_fgl(opt.order);
             em.ring = print_ring_desc(*u.ring);
             std::string text;
             nlohmann::json arr = nlohmann::json::array();
             for (const auto& [e, c] : u.relations) {
                 std::string exp = "(" + std::to_string(e[0]) + "," + std::to_string(e[1]) + "," +
                                   std::to_string(e[2]) + ")";
                 if (!text.empty()) text += "\n";
                 text += exp + ": " + print_ring_elem(c);
                 arr.push_back({{"exponent", {e[0], e[1], e[2]}}, {"value", print_ring_elem(c)}});
             }
             em.emit(text.empty() ? "no relations at this order" : text, arr);
         });

    {
        CLI::App* c = make("fgl-nseries", "the [n]-series of a group law", true,
                           [&](detail::Emitter& em) {
                               em.input("n", std::to_string(nval));
                               TruncSeries result = [&] {
                                   if (universal) {
                                       auto u = universal_fgl(opt.order);
                                       em.ring = print_ring_desc(*u.ring);
                                       return n_series(u.F, nval);
                                   }
                                   em.input("fgl", fgl_text);
                                   return n_series(detail::load_fgl(opt, fgl_text), nval);
                               }();
                               em.emit(print_series(result), print_series(result));
                           });
        c->add_option("--n", nval, "multiplier")->required();
        c->add_flag("--universal", universal, "use the universal law");
        c->add_option("--fgl", fgl_text, "bivariate series");
    }

    {
        CLI::App* c = make("fgl-conjugate", "transport a law along a coordinate change", true,
                           [&](detail::Emitter& em) {
                               em.input("fgl", fgl_text);
                               em.input("coord", coord_text);
                               FGL F = detail::load_fgl(opt, fgl_text);
                               TruncSeries f =
                                   parse_series(coord_text, F.ring(), {F.var_x()}, opt.order);
                               FGL conj = fgl_conjugate(F, f);
                               em.emit(print_series(conj.series()), print_series(conj.series()));
                           });
        c->add_option("--fgl", fgl_text)->required();
        c->add_option("--coord", coord_text, "invertible coordinate, f(0)=0, f'(0) a unit")->required();
    }

    {
        CLI::App* c = make("fgl-hom-check", "is phi a homomorphism F -> G?", true,
                           [&](detail::Emitter& em) {
                               em.input("fgl", fgl_text);
                               em.input("target", target_text);
                               em.input("phi", phi_text);
                               FGL F = detail::load_fgl(opt, fgl_text);
                               FGL G = detail::load_fgl(opt, target_text);
                               TruncSeries phi =
                                   parse_series(phi_text, F.ring(), {F.var_x()}, opt.order);
                               bool ok = hom_check(F, G, phi);
                               em.emit(ok ? "true" : "false", ok);
                           });
        c->add_option("--fgl", fgl_text)->required();
        c->add_option("--target", target_text)->required();
        c->add_option("--phi", phi_text)->required();
    }

    {
        CLI::App* c = make("fgl-invdiff", "H(s) with invariant differential dx/H(x)", true,
                           [&](detail::Emitter& em) {
                               TruncSeries H = [&] {
                                   if (universal) {
                                       auto u = universal_fgl(opt.order);
                                       em.ring = print_ring_desc(*u.ring);
                                       return invariant_differential(u.F);
                                   }
                                   em.input("fgl", fgl_text);
                                   return invariant_differential(detail::load_fgl(opt, fgl_text));
                               }();
                               em.emit(print_series(H), print_series(H));
                           });
        c->add_flag("--universal", universal);
        c->add_option("--fgl", fgl_text);
    }

    make("fgl-log", "the logarithm over a Q-algebra", true, [&](detail::Emitter& em) {
        em.input("fgl", fgl_text);
        TruncSeries lg = fgl_log(detail::load_fgl(opt, fgl_text));
        em.emit(print_series(lg), print_series(lg));
    })->add_option("--fgl", fgl_text)->required();

    {
        CLI::App* c = make("fgl-height", "height of the [p]-series", true, [&](detail::Emitter& em) {
            em.input("fgl", fgl_text);
            em.input("p", std::to_string(prime));
            HeightResult h = height(detail::load_fgl(opt, fgl_text), prime);
            if (h.infinite_up_to_order) {
                em.emit("infinite up to order " + std::to_string(h.checked_order),
                        {{"infinite_up_to_order", h.checked_order}});
            } else {
                std::string text = "height " + std::to_string(h.height) +
                                   (h.unit_flag ? " (unit coefficient)" : " (non-unit coefficient)");
                em.emit(text, {{"height", h.height}, {"unit", h.unit_flag}});
            }
        });
        c->add_option("--fgl", fgl_text)->required();
        c->add_option("--p", prime, "prime")->required();
    }

    {
        CLI::App* c = make("fgl-landweber", "the regularity sequence u_0 = p, u_1, ...", true,
                           [&](detail::Emitter& em) {
                               em.input("fgl", fgl_text);
                               em.input("p", std::to_string(prime));
                               LandweberResult res =
                                   landweber_sequence(detail::load_fgl(opt, fgl_text), prime, nmax);
                               std::string text;
                               nlohmann::json arr = nlohmann::json::array();
                               for (std::size_t i = 0; i < res.entries.size(); ++i) {
                                   const auto& e = res.entries[i];
                                   if (!text.empty()) text += "\n";
                                   text += "u_" + std::to_string(i) + " = " + print_ring_elem(e.u) +
                                           " (" + detail::regularity_text(e.flag) + ")";
                                   arr.push_back({{"u", print_ring_elem(e.u)},
                                                  {"regular", detail::regularity_text(e.flag)}});
                               }
                               if (res.quotient_collapsed)
                                   text += "\nquotient collapsed to the zero ring";
                               em.emit(text, {{"entries", arr},
                                              {"quotient_collapsed", res.quotient_collapsed}});
                           });
        c->add_option("--fgl", fgl_text)->required();
        c->add_option("--p", prime)->required();
        c->add_option("--nmax", nmax, "number of u_n beyond u_0");
    }

    {
        CLI::App* c = make("fgl-frobenius-decompose", "write f = v(vars^p) when df = 0", true,
                           [&](detail::Emitter& em) {
                               em.input("series", series_text);
                               em.input("p", std::to_string(prime));
                               RingPtr ring = parse_ring(opt.ring_text);
                               auto vars = detail::split_list(opt.vars);
                               TruncSeries f = parse_series(series_text, ring, vars, opt.order);
                               TruncSeries v = frobenius_decompose(f, prime);
                               em.emit(print_series(v), print_series(v));
                           });
        c->add_option("--series", series_text)->required();
        c->add_option("--p", prime)->required();
        c->add_option("--vars", opt.vars, "comma-separated variables (default x,y)");
    }

    {
        CLI::App* c = make("fgl-additive-decompose", "coefficients a_k with f = sum a_k x^{p^k}",
                           true, [&](detail::Emitter& em) {
                               em.input("series", series_text);
                               em.input("p", std::to_string(prime));
                               RingPtr ring = parse_ring(opt.ring_text);
                               TruncSeries f = parse_series(series_text, ring, {"x"}, opt.order);
                               auto coeffs = additive_decompose(f, prime);
                               std::string text = "(";
                               nlohmann::json arr = nlohmann::json::array();
                               for (std::size_t i = 0; i < coeffs.size(); ++i) {
                                   if (i) text += ", ";
                                   text += print_ring_elem(coeffs[i]);
                                   arr.push_back(print_ring_elem(coeffs[i]));
                               }
                               text += ")";
                               em.emit(text, arr);
                           });
        c->add_option("--series", series_text)->required();
        c->add_option("--p", prime)->required();
    }

    // ---- weierstrass ----
    make("ws-degree", "Weierstrass degree of a single-variable series", true,
         [&](detail::Emitter& em) {
             em.input("series", series_text);
             RingPtr ring = parse_ring(opt.ring_text);
             TruncSeries g = parse_series(series_text, ring, {"x"}, opt.order);
             WeierstrassReport rep = weierstrass_degree(g);
             em.emit("degree " + std::to_string(rep.degree), {{"degree", rep.degree}});
         })->add_option("--series", series_text)->required();

    make("ws-factor", "g = h u with h a Weierstrass polynomial, u a unit", true,
         [&](detail::Emitter& em) {
             em.input("series", series_text);
             RingPtr ring = parse_ring(opt.ring_text);
             TruncSeries g = parse_series(series_text, ring, {"x"}, opt.order);
             WeierstrassFactorization wf = weierstrass_factor(g);
             std::string h = print_poly(wf.h, "x"), u = print_series(wf.u);
             em.emit("h = " + h + "\nu = " + u, {{"h", h}, {"u", u}});
         })->add_option("--series", series_text)->required();

    {
        CLI::App* c = make("ws-reduce", "canonical representative modulo a Weierstrass series",
                           true, [&](detail::Emitter& em) {
                               em.input("series", series_text);
                               em.input("modulus", modulus_text);
                               RingPtr ring = parse_ring(opt.ring_text);
                               TruncSeries f = parse_series(series_text, ring, {"x"}, opt.order);
                               TruncSeries g = parse_series(modulus_text, ring, {"x"}, opt.order);
                               auto red = weierstrass_reduce(f, g);
                               std::string text = print_poly(red, "x");
                               em.emit(text, text);
                           });
        c->add_option("--series", series_text)->required();
        c->add_option("--modulus", modulus_text)->required();
    }

    // ---- divisors ----
    make("div-frompoints", "divisor of a list of nilpotent points", true,
         [&](detail::Emitter& em) {
             em.input("points", points_text);
             RingPtr ring = parse_ring(opt.ring_text);
             auto D = divisor_from_points(ring, detail::parse_points(points_text, ring));
             std::string text = print_poly(D.coefficients(), "t");
             em.emit(text, text);
         })->add_option("--points", points_text, "comma-separated nilpotent elements");

    {
        CLI::App* c = make("div-sum", "sum of divisors (polynomial product)", true,
                           [&](detail::Emitter& em) {
                               em.input("d1", d1_text);
                               em.input("d2", d2_text);
                               RingPtr ring = parse_ring(opt.ring_text);
                               auto D = detail::divisor_from_poly_text(d1_text, ring);
                               auto E = detail::divisor_from_poly_text(d2_text, ring);
                               std::string text = print_poly(divisor_sum(D, E).coefficients(), "t");
                               em.emit(text, text);
                           });
        c->add_option("--d1", d1_text, "monic polynomial in t")->required();
        c->add_option("--d2", d2_text, "monic polynomial in t")->required();
    }

    {
        CLI::App* c = make("div-star", "translation product under a group law", true,
                           [&](detail::Emitter& em) {
                               em.input("fgl", fgl_text);
                               em.input("d1", d1_text);
                               em.input("d2", d2_text);
                               FGL F = detail::load_fgl(opt, fgl_text);
                               auto D = detail::divisor_from_poly_text(d1_text, F.ring());
                               auto E = detail::divisor_from_poly_text(d2_text, F.ring());
                               std::string text =
                                   print_poly(divisor_star(F, D, E).coefficients(), "t");
                               em.emit(text, text);
                           });
        c->add_option("--fgl", fgl_text)->required();
        c->add_option("--d1", d1_text)->required();
        c->add_option("--d2", d2_text)->required();
    }

    {
        CLI::App* c = make("div-lambda", "lambda^k of a split divisor", true,
                           [&](detail::Emitter& em) {
                               em.input("fgl", fgl_text);
                               em.input("points", points_text);
                               em.input("k", std::to_string(kval));
                               FGL F = detail::load_fgl(opt, fgl_text);
                               auto roots = detail::parse_points(points_text, F.ring());
                               std::string text =
                                   print_poly(divisor_lambda(F, roots, kval).coefficients(), "t");
                               em.emit(text, text);
                           });
        c->add_option("--fgl", fgl_text)->required();
        c->add_option("--points", points_text);
        c->add_option("--k", kval)->required();
    }

    make("div-chern", "Chern classes: the non-leading coefficients", true,
         [&](detail::Emitter& em) {
             em.input("d", d_text);
             RingPtr ring = parse_ring(opt.ring_text);
             auto cs = chern_coefficients(detail::divisor_from_poly_text(d_text, ring));
             std::string text = "(";
             nlohmann::json arr = nlohmann::json::array();
             for (std::size_t i = 0; i < cs.size(); ++i) {
                 if (i) text += ", ";
                 text += print_ring_elem(cs[i]);
                 arr.push_back(print_ring_elem(cs[i]));
             }
             text += ")";
             em.emit(text, arr);
         })->add_option("--d", d_text, "monic polynomial in t")->required();

    // ---- meromorphic / residues ----
    auto parse_laurent_input = [&](const std::string& text) {
        RingPtr ring = parse_ring(opt.ring_text);
        return parse_laurent(text, ring, laurent_var, static_cast<long>(opt.order));
    };

    {
        CLI::App* c = make("mero-deg", "degree of an invertible meromorphic function", true,
                           [&](detail::Emitter& em) {
                               em.input("series", series_text);
                               MeroDegree d = mero_degree(parse_laurent_input(series_text));
                               if (auto* k = std::get_if<long>(&d)) {
                                   em.emit(std::to_string(*k), *k);
                               } else {
                                   auto& split = std::get<MeroDegreeSplit>(d);
                                   std::string text;
                                   nlohmann::json arr = nlohmann::json::array();
                                   for (const auto& comp : split.components) {
                                       if (!text.empty()) text += "\n";
                                       text += "component " + print_ring_desc(*comp.component) +
                                               " (idempotent " + print_ring_elem(comp.idempotent) +
                                               "): degree " + std::to_string(comp.degree);
                                       arr.push_back({{"component", print_ring_desc(*comp.component)},
                                                      {"idempotent", print_ring_elem(comp.idempotent)},
                                                      {"degree", comp.degree}});
                                   }
                                   em.emit(text, arr);
                               }
                           });
        c->add_option("--series", series_text)->required();
        c->add_option("--var", laurent_var, "series variable (default x)");
    }

    {
        CLI::App* c = make("mero-factor", "f = x^k u(x) g(x)", true, [&](detail::Emitter& em) {
            em.input("series", series_text);
            MeroFactorization mf = mero_factor(parse_laurent_input(series_text));
            std::string u = print_series(mf.unit_part), g = print_laurent(mf.tail);
            em.emit("k = " + std::to_string(mf.degree) + "\nu = " + u + "\ng = " + g,
                    {{"k", mf.degree}, {"u", u}, {"g", g}});
        });
        c->add_option("--series", series_text)->required();
        c->add_option("--var", laurent_var);
    }

    {
        CLI::App* c = make("res", "residue of f(x) dx: the x^-1 coefficient", true,
                           [&](detail::Emitter& em) {
                               em.input("series", series_text);
                               RingElem r = residue(parse_laurent_input(series_text));
                               em.emit(print_ring_elem(r), print_ring_elem(r));
                           });
        c->add_option("--series", series_text)->required();
        c->add_option("--var", laurent_var);
    }

    // ---- ring ----
    make("ring-nilpotent", "structural nilpotence test", true, [&](detail::Emitter& em) {
        em.input("elem", elem_text);
        RingPtr ring = parse_ring(opt.ring_text);
        bool b = is_nilpotent(parse_elem(elem_text, ring));
        em.emit(b ? "true" : "false", b);
    })->add_option("--elem", elem_text)->required();

    make("ring-unit", "unit test; prints the inverse when invertible", true,
         [&](detail::Emitter& em) {
             em.input("elem", elem_text);
             RingPtr ring = parse_ring(opt.ring_text);
             RingElem a = parse_elem(elem_text, ring);
             if (is_unit(a)) {
                 std::string inv = print_ring_elem(invert_unit(a));
                 em.emit("true (inverse " + inv + ")", {{"unit", true}, {"inverse", inv}});
             } else {
                 em.emit("false", {{"unit", false}});
             }
         })->add_option("--elem", elem_text)->required();

    make("ring-lift-idempotent", "the unique idempotent lift modulo nilpotents", true,
         [&](detail::Emitter& em) {
             em.input("elem", elem_text);
             RingPtr ring = parse_ring(opt.ring_text);
             RingElem lifted = lift_idempotent(parse_elem(elem_text, ring));
             em.emit(print_ring_elem(lifted), print_ring_elem(lifted));
         })->add_option("--elem", elem_text)->required();

    make("ring-split", "orthogonal idempotent decomposition of Z/n", true,
         [&](detail::Emitter& em) {
             RingPtr ring = parse_ring(opt.ring_text);
             std::string text;
             nlohmann::json arr = nlohmann::json::array();
             for (const auto& [e, comp] : split_ring(ring)) {
                 if (!text.empty()) text += "\n";
                 text += "(" + print_ring_elem(e) + ", " + print_ring_desc(*comp) + ")";
                 arr.push_back({{"idempotent", print_ring_elem(e)},
                                {"component", print_ring_desc(*comp)}});
             }
             em.emit(text, arr);
         });

    // ---- hopf ----
    auto load_hopf = [&]() {
        std::ifstream in(file_path);
        if (!in) raise(ErrorCode::ParseError, "cannot open " + file_path);
        std::stringstream ss;
        ss << in.rdbuf();
        return parse_hopf(ss.str());
    };

    make("hopf-check", "verify the bialgebra identities", false, [&](detail::Emitter& em) {
        em.input("file", file_path);
        FiniteHopf H = load_hopf();
        em.ring = print_ring_desc(*H.ring());
        auto bad = hopf_check(H);
        if (bad.empty()) {
            em.emit("valid", {{"valid", true}});
        } else {
            std::string text;
            nlohmann::json arr = nlohmann::json::array();
            for (const auto& v : bad) {
                if (!text.empty()) text += "\n";
                std::string idx;
                for (auto i : v.indices) idx += (idx.empty() ? "" : ",") + std::to_string(i);
                text += v.identity + " fails at (" + idx + ")";
                arr.push_back({{"identity", v.identity}, {"indices", v.indices}});
            }
            em.emit(text, {{"valid", false}, {"violations", arr}});
            raise(ErrorCode::AxiomViolation, "bialgebra identities fail");
        }
    })->add_option("--file", file_path)->required();

    make("hopf-antipode", "antipode by the filtered recursion", false, [&](detail::Emitter& em) {
        em.input("file", file_path);
        FiniteHopf H = load_hopf();
        em.ring = print_ring_desc(*H.ring());
        auto chi = hopf_antipode(H);
        unsigned m = H.rank();
        std::string text;
        nlohmann::json arr = nlohmann::json::array();
        for (unsigned i = 0; i < m; ++i) {
            std::string rhs;
            nlohmann::json row = nlohmann::json::array();
            for (unsigned j = 0; j < m; ++j) {
                if (chi[i * m + j].is_zero()) continue;
                if (!rhs.empty()) rhs += ", ";
                rhs += "(" + std::to_string(j) + ", " + print_ring_elem(chi[i * m + j]) + ")";
                row.push_back({{"index", j}, {"coeff", print_ring_elem(chi[i * m + j])}});
            }
            if (!text.empty()) text += "\n";
            text += "antipode[" + std::to_string(i) + "] = " + (rhs.empty() ? "0" : rhs);
            arr.push_back(row);
        }
        em.emit(text, arr);
    })->add_option("--file", file_path)->required();

    make("hopf-dual", "Cartier dual, printed in the same file format", false,
         [&](detail::Emitter& em) {
             em.input("file", file_path);
             FiniteHopf H = load_hopf();
             em.ring = print_ring_desc(*H.ring());
             std::string text = print_hopf(cartier_dual(H));
             em.emit(text, text);
         })->add_option("--file", file_path)->required();

    {
        CLI::App* c = make("hopf-grouplike", "is the vector grouplike?", false,
                           [&](detail::Emitter& em) {
                               em.input("file", file_path);
                               em.input("vector", vector_text);
                               FiniteHopf H = load_hopf();
                               em.ring = print_ring_desc(*H.ring());
                               std::vector<RingElem> v;
                               for (const auto& piece : detail::split_list(vector_text))
                                   v.push_back(parse_elem(piece, H.ring()));
                               bool b = grouplike_check(H, v);
                               em.emit(b ? "true" : "false", b);
                           });
        c->add_option("--file", file_path)->required();
        c->add_option("--vector", vector_text, "comma-separated coordinates")->required();
    }

    // ---- dispatch ----
    std::vector<const char*> argv;
    argv.push_back("fgcalc");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help() << "\n";
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    for (const auto& cmd : cmds) {
        if (!cmd.app->parsed()) continue;
        detail::Emitter em{cmd.app->get_name(), opt.format, opt.order, opt.ring_text,
                           nlohmann::json::object(), out};
        try {
            cmd.run(em);
            return 0;
        } catch (const Error& e) {
            err << "error: " << e.what() << "\n";
            return exit_code_for(e.code());
        }
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace fgcalc::cli

#endif
