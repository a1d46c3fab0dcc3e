#include "wh/cli.hpp"

#include "wh/bdelta.hpp"
#include "wh/chains.hpp"
#include "wh/checker.hpp"
#include "wh/mcnaughton.hpp"
#include "wh/presentation.hpp"
#include "wh/term.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>

namespace wh::cli {

namespace {

using json = nlohmann::ordered_json;

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool as_json = false;
    bool timing = false;
};

// Prints a report either as one JSON object or as "key: value" lines.
void emit(Context& ctx, const std::string& command, json payload, std::chrono::steady_clock::time_point started)
{
    json report;
    report["command"] = command;
    for (auto& [k, v] : payload.items()) report[k] = v;
    if (ctx.timing) {
        const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        report["elapsed_ms"] = ms;
    }
    if (ctx.as_json) {
        ctx.out << report.dump(2) << "\n";
        return;
    }
    for (auto& [k, v] : report.items()) {
        if (k == "command") continue;
        if (v.is_string()) {
            ctx.out << k << ": " << v.get<std::string>() << "\n";
        } else if (v.is_array() && std::all_of(v.begin(), v.end(), [](const json& x) { return x.is_string(); })) {
            ctx.out << k << ":";
            for (const auto& x : v) ctx.out << "\n  " << x.get<std::string>();
            ctx.out << "\n";
        } else {
            ctx.out << k << ": " << v.dump() << "\n";
        }
    }
}

json assignment_json(const CheckResult& r)
{
    json a = json::object();
    for (const auto& [name, value] : r.assignment) a[name] = value;
    return a;
}

json check_json(const CheckResult& r)
{
    json j;
    j["verdict"] = verdict_name(r.verdict);
    if (r.verdict == Verdict::Invalid) {
        j["algebra"] = r.algebra;
        j["assignment"] = assignment_json(r);
    }
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

int verdict_exit(Verdict v)
{
    switch (v) {
    case Verdict::Valid: return kExitYes;
    case Verdict::Invalid: return kExitNo;
    case Verdict::Undecided: return kExitUnknown;
    }
    return kExitUnknown;
}

json report_json(const EmbedReport& r)
{
    json j;
    j["presentation"] = r.presentation.to_string();
    j["theorem"] = r.theorem;
    if (r.index) j["index"] = r.index;
    j["status"] = embed_status_name(r.status);
    if (!r.witness_function.empty()) j["witness"] = r.witness_function;
    if (!r.coordinates.empty()) j["coordinates"] = r.coordinates;
    if (!r.generator.empty()) j["generator"] = r.generator;
    if (r.closure_size) j["closure_size"] = *r.closure_size;
    if (r.depth) j["depth"] = *r.depth;
    if (!r.gispert_witness.empty()) j["gispert_witness"] = r.gispert_witness;
    if (!r.gispert_function.empty()) j["gispert_function"] = r.gispert_function;
    if (!r.reason.empty()) j["reason"] = r.reason;
    return j;
}

QuasiDescriptor parse_quasi(std::string_view text)
{
    while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
    while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
    if (text.starts_with("Q[") && text.ends_with("]")) {
        const Presentation p = Presentation::parse(text.substr(2, text.size() - 3));
        if (p.K) throw std::invalid_argument("Q[I,J] takes no K part");
        return QuasiDescriptor::bracket(p.I, p.J);
    }
    if (text.starts_with("Q(") && text.ends_with(")")) {
        return QuasiDescriptor::qv(Presentation::parse(text.substr(2, text.size() - 3)));
    }
    return QuasiDescriptor::qv(Presentation::parse(text));
}

Presentation parse_reduced(const std::string& text)
{
    Presentation p = Presentation::parse(text);
    require_reduced(p, "this command");
    return p;
}

std::vector<std::string> read_lines(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read '" + path + "'");
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        lines.push_back(line);
    }
    return lines;
}

// Splits "x=2" into ("x", "2").
std::pair<std::string, std::string> split_binding(const std::string& s)
{
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("expected name=value, got '" + s + "'");
    return {s.substr(0, eq), s.substr(eq + 1)};
}

Term random_term(std::mt19937_64& rng, int depth)
{
    std::uniform_int_distribution<int> coin(0, 9);
    if (depth == 0 || coin(rng) < 2) return coin(rng) < 8 ? Term::var("x") : Term::one();
    std::uniform_int_distribution<int> pick(0, 3);
    return Term::binary(kBinaryOps[pick(rng)], random_term(rng, depth - 1), random_term(rng, depth - 1));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Context ctx{out, err};
    CLI::App app{"Wajsberg hoops: chains, McNaughton functions, combs, free algebras and (quasi)variety structure"};
    app.require_subcommand(1);
    app.add_flag("--json", ctx.as_json, "Machine-readable JSON report");
    app.add_flag("--timing", ctx.timing, "Add elapsed_ms to the report");

    std::function<int()> action;
    const auto started = std::chrono::steady_clock::now();
    auto report = [&](const std::string& cmd, json payload) { emit(ctx, cmd, std::move(payload), started); };

    // eval
    std::string term_text, alg_text;
    std::vector<std::string> bindings;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a term in a chain or finite product");
    eval_cmd->add_option("term", term_text, "Term, e.g. \"(x -> x*x) -> x\"")->required();
    eval_cmd->add_option("--alg", alg_text, "Algebra: L3, L(6,4), Linf5, Comega or a product \"L2 x Comega\"")->required();
    eval_cmd->add_option("--set", bindings, "Assignment x=value (repeatable; products use [a, b])");
    eval_cmd->callback([&] {
        action = [&] {
            const Term t = parse_term(term_text);
            const ProductAlgebra alg = ProductAlgebra::parse(alg_text);
            json payload;
            payload["term"] = print_term(t);
            payload["algebra"] = alg.to_string();
            if (alg.factors.size() == 1) {
                Assignment<ChainDescriptor> a;
                for (const auto& b : bindings) {
                    auto [name, value] = split_binding(b);
                    a.insert_or_assign(name, parse_element(alg.factors[0], value));
                }
                payload["value"] = eval(alg.factors[0], t, a).to_string();
            } else {
                Assignment<ProductAlgebra> a;
                for (const auto& b : bindings) {
                    auto [name, value] = split_binding(b);
                    a.insert_or_assign(name, parse_element(alg, value));
                }
                payload["value"] = eval(alg, t, a).to_string();
            }
            report("eval", payload);
            return kExitYes;
        };
    });

    // check-id
    std::string eq_text, pres_text, file_text;
    auto* check_id = app.add_subcommand("check-id", "Decide an identity p ~ q in a finite algebra or over V(P)");
    check_id->add_option("equation", eq_text, "Equation \"p ~ q\"");
    check_id->add_option("--file", file_text, "One equation per line");
    auto* id_alg = check_id->add_option("--alg", alg_text, "Finite chain or product");
    auto* id_pres = check_id->add_option("--pres", pres_text, "Reduced presentation, e.g. \"I=2; K=omega\"");
    id_alg->excludes(id_pres);
    check_id->callback([&] {
        action = [&] {
            std::vector<std::string> lines;
            if (!file_text.empty()) lines = read_lines(file_text);
            if (!eq_text.empty()) lines.push_back(eq_text);
            if (lines.empty()) throw CLI::ValidationError("check-id", "give an equation or --file");
            if (alg_text.empty() == pres_text.empty()) throw CLI::ValidationError("check-id", "give exactly one of --alg, --pres");
            json results = json::array();
            int code = kExitYes;
            for (const auto& line : lines) {
                const Equation e = Equation::parse(line);
                CheckResult r;
                if (!alg_text.empty()) {
                    const ProductAlgebra alg = ProductAlgebra::parse(alg_text);
                    r = alg.factors.size() == 1 ? valid_identity_finite(e, alg.factors[0]) : valid_identity_finite(e, alg);
                } else {
                    r = valid_identity_variety(e, parse_reduced(pres_text));
                }
                json j{{"equation", e.to_string()}};
                const json verdict = check_json(r);
                for (auto& [k, v] : verdict.items()) j[k] = v;
                results.push_back(j);
                code = std::max(code, verdict_exit(r.verdict));
            }
            json payload;
            payload["target"] = alg_text.empty() ? pres_text : alg_text;
            payload["results"] = results;
            report("check-id", payload);
            return code;
        };
    });

    // check-rule
    std::string clause_text;
    std::int64_t tabular = 0;
    auto* check_rule = app.add_subcommand("check-rule", "Decide a clause \"e1, e2 => f1 | f2\" in a finite algebra");
    check_rule->add_option("clause", clause_text, "Clause");
    check_rule->add_option("--file", file_text, "One clause per line");
    auto* rule_alg = check_rule->add_option("--alg", alg_text, "Finite chain or product");
    auto* rule_tab = check_rule->add_option("--tabular", tabular, "Derivability in the logic of L_n")->check(CLI::PositiveNumber);
    rule_alg->excludes(rule_tab);
    check_rule->callback([&] {
        action = [&] {
            std::vector<std::string> lines;
            if (!file_text.empty()) lines = read_lines(file_text);
            if (!clause_text.empty()) lines.push_back(clause_text);
            if (lines.empty()) throw CLI::ValidationError("check-rule", "give a clause or --file");
            if (alg_text.empty() == (tabular == 0)) throw CLI::ValidationError("check-rule", "give exactly one of --alg, --tabular");
            json results = json::array();
            int code = kExitYes;
            for (const auto& line : lines) {
                const Clause c = Clause::parse(line);
                CheckResult r;
                if (tabular) {
                    r = derivable_rule_tabular(c, tabular);
                } else {
                    const ProductAlgebra alg = ProductAlgebra::parse(alg_text);
                    r = alg.factors.size() == 1 ? valid_clause_finite(c, alg.factors[0]) : valid_clause_finite(c, alg);
                }
                json j{{"clause", c.to_string()}};
                const json verdict = check_json(r);
                for (auto& [k, v] : verdict.items()) j[k] = v;
                if (tabular) j["verdict"] = r.valid() ? "derivable" : "not derivable";
                results.push_back(j);
                code = std::max(code, verdict_exit(r.verdict));
            }
            json payload;
            payload["target"] = tabular ? "L" + std::to_string(tabular) : alg_text;
            payload["results"] = results;
            report("check-rule", payload);
            return code;
        };
    });

    // comb / is-comb / targets
    auto* comb = app.add_subcommand("comb", "Build a comb for a reduced presentation");
    comb->add_option("presentation", pres_text, "e.g. \"I=2\"")->required();
    comb->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text);
            const PLFunction f = make_comb(p);
            const CombCheck c = is_comb(f, p);
            json payload;
            payload["presentation"] = p.to_string();
            payload["comb"] = f.to_string();
            payload["is_comb"] = c.ok;
            payload["cutoff"] = c.cutoff;
            report("comb", payload);
            return c.ok ? kExitYes : kExitNo;
        };
    });

    std::string pl_text;
    auto* is_comb_cmd = app.add_subcommand("is-comb", "Check the four comb conditions");
    is_comb_cmd->add_option("function", pl_text, "L(t0,x0;...;tk,xk)")->required();
    is_comb_cmd->add_option("presentation", pres_text, "Reduced presentation")->required();
    is_comb_cmd->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text);
            const PLFunction f = PLFunction::parse(pl_text);
            const CombCheck c = is_comb(f, p);
            json payload;
            payload["presentation"] = p.to_string();
            payload["function"] = f.to_string();
            payload["is_comb"] = c.ok;
            if (!c.ok) {
                payload["condition"] = c.condition;
                payload["violated"] = c.violated;
                if (c.condition != 4) payload["point"] = c.point.to_string();
                if (c.denominator) payload["denominator"] = c.denominator;
                payload["reason"] = c.message;
            } else {
                payload["cutoff"] = c.cutoff;
            }
            report("is-comb", payload);
            return c.ok ? kExitYes : kExitNo;
        };
    });

    auto* targets = app.add_subcommand("targets", "The point sets script-I and script-J of a presentation");
    targets->add_option("presentation", pres_text, "Reduced presentation")->required();
    targets->callback([&] {
        action = [&] {
            const CombTargets t = comb_targets(parse_reduced(pres_text));
            json payload;
            json is = json::array(), js = json::array();
            for (const auto& u : t.I) is.push_back(u.to_string());
            for (const auto& v : t.J) js.push_back(v.to_string());
            payload["script_I"] = is;
            payload["script_J"] = js;
            report("targets", payload);
            return kExitYes;
        };
    });

    // pl
    std::string at_text;
    auto* pl = app.add_subcommand("pl", "McNaughton function of a one-variable term");
    pl->add_option("term", term_text, "Term in x")->required();
    pl->add_option("--at", at_text, "Also evaluate at a rational point");
    pl->callback([&] {
        action = [&] {
            const Term t = parse_term(term_text);
            const PLFunction f = term_to_pl(t);
            json payload;
            payload["term"] = print_term(t);
            payload["function"] = f.to_string();
            if (!at_text.empty()) payload["value"] = pl_eval(f, Rational::parse(at_text)).to_string();
            report("pl", payload);
            return kExitYes;
        };
    });

    // reduce / var-leq / member / structural / core
    auto* reduce_cmd = app.add_subcommand("reduce", "Reduced form of a triple");
    reduce_cmd->add_option("presentation", pres_text, "Triple")->required();
    reduce_cmd->callback([&] {
        action = [&] {
            const Presentation p = Presentation::parse(pres_text);
            const Presentation r = reduce(p);
            report("reduce", json{{"input", p.to_string()}, {"reduced", r.to_string()}, {"was_reduced", p == r}});
            return kExitYes;
        };
    });

    std::string pres2_text;
    auto* var_leq = app.add_subcommand("var-leq", "Is V(P) contained in V(P')?");
    var_leq->add_option("P", pres_text, "Reduced presentation")->required();
    var_leq->add_option("Q", pres2_text, "Reduced presentation")->required();
    var_leq->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text), q = parse_reduced(pres2_text);
            const bool le = variety_leq(p, q), ge = variety_leq(q, p);
            const char* rel = le && ge ? "equal" : le ? "below" : ge ? "above" : "incomparable";
            report("var-leq", json{{"P", p.to_string()}, {"Q", q.to_string()}, {"leq", le}, {"relation", rel}});
            return le ? kExitYes : kExitNo;
        };
    });

    auto* member = app.add_subcommand("member", "Does a chain belong to V(P)?");
    member->add_option("chain", alg_text, "L3, L(6,4), Comega")->required();
    member->add_option("presentation", pres_text, "Reduced presentation")->required();
    member->callback([&] {
        action = [&] {
            const ChainDescriptor d = ChainDescriptor::parse(alg_text);
            const bool in = variety_member(d, parse_reduced(pres_text));
            report("member", json{{"chain", d.to_string()}, {"member", in}});
            return in ? kExitYes : kExitNo;
        };
    });

    auto* structural = app.add_subcommand("structural", "Is V(P) structural?");
    structural->add_option("presentation", pres_text, "Reduced presentation")->required();
    structural->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text);
            const bool s = is_structural_variety(p);
            report("structural", json{{"presentation", p.to_string()},
                                      {"structural", s},
                                      {"reason", s ? (p.J.empty() ? "J = ∅" : "J = {1}") : "J ≠ ∅ and J ≠ {1}"}});
            return s ? kExitYes : kExitNo;
        };
    });

    auto* core = app.add_subcommand("core", "Structural core of V(P)");
    core->add_option("presentation", pres_text, "Reduced presentation")->required();
    core->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text);
            const QuasiDescriptor q = structural_core(p);
            json gens = json::array();
            for (const auto& d : q.generators()) gens.push_back(d.to_string());
            report("core", json{{"presentation", p.to_string()}, {"core", q.to_string()}, {"generators", gens}});
            return kExitYes;
        };
    });

    // quasi-leq / primitive
    auto* quasi = app.add_subcommand("quasi-leq", "Order of Q[I,J] quasivarieties");
    quasi->add_option("q", pres_text, "Q[I=..; J=..]")->required();
    quasi->add_option("r", pres2_text, "Q[I=..; J=..]")->required();
    quasi->callback([&] {
        action = [&] {
            const QuasiDescriptor q = parse_quasi(pres_text), r = parse_quasi(pres2_text);
            const bool le = quasi_leq(q, r);
            report("quasi-leq", json{{"q", q.to_string()}, {"r", r.to_string()}, {"leq", le}});
            return le ? kExitYes : kExitNo;
        };
    });

    auto* primitive = app.add_subcommand("primitive", "Primitivity of Q(P) or Q[I,J]");
    primitive->add_option("quasivariety", pres_text, "\"Q(I=2,3)\", \"Q[J=2]\" or a presentation")->required();
    primitive->callback([&] {
        action = [&] {
            const QuasiDescriptor q = parse_quasi(pres_text);
            const PrimitivityVerdict v = primitivity(q);
            report("primitive", json{{"quasivariety", q.to_string()},
                                     {"verdict", primitivity_name(v.verdict)},
                                     {"reason", v.reason}});
            switch (v.verdict) {
            case Primitivity::Primitive: return kExitYes;
            case Primitivity::NotPrimitive: return kExitNo;
            case Primitivity::Unknown: break;
            }
            return kExitUnknown;
        };
    });

    // lattice
    auto* lattice = app.add_subcommand("lattice", "Subvariety lattice of V(P) in DOT");
    lattice->add_option("presentation", pres_text, "Reduced presentation")->required();
    lattice->callback([&] {
        action = [&] {
            const VarietyLattice l = subvariety_lattice(parse_reduced(pres_text));
            if (!ctx.as_json) {
                ctx.out << l.to_dot();
                return kExitYes;
            }
            json nodes = json::array(), edges = json::array();
            for (std::size_t i = 0; i < l.nodes.size(); ++i) nodes.push_back(l.node_label(i));
            for (const auto& [lo, hi] : l.covers) edges.push_back(json::array({l.node_label(lo), l.node_label(hi)}));
            report("lattice", json{{"nodes", nodes}, {"covers", edges}});
            return kExitYes;
        };
    });

    // bdelta
    std::string verify;
    std::int64_t index = 0;
    int depth = 5;
    auto* bdelta = app.add_subcommand("bdelta", "Delta, A_Delta and g-bar; optionally verify an embedding theorem");
    bdelta->add_option("presentation", pres_text, "Reduced presentation")->required();
    bdelta->add_option("--verify", verify, "embed1 | embed2 | embed3")->check(CLI::IsMember({"embed1", "embed2", "embed3"}));
    bdelta->add_option("--index", index, "a in I (embed1) or j in J (embed3); default: all");
    bdelta->add_option("--depth", depth, "Term depth for the bounded certification (embed3)")->check(CLI::PositiveNumber);
    bdelta->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text);
            if (verify.empty()) {
                const CanonicalGenerator cg = canonical_generator(p);
                json entries = json::array();
                for (std::size_t c = 0; c < cg.delta.entries.size(); ++c) {
                    entries.push_back(json{{"index", cg.delta.entries[c].to_string()},
                                           {"factor", cg.algebra.factors[c].to_string()},
                                           {"g", cg.g.coords[c].to_string()}});
                }
                json payload{{"presentation", p.to_string()}, {"algebra", cg.algebra.to_string()},
                             {"generator", cg.g.to_string()}};
                if (ctx.as_json) {
                    payload["delta"] = entries;
                } else {
                    json lines = json::array();
                    for (const auto& e : entries) {
                        lines.push_back(e["index"].get<std::string>() + " " + e["factor"].get<std::string>() + " " +
                                        e["g"].get<std::string>());
                    }
                    payload["delta"] = lines;
                }
                report("bdelta", payload);
                return kExitYes;
            }
            std::vector<EmbedReport> reports;
            if (verify == "embed2") {
                reports.push_back(verify_embed_comega(p));
            } else {
                const IndexSet& pool = verify == "embed1" ? p.I : p.J;
                if (index != 0) {
                    reports.push_back(verify == "embed1" ? verify_embed_finite_chain(p, index) : verify_embed_lj1(p, index, depth));
                } else {
                    if (pool.empty()) throw std::invalid_argument(verify + " needs a nonempty " + (verify == "embed1" ? "I" : "J"));
                    for (auto a : pool) {
                        reports.push_back(verify == "embed1" ? verify_embed_finite_chain(p, a) : verify_embed_lj1(p, a, depth));
                    }
                }
            }
            json rs = json::array();
            bool ok = true;
            for (const auto& r : reports) {
                rs.push_back(report_json(r));
                ok = ok && r.ok();
            }
            if (ctx.as_json || reports.size() > 1) {
                report("bdelta", json{{"reports", rs}});
            } else {
                report("bdelta", rs[0]);
            }
            return ok ? kExitYes : kExitNo;
        };
    });

    std::int64_t gk = 0, gh = 0;
    auto* gkh = app.add_subcommand("gkh", "The generator g_{k,h} of L(k,h)");
    gkh->add_option("K", gk, "K >= 1")->required();
    gkh->add_option("H", gh, "0 <= H < K, coprime to K")->required();
    gkh->callback([&] {
        action = [&] {
            const Element g = g_kh(gk, gh);
            report("gkh", json{{"chain", g.chain.to_string()}, {"g", g.to_string()}, {"neg_g", neg(g.chain, g).to_string()}});
            return kExitYes;
        };
    });

    // chains: subalgebra / embeds / rank
    std::vector<std::string> gens;
    std::size_t budget = 1000;
    auto* sub = app.add_subcommand("subalgebra", "Subalgebra generated by some elements");
    sub->add_option("--alg", alg_text, "Chain or product")->required();
    sub->add_option("--gen", gens, "Generator (repeatable)");
    sub->add_option("--budget", budget, "Give up after this many elements")->check(CLI::PositiveNumber);
    sub->callback([&] {
        action = [&] {
            const ProductAlgebra alg = ProductAlgebra::parse(alg_text);
            json elems = json::array();
            bool finite = false;
            if (alg.factors.size() == 1) {
                std::vector<Element> g;
                for (const auto& s : gens) g.push_back(parse_element(alg.factors[0], s));
                const auto s = generate_subalgebra(alg.factors[0], g, budget);
                finite = s.finite;
                for (const auto& e : s.elements) elems.push_back(e.to_string());
            } else {
                std::vector<ProductElement> g;
                for (const auto& s : gens) g.push_back(parse_element(alg, s));
                const auto s = generate_subalgebra(alg, g, budget);
                finite = s.finite;
                for (const auto& e : s.elements) elems.push_back(e.to_string());
            }
            json payload{{"algebra", alg.to_string()}, {"status", finite ? "Finite" : "Exceeded"}, {"size", elems.size()}};
            payload["elements"] = elems;
            report("subalgebra", payload);
            return finite ? kExitYes : kExitNo;
        };
    });

    std::string src_text, dst_text;
    auto* embeds_cmd = app.add_subcommand("embeds", "Does one chain embed in another?");
    embeds_cmd->add_option("src", src_text, "Chain")->required();
    embeds_cmd->add_option("dst", dst_text, "Chain")->required();
    embeds_cmd->callback([&] {
        action = [&] {
            const auto s = ChainDescriptor::parse(src_text), d = ChainDescriptor::parse(dst_text);
            const bool e = embeds(s, d);
            report("embeds", json{{"src", s.to_string()}, {"dst", d.to_string()}, {"embeds", e}});
            return e ? kExitYes : kExitNo;
        };
    });

    auto* rank = app.add_subcommand("rank", "Rank and divisibility index of a chain");
    rank->add_option("chain", alg_text, "Chain")->required();
    rank->callback([&] {
        action = [&] {
            const auto d = ChainDescriptor::parse(alg_text);
            const RankAndIndex r = rank_and_div_index(d);
            json payload{{"chain", d.to_string()}};
            payload["rank"] = r.rank ? json(*r.rank) : json("infinite");
            payload["div_index"] = r.div_index;
            report("rank", payload);
            return kExitYes;
        };
    });

    // terms
    std::vector<std::string> vars{"x"};
    int term_depth = 1;
    std::size_t term_budget = 1000;
    auto* terms = app.add_subcommand("terms", "Enumerate terms");
    terms->add_option("--vars", vars, "Variables")->delimiter(',');
    terms->add_option("--depth", term_depth, "Maximum depth")->check(CLI::NonNegativeNumber);
    terms->add_option("--budget", term_budget, "Maximum number of terms")->check(CLI::PositiveNumber);
    terms->callback([&] {
        action = [&] {
            const auto ts = enumerate_terms(vars, term_depth, term_budget);
            if (!ctx.as_json) {
                for (const auto& t : ts) ctx.out << print_term(t) << "\n";
                return kExitYes;
            }
            json arr = json::array();
            for (const auto& t : ts) arr.push_back(print_term(t));
            report("terms", json{{"count", ts.size()}, {"terms", arr}});
            return kExitYes;
        };
    });

    // crosscheck
    std::uint64_t seed = 1;
    std::size_t count = 200;
    auto* cross = app.add_subcommand("crosscheck", "Random one-variable identities: routes A/B and B_Delta must agree");
    cross->add_option("presentation", pres_text, "Reduced presentation")->required();
    cross->add_option("--seed", seed, "Random seed");
    cross->add_option("--count", count, "Number of term pairs");
    cross->add_option("--depth", depth, "Maximum term depth")->check(CLI::PositiveNumber);
    cross->callback([&] {
        action = [&] {
            const Presentation p = parse_reduced(pres_text);
            const CanonicalGenerator cg = canonical_generator(p);
            std::mt19937_64 rng(seed);
            std::size_t valid = 0, disagreements = 0;
            json bad = json::array();
            for (std::size_t n = 0; n < count; ++n) {
                const Term a = random_term(rng, depth), b = random_term(rng, depth);
                const Equation e{a, b};
                const bool v = valid_identity_variety(e, p).valid();
                const bool free = eval_unary(cg.algebra, a, cg.g) == eval_unary(cg.algebra, b, cg.g);
                valid += v;
                if (v != free) {
                    ++disagreements;
                    bad.push_back(e.to_string());
                }
            }
            report("crosscheck", json{{"presentation", p.to_string()}, {"seed", seed}, {"pairs", count},
                                      {"valid", valid}, {"disagreements", disagreements}, {"failures", bad}});
            return disagreements == 0 ? kExitYes : kExitNo;
        };
    });

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitUsage;
    }
    try {
        return action();
    } catch (const CLI::ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::overflow_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

}  // namespace wh::cli
