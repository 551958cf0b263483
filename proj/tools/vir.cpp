#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vir/checks.hpp"
#include "vir/parser.hpp"
#include "vir/subalg.hpp"

namespace {

using namespace vir;

struct ParamFlags {
    std::optional<std::string> z, m2, m3, m4, theta, t;

    void attach(CLI::App* cmd) {
        cmd->add_option("--z", z, "value of z (rational, nonzero)");
        cmd->add_option("--m2", m2, "value of m2 (rational)");
        cmd->add_option("--m3", m3, "value of m3 (rational)");
        cmd->add_option("--m4", m4, "value of m4 (rational)");
        cmd->add_option("--theta", theta, "value of theta (rational)");
        cmd->add_option("--t", t, "value of t (rational)");
    }

    ParamAssignment assignment() const {
        ParamAssignment a;
        auto put = [&](const char* name, const std::optional<std::string>& v) {
            if (v) a.set(name, Rational::from_string(*v));
        };
        put("z", z);
        put("m2", m2);
        put("m3", m3);
        put("m4", m4);
        put("theta", theta);
        put("t", t);
        return a;
    }
};

RatFunc substituted(const RatFunc& s, const ParamAssignment& a) {
    RatFunc out = s;
    for (const auto& [name, val] : a.values()) out = out.substitute(name, RatFunc(val));
    return out;
}

UeaElt<RatFunc> substituted_uea(const UeaElt<RatFunc>& x, const ParamAssignment& a) {
    UeaElt<RatFunc> out;
    for (const auto& [w, c] : x.terms()) out.add_term(w, substituted(c, a));
    return out;
}

ModElt<RatFunc> substituted_mod(const ModElt<RatFunc>& x, const ParamAssignment& a) {
    ModElt<RatFunc> out(x.space());
    for (const auto& [k, c] : x.terms()) out.add_term(k, substituted(c, a));
    return out;
}

CharacterParams<RatFunc> params_from(const ParamAssignment& a) {
    auto pick = [&](const char* name) {
        return a.has(name) ? RatFunc(a.get(name)) : RatFunc::variable(name);
    };
    return {pick("z"), pick("m2"), pick("m3"), pick("m4"), pick("theta")};
}

CharacterParams<Rational> numeric_params_checked(const ParamAssignment& a) {
    for (const char* name : {"z", "m2", "m3", "m4"})
        if (!a.has(name))
            throw DomainError(std::string("this command needs numeric parameters; missing --") +
                              name);
    return numeric_params(a);
}

Rational to_rational(const RatFunc& s) {
    if (!s.is_constant()) throw DomainError("symbolic parameters remain: " + s.to_string());
    return s.constant_value();
}

UeaElt<Rational> numeric_uea(const UeaElt<RatFunc>& x) {
    UeaElt<Rational> out;
    for (const auto& [w, c] : x.terms()) out.add_term(w, to_rational(c));
    return out;
}

ModElt<Rational> numeric_mod(const ModElt<RatFunc>& x) {
    ModElt<Rational> out(x.space());
    for (const auto& [k, c] : x.terms()) out.add_term(k, to_rational(c));
    return out;
}

UeaElt<RatFunc> as_operator(const Value& v) {
    if (v.kind == Value::Kind::Scalar) return UeaElt<RatFunc>::word(PbwWord{}, v.scalar);
    if (v.kind == Value::Kind::Operator) return v.op;
    throw DomainError("expected an operator, found a module element");
}

Space parse_space(const std::string& s) {
    if (s == "V") return Space::V;
    if (s == "W") return Space::W;
    if (s == "Ind") return Space::Ind;
    throw DomainError("--module must be one of V, W, Ind");
}

LieElt<RatFunc> as_lie(const Value& v) {
    if (v.kind != Value::Kind::Operator)
        throw DomainError("expected a Lie algebra element");
    LieElt<RatFunc> x;
    for (const auto& [w, c] : v.op.terms()) {
        if (w.factors.size() == 1 && w.cpow == 0)
            x.add_mode(w.factors[0], c);
        else if (w.factors.empty() && w.cpow == 1)
            x.add_central(c);
        else
            throw DomainError("expected a degree-one element of the Lie algebra");
    }
    return x;
}

Bounds bounds_from(std::optional<long> w, std::optional<long> j, std::optional<long> k) {
    Bounds b = Bounds::unbounded();
    if (w) b.max_weight = static_cast<std::uint64_t>(*w);
    if (j) b.max_j = static_cast<std::uint32_t>(*j);
    if (k) b.max_k = static_cast<std::uint32_t>(*k);
    return b;
}

int run(int argc, char** argv) {
    CLI::App app{"exact computation engine for induced Virasoro modules"};
    app.require_subcommand(1);

    std::string format = "text";
    auto add_format = [&format](CLI::App* cmd) {
        cmd->add_option("--format", format, "output format: text or json")
            ->capture_default_str();
    };

    // ---- bracket ----------------------------------------------------------
    auto* cmd_bracket = app.add_subcommand("bracket", "Lie bracket of two elements");
    std::string br_x, br_y;
    cmd_bracket->add_option("x", br_x)->required();
    cmd_bracket->add_option("y", br_y)->required();
    ParamFlags br_params;
    br_params.attach(cmd_bracket);

    // ---- normal-order -----------------------------------------------------
    auto* cmd_no = app.add_subcommand("normal-order", "rewrite a product into the PBW basis");
    std::string no_x;
    cmd_no->add_option("expr", no_x)->required();

    // ---- act ---------------------------------------------------------------
    auto* cmd_act = app.add_subcommand("act", "apply an operator to a module element");
    std::string act_module = "Ind", act_op, act_elt;
    cmd_act->add_option("--module", act_module, "V, W or Ind")->capture_default_str();
    cmd_act->add_option("op", act_op)->required();
    cmd_act->add_option("elt", act_elt)->required();
    ParamFlags act_params;
    act_params.attach(cmd_act);
    std::optional<long> act_w, act_j, act_k;
    cmd_act->add_option("--max-weight", act_w);
    cmd_act->add_option("--max-j", act_j);
    cmd_act->add_option("--max-k", act_k);

    // ---- kernel -------------------------------------------------------------
    auto* cmd_kernel = app.add_subcommand("kernel", "exact kernel of an operator on a truncation");
    std::string ker_module = "W", ker_op;
    long ker_j = 6, ker_k = 6;
    cmd_kernel->add_option("--module", ker_module)->capture_default_str();
    cmd_kernel->add_option("--max-j", ker_j)->capture_default_str();
    cmd_kernel->add_option("--max-k", ker_k)->capture_default_str();
    cmd_kernel->add_option("op", ker_op)->required();
    ParamFlags ker_params;
    ker_params.attach(cmd_kernel);

    // ---- solve --------------------------------------------------------------
    auto* cmd_solve = app.add_subcommand("solve", "affine solution set of op.x = target");
    std::string sol_module = "W", sol_op, sol_target;
    long sol_j = 6, sol_k = 6;
    cmd_solve->add_option("--module", sol_module)->capture_default_str();
    cmd_solve->add_option("--max-j", sol_j)->capture_default_str();
    cmd_solve->add_option("--max-k", sol_k)->capture_default_str();
    cmd_solve->add_option("op", sol_op)->required();
    cmd_solve->add_option("target", sol_target)->required();
    ParamFlags sol_params;
    sol_params.attach(cmd_solve);

    // ---- check --------------------------------------------------------------
    auto* cmd_check = app.add_subcommand("check", "run the verification battery");
    std::string check_id = "all";
    std::uint64_t check_seed = 1;
    long check_trials = 100;
    bool check_force = false, check_full = false;
    std::string mutate = "none";
    {
        std::string ids = "'all'";
        for (const auto& id : check_ids()) ids += ", " + id;
        cmd_check->add_option("id", check_id, "one of " + ids)->capture_default_str();
    }
    cmd_check->add_option("--seed", check_seed)->capture_default_str();
    cmd_check->add_option("--trials", check_trials)->capture_default_str();
    cmd_check->add_flag("--force", check_force);
    cmd_check->add_flag("--full-ideal", check_full);
    cmd_check->add_option("--mutate", mutate,
                          "fault injection: none, flip-central-sign, perturb-m5");

    // ---- probe ----------------------------------------------------------------
    auto* cmd_probe = app.add_subcommand("probe", "randomized simplicity probe");
    std::string probe_module = "Ind";
    std::uint64_t probe_seed = 1;
    long probe_trials = 100;
    bool probe_force = false;
    std::optional<long> probe_w, probe_j, probe_k;
    cmd_probe->add_option("--module", probe_module)->capture_default_str();
    cmd_probe->add_option("--seed", probe_seed)->capture_default_str();
    cmd_probe->add_option("--trials", probe_trials)->capture_default_str();
    cmd_probe->add_flag("--force", probe_force);
    cmd_probe->add_option("--max-weight", probe_w);
    cmd_probe->add_option("--max-j", probe_j);
    cmd_probe->add_option("--max-k", probe_k);
    ParamFlags probe_params;
    probe_params.attach(cmd_probe);

    // ---- classify-subalgebra ---------------------------------------------------
    auto* cmd_classify = app.add_subcommand("classify-subalgebra",
                                            "reproduce the codimension-one classification");
    long classify_kmax = 9;
    bool classify_full = false;
    cmd_classify->add_option("--kmax", classify_kmax)->capture_default_str();
    cmd_classify->add_flag("--full-ideal", classify_full);

    // ---- compare-index -----------------------------------------------------------
    auto* cmd_cmp = app.add_subcommand("compare-index", "compare two multi-indices");
    std::string cmp_a, cmp_b;
    cmd_cmp->add_option("a", cmp_a)->required();
    cmd_cmp->add_option("b", cmp_b)->required();

    for (auto* sc : app.get_subcommands([](CLI::App*) { return true; })) add_format(sc);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // help and version exit 0, usage errors exit 2
    }
    bool json = format == "json";
    if (!json && format != "text") throw DomainError("--format must be text or json");

    if (cmd_bracket->parsed()) {
        auto a = br_params.assignment();
        auto x = as_lie(eval_string(br_x));
        auto y = as_lie(eval_string(br_y));
        LieElt<RatFunc> xs, ys;
        for (const auto& [m, c] : x.modes()) xs.add_mode(m, substituted(c, a));
        xs.add_central(substituted(x.central(), a));
        for (const auto& [m, c] : y.modes()) ys.add_mode(m, substituted(c, a));
        ys.add_central(substituted(y.central(), a));
        auto r = bracket(xs, ys);
        std::cout << (json ? render_json(r) : render(r)) << "\n";
        return 0;
    }

    if (cmd_no->parsed()) {
        auto v = eval_string(no_x);
        if (v.kind == Value::Kind::Scalar)
            std::cout << (json ? "\"" + render(v.scalar) + "\"" : render(v.scalar)) << "\n";
        else if (v.kind == Value::Kind::Operator)
            std::cout << (json ? render_json(v.op) : render(v.op)) << "\n";
        else
            std::cout << (json ? render_json(v.mod) : render(v.mod)) << "\n";
        return 0;
    }

    if (cmd_act->parsed()) {
        auto a = act_params.assignment();
        Space space = parse_space(act_module);
        auto opv = eval_string(act_op);
        auto eltv = eval_string(act_elt);
        if (eltv.kind != Value::Kind::Module) throw DomainError("second argument must contain v");
        auto op = substituted_uea(as_operator(opv), a);
        auto x = substituted_mod(eltv.mod, a).cast(space);
        auto p = params_from(a);
        auto r = act(op, x, p, bounds_from(act_w, act_j, act_k));
        std::cout << (json ? render_json(r) : render(r)) << "\n";
        return 0;
    }

    if (cmd_kernel->parsed()) {
        auto a = ker_params.assignment();
        auto p = numeric_params_checked(a);
        Space space = parse_space(ker_module);
        auto op = numeric_uea(substituted_uea(as_operator(eval_string(ker_op)), a));
        auto basis = kernel(op, space, static_cast<std::uint32_t>(ker_j),
                            static_cast<std::uint32_t>(ker_k), p);
        if (json) {
            nlohmann::ordered_json out;
            out["dimension"] = basis.size();
            auto arr = nlohmann::ordered_json::array();
            for (const auto& b : basis) arr.push_back(nlohmann::ordered_json::parse(render_json(b)));
            out["basis"] = std::move(arr);
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "dimension " << basis.size() << "\n";
            for (const auto& b : basis) std::cout << render(b) << "\n";
        }
        return 0;
    }

    if (cmd_solve->parsed()) {
        auto a = sol_params.assignment();
        auto p = numeric_params_checked(a);
        Space space = parse_space(sol_module);
        auto op = numeric_uea(substituted_uea(as_operator(eval_string(sol_op)), a));
        auto targetv = eval_string(sol_target);
        if (targetv.kind != Value::Kind::Module) throw DomainError("target must contain v");
        auto target = numeric_mod(substituted_mod(targetv.mod, a)).cast(space);
        auto sol = solve_affine(op, target, static_cast<std::uint32_t>(sol_j),
                                static_cast<std::uint32_t>(sol_k), p);
        if (json) {
            nlohmann::ordered_json out;
            out["solvable"] = sol.solvable;
            if (sol.solvable) {
                out["particular"] = nlohmann::ordered_json::parse(render_json(sol.particular));
                auto arr = nlohmann::ordered_json::array();
                for (const auto& b : sol.kernel)
                    arr.push_back(nlohmann::ordered_json::parse(render_json(b)));
                out["kernel"] = std::move(arr);
            }
            std::cout << out.dump() << "\n";
        } else if (!sol.solvable) {
            std::cout << "no solution within bounds\n";
        } else {
            std::cout << "particular: " << render(sol.particular) << "\n";
            for (const auto& b : sol.kernel) std::cout << "kernel: " << render(b) << "\n";
        }
        return 0;
    }

    if (cmd_check->parsed()) {
        CheckConfig cfg;
        cfg.seed = check_seed;
        cfg.trials = check_trials;
        cfg.force = check_force;
        cfg.full_ideal = check_full;
        if (mutate == "flip-central-sign")
            cfg.mutation = Mutation::flip_central_sign;
        else if (mutate == "perturb-m5")
            cfg.mutation = Mutation::perturb_m5;
        else if (mutate != "none")
            throw DomainError("unknown mutation: " + mutate);

        std::vector<CheckReport> reports;
        if (check_id == "all")
            reports = run_all(cfg);
        else
            reports.push_back(run_check(check_id, cfg));

        bool all_pass = true;
        for (const auto& r : reports) {
            all_pass &= r.status == CheckStatus::pass;
            std::cout << (json ? r.to_json().dump() : r.to_text()) << "\n";
        }
        return all_pass ? 0 : 1;
    }

    if (cmd_probe->parsed()) {
        auto a = probe_params.assignment();
        auto p = numeric_params_checked(a);
        if (!p.conditions_hold() && !probe_force)
            throw DomainError(
                "parameters violate the simplicity conditions; pass --force to probe anyway");
        Space space = parse_space(probe_module);
        Bounds b = bounds_from(probe_w.has_value() ? probe_w : std::optional<long>(6),
                               probe_j.has_value() ? probe_j : std::optional<long>(4),
                               probe_k.has_value() ? probe_k : std::optional<long>(4));
        auto rep = probe_simplicity(space, p, probe_trials, probe_seed, b, probe_force);
        std::cout << (json ? rep.to_json().dump() : rep.to_text()) << "\n";
        return rep.status == CheckStatus::pass ? 0 : 1;
    }

    if (cmd_classify->parsed()) {
        ClassifyOptions opts;
        opts.kmax = classify_kmax;
        opts.full_ideal = classify_full;
        auto r = classify_codim_one(opts);
        if (json) {
            nlohmann::ordered_json out;
            out["kmax"] = r.kmax;
            out["reduced_basis"] = r.basis_saturated;
            out["a3_eq_a2_squared"] = r.member_a3;
            out["a4_eq_a2_cubed"] = r.member_a4;
            out["a3_power_membership"] = r.member_a3_power;
            out["converse_substitution"] = r.converse;
            if (r.full_ran) {
                out["full_ideal"] = {{"order1_membership", r.full_member_order1},
                                     {"order2_membership", r.full_member_order2}};
            }
            std::cout << out.dump() << "\n";
        } else {
            std::cout << "reduced basis (saturated ideal):\n";
            for (const auto& g : r.basis_saturated) std::cout << "  " << g << "\n";
            std::cout << "a3 - a2^2 reduces to 0: " << (r.member_a3 ? "yes" : "no") << "\n";
            std::cout << "a4 - a2^3 reduces to 0: " << (r.member_a4 ? "yes" : "no") << "\n";
            std::cout << "a3^6 - a3^5*a2^2 in unsaturated ideal: "
                      << (r.member_a3_power ? "yes" : "no") << "\n";
            std::cout << "converse substitution vanishes: " << (r.converse ? "yes" : "no") << "\n";
            if (r.full_ran)
                std::cout << "full ideal memberships: "
                          << (r.full_member_order1 ? "yes" : "no") << ", "
                          << (r.full_member_order2 ? "yes" : "no") << "\n";
        }
        return r.pass ? 0 : 1;
    }

    if (cmd_cmp->parsed()) {
        auto a = MultiIndex::from_string(cmp_a);
        auto b = MultiIndex::from_string(cmp_b);
        int c = compare(a, b);
        std::cout << (c < 0 ? "less" : c > 0 ? "greater" : "equal") << "\n";
        return 0;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const vir::ParseError& e) {
        std::cerr << "error (parse): " << e.what() << "\n";
        return 2;
    } catch (const vir::DomainError& e) {
        std::cerr << "error (usage): " << e.what() << "\n";
        return 2;
    } catch (const vir::Error& e) {
        std::cerr << "error (" << e.kind() << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
