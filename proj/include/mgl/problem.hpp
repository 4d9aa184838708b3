#pragma once

#include <atomic>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "mgl/audit.hpp"
#include "mgl/cosets.hpp"

namespace mgl {

using Json = nlohmann::ordered_json;

inline constexpr const char* kProblemSchema = "mgl-problem/1";
inline constexpr const char* kReportSchema = "mgl-report/1";

struct Limits {
    std::uint64_t search_space = 100000000;
    std::uint64_t classes = 1000000;
};

struct Problem {
    GroupPresentation group;
    Json group_echo;
    std::vector<Json> tasks;
    Limits limits;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> offset_to_line_col(const std::string& text,
                                                              std::size_t offset) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return {line, col};
}

inline std::string json_scalar_string(const Json& v, const char* what) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    throw Error(Errc::InvalidProblem, std::string(what) + " must be a string or an integer");
}

inline Rat json_rat(const Json& v, const char* what) {
    return rat_from_string(json_scalar_string(v, what));
}

inline long json_long(const Json& v, const char* what) {
    if (v.is_number_integer()) return v.get<long>();
    if (v.is_string()) return std::stol(v.get<std::string>());
    throw Error(Errc::InvalidProblem, std::string(what) + " must be an integer");
}

inline FieldMode parse_mode(const Json& group) {
    std::string mode = group.value("mode", std::string("rational"));
    if (mode == "rational") return FieldMode::rational();
    if (mode == "formal_tau") return FieldMode::formal_tau();
    if (mode == "algebraic_tau") {
        if (!group.contains("minimal_polynomial"))
            throw Error(Errc::InvalidProblem, "algebraic_tau mode needs minimal_polynomial");
        return FieldMode::algebraic_tau(
            poly_from_string(group.at("minimal_polynomial").get<std::string>()));
    }
    throw Error(Errc::InvalidProblem, "unknown mode '" + mode + "'");
}

inline GroupPresentation parse_group(const Json& group) {
    if (!group.contains("basis"))
        throw Error(Errc::InvalidProblem, "group declaration needs a basis");
    FieldMode kmode = parse_mode(group);
    std::vector<Rat> basis;
    for (const auto& b : group.at("basis")) basis.push_back(json_rat(b, "basis element"));
    return validate_basis(basis, kmode, group.value("divisible", false));
}

inline GroupElement parse_element(const Json& v, const GroupPresentation& pres) {
    if (!v.is_array()) throw Error(Errc::InvalidProblem, "element must be an exponent array");
    KVec exps;
    for (const auto& e : v)
        exps.push_back(kscalar_from_string(pres.mode(), json_scalar_string(e, "exponent")));
    return GroupElement(pres, std::move(exps));
}

inline std::vector<GroupElement> parse_elements(const Json& v, const GroupPresentation& pres) {
    std::vector<GroupElement> out;
    for (const auto& e : v) out.push_back(parse_element(e, pres));
    return out;
}

inline TorusSpec parse_torus(const Json& v, const FieldMode& mode) {
    std::size_t m = v.value("m", 0u);
    if (!v.contains("n")) throw Error(Errc::InvalidProblem, "torus needs variable arity n");
    std::size_t n = v.at("n").get<std::size_t>();
    KMat rows;
    if (v.contains("rows"))
        for (const auto& row : v.at("rows")) {
            KVec r;
            for (const auto& x : row)
                r.push_back(kscalar_from_string(mode, json_scalar_string(x, "torus entry")));
            rows.push_back(std::move(r));
        }
    return TorusSpec::make(mode, m, n, rows);
}

inline Json torus_to_json(const TorusSpec& t) {
    Json rows = Json::array();
    for (const auto& row : t.rows()) {
        Json r = Json::array();
        for (const auto& x : row) r.push_back(kscalar_to_string(x));
        rows.push_back(std::move(r));
    }
    return Json{{"m", t.params()}, {"n", t.vars()}, {"rows", std::move(rows)}};
}

inline VarietySpec parse_variety(const Json& v, const GroupPresentation& pres) {
    std::string kind = v.value("kind", std::string());
    if (kind == "points") {
        std::vector<std::vector<Rat>> pts;
        std::size_t n = 0;
        for (const auto& p : v.at("points")) {
            std::vector<Rat> row;
            for (const auto& x : p) row.push_back(json_rat(x, "point coordinate"));
            n = row.size();
            pts.push_back(std::move(row));
        }
        if (v.contains("n")) n = v.at("n").get<std::size_t>();
        return VarietySpec::points(n, std::move(pts));
    }
    if (kind == "linear") {
        QMat a;
        QVec c;
        for (const auto& row : v.at("matrix")) {
            QVec r;
            for (const auto& x : row) r.push_back(json_rat(x, "matrix entry"));
            a.push_back(std::move(r));
        }
        for (const auto& x : v.at("constants")) c.push_back(json_rat(x, "constant"));
        std::size_t n = a.empty() ? v.value("n", 0u) : a.front().size();
        return VarietySpec::linear(n, std::move(a), std::move(c));
    }
    if (kind == "binomial") {
        TorusSpec t = parse_torus(v.at("torus"), pres.mode());
        std::vector<GroupElement> shift = parse_elements(v.at("shift"), pres);
        return VarietySpec::binomial(std::move(t), std::move(shift));
    }
    throw Error(Errc::InvalidProblem, "variety kind must be points, linear, or binomial");
}

inline Json exponents_to_json(const GroupElement& g) {
    Json out = Json::array();
    for (const auto& e : g.exponents()) out.push_back(kscalar_to_string(e));
    return out;
}

inline Json values_to_json(const std::vector<Rat>& values) {
    Json out = Json::array();
    for (const auto& v : values) out.push_back(rat_to_string(v));
    return out;
}

}  // namespace detail

inline Problem parse_problem(const std::string& text) {
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::offset_to_line_col(text, e.byte ? e.byte - 1 : 0);
        throw ParseFailure(e.what(), line, col);
    }
    if (!doc.is_object() || !doc.contains("group"))
        throw Error(Errc::InvalidProblem, "problem file needs exactly one group declaration");
    Problem p;
    p.group_echo = doc.at("group");
    p.group = detail::parse_group(doc.at("group"));
    if (doc.contains("limits")) {
        const Json& l = doc.at("limits");
        if (l.contains("search_space"))
            p.limits.search_space = l.at("search_space").get<std::uint64_t>();
        if (l.contains("classes")) p.limits.classes = l.at("classes").get<std::uint64_t>();
        if (p.limits.search_space == 0 || p.limits.classes == 0)
            throw Error(Errc::InvalidProblem, "limits must be positive");
    }
    if (doc.contains("tasks"))
        for (const auto& t : doc.at("tasks")) p.tasks.push_back(t);
    return p;
}

/// Executes one task record; never throws — failures come back as error
/// records embedded in the result.
inline Json run_task(const Problem& p, const Json& task) {
    std::string type = task.value("type", std::string());
    Json out{{"task", type.empty() ? Json() : Json(type)}, {"ok", true}};
    try {
        if (type == "index") {
            long d = detail::json_long(task.at("d"), "d");
            out["d"] = d;
            out["index"] = subgroup_index(p.group, Int(d)).str();
        } else if (type == "ldim" || type == "lfo") {
            auto elements = detail::parse_elements(task.at("elements"), p.group);
            std::vector<GroupElement> over;
            if (task.contains("over")) over = detail::parse_elements(task.at("over"), p.group);
            out["value"] = type == "ldim" ? ldim_k(elements, over, p.group)
                                          : lfo(elements, over, p.group);
        } else if (type == "torus-dim") {
            TorusSpec t = detail::parse_torus(task.at("torus"), p.group.mode());
            out["dim"] = torus_dim(t);
        } else if (type == "minimal-torus") {
            auto a = detail::parse_elements(task.at("a"), p.group);
            std::vector<GroupElement> b;
            if (task.contains("b")) b = detail::parse_elements(task.at("b"), p.group);
            TorusSpec t = minimal_torus(b, a, p.group);
            out["torus"] = detail::torus_to_json(t);
            out["dim"] = torus_dim(t);
        } else if (type == "mann-solve") {
            MannProblem mp;
            mp.group = p.group;
            for (const auto& c : task.at("coeffs"))
                mp.coefficients.push_back(detail::json_rat(c, "coefficient"));
            if (task.contains("rhs")) mp.rhs = detail::json_rat(task.at("rhs"), "rhs");
            mp.bound = detail::json_long(task.at("bound"), "bound");
            MannSolutionSet sols = enumerate_solutions(mp, p.limits.search_space);
            out["bound"] = mp.bound;
            Json list = Json::array();
            for (const auto& s : sols.solutions) {
                Json rec{{"values", detail::values_to_json(s.values)},
                         {"non_degenerate", s.non_degenerate}};
                Json exps = Json::array();
                for (const auto& g : s.x) exps.push_back(detail::exponents_to_json(g));
                rec["exponents"] = std::move(exps);
                if (s.vanishing_subset) {
                    Json subset = Json::array();
                    for (auto i : *s.vanishing_subset) subset.push_back(i + 1);
                    rec["vanishing_subset"] = std::move(subset);
                }
                list.push_back(std::move(rec));
            }
            out["solutions"] = std::move(list);
            out["non_degenerate_count"] = sols.non_degenerate_count();
            if (task.contains("stabilize")) {
                std::vector<long> bounds;
                for (const auto& b : task.at("stabilize"))
                    bounds.push_back(detail::json_long(b, "stabilize bound"));
                StabilizationReport rep = stabilization_report(mp, bounds, p.limits.search_space);
                Json counts = Json::array();
                for (const auto& [b, c] : rep.counts)
                    counts.push_back(Json{{"bound", b}, {"non_degenerate_count", c}});
                out["stabilization"] = Json{{"counts", std::move(counts)}, {"stable", rep.stable}};
            }
        } else if (type == "coset-normalize") {
            std::size_t arity = task.at("arity").get<std::size_t>();
            CosetExpr expr = parse_coset_expr(task.at("expr").get<std::string>());
            NormalizeResult nr = coset_normalize(expr, p.group, arity, p.limits.classes);
            out["modulus"] = nr.classes.modulus();
            out["arity"] = nr.classes.arity();
            out["group_rank"] = nr.classes.group_rank();
            out["count"] = nr.classes.classes().size();
            Json classes = Json::array();
            for (auto code : nr.classes.classes()) {
                Json digits = Json::array();
                for (auto d : nr.classes.decode(code)) digits.push_back(d);
                classes.push_back(std::move(digits));
            }
            out["classes"] = std::move(classes);
            if (nr.warning) out["warning"] = *nr.warning;
        } else if (type == "special-check") {
            VarietySpec w = detail::parse_variety(task.at("variety"), p.group);
            TorusSpec l = detail::parse_torus(task.at("torus"), p.group.mode());
            std::optional<std::vector<std::vector<Rat>>> points;
            std::optional<long> bound;
            if (task.contains("points")) {
                points.emplace();
                for (const auto& pt : task.at("points")) {
                    std::vector<Rat> row;
                    for (const auto& x : pt) row.push_back(detail::json_rat(x, "point"));
                    points->push_back(std::move(row));
                }
            }
            if (task.contains("search_bound"))
                bound = detail::json_long(task.at("search_bound"), "search_bound");
            SpecialVerdict v = special_pair_check(w, l, p.group, points ? &*points : nullptr,
                                                  bound, p.limits.search_space);
            out["special"] = v.special;
            Json ws = Json::array();
            for (const auto& wit : v.witnesses) {
                Json proj = Json::array();
                for (auto i : wit.projection) proj.push_back(i + 1);
                ws.push_back(Json{{"point", detail::values_to_json(wit.point)},
                                  {"projection", std::move(proj)},
                                  {"dim_w_fiber", wit.dim_w_fiber},
                                  {"dim_l_fiber", wit.dim_l_fiber},
                                  {"threshold", wit.threshold}});
            }
            out["witnesses"] = std::move(ws);
            if (v.note) out["note"] = *v.note;
        } else if (type == "ml-cover") {
            VarietySpec w = detail::parse_variety(task.at("variety"), p.group);
            long bound = detail::json_long(task.at("bound"), "bound");
            MLCover cover = compute_ml_cover(w, p.group, bound, p.limits.search_space);
            long vbound = task.contains("verify_bound")
                              ? detail::json_long(task.at("verify_bound"), "verify_bound")
                              : bound;
            VerifyResult vr = verify_cover(cover, w, p.group, vbound, p.limits.search_space);
            out["bound"] = bound;
            Json items = Json::array();
            for (const auto& item : cover.items) {
                std::vector<Rat> values;
                for (const auto& g : item.g) values.push_back(eval_rational(g));
                Json rows = Json::array();
                for (const auto& row : item.char_rows) {
                    Json r = Json::array();
                    for (const auto& x : row) r.push_back(x.str());
                    rows.push_back(std::move(r));
                }
                Json exps = Json::array();
                for (const auto& g : item.g) exps.push_back(detail::exponents_to_json(g));
                items.push_back(Json{{"g_values", detail::values_to_json(values)},
                                     {"g_exponents", std::move(exps)},
                                     {"torus_rows", std::move(rows)},
                                     {"dim", torus_dim(item.torus)},
                                     {"provenance", item.provenance}});
            }
            out["items"] = std::move(items);
            out["verified"] = vr.ok;
            out["verify_bound"] = vbound;
            if (!vr.ok) {
                Json cex = Json::array();
                for (const auto& c : vr.counterexamples)
                    cex.push_back(detail::values_to_json(c));
                out["counterexamples"] = std::move(cex);
            }
            if (task.value("emit_axiom", false)) out["axiom"] = emit_ml_axiom(cover);
        } else if (type == "schanuel-audit") {
            auto elements = detail::parse_elements(task.at("elements"), p.group);
            std::optional<std::size_t> td;
            if (task.contains("declared_td")) td = task.at("declared_td").get<std::size_t>();
            SchanuelReport rep = schanuel_audit(elements, td, p.group);
            out["lfo"] = rep.lfo_value;
            out["ldo"] = rep.ldo_value;
            out["defect"] = rep.defect;
            if (rep.declared_td) out["declared_td"] = *rep.declared_td;
            out["required_td"] = rep.defect;
            out["verdict"] = schanuel_verdict_name(rep.verdict);
        } else if (type == "density-check") {
            out["dense"] = density_check(p.group);
        } else if (type == "a4-check") {
            TorusSpec l = detail::parse_torus(task.at("torus"), p.group.mode());
            long bound = task.contains("bound") ? detail::json_long(task.at("bound"), "bound")
                                                : 8;
            A4Verdict v = a4_emptiness(l, p.group, bound);
            out["verdict"] = a4_kind_name(v.kind);
            out["note"] = v.note;
            if (!v.witness.empty()) {
                std::vector<Rat> values;
                for (const auto& g : v.witness) values.push_back(eval_rational(g));
                out["witness"] = detail::values_to_json(values);
            }
        } else if (type == "a3-check") {
            std::vector<Rat> gb;
            for (const auto& b : task.at("gamma_basis"))
                gb.push_back(detail::json_rat(b, "gamma basis element"));
            bool gdiv = task.value("gamma_divisible", p.group.divisible());
            GroupPresentation gamma = validate_basis(gb, p.group.mode(), gdiv);
            long d_max = detail::json_long(task.at("d_max"), "d_max");
            A3Report rep = a3_index_check(gamma, p.group, d_max);
            out["equal"] = rep.equal;
            Json det = Json::array();
            for (const auto& d : rep.details)
                det.push_back(Json{{"d", d.d.str()},
                                   {"gamma_index", d.gamma_index.str()},
                                   {"g_index", d.g_index.str()}});
            out["details"] = std::move(det);
        } else {
            throw Error(Errc::InvalidProblem, "unknown task type '" + type + "'");
        }
    } catch (const Error& e) {
        Json err{{"task", type.empty() ? Json() : Json(type)}, {"ok", false}};
        err["error"] = Json{{"code", e.code_name()}, {"message", e.what()}};
        return err;
    } catch (const std::exception& e) {
        Json err{{"task", type.empty() ? Json() : Json(type)}, {"ok", false}};
        err["error"] = Json{{"code", "INVALID_PROBLEM"}, {"message", e.what()}};
        return err;
    }
    return out;
}

/// Runs all tasks (optionally across threads); results preserve input order,
/// and the report body is fully deterministic.
inline Json run_problem(const Problem& p, unsigned jobs = 1) {
    std::vector<Json> results(p.tasks.size());
    if (jobs <= 1 || p.tasks.size() <= 1) {
        for (std::size_t i = 0; i < p.tasks.size(); ++i) results[i] = run_task(p, p.tasks[i]);
    } else {
        std::vector<std::thread> pool;
        std::atomic<std::size_t> next{0};
        unsigned count = std::min<unsigned>(jobs, static_cast<unsigned>(p.tasks.size()));
        for (unsigned t = 0; t < count; ++t)
            pool.emplace_back([&] {
                while (true) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= p.tasks.size()) return;
                    results[i] = run_task(p, p.tasks[i]);
                }
            });
        for (auto& th : pool) th.join();
    }
    Json report{{"schema", kReportSchema}, {"group", p.group_echo}};
    report["results"] = Json::array();
    for (auto& r : results) report["results"].push_back(std::move(r));
    return report;
}

struct RunOutcome {
    std::string report_text;
    int exit_code = 0;
};

inline RunOutcome run_problem_text(const std::string& text, unsigned jobs = 1) {
    RunOutcome out;
    Json report;
    try {
        Problem p = parse_problem(text);
        report = run_problem(p, jobs);
        out.exit_code = 0;
        for (const auto& r : report.at("results"))
            if (!r.value("ok", false)) out.exit_code = 2;
    } catch (const Error& e) {
        report = Json{{"schema", kReportSchema},
                      {"error", Json{{"code", e.code_name()}, {"message", e.what()}}}};
        out.exit_code = 1;
    }
    out.report_text = report.dump(2) + "\n";
    return out;
}

}  // namespace mgl
