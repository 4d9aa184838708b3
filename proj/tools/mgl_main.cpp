// Batch front-end: problem-file runner, acceptance selftest, and direct
// subcommands mirroring the problem-file task payloads. Every subcommand
// routes through the same report machinery, so output is deterministic and
// all numeric values are exact.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mgl/selftest.hpp"

namespace {

using mgl::Json;

struct GroupFlags {
    std::string basis;
    std::string mode = "rational";
    std::string min_poly;
    bool divisible = false;
};

void add_group_flags(CLI::App* cmd, GroupFlags& g) {
    cmd->add_option("--basis", g.basis, "group basis, comma separated (e.g. 2,3 or 2,3/5)")
        ->required();
    cmd->add_option("--mode", g.mode, "field mode: rational, formal_tau, algebraic_tau");
    cmd->add_option("--min-poly", g.min_poly, "minimal polynomial for algebraic_tau mode");
    cmd->add_flag("--divisible", g.divisible, "divisible-closure (Delta) semantics");
}

Json group_json(const GroupFlags& g) {
    Json out{{"mode", g.mode}};
    if (!g.min_poly.empty()) out["minimal_polynomial"] = g.min_poly;
    Json basis = Json::array();
    std::stringstream ss(g.basis);
    std::string item;
    while (std::getline(ss, item, ',')) basis.push_back(item);
    out["basis"] = std::move(basis);
    out["divisible"] = g.divisible;
    return out;
}

// Splits "[1,0],[0,1]" (or "[1],[t]") into an array of exponent arrays.
Json parse_vector_list(const std::string& text) {
    Json out = Json::array();
    Json current = Json::array();
    std::string token;
    int depth = 0;
    auto flush_token = [&]() {
        std::size_t a = token.find_first_not_of(" \t");
        std::size_t b = token.find_last_not_of(" \t");
        if (a != std::string::npos) current.push_back(token.substr(a, b - a + 1));
        token.clear();
    };
    for (char c : text) {
        if (c == '[') {
            if (++depth == 1) { current = Json::array(); continue; }
        } else if (c == ']') {
            if (--depth == 0) {
                flush_token();
                out.push_back(current);
                continue;
            }
        } else if (c == ',' && depth == 1) {
            flush_token();
            continue;
        } else if (c == ',' && depth == 0) {
            continue;
        }
        if (depth >= 1) token += c;
    }
    if (depth != 0) throw mgl::Error(mgl::Errc::ParseError, "unbalanced brackets in " + text);
    return out;
}

// A value that is either inline JSON or a path to a JSON file.
Json json_or_file(const std::string& text) {
    std::string trimmed = text;
    std::size_t a = trimmed.find_first_not_of(" \t\n");
    if (a != std::string::npos && trimmed[a] == '{') return Json::parse(trimmed);
    std::ifstream in(text);
    if (!in) throw mgl::Error(mgl::Errc::ParseError, "cannot open file " + text);
    std::stringstream buf;
    buf << in.rdbuf();
    return Json::parse(buf.str());
}

int emit_report(const Json& problem, unsigned jobs, const std::string& out_path) {
    mgl::RunOutcome outcome = mgl::run_problem_text(problem.dump(), jobs);
    if (out_path.empty()) {
        std::cout << outcome.report_text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        out << outcome.report_text;
    }
    return outcome.exit_code;
}

int run_single_task(const GroupFlags& g, Json task, const std::string& out_path) {
    Json problem{{"schema", mgl::kProblemSchema}, {"group", group_json(g)}};
    problem["tasks"] = Json::array({std::move(task)});
    return emit_report(problem, 1, out_path);
}

int run_selftest() {
    bool all = true;
    std::vector<mgl::CriterionResult> results = mgl::selftest_run_all();
    for (std::size_t i = 0; i < results.size(); ++i) {
        const auto& r = results[i];
        all = all && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << r.name
                  << "): " << r.detail << "\n";
    }
    for (const auto& r : mgl::selftest_corpus_entries()) {
        all = all && r.pass;
        std::cout << (r.pass ? "PASS" : "FAIL") << " " << r.name << ": " << r.detail << "\n";
    }
    return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact multiplicative-group lattice toolkit"};
    app.require_subcommand(1);

    // --- run ---------------------------------------------------------------
    std::string run_file, run_out;
    unsigned run_jobs = 1;
    CLI::App* run = app.add_subcommand("run", "run a problem file and print the report");
    run->add_option("file", run_file, "problem file (JSON)")->required();
    run->add_option("--out", run_out, "write the report to a file instead of stdout");
    run->add_option("--jobs", run_jobs, "run tasks concurrently (report order is preserved)");

    CLI::App* selftest =
        app.add_subcommand("selftest", "run the bundled acceptance corpus and criteria");

    // --- direct subcommands --------------------------------------------------
    struct {
        GroupFlags g;
        std::string coeffs, rhs = "1", stabilize, out;
        long bound = 10;
    } mann;
    CLI::App* mann_cmd = app.add_subcommand("mann-solve", "solve a Mann equation by bounded search");
    add_group_flags(mann_cmd, mann.g);
    mann_cmd->add_option("--coeffs", mann.coeffs, "equation coefficients, comma separated")
        ->required();
    mann_cmd->add_option("--rhs", mann.rhs, "right-hand side (default 1)");
    mann_cmd->add_option("--bound", mann.bound, "exponent bound")->required();
    mann_cmd->add_option("--stabilize", mann.stabilize, "ascending bounds for the stability report");
    mann_cmd->add_option("--out", mann.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string elements, over, out;
    } dim[2];
    CLI::App* ldim_cmd = app.add_subcommand("ldim", "relative K-linear dimension of elements");
    CLI::App* lfo_cmd = app.add_subcommand("lfo", "relative Q-linear dimension of elements");
    for (int i = 0; i < 2; ++i) {
        CLI::App* c = i == 0 ? ldim_cmd : lfo_cmd;
        add_group_flags(c, dim[i].g);
        c->add_option("--elements", dim[i].elements, "exponent vectors, e.g. [1],[t]")->required();
        c->add_option("--over", dim[i].over, "base tuple exponent vectors");
        c->add_option("--out", dim[i].out, "write the report to a file");
    }

    struct {
        GroupFlags g;
        std::string torus, out;
    } tdim;
    CLI::App* tdim_cmd = app.add_subcommand("torus-dim", "dimension of a basic torus");
    add_group_flags(tdim_cmd, tdim.g);
    tdim_cmd->add_option("--torus", tdim.torus, "torus JSON (inline or file)")->required();
    tdim_cmd->add_option("--out", tdim.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string a, b, out;
    } mint;
    CLI::App* mint_cmd =
        app.add_subcommand("minimal-torus", "minimal torus over b containing a");
    add_group_flags(mint_cmd, mint.g);
    mint_cmd->add_option("--a", mint.a, "tuple a as exponent vectors")->required();
    mint_cmd->add_option("--b", mint.b, "parameter tuple b as exponent vectors");
    mint_cmd->add_option("--out", mint.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string expr, out;
        std::size_t arity = 1;
    } cnorm;
    CLI::App* cnorm_cmd =
        app.add_subcommand("coset-normalize", "normalize a boolean coset constraint tree");
    add_group_flags(cnorm_cmd, cnorm.g);
    cnorm_cmd->add_option("--arity", cnorm.arity, "tuple arity n")->required();
    cnorm_cmd->add_option("--expr", cnorm.expr, "prefix constraint tree")->required();
    cnorm_cmd->add_option("--out", cnorm.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string variety, torus, points, out;
        long search_bound = -1;
    } spc;
    CLI::App* spc_cmd = app.add_subcommand("special-check", "check specialness of a pair (W, L)");
    add_group_flags(spc_cmd, spc.g);
    spc_cmd->add_option("--variety", spc.variety, "variety JSON (inline or file)")->required();
    spc_cmd->add_option("--torus", spc.torus, "torus JSON (inline or file)")->required();
    spc_cmd->add_option("--points", spc.points, "candidate points, e.g. [4,8],[2,3]");
    spc_cmd->add_option("--search-bound", spc.search_bound, "search group points up to this bound");
    spc_cmd->add_option("--out", spc.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string variety, out;
        long bound = 10, verify_bound = -1;
        bool emit_axiom = false;
    } mlc;
    CLI::App* mlc_cmd = app.add_subcommand("ml-cover", "compute and verify a Mordell-Lang cover");
    add_group_flags(mlc_cmd, mlc.g);
    mlc_cmd->add_option("--variety", mlc.variety, "variety JSON (inline or file)")->required();
    mlc_cmd->add_option("--bound", mlc.bound, "Mann search bound")->required();
    mlc_cmd->add_option("--verify-bound", mlc.verify_bound, "verification bound (default: bound)");
    mlc_cmd->add_flag("--emit-axiom", mlc.emit_axiom, "emit the Mordell-Lang axiom text");
    mlc_cmd->add_option("--out", mlc.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string elements, out;
        long td = -1;
    } sch;
    CLI::App* sch_cmd = app.add_subcommand("schanuel-audit", "Schanuel condition instance report");
    add_group_flags(sch_cmd, sch.g);
    sch_cmd->add_option("--elements", sch.elements, "exponent vectors, e.g. [1],[t]")->required();
    sch_cmd->add_option("--td", sch.td, "declared transcendence degree");
    sch_cmd->add_option("--out", sch.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string out;
    } dens;
    CLI::App* dens_cmd = app.add_subcommand("density-check", "density of the group in R_>0");
    add_group_flags(dens_cmd, dens.g);
    dens_cmd->add_option("--out", dens.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string torus, out;
        long bound = 8;
    } a4;
    CLI::App* a4_cmd = app.add_subcommand("a4-check", "emptiness audit for a non-rational torus");
    add_group_flags(a4_cmd, a4.g);
    a4_cmd->add_option("--torus", a4.torus, "torus JSON (inline or file)")->required();
    a4_cmd->add_option("--bound", a4.bound, "witness search bound");
    a4_cmd->add_option("--out", a4.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string gamma_basis, out;
        long d_max = 5;
        bool gamma_divisible = false;
    } a3;
    CLI::App* a3_cmd = app.add_subcommand("a3-check", "compare power-subgroup indices");
    add_group_flags(a3_cmd, a3.g);
    a3_cmd->add_option("--gamma-basis", a3.gamma_basis, "subgroup basis, comma separated")
        ->required();
    a3_cmd->add_option("--d-max", a3.d_max, "compare indices for d = 1..d_max");
    a3_cmd->add_flag("--gamma-divisible", a3.gamma_divisible, "divisible subgroup semantics");
    a3_cmd->add_option("--out", a3.out, "write the report to a file");

    struct {
        GroupFlags g;
        std::string out;
        long d = 2;
    } idx;
    CLI::App* idx_cmd = app.add_subcommand("index", "index of the d-th power subgroup");
    add_group_flags(idx_cmd, idx.g);
    idx_cmd->add_option("--d", idx.d, "power")->required();
    idx_cmd->add_option("--out", idx.out, "write the report to a file");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            std::ifstream in(run_file);
            if (!in) {
                std::cerr << "cannot open " << run_file << "\n";
                return 1;
            }
            std::stringstream buf;
            buf << in.rdbuf();
            mgl::RunOutcome outcome = mgl::run_problem_text(buf.str(), run_jobs);
            if (run_out.empty()) std::cout << outcome.report_text;
            else std::ofstream(run_out, std::ios::binary) << outcome.report_text;
            return outcome.exit_code;
        }
        if (selftest->parsed()) return run_selftest();

        if (mann_cmd->parsed()) {
            Json task{{"type", "mann-solve"}};
            Json coeffs = Json::array();
            std::stringstream ss(mann.coeffs);
            std::string item;
            while (std::getline(ss, item, ',')) coeffs.push_back(item);
            task["coeffs"] = std::move(coeffs);
            task["rhs"] = mann.rhs;
            task["bound"] = mann.bound;
            if (!mann.stabilize.empty()) {
                Json bounds = Json::array();
                std::stringstream bs(mann.stabilize);
                while (std::getline(bs, item, ',')) bounds.push_back(std::stol(item));
                task["stabilize"] = std::move(bounds);
            }
            return run_single_task(mann.g, std::move(task), mann.out);
        }
        for (int i = 0; i < 2; ++i) {
            CLI::App* c = i == 0 ? ldim_cmd : lfo_cmd;
            if (!c->parsed()) continue;
            Json task{{"type", i == 0 ? "ldim" : "lfo"}};
            task["elements"] = parse_vector_list(dim[i].elements);
            if (!dim[i].over.empty()) task["over"] = parse_vector_list(dim[i].over);
            return run_single_task(dim[i].g, std::move(task), dim[i].out);
        }
        if (tdim_cmd->parsed()) {
            Json task{{"type", "torus-dim"}, {"torus", json_or_file(tdim.torus)}};
            return run_single_task(tdim.g, std::move(task), tdim.out);
        }
        if (mint_cmd->parsed()) {
            Json task{{"type", "minimal-torus"}, {"a", parse_vector_list(mint.a)}};
            if (!mint.b.empty()) task["b"] = parse_vector_list(mint.b);
            return run_single_task(mint.g, std::move(task), mint.out);
        }
        if (cnorm_cmd->parsed()) {
            Json task{{"type", "coset-normalize"}, {"arity", cnorm.arity}, {"expr", cnorm.expr}};
            return run_single_task(cnorm.g, std::move(task), cnorm.out);
        }
        if (spc_cmd->parsed()) {
            Json task{{"type", "special-check"},
                      {"variety", json_or_file(spc.variety)},
                      {"torus", json_or_file(spc.torus)}};
            if (!spc.points.empty()) task["points"] = parse_vector_list(spc.points);
            if (spc.search_bound >= 0) task["search_bound"] = spc.search_bound;
            return run_single_task(spc.g, std::move(task), spc.out);
        }
        if (mlc_cmd->parsed()) {
            Json task{{"type", "ml-cover"},
                      {"variety", json_or_file(mlc.variety)},
                      {"bound", mlc.bound}};
            if (mlc.verify_bound >= 0) task["verify_bound"] = mlc.verify_bound;
            if (mlc.emit_axiom) task["emit_axiom"] = true;
            return run_single_task(mlc.g, std::move(task), mlc.out);
        }
        if (sch_cmd->parsed()) {
            Json task{{"type", "schanuel-audit"}, {"elements", parse_vector_list(sch.elements)}};
            if (sch.td >= 0) task["declared_td"] = sch.td;
            return run_single_task(sch.g, std::move(task), sch.out);
        }
        if (dens_cmd->parsed())
            return run_single_task(dens.g, Json{{"type", "density-check"}}, dens.out);
        if (a4_cmd->parsed()) {
            Json task{{"type", "a4-check"}, {"torus", json_or_file(a4.torus)}, {"bound", a4.bound}};
            return run_single_task(a4.g, std::move(task), a4.out);
        }
        if (a3_cmd->parsed()) {
            Json task{{"type", "a3-check"}, {"d_max", a3.d_max}};
            Json gb = Json::array();
            std::stringstream ss(a3.gamma_basis);
            std::string item;
            while (std::getline(ss, item, ',')) gb.push_back(item);
            task["gamma_basis"] = std::move(gb);
            if (a3.gamma_divisible) task["gamma_divisible"] = true;
            return run_single_task(a3.g, std::move(task), a3.out);
        }
        if (idx_cmd->parsed())
            return run_single_task(idx.g, Json{{"type", "index"}, {"d", idx.d}}, idx.out);
    } catch (const mgl::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
    return 0;
}
