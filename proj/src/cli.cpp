#include "tatespace/cli.hpp"

#include "tatespace/bidirected.hpp"
#include "tatespace/duality.hpp"
#include "tatespace/generators.hpp"
#include "tatespace/json_io.hpp"
#include "tatespace/laws.hpp"
#include "tatespace/tensor.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tatespace {

namespace {

struct RunConfig {
    std::uint64_t field = 2;
    std::size_t depth = 4;
    std::optional<std::uint64_t> seed;
    std::string out_path;
    std::string truth_path;
    std::string suite = "laws";
    std::string kind = "grid";
    std::string op = "star";
    std::vector<std::string> inputs;
};

/// Exit-code carrying failure inside a command.
struct CommandFailure {
    int code;
    Json body;
};

[[noreturn]] void malformed(const std::string& path, const std::string& message)
{
    throw InputError(path, message);
}

std::string read_input(const std::string& path, std::istream& in)
{
    std::ostringstream buf;
    if (path.empty() || path == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(path, std::ios::binary);
    if (!file)
        malformed("", "cannot read '" + path + "'");
    buf << file.rdbuf();
    return buf.str();
}

std::uint64_t resolve_seed(const RunConfig& cfg)
{
    if (cfg.seed)
        return *cfg.seed;
    if (const char* env = std::getenv("TATESPACE_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && end != env)
            return v;
        malformed("", "TATESPACE_SEED is not an unsigned integer");
    }
    return 1;
}

FieldSpec field_of(const RunConfig& cfg)
{
    try {
        return FieldSpec(cfg.field);
    } catch (const PreconditionError& e) {
        malformed("", std::string("--field: ") + e.what());
    }
}

std::string dump(const Json& j)
{
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- decompose

Json pairing_pieces_json(const PairingAssembly& a)
{
    Json out;
    out["report"] = to_json(a.report);
    Json skipped = Json::array();
    for (std::size_t e : a.skipped)
        skipped.push_back(e + 1);
    out["skipped_entries"] = std::move(skipped);
    Json pieces = Json::array();
    for (const InducedPiece& p : a.pieces) {
        Json jp;
        jp["source"] = Json::array({p.src_r + 1, p.src_c + 1});
        jp["target"] = Json::array({p.tgt_r + 1, p.tgt_c + 1});
        jp["induced"] = to_json(p.induced);
        jp["normal_form"] = to_json(p.normal_form);
        pieces.push_back(std::move(jp));
    }
    out["pieces"] = std::move(pieces);
    return out;
}

std::string cmd_decompose(const RunConfig& cfg, std::istream& in)
{
    const GridDocument doc = grid_from_json(parse_json_text(read_input(cfg.inputs.empty() ? "-" : cfg.inputs[0], in)),
                                            field_of(cfg));
    if (!doc.ses)
        malformed("/ses", "decompose needs the short exact sequence witness 'ses'");
    const BidirectedGrid& g = doc.grid;
    const SESWitness& w = *doc.ses;
    const GridReport rep = validate_grid(g, &w);
    if (!rep.ok) {
        Json body;
        body["kind"] = "grid-report";
        body.update(to_json(rep));
        throw CommandFailure{1, body};
    }
    const GridChangeOfBasis basis = split_grid(g, w);
    const RFHDecomposition d = rfh_decompose(g, w, basis);
    const KappaCertificate k = kappa_check(g, w, basis);
    Json out = to_json(d, g.m, g.n);
    out["kappa"] = to_json(k);
    bool ok = k.ok;
    if (doc.product) {
        const PairingAssembly a = assemble_product(g, w, basis, *doc.product);
        ok = ok && a.report.ok;
        out["product"] = pairing_pieces_json(a);
    }
    if (doc.coproduct) {
        const PairingAssembly a = assemble_coproduct(g, w, basis, *doc.coproduct);
        ok = ok && a.report.ok;
        out["coproduct"] = pairing_pieces_json(a);
    }
    if (doc.product && doc.pd && doc.dual_coproduct) {
        const GridReport pd = check_pd_intertwine(g, w, basis, *doc.product, *doc.dual_coproduct, *doc.pd);
        ok = ok && pd.ok;
        out["duality"] = to_json(pd);
    }
    if (!ok)
        throw CommandFailure{1, out};
    return dump(out);
}

// --------------------------------------------------------------------- dual

std::string cmd_dual(const RunConfig& cfg, std::istream& in)
{
    const Json j = parse_json_text(read_input(cfg.inputs.empty() ? "-" : cfg.inputs[0], in));
    if (is_grid_document(j)) {
        const GridDocument doc = grid_from_json(j, field_of(cfg));
        if (!doc.ses)
            malformed("/ses", "dualizing a grid needs the short exact sequence witness 'ses'");
        const DualGrid d = dual_grid(doc.grid, *doc.ses);
        const std::string text = dump(to_json(GridDocument{d.grid, d.ses, std::nullopt, std::nullopt, std::nullopt,
                                                           std::nullopt}));
        if (!d.certified)
            throw CommandFailure{1, parse_json_text(text)};
        return text;
    }
    const AnyObject obj = object_from_json(j, field_of(cfg));
    const AnyObject dual = std::visit(
        [](const auto& v) -> AnyObject {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, FinVect> || std::is_same_v<T, LinMap> || std::is_same_v<T, Tower> ||
                          std::is_same_v<T, IndTower> || std::is_same_v<T, TateObj> ||
                          std::is_same_v<T, IndLCObj> || std::is_same_v<T, ProDiscObj>)
                return dual_object(v);
        },
        obj);
    return dump(to_json(dual, cfg.depth));
}

// ------------------------------------------------------------------- tensor

std::optional<IndLCObj> as_indlc(const AnyObject& o, const FieldSpec& f)
{
    if (const auto* t = std::get_if<Tower>(&o))
        return IndLCObj{t->field(), LazySeq<Tower>::from_vector({*t})};
    if (const auto* v = std::get_if<TateObj>(&o))
        return embed_tate_indlc(*v);
    if (const auto* x = std::get_if<IndLCObj>(&o))
        return *x;
    if (const auto* d = std::get_if<FinVect>(&o))
        return IndLCObj{f, LazySeq<Tower>::from_vector({Tower::constant(f, d->dim)})};
    return std::nullopt;
}

std::optional<ProDiscObj> as_prodisc(const AnyObject& o, const FieldSpec& f)
{
    if (const auto* t = std::get_if<IndTower>(&o))
        return ProDiscObj{t->field(), LazySeq<IndTower>::from_vector({*t})};
    if (const auto* v = std::get_if<TateObj>(&o))
        return embed_tate_prodisc(*v);
    if (const auto* x = std::get_if<ProDiscObj>(&o))
        return *x;
    if (const auto* d = std::get_if<FinVect>(&o))
        return ProDiscObj{f, LazySeq<IndTower>::from_vector({IndTower::constant(f, d->dim)})};
    return std::nullopt;
}

std::string cmd_tensor(const RunConfig& cfg, std::istream& in)
{
    if (cfg.inputs.size() != 2)
        malformed("", "tensor needs exactly two operand files");
    if (cfg.op != "star" && cfg.op != "bang")
        malformed("", "--op must be star or bang");
    const FieldSpec f = field_of(cfg);
    std::vector<AnyObject> ops;
    for (const std::string& path : cfg.inputs)
        ops.push_back(object_from_json(parse_json_text(read_input(path, in)), f));
    Json out;
    if (cfg.op == "star") {
        if (std::holds_alternative<Tower>(ops[0]) && std::holds_alternative<Tower>(ops[1])) {
            out = to_json(AnyObject(tensor_star_towers(std::get<Tower>(ops[0]), std::get<Tower>(ops[1]))), cfg.depth);
        } else {
            const auto a = as_indlc(ops[0], f), b = as_indlc(ops[1], f);
            if (!a || !b)
                malformed("/kind", "operand of kind " + kind_name(!a ? ops[0] : ops[1]) + " has no (x)* product");
            out = to_json(AnyObject(tensor_star_indlc(*a, *b)), cfg.depth);
        }
    } else {
        if (std::holds_alternative<IndTower>(ops[0]) && std::holds_alternative<IndTower>(ops[1])) {
            out = to_json(AnyObject(tensor_indtowers(std::get<IndTower>(ops[0]), std::get<IndTower>(ops[1]))),
                          cfg.depth);
        } else {
            const auto a = as_prodisc(ops[0], f), b = as_prodisc(ops[1], f);
            if (!a || !b)
                malformed("/kind", "operand of kind " + kind_name(!a ? ops[0] : ops[1]) + " has no (x)! product");
            out = to_json(AnyObject(tensor_bang_prodisc(*a, *b)), cfg.depth);
        }
    }
    return dump(out);
}

// -------------------------------------------------------------------- check

std::string cmd_check(const RunConfig& cfg)
{
    SuiteOutcome outcome;
    try {
        outcome = run_suite(cfg.suite, resolve_seed(cfg));
    } catch (const PreconditionError& e) {
        malformed("", e.what());
    }
    std::ostringstream text;
    std::size_t failures = 0;
    for (const auto& [law, result] : outcome.results) {
        text << (result.ok ? "PASS " : "FAIL ") << law->module << "/" << law->name << ": " << result.detail << "\n";
        failures += result.ok ? 0 : 1;
    }
    text << "suite " << cfg.suite << ": " << outcome.results.size() - failures << " passed, " << failures
         << " failed\n";
    if (!outcome.ok)
        throw CommandFailure{1, Json(text.str())};
    return text.str();
}

// ---------------------------------------------------------------------- gen

std::string cmd_gen(const RunConfig& cfg, std::vector<std::pair<std::string, std::string>>& side_files)
{
    const FieldSpec f = field_of(cfg);
    const std::uint64_t seed = resolve_seed(cfg);
    Rng rng(seed);
    if (cfg.kind == "tower")
        return dump(to_json(AnyObject(random_tower(rng, f, 4, cfg.depth)), cfg.depth));
    if (cfg.kind == "tate")
        return dump(to_json(AnyObject(random_tate(rng, f, 4, cfg.depth)), cfg.depth));
    if (cfg.kind != "grid")
        malformed("", "--kind must be grid, tate or tower");
    const PlantedGrid pg = random_planted_grid(rng, f, 4, 4, 6);
    Json truth;
    truth["kind"] = "grid-truth";
    truth["seed"] = seed;
    truth["field"] = f.p();
    truth.update(to_json(pg.truth));
    std::string truth_path = cfg.truth_path;
    if (truth_path.empty())
        truth_path = cfg.out_path.empty() ? "gen_grid_" + std::to_string(seed) + ".truth.json"
                                          : cfg.out_path + ".truth.json";
    side_files.emplace_back(truth_path, dump(truth));
    return dump(to_json(GridDocument{pg.grid, pg.ses, std::nullopt, std::nullopt, std::nullopt, std::nullopt}));
}

// ------------------------------------------------------------------- report

std::string join(const Json& arr)
{
    std::string s;
    for (const auto& x : arr)
        s += (s.empty() ? "" : " ") + x.dump();
    return "[" + s + "]";
}

std::string cmd_report(const RunConfig& cfg, std::istream& in)
{
    const Json j = parse_json_text(read_input(cfg.inputs.empty() ? "-" : cfg.inputs[0], in));
    std::ostringstream out;
    const std::string kind = j.is_object() && j.contains("kind") && j["kind"].is_string() ? j["kind"].get<std::string>() : "";
    if (kind == "rfh-decomposition") {
        out << "RFH decomposition\n";
        out << "  discrete part dims (V_c): " << join(j.at("v_dims")) << "\n";
        out << "  compact part dims (W_r):  " << join(j.at("w_dims")) << "\n";
        Json opens = Json::array();
        for (const auto& row : j.at("rows"))
            opens.push_back(row.at("open_dim"));
        out << "  open subspace dims U_r:   " << join(opens) << "\n";
        if (j.contains("kappa"))
            out << "  kappa: " << (j["kappa"].at("ok").get<bool>() ? "identity in normal form" : "FAILED") << " ("
                << j["kappa"].at("source_dim") << " -> " << j["kappa"].at("target_dim") << ")\n";
        for (const char* part : {"product", "coproduct", "duality"})
            if (j.contains(part)) {
                const Json& rep = std::string(part) == "duality" ? j[part] : j[part].at("report");
                out << "  " << part << ": " << (rep.at("ok").get<bool>() ? "consistent" : "violations") << "\n";
            }
    } else if (kind == "grid-truth") {
        out << "planted grid (seed " << j.at("seed") << ", GF(" << j.at("field") << "))\n";
        out << "  V dims: " << join(j.at("v_dims")) << "\n  W dims: " << join(j.at("w_dims")) << "\n";
    } else if (j.is_object() && j.contains("issues")) {
        out << "grid report: " << (j.at("ok").get<bool>() ? "all checks pass" : "violations found") << "\n";
        for (const auto& issue : j.at("issues"))
            out << "  " << issue.at("check").get<std::string>() << " at " << join(issue.at("at")) << ": "
                << issue.at("detail").get<std::string>() << "\n";
    } else if (is_grid_document(j)) {
        const GridDocument doc = grid_from_json(j, field_of(cfg));
        const GridReport rep = validate_grid(doc.grid, doc.ses ? &*doc.ses : nullptr);
        out << "grid " << doc.grid.m << " x " << doc.grid.n << " over GF(" << doc.grid.field.p() << "), "
            << (doc.ses ? "with" : "without") << " witness: "
            << (rep.ok ? "valid" : std::to_string(rep.issues.size()) + " violations") << "\n";
    } else {
        const AnyObject obj = object_from_json(j, field_of(cfg));
        const Json emitted = to_json(obj, cfg.depth);
        out << kind_name(obj) << " over GF(" << emitted.value("field", cfg.field) << ")\n";
        if (emitted.contains("dims"))
            out << "  dims: " << join(emitted["dims"]) << "\n";
        if (emitted.contains("c_lattice"))
            out << "  c-lattice dims: " << join(emitted["c_lattice"]["dims"]) << "\n  d-lattice dims: "
                << join(emitted["d_lattice"]["dims"]) << "\n";
        if (emitted.contains("pieces"))
            out << "  pieces: " << emitted["pieces"].size() << "\n";
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw CommandFailure{2, Json{{"error", "cannot write file"}, {"path", path}}};
    file << text;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Exact computations with truncated Tate vector spaces", "tatespace"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--field", cfg.field, "prime field characteristic");
    app.add_option("--depth", cfg.depth, "levels to materialize")->check(CLI::PositiveNumber);
    app.add_option_function<std::uint64_t>("--seed", [&](const std::uint64_t& s) { cfg.seed = s; }, "random seed");
    app.add_option("--out", cfg.out_path, "write the result here instead of stdout");

    auto* decompose = app.add_subcommand("decompose", "split a grid and read off its Tate decomposition");
    decompose->add_option("input", cfg.inputs, "grid JSON ('-' for stdin)");
    auto* dual = app.add_subcommand("dual", "dual object or dual grid");
    dual->add_option("input", cfg.inputs, "object or grid JSON ('-' for stdin)");
    auto* tensor = app.add_subcommand("tensor", "completed tensor products");
    tensor->add_option("--op", cfg.op, "star | bang")->check(CLI::IsMember({"star", "bang"}));
    tensor->add_option("inputs", cfg.inputs, "two operand files")->expected(2);
    auto* check = app.add_subcommand("check", "run an invariant suite");
    check->add_option("--suite", cfg.suite, "laws | grid | appendix")
        ->check(CLI::IsMember({"laws", "grid", "appendix"}));
    auto* gen = app.add_subcommand("gen", "random valid instance");
    gen->add_option("--kind", cfg.kind, "grid | tate | tower")->check(CLI::IsMember({"grid", "tate", "tower"}));
    gen->add_option("--truth", cfg.truth_path, "where to write the ground truth of a grid");
    auto* report = app.add_subcommand("report", "human-readable summary of a JSON file");
    report->add_option("input", cfg.inputs, "certificate, report, grid or object JSON");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << dump(Json{{"error", "usage"}, {"path", ""}, {"message", e.what()}});
        return 2;
    }

    std::vector<std::pair<std::string, std::string>> side_files;
    try {
        std::string text;
        if (decompose->parsed())
            text = cmd_decompose(cfg, in);
        else if (dual->parsed())
            text = cmd_dual(cfg, in);
        else if (tensor->parsed())
            text = cmd_tensor(cfg, in);
        else if (check->parsed())
            text = cmd_check(cfg);
        else if (gen->parsed())
            text = cmd_gen(cfg, side_files);
        else
            text = cmd_report(cfg, in);
        for (const auto& [path, body] : side_files)
            write_file(path, body);
        if (cfg.out_path.empty())
            out << text;
        else
            write_file(cfg.out_path, text);
        return 0;
    } catch (const CommandFailure& f) {
        const std::string text = f.body.is_string() ? f.body.get<std::string>() : dump(f.body);
        if (f.code == 1 && !cfg.out_path.empty())
            write_file(cfg.out_path, text);
        else
            (f.code == 1 ? out : err) << text;
        return f.code;
    } catch (const InputError& e) {
        err << dump(Json{{"error", "malformed input"}, {"path", e.path()}, {"message", e.what()}});
        return 2;
    } catch (const Error& e) {
        err << dump(Json{{"error", "check failed"}, {"message", e.what()}});
        return 1;
    }
}

}  // namespace tatespace
