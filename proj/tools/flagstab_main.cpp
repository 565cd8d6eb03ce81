// flagstab: subcommand front end over the library. All numeric I/O is in
// exact rationals; reports are deterministic functions of the input bytes.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "flagstab/dsl.hpp"
#include "flagstab/enumerate.hpp"
#include "flagstab/errors.hpp"
#include "flagstab/json_io.hpp"
#include "flagstab/liealg.hpp"
#include "flagstab/limits.hpp"
#include "flagstab/pairing.hpp"

namespace flagstab {
namespace {

// ---------------------------------------------------------------------------
// Input plumbing

// Document argument: a path, or inline JSON when it starts with '{' or '['.
struct InputDoc {
    std::string name;    // role in the report ("flag", "ambient", ...)
    std::string bytes;   // raw content, hashed for the inputs digest
};

std::string read_argument(const std::string& arg) {
    if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) return arg;
    std::ifstream in(arg, std::ios::binary);
    if (!in) throw input_error("cannot read input file '" + arg + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    static const char* digits = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[h & 0xF];
        h >>= 4;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Report document, rendered as JSON or markdown

struct CheckRow {
    std::string check;
    std::string level;  // "-" when not a per-level check
    bool pass = false;
    std::string detail;
};

struct ReportDoc {
    std::string verb;
    std::vector<std::pair<std::string, std::string>> convention;
    std::vector<InputDoc> inputs;
    bool has_checks = false;
    std::vector<CheckRow> checks;
    Json result = Json::object();

    bool all_pass() const {
        for (const CheckRow& row : checks)
            if (!row.pass) return false;
        return true;
    }
};

void describe_pairing(ReportDoc& doc, const Pairing& p) {
    switch (p.kind()) {
        case PairingKind::standard_dual:
            doc.convention.emplace_back("index order", "1 < 2 < ... < n");
            doc.convention.emplace_back("gram", "standard dual: <e_i, e_j*> = [i = j]");
            break;
        case PairingKind::split_symmetric:
            doc.convention.emplace_back("index order",
                                        "-n < ... < -1 < 1 < ... < n, with 0 when dim is odd");
            doc.convention.emplace_back(
                "gram", "split symmetric: <e_i, e_-i> = 1, and <e_0, e_0> = 1 when present");
            break;
        case PairingKind::split_symplectic:
            doc.convention.emplace_back("index order", "-n < ... < -1 < 1 < ... < n");
            doc.convention.emplace_back(
                "gram", "split symplectic: <e_i, e_-i> = 1 and <e_-i, e_i> = -1 for i > 0");
            break;
        case PairingKind::explicit_gram:
            doc.convention.emplace_back("index order", "1 < 2 < ... < n");
            doc.convention.emplace_back("gram", "explicit gram matrix (see inputs)");
            break;
    }
}

void describe_ambient(ReportDoc& doc, const Ambient& a) {
    const Ambient* base = &a;
    while (base->kind() == AmbientKind::extension) base = base->base();
    if (base->kind() == AmbientKind::gl || base->kind() == AmbientKind::sl) {
        doc.convention.emplace_back("index order", "1 < 2 < ... < n");
        doc.convention.emplace_back("gram",
                                    "standard dual: <e_i, e_j*> = [i = j] (gl/sl ambient)");
    } else {
        describe_pairing(doc, base->form());
    }
    if (a.kind() == AmbientKind::extension)
        doc.convention.emplace_back("extension", std::to_string(a.extra().size()) +
                                                     " adjoined matrix generator(s)");
}

void describe_domain(ReportDoc& doc, DomainKind d) {
    if (d == DomainKind::positive) {
        doc.convention.emplace_back("index domain", "positive: 1, 2, 3, ...; level n = {1..n}");
    } else {
        doc.convention.emplace_back(
            "index domain", "signed: ... < -2 < -1 < 1 < 2 < ...; level n = {-n..-1, 1..n}");
    }
}

Json convention_json(const ReportDoc& doc) {
    Json out = Json::object();
    for (const auto& [key, value] : doc.convention) out[key] = value;
    return out;
}

std::string render_json(const ReportDoc& doc) {
    Json out = Json::object();
    out["verb"] = doc.verb;
    out["convention"] = convention_json(doc);
    Json inputs = Json::object();
    for (const InputDoc& in : doc.inputs) inputs[in.name] = fnv1a64(in.bytes);
    out["inputs"] = inputs;
    if (doc.has_checks) {
        Json rows = Json::array();
        for (const CheckRow& row : doc.checks) {
            Json jr = Json::object();
            jr["check"] = row.check;
            jr["level"] = row.level;
            jr["pass"] = row.pass;
            jr["detail"] = row.detail;
            rows.push_back(std::move(jr));
        }
        out["checks"] = rows;
        out["pass"] = doc.all_pass();
    }
    out["result"] = doc.result;
    return dump_json(out);
}

std::string render_markdown(const ReportDoc& doc) {
    std::ostringstream out;
    out << "# flagstab " << doc.verb << "\n\n";
    out << "## Conventions\n\n";
    out << "| item | value |\n| --- | --- |\n";
    for (const auto& [key, value] : doc.convention) out << "| " << key << " | " << value << " |\n";
    out << "\n## Inputs\n\n";
    out << "| input | fnv1a64 |\n| --- | --- |\n";
    for (const InputDoc& in : doc.inputs) out << "| " << in.name << " | " << fnv1a64(in.bytes) << " |\n";
    out << "\n## Checks\n\n";
    if (doc.has_checks) {
        out << "| check | level | pass | detail |\n| --- | --- | --- | --- |\n";
        for (const CheckRow& row : doc.checks)
            out << "| " << row.check << " | " << row.level << " | " << (row.pass ? "yes" : "no")
                << " | " << row.detail << " |\n";
    } else {
        out << "none\n";
    }
    out << "\n## Witnesses\n\n";
    if (doc.verb == "twin") {
        bool none = doc.result.contains("twin") && doc.result["twin"].is_string();
        out << (none ? "twin: none\n\n" : "twin: found\n\n");
    }
    out << "```json\n" << doc.result.dump(2) << "\n```\n";
    return out.str();
}

// Shared per-subcommand output options.
struct OutputOpts {
    std::string format = "json";
    std::string output;

    void attach(CLI::App* cmd) {
        cmd->add_option("--format", format, "Report format")
            ->check(CLI::IsMember({"json", "markdown"}))
            ->capture_default_str();
        cmd->add_option("--output", output, "Write the report to this path instead of stdout");
    }
};

int emit(const ReportDoc& doc, const OutputOpts& opts) {
    std::string text = opts.format == "markdown" ? render_markdown(doc) : render_json(doc);
    if (opts.output.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(opts.output, std::ios::binary);
        if (!out) throw input_error("cannot write output file '" + opts.output + "'");
        out << text;
    }
    return doc.has_checks && !doc.all_pass() ? 1 : 0;
}

// ---------------------------------------------------------------------------
// Argument loaders

Json parse_doc(const InputDoc& doc) { return parse_json(doc.bytes); }

std::pair<long, long> parse_level_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            long v = std::stol(text);
            return {v, v};
        }
        long lo = std::stol(text.substr(0, dots));
        long hi = std::stol(text.substr(dots + 2));
        return {lo, hi};
    } catch (const std::exception&) {
        throw input_error("bad level range '" + text + "' (expected LO..HI)");
    }
}

Side side_from_name(const std::string& name) {
    if (name == "left") return Side::left;
    if (name == "right") return Side::right;
    throw input_error("side must be 'left' or 'right'");
}

PairingKind pairing_kind_from_name(const std::string& name) {
    for (PairingKind k : {PairingKind::standard_dual, PairingKind::split_symmetric,
                          PairingKind::split_symplectic})
        if (name == pairing_kind_name(k)) return k;
    throw input_error("pairing kind must be standard_dual, split_symmetric, or split_symplectic");
}

// ---------------------------------------------------------------------------
// Verbs

struct SpanArgs {
    std::string vectors;
    std::size_t dim = 0;
    OutputOpts out;
};

int run_span(const SpanArgs& args) {
    ReportDoc doc;
    doc.verb = "span";
    InputDoc in{"vectors", read_argument(args.vectors)};
    Json jvecs = parse_doc(in);
    if (!jvecs.is_array()) throw input_error("--vectors expects an array of vectors");
    std::vector<Vec> rows;
    for (const Json& v : jvecs) {
        Vec row = vec_from_json(v);
        if (row.size() != args.dim)
            throw input_error("vector length does not match --dim");
        rows.push_back(std::move(row));
    }
    Subspace s = Subspace::span(rows, args.dim);
    doc.convention.emplace_back("index order", "1 < 2 < ... < n");
    doc.convention.emplace_back("basis", "reduced row echelon form, rows sorted by pivot");
    doc.inputs.push_back(std::move(in));
    doc.result["subspace"] = subspace_to_json(s);
    doc.result["dim"] = s.dim();
    return emit(doc, args.out);
}

struct PerpArgs {
    std::string space;
    std::string pairing;
    std::string side = "right";
    std::string descriptor;
    std::string kind;
    long level = 0;
    long lookahead = 1;
    bool closure = false;
    OutputOpts out;
};

int run_perp(const PerpArgs& args) {
    ReportDoc doc;
    doc.verb = args.closure ? "closure" : "perp";
    bool finite = !args.space.empty();
    bool certified = !args.descriptor.empty();
    if (finite == certified)
        throw input_error(
            "give either --space with --pairing, or --descriptor with --kind and --level");
    if (finite) {
        if (args.pairing.empty()) throw input_error("--space needs --pairing");
        InputDoc sdoc{"space", read_argument(args.space)};
        InputDoc pdoc{"pairing", read_argument(args.pairing)};
        Subspace s = subspace_from_json(parse_doc(sdoc));
        Pairing p = pairing_from_json(parse_doc(pdoc));
        describe_pairing(doc, p);
        doc.inputs.push_back(std::move(sdoc));
        doc.inputs.push_back(std::move(pdoc));
        if (args.closure) {
            Subspace c = closure(s, p);
            doc.result["closure"] = subspace_to_json(c);
            doc.result["is_closed"] = c == s;
        } else {
            doc.result["perp"] = subspace_to_json(perp(s, p, side_from_name(args.side)));
            doc.result["side"] = args.side;
        }
        return emit(doc, args.out);
    }
    if (args.kind.empty() || args.level < 1)
        throw input_error("--descriptor needs --kind and --level");
    InputDoc ddoc{"descriptor", read_argument(args.descriptor)};
    LimitsDescriptor d = descriptor_from_json(parse_doc(ddoc));
    PairingKind kind = pairing_kind_from_name(args.kind);
    describe_domain(doc, descriptor_domain(d));
    doc.convention.emplace_back("pairing kind", pairing_kind_name(kind));
    doc.inputs.push_back(std::move(ddoc));
    CertifiedSubspace res = args.closure ? closure_certified(d, kind, args.level, args.lookahead)
                                         : perp_certified(d, kind, args.level, args.lookahead);
    doc.result["space"] = subspace_to_json(res.space);
    doc.result["certificate"] = certificate_to_json(res.cert);
    doc.has_checks = true;
    doc.checks.push_back({"certificate stable", std::to_string(args.level), res.cert.stable,
                          res.cert.stable ? "lookahead +1 agrees" : "lookahead +1 differs"});
    return emit(doc, args.out);
}

struct FlagArgs {
    std::string flag;
    std::string pairing;
    OutputOpts out;
};

int run_flag(const FlagArgs& args) {
    ReportDoc doc;
    doc.verb = "flag";
    InputDoc fdoc{"flag", read_argument(args.flag)};
    InputDoc pdoc{"pairing", read_argument(args.pairing)};
    GeneralizedFlag f = flag_from_json(parse_doc(fdoc));
    Pairing p = pairing_from_json(parse_doc(pdoc));
    describe_pairing(doc, p);
    doc.inputs.push_back(std::move(fdoc));
    doc.inputs.push_back(std::move(pdoc));
    FlagReport report = flag_report(f, p);
    doc.result["is_maximal"] = report.is_maximal;
    doc.result["is_closed"] = report.is_closed;
    doc.result["is_bivalent"] = report.is_bivalent;
    Json good = Json::array();
    for (std::size_t i : report.good_pairs) good.push_back(i);
    doc.result["good_pairs"] = good;
    if (p.is_form()) {
        doc.result["iso_part_pairs"] = iso_part(f, p).size();
    }
    return emit(doc, args.out);
}

struct StabArgs {
    std::string flag;
    std::string ambient;
    std::string mode = "formula";
    OutputOpts out;
};

int run_stab(const StabArgs& args) {
    ReportDoc doc;
    doc.verb = "stab";
    InputDoc fdoc{"flag", read_argument(args.flag)};
    InputDoc adoc{"ambient", read_argument(args.ambient)};
    GeneralizedFlag f = flag_from_json(parse_doc(fdoc));
    Ambient a = ambient_from_json(parse_doc(adoc));
    describe_ambient(doc, a);
    doc.inputs.push_back(std::move(fdoc));
    doc.inputs.push_back(std::move(adoc));
    if (args.mode == "both") {
        LieSubalgebra brute = stabilizer(f, a, StabilizerMode::brute);
        LieSubalgebra formula = stabilizer(f, a, StabilizerMode::formula);
        bool equal = brute.space() == formula.space();
        doc.result["brute"] = subalgebra_to_json(brute);
        doc.result["formula"] = subalgebra_to_json(formula);
        doc.result["equal"] = equal;
        doc.has_checks = true;
        doc.checks.push_back({"stabilizer brute = formula", "-", equal,
                              "dim " + std::to_string(brute.dim()) + " vs dim " +
                                  std::to_string(formula.dim())});
    } else {
        StabilizerMode mode =
            args.mode == "brute" ? StabilizerMode::brute : StabilizerMode::formula;
        LieSubalgebra b = stabilizer(f, a, mode);
        doc.result["stabilizer"] = subalgebra_to_json(b);
        doc.result["mode"] = args.mode;
        doc.result["dim"] = b.dim();
    }
    return emit(doc, args.out);
}

struct BorelArgs {
    std::string algebra;
    std::string flag;
    std::string ambient;
    OutputOpts out;
};

int run_borel(const BorelArgs& args) {
    ReportDoc doc;
    doc.verb = "borel";
    std::optional<LieSubalgebra> b;
    if (!args.algebra.empty()) {
        InputDoc gdoc{"algebra", read_argument(args.algebra)};
        b = subalgebra_from_json(parse_doc(gdoc));
        describe_ambient(doc, b->ambient());
        doc.inputs.push_back(std::move(gdoc));
    } else {
        if (args.flag.empty() || args.ambient.empty())
            throw input_error("give --algebra, or --flag with --ambient");
        InputDoc fdoc{"flag", read_argument(args.flag)};
        InputDoc adoc{"ambient", read_argument(args.ambient)};
        GeneralizedFlag f = flag_from_json(parse_doc(fdoc));
        Ambient a = ambient_from_json(parse_doc(adoc));
        describe_ambient(doc, a);
        doc.inputs.push_back(std::move(fdoc));
        doc.inputs.push_back(std::move(adoc));
        b = stabilizer(f, a, StabilizerMode::brute);
    }
    std::vector<LieSubalgebra> series = derived_series(*b);
    bool solvable = series.back().dim() == 0;
    bool maximal = solvable && is_maximal_solvable(*b);
    doc.result["dim"] = b->dim();
    doc.result["derived_length"] = series.size() - 1;
    doc.result["solvable"] = solvable;
    doc.result["maximal_solvable"] = maximal;
    doc.has_checks = true;
    doc.checks.push_back({"solvable", "-", solvable,
                          "derived series stabilizes at dim " +
                              std::to_string(series.back().dim())});
    doc.checks.push_back({"maximal solvable", "-", maximal,
                          maximal ? "no single-generator solvable extension"
                                  : "a solvable extension exists or not solvable"});
    return emit(doc, args.out);
}

struct ToralArgs {
    std::string flag;
    std::string ambient;
    OutputOpts out;
};

int run_toral(const ToralArgs& args) {
    ReportDoc doc;
    doc.verb = "toral";
    InputDoc fdoc{"flag", read_argument(args.flag)};
    InputDoc adoc{"ambient", read_argument(args.ambient)};
    GeneralizedFlag f = flag_from_json(parse_doc(fdoc));
    Ambient a = ambient_from_json(parse_doc(adoc));
    describe_ambient(doc, a);
    doc.inputs.push_back(std::move(fdoc));
    doc.inputs.push_back(std::move(adoc));
    LieSubalgebra b = stabilizer(f, a, StabilizerMode::brute);
    LineSystem ls = line_system_from_flag(f, a);
    LieSubalgebra t = toral_subalgebra(ls, a);
    LieSubalgebra n = nilpotent_subalgebra(f, a);
    Json lines = Json::array();
    for (const LineSystem::Line& line : ls.lines) {
        Json jl = Json::object();
        jl["pair_index"] = line.pair_index;
        jl["l"] = vec_to_json(line.l);
        jl["m"] = vec_to_json(line.m);
        lines.push_back(std::move(jl));
    }
    doc.result["lines"] = lines;
    doc.result["toral"] = subalgebra_to_json(t);
    doc.result["nilpotent"] = subalgebra_to_json(n);
    bool sum_ok = t.space().sum(n.space()) == b.space();
    bool cut_ok = t.space().intersect(n.space()).dim() == 0;
    doc.result["dim_stabilizer"] = b.dim();
    doc.result["dim_toral"] = t.dim();
    doc.result["dim_nilpotent"] = n.dim();
    doc.has_checks = true;
    doc.checks.push_back({"toral + nilpotent = stabilizer", "-", sum_ok,
                          std::to_string(t.dim()) + " + " + std::to_string(n.dim()) + " vs " +
                              std::to_string(b.dim())});
    doc.checks.push_back({"toral ∩ nilpotent = 0", "-", cut_ok, ""});
    return emit(doc, args.out);
}

struct TwinArgs {
    std::string flag;
    std::string form;
    OutputOpts out;
};

int run_twin(const TwinArgs& args) {
    ReportDoc doc;
    doc.verb = "twin";
    InputDoc fdoc{"flag", read_argument(args.flag)};
    InputDoc pdoc{"form", read_argument(args.form)};
    GeneralizedFlag f = flag_from_json(parse_doc(fdoc));
    Pairing p = pairing_from_json(parse_doc(pdoc));
    describe_pairing(doc, p);
    doc.inputs.push_back(std::move(fdoc));
    doc.inputs.push_back(std::move(pdoc));
    std::optional<GeneralizedFlag> tw = twin(f, p);
    if (tw) {
        doc.result["twin"] = flag_to_json(*tw);
    } else {
        doc.result["twin"] = "none";
    }
    return emit(doc, args.out);
}

struct VerifyArgs {
    std::string scenario;
    std::string check;
    std::string levels = "2..4";
    long lookahead = 1;
    OutputOpts out;
};

// Headline check per builtin scenario, used when --check is omitted.
std::string default_check(const std::string& scenario) {
    if (scenario == "paper_example_1") return "stabilizer-is-borel";
    if (scenario == "paper_example_2") return "normalizer-forces-a-zero";
    if (scenario == "dense_hyperplane") return "closure-is-full";
    throw input_error("no default check for scenario '" + scenario + "'; give --check");
}

int run_verify(const VerifyArgs& args, const char* verb) {
    ReportDoc doc;
    doc.verb = verb;
    Scenario s = builtin(args.scenario);
    std::string check = args.check.empty() ? default_check(args.scenario) : args.check;
    auto [lo, hi] = parse_level_range(args.levels);
    describe_domain(doc, s.domain);
    if (s.has_extension)
        doc.convention.emplace_back("extension template", s.template_source);
    doc.inputs.push_back({"scenario", args.scenario});
    doc.inputs.push_back({"check", check});
    VerifyReport report = verify_levels(s, check, lo, hi, args.lookahead);
    doc.has_checks = true;
    for (const LevelOutcome& o : report.levels)
        doc.checks.push_back({check, std::to_string(o.level), o.pass, o.detail});
    doc.result = verify_report_to_json(report);
    return emit(doc, args.out);
}

// ---------------------------------------------------------------------------
// Wiring

int run(int argc, char** argv) {
    CLI::App app{"exact flag stabilizers, bilinear pairings, and certified truncations"};
    app.require_subcommand(1);
    int exit_code = 0;

    SpanArgs span_args;
    CLI::App* cmd = app.add_subcommand("span", "Row space of a set of rational vectors");
    cmd->add_option("--vectors", span_args.vectors, "Array of vectors (path or inline JSON)")
        ->required();
    cmd->add_option("--dim", span_args.dim, "Ambient dimension")->required();
    span_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_span(span_args); });

    PerpArgs perp_args;
    cmd = app.add_subcommand("perp", "Perpendicular subspace under a pairing");
    cmd->add_option("--space", perp_args.space, "Subspace document");
    cmd->add_option("--pairing", perp_args.pairing, "Pairing document");
    cmd->add_option("--side", perp_args.side, "Perp inside the left or right space")
        ->check(CLI::IsMember({"left", "right"}))
        ->capture_default_str();
    cmd->add_option("--descriptor", perp_args.descriptor, "Limits descriptor document");
    cmd->add_option("--kind", perp_args.kind, "Pairing kind for descriptor mode");
    cmd->add_option("--level", perp_args.level, "Truncation level for descriptor mode");
    cmd->add_option("--lookahead", perp_args.lookahead, "Certificate lookahead")
        ->capture_default_str();
    perp_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_perp(perp_args); });

    PerpArgs closure_args;
    closure_args.closure = true;
    cmd = app.add_subcommand("closure", "Double perpendicular under a pairing");
    cmd->add_option("--space", closure_args.space, "Subspace document");
    cmd->add_option("--pairing", closure_args.pairing, "Pairing document");
    cmd->add_option("--descriptor", closure_args.descriptor, "Limits descriptor document");
    cmd->add_option("--kind", closure_args.kind, "Pairing kind for descriptor mode");
    cmd->add_option("--level", closure_args.level, "Truncation level for descriptor mode");
    cmd->add_option("--lookahead", closure_args.lookahead, "Certificate lookahead")
        ->capture_default_str();
    closure_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_perp(closure_args); });

    FlagArgs flag_args;
    cmd = app.add_subcommand("flag", "Classify a generalized flag under a pairing");
    cmd->add_option("--flag", flag_args.flag, "Flag document")->required();
    cmd->add_option("--pairing", flag_args.pairing, "Pairing document")->required();
    flag_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_flag(flag_args); });

    StabArgs stab_args;
    cmd = app.add_subcommand("stab", "Stabilizer subalgebra of a flag");
    cmd->add_option("--flag", stab_args.flag, "Flag document")->required();
    cmd->add_option("--ambient", stab_args.ambient, "Ambient document")->required();
    cmd->add_option("--mode", stab_args.mode, "brute, formula, or both")
        ->check(CLI::IsMember({"brute", "formula", "both"}))
        ->capture_default_str();
    stab_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_stab(stab_args); });

    BorelArgs borel_args;
    cmd = app.add_subcommand("borel", "Solvability and maximal-solvability of a subalgebra");
    cmd->add_option("--algebra", borel_args.algebra, "Subalgebra document");
    cmd->add_option("--flag", borel_args.flag, "Flag document (stabilizer is tested)");
    cmd->add_option("--ambient", borel_args.ambient, "Ambient document");
    borel_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_borel(borel_args); });

    ToralArgs toral_args;
    cmd = app.add_subcommand("toral", "Line system and toral/nilpotent split of a stabilizer");
    cmd->add_option("--flag", toral_args.flag, "Flag document")->required();
    cmd->add_option("--ambient", toral_args.ambient, "Ambient document")->required();
    toral_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_toral(toral_args); });

    TwinArgs twin_args;
    cmd = app.add_subcommand("twin", "Twin flag under a symmetric form");
    cmd->add_option("--flag", twin_args.flag, "Flag document")->required();
    cmd->add_option("--form", twin_args.form, "Pairing document (symmetric form)")->required();
    twin_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_twin(twin_args); });

    VerifyArgs lv_args;
    cmd = app.add_subcommand("limits-verify", "Run a registered check on a builtin scenario");
    cmd->add_option("--scenario", lv_args.scenario, "Builtin scenario name")->required();
    cmd->add_option("--check", lv_args.check, "Registered check name")->required();
    cmd->add_option("--levels", lv_args.levels, "Level range LO..HI")->capture_default_str();
    cmd->add_option("--lookahead", lv_args.lookahead, "Certificate lookahead")
        ->capture_default_str();
    lv_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_verify(lv_args, "limits-verify"); });

    VerifyArgs ex_args;
    cmd = app.add_subcommand("example", "Builtin scenario with its headline check");
    cmd->add_option("scenario", ex_args.scenario, "Builtin scenario name")->required();
    cmd->add_option("--check", ex_args.check, "Registered check name (default per scenario)");
    cmd->add_option("--levels", ex_args.levels, "Level range LO..HI")->capture_default_str();
    cmd->add_option("--lookahead", ex_args.lookahead, "Certificate lookahead")
        ->capture_default_str();
    ex_args.out.attach(cmd);
    cmd->callback([&]() { exit_code = run_verify(ex_args, "example"); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    return exit_code;
}

}  // namespace
}  // namespace flagstab

int main(int argc, char** argv) {
    try {
        return flagstab::run(argc, argv);
    } catch (const flagstab::input_error& e) {
        std::cerr << "flagstab: input error: " << e.what() << "\n";
        return 2;
    } catch (const flagstab::precondition_error& e) {
        std::cerr << "flagstab: precondition error: " << e.what() << "\n";
        return 2;
    } catch (const flagstab::computation_error& e) {
        std::cerr << "flagstab: computation failed: " << e.what() << "\n";
        return 1;
    } catch (const flagstab::internal_error& e) {
        std::cerr << "flagstab: internal invariant breach: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "flagstab: unexpected error: " << e.what() << "\n";
        return 3;
    }
}
