#include "pnfield/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include "pnfield/analyzer.hpp"
#include "pnfield/constructions.hpp"
#include "pnfield/error.hpp"
#include "pnfield/number_theory.hpp"
#include "pnfield/sbox_file.hpp"

namespace pnfield::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kBugNote = "this indicates an implementation bug, not a refutation of the theorem";

struct FieldOptions {
    std::uint32_t p = 0;
    std::uint32_t m = 0;
    std::optional<std::uint64_t> modulus;
};

void add_field_options(CLI::App* cmd, FieldOptions& o) {
    cmd->add_option("--p", o.p, "characteristic (prime)")->required();
    cmd->add_option("--m", o.m, "extension degree")->required();
    cmd->add_option("--modulus", o.modulus, "monic irreducible modulus, encoded as sum c_i p^i");
}

FieldSpec build_field(const FieldOptions& o) { return FieldSpec::build(o.p, o.m, o.modulus); }

std::string field_name(const FieldSpec& f) { return "GF(" + std::to_string(f.p()) + "^" + std::to_string(f.m()) + ")"; }

std::string factor_string(std::uint64_t n) {
    std::string s;
    for (const auto& [q, e] : nt::factorize(n)) {
        if (!s.empty()) s += "·";
        s += std::to_string(q);
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

std::string ring_summary(const FieldRing& ring) {
    const std::uint64_t n = ring.n();
    if (ring.is_double_field()) return "double-field (" + std::to_string(n) + " prime)";
    if (n < 2) return "field-ring only (" + std::to_string(n) + " is not prime)";
    return "field-ring only (" + std::to_string(n) + " = " + factor_string(n) + ")";
}

std::string join(const auto& values, const char* sep = " ") {
    std::ostringstream s;
    bool first = true;
    for (const auto& v : values) {
        if (!first) s << sep;
        s << v;
        first = false;
    }
    return s.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw Error("cannot open '" + path + "' for writing");
    file << text;
    if (!file) throw Error("failed writing '" + path + "'");
}

std::string read_file(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw ParseError("cannot open '" + path + "'");
    std::ostringstream s;
    s << file.rdbuf();
    return s.str();
}

// ---------------------------------------------------------------- field-info

int cmd_field_info(const FieldOptions& o, std::ostream& out) {
    const FieldSpec field = build_field(o);
    const FieldRing ring(field);
    out << "field: " << field_name(field) << '\n'
        << "p: " << field.p() << '\n'
        << "m: " << field.m() << '\n'
        << "modulus: " << field.modulus() << '\n'
        << "gamma: " << field.gamma() << '\n'
        << "description: " << field.description() << '\n'
        << "order: " << field.order() << '\n'
        << "ring: " << ring_summary(ring) << '\n'
        << "star units: " << nt::totient(ring.n()) << '\n';
    if (field.order() <= 256) out << "exp: " << join(field.exp_table()) << '\n';
    return exit_pass;
}

// ----------------------------------------------------------------- construct

struct ConstructOptions {
    FieldOptions field;
    std::uint32_t r = 0;
    std::uint64_t k = 1;
    std::uint32_t d = 1;
    std::uint32_t target_m = 1;
    std::uint32_t target_e = 1;
    std::uint64_t seed = 0;
    std::string output;
};

std::string sbox_text(const FieldSpec& field, const SBox& sbox, const std::string& comment) {
    std::string text = format_sbox_file(field, sbox.table(), sbox.codomain_size());
    const auto eol = text.find('\n');
    return text.insert(eol + 1, "# " + comment + "\n");
}

int cmd_construct(const std::string& kind, const ConstructOptions& o, std::ostream& out) {
    const FieldSpec field = build_field(o.field);
    std::string text;
    if (kind == "frobenius") {
        text = sbox_text(field, frobenius_sbox(field, o.r), "frobenius r=" + std::to_string(o.r));
    } else if (kind == "power") {
        text = sbox_text(field, power_map_sbox(field, o.k), "power k=" + std::to_string(o.k));
    } else {
        const VectorSpaceSpec source(field, o.d);
        const VectorSpaceSpec target(FieldSpec::build(field.p(), o.target_m), o.target_e);
        const AdditiveMap map = random_additive_epimorphism(source, target, o.seed);
        text = sbox_text(field, map.as_sbox(),
                         "epimorphism V(" + std::to_string(field.p()) + "," + std::to_string(field.m()) + "," +
                             std::to_string(o.d) + ") -> V(" + std::to_string(field.p()) + "," +
                             std::to_string(o.target_m) + "," + std::to_string(o.target_e) +
                             ") seed=" + std::to_string(o.seed) + " rank=" + std::to_string(map.rank()));
    }
    write_output(o.output, text, out);
    return exit_pass;
}

// ------------------------------------------------------------------- analyze

struct AnalyzeOptions {
    std::string sbox;
    std::string action = "mult";
    std::string target = "add";
    std::vector<std::uint64_t> subgroup;
    std::string output;
};

std::string format_report(const FieldSpec& field, const ordered_json& action, const ordered_json& target,
                          const ActionSpec& act, const FiniteGroup& h, const PnVerdict& v, std::size_t domain) {
    const SpectrumTable& table = *v.spectrum;
    std::vector<std::size_t> order(table.alphas.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return act.group().label(table.alphas[a]) < act.group().label(table.alphas[b]);
    });

    ordered_json field_json;
    field_json["p"] = field.p();
    field_json["m"] = field.m();
    field_json["modulus"] = field.modulus();
    field_json["gamma"] = field.gamma();

    std::ostringstream s;
    s << "{\n";
    s << "  \"field\": " << field_json.dump() << ",\n";
    s << "  \"action\": " << action.dump() << ",\n";
    s << "  \"target_group\": " << target.dump() << ",\n";
    s << "  \"target_ratio\": " << (table.target_ratio ? ordered_json(*table.target_ratio) : ordered_json()).dump()
      << ",\n";
    s << "  \"spectrum\": [";
    for (std::size_t k = 0; k < order.size(); ++k) {
        ordered_json row;
        row["alpha"] = act.group().label(table.alphas[order[k]]);
        const auto counts = table.row(order[k]);
        row["counts"] = std::vector<unsigned>(counts.begin(), counts.end());
        s << (k == 0 ? "\n    " : ",\n    ") << row.dump();
    }
    s << (order.empty() ? "],\n" : "\n  ],\n");
    s << "  \"pn\": " << (v.pn ? "true" : "false") << ",\n";
    s << "  \"uniformity\": " << v.uniformity;
    if (!v.pn) s << ",\n  \"reason\": " << ordered_json(v.reason_text(domain, h.order())).dump();
    s << "\n}\n";
    return s.str();
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    const SBoxFile file = parse_sbox_file(read_file(o.sbox));
    const FieldSpec& field = file.field;
    const std::uint32_t d = file.dimension();

    std::optional<ActionSpec> action;
    ordered_json action_json;
    action_json["name"] = o.action;
    ordered_json params = ordered_json::object();
    if (o.action != "scalar" && d != 1) {
        throw InvalidArgument("action '" + o.action + "' needs a table over the field, got one over V(p,m," +
                              std::to_string(d) + ")");
    }
    if (o.action != "star" && !o.subgroup.empty()) throw InvalidArgument("--subgroup only applies to --action star");
    if (o.action == "xor") {
        action = action_add_translation(field);
    } else if (o.action == "mult") {
        action = action_mul_translation(field);
    } else if (o.action == "scalar") {
        action = action_scalar(VectorSpaceSpec(field, d));
        params["d"] = d;
    } else if (o.action == "star") {
        const FieldRing ring(field);
        if (ring.n() < 2) throw InvalidArgument("the star action needs p^m > 2");
        if (file.codomain_size != field.order()) throw InvalidArgument("the star action needs a field-valued table");
        for (std::size_t x = 1; x < file.table.size(); ++x) {
            if (file.table[x] == 0) {
                throw InvalidArgument("the star action needs a nonzero-preserving table, but f(" + std::to_string(x) +
                                      ") = 0");
            }
        }
        const UnitSubgroup g = o.subgroup.empty() ? UnitSubgroup::full(ring.n())
                                                  : UnitSubgroup::from_members(ring.n(), o.subgroup);
        action = action_star(ring, g);
        params["subgroup"] = g.members();
    } else {
        throw InvalidArgument("unknown action '" + o.action + "' (expected xor, mult, scalar or star)");
    }
    action_json["parameters"] = params;

    std::optional<FiniteGroup> target;
    if (o.target == "add") {
        std::uint32_t k = 0;
        std::uint64_t size = 1;
        while (size < file.codomain_size) {
            size *= field.p();
            ++k;
        }
        if (size != file.codomain_size) throw InvalidArgument("codomain size is not a power of p");
        target = file.codomain_size == field.order() ? FiniteGroup::field_additive(field)
                                                     : FiniteGroup::elementary_abelian(field.p(), k);
    } else if (o.target == "mult") {
        if (file.codomain_size != field.order()) throw InvalidArgument("--target mult needs a field-valued table");
        target = FiniteGroup::field_multiplicative(field);
    } else {
        throw InvalidArgument("unknown target '" + o.target + "' (expected add or mult)");
    }
    ordered_json target_json;
    target_json["name"] = o.target;
    target_json["order"] = target->order();

    const SBox f = SBox::bind(file.table, *action, *target);
    const PnVerdict verdict = is_perfect_nonlinear(f, *action, *target);
    const std::string report = format_report(field, action_json, target_json, *action, *target, verdict, f.domain_size());
    if (o.output.empty() || o.output == "-") {
        out << report;
    } else {
        write_output(o.output, report, out);
        out << "pn: " << (verdict.pn ? "true" : "false") << '\n' << "uniformity: " << verdict.uniformity << '\n';
        if (!verdict.pn) out << "reason: " << verdict.reason_text(f.domain_size(), target->order()) << '\n';
    }
    return verdict.pn ? exit_pass : exit_negative;
}

// -------------------------------------------------------------------- verify

struct VerifyOptions {
    int theorem = 0;
    std::uint32_t p = 2;
    std::optional<std::uint32_t> m;
    std::uint32_t d = 1;
    std::uint32_t n = 1;
    std::uint32_t e = 1;
    std::uint64_t seed = 0;
    std::uint64_t count = 1;
    std::optional<std::uint32_t> q;
    std::optional<std::uint32_t> r;
    std::vector<std::uint64_t> subgroup;
    std::string part1_target = "add";
};

std::string summary(const PnVerdict& v, std::size_t expected) {
    if (v.rows == 0) return "0 directions (G* is empty)";
    if (v.pn) return std::to_string(v.rows) + " directions, all counts " + std::to_string(expected);
    const Violation& x = *v.violation;
    return std::to_string(v.rows) + " directions, first violation alpha=" + std::to_string(x.alpha_label) +
           " beta=" + std::to_string(x.beta_label) + " count=" + std::to_string(x.count) +
           " expected=" + std::to_string(x.expected);
}

std::vector<std::uint32_t> frobenius_powers(const VerifyOptions& o, std::uint32_t m) {
    if (o.r) {
        if (*o.r >= m) throw InvalidArgument("--r must lie in [0, " + std::to_string(m) + ")");
        return {*o.r};
    }
    std::vector<std::uint32_t> rs(m);
    std::iota(rs.begin(), rs.end(), 0u);
    return rs;
}

int verify_theorem1(const VerifyOptions& o, std::ostream& out) {
    if (!o.m) throw InvalidArgument("--theorem 1 needs --m");
    const FieldSpec source_field = FieldSpec::build(o.p, *o.m);
    const auto size = nt::checked_pow(o.p, *o.m * o.d);
    if (!size || *size > 1024) throw InvalidArgument("theorem 1 verification is capped at p^(m*d) <= 2^10");
    if (std::uint64_t{*o.m} * o.d < std::uint64_t{o.n} * o.e) {
        throw HypothesisError("hypothesis fails: m*d = " + std::to_string(*o.m * o.d) + " < n*e = " +
                              std::to_string(o.n * o.e) + ", so no epimorphism exists");
    }
    const VectorSpaceSpec source(source_field, o.d);
    const VectorSpaceSpec target(FieldSpec::build(o.p, o.n), o.e);
    const ActionSpec action = action_scalar(source);
    const FiniteGroup h = target.additive_group();
    const std::string shape = "V(" + std::to_string(o.p) + "," + std::to_string(*o.m) + "," + std::to_string(o.d) +
                              ") -> V(" + std::to_string(o.p) + "," + std::to_string(o.n) + "," +
                              std::to_string(o.e) + ")";
    bool all = true;
    for (std::uint64_t k = 0; k < o.count; ++k) {
        const std::uint64_t seed = o.seed + k;
        const AdditiveMap map = random_additive_epimorphism(source, target, seed);
        const std::uint64_t expected = map.kernel_size();
        const PnVerdict v = is_perfect_nonlinear(map.as_sbox(), action, h, {0, false});
        const bool pass = v.pn && v.rows > 0 ? v.uniformity == expected : v.pn;
        all = all && pass;
        out << "theorem 1 seed " << seed << ": " << shape << " rank " << map.rank() << " kernel " << expected << "; "
            << summary(v, expected) << ": " << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (!all) out << "FAIL: " << kBugNote << '\n';
    return all ? exit_pass : exit_negative;
}

int verify_theorem2(const VerifyOptions& o, std::ostream& out) {
    if (!o.m) throw InvalidArgument("--theorem 2 needs --m");
    if (*o.m > 13) throw InvalidArgument("theorem 2 verification is capped at 2^m <= 2^13");
    const FieldSpec field = FieldSpec::build(2, *o.m);
    const std::uint64_t n = field.unit_count();
    if (n < 2) throw HypothesisError("theorem 2 needs m > 1");
    const UnitSubgroup g = o.subgroup.empty() ? UnitSubgroup::from_members(n, {1, n - 1})
                                              : UnitSubgroup::from_members(n, o.subgroup);
    bool all = true;
    for (std::uint32_t r : frobenius_powers(o, *o.m)) {
        const Theorem2Setting s = theorem2_setting(field, g, r, {0, false});
        all = all && s.holds();
        out << "theorem 2 m=" << *o.m << " G={" << join(g.members(), ",") << "} r=" << r << ": part 1 "
            << summary(s.part1, 1) << "; part 2 " << summary(s.part2, 1) << ": " << (s.holds() ? "PASS" : "FAIL")
            << '\n';
    }
    if (!all) out << "FAIL: " << kBugNote << '\n';
    return all ? exit_pass : exit_negative;
}

int verify_theorem3(const VerifyOptions& o, std::ostream& out) {
    if (!o.q) throw InvalidArgument("--theorem 3 needs --q");
    const std::uint32_t q = *o.q;
    if (q == 0 || q > 13) throw InvalidArgument("theorem 3 verification is capped at 2^q <= 2^13");
    const std::uint64_t mersenne = (std::uint64_t{1} << q) - 1;
    if (!nt::is_prime(mersenne)) {
        throw HypothesisError("hypothesis fails: 2^" + std::to_string(q) + " - 1 = " + std::to_string(mersenne) +
                              "; " + std::to_string(mersenne) + " is not prime");
    }
    Part1Target mode = Part1Target::additive;
    if (o.part1_target == "mult") {
        mode = Part1Target::multiplicative;
    } else if (o.part1_target != "add") {
        throw InvalidArgument("--part1-target must be add or mult");
    }
    const FieldSpec field = FieldSpec::build(2, q);
    const FieldRing ring(field);
    bool all = true;
    for (std::uint32_t r : frobenius_powers(o, q)) {
        const SBox lambda = frobenius_sbox(field, r);
        const DoublyPnResult res = is_doubly_pn(lambda.table(), ring, mode, {0, false});
        const bool pass = res.verdict == DoublyPnVerdict::holds && res.part1->uniformity <= 1 &&
                          res.part2->uniformity <= 1;
        all = all && pass;
        out << "theorem 3 q=" << q << " r=" << r << ": part 1 " << summary(*res.part1, 1) << "; part 2 "
            << summary(*res.part2, 1) << ": " << (pass ? "PASS" : "FAIL") << '\n';
    }
    if (!all) {
        if (mode == Part1Target::multiplicative) {
            out << "FAIL: comparison mode with a multiplicative part-1 target lies outside the theorem's "
                   "hypotheses; this failure is expected\n";
        } else {
            out << "FAIL: " << kBugNote << '\n';
        }
    }
    return all ? exit_pass : exit_negative;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    switch (o.theorem) {
        case 1:
            return verify_theorem1(o, out);
        case 2:
            return verify_theorem2(o, out);
        case 3:
            return verify_theorem3(o, out);
        default:
            throw InvalidArgument("--theorem must be 1, 2 or 3");
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Group-action perfect nonlinearity toolkit", args.empty() ? "pnfield" : args.front()};
    app.require_subcommand(1);

    FieldOptions info_opts;
    auto* info = app.add_subcommand("field-info", "describe GF(p^m), its primitive element and field-ring type");
    add_field_options(info, info_opts);

    ConstructOptions cons;
    auto* construct = app.add_subcommand("construct", "write an S-box file");
    construct->require_subcommand(1);
    auto* frob = construct->add_subcommand("frobenius", "x -> x^(p^r)");
    auto* power = construct->add_subcommand("power", "x -> x^k");
    auto* epi = construct->add_subcommand("epimorphism", "seeded random additive epimorphism V(p,m,d) -> V(p,n,e)");
    for (auto* cmd : {frob, power, epi}) {
        add_field_options(cmd, cons.field);
        cmd->add_option("-o,--output", cons.output, "output file (default: stdout)");
    }
    frob->add_option("--r", cons.r, "Frobenius power")->required();
    power->add_option("--k", cons.k, "exponent")->required();
    epi->add_option("--d", cons.d, "source dimension")->required();
    epi->add_option("--n", cons.target_m, "target field degree")->required();
    epi->add_option("--e", cons.target_e, "target dimension")->required();
    epi->add_option("--seed", cons.seed, "SplitMix64 seed")->required();

    AnalyzeOptions an;
    auto* analyze = app.add_subcommand("analyze", "derivative spectrum and perfect-nonlinearity verdict");
    analyze->add_option("--sbox", an.sbox, "S-box file")->required();
    analyze->add_option("--action", an.action, "xor | mult | scalar | star")->required();
    analyze->add_option("--target", an.target, "add | mult")->required();
    analyze->add_option("--subgroup", an.subgroup, "exponent residues of the star subgroup")->delimiter(',');
    analyze->add_option("--out", an.output, "report file (default: stdout)");

    VerifyOptions ver;
    auto* verify = app.add_subcommand("verify", "exhaustively verify one of the three theorems");
    verify->add_option("--theorem", ver.theorem, "1 (epimorphisms), 2 (unit subgroups), 3 (Frobenius, Mersenne)")
        ->required();
    verify->add_option("--p", ver.p, "theorem 1: characteristic");
    verify->add_option("--m", ver.m, "theorems 1 and 2: source field degree");
    verify->add_option("--d", ver.d, "theorem 1: source dimension");
    verify->add_option("--n", ver.n, "theorem 1: target field degree");
    verify->add_option("--e", ver.e, "theorem 1: target dimension");
    verify->add_option("--seed", ver.seed, "theorem 1: first seed");
    verify->add_option("--count", ver.count, "theorem 1: number of consecutive seeds");
    verify->add_option("--q", ver.q, "theorem 3: exponent of the Mersenne prime 2^q - 1");
    verify->add_option("--r", ver.r, "theorems 2 and 3: single Frobenius power (default: all)");
    verify->add_option("--subgroup", ver.subgroup, "theorem 2: residues of G (default: 1,-1)")->delimiter(',');
    verify->add_option("--part1-target", ver.part1_target, "theorem 3: add (default) or mult comparison mode");

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    if (argv.empty()) argv.push_back("pnfield");
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_error;
    }

    try {
        if (*info) return cmd_field_info(info_opts, out);
        if (*frob) return cmd_construct("frobenius", cons, out);
        if (*power) return cmd_construct("power", cons, out);
        if (*epi) return cmd_construct("epimorphism", cons, out);
        if (*analyze) return cmd_analyze(an, out);
        if (*verify) return cmd_verify(ver, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_error;
    }
    return exit_error;
}

}  // namespace pnfield::cli
