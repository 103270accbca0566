#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "pnfield/cli.hpp"
#include "pnfield/constructions.hpp"
#include "pnfield/error.hpp"
#include "pnfield/sbox_file.hpp"

using namespace pnfield;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "pnfield");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string golden(const std::string& name) { return slurp(fs::path(PNFIELD_GOLDEN_DIR) / name); }

std::string golden_path(const std::string& name) { return (fs::path(PNFIELD_GOLDEN_DIR) / name).string(); }

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "pnfield_test_cli";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("field-info") {
    const Result r = run({"field-info", "--p", "2", "--m", "3"});
    CHECK(r.code == 0);
    CHECK(r.out == golden("field_info_gf8.txt"));
    CHECK(r.out.find("double-field (7 prime)") != std::string::npos);

    const Result r16 = run({"field-info", "--p", "2", "--m", "4"});
    CHECK(r16.code == 0);
    CHECK(r16.out.find("field-ring only (15 = 3·5)") != std::string::npos);

    const Result bad = run({"field-info", "--p", "4", "--m", "1"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("4 is not prime") != std::string::npos);

    CHECK(run({"field-info", "--p", "2", "--m", "3", "--modulus", "9"}).code == 2);
    CHECK(run({"field-info", "--p", "2"}).code == 2);
    CHECK(run({"field-info", "--p", "2", "--m", "3", "--bogus"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("construct") {
    const Result r = run({"construct", "frobenius", "--p", "2", "--m", "3", "--r", "1"});
    CHECK(r.code == 0);
    CHECK(r.out == golden("frobenius_gf8_r1.sbox"));
    CHECK(r.out.find("\n0 1 4 5 6 7 2 3\n") != std::string::npos);

    const Result id = run({"construct", "frobenius", "--p", "2", "--m", "3", "--r", "0"});
    CHECK(parse_sbox_file(id.out).table == std::vector<Label>{0, 1, 2, 3, 4, 5, 6, 7});

    CHECK(run({"construct", "power", "--p", "2", "--m", "3", "--k", "3"}).out == golden("cube_gf8.sbox"));

    const auto epi = [] {
        return run({"construct", "epimorphism", "--p", "3", "--m", "2", "--d", "2", "--n", "1", "--e", "3",
                    "--seed", "7"});
    };
    const Result e1 = epi(), e2 = epi();
    CHECK(e1.code == 0);
    CHECK(e1.out == e2.out);
    const SBoxFile file = parse_sbox_file(e1.out);
    CHECK(file.table.size() == 81);
    CHECK(file.codomain_size == 27);
    CHECK(file.dimension() == 2);

    const fs::path out = scratch("frob.sbox");
    CHECK(run({"construct", "frobenius", "--p", "2", "--m", "3", "--r", "1", "-o", out.string()}).code == 0);
    CHECK(slurp(out) == golden("frobenius_gf8_r1.sbox"));

    CHECK(run({"construct", "frobenius", "--p", "2", "--m", "3", "--r", "3"}).code == 2);
    CHECK(run({"construct", "power", "--p", "2", "--m", "3", "--k", "0"}).code == 2);
    CHECK(run({"construct", "epimorphism", "--p", "2", "--m", "1", "--d", "1", "--n", "2", "--e", "1", "--seed",
               "1"})
              .code == 2);
    CHECK(run({"construct"}).code == 2);
}

TEST_CASE("analyze reports") {
    const Result pn = run({"analyze", "--sbox", golden_path("frobenius_gf8_r1.sbox"), "--action", "mult", "--target",
                           "add"});
    CHECK(pn.code == 0);
    CHECK(pn.out == golden("analyze_frobenius_mult_add.json"));

    const Result star = run({"analyze", "--sbox", golden_path("frobenius_gf8_r1.sbox"), "--action", "star",
                             "--target", "mult"});
    CHECK(star.code == 0);
    CHECK(star.out == golden("analyze_frobenius_star_mult.json"));

    const Result cube = run({"analyze", "--sbox", golden_path("cube_gf8.sbox"), "--action", "xor", "--target", "add"});
    CHECK(cube.code == 1);
    CHECK(cube.out == golden("analyze_cube_xor_add.json"));

    const auto j = nlohmann::json::parse(cube.out);
    CHECK(j["pn"] == false);
    CHECK(j["uniformity"] == 2);
    for (const auto& row : j["spectrum"]) {
        int sum = 0;
        for (int c : row["counts"]) sum += c;
        CHECK(sum == 8);
    }

    // Written to a file, the console gets a summary.
    const fs::path report = scratch("cube.json");
    const Result filed = run({"analyze", "--sbox", golden_path("cube_gf8.sbox"), "--action", "xor", "--target", "add",
                              "--out", report.string()});
    CHECK(filed.code == 1);
    CHECK(slurp(report) == golden("analyze_cube_xor_add.json"));
    CHECK(filed.out.find("pn: false") != std::string::npos);
}

TEST_CASE("analyze: key order and identity over GF(4)") {
    const fs::path file = scratch("id4.sbox");
    std::ofstream(file) << format_sbox_file(FieldSpec::build(2, 2), std::vector<Label>{0, 1, 2, 3}, 4);
    const Result r = run({"analyze", "--sbox", file.string(), "--action", "xor", "--target", "add"});
    CHECK(r.code == 1);
    const auto j = nlohmann::ordered_json::parse(r.out);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"field", "action", "target_group", "target_ratio", "spectrum", "pn",
                                           "uniformity", "reason"});
    CHECK(j["uniformity"] == 4);
    CHECK(j["spectrum"][0]["counts"] == nlohmann::json::array({0, 4, 0, 0}));
}

TEST_CASE("analyze: divisibility, subgroups and errors") {
    const FieldSpec gf8 = FieldSpec::build(2, 3);
    // A GF(9) table into Z_2 through the codomain key: 2 does not divide 9.
    const fs::path div = scratch("div.sbox");
    std::ofstream(div) << format_sbox_file(FieldSpec::build(3, 2), std::vector<Label>{0, 1, 0, 1, 0, 1, 0, 1, 0}, 2);
    const Result d = run({"analyze", "--sbox", div.string(), "--action", "mult", "--target", "add"});
    CHECK(d.code == 2);  // 2 is not a power of 3
    const fs::path div3 = scratch("div3.sbox");
    std::ofstream(div3) << format_sbox_file(FieldSpec::build(2, 2), std::vector<Label>{0, 1, 0, 1}, 2);
    const Result d3 = run({"analyze", "--sbox", div3.string(), "--action", "star", "--target", "mult"});
    CHECK(d3.code == 2);

    const fs::path f16 = scratch("f16.sbox");
    std::ofstream(f16) << format_sbox_file(FieldSpec::build(2, 4), frobenius_sbox(FieldSpec::build(2, 4), 1).table(),
                                           16);
    const Result sub = run({"analyze", "--sbox", f16.string(), "--action", "star", "--target", "mult", "--subgroup",
                            "1,14"});
    CHECK(sub.code == 0);
    CHECK(nlohmann::json::parse(sub.out)["action"]["parameters"]["subgroup"] == nlohmann::json::array({1, 14}));
    // The full unit group of Z_15 is not difference-unit; Frobenius fails there.
    const Result full = run({"analyze", "--sbox", f16.string(), "--action", "star", "--target", "mult"});
    CHECK(full.code == 1);
    CHECK(run({"analyze", "--sbox", f16.string(), "--action", "star", "--target", "mult", "--subgroup", "1,2"})
              .code == 2);

    // A table over GF(9) with 9 entries into GF(9)* is not divisible: 8 does not divide 9.
    const fs::path nine = scratch("nine.sbox");
    std::vector<Label> ones(9, 1);
    std::ofstream(nine) << format_sbox_file(FieldSpec::build(3, 2), ones, 9);
    const Result dv = run({"analyze", "--sbox", nine.string(), "--action", "mult", "--target", "mult"});
    CHECK(dv.code == 1);
    CHECK(nlohmann::json::parse(dv.out)["reason"] == "divisibility: |H| = 8 does not divide |X| = 9");
    CHECK(nlohmann::json::parse(dv.out)["target_ratio"].is_null());

    const fs::path zero = scratch("zero.sbox");
    std::ofstream(zero) << format_sbox_file(gf8, std::vector<Label>{0, 0, 1, 2, 3, 4, 5, 6}, 8);
    CHECK(run({"analyze", "--sbox", zero.string(), "--action", "star", "--target", "mult"}).code == 2);
    CHECK(run({"analyze", "--sbox", zero.string(), "--action", "mult", "--target", "mult"}).code == 2);
    CHECK(run({"analyze", "--sbox", zero.string(), "--action", "rotate", "--target", "add"}).code == 2);
    CHECK(run({"analyze", "--sbox", zero.string(), "--action", "xor", "--target", "ring"}).code == 2);
    CHECK(run({"analyze", "--sbox", scratch("missing.sbox").string(), "--action", "xor", "--target", "add"}).code == 2);

    const fs::path garbage = scratch("garbage.sbox");
    std::ofstream(garbage) << "# pnfield-sbox v1 p=2 m=3 modulus=11 gamma=2 n=8\n0 1 2 3\n";
    CHECK(run({"analyze", "--sbox", garbage.string(), "--action", "xor", "--target", "add"}).code == 2);
}

TEST_CASE("construct then analyze reproduces the table") {
    const fs::path epi = scratch("epi.sbox");
    CHECK(run({"construct", "epimorphism", "--p", "2", "--m", "2", "--d", "2", "--n", "1", "--e", "2", "--seed", "7",
               "-o", epi.string()})
              .code == 0);
    const SBoxFile file = parse_sbox_file(slurp(epi));
    const VectorSpaceSpec src(FieldSpec::build(2, 2), 2);
    const VectorSpaceSpec tgt(FieldSpec::build(2, 1), 2);
    const SBox mem = random_additive_epimorphism(src, tgt, 7).as_sbox();
    CHECK(std::equal(file.table.begin(), file.table.end(), mem.table().begin(), mem.table().end()));
    const Result r = run({"analyze", "--sbox", epi.string(), "--action", "scalar", "--target", "add"});
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["target_ratio"] == 4);
    for (const auto& row : j["spectrum"]) CHECK(row["counts"] == nlohmann::json::array({4, 4, 4, 4}));

    for (std::uint32_t r2 = 0; r2 < 5; ++r2) {
        const Result c = run({"construct", "frobenius", "--p", "2", "--m", "5", "--r", std::to_string(r2)});
        const SBoxFile f = parse_sbox_file(c.out);
        const SBox s = frobenius_sbox(FieldSpec::build(2, 5), r2);
        CHECK(std::equal(f.table.begin(), f.table.end(), s.table().begin(), s.table().end()));
    }
}

TEST_CASE("verify") {
    const Result t3 = run({"verify", "--theorem", "3", "--q", "3"});
    CHECK(t3.code == 0);
    CHECK(t3.out == golden("verify_theorem3_q3.txt"));

    const Result t2 = run({"verify", "--theorem", "2", "--m", "3"});
    CHECK(t2.code == 0);
    CHECK(t2.out == golden("verify_theorem2_m3.txt"));

    const Result t1 = run({"verify", "--theorem", "1", "--p", "2", "--m", "3", "--d", "1", "--n", "1", "--e", "1",
                           "--seed", "3"});
    CHECK(t1.code == 0);
    CHECK(t1.out == golden("verify_theorem1_gf8.txt"));

    const Result t1b = run({"verify", "--theorem", "1", "--p", "2", "--m", "2", "--d", "1", "--n", "1", "--e", "1",
                            "--seed", "3"});
    CHECK(t1b.code == 0);
    CHECK(t1b.out.find("all counts 2: PASS") != std::string::npos);

    const Result q5 = run({"verify", "--theorem", "3", "--q", "5"});
    CHECK(q5.code == 0);
    CHECK(q5.out.find("part 1 30 directions") != std::string::npos);
    CHECK(q5.out.find("part 2 29 directions") != std::string::npos);

    const Result q4 = run({"verify", "--theorem", "3", "--q", "4"});
    CHECK(q4.code == 2);
    CHECK(q4.err.find("15 is not prime") != std::string::npos);

    const Result m4 = run({"verify", "--theorem", "2", "--m", "4", "--subgroup", "1,14"});
    CHECK(m4.code == 0);
    CHECK(run({"verify", "--theorem", "2", "--m", "4", "--subgroup", "1,2,4,8"}).code == 2);

    const Result cmp = run({"verify", "--theorem", "3", "--q", "3", "--part1-target", "mult"});
    CHECK(cmp.code == 1);
    CHECK(cmp.out.find("expected") != std::string::npos);

    CHECK(run({"verify", "--theorem", "1", "--p", "2", "--m", "11"}).code == 2);
    CHECK(run({"verify", "--theorem", "1", "--p", "2", "--m", "2", "--n", "3"}).code == 2);
    CHECK(run({"verify", "--theorem", "3", "--q", "14"}).code == 2);
    CHECK(run({"verify", "--theorem", "4"}).code == 2);
}
