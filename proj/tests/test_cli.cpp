#include "doctest.h"
#include "cli_harness.hpp"

#include "tatespace/generators.hpp"
#include "tatespace/json_io.hpp"
#include "tatespace/laws.hpp"

using namespace tatespace;
using harness::run;

namespace {
const FieldSpec gf2(2), gf5(5);
}

TEST_CASE("generated grid decomposes to its planted dims")
{
    const auto dir = harness::scratch_dir("tatespace-cli");
    const auto truth_path = dir / "g7.truth.json";
    const harness::Outcome gen = run({"gen", "--kind", "grid", "--seed", "7", "--truth", truth_path.string()});
    REQUIRE(gen.code == 0);
    const harness::Outcome dec = run({"decompose", "-"}, gen.out);
    REQUIRE(dec.code == 0);
    const Json d = parse_json_text(dec.out);
    const Json truth = parse_json_text(harness::slurp(truth_path));
    CHECK(d["kind"] == "rfh-decomposition");
    CHECK(d["v_dims"] == truth["v_dims"]);
    CHECK(d["w_dims"] == truth["w_dims"]);
    CHECK(d["kappa"]["ok"] == true);

    const GridTruth t = truth_from_json(truth, gf2);
    const GridDocument doc = grid_from_json(parse_json_text(gen.out), gf2);
    CHECK(t.v_dims == doc.ses->v_dims);
    std::filesystem::remove_all(dir);
}

TEST_CASE("a broken square exits 1 and names the cell")
{
    Json g = parse_json_text(run({"gen", "--kind", "grid", "--seed", "3", "--truth", "/dev/null"}).out);
    REQUIRE(g["m"].get<int>() * g["n"].get<int>() > 0);
    // find a right or up map with at least one entry and flip it
    bool flipped = false;
    for (const char* key : {"right", "up"})
        for (auto& row : g[key])
            for (auto& m : row)
                if (!flipped && !m["entries"].empty()) {
                    m["entries"][0] = 1 - m["entries"][0].get<int>();
                    flipped = true;
                }
    REQUIRE(flipped);
    const harness::Outcome out = run({"decompose", "-"}, g.dump());
    CHECK(out.code == 1);
    const Json rep = parse_json_text(out.out);
    CHECK(rep["ok"] == false);
    CHECK_FALSE(rep["issues"].empty());
    CHECK(rep["issues"][0]["at"].size() >= 2);
}

TEST_CASE("tensor of two power series files")
{
    const auto dir = harness::scratch_dir("tatespace-cli");
    const std::string ps = harness::write(dir / "ps.json", R"({"kind":"builtin","name":"power_series"})");
    const harness::Outcome out = run({"--depth", "3", "tensor", "--op", "star", ps, ps});
    REQUIRE(out.code == 0);
    CHECK(parse_json_text(out.out)["dims"] == Json::array({1, 4, 9}));
    std::filesystem::remove_all(dir);
}

TEST_CASE("malformed input exits 2 with a JSON path")
{
    const harness::Outcome bad = run({"decompose", "-"}, R"({"field":2,"m":1,"n":1,"dims":[[1]],"right":[[]],"up":[],"ses":{"v_dims":[1],"v_maps":7}})");
    CHECK(bad.code == 2);
    const Json e = parse_json_text(bad.err);
    CHECK(e["error"] == "malformed input");
    CHECK(e["path"].get<std::string>().rfind("/ses", 0) == 0);

    CHECK(run({"decompose", "-"}, "{not json").code == 2);
    CHECK(run({"check", "--suite", "nonsense"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"--field", "4", "gen", "--kind", "tower"}).code == 2);
}

TEST_CASE("dual of a builtin and of a grid")
{
    const harness::Outcome d = run({"--depth", "3", "dual", "-"}, R"({"kind":"builtin","name":"laurent"})");
    REQUIRE(d.code == 0);
    const Json j = parse_json_text(d.out);
    CHECK(j["kind"] == "tate");
    CHECK(j["c_lattice"]["dims"] == Json::array({1, 2, 3}));

    const std::string grid = run({"gen", "--kind", "grid", "--seed", "5", "--truth", "/dev/null"}).out;
    const harness::Outcome once = run({"dual", "-"}, grid);
    REQUIRE(once.code == 0);
    const harness::Outcome twice = run({"dual", "-"}, once.out);
    REQUIRE(twice.code == 0);
    CHECK(parse_json_text(twice.out) == parse_json_text(grid));
}

TEST_CASE("report and check subcommands")
{
    const harness::Outcome r = run({"report", "-"}, R"({"kind":"builtin","name":"power_series"})");
    CHECK(r.code == 0);
    CHECK(r.out.find("dims: [1 2 3 4]") != std::string::npos);
    const harness::Outcome c = run({"check", "--suite", "appendix", "--seed", "3"});
    CHECK(c.code == 0);
    CHECK(c.out.find("0 failed") != std::string::npos);
}

TEST_CASE("json round trip of random objects")
{
    Rng rng(71);
    for (int t = 0; t < 60; ++t) {
        const FieldSpec& f = t % 2 ? gf5 : gf2;
        const std::size_t depth = rng.range(1, 5);
        const AnyObject objs[] = {random_tower(rng, f, 4, depth), random_indtower(rng, f, 4, depth),
                                  random_tate(rng, f, 4, depth)};
        for (const AnyObject& o : objs) {
            const Json once = to_json(o, depth);
            CHECK(to_json(object_from_json(once, gf2), depth) == once);
        }
        const Matrix m = rng.matrix(f, rng.range(0, 4), rng.range(0, 4));
        CHECK(matrix_from_json(to_json(m), f) == m);
    }
}

TEST_CASE("the law registry passes for a fixed seed")
{
    const SuiteOutcome s = run_suite("laws", 5);
    for (const auto& [law, res] : s.results) {
        CAPTURE(law->name);
        CAPTURE(res.detail);
        CHECK(res.ok);
    }
    CHECK(s.results.size() == all_laws().size());
}
