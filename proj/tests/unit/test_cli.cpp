#include <doctest.h>

#include <fstream>
#include <sstream>

#include "../support/examples.hpp"
#include "coxskel/cli.hpp"
#include "coxskel/theta.hpp"

using namespace coxskel;
using namespace coxskel::examples;

namespace {

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(COXSKEL_FIXTURES) + "/" + name, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool has_line(const Report& r, const std::string& line) {
    return std::find(r.summary.begin(), r.summary.end(), line) != r.summary.end();
}

CommandOptions cmd(const std::string& c, const std::string& sub = "") {
    CommandOptions o;
    o.command = c;
    o.sub = sub;
    return o;
}

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const CoxError& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Invariant;
}

std::set<ZVec> classes(const ToricData& td) {
    std::set<ZVec> s;
    for (const auto& e : enumerate_theta(td)) s.insert(e.cls);
    return s;
}

}  // namespace

TEST_CASE("FNV-1a test vectors") {
    CHECK(hex64(fnv1a("")) == "cbf29ce484222325");
    CHECK(hex64(fnv1a("a")) == "af63dc4c8601ec8c");
    CHECK(hex64(fnv1a("foobar")) == "85944171f73967e8");
}

TEST_CASE("fixtures parse") {
    for (const auto* name : {"p1.json", "p2.json", "p3.json", "p4.json", "h3.json", "p113.json", "flop.json", "bl2p3.json"}) {
        auto doc = parse_input(fixture(name));
        CHECK_FALSE(doc.complex.has_value());
        CHECK(doc.digest.size() == 16);
    }
    for (const auto* name : {"twisted_cubic.json", "five_points.json", "p1_minus3.json"}) {
        auto doc = parse_input(fixture(name));
        REQUIRE(doc.complex.has_value());
        CHECK(validate_complex(*doc.complex, doc.td.cg).valid);
    }
    // the file H3 equals the built-in example
    auto h3 = parse_input(fixture("h3.json")).td;
    CHECK(classes(h3) == classes(hirzebruch(3)));
    CHECK(h3.cg.degrees() == hirzebruch(3).cg.degrees());
}

TEST_CASE("schema diagnostics") {
    auto msg = [](const std::string& text) {
        try {
            parse_input(text);
        } catch (const CoxError& e) {
            CHECK(e.kind() == ErrorKind::Schema);
            return std::string(e.what());
        }
        FAIL("accepted: " << text);
        return std::string();
    };
    CHECK(msg("{\"mode\": \"fan\",\n \"dim\": 2,\n ]").find("line 3") != std::string::npos);
    CHECK(msg("{\"mode\":\"fan\",\"dim\":2,\"rays\":[[1,0],[0,1]],\"cones\":[[0,1]],\"colour\":1}").find("/colour") != std::string::npos);
    CHECK(msg("{\"mode\":\"fan\",\"dim\":2,\"rays\":[[1,0],[0,1]]}").find("/cones: missing") != std::string::npos);
    CHECK(msg("{\"mode\":\"fan\",\"dim\":2,\"rays\":[[1,0],[0,1.5]],\"cones\":[[0,1]]}").find("/rays/1/1") != std::string::npos);
    CHECK(msg("{\"mode\":\"fan\",\"dim\":2,\"rays\":[[1,0],[0,1]],\"cones\":[[0,2]]}").find("/cones/0/1") != std::string::npos);
    CHECK(msg("{\"mode\":\"fan\",\"dim\":2,\"rays\":[[1,0,0],[0,1]],\"cones\":[[0,1]]}").find("/rays/0") != std::string::npos);
    CHECK(msg("{\"mode\":\"toric\"}").find("/mode") != std::string::npos);
    CHECK(msg("{\"mode\":\"cox\",\"degrees\":[[1],[1,2]]}").find("/degrees/1") != std::string::npos);
    // overlapping cones are a fan violation
    CHECK_FALSE(msg("{\"mode\":\"fan\",\"dim\":2,\"rays\":[[1,0],[0,1],[1,1]],\"cones\":[[0,1],[0,2]]}").empty());
    // complex errors point into the complex
    std::string tc = fixture("twisted_cubic.json");
    std::string broken = tc;
    broken.replace(broken.find("x1*x5"), 5, "x1*y5");
    CHECK(msg(broken).find("/complex/maps/0/0/1") != std::string::npos);
    // integers may be decimal strings, of any size
    auto big = parse_input("{\"mode\":\"cox\",\"degrees\":[[\"1\"],[\"1\"],[\"123456789012345678901234567890\"]]}");
    CHECK(big.td.cg.degree(2) == ZVec{Int("123456789012345678901234567890")});
}

TEST_CASE("fan to cox round trip") {
    for (const auto& td : {hirzebruch(3), p113(), projective_space(2), projective_space(3), flop_fan()}) {
        auto doc = parse_input(cox_document(td).dump());
        CHECK(classes(doc.td) == classes(td));
        auto g1 = secondary_fan(td), g2 = secondary_fan(doc.td);
        REQUIRE(g1.chambers.size() == g2.chambers.size());
        CHECK(g1.faces.size() == g2.faces.size());
        for (std::size_t i = 0; i < g1.chambers.size(); ++i) CHECK(g1.chambers[i].extreme_rays == g2.chambers[i].extreme_rays);
    }
}

TEST_CASE("command reports") {
    auto theta = run_command(cmd("theta"), fixture("h3.json"));
    CHECK(has_line(theta, "elements: 6"));
    CHECK(has_line(run_command(cmd("theta"), fixture("p3.json")), "elements: 4"));
    auto fro = cmd("theta");
    fro.frobenius = Int(30);
    CHECK(has_line(run_command(fro, fixture("h3.json")), "oracle agreement: true"));
    fro.frobenius = Int(4);
    CHECK(has_line(run_command(fro, fixture("h3.json")), "oracle agreement: false"));

    CHECK(has_line(run_command(cmd("gkz"), fixture("bl2p3.json")), "chambers: 5"));
    CHECK(has_line(run_command(cmd("check-exceptional"), fixture("h3.json")), "verdict: pass (36 pairs)"));
    CHECK(has_line(run_command(cmd("check-exceptional"), fixture("flop.json")), "verdict: pass (9 pairs, tilting part only)"));

    auto tr = cmd("transform");
    tr.cls = ZVec{Int(-2)};
    auto t = run_command(tr, fixture("flop.json"));
    CHECK(has_line(t, "H1 probe: nonzero"));
    CHECK(has_line(t, "verdict: fail"));
    tr.cls = ZVec{Int(1)};
    CHECK(has_line(run_command(tr, fixture("flop.json")), "R0: deficit"));
    tr.cls = ZVec{Int(-1)};
    auto ok = run_command(tr, fixture("flop.json"));
    CHECK(has_line(ok, "H1 probe: zero"));
    CHECK(has_line(ok, "verdict: pass"));
    CHECK(has_line(run_command(cmd("transform"), fixture("h3.json")), "verdict: pass"));

    // basis sizes match the dimensions
    auto homs = run_command(cmd("homs"), fixture("h3.json"));
    const auto& dims = homs.doc["result"]["dims"];
    const auto& bases = homs.doc["certificates"]["bases"];
    REQUIRE(bases.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j) CHECK(std::to_string(bases[i][j].size()) == dims[i][j].get<std::string>());

    auto sh = run_command(cmd("sharpen"), fixture("h3.json"));
    CHECK(has_line(sh, "theta_circ: (2, -1) (1, -1)"));
    CHECK(sh.doc["result"]["circuit"] == Json::array({"1", "-3", "1", "0"}));

    CHECK(has_line(run_command(cmd("monad", "vanishing"), fixture("twisted_cubic.json")), "vanishing: pass (11 faces)"));
    CHECK(has_line(run_command(cmd("monad", "strand"), fixture("p1_minus3.json")), "degree 1: dim 2, cohomology 2"));
    auto face = cmd("monad", "restrict");
    face.face = 3;
    CHECK(has_line(run_command(face, fixture("five_points.json")), "face 3: O(0)^5 <- O(-1)^5 <- 0"));

    auto svg = run_command(cmd("plot", "secondary-fan"), fixture("h3.json"));
    CHECK(svg.svg.rfind("<svg", 0) == 0);
    CHECK(svg.svg.find("chamber 1") != std::string::npos);
}

TEST_CASE("command errors") {
    CHECK(kind_of([] { run_command(cmd("plot", "theta"), fixture("bl2p3.json")); }) == ErrorKind::Precondition);
    try {
        run_command(cmd("plot"), fixture("p3.json"));
    } catch (const CoxError& e) {
        CHECK(std::string(e.what()) == "plot supports rank 2 only");
    }
    CHECK(kind_of([] { run_command(cmd("monad", "strand"), fixture("h3.json")); }) == ErrorKind::Schema);
    CHECK(kind_of([] { run_command(cmd("monad", "fold"), fixture("p1_minus3.json")); }) == ErrorKind::Schema);
    CHECK(kind_of([] { run_command(cmd("nonsense"), fixture("h3.json")); }) == ErrorKind::Schema);
    auto wide = cmd("transform");
    wide.cls = ZVec{Int(1), Int(2), Int(3)};
    CHECK(kind_of([&] { run_command(wide, fixture("h3.json")); }) == ErrorKind::Schema);
    auto chamber = cmd("transform");
    chamber.cls = ZVec{Int(0), Int(0)};
    chamber.source = 7;
    CHECK(kind_of([&] { run_command(chamber, fixture("h3.json")); }) == ErrorKind::Precondition);
    CHECK(kind_of([] { parse_class("1,,2"); }) == ErrorKind::Schema);
    CHECK(parse_class("-1, 2") == ZVec{Int(-1), Int(2)});
}

TEST_CASE("reports are deterministic and record the seed") {
    auto o = cmd("theta");
    o.order_seed = 99;
    auto a = serialize(run_command(o, fixture("h3.json")));
    auto b = serialize(run_command(o, fixture("h3.json")));
    CHECK(a == b);
    CHECK(a.find("\"order_seed\": \"99\"") != std::string::npos);
    auto homs = serialize(run_command(cmd("homs"), fixture("bl2p3.json")));
    CHECK(homs == serialize(run_command(cmd("homs"), fixture("bl2p3.json"))));
}
