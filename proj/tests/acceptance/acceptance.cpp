// Acceptance run: one line per criterion, exit status 1 if any criterion fails.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "../support/cech.hpp"
#include "../support/examples.hpp"
#include "coxskel/cli.hpp"
#include "coxskel/cohomology.hpp"
#include "coxskel/coxcat.hpp"
#include "coxskel/monads.hpp"
#include "coxskel/theta.hpp"

using namespace coxskel;
using namespace coxskel::examples;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            notes.push_back(what);
        }
    }
};

using Clock = std::chrono::steady_clock;

long long millis_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

std::string fixture(const std::string& name) {
    std::ifstream in(std::string(COXSKEL_FIXTURES) + "/" + name, std::ios::binary);
    if (!in) fail(ErrorKind::Schema, "missing fixture " + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::set<ZVec> classes(const std::vector<ThetaElement>& t) {
    std::set<ZVec> s;
    for (const auto& e : t) s.insert(e.cls);
    return s;
}

const ThetaElement& element(const std::vector<ThetaElement>& t, const ZVec& cls) {
    for (const auto& e : t)
        if (e.cls == cls) return e;
    fail(ErrorKind::Invariant, "class " + to_string(cls) + " not in Theta");
}

std::size_t face_with_rays(const SecondaryFan& g, std::vector<ZVec> rays) {
    std::sort(rays.begin(), rays.end());
    for (const auto& f : g.faces) {
        auto r = f.extreme_rays;
        std::sort(r.begin(), r.end());
        if (r == rays) return f.id;
    }
    fail(ErrorKind::Invariant, "no face with the requested rays");
}

// restricted twists of homological slot k, repeated by multiplicity
std::vector<ZVec> twists(const RestrictedComplex& r, std::size_t k) {
    std::vector<ZVec> out;
    for (const auto& s : r.terms[k])
        for (std::size_t m = 0; m < s.mult; ++m) out.push_back(s.restricted);
    return out;
}

bool all_rays_used(const Chamber& c, std::size_t nvars) { return c.fan.used_rays().size() == nvars; }

// ---- 1 ----
Outcome theta_sets() {
    Outcome o;
    auto timed = [&](const ToricData& td, const std::set<ZVec>& want) {
        auto t0 = Clock::now();
        auto got = enumerate_theta(td);
        auto ms = millis_since(t0);
        o.require(classes(got) == want && got.size() == want.size(), td.name + " set differs");
        o.require(ms < 1000, td.name + " took " + std::to_string(ms) + " ms");
    };
    for (std::size_t n = 1; n <= 4; ++n) {
        std::set<ZVec> want;
        for (long i = 0; i <= static_cast<long>(n); ++i) want.insert(zv({-i}));
        timed(projective_space(n), want);
    }
    timed(hirzebruch(3), {zv({0, 0}), zv({-1, 0}), zv({2, -1}), zv({1, -1}), zv({0, -1}), zv({-1, -1})});
    timed(bl2p3(), {zv({0, 0, 0}), zv({-1, 0, 0}), zv({-1, 0, -1}), zv({-1, -1, 0}), zv({-1, -1, -1}), zv({-2, 0, -1}),
                    zv({-2, -1, 0}), zv({-2, -1, -1}), zv({-3, -1, -1})});
    timed(flop(), {zv({-1}), zv({0}), zv({1})});
    return o;
}

// ---- 2 ----
Outcome chamber_counts() {
    Outcome o;
    auto t0 = Clock::now();
    for (std::size_t n = 1; n <= 4; ++n) o.require(secondary_fan(projective_space(n)).chambers.size() == 1, "P" + std::to_string(n));
    o.require(secondary_fan(hirzebruch(3)).chambers.size() == 2, "H3");
    o.require(secondary_fan(flop()).chambers.size() == 2, "flop");
    o.require(secondary_fan(bl2p3()).chambers.size() == 5, "Bl2P3");
    auto ms = millis_since(t0);
    o.require(ms < 5000, "took " + std::to_string(ms) + " ms");
    return o;
}

// ---- 3 ----
Outcome hom_table() {
    Outcome o;
    auto td = hirzebruch(3);
    auto t = enumerate_theta(td);
    const auto& a = element(t, zv({-1, 0}));
    const auto& b = element(t, zv({2, -1}));
    const auto& d5 = element(t, zv({-1, -1}));
    o.require(hom_theta(td, a.witness, b.witness).dim == Dim{false, 0}, "Hom((-1,0),(2,-1)) != 0");
    o.require(hom_theta(td, b.witness, a.witness).dim == Dim{false, 1}, "Hom((2,-1),(-1,0)) != 1");
    o.require(hom_theta(td, d5.witness, b.witness).dim == Dim{false, 4}, "Hom((-1,-1),(2,-1)) != 4");
    return o;
}

// ---- 4 ----
Outcome exceptional() {
    Outcome o;
    auto t0 = Clock::now();
    for (const auto& [td, pairs] : {std::pair{hirzebruch(3), std::size_t{36}}, std::pair{bl2p3(), std::size_t{81}}}) {
        auto g = secondary_fan(td);
        auto cox = build_theta_cox(td, g, enumerate_theta(td));
        auto v = check_full_strong_exceptional(td, g, endomorphism_algebra(td, order_theta(td, cox.elements)));
        o.require(v.pass && v.complete && v.pairs == pairs, td.name + " verdict");
    }
    // triangular for any produced order
    auto h = hirzebruch(3);
    auto gh = secondary_fan(h);
    auto hc = build_theta_cox(h, gh, enumerate_theta(h));
    for (std::uint64_t seed = 1; seed <= 8; ++seed)
        o.require(check_full_strong_exceptional(h, gh, endomorphism_algebra(h, order_theta(h, hc.elements, seed))).pass,
                  "H3 order seed " + std::to_string(seed));
    auto f = flop();
    auto gf = secondary_fan(f);
    auto fc = build_theta_cox(f, gf, enumerate_theta(f));
    auto vf = check_full_strong_exceptional(f, gf, endomorphism_algebra(f, fc.elements));
    o.require(vf.pass && !vf.complete && vf.pairs == 9, "flop tilting verdict");
    auto ms = millis_since(t0);
    o.require(ms < 60000, "took " + std::to_string(ms) + " ms");
    return o;
}

// ---- 5 ----
Outcome transforms() {
    Outcome o;
    std::size_t runs = 0;
    for (const auto& td : {hirzebruch(3), flop()}) {
        auto g = secondary_fan(td);
        auto cox = build_theta_cox(td, g, enumerate_theta(td));
        std::map<std::pair<std::size_t, std::size_t>, std::set<ZVec>> cross;
        for (const auto& e : cox.elements)
            for (std::size_t i = 0; i < g.chambers.size(); ++i) {
                if (!in_chamber(g, i, e.d)) continue;
                for (std::size_t j = 0; j < g.chambers.size(); ++j) {
                    auto r = verify_theta_transform(td, g, i, j, e);
                    ++runs;
                    o.require(r.pass, td.name + " " + std::to_string(i) + "->" + std::to_string(j) + " " + to_string(e.cls));
                    if (i != j) cross[{i, j}].insert(e.cls);
                }
            }
        // Y+ is chamber 0: O(0) and O(-1) move across in that direction, O(0) and O(1) in the other
        if (td.name == "flop") {
            o.require(cross[{0, 1}] == std::set<ZVec>{zv({0}), zv({-1})}, "flop classes from Y+");
            o.require(cross[{1, 0}] == std::set<ZVec>{zv({0}), zv({1})}, "flop classes from Y-");
        }
    }
    // star-shapedness certificate for H3 -> P(1,1,3) on (-1,-1)
    auto h = hirzebruch(3);
    auto g = secondary_fan(h);
    auto r = verify_theta_transform(h, g, 0, 1, element(enumerate_theta(h), zv({-1, -1})));
    std::size_t nonempty = 0;
    for (const auto& s : r.star) nonempty += s.nonempty;
    o.require(r.star_ok && !r.star.empty() && nonempty > 0, "star certificate");
    o.notes.push_back(std::to_string(runs) + " triples");
    return o;
}

// ---- 6 ----
Outcome flop_controls() {
    Outcome o;
    auto f = flop();
    auto g = secondary_fan(f);
    auto plus = transform_line_bundle(f, g, 0, 1, zv({1}));
    o.require(plus.r0_deficit && !plus.pass, "d=+1 deficit");
    auto m2 = transform_line_bundle(f, g, 0, 1, zv({-2}));
    o.require(m2.higher_nonzero && !m2.pass, "d=-2 H1 probe");
    return o;
}

// ---- 7 ----
Outcome monad_tables() {
    Outcome o;
    // twisted cubic on Bl2P3
    auto tc = parse_input(fixture("twisted_cubic.json"));
    const auto& td = tc.td;
    auto g = secondary_fan(td);
    o.require(validate_complex(*tc.complex, td.cg).valid, "twisted cubic complex invalid");
    auto P = [](const char* s) { return parse_poly(s, 6); };
    auto r3 = restrict_to_face(*tc.complex, td, g, face_with_rays(g, {zv({1, 1, 1})}));
    o.require(twists(r3, 2) == std::vector<ZVec>{zv({0})} && twists(r3, 1) == std::vector<ZVec>(3, zv({-2})) &&
                  twists(r3, 0) == std::vector<ZVec>(2, zv({-3})) && r3.d2_zero,
              "P3 terms");
    o.require(r3.maps[1][0] == std::vector<Poly>{P("x1*x3 - x2^2"), P("x0*x2 - x1^2"), P("x0*x3 - x1*x2")}, "P3 map");
    auto rh = restrict_to_face(*tc.complex, td, g, face_with_rays(g, {zv({1, 0, 0}), zv({1, 1, 0})}));
    o.require(rh.terms[0].empty() && rh.terms[1].size() == 1 && rh.terms[1][0].mult == 1 && rh.terms[2].size() == 1 &&
                  rh.maps[1][0][0] == P("x1*x3 - x2^2*x4"),
              "H1 complex");
    // the surviving summand is S(-2,-1,0)
    if (rh.terms[1].size() == 1) o.require(rh.terms[1][0].source_index == 0, "H1 summand");
    auto r2 = restrict_to_face(*tc.complex, td, g, face_with_rays(g, {zv({0, 1, 0}), zv({1, 1, 0})}));
    o.require(r2.terms[0].empty() && twists(r2, 1) == std::vector<ZVec>{zv({-2})} && twists(r2, 2) == std::vector<ZVec>{zv({0})} &&
                  r2.maps[1][0][0] == P("x1*x3 - x2^2"),
              "P2 complex");

    // the H3 table: rows are Theta, columns H3, P(1,1,3), P^1, Spec k
    auto h = hirzebruch(3);
    auto gh = secondary_fan(h);
    const std::vector<ZVec> rows = {zv({0, 0}), zv({-1, 0}), zv({2, -1}), zv({1, -1}), zv({0, -1}), zv({-1, -1})};
    ThetaComplex single;
    single.nvars = 4;
    single.terms = {{}};
    for (const auto& c : rows) single.terms[0].push_back({c, 1});
    using O = std::optional<ZVec>;
    auto column = [&](std::size_t face) {
        std::vector<O> out(rows.size());
        auto r = restrict_to_face(single, h, gh, face);
        for (const auto& s : r.terms[0]) out[s.source_index] = s.restricted;
        return out;
    };
    const std::size_t f_h3 = gh.chambers[0].face, f_w = face_with_rays(gh, {zv({0, 1})}), f_p1 = face_with_rays(gh, {zv({1, 0})}),
                      f_pt = face_with_rays(gh, {});
    std::vector<O> want_h3(rows.begin(), rows.end());
    std::vector<O> want_w = {zv({0}), zv({-1}), zv({-1}), zv({-2}), zv({-3}), zv({-4})};
    std::vector<O> want_p1 = {zv({0}), zv({-1}), O(), O(), O(), O()};
    std::vector<O> want_pt = {ZVec{}, O(), O(), O(), O(), O()};
    o.require(column(f_h3) == want_h3, "H3 column");
    o.require(column(f_w) == want_w, "P(1,1,3) column");
    o.require(column(f_p1) == want_p1, "P1 column");
    o.require(column(f_pt) == want_pt, "Spec k column");
    std::vector<long> weights;
    for (std::size_t i = 0; i < gh.faces[f_w].quotient_cg.nvars; ++i)
        weights.push_back(static_cast<long>(gh.faces[f_w].quotient_cg.degree(i)[0]));
    std::sort(weights.begin(), weights.end());
    o.require(weights == std::vector<long>{1, 1, 3}, "wall is not P(1,1,3)");

    // five points through every column
    auto fp = parse_input(fixture("five_points.json"));
    const auto& c5 = *fp.complex;
    o.require(validate_complex(c5, fp.td.cg).valid, "five points complex invalid");
    auto rw = restrict_to_face(c5, h, gh, f_w);
    auto sorted = [](std::vector<ZVec> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<ZVec> mid(5, zv({-1}));
    mid.insert(mid.end(), 5, zv({-3}));
    o.require(twists(rw, 2) == std::vector<ZVec>(5, zv({0})) && sorted(twists(rw, 1)) == sorted(mid) &&
                  twists(rw, 0) == std::vector<ZVec>(5, zv({-4})) && rw.d2_zero,
              "five points on P(1,1,3)");
    auto rp = restrict_to_face(c5, h, gh, f_p1);
    o.require(twists(rp, 2) == std::vector<ZVec>(5, zv({0})) && twists(rp, 1) == std::vector<ZVec>(5, zv({-1})) && rp.terms[0].empty(),
              "five points on P1");
    auto rk = restrict_to_face(c5, h, gh, f_pt);
    o.require(twists(rk, 2).size() == 5 && rk.terms[1].empty() && rk.terms[0].empty(), "five points on Spec k");
    auto st = degree_zero_strand(c5, h);
    o.require(st.cohomology == std::vector<std::size_t>{0, 0, 5}, "five points strand");
    return o;
}

// ---- 8 ----
Outcome sharpen() {
    Outcome o;
    auto h = hirzebruch(3);
    auto r = sharpened_reduction(h, secondary_fan(h));
    o.require(!r.noop, "no-op");
    o.require(r.collection.rays == std::vector<std::size_t>{0, 2}, "P");
    o.require(r.collection.circuit == zv({1, -3, 1, 0}), "circuit");
    ZVec deg;
    for (std::size_t rho = 0; rho < 4; ++rho) deg.push_back(r.collection.degree(h.cg, h.cg.degree(rho)));
    o.require(deg == zv({1, -3, 1, 0}), "deg_Gamma");
    o.require(r.theta_circ == std::vector<ZVec>{zv({2, -1}), zv({1, -1})}, "theta_circ");
    bool found = false;
    for (const auto& k : r.koszul) {
        if (k.cls != zv({2, -1})) continue;
        found = true;
        o.require(k.terms.size() == 3 && k.all_in_theta, "Koszul shape");
        if (k.terms.size() == 3)
            o.require(k.terms[0].cls == zv({2, -1}) && k.terms[0].mult == 1 && k.terms[1].cls == zv({1, -1}) && k.terms[1].mult == 2 &&
                          k.terms[2].cls == zv({0, -1}) && k.terms[2].mult == 1,
                      "Koszul terms");
        for (const auto& t : k.terms) o.require(theta_membership(h, t.cls).member, "term outside Theta");
    }
    o.require(found, "no Koszul complex for (2,-1)");
    return o;
}

// ---- 9 ----
Rat random_unit(std::mt19937_64& rng, bool open_low, bool open_high) {
    std::uniform_int_distribution<long> den(1, 12);
    while (true) {
        long q = den(rng);
        std::uniform_int_distribution<long> num(0, q);
        long p = num(rng);
        if ((open_low && p == 0) || (open_high && p == q)) continue;
        return Rat(p, q);
    }
}

std::vector<ToricData> property_examples() {
    return {projective_space(1), projective_space(2), projective_space(3), projective_space(4), hirzebruch(3), p113(), flop(), bl2p3()};
}

Outcome properties() {
    Outcome o;
    std::mt19937_64 rng(20240917);
    std::size_t cech = 0, demazure = 0, homzero = 0, frob = 0, mink = 0;
    std::size_t cech_bad = 0, demazure_bad = 0, homzero_bad = 0, frob_bad = 0, mink_bad = 0;

    for (const auto& td : property_examples()) {
        auto g = secondary_fan(td);
        // (a) complete chamber fans of the example
        std::vector<StackyFan> fans;
        if (td.fan) {
            fans.push_back(td.stacky());
        } else {
            for (const auto& c : g.chambers)
                if (c.fan.complete()) fans.push_back(c.stacky);
        }
        if (!fans.empty()) {
            std::uniform_int_distribution<int> coef(-3, 3);
            for (std::size_t k = 0; k < 50; ++k) {
                const auto& sf = fans[k % fans.size()];
                ZVec a(td.nvars());
                for (auto& x : a) x = coef(rng);
                auto t = line_bundle_cohomology(sf, a);
                auto c = oracle::cech_cohomology(sf, a, oracle::arrangement_box(sf, a, 2));
                ++cech;
                bool ok = true;
                for (std::size_t p = 0; p < t.h.size(); ++p)
                    if (t.h[p].infinite || !c.shell_clean[p] || t.h[p].value != c.h[p]) ok = false;
                if (!ok) {
                    ++cech_bad;
                    o.require(false, td.name + " Cech " + to_string(a));
                }
            }
        }

        // (b), (c) nef A on chambers that keep every ray, random theta
        std::vector<std::size_t> full;
        for (const auto& c : g.chambers)
            if (all_rays_used(c, td.nvars())) full.push_back(c.id);
        o.require(!full.empty(), td.name + " has no chamber using every ray");
        for (std::size_t k = 0; k < 100 && !full.empty(); ++k) {
            const Chamber& ch = g.chambers[full[k % full.size()]];
            std::uniform_int_distribution<int> w(0, 3);
            ZVec cls = zero_z(td.cg.width());
            for (const auto& ray : ch.extreme_rays) {
                ZVec r = ray;
                r.resize(td.cg.width(), Int(0));
                for (int s = w(rng); s > 0; --s) cls = td.cg.add(cls, r);
            }
            ZVec A = td.cg.lift(cls);
            QVec theta(td.dim);
            for (auto& x : theta) x = random_unit(rng, false, true);
            auto rep = verify_homzero(td, ch.stacky, A, theta);
            ++demazure;
            ++homzero;
            bool higher_ok = true;
            for (const auto& x : rep.higher)
                if (!x.is_zero()) higher_ok = false;
            if (!higher_ok) {
                ++demazure_bad;
                o.require(false, td.name + " Demazure A=" + to_string(A) + " theta=" + to_string(theta));
            }
            if (!(rep.h0 == rep.predicted)) {
                ++homzero_bad;
                o.require(false, td.name + " homzero A=" + to_string(A) + " theta=" + to_string(theta));
            }
        }

        // (d)
        auto t = enumerate_theta(td);
        ++frob;
        if (frobenius_oracle(td, witness_denominator_lcm(t)) != classes(t)) {
            ++frob_bad;
            o.require(false, td.name + " Frobenius");
        }

        // (e) random points of closed Z+ plus open Z- lie in Z, for every nef wall
        if (!td.fan) continue;
        std::vector<std::size_t> walls;
        try {
            walls = nef_walls(td, g);
        } catch (const CoxError&) {
            continue;  // no projective chamber
        }
        auto Z = bt_zonotope(td);
        for (auto wf : walls) {
            auto r = sharpened_reduction(td, g, wf);
            if (r.noop) continue;
            for (std::size_t k = 0; k < 40; ++k) {
                QVec z = zero_q(Z.dim);
                for (std::size_t i = 0; i < r.zplus.gens.size(); ++i)
                    z = add(z, scale(r.zplus.gens[i], -random_unit(rng, false, false)));
                for (std::size_t i = 0; i < r.zminus.gens.size(); ++i)
                    z = add(z, scale(r.zminus.gens[i], -random_unit(rng, true, true)));
                ++mink;
                if (!Z.contains(z)) {
                    ++mink_bad;
                    o.require(false, td.name + " Minkowski " + to_string(z));
                }
            }
        }
    }
    // the Hirzebruch family supplies further walls
    for (long a = 0; a <= 4; ++a) {
        auto td = hirzebruch(a);
        auto g = secondary_fan(td);
        auto Z = bt_zonotope(td);
        for (auto wf : nef_walls(td, g)) {
            auto r = sharpened_reduction(td, g, wf);
            if (r.noop) continue;
            for (std::size_t k = 0; k < 40; ++k) {
                QVec z = zero_q(Z.dim);
                for (const auto& gen : r.zplus.gens) z = add(z, scale(gen, -random_unit(rng, false, false)));
                for (const auto& gen : r.zminus.gens) z = add(z, scale(gen, -random_unit(rng, true, true)));
                ++mink;
                if (!Z.contains(z)) {
                    ++mink_bad;
                    o.require(false, td.name + " Minkowski " + to_string(z));
                }
            }
        }
    }
    o.require(mink > 0, "no Minkowski samples drawn");
    std::ostringstream s;
    s << "(a) " << cech - cech_bad << "/" << cech << " (b) " << demazure - demazure_bad << "/" << demazure << " (c) "
      << homzero - homzero_bad << "/" << homzero << " (d) " << frob - frob_bad << "/" << frob << " (e) " << mink - mink_bad << "/"
      << mink;
    o.notes.insert(o.notes.begin(), s.str());
    return o;
}

// ---- 10 ----
Outcome determinism() {
    Outcome o;
    const std::vector<std::string> varieties = {"p1.json", "p2.json", "p3.json", "p4.json", "h3.json", "p113.json", "flop.json", "bl2p3.json"};
    const std::vector<std::string> complexes = {"twisted_cubic.json", "five_points.json", "p1_minus3.json"};
    std::vector<CommandOptions> cmds;
    auto add_cmd = [&](const std::string& c, const std::string& sub = "") {
        CommandOptions x;
        x.command = c;
        x.sub = sub;
        cmds.push_back(x);
        return &cmds.back();
    };
    add_cmd("theta");
    add_cmd("theta")->star = true;
    add_cmd("theta")->order_seed = 5;
    add_cmd("gkz");
    add_cmd("homs");
    add_cmd("check-exceptional");
    add_cmd("transform");
    add_cmd("sharpen");
    for (const auto* p : {"secondary-fan", "zonotope", "theta"}) add_cmd("plot", p);
    for (const auto* m : {"validate", "restrict", "strand", "vanishing"}) add_cmd("monad", m);

    auto once = [](const CommandOptions& c, const std::string& text) {
        try {
            auto r = run_command(c, text);
            return serialize(r) + r.svg + [&] {
                std::string s;
                for (const auto& l : r.summary) s += l + "\n";
                return s;
            }();
        } catch (const CoxError& e) {
            return "error " + std::to_string(static_cast<int>(e.kind())) + ": " + e.what();
        }
    };
    std::size_t runs = 0;
    std::vector<std::string> all = varieties;
    all.insert(all.end(), complexes.begin(), complexes.end());
    for (const auto& f : all) {
        const std::string text = fixture(f);
        for (auto c : cmds) {
            if (c.command == "transform" && f == "twisted_cubic.json") continue;
            std::string a = once(c, text), b = once(c, text);
            ++runs;
            o.require(a == b, f + " " + c.command + " " + c.sub);
        }
    }
    o.notes.push_back(std::to_string(runs) + " command runs");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"Theta enumeration", theta_sets},
        {"secondary fan chamber counts", chamber_counts},
        {"Hom table", hom_table},
        {"full strong exceptional checks", exceptional},
        {"Theta transform verification", transforms},
        {"flop negative controls", flop_controls},
        {"monad restriction tables", monad_tables},
        {"sharpened generation", sharpen},
        {"property suites", properties},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = Clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.notes.push_back(std::string("exception: ") + e.what());
        }
        std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first << " ("
                  << millis_since(t0) << " ms)";
        for (const auto& n : o.notes) std::cout << "; " << n;
        std::cout << std::endl;
        if (!o.pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
