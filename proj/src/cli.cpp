#include "coxskel/cli.hpp"

#include <algorithm>
#include <set>

#include "coxskel/coxcat.hpp"
#include "coxskel/theta.hpp"

namespace coxskel {

namespace {

std::string vec_str(const ZVec& v) { return to_string(v); }

Json options_json(const CommandOptions& o) {
    Json j = Json::object();
    if (!o.sub.empty()) j["sub"] = o.sub;
    if (o.star) j["star"] = true;
    if (o.frobenius) j["frobenius"] = to_string(*o.frobenius);
    if (o.order_seed) j["order_seed"] = std::to_string(*o.order_seed);
    j["char"] = std::to_string(o.characteristic);
    if (o.command == "transform") j["nef_battery"] = std::to_string(o.nef_battery);
    if (o.cls) j["class"] = to_json(*o.cls);
    if (o.source) j["source"] = std::to_string(*o.source);
    if (o.target) j["target"] = std::to_string(*o.target);
    if (o.face) j["face"] = std::to_string(*o.face);
    if (o.wall) j["wall"] = std::to_string(*o.wall);
    return j;
}

Json element_json(const ThetaElement& e) {
    Json j = {{"class", to_json(e.cls)}, {"d", to_json(e.d)}, {"divisor", to_json(e.divisor)}, {"witness", to_json(e.witness)}};
    if (e.chamber) j["chamber"] = std::to_string(*e.chamber);
    return j;
}

struct Ordered {
    std::vector<ThetaElement> elements;
    bool ordered = true;
    std::string note;
};

Ordered ordered_theta(const ToricData& td, const std::vector<ThetaElement>& elems, const CommandOptions& o) {
    try {
        return {order_theta(td, elems, o.order_seed), true, ""};
    } catch (const CoxError& e) {
        if (e.kind() != ErrorKind::Precondition) throw;
        return {elems, false, e.what()};
    }
}

void require_chamber(const SecondaryFan& g, std::size_t i, const char* what) {
    if (i >= g.chambers.size()) fail(ErrorKind::Precondition, std::string(what) + " chamber out of range");
}

Report cmd_theta(const InputDocument& doc, const CommandOptions& o) {
    Report r;
    const ToricData& td = doc.td;
    auto g = secondary_fan(td);
    auto standard = enumerate_theta(td);
    auto cox = build_theta_cox(td, g, standard);
    Json res = Json::object(), cert = Json::object();
    std::vector<ThetaElement> shown = cox.elements;
    if (o.star) shown = enumerate_theta(td, ThetaVariant::Star);
    res["variant"] = o.star ? "star" : "standard";
    res["elements"] = Json::array();
    for (const auto& e : shown) res["elements"].push_back(element_json(e));
    r.summary.push_back("variety: " + td.name);
    r.summary.push_back("elements: " + std::to_string(shown.size()));
    for (const auto& e : shown) {
        std::string line = "  " + vec_str(e.cls) + "  theta " + to_string(e.witness);
        if (e.chamber) line += "  chamber " + std::to_string(*e.chamber);
        r.summary.push_back(line);
    }
    if (!o.star) {
        auto ord = ordered_theta(td, cox.elements, o);
        if (ord.ordered) {
            Json a = Json::array();
            std::string line = "order:";
            for (const auto& e : ord.elements) {
                a.push_back(to_json(e.cls));
                line += " " + vec_str(e.cls);
            }
            res["order"] = a;
            r.summary.push_back(line);
        } else {
            res["order"] = nullptr;
            res["order_note"] = ord.note;
            r.summary.push_back("order: none (" + ord.note + ")");
        }
        Json agree = Json::array();
        for (const auto& c : cox.checks)
            agree.push_back({{"element", std::to_string(c.element)}, {"rays_checked", std::to_string(c.rays_checked)}, {"ok", c.ok}});
        cert["chamber_agreement"] = agree;
    }
    cert["witness_lcm"] = to_string(witness_denominator_lcm(standard));
    if (o.frobenius) {
        auto oracle = frobenius_oracle(td, *o.frobenius);
        std::set<ZVec> mine;
        for (const auto& e : standard) mine.insert(e.cls);
        const bool ok = oracle == mine;
        cert["frobenius"] = {{"ell", to_string(*o.frobenius)}, {"oracle_size", std::to_string(oracle.size())}, {"agreement", ok}};
        r.summary.push_back(std::string("oracle agreement: ") + (ok ? "true" : "false"));
    }
    r.doc["result"] = res;
    r.doc["certificates"] = cert;
    return r;
}

Report cmd_gkz(const InputDocument& doc) {
    Report r;
    const ToricData& td = doc.td;
    auto g = secondary_fan(td);
    auto interior = interior_faces(g);
    Json res = Json::object();
    res["chambers"] = Json::array();
    for (const auto& c : g.chambers) {
        Json rays = Json::array(), cones = Json::array();
        for (const auto& e : c.extreme_rays) rays.push_back(to_json(e));
        for (const auto& cone : c.fan.cones) {
            Json a = Json::array();
            for (auto x : cone) a.push_back(x);
            cones.push_back(a);
        }
        res["chambers"].push_back({{"id", c.id}, {"extreme_rays", rays}, {"sample", to_json(c.sample)}, {"cones", cones},
                                   {"face", c.face}});
    }
    res["faces"] = Json::array();
    for (const auto& f : g.faces) {
        Json rays = Json::array(), contracted = Json::array();
        for (const auto& e : f.extreme_rays) rays.push_back(to_json(e));
        for (auto x : f.gfan.contracted) contracted.push_back(x);
        res["faces"].push_back({{"id", f.id},
                                {"dim", f.dim},
                                {"extreme_rays", rays},
                                {"chambers", f.chambers},
                                {"contracted", contracted},
                                {"lineality_rank", f.gfan.lineality.size()},
                                {"interior", std::count(interior.begin(), interior.end(), f.id) > 0}});
    }
    res["walls"] = Json::array();
    for (const auto& w : g.walls) res["walls"].push_back({{"a", w.a}, {"b", w.b}, {"face", w.face}});
    res["hyperplanes"] = g.hyperplanes;
    res["cells"] = g.cells;
    r.doc["result"] = res;
    r.doc["certificates"] = Json::object();
    r.summary.push_back("variety: " + td.name);
    r.summary.push_back("chambers: " + std::to_string(g.chambers.size()));
    r.summary.push_back("faces: " + std::to_string(g.faces.size()) + " (" + std::to_string(interior.size()) + " meet the interior)");
    r.summary.push_back("walls: " + std::to_string(g.walls.size()));
    for (const auto& c : g.chambers) {
        std::string line = "  chamber " + std::to_string(c.id) + ":";
        for (const auto& e : c.extreme_rays) line += " " + vec_str(e);
        line += "  (" + std::to_string(c.fan.cones.size()) + " maximal cones)";
        r.summary.push_back(line);
    }
    return r;
}

Report cmd_homs(const InputDocument& doc, const CommandOptions& o) {
    Report r;
    const ToricData& td = doc.td;
    auto g = secondary_fan(td);
    auto cox = build_theta_cox(td, g, enumerate_theta(td));
    auto ord = ordered_theta(td, cox.elements, o);
    auto alg = endomorphism_algebra(td, ord.elements);
    Json order = Json::array(), dims = Json::array();
    for (const auto& e : alg.order) order.push_back(to_json(e.cls));
    for (const auto& row : alg.dims) {
        Json a = Json::array();
        for (const auto& d : row) a.push_back(to_json(d));
        dims.push_back(a);
    }
    r.doc["result"] = {{"order", order}, {"ordered", ord.ordered}, {"dims", dims}, {"finite", alg.finite}};
    if (!ord.ordered) r.doc["result"]["order_note"] = ord.note;
    // monomial bases (exponent vectors); empty where the space is infinite
    Json bases = Json::array();
    for (const auto& row : alg.basis) {
        Json a = Json::array();
        for (const auto& cell : row) {
            Json b = Json::array();
            for (const auto& m : cell) b.push_back(to_json(m));
            a.push_back(b);
        }
        bases.push_back(a);
    }
    r.doc["certificates"] = {{"bases", bases}};
    r.summary.push_back("variety: " + td.name);
    r.summary.push_back(std::string("elements: ") + std::to_string(alg.order.size()) + (ord.ordered ? " (ordered)" : " (unordered)"));
    r.summary.push_back("dim Hom(e_i -> e_j):");
    for (std::size_t i = 0; i < alg.order.size(); ++i) {
        std::string line = "  " + vec_str(alg.order[i].cls) + ":";
        for (const auto& d : alg.dims[i]) line += " " + d.str();
        r.summary.push_back(line);
    }
    return r;
}

Report cmd_check_exceptional(const InputDocument& doc, const CommandOptions& o) {
    Report r;
    const ToricData& td = doc.td;
    auto g = secondary_fan(td);
    auto cox = build_theta_cox(td, g, enumerate_theta(td));
    auto ord = ordered_theta(td, cox.elements, o);
    auto v = check_full_strong_exceptional(td, g, endomorphism_algebra(td, ord.elements), o.characteristic);
    Json order = Json::array();
    for (const auto& e : ord.elements) order.push_back(to_json(e.cls));
    r.doc["result"] = {{"pass", v.pass}, {"complete", v.complete}, {"pairs", v.pairs}, {"order", order}, {"violations", v.violations}};
    r.doc["certificates"] = Json::object();
    std::string verdict = std::string("verdict: ") + (v.pass ? "pass" : "fail") + " (" + std::to_string(v.pairs) + " pairs";
    if (!v.complete) verdict += ", tilting part only";
    r.summary.push_back("variety: " + td.name);
    r.summary.push_back(verdict + ")");
    for (const auto& s : v.violations) r.summary.push_back("  " + s);
    return r;
}

Json transform_json(const TransformReport& t) {
    Json charts = Json::array(), star = Json::array(), battery = Json::array();
    for (const auto& c : t.charts) {
        Json cone = Json::array();
        for (auto x : c.cone) cone.push_back(x);
        charts.push_back({{"cone", cone}, {"equal", c.equal}, {"deficit", c.deficit}, {"excess", c.excess},
                          {"recession_equal", c.recession_equal}});
    }
    for (const auto& s : t.star)
        star.push_back({{"twist", to_json(s.twist)}, {"weights", s.weights}, {"nonempty", s.nonempty}, {"ok", s.ok}, {"detail", s.detail}});
    for (const auto& p : t.battery) {
        Json ref = Json::array(), tgt = Json::array();
        for (const auto& d : p.refinement) ref.push_back(to_json(d));
        for (const auto& d : p.target) tgt.push_back(to_json(d));
        Json pj = {{"twist", to_json(p.twist)}, {"refinement", ref}, {"target", tgt}, {"ok", p.ok}};
        if (p.predicted) pj["predicted_h0"] = to_json(*p.predicted);
        battery.push_back(pj);
    }
    Json j = {{"source", t.source},
              {"target", t.target},
              {"class", to_json(t.cls)},
              {"lambda_mult", to_json(t.lambda_mult)},
              {"charts", charts},
              {"r0_ok", t.r0_ok},
              {"r0_deficit", t.r0_deficit},
              {"support_order_ok", t.support_order_ok},
              {"star", star},
              {"star_ok", t.star_ok},
              {"battery", battery},
              {"battery_ok", t.battery_ok},
              {"higher_nonzero", t.higher_nonzero},
              {"pass", t.pass}};
    if (t.theta) j["theta"] = to_json(*t.theta);
    return j;
}

// "H<p> probe: zero|nonzero" for p >= 1 over the refinement battery
std::vector<std::string> probe_lines(const TransformReport& t) {
    std::vector<std::string> out;
    std::size_t top = 0;
    for (const auto& p : t.battery) top = std::max(top, p.refinement.size());
    for (std::size_t q = 1; q < top; ++q) {
        bool nonzero = false;
        for (const auto& p : t.battery)
            if (q < p.refinement.size() && !p.refinement[q].is_zero()) nonzero = true;
        out.push_back("H" + std::to_string(q) + " probe: " + (nonzero ? "nonzero" : "zero"));
    }
    return out;
}

Report cmd_transform(const InputDocument& doc, const CommandOptions& o) {
    Report r;
    const ToricData& td = doc.td;
    auto g = secondary_fan(td);
    TransformOptions topt;
    topt.nef_battery = o.nef_battery;
    topt.characteristic = o.characteristic;
    r.summary.push_back("variety: " + td.name);
    if (o.cls) {
        const std::size_t i = o.source.value_or(0);
        const std::size_t j = o.target.value_or(g.chambers.size() > 1 ? 1 : 0);
        require_chamber(g, i, "source");
        require_chamber(g, j, "target");
        auto t = transform_line_bundle(td, g, i, j, *o.cls, topt);
        r.doc["result"] = transform_json(t);
        r.doc["certificates"] = Json::object();
        r.summary.push_back("O" + vec_str(*o.cls) + " from chamber " + std::to_string(i) + " to chamber " + std::to_string(j));
        r.summary.push_back(std::string("R0: ") + (t.r0_deficit ? "deficit" : (t.r0_ok ? "ok" : "excess")));
        for (auto& l : probe_lines(t)) r.summary.push_back(l);
        r.summary.push_back(std::string("verdict: ") + (t.pass ? "pass" : "fail"));
        return r;
    }
    auto cox = build_theta_cox(td, g, enumerate_theta(td));
    Json runs = Json::array();
    std::size_t total = 0, passed = 0;
    for (const auto& e : cox.elements)
        for (std::size_t i = 0; i < g.chambers.size(); ++i) {
            if (o.source && *o.source != i) continue;
            if (!in_chamber(g, i, e.d)) continue;
            for (std::size_t j = 0; j < g.chambers.size(); ++j) {
                if (o.target && *o.target != j) continue;
                auto t = verify_theta_transform(td, g, i, j, e, topt);
                runs.push_back(transform_json(t));
                ++total;
                passed += t.pass;
                r.summary.push_back("  " + vec_str(e.cls) + " " + std::to_string(i) + " -> " + std::to_string(j) + ": " +
                                    (t.pass ? "pass" : "fail"));
            }
        }
    r.doc["result"] = {{"triples", runs}, {"total", total}, {"passed", passed}};
    r.doc["certificates"] = Json::object();
    r.summary.push_back("triples: " + std::to_string(total) + ", passed: " + std::to_string(passed));
    r.summary.push_back(std::string("verdict: ") + (passed == total ? "pass" : "fail"));
    return r;
}

Json restricted_json(const RestrictedComplex& rc) {
    Json terms = Json::array(), maps = Json::array();
    for (const auto& t : rc.terms) {
        Json a = Json::array();
        for (const auto& s : t)
            a.push_back({{"source_index", s.source_index}, {"class", to_json(s.cls)}, {"restricted", to_json(s.restricted)}, {"mult", s.mult}});
        terms.push_back(a);
    }
    for (const auto& M : rc.maps) {
        Json m = Json::array();
        for (const auto& row : M) {
            Json a = Json::array();
            for (const auto& p : row) a.push_back(to_json(p));
            m.push_back(a);
        }
        maps.push_back(m);
    }
    return {{"face", rc.face}, {"lowest", rc.lowest}, {"terms", terms}, {"maps", maps}, {"dropped", rc.dropped}, {"d2_zero", rc.d2_zero}};
}

std::string restricted_line(const RestrictedComplex& rc) {
    // terms from the highest degree down, joined by arrows pointing left
    std::string s;
    for (std::size_t k = rc.terms.size(); k-- > 0;) {
        std::string t;
        for (const auto& sm : rc.terms[k]) {
            if (!t.empty()) t += " + ";
            t += sm.restricted.empty() ? "k" : "O" + to_string(sm.restricted);
            if (sm.mult > 1) t += "^" + std::to_string(sm.mult);
        }
        if (t.empty()) t = "0";
        s += (s.empty() ? "" : " <- ") + t;
    }
    return s;
}

Report cmd_monad(const InputDocument& doc, const CommandOptions& o) {
    Report r;
    if (!doc.complex) fail(ErrorKind::Schema, "/complex: the monad commands need a complex in the input");
    const ToricData& td = doc.td;
    const ThetaComplex& c = *doc.complex;
    r.summary.push_back("variety: " + td.name);
    r.doc["certificates"] = Json::object();
    if (o.sub == "validate") {
        auto v = validate_complex(c, td.cg);
        r.doc["result"] = {{"valid", v.valid}, {"violations", v.violations}};
        r.summary.push_back(std::string("valid: ") + (v.valid ? "true" : "false"));
        for (const auto& s : v.violations) r.summary.push_back("  " + s);
        return r;
    }
    auto v = validate_complex(c, td.cg);
    if (!v.valid) fail(ErrorKind::Precondition, "complex is invalid: " + v.violations[0]);
    if (o.sub == "restrict") {
        auto g = secondary_fan(td);
        Json faces = Json::array();
        for (const auto& f : g.faces) {
            if (o.face && *o.face != f.id) continue;
            auto rc = restrict_to_face(c, td, g, f.id);
            faces.push_back(restricted_json(rc));
            r.summary.push_back("face " + std::to_string(f.id) + ": " + restricted_line(rc));
        }
        if (o.face && faces.empty()) fail(ErrorKind::Precondition, "no such face");
        r.doc["result"] = {{"faces", faces}};
        return r;
    }
    if (o.sub == "strand") {
        auto st = degree_zero_strand(c, td, o.characteristic);
        r.doc["result"] = {{"lowest", st.lowest}, {"dims", st.dims}, {"ranks", st.ranks}, {"cohomology", st.cohomology}};
        for (std::size_t k = 0; k < st.dims.size(); ++k)
            r.summary.push_back("degree " + std::to_string(st.lowest + static_cast<int>(k)) + ": dim " + std::to_string(st.dims[k]) +
                                ", cohomology " + std::to_string(st.cohomology[k]));
        return r;
    }
    if (o.sub == "vanishing") {
        auto g = secondary_fan(td);
        auto rep = vanishing_report(c, td, g);
        r.doc["result"] = {{"pass", rep.pass}, {"offending", rep.offending}, {"faces", rep.faces}, {"surviving", rep.surviving}};
        r.doc["certificates"]["note"] = "d^2 = 0 is rechecked on every restriction; acyclicity over S is not verified";
        if (rep.pass) {
            r.summary.push_back("vanishing: pass (" + std::to_string(rep.faces.size()) + " faces)");
        } else if (!rep.offending.empty()) {
            std::string line = "vanishing: fail, terms in positive degrees:";
            for (int d : rep.offending) line += " " + std::to_string(d);
            r.summary.push_back(line);
        } else {
            r.summary.push_back("vanishing: fail, a restriction has d^2 != 0");
        }
        return r;
    }
    fail(ErrorKind::Schema, "unknown monad subcommand '" + o.sub + "'");
}

Report cmd_sharpen(const InputDocument& doc, const CommandOptions& o) {
    Report r;
    const ToricData& td = doc.td;
    auto g = secondary_fan(td);
    auto s = o.wall ? sharpened_reduction(td, g, *o.wall) : sharpened_reduction(td, g);
    r.summary.push_back("variety: " + td.name);
    if (s.noop) {
        r.doc["result"] = {{"noop", true}, {"reason", s.reason}};
        r.doc["certificates"] = Json::object();
        r.summary.push_back("no-op: " + s.reason);
        return r;
    }
    Json koszul = Json::array(), circ = Json::array(), rem = Json::array();
    for (const auto& c : s.theta_circ) circ.push_back(to_json(c));
    for (const auto& c : s.remaining) rem.push_back(to_json(c));
    for (const auto& k : s.koszul) {
        Json terms = Json::array();
        for (const auto& t : k.terms)
            terms.push_back({{"hdeg", t.hdeg}, {"class", to_json(t.cls)}, {"mult", t.mult}, {"in_theta", t.in_theta},
                             {"deg_gamma", to_json(t.deg_gamma)}});
        koszul.push_back({{"class", to_json(k.cls)}, {"terms", terms}, {"all_in_theta", k.all_in_theta},
                          {"degree_increases", k.degree_increases}});
    }
    Json P = Json::array();
    for (auto x : s.collection.rays) P.push_back(x);
    r.doc["result"] = {{"noop", false},
                       {"chamber", s.chamber},
                       {"wall_face", s.wall_face},
                       {"primitive_collection", P},
                       {"circuit", to_json(s.collection.circuit)},
                       {"theta_circ", circ},
                       {"remaining", rem}};
    r.doc["certificates"] = {{"koszul", koszul}, {"minkowski_checked", s.minkowski_checked}, {"minkowski_ok", s.minkowski_ok}};
    std::string pl = "primitive collection:";
    for (auto x : s.collection.rays) pl += " " + std::to_string(x);
    r.summary.push_back(pl + "  circuit " + vec_str(s.collection.circuit));
    std::string cl = "theta_circ:";
    for (const auto& c : s.theta_circ) cl += " " + vec_str(c);
    r.summary.push_back(cl);
    for (const auto& k : s.koszul) {
        std::string line = "  K " + vec_str(k.cls) + ":";
        for (const auto& t : k.terms) line += " [" + std::to_string(t.hdeg) + "] S" + vec_str(t.cls) + "^" + std::to_string(t.mult);
        line += k.all_in_theta ? "  all in Theta" : "  NOT in Theta";
        r.summary.push_back(line);
    }
    r.summary.push_back(std::string("minkowski: ") + (s.minkowski_ok ? "ok" : "fail") + " (" + std::to_string(s.minkowski_checked) +
                        " points)");
    return r;
}

// ---- plotting, exact coordinates printed with two decimals ----

std::string fixed2(const Rat& q) {
    Int scaled = numerator(q) * 100;
    Int den = denominator(q);
    // round half away from zero
    Int n = scaled < 0 ? Int(-scaled) : scaled;
    Int whole = (2 * n + den) / (2 * den);
    std::string digits = to_string(whole);
    while (digits.size() < 3) digits = "0" + digits;
    std::string s = digits.substr(0, digits.size() - 2) + "." + digits.substr(digits.size() - 2);
    return (scaled < 0 && whole != 0 ? "-" : "") + s;
}

Rat cross(const QVec& o, const QVec& a, const QVec& b) { return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]); }

std::vector<QVec> hull(std::vector<QVec> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    std::vector<QVec> h(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

struct Canvas {
    Rat minx = 0, maxx = 0, miny = 0, maxy = 0;
    Rat unit = 40;
    std::vector<std::string> body;

    void include(const QVec& p) {
        minx = std::min(minx, p[0]);
        maxx = std::max(maxx, p[0]);
        miny = std::min(miny, p[1]);
        maxy = std::max(maxy, p[1]);
    }
    std::string X(const Rat& x) const { return fixed2((x - minx + 1) * unit); }
    std::string Y(const Rat& y) const { return fixed2((maxy - y + 1) * unit); }
    void line(const QVec& a, const QVec& b, const std::string& style) {
        body.push_back("<line x1=\"" + X(a[0]) + "\" y1=\"" + Y(a[1]) + "\" x2=\"" + X(b[0]) + "\" y2=\"" + Y(b[1]) + "\" " + style + "/>");
    }
    void dot(const QVec& p, const std::string& fill) {
        body.push_back("<circle cx=\"" + X(p[0]) + "\" cy=\"" + Y(p[1]) + "\" r=\"3\" fill=\"" + fill + "\"/>");
    }
    void text(const QVec& p, const std::string& s) {
        body.push_back("<text x=\"" + fixed2((p[0] - minx + 1) * unit + 5) + "\" y=\"" + fixed2((maxy - p[1] + 1) * unit - 5) +
                       "\" font-family=\"monospace\" font-size=\"11\">" + s + "</text>");
    }
    std::string render(const std::string& title) const {
        std::string w = fixed2((maxx - minx + 2) * unit), h = fixed2((maxy - miny + 2) * unit);
        std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h +
                        "\">\n<title>" + title + "</title>\n";
        for (const auto& b : body) s += b + "\n";
        return s + "</svg>\n";
    }
};

std::string label(const ZVec& c) { return vec_str(c); }

Report cmd_plot(const InputDocument& doc, const CommandOptions& o) {
    const ToricData& td = doc.td;
    if (td.cg.free_rank != 2 || !td.cg.torsion.empty()) fail(ErrorKind::Precondition, "plot supports rank 2 only");
    Report r;
    Canvas cv;
    const std::string target = o.sub.empty() ? "secondary-fan" : o.sub;
    auto theta = enumerate_theta(td);
    if (target == "secondary-fan") {
        auto g = secondary_fan(td);
        // rays scaled to a common length, chamber labels at the samples
        Rat len = 3;
        std::vector<QVec> tips;
        std::set<ZVec> rays;
        for (const auto& c : g.chambers)
            for (const auto& e : c.extreme_rays) rays.insert(e);
        for (const auto& e : rays) {
            Rat m = std::max(e[0] < 0 ? Rat(-e[0]) : Rat(e[0]), e[1] < 0 ? Rat(-e[1]) : Rat(e[1]));
            tips.push_back({Rat(e[0]) * len / m, Rat(e[1]) * len / m});
        }
        cv.include({Rat(-1), Rat(-1)});
        for (const auto& t : tips) cv.include(t);
        for (const auto& e : theta) cv.include(to_q(e.cls));
        for (const auto& t : tips) cv.line({0, 0}, t, "stroke=\"black\" stroke-width=\"2\"");
        for (const auto& c : g.chambers) {
            QVec s = to_q(c.sample);
            Rat m = std::max(s[0] < 0 ? -s[0] : s[0], s[1] < 0 ? -s[1] : s[1]);
            QVec at = {s[0] * 2 / m, s[1] * 2 / m};
            cv.text(at, "chamber " + std::to_string(c.id));
        }
        for (const auto& e : theta) {
            cv.dot(to_q(e.cls), "steelblue");
            cv.text(to_q(e.cls), label(e.cls));
        }
        r.summary.push_back("secondary fan: " + std::to_string(g.chambers.size()) + " chambers, " + std::to_string(theta.size()) +
                            " Theta points");
    } else if (target == "zonotope" || target == "theta") {
        auto z = bt_zonotope(td);
        std::vector<QVec> corners;
        const std::size_t n = z.gens.size();
        if (n > 16) fail(ErrorKind::Precondition, "too many generators to draw");
        for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
            QVec p = zero_q(2);
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1) p = sub(p, z.gens[i]);
            corners.push_back(p);
        }
        auto poly = hull(corners);
        for (const auto& p : poly) cv.include(p);
        for (const auto& e : theta) cv.include(to_q(e.cls));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            const QVec& a = poly[i];
            const QVec& b = poly[(i + 1) % poly.size()];
            // outward normal of a counterclockwise edge
            QVec nu = {b[1] - a[1], a[0] - b[0]};
            bool closed = true;
            for (const auto& gen : z.gens) {
                Rat s = dot(nu, gen);
                if (s < 0) closed = false;
            }
            cv.line(a, b, closed ? "stroke=\"black\" stroke-width=\"2\"" : "stroke=\"black\" stroke-width=\"2\" stroke-dasharray=\"6,4\"");
        }
        if (target == "theta") {
            auto box = z.box();
            for (const auto& p : box_points(box)) {
                QVec q = to_q(p);
                cv.include(q);
                cv.dot(q, "lightgray");
            }
        }
        for (const auto& e : theta) {
            cv.dot(to_q(e.cls), "steelblue");
            cv.text(to_q(e.cls), label(e.cls));
        }
        r.summary.push_back("zonotope: " + std::to_string(poly.size()) + " vertices, " + std::to_string(theta.size()) + " lattice points");
    } else {
        fail(ErrorKind::Schema, "unknown plot target '" + target + "'");
    }
    r.svg = cv.render(td.name + " " + target);
    r.doc["result"] = {{"target", target}, {"svg_digest", hex64(fnv1a(r.svg))}};
    r.doc["certificates"] = Json::object();
    return r;
}

}  // namespace

ZVec parse_class(const std::string& s) {
    ZVec v;
    std::size_t i = 0;
    while (i <= s.size()) {
        std::size_t j = s.find(',', i);
        if (j == std::string::npos) j = s.size();
        std::string t = s.substr(i, j - i);
        while (!t.empty() && t.front() == ' ') t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
        std::size_t k = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (k == t.size()) fail(ErrorKind::Schema, "--class: expected comma-separated integers, got '" + s + "'");
        for (std::size_t m = k; m < t.size(); ++m)
            if (t[m] < '0' || t[m] > '9') fail(ErrorKind::Schema, "--class: expected comma-separated integers, got '" + s + "'");
        v.push_back(Int(t[0] == '+' ? t.substr(1) : t));
        i = j + 1;
    }
    return v;
}

Report run_command(const CommandOptions& o, const std::string& input_text) {
    InputDocument doc = parse_input(input_text);
    if (o.cls && o.cls->size() != doc.td.cg.width()) fail(ErrorKind::Schema, "--class has the wrong width");
    Report r;
    if (o.command == "theta")
        r = cmd_theta(doc, o);
    else if (o.command == "gkz")
        r = cmd_gkz(doc);
    else if (o.command == "homs")
        r = cmd_homs(doc, o);
    else if (o.command == "check-exceptional")
        r = cmd_check_exceptional(doc, o);
    else if (o.command == "transform")
        r = cmd_transform(doc, o);
    else if (o.command == "monad")
        r = cmd_monad(doc, o);
    else if (o.command == "sharpen")
        r = cmd_sharpen(doc, o);
    else if (o.command == "plot")
        r = cmd_plot(doc, o);
    else
        fail(ErrorKind::Schema, "unknown command '" + o.command + "'");
    r.doc["command"] = o.command;
    r.doc["version"] = kVersion;
    r.doc["input_digest"] = doc.digest;
    r.doc["options"] = options_json(o);
    r.doc["summary"] = r.summary;
    return r;
}

std::string serialize(const Report& r) { return r.doc.dump(2) + "\n"; }

}  // namespace coxskel
