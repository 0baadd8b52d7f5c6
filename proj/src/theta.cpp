#include "coxskel/theta.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <random>

#include "coxskel/cohomology.hpp"

namespace coxskel {

namespace {

Int denominator_lcm(const QVec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, Int(denominator(x)));
    return l;
}

// {theta : c - 1 < <theta, beta> <= c} intersected with [0,1)^dim when `fundamental`.
RationalPolyhedron ceiling_cell(const ToricData& td, const std::vector<Int>& c, std::size_t upto, bool fundamental) {
    RationalPolyhedron P(td.dim);
    if (fundamental)
        for (std::size_t i = 0; i < td.dim; ++i) {
            QVec e = zero_q(td.dim);
            e[i] = 1;
            P.add(e, 0);
            P.add(scale(e, Rat(-1)), Rat(-1), true);
        }
    for (std::size_t r = 0; r < upto; ++r) {
        QVec b = to_q(td.beta(r));
        P.add(b, Rat(c[r] - 1), true);
        P.add(scale(b, Rat(-1)), Rat(-c[r]));
    }
    return P;
}

// A point of the (relatively open in places) convex set P with small denominators:
// barycenters of at most three vertices of the closure are tried before the full barycenter.
QVec small_witness(const RationalPolyhedron& P) {
    VRep v = vrep(P.closure());
    const auto& V = v.vertices;
    std::optional<QVec> best;
    Int best_den = 0;
    auto consider = [&](const QVec& x) {
        if (!P.contains(x)) return;
        Int den = denominator_lcm(x);
        if (!best || den < best_den || (den == best_den && x < *best)) {
            best = x;
            best_den = den;
        }
    };
    for (std::size_t k = 1; k <= 3 && !best; ++k) {
        std::vector<std::size_t> idx(k);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
            if (depth == k) {
                QVec x = zero_q(P.dim);
                for (auto i : idx) x = add(x, V[i]);
                consider(scale(x, Rat(1, static_cast<long>(k))));
                return;
            }
            for (std::size_t i = start; i < V.size(); ++i) {
                idx[depth] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
    }
    if (!best) {
        QVec x = zero_q(P.dim);
        for (const auto& p : V) x = add(x, p);
        x = scale(x, Rat(1, static_cast<long>(V.size())));
        if (!P.contains(x)) fail(ErrorKind::Invariant, "barycenter left its cell");
        best = x;
    }
    return *best;
}

ZVec class_of_minus(const ToricData& td, const ZVec& divisor) { return td.cg.neg(td.cg.class_of(divisor)); }

}  // namespace

std::vector<ThetaElement> enumerate_theta(const ToricData& td, ThetaVariant variant) {
    const std::size_t n = td.nvars();
    // <theta, beta> over [0,1]^dim lies in [lo, hi]
    std::vector<Int> lo(n), hi(n);
    for (std::size_t r = 0; r < n; ++r) {
        Int l = 0, h = 0;
        for (const auto& x : td.beta(r)) (x < 0 ? l : h) += x;
        lo[r] = l;
        hi[r] = h;
    }
    std::map<ZVec, ThetaElement> found;
    std::vector<Int> c(n);
    std::function<void(std::size_t)> dfs = [&](std::size_t r) {
        if (r == n) {
            auto P = ceiling_cell(td, c, n, true);
            ThetaElement e;
            e.witness = small_witness(P);
            e.divisor = theta_divisor(td, e.witness);
            if (e.divisor != ZVec(c.begin(), c.end())) fail(ErrorKind::Invariant, "witness does not reproduce its cell");
            e.d = td.cg.class_of(e.divisor);
            e.cls = td.cg.neg(e.d);
            auto it = found.find(e.cls);
            if (it == found.end() || e.witness < it->second.witness) found[e.cls] = e;
            return;
        }
        for (Int v = lo[r]; v <= hi[r]; ++v) {
            c[r] = v;
            if (feasible(ceiling_cell(td, c, r + 1, true)).feasible) dfs(r + 1);
        }
    };
    dfs(0);
    std::vector<ThetaElement> out;
    for (auto& [cls, e] : found) {
        if (variant == ThetaVariant::Star) {
            e.star = true;
            e.cls = td.cg.add(td.cg.omega(), e.d);
        }
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), [](const ThetaElement& a, const ThetaElement& b) { return a.cls > b.cls; });
    return out;
}

Membership theta_membership(const ToricData& td, const ZVec& cls) {
    ZVec a = td.cg.lift(td.cg.neg(cls));
    auto f = feasible(ceiling_cell(td, std::vector<Int>(a.begin(), a.end()), td.nvars(), false));
    Membership m;
    m.member = f.feasible;
    if (m.member) {
        // move the witness into [0,1)^dim; d(theta) changes by a principal divisor only
        m.witness = f.witness;
        for (auto& x : m.witness) x -= Rat(floor_rat(x));
        if (class_of_minus(td, theta_divisor(td, m.witness)) != td.cg.reduce(cls))
            fail(ErrorKind::Invariant, "membership witness does not reproduce the class");
    }
    return m;
}

std::set<ZVec> frobenius_oracle(const ToricData& td, const Int& ell) {
    if (ell < 1) fail(ErrorKind::Precondition, "Frobenius level must be positive");
    std::set<ZVec> out;
    std::vector<Int> k(td.dim, Int(0));
    while (true) {
        QVec theta(td.dim);
        for (std::size_t i = 0; i < td.dim; ++i) theta[i] = Rat(k[i], ell);
        out.insert(class_of_minus(td, theta_divisor(td, theta)));
        std::size_t i = 0;
        while (i < td.dim && ++k[i] == ell) k[i++] = 0;
        if (i == td.dim) break;
    }
    return out;
}

Int witness_denominator_lcm(const std::vector<ThetaElement>& theta) {
    Int l = 1;
    for (const auto& e : theta) l = lcm(l, denominator_lcm(e.witness));
    return l;
}

// ---- zonotopes ----

namespace {

RationalPolyhedron zonotope_system(const Zonotope& z, const QVec& x) {
    const std::size_t k = z.gens.size();
    RationalPolyhedron P(k);
    for (std::size_t i = 0; i < k; ++i) {
        QVec e = zero_q(k);
        e[i] = 1;
        bool lower_strict = z.sides[i] != Zonotope::Side::Closed;
        bool upper_strict = z.sides[i] == Zonotope::Side::Open;
        P.add(e, Rat(-1), lower_strict);
        P.add(scale(e, Rat(-1)), 0, upper_strict);
    }
    for (std::size_t j = 0; j < z.dim; ++j) {
        QVec row(k);
        for (std::size_t i = 0; i < k; ++i) row[i] = z.gens[i][j];
        P.add_equality(row, x[j]);
    }
    return P;
}

}  // namespace

bool Zonotope::contains(const QVec& x) const { return feasible(zonotope_system(*this, x)).feasible; }

Box Zonotope::box() const {
    Box b;
    b.lo = zero_z(dim);
    b.hi = zero_z(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        Rat l = 0, h = 0;
        for (const auto& g : gens) (g[j] > 0 ? l : h) -= g[j];
        b.lo[j] = floor_rat(l);
        b.hi[j] = ceil_rat(h);
    }
    return b;
}

std::vector<ZVec> Zonotope::lattice_points() const {
    std::vector<ZVec> out;
    for (const auto& p : box_points(box()))
        if (contains(to_q(p))) out.push_back(p);
    return out;
}

Zonotope bt_zonotope(const ToricData& td) {
    Zonotope z;
    z.dim = td.cg.free_rank;
    z.gens = td.cg.real_degrees();
    z.sides.assign(z.gens.size(), Zonotope::Side::HalfOpen);
    return z;
}

Zonotope minkowski(const Zonotope& a, const Zonotope& b) {
    if (a.dim != b.dim) fail(ErrorKind::Precondition, "zonotopes live in different spaces");
    Zonotope z = a;
    z.gens.insert(z.gens.end(), b.gens.begin(), b.gens.end());
    z.sides.insert(z.sides.end(), b.sides.begin(), b.sides.end());
    return z;
}

// ---- ordering ----

std::vector<ThetaElement> order_theta(const ToricData& td, std::vector<ThetaElement> theta, std::optional<std::uint64_t> seed) {
    if (!graded_dimension(td, zero_z(td.cg.width())))
        fail(ErrorKind::Precondition, "ordering needs a pointed effective cone (projective X)");
    const std::size_t t = theta.size();
    // before[a][b]: b must precede a (d_a - d_b effective)
    std::vector<std::vector<std::size_t>> succ(t);
    std::vector<std::size_t> indeg(t, 0);
    for (std::size_t a = 0; a < t; ++a)
        for (std::size_t b = 0; b < t; ++b) {
            if (a == b) continue;
            if (effective(td, td.cg.sub(theta[a].d, theta[b].d)).effective) {
                succ[b].push_back(a);
                ++indeg[a];
            }
        }
    auto key_less = [&](std::size_t x, std::size_t y) {
        // graded lexicographic, descending
        Int sx = 0, sy = 0;
        for (const auto& v : theta[x].cls) sx += v;
        for (const auto& v : theta[y].cls) sy += v;
        if (sx != sy) return sx > sy;
        return theta[x].cls > theta[y].cls;
    };
    std::mt19937_64 rng(seed.value_or(0));
    std::vector<std::size_t> avail, order;
    for (std::size_t i = 0; i < t; ++i)
        if (indeg[i] == 0) avail.push_back(i);
    while (!avail.empty()) {
        std::sort(avail.begin(), avail.end(), key_less);
        std::size_t pick = seed ? static_cast<std::size_t>(rng() % avail.size()) : 0;
        std::size_t v = avail[pick];
        avail.erase(avail.begin() + static_cast<long>(pick));
        order.push_back(v);
        for (auto w : succ[v])
            if (--indeg[w] == 0) avail.push_back(w);
    }
    if (order.size() != t) fail(ErrorKind::Invariant, "effectivity order on Theta has a cycle");
    std::vector<ThetaElement> out;
    for (std::size_t i = 0; i < t; ++i) {
        out.push_back(theta[order[i]]);
        out.back().order = i;
    }
    return out;
}

// ---- primitive collections ----

Int PrimitiveCollection::degree(const ClassGroup& cg, const ZVec& cls) const { return dot(circuit, cg.lift(cls)); }

std::vector<PrimitiveCollection> primitive_collections(const Fan& fan) {
    if (!fan.simplicial()) fail(ErrorKind::Precondition, "primitive collections need a simplicial fan");
    auto used = fan.used_rays();
    auto in_cone = [&](const std::vector<std::size_t>& s) {
        for (const auto& c : fan.cones)
            if (std::includes(c.begin(), c.end(), s.begin(), s.end())) return true;
        return false;
    };
    std::vector<PrimitiveCollection> out;
    const std::size_t u = used.size();
    for (std::size_t k = 2; k <= u; ++k) {
        std::vector<std::size_t> idx(k);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
            if (depth == k) {
                std::vector<std::size_t> s;
                for (auto i : idx) s.push_back(used[i]);
                if (in_cone(s)) return;
                for (std::size_t drop = 0; drop < k; ++drop) {
                    std::vector<std::size_t> sub;
                    for (std::size_t j = 0; j < k; ++j)
                        if (j != drop) sub.push_back(s[j]);
                    if (!in_cone(sub)) return;
                }
                PrimitiveCollection pc;
                pc.rays = s;
                ZVec v = zero_z(fan.dim);
                for (auto r : s) v = add(v, fan.rays[r]);
                pc.circuit = zero_z(fan.rays.size());
                if (is_zero(v)) {
                    for (auto r : s) pc.circuit[r] = 1;
                } else {
                    ConeRelation rel = minimal_cone_relation(fan, v);
                    for (auto r : s) pc.circuit[r] += rel.a_v;
                    for (std::size_t i = 0; i < rel.cone.size(); ++i) pc.circuit[rel.cone[i]] -= rel.a_tau[i];
                }
                Int g = content(pc.circuit);
                for (auto& x : pc.circuit) x /= g;
                out.push_back(pc);
                return;
            }
            for (std::size_t i = start; i < u; ++i) {
                idx[depth] = i;
                rec(i + 1, depth + 1);
            }
        };
        rec(0, 0);
    }
    return out;
}

// ---- sharpened generation ----

std::size_t chamber_of_fan(const ToricData& td, const SecondaryFan& g) {
    if (!td.fan) fail(ErrorKind::Precondition, "sharpened reduction needs a fan");
    for (const auto& c : g.chambers)
        if (c.fan.cones == td.fan->cones) return c.id;
    fail(ErrorKind::Precondition, "the fan is not a chamber fan of its secondary fan");
}

std::vector<std::size_t> nef_walls(const ToricData& td, const SecondaryFan& g) {
    std::size_t ch = chamber_of_fan(td, g);
    std::vector<std::size_t> out;
    for (const auto& w : g.walls)
        if (w.a == ch || w.b == ch) out.push_back(w.face);
    return out;
}

SharpenReport sharpened_reduction(const ToricData& td, const SecondaryFan& g) {
    auto walls = nef_walls(td, g);
    if (walls.empty()) {
        SharpenReport rep;
        rep.noop = true;
        rep.chamber = chamber_of_fan(td, g);
        rep.reason = "the nef cone has no interior wall: a single maximal chamber, nothing to remove";
        return rep;
    }
    return sharpened_reduction(td, g, walls[0]);
}

SharpenReport sharpened_reduction(const ToricData& td, const SecondaryFan& g, std::size_t wall_face) {
    SharpenReport rep;
    rep.chamber = chamber_of_fan(td, g);
    rep.wall_face = wall_face;
    const Face& w = g.faces.at(wall_face);
    if (w.dim + 1 != g.cg.free_rank || w.chambers.size() != 2 ||
        std::find(w.chambers.begin(), w.chambers.end(), rep.chamber) == w.chambers.end()) {
        rep.noop = true;
        rep.reason = "face is not an interior wall of the nef cone";
        return rep;
    }
    if (!td.cg.torsion.empty()) fail(ErrorKind::Precondition, "sharpened reduction needs a torsion-free class group");
    for (const auto& m : td.mult)
        if (m != 1) fail(ErrorKind::Precondition, "sharpened reduction needs beta(e_rho) = u_rho");
    const ClassGroup& cg = td.cg;
    // the primitive collection whose curve class vanishes on the wall and is positive on the nef chamber
    bool found = false;
    for (const auto& pc : primitive_collections(*td.fan)) {
        bool vanishes = true;
        for (const auto& r : w.extreme_rays)
            if (pc.degree(cg, r) != 0) vanishes = false;
        if (!vanishes || pc.degree(cg, g.chambers[rep.chamber].sample) <= 0) continue;
        rep.collection = pc;
        found = true;
        break;
    }
    if (!found) fail(ErrorKind::Invariant, "no primitive collection matches the wall");
    const auto& b = rep.collection.circuit;
    for (std::size_t r = 0; r < td.nvars(); ++r) {
        bool inP = std::binary_search(rep.collection.rays.begin(), rep.collection.rays.end(), r);
        if ((b[r] > 0) != inP) fail(ErrorKind::Invariant, "circuit sign pattern does not match the primitive collection");
    }
    auto degs = cg.real_degrees();
    rep.zplus.dim = rep.zminus.dim = cg.free_rank;
    for (std::size_t r = 0; r < td.nvars(); ++r) {
        if (b[r] > 0) {
            rep.zplus.gens.push_back(degs[r]);
            rep.zplus.sides.push_back(Zonotope::Side::Closed);
        } else {
            rep.zminus.gens.push_back(degs[r]);
            rep.zminus.sides.push_back(Zonotope::Side::Open);
        }
    }
    rep.theta_circ = rep.zminus.lattice_points();
    std::sort(rep.theta_circ.begin(), rep.theta_circ.end(), std::greater<>());
    for (const auto& e : enumerate_theta(td))
        if (std::find(rep.theta_circ.begin(), rep.theta_circ.end(), e.cls) == rep.theta_circ.end()) rep.remaining.push_back(e.cls);

    const auto& P = rep.collection.rays;
    for (const auto& x : rep.theta_circ) {
        KoszulCertificate kc;
        kc.cls = x;
        Int base = rep.collection.degree(cg, cg.neg(x));
        std::map<std::pair<std::size_t, ZVec>, std::size_t> terms;
        for (unsigned long mask = 0; mask < (1UL << P.size()); ++mask) {
            ZVec e = zero_z(cg.width());
            std::size_t k = 0;
            for (std::size_t i = 0; i < P.size(); ++i)
                if (mask >> i & 1UL) {
                    e = cg.add(e, cg.degree(P[i]));
                    ++k;
                }
            ++terms[{k, cg.sub(x, e)}];
        }
        for (const auto& [key, mult] : terms) {
            KoszulTerm t;
            t.hdeg = key.first;
            t.cls = key.second;
            t.mult = mult;
            t.in_theta = theta_membership(td, t.cls).member;
            t.deg_gamma = rep.collection.degree(cg, cg.neg(t.cls));
            if (!t.in_theta) kc.all_in_theta = false;
            if (t.hdeg > 0 && t.deg_gamma <= base) kc.degree_increases = false;
            kc.terms.push_back(t);
        }
        std::stable_sort(kc.terms.begin(), kc.terms.end(), [](const KoszulTerm& a, const KoszulTerm& b) {
            if (a.hdeg != b.hdeg) return a.hdeg < b.hdeg;
            return a.cls > b.cls;
        });
        rep.koszul.push_back(kc);
    }
    // Minkowski containment Z+ + Z- inside Z, on every lattice point
    Zonotope sum = minkowski(rep.zplus, rep.zminus);
    for (const auto& p : sum.lattice_points()) {
        ++rep.minkowski_checked;
        ZVec cls = p;
        if (!theta_membership(td, cls).member) rep.minkowski_ok = false;
    }
    return rep;
}

}  // namespace coxskel
