#include "coxskel/fan.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace coxskel {

namespace {

QMat rows_q(const std::vector<ZVec>& v) { return to_qmat(v); }

struct ConeH {
    std::vector<QVec> equalities;
    std::vector<QVec> facets;
};

// Facet normals and span equations of pos(gens).
ConeH cone_h(const std::vector<ZVec>& gens, std::size_t dim) {
    ConeH h;
    QMat G = rows_q(gens);
    h.equalities = kernel(G, dim);
    std::size_t k = rank(G);
    if (k == 0) return h;
    std::set<ZVec> seen;
    std::vector<std::size_t> idx(k - 1);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k - 1) {
            // h = sum c_i g_i with <h, g_s> = 0 for s in subset
            QMat A;
            for (auto s : idx) {
                QVec row(gens.size());
                for (std::size_t i = 0; i < gens.size(); ++i) row[i] = Rat(dot(gens[i], gens[s]));
                A.push_back(row);
            }
            auto ker = kernel(A, gens.size());
            for (const auto& c : ker) {
                QVec nrm = zero_q(dim);
                for (std::size_t i = 0; i < gens.size(); ++i)
                    for (std::size_t j = 0; j < dim; ++j) nrm[j] += c[i] * Rat(gens[i][j]);
                if (is_zero(nrm)) continue;
                bool pos = false, negv = false;
                for (const auto& g : gens) {
                    Rat v = dot(g, nrm);
                    if (v > 0) pos = true;
                    if (v < 0) negv = true;
                }
                if (pos && negv) continue;
                if (!pos && !negv) continue;
                ZVec p = primitive(negv ? scale(nrm, Rat(-1)) : nrm);
                // facet must contain k-1 independent generators
                std::vector<ZVec> on;
                for (const auto& g : gens)
                    if (dot(g, p) == 0) on.push_back(g);
                if (rank(rows_q(on)) + 1 != k && !(k == 1 && on.empty())) continue;
                if (seen.insert(p).second) h.facets.push_back(to_q(p));
            }
            return;
        }
        for (std::size_t i = start; i < gens.size(); ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
    return h;
}

bool contains_vec(const ConeH& h, const ZVec& v) {
    for (const auto& e : h.equalities)
        if (dot(v, e) != 0) return false;
    for (const auto& f : h.facets)
        if (dot(v, f) < 0) return false;
    return true;
}

}  // namespace

std::string to_string(FanViolation::Kind k) {
    switch (k) {
        case FanViolation::Kind::BadIndex: return "bad-index";
        case FanViolation::Kind::DimensionMismatch: return "dimension-mismatch";
        case FanViolation::Kind::NonPrimitiveRay: return "non-primitive-ray";
        case FanViolation::Kind::DuplicateRay: return "duplicate-ray";
        case FanViolation::Kind::NotStronglyConvex: return "not-strongly-convex";
        case FanViolation::Kind::BadIntersection: return "bad-intersection";
    }
    return "unknown";
}

bool Fan::simplicial() const {
    for (const auto& c : cones)
        if (rank(to_qmat(cone_rays(c))) != c.size()) return false;
    return true;
}

bool Fan::complete() const {
    if (cones.empty() || !simplicial()) return false;
    std::map<Cone, int> facets;
    for (const auto& c : cones) {
        if (c.size() != dim) return false;
        for (std::size_t skip = 0; skip < c.size(); ++skip) {
            Cone f;
            for (std::size_t i = 0; i < c.size(); ++i)
                if (i != skip) f.push_back(c[i]);
            ++facets[f];
        }
    }
    for (const auto& [f, n] : facets)
        if (n != 2) return false;
    return true;
}

std::vector<std::size_t> Fan::used_rays() const {
    std::set<std::size_t> s;
    for (const auto& c : cones) s.insert(c.begin(), c.end());
    return {s.begin(), s.end()};
}

std::vector<ZVec> Fan::cone_rays(const Cone& c) const {
    std::vector<ZVec> r;
    for (auto i : c) r.push_back(rays[i]);
    return r;
}

std::vector<FanViolation> fan_violations(std::size_t dim, const std::vector<ZVec>& rays, const std::vector<Cone>& cones) {
    using K = FanViolation::Kind;
    std::vector<FanViolation> out;
    for (std::size_t i = 0; i < rays.size(); ++i) {
        if (rays[i].size() != dim) {
            out.push_back({K::DimensionMismatch, {i}, "ray has wrong length"});
            continue;
        }
        if (content(rays[i]) != 1) out.push_back({K::NonPrimitiveRay, {i}, "ray is not primitive"});
    }
    // repeated rays only matter when both occur in cones
    std::set<std::size_t> used;
    for (const auto& c : cones)
        for (auto r : c)
            if (r < rays.size()) used.insert(r);
    for (auto i : used)
        for (auto j : used)
            if (j < i && rays[j] == rays[i]) out.push_back({K::DuplicateRay, {j, i}, "repeated ray"});
    for (std::size_t c = 0; c < cones.size(); ++c)
        for (auto r : cones[c])
            if (r >= rays.size()) out.push_back({K::BadIndex, {c}, "cone refers to a missing ray"});
    if (!out.empty()) return out;
    for (std::size_t c = 0; c < cones.size(); ++c) {
        RationalPolyhedron P(dim);
        for (auto r : cones[c]) P.add(to_q(rays[r]), 0, true);
        if (!feasible(P).feasible) out.push_back({K::NotStronglyConvex, {c}, "cone contains a line"});
    }
    if (!out.empty()) return out;
    for (std::size_t a = 0; a < cones.size(); ++a)
        for (std::size_t b = a + 1; b < cones.size(); ++b) {
            std::set<std::size_t> sa(cones[a].begin(), cones[a].end()), sb(cones[b].begin(), cones[b].end());
            RationalPolyhedron P(dim);
            for (auto r : sa) {
                if (sb.count(r))
                    P.add_equality(to_q(rays[r]), 0);
                else
                    P.add(to_q(rays[r]), 0, true);
            }
            for (auto r : sb)
                if (!sa.count(r)) P.add(scale(to_q(rays[r]), Rat(-1)), 0, true);
            if (!feasible(P).feasible)
                out.push_back({K::BadIntersection, {a, b}, "intersection is not the common face"});
        }
    return out;
}

Fan validate_fan(std::size_t dim, const std::vector<ZVec>& rays, std::vector<Cone> cones) {
    for (auto& c : cones) {
        std::sort(c.begin(), c.end());
        c.erase(std::unique(c.begin(), c.end()), c.end());
    }
    std::sort(cones.begin(), cones.end());
    cones.erase(std::unique(cones.begin(), cones.end()), cones.end());
    auto v = fan_violations(dim, rays, cones);
    if (!v.empty()) {
        std::string msg = "invalid fan:";
        for (const auto& x : v) {
            msg += " " + to_string(x.kind) + "[";
            for (std::size_t i = 0; i < x.where.size(); ++i) msg += (i ? "," : "") + std::to_string(x.where[i]);
            msg += "]";
        }
        fail(ErrorKind::Precondition, msg);
    }
    return Fan{dim, rays, cones};
}

ZVec StackyFan::beta(std::size_t rho) const { return scale(fan.rays[rho], mult[rho]); }

StackyFan make_stacky(const Fan& fan, ZVec mult) {
    if (mult.empty()) mult.assign(fan.rays.size(), Int(1));
    if (mult.size() != fan.rays.size()) fail(ErrorKind::Schema, "multiplier count differs from ray count");
    for (const auto& b : mult)
        if (b <= 0) fail(ErrorKind::Schema, "multipliers must be positive");
    return StackyFan{fan, mult};
}

std::optional<QVec> cone_coordinates(const Fan& fan, const Cone& c, const QVec& v) {
    QMat A(fan.dim, QVec(c.size()));
    for (std::size_t j = 0; j < c.size(); ++j)
        for (std::size_t i = 0; i < fan.dim; ++i) A[i][j] = Rat(fan.rays[c[j]][i]);
    auto x = solve(A, v);
    if (!x) return std::nullopt;
    for (const auto& t : *x)
        if (t < 0) return std::nullopt;
    return x;
}

ConeRelation minimal_cone_relation(const Fan& fan, const ZVec& v) {
    if (!fan.simplicial()) fail(ErrorKind::Precondition, "minimal_cone_relation needs a simplicial fan");
    if (is_zero(v)) fail(ErrorKind::Precondition, "minimal_cone_relation of the zero vector");
    for (const auto& c : fan.cones) {
        auto x = cone_coordinates(fan, c, to_q(v));
        if (!x) continue;
        ConeRelation rel;
        Int den = 1;
        for (std::size_t j = 0; j < c.size(); ++j)
            if ((*x)[j] > 0) den = lcm(den, boost::multiprecision::denominator((*x)[j]));
        for (std::size_t j = 0; j < c.size(); ++j)
            if ((*x)[j] > 0) {
                rel.cone.push_back(c[j]);
                rel.a_tau.push_back(boost::multiprecision::numerator((*x)[j] * Rat(den)));
            }
        Int g = den;
        for (const auto& a : rel.a_tau) g = gcd(g, a);
        rel.a_v = den / g;
        for (auto& a : rel.a_tau) a /= g;
        return rel;
    }
    fail(ErrorKind::Precondition, "vector lies outside the support of the fan");
}

RationalPolyhedron cone_hrep(const std::vector<ZVec>& gens, std::size_t dim) {
    ConeH h = cone_h(gens, dim);
    RationalPolyhedron P(dim);
    for (const auto& e : h.equalities) P.add_equality(e, 0);
    for (const auto& f : h.facets) P.add(f, 0);
    return P;
}

std::vector<ZVec> cone_extreme_rays(const RationalPolyhedron& cone) {
    VRep v = vrep(cone);
    if (!v.pointed) fail(ErrorKind::Precondition, "cone is not pointed");
    return v.rays;
}

namespace {

// Pulling triangulation; ray ids index into `pool`.
std::vector<Cone> pulling(const std::vector<ZVec>& pool, const Cone& R, std::size_t dim) {
    std::vector<ZVec> gens;
    for (auto i : R) gens.push_back(pool[i]);
    std::size_t k = rank(to_qmat(gens));
    if (R.size() == k) return {R};
    std::size_t r0 = R[0];
    ConeH h = cone_h(gens, dim);
    std::vector<Cone> out;
    for (const auto& f : h.facets) {
        if (dot(pool[r0], f) == 0) continue;
        Cone F;
        for (auto i : R)
            if (dot(pool[i], f) == 0) F.push_back(i);
        for (auto T : pulling(pool, F, dim)) {
            T.push_back(r0);
            std::sort(T.begin(), T.end());
            out.push_back(T);
        }
    }
    return out;
}

struct PoolCone {
    Cone rays;  // pool indices
    std::size_t dim;
};

std::vector<PoolCone> refine_pair(std::vector<ZVec>& pool, const std::vector<Cone>& A, const std::vector<Cone>& B, std::size_t n) {
    auto pool_index = [&](const ZVec& r) {
        auto it = std::find(pool.begin(), pool.end(), r);
        if (it != pool.end()) return static_cast<std::size_t>(it - pool.begin());
        pool.push_back(r);
        return pool.size() - 1;
    };
    std::vector<PoolCone> pieces;
    for (const auto& s : A)
        for (const auto& t : B) {
            std::vector<ZVec> gs, gt;
            for (auto i : s) gs.push_back(pool[i]);
            for (auto i : t) gt.push_back(pool[i]);
            RationalPolyhedron P = cone_hrep(gs, n);
            RationalPolyhedron Q = cone_hrep(gt, n);
            for (const auto& h : Q.ineqs) P.ineqs.push_back(h);
            auto rays = cone_extreme_rays(P);
            Cone c;
            for (const auto& r : rays) c.push_back(pool_index(r));
            std::sort(c.begin(), c.end());
            pieces.push_back({c, rank(to_qmat(rays))});
        }
    std::stable_sort(pieces.begin(), pieces.end(), [](const PoolCone& x, const PoolCone& y) { return x.dim > y.dim; });
    std::vector<PoolCone> kept;
    for (const auto& p : pieces) {
        if (p.dim == 0) continue;
        bool inside = false;
        for (const auto& q : kept) {
            std::vector<ZVec> gq;
            for (auto i : q.rays) gq.push_back(pool[i]);
            ConeH h = cone_h(gq, n);
            if (std::all_of(p.rays.begin(), p.rays.end(), [&](std::size_t i) { return contains_vec(h, pool[i]); })) {
                inside = true;
                break;
            }
        }
        if (!inside) kept.push_back(p);
    }
    std::vector<PoolCone> out;
    for (const auto& p : kept)
        for (const auto& T : pulling(pool, p.rays, n)) out.push_back({T, p.dim});
    return out;
}

// Each maximal cone of `f` must be exactly covered by the pieces inside it.
void check_cover(const Fan& f, const std::vector<ZVec>& pool, const std::vector<PoolCone>& pieces) {
    for (const auto& sigma : f.cones) {
        auto gens = f.cone_rays(sigma);
        ConeH h = cone_h(gens, f.dim);
        std::size_t k = sigma.size();
        std::map<Cone, int> facets;
        int count = 0;
        for (const auto& p : pieces) {
            if (p.dim != k) continue;
            if (!std::all_of(p.rays.begin(), p.rays.end(), [&](std::size_t i) { return contains_vec(h, pool[i]); })) continue;
            ++count;
            for (std::size_t skip = 0; skip < p.rays.size(); ++skip) {
                Cone F;
                for (std::size_t i = 0; i < p.rays.size(); ++i)
                    if (i != skip) F.push_back(p.rays[i]);
                ++facets[F];
            }
        }
        bool ok = count > 0;
        for (const auto& [F, m] : facets) {
            bool boundary = false;
            for (const auto& nrm : h.facets)
                if (std::all_of(F.begin(), F.end(), [&](std::size_t i) { return dot(pool[i], nrm) == 0; })) boundary = true;
            if (boundary ? m != 1 : m != 2) ok = false;
        }
        if (!ok) fail(ErrorKind::Precondition, "common_stacky_refinement: input fans have different supports");
    }
}

}  // namespace

Refinement common_stacky_refinement(const std::vector<Fan>& fans) {
    if (fans.empty()) fail(ErrorKind::Precondition, "common_stacky_refinement of no fans");
    const std::size_t n = fans[0].dim;
    for (const auto& f : fans) {
        if (f.dim != n) fail(ErrorKind::Precondition, "fans live in different lattices");
        if (!f.simplicial()) fail(ErrorKind::Precondition, "common_stacky_refinement needs simplicial fans");
    }
    std::vector<ZVec> pool;
    std::vector<std::vector<std::size_t>> remap(fans.size());
    for (std::size_t i = 0; i < fans.size(); ++i)
        for (const auto& r : fans[i].rays) {
            auto it = std::find(pool.begin(), pool.end(), r);
            if (it == pool.end()) {
                pool.push_back(r);
                remap[i].push_back(pool.size() - 1);
            } else {
                remap[i].push_back(static_cast<std::size_t>(it - pool.begin()));
            }
        }
    auto mapped = [&](std::size_t i) {
        std::vector<Cone> out;
        for (const auto& c : fans[i].cones) {
            Cone m;
            for (auto r : c) m.push_back(remap[i][r]);
            std::sort(m.begin(), m.end());
            out.push_back(m);
        }
        return out;
    };
    std::vector<Cone> cur = mapped(0);
    std::vector<PoolCone> pieces;
    for (const auto& c : cur) pieces.push_back({c, c.size()});
    for (std::size_t i = 1; i < fans.size(); ++i) {
        pieces = refine_pair(pool, cur, mapped(i), n);
        cur.clear();
        for (const auto& p : pieces) cur.push_back(p.rays);
    }
    for (const auto& f : fans) check_cover(f, pool, pieces);
    // rays of Lambda in pool order
    std::set<std::size_t> used;
    for (const auto& c : cur) used.insert(c.begin(), c.end());
    std::map<std::size_t, std::size_t> to_lambda;
    Fan L;
    L.dim = n;
    for (auto p : used) {
        to_lambda[p] = L.rays.size();
        L.rays.push_back(pool[p]);
    }
    for (const auto& c : cur) {
        Cone m;
        for (auto r : c) m.push_back(to_lambda[r]);
        std::sort(m.begin(), m.end());
        L.cones.push_back(m);
    }
    std::sort(L.cones.begin(), L.cones.end());
    L.cones.erase(std::unique(L.cones.begin(), L.cones.end()), L.cones.end());
    L = validate_fan(n, L.rays, L.cones);

    Refinement out;
    out.a.assign(fans.size(), std::vector<Int>(L.rays.size()));
    std::vector<ConeRelation> rel(fans.size() * L.rays.size());
    ZVec c(L.rays.size(), Int(1));
    for (std::size_t i = 0; i < fans.size(); ++i)
        for (std::size_t r = 0; r < L.rays.size(); ++r) {
            rel[i * L.rays.size() + r] = minimal_cone_relation(fans[i], L.rays[r]);
            out.a[i][r] = rel[i * L.rays.size() + r].a_v;
            c[r] = lcm(c[r], out.a[i][r]);
        }
    for (std::size_t i = 0; i < fans.size(); ++i) {
        IntMatrix phi(fans[i].rays.size(), L.rays.size());
        for (std::size_t r = 0; r < L.rays.size(); ++r) {
            const auto& R = rel[i * L.rays.size() + r];
            Int f = c[r] / R.a_v;
            for (std::size_t t = 0; t < R.cone.size(); ++t) phi(R.cone[t], r) = f * R.a_tau[t];
        }
        out.phi.push_back(phi);
    }
    out.lambda = make_stacky(L, c);
    return out;
}

}  // namespace coxskel
