#include "coxskel/gkz.hpp"

#include "coxskel/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace coxskel {

namespace {

struct Config {
    std::size_t r = 0;
    std::vector<ZVec> q;                     // free degrees
    std::vector<std::vector<std::size_t>> bases;
    std::vector<std::vector<QVec>> basis_facets;  // facet normals of pos(q_J)
    std::vector<ZVec> hyperplanes;           // primitive, first nonzero entry positive
};

void subsets(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

ZVec sign_normalized(ZVec v) {
    for (const auto& x : v) {
        if (x == 0) continue;
        if (x < 0) v = neg(v);
        break;
    }
    return v;
}

Config configuration(const ToricData& td) {
    Config c;
    c.r = td.cg.free_rank;
    if (c.r == 0) fail(ErrorKind::Precondition, "class group has rank 0; the secondary fan is a point");
    for (const auto& qd : td.cg.real_degrees()) {
        auto z = as_integral(qd);
        if (!z) fail(ErrorKind::Invariant, "free degree is not integral");
        c.q.push_back(*z);
    }
    if (rank(to_qmat(c.q)) != c.r) fail(ErrorKind::Precondition, "degrees do not span the class group");
    const std::size_t n = c.q.size();
    subsets(n, c.r, [&](const std::vector<std::size_t>& J) {
        std::vector<ZVec> g;
        for (auto j : J) g.push_back(c.q[j]);
        if (rank(to_qmat(g)) != c.r) return;
        c.bases.push_back(J);
        std::vector<QVec> f;
        for (const auto& in : cone_hrep(g, c.r).ineqs) f.push_back(in.normal);
        c.basis_facets.push_back(f);
    });
    std::set<ZVec> planes;
    if (c.r == 1) {
        planes.insert(ZVec{Int(1)});
    } else {
        subsets(n, c.r - 1, [&](const std::vector<std::size_t>& J) {
            std::vector<ZVec> g;
            for (auto j : J) g.push_back(c.q[j]);
            if (rank(to_qmat(g)) != c.r - 1) return;
            auto ker = kernel(to_qmat(g), c.r);
            planes.insert(sign_normalized(primitive(ker.at(0))));
        });
    }
    c.hyperplanes.assign(planes.begin(), planes.end());
    return c;
}

bool in_open_basis_cone(const Config& c, std::size_t b, const QVec& d) {
    for (const auto& f : c.basis_facets[b])
        if (dot(f, d) <= 0) return false;
    return true;
}

std::vector<std::size_t> signature(const Config& c, const QVec& d) {
    std::vector<std::size_t> s;
    for (std::size_t b = 0; b < c.bases.size(); ++b)
        if (in_open_basis_cone(c, b, d)) s.push_back(b);
    return s;
}

Fan fan_from_signature(const ToricData& td, const Config& c, const std::vector<std::size_t>& sig) {
    std::vector<Cone> cones;
    for (auto b : sig) {
        Cone sigma;
        for (std::size_t rho = 0; rho < td.nvars(); ++rho)
            if (std::find(c.bases[b].begin(), c.bases[b].end(), rho) == c.bases[b].end()) sigma.push_back(rho);
        cones.push_back(sigma);
    }
    return validate_fan(td.dim, td.rays, cones);
}

using RaySet = std::vector<ZVec>;  // sorted primitive rays in Cl_R

RaySet tight_rays(const std::vector<ZVec>& rays, const QVec& normal) {
    RaySet t;
    for (const auto& r : rays)
        if (dot(r, normal) == 0) t.push_back(r);
    return t;
}

RaySet intersect(const RaySet& a, const RaySet& b) {
    RaySet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// All faces of a pointed cone, as sets of extreme rays.
std::set<RaySet> cone_faces(const std::vector<ZVec>& rays, const RationalPolyhedron& h, std::size_t r) {
    std::set<RaySet> facets;
    for (const auto& in : h.ineqs) {
        RaySet t = tight_rays(rays, in.normal);
        if (t.size() == rays.size()) continue;  // equality rows
        std::size_t k = t.empty() ? 0 : rank(to_qmat(t));
        if (k + 1 == r) facets.insert(t);
    }
    std::set<RaySet> faces(facets.begin(), facets.end());
    RaySet all = rays;
    std::sort(all.begin(), all.end());
    faces.insert(all);
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<RaySet> cur(faces.begin(), faces.end());
        for (const auto& f : cur)
            for (const auto& g : facets)
                if (faces.insert(intersect(f, g)).second) grew = true;
    }
    return faces;
}

}  // namespace

Fan fan_of_point(const ToricData& td, const QVec& d) {
    Config c = configuration(td);
    if (d.size() != c.r) fail(ErrorKind::Schema, "class has wrong length");
    for (const auto& h : c.hyperplanes)
        if (dot(h, d) == 0) fail(ErrorKind::Precondition, "class lies on a wall of the arrangement; use face_data");
    auto sig = signature(c, d);
    if (sig.empty()) fail(ErrorKind::Precondition, "class is outside the effective cone");
    return fan_from_signature(td, c, sig);
}

GeneralizedFan face_data(const ToricData& td, const ZVec& a) {
    const std::size_t n = td.nvars(), dim = td.dim;
    RationalPolyhedron P = monomial_polyhedron(td, a);
    VRep v = vrep(P);
    if (!v.pointed) fail(ErrorKind::Precondition, "section polyhedron is not pointed");
    if (v.empty()) fail(ErrorKind::Precondition, "section polyhedron is empty: class is not effective");
    std::vector<ZVec> dirs;
    for (std::size_t i = 1; i < v.vertices.size(); ++i) {
        QVec e = sub(v.vertices[i], v.vertices[0]);
        if (!is_zero(e)) dirs.push_back(primitive(e));
    }
    for (const auto& r : v.rays) dirs.push_back(r);
    const std::size_t k = dirs.empty() ? 0 : rank(to_qmat(dirs));

    GeneralizedFan gf;
    if (k == 0) {
        for (std::size_t i = 0; i < dim; ++i) {
            ZVec e = zero_z(dim);
            e[i] = 1;
            gf.lineality.push_back(e);
        }
    } else {
        gf.lineality = integer_kernel(IntMatrix::from_rows(dirs, dim));
    }
    if (gf.lineality.empty()) {
        for (std::size_t i = 0; i < dim; ++i) {
            ZVec e = zero_z(dim);
            e[i] = 1;
            gf.quotient_map.push_back(e);
        }
    } else if (k > 0) {
        gf.quotient_map = integer_kernel(IntMatrix::from_rows(gf.lineality, dim));
    }

    // facet test per variable
    std::vector<std::vector<std::size_t>> tight_at(v.vertices.size());
    for (std::size_t rho = 0; rho < n; ++rho) {
        QVec b = to_q(td.beta(rho));
        Rat off = Rat(-a[rho]);
        std::vector<ZVec> face;
        std::vector<std::size_t> verts;
        for (std::size_t i = 0; i < v.vertices.size(); ++i)
            if (dot(b, v.vertices[i]) == off) verts.push_back(i);
        if (verts.empty()) {
            gf.contracted.push_back(rho);
            continue;
        }
        for (std::size_t j = 1; j < verts.size(); ++j) {
            QVec e = sub(v.vertices[verts[j]], v.vertices[verts[0]]);
            if (!is_zero(e)) face.push_back(primitive(e));
        }
        for (const auto& r : v.rays)
            if (dot(r, b) == 0) face.push_back(r);
        std::size_t fd = face.empty() ? 0 : rank(to_qmat(face));
        if (k == 0 || fd + 1 != k) {
            gf.contracted.push_back(rho);
            continue;
        }
        gf.surviving.push_back(rho);
        for (auto i : verts) tight_at[i].push_back(gf.surviving.size() - 1);
    }

    std::vector<ZVec> qrays;
    std::set<ZVec> seen;
    for (auto rho : gf.surviving) {
        ZVec img(gf.quotient_map.size());
        for (std::size_t j = 0; j < img.size(); ++j) img[j] = dot(gf.quotient_map[j], td.rays[rho]);
        Int g = content(img);
        if (g == 0) fail(ErrorKind::Invariant, "surviving ray maps to zero in the quotient");
        ZVec p = primitive(img);
        if (!seen.insert(p).second) fail(ErrorKind::Invariant, "two surviving rays share a quotient ray");
        qrays.push_back(p);
        gf.quotient_mult.push_back(g);
    }
    std::set<Cone> qcones;
    for (const auto& t : tight_at) {
        Cone c(t.begin(), t.end());
        std::sort(c.begin(), c.end());
        qcones.insert(c);
    }
    std::vector<Cone> qc(qcones.begin(), qcones.end());
    if (k == 0) {
        gf.quotient.dim = 0;
        gf.quotient.cones = {Cone{}};
    } else {
        gf.quotient = validate_fan(k, qrays, qc);
    }
    for (const auto& c : gf.quotient.cones) {
        Cone amb;
        for (auto i : c) amb.push_back(gf.surviving[i]);
        gf.cones.push_back(amb);
    }
    return gf;
}

SecondaryFan secondary_fan(const ToricData& td) {
    Config c = configuration(td);
    SecondaryFan g;
    g.cg = td.cg;
    g.hyperplanes = c.hyperplanes.size();
    const std::size_t r = c.r;

    std::vector<ZVec> nonzero;
    for (const auto& q : c.q)
        if (!is_zero(q)) nonzero.push_back(q);
    RationalPolyhedron eff = cone_hrep(nonzero, r);
    RationalPolyhedron start(r);
    for (const auto& in : eff.ineqs) start.add(in.normal, 0, true);
    std::vector<RationalPolyhedron> cells{start};
    for (const auto& h : c.hyperplanes) {
        std::vector<RationalPolyhedron> next;
        for (const auto& cell : cells)
            for (int s : {1, -1}) {
                RationalPolyhedron p = cell;
                p.add(scale(to_q(h), Rat(s)), 0, true);
                if (feasible(p).feasible) next.push_back(p);
            }
        cells = std::move(next);
    }
    g.cells = cells.size();

    std::set<std::vector<std::size_t>> sigs;
    for (const auto& cell : cells) {
        auto f = feasible(cell);
        auto sig = signature(c, f.witness);
        if (sig.empty()) fail(ErrorKind::Invariant, "arrangement cell outside every basis cone");
        sigs.insert(sig);
    }

    for (const auto& sig : sigs) {
        Chamber ch;
        ch.hrep = RationalPolyhedron(r);
        for (auto b : sig)
            for (const auto& f : c.basis_facets[b]) ch.hrep.add(f, 0);
        ch.extreme_rays = cone_extreme_rays(ch.hrep);
        std::sort(ch.extreme_rays.begin(), ch.extreme_rays.end());
        ch.sample = zero_z(r);
        for (const auto& x : ch.extreme_rays) ch.sample = add(ch.sample, x);
        if (signature(c, to_q(ch.sample)) != sig) fail(ErrorKind::Invariant, "chamber sample left its chamber");
        ch.fan = fan_from_signature(td, c, sig);
        ch.stacky = td.stacky(ch.fan);
        for (const auto& cone : ch.fan.cones) {
            std::vector<std::size_t> comp;
            for (std::size_t rho = 0; rho < td.nvars(); ++rho)
                if (!std::binary_search(cone.begin(), cone.end(), rho)) comp.push_back(rho);
            ch.irrelevant.push_back(comp);
        }
        g.chambers.push_back(std::move(ch));
    }
    std::sort(g.chambers.begin(), g.chambers.end(), [](const Chamber& x, const Chamber& y) { return x.sample > y.sample; });

    std::map<RaySet, std::vector<std::size_t>> face_map;
    for (std::size_t i = 0; i < g.chambers.size(); ++i) {
        g.chambers[i].id = i;
        for (const auto& f : cone_faces(g.chambers[i].extreme_rays, g.chambers[i].hrep, r)) face_map[f].push_back(i);
    }
    std::vector<std::pair<std::size_t, RaySet>> order;
    for (const auto& [rays, chs] : face_map) order.push_back({rays.empty() ? 0 : rank(to_qmat(rays)), rays});
    std::sort(order.begin(), order.end());
    for (const auto& [dim, rays] : order) {
        Face f;
        f.id = g.faces.size();
        f.dim = dim;
        f.extreme_rays = rays;
        f.chambers = face_map[rays];
        f.sample = zero_z(r);
        for (const auto& x : rays) f.sample = add(f.sample, x);
        if (dim == r) {
            f.chamber = f.chambers.at(0);
            g.chambers[*f.chamber].face = f.id;
        }
        ZVec cls = f.sample;
        cls.resize(td.cg.width(), Int(0));
        f.lift = td.cg.lift(cls);
        f.gfan = face_data(td, f.lift);
        if (f.gfan.lineality.empty() && f.gfan.surviving.size() == td.nvars()) {
            f.quotient_cg = td.cg;
        } else if (f.gfan.quotient.dim == 0) {
            f.quotient_cg = ClassGroup{};
            f.quotient_cg.nvars = f.gfan.surviving.size();
        } else {
            f.quotient_cg = class_group(f.gfan.quotient.rays, f.gfan.quotient.dim);
        }
        if (dim + 1 == r && f.chambers.size() == 2) g.walls.push_back({f.chambers[0], f.chambers[1], f.id});
        g.faces.push_back(std::move(f));
    }
    return g;
}

CellRef chamber_of(const SecondaryFan& g, const ZVec& cls) {
    QVec d = g.cg.real(cls);
    for (const auto& f : g.faces) {
        bool inside = false;
        if (f.extreme_rays.empty()) {
            inside = is_zero(d);
        } else {
            // d = sum lambda_i r_i with every lambda_i > 0
            const std::size_t k = f.extreme_rays.size();
            RationalPolyhedron P(k);
            for (std::size_t i = 0; i < k; ++i) {
                QVec e = zero_q(k);
                e[i] = 1;
                P.add(e, 0, true);
            }
            for (std::size_t j = 0; j < d.size(); ++j) {
                QVec row(k);
                for (std::size_t i = 0; i < k; ++i) row[i] = Rat(f.extreme_rays[i][j]);
                P.add_equality(row, d[j]);
            }
            inside = feasible(P).feasible;
        }
        if (!inside) continue;
        CellRef ref;
        ref.face = f.id;
        ref.is_chamber = f.chamber.has_value();
        ref.id = f.chamber ? *f.chamber : f.id;
        return ref;
    }
    fail(ErrorKind::Precondition, "class is not in the effective cone");
}

std::vector<std::size_t> interior_faces(const SecondaryFan& g) {
    std::vector<ZVec> degs;
    for (const auto& q : g.cg.real_degrees()) degs.push_back(primitive(q));
    RationalPolyhedron eff = cone_hrep(degs, g.cg.free_rank);
    std::vector<std::size_t> out;
    for (const auto& f : g.faces) {
        bool boundary = false;
        for (const auto& in : eff.ineqs)
            if (dot(to_q(f.sample), in.normal) == 0) boundary = true;
        if (!boundary) out.push_back(f.id);
    }
    return out;
}

bool restricts(const GeneralizedFan& gf, const QVec& theta) {
    for (const auto& l : gf.lineality)
        if (denominator(dot(l, theta)) != 1) return false;
    return true;
}

ZVec restricted_class(const Face& f, const ToricData& td, const QVec& theta) {
    const GeneralizedFan& gf = f.gfan;
    if (!restricts(gf, theta)) fail(ErrorKind::Precondition, "summand vanishes on this face");
    QVec lambda = theta;
    if (!gf.lineality.empty()) {
        ZVec b;
        for (const auto& l : gf.lineality) b.push_back(numerator(dot(l, theta)));
        auto m = integer_solve(IntMatrix::from_rows(gf.lineality, td.dim), b);
        if (!m) fail(ErrorKind::Invariant, "lineality lattice is not saturated");
        lambda = sub(theta, to_q(*m));
    }
    if (f.gfan.lineality.empty() && gf.surviving.size() == td.nvars()) return td.cg.class_of(theta_divisor(td, lambda));
    ZVec c;
    for (std::size_t i = 0; i < gf.surviving.size(); ++i) {
        Rat val = dot(td.rays[gf.surviving[i]], lambda) / Rat(gf.quotient_mult[i]);
        c.push_back(ceil_rat(val));
    }
    if (f.quotient_cg.width() == 0) return {};
    return f.quotient_cg.class_of(c);
}

}  // namespace coxskel
