#include "coxskel/cohomology.hpp"

#include <algorithm>
#include <set>

namespace coxskel {

Dim& Dim::operator+=(const Dim& o) {
    if (o.infinite) infinite = true;
    value += o.value;
    if (infinite) value = 0;
    return *this;
}

std::string Dim::str() const { return infinite ? "infinite" : value.str(); }

namespace {

bool is_prime(unsigned long p) {
    if (p < 2) return false;
    for (unsigned long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

}  // namespace

std::vector<std::size_t> reduced_homology(const std::vector<Cone>& gens, unsigned long characteristic) {
    if (characteristic != 0 && !is_prime(characteristic)) fail(ErrorKind::Schema, "characteristic must be 0 or a prime");
    std::set<Cone> all;
    for (auto g : gens) {
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end()), g.end());
        const std::size_t k = g.size();
        if (k > 20) fail(ErrorKind::Precondition, "face too large for homology");
        for (unsigned long mask = 1; mask < (1UL << k); ++mask) {
            Cone f;
            for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1UL) f.push_back(g[i]);
            all.insert(f);
        }
    }
    std::size_t top = 0;
    for (const auto& f : all) top = std::max(top, f.size());
    // by_size[s] = faces with s vertices (s = 0 is the empty face)
    std::vector<std::vector<Cone>> by_size(top + 1);
    by_size[0].push_back({});
    for (const auto& f : all) by_size[f.size()].push_back(f);
    std::vector<std::size_t> rk(top + 2, 0);  // rk[s] = rank of boundary from size s to size s-1
    for (std::size_t s = 1; s <= top; ++s) {
        const auto& src = by_size[s];
        const auto& tgt = by_size[s - 1];
        std::vector<std::vector<Int>> M(tgt.size(), std::vector<Int>(src.size(), Int(0)));
        for (std::size_t j = 0; j < src.size(); ++j)
            for (std::size_t i = 0; i < src[j].size(); ++i) {
                Cone face;
                for (std::size_t k = 0; k < src[j].size(); ++k)
                    if (k != i) face.push_back(src[j][k]);
                auto row = static_cast<std::size_t>(std::lower_bound(tgt.begin(), tgt.end(), face) - tgt.begin());
                M[row][j] = (i % 2 == 0) ? 1 : -1;
            }
        if (characteristic == 0) {
            QMat Q;
            for (const auto& r : M) Q.push_back(to_q(r));
            rk[s] = Q.empty() ? 0 : rank(Q);
        } else {
            rk[s] = rank_mod(M, Int(characteristic));
        }
    }
    std::vector<std::size_t> betti(top + 1);
    for (std::size_t s = 0; s <= top; ++s) betti[s] = by_size[s].size() - rk[s] - rk[s + 1];
    return betti;
}

namespace {

// Generators of the full subcomplex of the nerve on the vertex set `S`.
std::vector<Cone> full_subcomplex(const Fan& f, const std::vector<bool>& in_S) {
    std::vector<Cone> g;
    for (const auto& c : f.cones) {
        Cone x;
        for (auto r : c)
            if (in_S[r]) x.push_back(r);
        if (!x.empty()) g.push_back(x);
    }
    return g;
}

}  // namespace

CohomologyTable line_bundle_cohomology(const StackyFan& sf, const ZVec& a, unsigned long characteristic) {
    const Fan& f = sf.fan;
    if (a.size() != f.rays.size()) fail(ErrorKind::Schema, "divisor has wrong length");
    if (!f.simplicial()) fail(ErrorKind::Precondition, "cohomology needs a simplicial fan");
    auto used = f.used_rays();
    if (used.size() > 20) fail(ErrorKind::Precondition, "too many rays for sign-pattern enumeration");
    CohomologyTable t;
    t.h.assign(f.dim + 1, Dim{});
    for (auto r : used)
        if (a[r] % sf.mult[r] != 0) t.outside_hypothesis = true;
    const unsigned long patterns = 1UL << used.size();
    for (unsigned long mask = 0; mask < patterns; ++mask) {
        std::vector<bool> in_S(f.rays.size(), false);
        std::vector<std::size_t> S;
        for (std::size_t i = 0; i < used.size(); ++i)
            if (mask >> i & 1UL) {
                in_S[used[i]] = true;
                S.push_back(used[i]);
            }
        auto betti = reduced_homology(full_subcomplex(f, in_S), characteristic);
        // betti[k+1] = rank H~_k contributes to H^{k+1}
        bool any = false;
        for (std::size_t p = 0; p < betti.size() && p <= f.dim; ++p)
            if (betti[p] != 0) any = true;
        if (!any) continue;
        RationalPolyhedron Q(f.dim);
        for (auto r : used) {
            QVec b = to_q(sf.beta(r));
            if (in_S[r])
                Q.add(scale(b, Rat(-1)), Rat(a[r] + 1));
            else
                Q.add(b, Rat(-a[r]));
        }
        Dim count = Dim::of(count_lattice_points(Q));
        if (count.is_zero()) continue;
        for (std::size_t p = 0; p < betti.size() && p <= f.dim; ++p) {
            if (betti[p] == 0) continue;
            Contribution c{S, p, betti[p], count};
            Dim add = count;
            if (!add.infinite) add.value *= betti[p];
            t.h[p] += add;
            t.contributions.push_back(c);
        }
    }
    // independent H^0 route: LP bounding box enumeration of the section polyhedron
    if (!t.h[0].infinite) {
        RationalPolyhedron P(f.dim);
        for (auto r : used) P.add(to_q(sf.beta(r)), Rat(-a[r]));
        auto box = bounding_box(P);
        if (box) t.h0_crosscheck = Int(lattice_points(P, box).size()) == t.h[0].value;
        else t.h0_crosscheck = t.h[0].value == 0;
        if (!t.h0_crosscheck) fail(ErrorKind::Invariant, "H^0 disagrees with the section polyhedron count");
    }
    return t;
}

std::vector<std::size_t> weight_cohomology(const StackyFan& sf, const ZVec& a, const ZVec& m, unsigned long characteristic) {
    const Fan& f = sf.fan;
    std::vector<bool> in_S(f.rays.size(), false);
    for (auto r : f.used_rays()) in_S[r] = dot(m, sf.beta(r)) < -a[r];
    auto betti = reduced_homology(full_subcomplex(f, in_S), characteristic);
    std::vector<std::size_t> h(f.dim + 1, 0);
    for (std::size_t p = 0; p < betti.size() && p <= f.dim; ++p) h[p] = betti[p];
    return h;
}

RationalPolyhedron shifted_section(const StackyFan& sf, const ZVec& a, const QVec& shift) {
    RationalPolyhedron P(sf.fan.dim);
    for (auto r : sf.fan.used_rays()) {
        QVec b = to_q(sf.beta(r));
        P.add(b, Rat(-a[r]) - dot(shift, b));
    }
    return P;
}

ZVec theta_divisor(const ToricData& td, const QVec& theta) {
    ZVec d(td.nvars());
    for (std::size_t r = 0; r < td.nvars(); ++r) d[r] = ceil_rat(dot(td.beta(r), theta));
    return d;
}

HomResult hom_theta(const ToricData& td, const QVec& theta, const QVec& theta_prime) {
    const std::size_t n = td.nvars();
    HomResult h;
    RationalPolyhedron P(td.dim), Q(td.dim);
    for (std::size_t r = 0; r < n; ++r) {
        QVec b = to_q(td.beta(r));
        Int ct = ceil_rat(dot(b, theta)), ctp = ceil_rat(dot(b, theta_prime));
        P.add(b, dot(b, theta_prime) - Rat(ct));
        Q.add(b, Rat(ctp - ct));
    }
    h.polytope_count = Dim::of(count_lattice_points(P));
    h.q_count = Dim::of(count_lattice_points(Q));
    ZVec cls = td.cg.sub(td.cg.class_of(theta_divisor(td, theta)), td.cg.class_of(theta_divisor(td, theta_prime)));
    h.module_count = Dim::of(graded_dimension(td, cls));
    if (!(h.polytope_count == h.q_count) || !(h.q_count == h.module_count))
        fail(ErrorKind::Invariant, "Hom counts disagree: " + h.polytope_count.str() + " / " + h.q_count.str() + " / " +
                                       h.module_count.str());
    h.dim = h.module_count;
    if (!h.dim.infinite) h.basis = monomial_basis(td, cls);
    return h;
}

HomZeroReport verify_homzero(const ToricData& td, const StackyFan& sf, const ZVec& A, const QVec& theta) {
    if (!is_nef(sf, A)) fail(ErrorKind::Precondition, "verify_homzero needs a nef divisor");
    ZVec D = theta_divisor(td, theta);
    ZVec a = sub(A, D);
    HomZeroReport rep;
    auto t = line_bundle_cohomology(sf, a);
    rep.h0 = t.h[0];
    rep.predicted = Dim::of(count_lattice_points(shifted_section(sf, A, scale(theta, Rat(-1)))));
    rep.higher.assign(t.h.begin() + 1, t.h.end());
    rep.pass = rep.h0 == rep.predicted;
    for (const auto& x : rep.higher)
        if (!x.is_zero()) rep.pass = false;
    if (!rep.pass) {
        for (const auto& c : t.contributions)
            if (c.degree > 0) {
                rep.detail = "nonzero H^" + std::to_string(c.degree) + " from sign pattern {";
                for (std::size_t i = 0; i < c.negative.size(); ++i) rep.detail += (i ? "," : "") + std::to_string(c.negative[i]);
                rep.detail += "}";
                break;
            }
        if (rep.detail.empty()) rep.detail = "H^0 " + rep.h0.str() + " differs from prediction " + rep.predicted.str();
    }
    return rep;
}

}  // namespace coxskel
