#include "coxskel/divisor.hpp"

#include <algorithm>

namespace coxskel {

ZVec ClassGroup::reduce(ZVec c) const {
    if (c.size() != width()) fail(ErrorKind::Schema, "class has wrong width");
    for (std::size_t i = 0; i < torsion.size(); ++i) {
        Int& x = c[free_rank + i];
        x %= torsion[i];
        if (x < 0) x += torsion[i];
    }
    return c;
}

ZVec ClassGroup::class_of(const ZVec& a) const {
    if (a.size() != nvars) fail(ErrorKind::Schema, "divisor has wrong length");
    return reduce(proj.apply(a));
}

ZVec ClassGroup::degree(std::size_t rho) const { return reduce(proj.col(rho)); }

std::vector<ZVec> ClassGroup::degrees() const {
    std::vector<ZVec> d;
    for (std::size_t i = 0; i < nvars; ++i) d.push_back(degree(i));
    return d;
}

std::vector<QVec> ClassGroup::real_degrees() const {
    std::vector<QVec> d;
    for (std::size_t i = 0; i < nvars; ++i) d.push_back(real(degree(i)));
    return d;
}

ZVec ClassGroup::add(const ZVec& a, const ZVec& b) const { return reduce(coxskel::add(a, b)); }
ZVec ClassGroup::sub(const ZVec& a, const ZVec& b) const { return reduce(coxskel::sub(a, b)); }
ZVec ClassGroup::neg(const ZVec& a) const { return reduce(coxskel::neg(a)); }

ZVec ClassGroup::omega() const {
    ZVec w = zero_z(width());
    for (std::size_t i = 0; i < nvars; ++i) w = sub(w, degree(i));
    return w;
}

QVec ClassGroup::real(const ZVec& c) const {
    QVec q(free_rank);
    for (std::size_t i = 0; i < free_rank; ++i) q[i] = Rat(c[i]);
    return q;
}

ZVec ClassGroup::lift(const ZVec& c) const {
    // proj a + diag(torsion) s = c
    const std::size_t w = width();
    IntMatrix A(w, nvars + torsion.size());
    for (std::size_t i = 0; i < w; ++i)
        for (std::size_t j = 0; j < nvars; ++j) A(i, j) = proj(i, j);
    for (std::size_t i = 0; i < torsion.size(); ++i) A(free_rank + i, nvars + i) = torsion[i];
    auto x = integer_solve(A, c);
    if (!x) fail(ErrorKind::Invariant, "class has no integer lift");
    ZVec a(x->begin(), x->begin() + static_cast<long>(nvars));
    return a;
}

ClassGroup class_group(const std::vector<ZVec>& betas, std::size_t dim, const std::vector<std::size_t>& basis) {
    const std::size_t n = betas.size();
    IntMatrix B = IntMatrix::from_rows(betas, dim);
    if (B.cols() != dim) fail(ErrorKind::Schema, "ray dimension mismatch");
    SnfResult s = smith_normal_form(B);
    ClassGroup cg;
    cg.nvars = n;
    std::vector<ZVec> tors_rows;
    for (std::size_t i = 0; i < s.rank; ++i)
        if (s.diagonal[i] > 1) {
            cg.torsion.push_back(s.diagonal[i]);
            tors_rows.push_back(s.Uinv.row(i));
        }
    std::vector<ZVec> free_rows;
    for (std::size_t i = s.rank; i < n; ++i) free_rows.push_back(s.Uinv.row(i));
    cg.free_rank = free_rows.size();
    if (s.rank < dim) cg.notes.push_back("ray pairing is not injective; the torus has a trivially acting factor");
    IntMatrix F = IntMatrix::from_rows(free_rows, n);
    if (cg.free_rank > 0) {
        if (!basis.empty()) {
            if (basis.size() != cg.free_rank) fail(ErrorKind::Schema, "class_basis must name exactly rank(Cl) variables");
            IntMatrix FJ(cg.free_rank, cg.free_rank);
            for (std::size_t i = 0; i < cg.free_rank; ++i)
                for (std::size_t j = 0; j < cg.free_rank; ++j) {
                    if (basis[j] >= n) fail(ErrorKind::Schema, "class_basis index out of range");
                    FJ(i, j) = F(i, basis[j]);
                }
            if (abs(determinant(FJ)) != 1) fail(ErrorKind::Precondition, "class_basis degrees do not form a basis of the free part");
            // G = FJ^{-1}, integral because FJ is unimodular
            SnfResult t = smith_normal_form(FJ);
            IntMatrix G = t.Vinv * t.Uinv;  // D = I
            F = G * F;
        } else {
            F = hermite_normal_form(F).H;
        }
    }
    cg.proj = IntMatrix(cg.width(), n);
    for (std::size_t i = 0; i < cg.free_rank; ++i)
        for (std::size_t j = 0; j < n; ++j) cg.proj(i, j) = F(i, j);
    for (std::size_t i = 0; i < cg.torsion.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Int x = tors_rows[i][j] % cg.torsion[i];
            if (x < 0) x += cg.torsion[i];
            cg.proj(cg.free_rank + i, j) = x;
        }
    return cg;
}

std::vector<ZVec> ToricData::betas() const {
    std::vector<ZVec> b;
    for (std::size_t i = 0; i < rays.size(); ++i) b.push_back(beta(i));
    return b;
}

StackyFan ToricData::stacky() const {
    if (!fan) fail(ErrorKind::Precondition, name + ": no fan available in degree-matrix mode");
    return StackyFan{*fan, mult};
}

StackyFan ToricData::stacky(const Fan& f) const { return StackyFan{f, mult}; }

ToricData from_fan(const std::string& name, const StackyFan& sf, const std::vector<std::size_t>& class_basis) {
    ToricData td;
    td.name = name;
    td.dim = sf.fan.dim;
    td.rays = sf.fan.rays;
    td.mult = sf.mult;
    td.fan = sf.fan;
    td.cg = class_group(td.betas(), td.dim, class_basis);
    return td;
}

ToricData from_degrees(const std::string& name, const std::vector<ZVec>& free_degrees, const std::vector<Int>& torsion,
                       const std::vector<ZVec>& torsion_degrees) {
    const std::size_t n = free_degrees.size();
    if (n == 0) fail(ErrorKind::Schema, "no variables");
    const std::size_t r = free_degrees[0].size();
    const std::size_t t = torsion.size();
    for (const auto& d : free_degrees)
        if (d.size() != r) fail(ErrorKind::Schema, "ragged degree matrix");
    if (t > 0 && torsion_degrees.size() != n) fail(ErrorKind::Schema, "torsion degrees must be given for every variable");
    for (const auto& q : torsion)
        if (q <= 1) fail(ErrorKind::Schema, "torsion orders must exceed 1");
    // kernel of a -> (Q a, Q_tor a mod torsion)
    IntMatrix A(r + t, n + t);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < r; ++i) A(i, j) = free_degrees[j][i];
        for (std::size_t i = 0; i < t; ++i) {
            if (torsion_degrees[j].size() != t) fail(ErrorKind::Schema, "torsion degree has wrong length");
            A(r + i, j) = torsion_degrees[j][i];
        }
    }
    for (std::size_t i = 0; i < t; ++i) A(r + i, n + i) = torsion[i];
    auto ker = integer_kernel(A);
    // project to the first n coordinates and take a lattice basis of the image
    IntMatrix Gen(n, ker.size());
    for (std::size_t k = 0; k < ker.size(); ++k)
        for (std::size_t j = 0; j < n; ++j) Gen(j, k) = ker[k][j];
    SnfResult s = smith_normal_form(Gen);
    std::vector<ZVec> basis;
    for (std::size_t k = 0; k < s.rank; ++k) basis.push_back(scale(s.U.col(k), s.diagonal[k]));
    const std::size_t dim = basis.size();
    if (dim + r != n) fail(ErrorKind::Precondition, "degree matrix must have full rank");
    ToricData td;
    td.name = name;
    td.dim = dim;
    for (std::size_t j = 0; j < n; ++j) {
        ZVec row(dim);
        for (std::size_t k = 0; k < dim; ++k) row[k] = basis[k][j];
        Int g = content(row);
        if (g == 0) fail(ErrorKind::Precondition, "variable " + std::to_string(j) + " has zero ray in the Gale dual");
        td.rays.push_back(primitive(row));
        td.mult.push_back(g);
    }
    td.cg = class_group(td.betas(), dim);
    // Re-express the computed class group in the coordinates of the given degrees when they match.
    IntMatrix Q(r + t, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < r; ++i) Q(i, j) = free_degrees[j][i];
        for (std::size_t i = 0; i < t; ++i) Q(r + i, j) = torsion_degrees[j][i];
    }
    // surjective onto Z^r + torsion iff the presentation matrix has unit invariant factors
    auto sa = smith_normal_form(A);
    bool surjective = sa.rank == r + t;
    for (std::size_t i = 0; i < sa.rank; ++i)
        if (sa.diagonal[i] != 1) surjective = false;
    if (surjective) {
        td.cg.proj = Q;
        td.cg.torsion = torsion;
    } else {
        td.cg.notes.push_back("degree matrix is not surjective onto its saturation; class group recomputed from the Gale dual");
    }
    return td;
}

Rat SupportFunction::eval(const Fan& fan, const QVec& v) const {
    for (std::size_t c = 0; c < fan.cones.size(); ++c)
        if (cone_coordinates(fan, fan.cones[c], v)) return dot(m[c], v);
    fail(ErrorKind::Precondition, "support function evaluated outside the support");
}

SupportFunction support_function(const StackyFan& sf, const ZVec& a) {
    const Fan& f = sf.fan;
    if (a.size() != f.rays.size()) fail(ErrorKind::Schema, "divisor has wrong length");
    if (!f.simplicial()) fail(ErrorKind::Precondition, "support function needs a simplicial fan");
    SupportFunction F;
    for (const auto& c : f.cones) {
        QMat A;
        QVec b;
        for (auto r : c) {
            A.push_back(to_q(sf.beta(r)));
            b.push_back(Rat(-a[r]));
        }
        auto m = solve(A, b);
        if (!m) fail(ErrorKind::Invariant, "support function system is inconsistent");
        F.m.push_back(*m);
    }
    return F;
}

bool is_nef(const StackyFan& sf, const ZVec& a) {
    SupportFunction F = support_function(sf, a);
    const Fan& f = sf.fan;
    for (std::size_t i = 0; i < f.cones.size(); ++i)
        for (std::size_t j = 0; j < f.cones.size(); ++j) {
            if (i == j) continue;
            for (auto r : f.cones[j])
                if (dot(f.rays[r], F.m[i]) < dot(f.rays[r], F.m[j])) return false;
        }
    return true;
}

RationalPolyhedron section_polyhedron(const std::vector<ZVec>& rays, const ZVec& a) {
    if (rays.empty()) fail(ErrorKind::Precondition, "section polyhedron without rays");
    RationalPolyhedron P(rays[0].size());
    for (std::size_t r = 0; r < rays.size(); ++r) P.add(to_q(rays[r]), Rat(-a[r]));
    return P;
}

RationalPolyhedron section_polyhedron(const StackyFan& sf, const ZVec& a) { return section_polyhedron(sf.fan.rays, a); }

RationalPolyhedron monomial_polyhedron(const ToricData& td, const ZVec& a) { return section_polyhedron(td.betas(), a); }

Effectivity effective(const ToricData& td, const ZVec& cls) {
    ZVec a = td.cg.lift(cls);
    auto m = find_lattice_point(monomial_polyhedron(td, a));
    Effectivity e;
    if (!m) return e;
    e.effective = true;
    e.witness = a;
    for (std::size_t r = 0; r < td.nvars(); ++r) e.witness[r] += dot(td.beta(r), *m);
    return e;
}

std::optional<Int> graded_dimension(const ToricData& td, const ZVec& cls) {
    return count_lattice_points(monomial_polyhedron(td, td.cg.lift(cls)));
}

std::vector<ZVec> monomial_basis(const ToricData& td, const ZVec& cls) {
    ZVec a = td.cg.lift(cls);
    std::vector<ZVec> pts;
    auto n = count_lattice_points(monomial_polyhedron(td, a), &pts);
    if (!n) fail(ErrorKind::Precondition, "graded piece is infinite dimensional");
    std::vector<ZVec> out;
    for (const auto& m : pts) {
        ZVec e = a;
        for (std::size_t r = 0; r < td.nvars(); ++r) e[r] += dot(td.beta(r), m);
        out.push_back(e);
    }
    std::sort(out.begin(), out.end(), std::greater<ZVec>());
    return out;
}

}  // namespace coxskel
