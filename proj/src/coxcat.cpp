#include "coxskel/coxcat.hpp"

#include <algorithm>
#include <functional>

namespace coxskel {

bool in_chamber(const SecondaryFan& g, std::size_t chamber, const ZVec& cls) {
    return g.chambers.at(chamber).hrep.contains(g.cg.real(cls));
}

// ---- Theta_Cox ----

ThetaCox build_theta_cox(const ToricData& td, const SecondaryFan& g, std::vector<ThetaElement> theta) {
    ThetaCox out;
    for (std::size_t k = 0; k < theta.size(); ++k) {
        auto& e = theta[k];
        CellRef cell = chamber_of(g, e.d);
        const Face& f = g.faces[cell.face];
        if (f.chambers.empty()) fail(ErrorKind::Invariant, "effective class outside every chamber");
        e.chamber = *std::min_element(f.chambers.begin(), f.chambers.end());
        out.cells.push_back(cell);
        if (cell.is_chamber) continue;
        // the representative's support functions must agree on every ray of every chamber holding d
        AgreementCheck chk;
        chk.element = k;
        chk.chambers = f.chambers;
        std::vector<SupportFunction> F;
        for (auto c : f.chambers) F.push_back(support_function(g.chambers[c].stacky, e.divisor));
        for (std::size_t a = 0; a < f.chambers.size(); ++a)
            for (std::size_t b = 0; b < f.chambers.size(); ++b) {
                if (a == b) continue;
                const Fan& fa = g.chambers[f.chambers[a]].fan;
                const Fan& fb = g.chambers[f.chambers[b]].fan;
                for (auto r : fb.used_rays()) {
                    QVec v = to_q(td.rays[r]);
                    ++chk.rays_checked;
                    if (F[a].eval(fa, v) != F[b].eval(fb, v)) chk.ok = false;
                }
            }
        if (!chk.ok) fail(ErrorKind::Invariant, "support functions of a shared-cell element disagree between chambers");
        out.checks.push_back(chk);
    }
    out.elements = std::move(theta);
    return out;
}

// ---- endomorphism algebra ----

std::optional<std::size_t> EndAlgebra::compose(std::size_t i, std::size_t j, std::size_t k, std::size_t a, std::size_t b) const {
    ZVec prod = add(basis[i][j].at(a), basis[j][k].at(b));
    const auto& B = basis[i][k];
    auto it = std::find(B.begin(), B.end(), prod);
    if (it == B.end()) return std::nullopt;
    return static_cast<std::size_t>(it - B.begin());
}

EndAlgebra endomorphism_algebra(const ToricData& td, const std::vector<ThetaElement>& ordered) {
    EndAlgebra alg;
    alg.order = ordered;
    const std::size_t t = ordered.size();
    alg.dims.assign(t, std::vector<Dim>(t));
    alg.basis.assign(t, std::vector<std::vector<ZVec>>(t));
    for (std::size_t i = 0; i < t; ++i)
        for (std::size_t j = 0; j < t; ++j) {
            HomResult h = hom_theta(td, ordered[i].witness, ordered[j].witness);
            alg.dims[i][j] = h.dim;
            alg.basis[i][j] = h.basis;
            if (h.dim.infinite) alg.finite = false;
        }
    return alg;
}

ExceptionalVerdict check_full_strong_exceptional(const ToricData& td, const SecondaryFan& g, const EndAlgebra& alg,
                                                 unsigned long characteristic) {
    ExceptionalVerdict v;
    const std::size_t t = alg.order.size();
    v.complete = alg.finite;
    auto name = [&](std::size_t i) {
        std::string s = "(";
        for (std::size_t k = 0; k < alg.order[i].cls.size(); ++k) s += (k ? "," : "") + alg.order[i].cls[k].str();
        return s + ")";
    };
    for (std::size_t i = 0; i < t; ++i) {
        if (v.complete && !(alg.dims[i][i] == Dim{false, 1})) v.violations.push_back("End" + name(i) + " is not k");
        for (std::size_t j = i + 1; j < t && v.complete; ++j)
            if (!alg.dims[i][j].is_zero())
                v.violations.push_back("Hom" + name(i) + "->" + name(j) + " nonzero against the order");
    }
    for (std::size_t i = 0; i < t; ++i) {
        if (!alg.order[i].chamber) fail(ErrorKind::Precondition, "elements need chamber assignments");
        const Chamber& ch = g.chambers.at(*alg.order[i].chamber);
        for (std::size_t j = 0; j < t; ++j) {
            ++v.pairs;
            ZVec a = sub(alg.order[i].divisor, alg.order[j].divisor);
            auto tab = line_bundle_cohomology(ch.stacky, a, characteristic);
            for (std::size_t p = 1; p < tab.h.size(); ++p)
                if (!tab.h[p].is_zero())
                    v.violations.push_back("H^" + std::to_string(p) + " of " + name(i) + "-" + name(j) + " is " + tab.h[p].str());
            if (!(tab.h[0] == alg.dims[i][j]))
                v.violations.push_back("H^0 of " + name(i) + "-" + name(j) + " is " + tab.h[0].str() + " but the algebra has " +
                                       alg.dims[i][j].str());
        }
    }
    (void)td;
    v.pass = v.violations.empty();
    return v;
}

// ---- transforms ----

std::vector<ZVec> nef_battery(const ToricData& td, const Chamber& c, std::size_t n) {
    const std::size_t k = c.extreme_rays.size();
    std::vector<ZVec> out;
    std::vector<std::size_t> w(k, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i == k) {
            ZVec cls = zero_z(td.cg.width());
            for (std::size_t r = 0; r < k; ++r) {
                ZVec full = c.extreme_rays[r];
                full.resize(td.cg.width(), Int(0));
                for (std::size_t s = 0; s < w[r]; ++s) cls = td.cg.add(cls, full);
            }
            out.push_back(td.cg.lift(cls));
            return;
        }
        for (std::size_t x = 0; x <= left; ++x) {
            w[i] = x;
            rec(i + 1, left - x);
        }
    };
    rec(0, n);
    return out;
}

namespace {

struct Setup {
    const Chamber* ci;
    const Chamber* cj;
    Refinement ref;
};

Setup setup(const SecondaryFan& g, std::size_t i, std::size_t j) {
    if (i >= g.chambers.size() || j >= g.chambers.size()) fail(ErrorKind::Precondition, "chamber index out of range");
    Setup s{&g.chambers[i], &g.chambers[j], {}};
    s.ref = common_stacky_refinement({s.ci->fan, s.cj->fan});
    return s;
}

// Coefficients on the refinement of the pullback of O(a) from a chamber stack.
ZVec pullback(const Chamber& c, const ZVec& a, const StackyFan& lambda) {
    SupportFunction F = support_function(c.stacky, a);
    ZVec out(lambda.fan.rays.size());
    for (std::size_t r = 0; r < lambda.fan.rays.size(); ++r) {
        Rat v = F.eval(c.fan, to_q(lambda.beta(r)));
        if (denominator(v) != 1) fail(ErrorKind::Invariant, "pullback to the refinement is not integral");
        out[r] = -Int(numerator(v));
    }
    return out;
}

void run_core(const ToricData& td, const Setup& s, const ZVec& a, const std::optional<QVec>& theta, const TransformOptions& opt,
              TransformReport& rep) {
    const StackyFan& L = s.ref.lambda;
    rep.lambda_mult = L.mult;
    SupportFunction Fi = support_function(s.ci->stacky, a);
    // R^0 on every chart of the target
    for (const auto& sigma : s.cj->fan.cones) {
        ChartCheck cc;
        cc.cone = sigma;
        RationalPolyhedron Q1(td.dim), Q2(td.dim);
        for (std::size_t r = 0; r < L.fan.rays.size(); ++r) {
            if (!cone_coordinates(s.cj->fan, sigma, to_q(L.fan.rays[r]))) continue;
            QVec b = to_q(L.beta(r));
            Q1.add(b, Fi.eval(s.ci->fan, b));
        }
        for (auto r : sigma) Q2.add(to_q(td.beta(r)), Rat(-a[r]));
        auto cmp = compare_lattice_points(Q1, Q2);
        cc.recession_equal = cmp.recession_equal;
        cc.equal = cmp.equal;
        cc.deficit = !cmp.second_subset;
        cc.excess = !cmp.first_subset;
        cc.box = cmp.box;
        if (!cc.equal) rep.r0_ok = false;
        if (cc.deficit) rep.r0_deficit = true;
        rep.charts.push_back(cc);
    }
    // nef twists: refinement cohomology against the target
    ZVec pa = pullback(*s.ci, a, L);
    for (const auto& A : nef_battery(td, *s.cj, opt.nef_battery)) {
        NefProbe p;
        p.twist = A;
        ZVec tot = add(pa, pullback(*s.cj, A, L));
        p.refinement = line_bundle_cohomology(L, tot, opt.characteristic).h;
        p.target = line_bundle_cohomology(s.cj->stacky, add(A, a), opt.characteristic).h;
        for (std::size_t q = 0; q < p.refinement.size(); ++q) {
            if (!(p.refinement[q] == p.target[q])) p.ok = false;
            if (q > 0 && !p.refinement[q].is_zero()) rep.higher_nonzero = true;
        }
        if (theta) {
            p.predicted = Dim::of(count_lattice_points(shifted_section(s.cj->stacky, A, scale(*theta, Rat(-1)))));
            if (!(*p.predicted == p.refinement[0])) p.ok = false;
            for (std::size_t q = 1; q < p.refinement.size(); ++q)
                if (!p.refinement[q].is_zero()) p.ok = false;
        }
        if (!p.ok) rep.battery_ok = false;
        rep.battery.push_back(p);
    }
}

}  // namespace

TransformReport transform_line_bundle(const ToricData& td, const SecondaryFan& g, std::size_t i, std::size_t j, const ZVec& cls,
                                      const TransformOptions& opt) {
    TransformReport rep;
    rep.source = i;
    rep.target = j;
    rep.cls = td.cg.reduce(cls);
    Setup s = setup(g, i, j);
    run_core(td, s, td.cg.lift(rep.cls), std::nullopt, opt, rep);
    rep.pass = rep.r0_ok && rep.battery_ok && !rep.higher_nonzero;
    return rep;
}

TransformReport verify_theta_transform(const ToricData& td, const SecondaryFan& g, std::size_t i, std::size_t j,
                                       const ThetaElement& e, const TransformOptions& opt) {
    if (!in_chamber(g, i, e.d))
        fail(ErrorKind::Precondition, "d is not in the source chamber; use transform_line_bundle for diagnostics");
    TransformReport rep;
    rep.source = i;
    rep.target = j;
    rep.cls = e.cls;
    rep.theta = e.witness;
    Setup s = setup(g, i, j);
    const ZVec a = scale(e.divisor, Int(-1));  // O(-d)
    run_core(td, s, a, e.witness, opt, rep);

    // F_j >= F_i on the refinement rays
    SupportFunction Fi = support_function(s.ci->stacky, a), Fj = support_function(s.cj->stacky, a);
    for (std::size_t r = 0; r < s.ref.lambda.fan.rays.size(); ++r) {
        QVec v = to_q(s.ref.lambda.fan.rays[r]);
        if (Fj.eval(s.cj->fan, v) < Fi.eval(s.ci->fan, v)) rep.support_order_ok = false;
    }

    // star shapes of P_d minus (P_A - m) around -theta
    const QVec& theta = e.witness;
    RationalPolyhedron Pd(td.dim);
    for (std::size_t r = 0; r < td.nvars(); ++r) Pd.add(to_q(td.beta(r)), Rat(-e.divisor[r]));
    QVec mtheta = scale(theta, Rat(-1));
    if (!Pd.contains(mtheta)) fail(ErrorKind::Invariant, "-theta is not in P_d");
    auto alphas = s.cj->fan.used_rays();
    VRep vd = vrep(Pd);
    // min of <k, beta_alpha> over P_d; nullopt when unbounded below
    std::vector<std::optional<Rat>> low;
    for (auto al : alphas) {
        auto lp = maximize(Pd, scale(to_q(td.beta(al)), Rat(-1)));
        if (lp.status == LpResult::Status::Infeasible) fail(ErrorKind::Invariant, "P_d is empty");
        low.push_back(lp.status == LpResult::Status::Optimal ? std::optional<Rat>(-lp.value) : std::nullopt);
    }
    for (const auto& A : nef_battery(td, *s.cj, opt.nef_battery)) {
        StarCheck sc;
        sc.twist = A;
        RationalPolyhedron PA(td.dim);
        for (auto r : alphas) PA.add(to_q(td.beta(r)), Rat(-A[r]));
        VRep va = vrep(PA);
        // weights m where P_d and P_A - m interact: differences of vertices, widened by two
        Box box;
        box.lo = ZVec(td.dim, Int(0));
        box.hi = ZVec(td.dim, Int(0));
        bool init = false;
        for (const auto& x : vd.vertices)
            for (const auto& y : va.vertices) {
                QVec diff = sub(y, x);
                for (std::size_t k = 0; k < td.dim; ++k) {
                    Int lo = floor_rat(diff[k]) - 2, hi = ceil_rat(diff[k]) + 2;
                    if (!init || lo < box.lo[k]) box.lo[k] = lo;
                    if (!init || hi > box.hi[k]) box.hi[k] = hi;
                }
                init = true;
            }
        for (const auto& m : box_points(box)) {
            ++sc.weights;
            bool nonempty = false;
            for (std::size_t ia = 0; ia < alphas.size(); ++ia) {
                const auto al = alphas[ia];
                QVec b = to_q(td.beta(al));
                // {k in P_d : <k + m, b> < -a_alpha} is nonempty iff min_{P_d} <k, b> lies below the bound
                if (low[ia] && !(*low[ia] < Rat(-A[al]) - dot(to_q(m), b))) continue;
                nonempty = true;
                if (!(dot(add(mtheta, to_q(m)), b) < Rat(-A[al]))) {
                    sc.ok = false;
                    sc.detail = "facet criterion fails at ray " + std::to_string(al);
                }
            }
            if (nonempty) ++sc.nonempty;
            // degree zero: empty difference iff m - theta in P_A
            bool in_pa = PA.contains(add(to_q(m), mtheta));
            if (nonempty == in_pa) {
                sc.ok = false;
                sc.detail = "emptiness of the difference disagrees with m - theta in P_A";
            }
        }
        if (!sc.ok) rep.star_ok = false;
        rep.star.push_back(sc);
    }
    rep.pass = rep.r0_ok && rep.battery_ok && rep.support_order_ok && rep.star_ok && !rep.higher_nonzero;
    return rep;
}

}  // namespace coxskel
