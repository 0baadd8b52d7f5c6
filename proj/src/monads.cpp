#include "coxskel/monads.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "coxskel/theta.hpp"

namespace coxskel {

// ---- polynomials ----

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out = a;
    for (const auto& [e, c] : b) {
        Int& v = out[e];
        v += c;
        if (v == 0) out.erase(e);
    }
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            ZVec e = add(ea, eb);
            Int& v = out[e];
            v += ca * cb;
            if (v == 0) out.erase(e);
        }
    return out;
}

Poly poly_scale(const Poly& a, const Int& c) {
    Poly out;
    if (c == 0) return out;
    for (const auto& [e, v] : a) out[e] = v * c;
    return out;
}

Poly monomial(const ZVec& exponent, const Int& coeff) {
    Poly p;
    if (coeff != 0) p[exponent] = coeff;
    return p;
}

Poly poly_specialize(const Poly& a, const std::vector<std::size_t>& vars) {
    Poly out;
    for (const auto& [e, c] : a) {
        ZVec f = e;
        for (auto v : vars) f[v] = 0;
        out = poly_add(out, monomial(f, c));
    }
    return out;
}

std::string poly_str(const Poly& a) {
    if (a.empty()) return "0";
    std::string s;
    // largest exponents first reads more naturally
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        const auto& [e, c] = *it;
        Int mag = c < 0 ? Int(-c) : c;
        if (s.empty())
            s += c < 0 ? "-" : "";
        else
            s += c < 0 ? " - " : " + ";
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += "x" + std::to_string(i);
            if (e[i] != 1) mono += "^" + to_string(e[i]);
        }
        if (mono.empty())
            s += to_string(mag);
        else if (mag == 1)
            s += mono;
        else
            s += to_string(mag) + "*" + mono;
    }
    return s;
}

Poly parse_poly(const std::string& text, std::size_t nvars) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) fail(ErrorKind::Schema, "empty polynomial");
    Poly out;
    std::size_t i = 0;
    auto bad = [&](const std::string& why) { fail(ErrorKind::Schema, "polynomial '" + text + "': " + why); };
    auto read_int = [&]() {
        std::size_t j = i;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        if (j == i) bad("expected a number");
        Int v(s.substr(i, j - i));
        i = j;
        return v;
    };
    while (i < s.size()) {
        int sign = 1;
        if (s[i] == '+' || s[i] == '-') {
            sign = s[i] == '-' ? -1 : 1;
            ++i;
        } else if (i != 0) {
            bad("expected + or -");
        }
        Int coeff = 1;
        ZVec e = zero_z(nvars);
        bool any = false;
        while (i < s.size() && s[i] != '+' && s[i] != '-') {
            if (any) {
                if (s[i] != '*') bad("expected *");
                ++i;
            }
            if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
                coeff *= read_int();
            } else if (i < s.size() && s[i] == 'x') {
                ++i;
                Int v = read_int();
                if (v >= Int(nvars)) bad("variable index out of range");
                Int power = 1;
                if (i < s.size() && s[i] == '^') {
                    ++i;
                    power = read_int();
                }
                e[static_cast<std::size_t>(v)] += power;
            } else {
                bad("unexpected character");
            }
            any = true;
        }
        if (!any) bad("dangling sign");
        out = poly_add(out, monomial(e, coeff * sign));
    }
    return out;
}

// ---- complexes ----

std::size_t ThetaComplex::rank(std::size_t k) const {
    std::size_t n = 0;
    for (const auto& s : terms[k]) n += s.mult;
    return n;
}

const ZVec& ThetaComplex::cls(std::size_t k, std::size_t index) const {
    for (const auto& s : terms[k]) {
        if (index < s.mult) return s.cls;
        index -= s.mult;
    }
    fail(ErrorKind::Precondition, "summand index out of range");
}

namespace {

using PolyMat = std::vector<std::vector<Poly>>;

// B * A, where A: n -> m and B: m -> p
PolyMat compose(const PolyMat& B, const PolyMat& A, std::size_t n) {
    PolyMat out(B.size(), std::vector<Poly>(n));
    for (std::size_t r = 0; r < B.size(); ++r)
        for (std::size_t c = 0; c < n; ++c)
            for (std::size_t k = 0; k < A.size(); ++k) out[r][c] = poly_add(out[r][c], poly_mul(B[r][k], A[k][c]));
    return out;
}

bool all_zero(const PolyMat& M) {
    for (const auto& row : M)
        for (const auto& p : row)
            if (!p.empty()) return false;
    return true;
}

std::map<ZVec, QVec> witness_table(const ToricData& td) {
    std::map<ZVec, QVec> w;
    for (const auto& e : enumerate_theta(td)) w.emplace(e.cls, e.witness);
    return w;
}

RestrictedComplex restrict_with(const ThetaComplex& c, const ToricData& td, const SecondaryFan& g, std::size_t face,
                                const std::map<ZVec, QVec>& witnesses) {
    if (face >= g.faces.size()) fail(ErrorKind::Precondition, "no such face");
    const Face& f = g.faces[face];
    RestrictedComplex out;
    out.face = face;
    out.lowest = c.lowest;
    std::vector<std::vector<std::size_t>> keep(c.terms.size());  // expanded indices kept
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
        std::vector<RestrictedSummand> row;
        std::size_t base = 0;
        for (std::size_t s = 0; s < c.terms[k].size(); ++s) {
            const Summand& sm = c.terms[k][s];
            auto it = witnesses.find(td.cg.reduce(sm.cls));
            if (it == witnesses.end())
                fail(ErrorKind::Precondition, "summand class " + to_string(sm.cls) + " has no witness in Theta");
            if (restricts(f.gfan, it->second)) {
                ZVec dbar = restricted_class(f, td, it->second);
                row.push_back({s, sm.cls, dbar.empty() ? dbar : f.quotient_cg.neg(dbar), sm.mult});
                for (std::size_t m = 0; m < sm.mult; ++m) keep[k].push_back(base + m);
            } else {
                out.dropped.push_back("degree " + std::to_string(c.degree(k)) + " summand " + std::to_string(s));
            }
            base += sm.mult;
        }
        out.terms.push_back(std::move(row));
    }
    for (std::size_t k = 0; k < c.maps.size(); ++k) {
        PolyMat M(keep[k + 1].size(), std::vector<Poly>(keep[k].size()));
        for (std::size_t r = 0; r < keep[k + 1].size(); ++r)
            for (std::size_t s = 0; s < keep[k].size(); ++s)
                M[r][s] = poly_specialize(c.maps[k][keep[k + 1][r]][keep[k][s]], f.gfan.contracted);
        out.maps.push_back(std::move(M));
    }
    for (std::size_t k = 0; k + 1 < out.maps.size(); ++k)
        if (!all_zero(compose(out.maps[k + 1], out.maps[k], keep[k].size()))) out.d2_zero = false;
    return out;
}

}  // namespace

ComplexVerdict validate_complex(const ThetaComplex& c, const ClassGroup& cg) {
    ComplexVerdict v;
    auto bad = [&](const std::string& msg) {
        v.valid = false;
        v.violations.push_back(msg);
    };
    if (c.nvars != cg.nvars) bad("variable count differs from the class group");
    if (c.terms.empty()) bad("no terms");
    if (!c.terms.empty() && c.maps.size() + 1 != c.terms.size()) bad("expected one map between consecutive terms");
    if (!v.valid) return v;
    for (std::size_t k = 0; k < c.terms.size(); ++k)
        for (const auto& s : c.terms[k])
            if (s.cls.size() != cg.width()) bad("term in degree " + std::to_string(c.degree(k)) + " has a class of the wrong width");
    if (!v.valid) return v;
    for (std::size_t k = 0; k < c.maps.size(); ++k) {
        const auto& M = c.maps[k];
        const std::size_t rows = c.rank(k + 1), cols = c.rank(k);
        if (M.size() != rows) {
            bad("map out of degree " + std::to_string(c.degree(k)) + " has " + std::to_string(M.size()) + " rows, expected " +
                std::to_string(rows));
            continue;
        }
        bool shape = true;
        for (const auto& row : M)
            if (row.size() != cols) shape = false;
        if (!shape) {
            bad("map out of degree " + std::to_string(c.degree(k)) + " has rows of the wrong length");
            continue;
        }
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t s = 0; s < cols; ++s) {
                ZVec want = cg.sub(c.cls(k + 1, r), c.cls(k, s));
                for (const auto& [e, coeff] : M[r][s]) {
                    bool ok = e.size() == c.nvars;
                    for (const auto& x : e) ok = ok && x >= 0;
                    if (!ok) {
                        bad("entry (" + std::to_string(r) + "," + std::to_string(s) + ") of map " + std::to_string(c.degree(k)) +
                            " has a malformed exponent");
                        break;
                    }
                    if (cg.class_of(e) != want) {
                        bad("entry (" + std::to_string(r) + "," + std::to_string(s) + ") of map " + std::to_string(c.degree(k)) +
                            " is not homogeneous of the required degree");
                        break;
                    }
                }
            }
    }
    if (!v.valid) return v;
    for (std::size_t k = 0; k + 1 < c.maps.size(); ++k)
        if (!all_zero(compose(c.maps[k + 1], c.maps[k], c.rank(k))))
            bad("d^2 != 0 starting in degree " + std::to_string(c.degree(k)));
    return v;
}

QVec witness_of(const ToricData& td, const ZVec& cls) {
    auto w = witness_table(td);
    auto it = w.find(td.cg.reduce(cls));
    if (it == w.end()) fail(ErrorKind::Precondition, "class is not in Theta");
    return it->second;
}

RestrictedComplex restrict_to_face(const ThetaComplex& c, const ToricData& td, const SecondaryFan& g, std::size_t face) {
    return restrict_with(c, td, g, face, witness_table(td));
}

Strand degree_zero_strand(const ThetaComplex& c, const ToricData& td, unsigned long characteristic) {
    Strand st;
    st.lowest = c.lowest;
    // bases per expanded summand
    std::vector<std::vector<std::vector<ZVec>>> bases(c.terms.size());
    std::vector<std::vector<std::size_t>> offsets(c.terms.size());
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
        std::size_t total = 0;
        for (std::size_t i = 0; i < c.rank(k); ++i) {
            const ZVec& cls = c.cls(k, i);
            if (!graded_dimension(td, cls)) fail(ErrorKind::Precondition, "degree-zero strand has an infinite component");
            offsets[k].push_back(total);
            bases[k].push_back(monomial_basis(td, cls));
            total += bases[k].back().size();
        }
        st.dims.push_back(total);
    }
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
        if (k >= c.maps.size() || st.dims[k] == 0 || st.dims[k + 1] == 0) {
            st.ranks.push_back(0);
            continue;
        }
        std::vector<std::map<ZVec, std::size_t>> index(c.rank(k + 1));
        for (std::size_t r = 0; r < index.size(); ++r)
            for (std::size_t b = 0; b < bases[k + 1][r].size(); ++b) index[r][bases[k + 1][r][b]] = b;
        std::vector<std::vector<Int>> M(st.dims[k + 1], std::vector<Int>(st.dims[k], 0));
        for (std::size_t s = 0; s < c.rank(k); ++s)
            for (std::size_t b = 0; b < bases[k][s].size(); ++b)
                for (std::size_t r = 0; r < c.rank(k + 1); ++r)
                    for (const auto& [e, coeff] : c.maps[k][r][s]) {
                        auto it = index[r].find(add(e, bases[k][s][b]));
                        if (it == index[r].end()) fail(ErrorKind::Invariant, "entry leaves the target graded piece");
                        M[offsets[k + 1][r] + it->second][offsets[k][s] + b] += coeff;
                    }
        if (characteristic == 0) {
            QMat Q;
            for (const auto& row : M) {
                QVec q;
                for (const auto& x : row) q.push_back(Rat(x));
                Q.push_back(q);
            }
            st.ranks.push_back(rank(Q));
        } else {
            st.ranks.push_back(rank_mod(M, Int(characteristic)));
        }
    }
    for (std::size_t k = 0; k < c.terms.size(); ++k) {
        std::size_t in = k == 0 ? 0 : st.ranks[k - 1];
        st.cohomology.push_back(st.dims[k] - st.ranks[k] - in);
    }
    return st;
}

VanishingReport vanishing_report(const ThetaComplex& c, const ToricData& td, const SecondaryFan& g) {
    VanishingReport rep;
    for (std::size_t k = 0; k < c.terms.size(); ++k)
        if (c.degree(k) > 0 && c.rank(k) > 0) rep.offending.push_back(c.degree(k));
    if (!rep.offending.empty()) {
        rep.pass = false;
        return rep;
    }
    auto w = witness_table(td);
    for (auto f : interior_faces(g)) {
        auto r = restrict_with(c, td, g, f, w);
        std::size_t n = 0;
        for (const auto& t : r.terms)
            for (const auto& s : t) n += s.mult;
        if (!r.d2_zero) rep.pass = false;
        rep.faces.push_back(f);
        rep.surviving.push_back(n);
    }
    return rep;
}

}  // namespace coxskel
