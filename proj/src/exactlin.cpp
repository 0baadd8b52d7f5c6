#include "coxskel/exactlin.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace coxskel {

void fail(ErrorKind kind, const std::string& what) { throw CoxError(kind, what); }

Int floor_rat(const Rat& q) {
    Int n = boost::multiprecision::numerator(q);
    Int d = boost::multiprecision::denominator(q);
    Int r = n / d;  // truncates toward zero
    if (n % d != 0 && n < 0) r -= 1;
    return r;
}

Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

Int gcd(const Int& a, const Int& b) {
    Int x = abs(a), y = abs(b);
    while (y != 0) {
        Int t = x % y;
        x = y;
        y = t;
    }
    return x;
}

Int lcm(const Int& a, const Int& b) {
    if (a == 0 || b == 0) return 0;
    return abs(a / gcd(a, b) * b);
}

Int content(const ZVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

std::string to_string(const Int& v) { return v.str(); }

std::string to_string(const ZVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string to_string(const QVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + ")";
}

std::string to_string(const Rat& v) {
    Int n = boost::multiprecision::numerator(v);
    Int d = boost::multiprecision::denominator(v);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int n(s.substr(0, slash));
        Int d(s.substr(slash + 1));
        if (d == 0) fail(ErrorKind::Schema, "zero denominator in '" + s + "'");
        return Rat(n, d);
    } catch (const std::runtime_error&) {
        fail(ErrorKind::Schema, "not a number: '" + s + "'");
    }
}

QVec to_q(const ZVec& v) {
    QVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
    return r;
}

ZVec zero_z(std::size_t n) { return ZVec(n, Int(0)); }
QVec zero_q(std::size_t n) { return QVec(n, Rat(0)); }

Rat dot(const QVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += a[i] * b[i];
    return s;
}

Rat dot(const ZVec& a, const QVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != 0 && b[i] != 0) s += Rat(a[i]) * b[i];
    return s;
}

Int dot(const ZVec& a, const ZVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

ZVec add(const ZVec& a, const ZVec& b) {
    ZVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

ZVec sub(const ZVec& a, const ZVec& b) {
    ZVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

ZVec neg(const ZVec& a) {
    ZVec r(a);
    for (auto& x : r) x = -x;
    return r;
}

ZVec scale(const ZVec& a, const Int& c) {
    ZVec r(a);
    for (auto& x : r) x *= c;
    return r;
}

QVec add(const QVec& a, const QVec& b) {
    QVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

QVec sub(const QVec& a, const QVec& b) {
    QVec r(a);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
    return r;
}

QVec scale(const QVec& a, const Rat& c) {
    QVec r(a);
    for (auto& x : r) x *= c;
    return r;
}

bool is_zero(const ZVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

bool is_zero(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

ZVec primitive(const QVec& v) {
    Int den = 1;
    for (const auto& x : v) den = lcm(den, boost::multiprecision::denominator(x));
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = boost::multiprecision::numerator(v[i] * Rat(den));
    return primitive(r);
}

ZVec primitive(const ZVec& v) {
    Int g = content(v);
    if (g == 0) return v;
    ZVec r(v);
    for (auto& x : r) x /= g;
    return r;
}

std::optional<ZVec> as_integral(const QVec& v) {
    ZVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (boost::multiprecision::denominator(v[i]) != 1) return std::nullopt;
        r[i] = boost::multiprecision::numerator(v[i]);
    }
    return r;
}

// ---- IntMatrix ----

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, Int(0)) {}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix I(n, n);
    for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
    return I;
}

IntMatrix IntMatrix::from_rows(const std::vector<ZVec>& rows, std::size_t cols) {
    std::size_t c = rows.empty() ? cols : rows[0].size();
    IntMatrix M(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != c) fail(ErrorKind::Schema, "ragged matrix rows");
        for (std::size_t j = 0; j < c; ++j) M(i, j) = rows[i][j];
    }
    return M;
}

Int& IntMatrix::operator()(std::size_t i, std::size_t j) {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix index");
    return a_[i * cols_ + j];
}

const Int& IntMatrix::operator()(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) throw std::out_of_range("IntMatrix index");
    return a_[i * cols_ + j];
}

ZVec IntMatrix::row(std::size_t i) const {
    ZVec r(cols_);
    for (std::size_t j = 0; j < cols_; ++j) r[j] = (*this)(i, j);
    return r;
}

ZVec IntMatrix::col(std::size_t j) const {
    ZVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix T(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) T(j, i) = (*this)(i, j);
    return T;
}

ZVec IntMatrix::apply(const ZVec& x) const {
    ZVec y(rows_, Int(0));
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) y[i] += (*this)(i, j) * x[j];
    return y;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("IntMatrix shape mismatch");
    IntMatrix P(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Int& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) P(i, j) += a * o(k, j);
        }
    return P;
}

bool IntMatrix::operator==(const IntMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

Int determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    std::size_t n = A.rows();
    if (n == 0) return 1;
    IntMatrix M = A;
    Int sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (M(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && M(p, k) == 0) ++p;
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(M(k, j), M(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) M(i, j) = (M(i, j) * M(k, k) - M(i, k) * M(k, j)) / prev;
        prev = M(k, k);
    }
    return sign * M(n - 1, n - 1);
}

// ---- Smith normal form ----

namespace {

struct SnfState {
    IntMatrix D, U, V, Uinv, Vinv;

    void swap_rows(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < D.cols(); ++c) std::swap(D(i, c), D(j, c));
        for (std::size_t c = 0; c < Uinv.cols(); ++c) std::swap(Uinv(i, c), Uinv(j, c));
        for (std::size_t r = 0; r < U.rows(); ++r) std::swap(U(r, i), U(r, j));
    }
    void swap_cols(std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < D.rows(); ++r) std::swap(D(r, i), D(r, j));
        for (std::size_t r = 0; r < Vinv.rows(); ++r) std::swap(Vinv(r, i), Vinv(r, j));
        for (std::size_t c = 0; c < V.cols(); ++c) std::swap(V(i, c), V(j, c));
    }
    // row_i += c * row_j
    void add_row(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t k = 0; k < D.cols(); ++k) D(i, k) += c * D(j, k);
        for (std::size_t k = 0; k < Uinv.cols(); ++k) Uinv(i, k) += c * Uinv(j, k);
        for (std::size_t r = 0; r < U.rows(); ++r) U(r, j) -= c * U(r, i);
    }
    // col_i += c * col_j
    void add_col(std::size_t i, std::size_t j, const Int& c) {
        if (c == 0) return;
        for (std::size_t r = 0; r < D.rows(); ++r) D(r, i) += c * D(r, j);
        for (std::size_t r = 0; r < Vinv.rows(); ++r) Vinv(r, i) += c * Vinv(r, j);
        for (std::size_t k = 0; k < V.cols(); ++k) V(j, k) -= c * V(i, k);
    }
    void negate_row(std::size_t i) {
        for (std::size_t k = 0; k < D.cols(); ++k) D(i, k) = -D(i, k);
        for (std::size_t k = 0; k < Uinv.cols(); ++k) Uinv(i, k) = -Uinv(i, k);
        for (std::size_t r = 0; r < U.rows(); ++r) U(r, i) = -U(r, i);
    }
};

}  // namespace

SnfResult smith_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    SnfState s{A, IntMatrix::identity(m), IntMatrix::identity(n), IntMatrix::identity(m), IntMatrix::identity(n)};
    std::size_t t = 0;
    while (t < m && t < n) {
        // pivot: smallest nonzero absolute value in the trailing block
        bool found = false;
        std::size_t pi = t, pj = t;
        Int best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (s.D(i, j) != 0 && (!found || abs(s.D(i, j)) < best)) {
                    found = true;
                    best = abs(s.D(i, j));
                    pi = i;
                    pj = j;
                }
        if (!found) break;
        s.swap_rows(t, pi);
        s.swap_cols(t, pj);
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (s.D(i, t) == 0) continue;
                Int q = s.D(i, t) / s.D(t, t);
                s.add_row(i, t, -q);
                if (s.D(i, t) != 0) {
                    s.swap_rows(t, i);
                    dirty = true;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (s.D(t, j) == 0) continue;
                Int q = s.D(t, j) / s.D(t, t);
                s.add_col(j, t, -q);
                if (s.D(t, j) != 0) {
                    s.swap_cols(t, j);
                    dirty = true;
                }
            }
            if (dirty) continue;
            for (std::size_t i = t + 1; i < m && !dirty; ++i)
                for (std::size_t j = t + 1; j < n; ++j)
                    if (s.D(i, j) % s.D(t, t) != 0) {
                        s.add_row(t, i, 1);
                        dirty = true;
                        break;
                    }
        }
        if (s.D(t, t) < 0) s.negate_row(t);
        ++t;
    }
    SnfResult r;
    r.rank = t;
    for (std::size_t i = 0; i < std::min(m, n); ++i) {
        r.diagonal.push_back(s.D(i, i));
        if (s.D(i, i) > 1) r.torsion.push_back(s.D(i, i));
    }
    r.D = std::move(s.D);
    r.U = std::move(s.U);
    r.V = std::move(s.V);
    r.Uinv = std::move(s.Uinv);
    r.Vinv = std::move(s.Vinv);
    return r;
}

HnfResult hermite_normal_form(const IntMatrix& A) {
    const std::size_t m = A.rows(), n = A.cols();
    HnfResult r{A, IntMatrix::identity(m), {}};
    auto add_row = [&](std::size_t i, std::size_t j, const Int& c) {  // row_i += c * row_j
        for (std::size_t k = 0; k < n; ++k) r.H(i, k) += c * r.H(j, k);
        for (std::size_t k = 0; k < m; ++k) r.G(i, k) += c * r.G(j, k);
    };
    auto swap_rows = [&](std::size_t i, std::size_t j) {
        for (std::size_t k = 0; k < n; ++k) std::swap(r.H(i, k), r.H(j, k));
        for (std::size_t k = 0; k < m; ++k) std::swap(r.G(i, k), r.G(j, k));
    };
    std::size_t p = 0;
    for (std::size_t c = 0; c < n && p < m; ++c) {
        for (;;) {
            std::size_t best = m;
            for (std::size_t i = p; i < m; ++i)
                if (r.H(i, c) != 0 && (best == m || abs(r.H(i, c)) < abs(r.H(best, c)))) best = i;
            if (best == m) break;
            swap_rows(p, best);
            bool done = true;
            for (std::size_t i = p + 1; i < m; ++i) {
                if (r.H(i, c) == 0) continue;
                add_row(i, p, -(r.H(i, c) / r.H(p, c)));
                if (r.H(i, c) != 0) done = false;
            }
            if (done) break;
        }
        if (p >= m || r.H(p, c) == 0) continue;
        if (r.H(p, c) < 0) {
            for (std::size_t k = 0; k < n; ++k) r.H(p, k) = -r.H(p, k);
            for (std::size_t k = 0; k < m; ++k) r.G(p, k) = -r.G(p, k);
        }
        for (std::size_t i = 0; i < p; ++i) {
            Int q = r.H(i, c) / r.H(p, c);
            if (r.H(i, c) - q * r.H(p, c) < 0) q -= 1;
            add_row(i, p, -q);
        }
        r.pivots.push_back(c);
        ++p;
    }
    return r;
}

std::vector<ZVec> integer_kernel(const IntMatrix& A) {
    SnfResult s = smith_normal_form(A);
    std::vector<ZVec> basis;
    for (std::size_t j = s.rank; j < A.cols(); ++j) basis.push_back(s.Vinv.col(j));
    return basis;
}

std::optional<ZVec> integer_solve(const IntMatrix& A, const ZVec& b) {
    SnfResult s = smith_normal_form(A);
    ZVec c = s.Uinv.apply(b);
    ZVec y(A.cols(), Int(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i < s.rank) {
            if (c[i] % s.diagonal[i] != 0) return std::nullopt;
            y[i] = c[i] / s.diagonal[i];
        } else if (c[i] != 0) {
            return std::nullopt;
        }
    }
    return s.Vinv.apply(y);
}

// ---- rational linear algebra ----

namespace {

// Row-reduces M in place; returns pivot columns.
std::vector<std::size_t> rref(QMat& M, std::size_t cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < M.size(); ++c) {
        std::size_t p = r;
        while (p < M.size() && M[p][c] == 0) ++p;
        if (p == M.size()) continue;
        std::swap(M[p], M[r]);
        Rat inv = 1 / M[r][c];
        for (auto& x : M[r]) x *= inv;
        for (std::size_t i = 0; i < M.size(); ++i) {
            if (i == r || M[i][c] == 0) continue;
            Rat f = M[i][c];
            for (std::size_t k = c; k < M[i].size(); ++k)
                if (M[r][k] != 0) M[i][k] -= f * M[r][k];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

std::size_t rank(QMat A) {
    if (A.empty()) return 0;
    return rref(A, A[0].size()).size();
}

std::optional<QVec> solve(const QMat& A, const QVec& b) {
    std::size_t cols = A.empty() ? 0 : A[0].size();
    QMat M = A;
    for (std::size_t i = 0; i < M.size(); ++i) M[i].push_back(b[i]);
    auto piv = rref(M, cols + 1);
    QVec x(cols, Rat(0));
    for (std::size_t i = 0; i < piv.size(); ++i) {
        if (piv[i] == cols) return std::nullopt;
        x[piv[i]] = M[i][cols];
    }
    return x;
}

std::vector<QVec> kernel(const QMat& A, std::size_t cols) {
    QMat M = A;
    auto piv = rref(M, cols);
    std::vector<bool> is_piv(cols, false);
    for (auto p : piv) is_piv[p] = true;
    std::vector<QVec> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_piv[f]) continue;
        QVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -M[i][f];
        basis.push_back(v);
    }
    return basis;
}

QMat to_qmat(const std::vector<ZVec>& rows) {
    QMat M;
    for (const auto& r : rows) M.push_back(to_q(r));
    return M;
}

// ---- polyhedra ----

void RationalPolyhedron::add(const QVec& normal, const Rat& offset, bool strict) {
    if (normal.size() != dim) fail(ErrorKind::Invariant, "inequality dimension mismatch");
    ineqs.push_back({normal, offset, strict});
}

void RationalPolyhedron::add_equality(const QVec& normal, const Rat& value) {
    add(normal, value);
    add(scale(normal, Rat(-1)), -value);
}

bool RationalPolyhedron::contains(const QVec& x) const {
    for (const auto& h : ineqs) {
        Rat v = dot(h.normal, x);
        if (h.strict ? !(v > h.offset) : !(v >= h.offset)) return false;
    }
    return true;
}

bool RationalPolyhedron::contains(const ZVec& x) const { return contains(to_q(x)); }

RationalPolyhedron RationalPolyhedron::closure() const {
    RationalPolyhedron c(*this);
    for (auto& h : c.ineqs) h.strict = false;
    return c;
}

namespace {

// Dense tableau simplex with Bland's rule. Columns: structural variables (nonnegative), rhs last.
struct Tableau {
    std::vector<QVec> rows;
    std::vector<std::size_t> basis;
    std::size_t ncols = 0;  // excluding rhs

    void pivot(std::size_t r, std::size_t c, QVec& obj) {
        Rat inv = 1 / rows[r][c];
        for (auto& x : rows[r])
            if (x != 0) x *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t k = 0; k <= ncols; ++k)
                if (rows[r][k] != 0) rows[i][k] -= f * rows[r][k];
        }
        if (obj[c] != 0) {
            Rat f = obj[c];
            for (std::size_t k = 0; k <= ncols; ++k)
                if (rows[r][k] != 0) obj[k] -= f * rows[r][k];
        }
        basis[r] = c;
    }

    // obj holds reduced costs z_j (negative => improving for maximization); obj[ncols] = current value.
    bool run(QVec& obj, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = ncols;
            for (std::size_t j = 0; j < ncols; ++j)
                if (allowed[j] && obj[j] < 0) {
                    enter = j;
                    break;
                }
            if (enter == ncols) return true;
            std::size_t leave = rows.size();
            Rat best;
            for (std::size_t i = 0; i < rows.size(); ++i) {
                if (rows[i][enter] <= 0) continue;
                Rat ratio = rows[i][ncols] / rows[i][enter];
                if (leave == rows.size() || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == rows.size()) return false;
            pivot(leave, enter, obj);
        }
    }
};

QVec objective_row(const Tableau& t, const QVec& cost) {
    // z_j = sum_i c_B(i) * T[i][j] - c_j
    QVec z(t.ncols + 1, Rat(0));
    for (std::size_t j = 0; j < t.ncols; ++j) z[j] = -cost[j];
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const Rat& cb = cost[t.basis[i]];
        if (cb == 0) continue;
        for (std::size_t j = 0; j <= t.ncols; ++j)
            if (t.rows[i][j] != 0) z[j] += cb * t.rows[i][j];
    }
    return z;
}

}  // namespace

LpResult maximize(const RationalPolyhedron& P, const QVec& c) {
    const std::size_t n = P.dim, m = P.ineqs.size();
    LpResult res;
    if (m == 0) {
        if (is_zero(c)) {
            res.status = LpResult::Status::Optimal;
            res.value = 0;
            res.x = zero_q(n);
        } else {
            res.status = LpResult::Status::Unbounded;
        }
        return res;
    }
    // variables: x+ (n), x- (n), surplus (m), artificial (m)
    Tableau t;
    t.ncols = 2 * n + 2 * m;
    const std::size_t art0 = 2 * n + m;
    for (std::size_t i = 0; i < m; ++i) {
        QVec row(t.ncols + 1, Rat(0));
        const auto& h = P.ineqs[i];
        Rat sign = h.offset < 0 ? Rat(-1) : Rat(1);
        for (std::size_t j = 0; j < n; ++j) {
            row[j] = sign * h.normal[j];
            row[n + j] = -sign * h.normal[j];
        }
        row[2 * n + i] = -sign;
        row[art0 + i] = 1;
        row[t.ncols] = sign * h.offset;
        t.rows.push_back(std::move(row));
        t.basis.push_back(art0 + i);
    }
    // phase I: maximize -sum(artificials)
    QVec cost1(t.ncols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) cost1[art0 + i] = -1;
    QVec obj = objective_row(t, cost1);
    std::vector<bool> allowed(t.ncols, true);
    t.run(obj, allowed);
    if (obj[t.ncols] != 0) {
        res.status = LpResult::Status::Infeasible;
        return res;
    }
    // drive artificials out of the basis
    for (std::size_t i = 0; i < t.rows.size();) {
        if (t.basis[i] < art0) {
            ++i;
            continue;
        }
        std::size_t c = t.ncols;
        for (std::size_t j = 0; j < art0; ++j)
            if (t.rows[i][j] != 0) {
                c = j;
                break;
            }
        if (c == t.ncols) {
            t.rows.erase(t.rows.begin() + static_cast<long>(i));
            t.basis.erase(t.basis.begin() + static_cast<long>(i));
            continue;
        }
        QVec dummy(t.ncols + 1, Rat(0));
        t.pivot(i, c, dummy);
        ++i;
    }
    for (std::size_t j = art0; j < t.ncols; ++j) allowed[j] = false;
    QVec cost2(t.ncols, Rat(0));
    for (std::size_t j = 0; j < n; ++j) {
        cost2[j] = c[j];
        cost2[n + j] = -c[j];
    }
    obj = objective_row(t, cost2);
    if (!t.run(obj, allowed)) {
        res.status = LpResult::Status::Unbounded;
        return res;
    }
    QVec vals(t.ncols, Rat(0));
    for (std::size_t i = 0; i < t.rows.size(); ++i) vals[t.basis[i]] = t.rows[i][t.ncols];
    res.status = LpResult::Status::Optimal;
    res.x = zero_q(n);
    for (std::size_t j = 0; j < n; ++j) res.x[j] = vals[j] - vals[n + j];
    res.value = dot(c, res.x);
    return res;
}

namespace {

// max t subject to closed rows, and rows flagged in `slacked` shifted by t, plus t <= 1.
LpResult max_slack(const RationalPolyhedron& P, const std::vector<bool>& slacked) {
    RationalPolyhedron Q(P.dim + 1);
    for (std::size_t i = 0; i < P.ineqs.size(); ++i) {
        QVec nrm = P.ineqs[i].normal;
        nrm.push_back(slacked[i] ? Rat(-1) : Rat(0));
        Q.add(nrm, P.ineqs[i].offset);
    }
    QVec cap = zero_q(P.dim + 1);
    cap[P.dim] = -1;
    Q.add(cap, Rat(-1));
    QVec obj = zero_q(P.dim + 1);
    obj[P.dim] = 1;
    return maximize(Q, obj);
}

}  // namespace

Feasibility feasible(const RationalPolyhedron& P) {
    Feasibility f;
    if (P.ineqs.empty()) {
        f.feasible = true;
        f.witness = zero_q(P.dim);
        return f;
    }
    bool any_strict = std::any_of(P.ineqs.begin(), P.ineqs.end(), [](const Inequality& h) { return h.strict; });
    std::vector<bool> all(P.ineqs.size(), true);
    LpResult r = max_slack(P, all);
    if (r.status == LpResult::Status::Optimal) {
        QVec x(r.x.begin(), r.x.begin() + static_cast<long>(P.dim));
        if (r.value > 0 || (!any_strict && r.value == 0)) {
            f.feasible = true;
            f.witness = x;
            return f;
        }
        if (r.value < 0) return f;
    }
    if (!any_strict) return f;
    std::vector<bool> strict_only(P.ineqs.size());
    for (std::size_t i = 0; i < P.ineqs.size(); ++i) strict_only[i] = P.ineqs[i].strict;
    r = max_slack(P, strict_only);
    if (r.status == LpResult::Status::Optimal && r.value > 0) {
        f.feasible = true;
        f.witness.assign(r.x.begin(), r.x.begin() + static_cast<long>(P.dim));
    }
    return f;
}

std::optional<Box> bounding_box(const RationalPolyhedron& P) {
    Box b;
    b.lo.resize(P.dim);
    b.hi.resize(P.dim);
    for (std::size_t j = 0; j < P.dim; ++j) {
        QVec e = zero_q(P.dim);
        e[j] = 1;
        LpResult up = maximize(P, e);
        if (up.status == LpResult::Status::Infeasible) {
            Box empty;
            empty.lo = ZVec(P.dim, Int(1));
            empty.hi = ZVec(P.dim, Int(0));
            return empty;
        }
        if (up.status == LpResult::Status::Unbounded) return std::nullopt;
        e[j] = -1;
        LpResult down = maximize(P, e);
        if (down.status == LpResult::Status::Unbounded) return std::nullopt;
        b.hi[j] = floor_rat(up.value);
        b.lo[j] = ceil_rat(-down.value);
    }
    return b;
}

std::vector<ZVec> box_points(const Box& box) {
    std::vector<ZVec> out;
    const std::size_t n = box.lo.size();
    for (std::size_t j = 0; j < n; ++j)
        if (box.lo[j] > box.hi[j]) return out;
    ZVec x = box.lo;
    for (;;) {
        out.push_back(x);
        std::size_t j = n;
        while (j > 0) {
            --j;
            if (x[j] < box.hi[j]) {
                ++x[j];
                for (std::size_t k = j + 1; k < n; ++k) x[k] = box.lo[k];
                break;
            }
            if (j == 0) return out;
        }
        if (n == 0) return out;
    }
}

std::vector<ZVec> lattice_points(const RationalPolyhedron& P, const std::optional<Box>& box) {
    std::optional<Box> b = box;
    if (!b) {
        b = bounding_box(P);
        if (!b) fail(ErrorKind::Precondition, "lattice_points: unbounded polyhedron requires an explicit box");
    }
    std::vector<ZVec> out;
    for (auto& x : box_points(*b))
        if (P.contains(x)) out.push_back(std::move(x));
    return out;
}

namespace {

void for_each_subset(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
        if (depth == k) {
            f(idx);
            return;
        }
        for (std::size_t i = start; i + (k - depth) <= n; ++i) {
            idx[depth] = i;
            rec(i + 1, depth + 1);
        }
    };
    rec(0, 0);
}

}  // namespace

VRep vrep(const RationalPolyhedron& P) {
    VRep v;
    const std::size_t k = P.dim;
    QMat normals;
    for (const auto& h : P.ineqs) normals.push_back(h.normal);
    if (k > 0 && rank(normals) < k) {
        v.pointed = false;
        return v;
    }
    RationalPolyhedron C = P.closure();
    // positively parallel inequalities: only the tightest can carry a vertex
    std::map<QVec, Rat> tight;
    for (const auto& h : P.ineqs) {
        if (is_zero(h.normal)) continue;
        Rat s = 0;
        for (const auto& x : h.normal)
            if (x != 0) {
                s = abs(x);
                break;
            }
        QVec n = scale(h.normal, 1 / s);
        Rat off = h.offset / s;
        auto it = tight.find(n);
        if (it == tight.end() || it->second < off) tight[n] = off;
    }
    std::vector<Inequality> H;
    for (const auto& [n, off] : tight) H.push_back({n, off, false});
    std::set<QVec> verts;
    for_each_subset(H.size(), k, [&](const std::vector<std::size_t>& s) {
        QMat A;
        QVec b;
        for (auto i : s) {
            A.push_back(H[i].normal);
            b.push_back(H[i].offset);
        }
        if (rank(A) < k) return;
        auto x = solve(A, b);
        if (x && C.contains(*x)) verts.insert(*x);
    });
    if (k == 0 && C.contains(QVec{})) verts.insert(QVec{});
    v.vertices.assign(verts.begin(), verts.end());
    if (v.vertices.empty()) return v;
    std::set<ZVec> rays;
    for_each_subset(H.size(), k == 0 ? 0 : k - 1, [&](const std::vector<std::size_t>& s) {
        QMat A;
        for (auto i : s) A.push_back(H[i].normal);
        auto ker = kernel(A, k);
        if (ker.size() != 1) return;
        for (int sgn : {1, -1}) {
            ZVec r = primitive(scale(ker[0], Rat(sgn)));
            bool ok = true;
            for (const auto& h : P.ineqs)
                if (dot(r, h.normal) < 0) {
                    ok = false;
                    break;
                }
            if (ok) rays.insert(r);
        }
    });
    v.rays.assign(rays.begin(), rays.end());
    return v;
}

Box reduction_box(const VRep& v) {
    Box b;
    const std::size_t k = v.vertices.empty() ? 0 : v.vertices[0].size();
    b.lo.assign(k, Int(0));
    b.hi.assign(k, Int(0));
    for (std::size_t j = 0; j < k; ++j) {
        Rat lo = v.vertices[0][j], hi = v.vertices[0][j];
        for (const auto& x : v.vertices) {
            lo = std::min(lo, x[j]);
            hi = std::max(hi, x[j]);
        }
        for (const auto& r : v.rays) {
            if (r[j] < 0) lo += Rat(r[j]);
            if (r[j] > 0) hi += Rat(r[j]);
        }
        b.lo[j] = ceil_rat(lo);
        b.hi[j] = floor_rat(hi);
    }
    return b;
}

namespace {

bool in_recession(const RationalPolyhedron& P, const ZVec& r) {
    for (const auto& h : P.ineqs)
        if (dot(r, h.normal) < 0) return false;
    return true;
}

void widen(Box& acc, const Box& b, bool& init) {
    if (!init) {
        acc = b;
        init = true;
        return;
    }
    for (std::size_t j = 0; j < acc.lo.size(); ++j) {
        acc.lo[j] = std::min(acc.lo[j], b.lo[j]);
        acc.hi[j] = std::max(acc.hi[j], b.hi[j]);
    }
}

}  // namespace

LatticeComparison compare_lattice_points(const RationalPolyhedron& P1, const RationalPolyhedron& P2) {
    LatticeComparison cmp;
    VRep v1 = vrep(P1), v2 = vrep(P2);
    if (!v1.pointed || !v2.pointed) fail(ErrorKind::Precondition, "compare_lattice_points: non-pointed polyhedron");
    cmp.recession_equal = true;
    for (const auto& r : v1.rays)
        if (!in_recession(P2, r)) cmp.recession_equal = false;
    for (const auto& r : v2.rays)
        if (!in_recession(P1, r)) cmp.recession_equal = false;
    bool init = false;
    if (!v1.empty()) widen(cmp.box, reduction_box(v1), init);
    if (!v2.empty()) widen(cmp.box, reduction_box(v2), init);
    if (init) {
        for (const auto& x : box_points(cmp.box)) {
            bool a = P1.contains(x), b = P2.contains(x);
            if (a && !b) cmp.only_first.push_back(x);
            if (b && !a) cmp.only_second.push_back(x);
        }
    }
    cmp.first_subset = cmp.only_first.empty();
    cmp.second_subset = cmp.only_second.empty();
    // With unequal recession cones the finite box cannot certify equality.
    cmp.equal = cmp.recession_equal && cmp.first_subset && cmp.second_subset;
    if (!cmp.recession_equal) {
        cmp.first_subset = cmp.first_subset && std::all_of(v1.rays.begin(), v1.rays.end(), [&](const ZVec& r) { return in_recession(P2, r); });
        cmp.second_subset = cmp.second_subset && std::all_of(v2.rays.begin(), v2.rays.end(), [&](const ZVec& r) { return in_recession(P1, r); });
    }
    return cmp;
}

namespace {

// Unimodular U whose first k columns span the lineality lattice of P; k returned.
std::size_t split_lineality(const RationalPolyhedron& P, IntMatrix& U) {
    std::vector<ZVec> rows;
    for (const auto& h : P.ineqs) rows.push_back(primitive(h.normal));
    auto K = integer_kernel(IntMatrix::from_rows(rows, P.dim));
    IntMatrix W(P.dim, K.size());
    for (std::size_t j = 0; j < K.size(); ++j)
        for (std::size_t i = 0; i < P.dim; ++i) W(i, j) = K[j][i];
    U = K.empty() ? IntMatrix::identity(P.dim) : smith_normal_form(W).U;
    return K.size();
}

RationalPolyhedron pointed_part(const RationalPolyhedron& P, const IntMatrix& U, std::size_t k) {
    RationalPolyhedron R(P.dim - k);
    for (const auto& h : P.ineqs) {
        QVec nrm(P.dim - k, Rat(0));
        for (std::size_t j = k; j < P.dim; ++j)
            for (std::size_t i = 0; i < P.dim; ++i) nrm[j - k] += h.normal[i] * Rat(U(i, j));
        R.add(nrm, h.offset, h.strict);
    }
    return R;
}

}  // namespace

std::optional<ZVec> find_lattice_point(const RationalPolyhedron& P) {
    VRep v = vrep(P);
    if (!v.pointed) {
        IntMatrix U;
        std::size_t k = split_lineality(P, U);
        auto y = find_lattice_point(pointed_part(P, U, k));
        if (!y) return std::nullopt;
        ZVec full(P.dim, Int(0));
        for (std::size_t j = k; j < P.dim; ++j) full[j] = (*y)[j - k];
        return U.apply(full);
    }
    if (v.empty()) return std::nullopt;
    for (auto& x : box_points(reduction_box(v)))
        if (P.contains(x)) return x;
    return std::nullopt;
}

std::optional<Int> count_lattice_points(const RationalPolyhedron& P, std::vector<ZVec>* points) {
    VRep v = vrep(P);
    if (!v.pointed) {
        if (!find_lattice_point(P)) return Int(0);
        return std::nullopt;
    }
    if (v.empty()) return Int(0);
    Box b = reduction_box(v);
    if (!v.bounded()) {
        for (const auto& x : box_points(b))
            if (P.contains(x)) return std::nullopt;
        return Int(0);
    }
    Int n = 0;
    for (auto& x : box_points(b))
        if (P.contains(x)) {
            ++n;
            if (points) points->push_back(std::move(x));
        }
    return n;
}

std::size_t rank_mod(std::vector<std::vector<Int>> M, const Int& p) {
    std::size_t r = 0;
    const std::size_t rows = M.size(), cols = rows ? M[0].size() : 0;
    for (auto& row : M)
        for (auto& x : row) {
            x %= p;
            if (x < 0) x += p;
        }
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && M[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(M[piv], M[r]);
        // inverse by Fermat
        Int inv = boost::multiprecision::powm(M[r][c], p - 2, p);
        for (auto& x : M[r]) x = (x * inv) % p;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || M[i][c] == 0) continue;
            Int f = M[i][c];
            for (std::size_t k = 0; k < cols; ++k) {
                M[i][k] = (M[i][k] - f * M[r][k]) % p;
                if (M[i][k] < 0) M[i][k] += p;
            }
        }
        ++r;
    }
    return r;
}


}  // namespace coxskel
