#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace coxskel {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;
using ZVec = std::vector<Int>;
using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;

enum class ErrorKind { Schema = 2, Precondition = 3, Invariant = 4 };

class CoxError : public std::runtime_error {
public:
    CoxError(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& what);

// ---- scalar helpers ----
Int floor_rat(const Rat& q);
Int ceil_rat(const Rat& q);
Int gcd(const Int& a, const Int& b);
Int lcm(const Int& a, const Int& b);
Int content(const ZVec& v);
std::string to_string(const Int& v);
std::string to_string(const Rat& v);
/** "(a, b, c)" */
std::string to_string(const ZVec& v);
std::string to_string(const QVec& v);
Rat parse_rat(const std::string& s);

// ---- vector helpers ----
QVec to_q(const ZVec& v);
ZVec zero_z(std::size_t n);
QVec zero_q(std::size_t n);
Rat dot(const QVec& a, const QVec& b);
Rat dot(const ZVec& a, const QVec& b);
Int dot(const ZVec& a, const ZVec& b);
ZVec add(const ZVec& a, const ZVec& b);
ZVec sub(const ZVec& a, const ZVec& b);
ZVec neg(const ZVec& a);
ZVec scale(const ZVec& a, const Int& c);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Rat& c);
bool is_zero(const ZVec& v);
bool is_zero(const QVec& v);
/** Smallest positive integer multiple of v that is integral and primitive. */
ZVec primitive(const QVec& v);
ZVec primitive(const ZVec& v);
std::optional<ZVec> as_integral(const QVec& v);

class IntMatrix {
public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols);
    static IntMatrix identity(std::size_t n);
    static IntMatrix from_rows(const std::vector<ZVec>& rows, std::size_t cols = 0);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    Int& operator()(std::size_t i, std::size_t j);
    const Int& operator()(std::size_t i, std::size_t j) const;

    ZVec row(std::size_t i) const;
    ZVec col(std::size_t j) const;
    IntMatrix transpose() const;
    ZVec apply(const ZVec& x) const;
    IntMatrix operator*(const IntMatrix& other) const;
    bool operator==(const IntMatrix& other) const;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> a_;
};

Int determinant(const IntMatrix& A);

struct SnfResult {
    IntMatrix U, D, V;       // A = U * D * V
    IntMatrix Uinv, Vinv;    // Uinv * A * Vinv = D
    std::size_t rank = 0;
    std::vector<Int> diagonal;
    std::vector<Int> torsion;  // diagonal entries > 1
};

SnfResult smith_normal_form(const IntMatrix& A);

/** Row-style Hermite normal form: H = G * A with G unimodular, pivots positive, entries above pivots reduced. */
struct HnfResult {
    IntMatrix H, G;
    std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};
HnfResult hermite_normal_form(const IntMatrix& A);

/** Lattice basis of {x in Z^cols : A x = 0}. */
std::vector<ZVec> integer_kernel(const IntMatrix& A);
/** Integer solution of A x = b, if one exists. */
std::optional<ZVec> integer_solve(const IntMatrix& A, const ZVec& b);

// ---- rational linear algebra ----
std::size_t rank(QMat A);
/** Rank over Z/p for a prime p. */
std::size_t rank_mod(std::vector<std::vector<Int>> M, const Int& p);
std::optional<QVec> solve(const QMat& A, const QVec& b);
std::vector<QVec> kernel(const QMat& A, std::size_t cols);
QMat to_qmat(const std::vector<ZVec>& rows);

// ---- polyhedra ----
struct Inequality {
    QVec normal;
    Rat offset;
    bool strict = false;  // <normal, x> > offset instead of >=
};

struct RationalPolyhedron {
    std::size_t dim = 0;
    std::vector<Inequality> ineqs;

    RationalPolyhedron() = default;
    explicit RationalPolyhedron(std::size_t d) : dim(d) {}
    void add(const QVec& normal, const Rat& offset, bool strict = false);
    void add_equality(const QVec& normal, const Rat& value);
    bool contains(const QVec& x) const;
    bool contains(const ZVec& x) const;
    RationalPolyhedron closure() const;
};

struct LpResult {
    enum class Status { Optimal, Infeasible, Unbounded } status = Status::Infeasible;
    Rat value;
    QVec x;
};

/** Maximize <c, x> over the closure of P. */
LpResult maximize(const RationalPolyhedron& P, const QVec& c);

struct Feasibility {
    bool feasible = false;
    QVec witness;
};

/** Exact feasibility with strict inequalities, via maximal minimal slack. */
Feasibility feasible(const RationalPolyhedron& P);

struct Box {
    ZVec lo, hi;
};

/** Integer box containing the closure of P; nullopt when P is unbounded. Empty P gives lo > hi. */
std::optional<Box> bounding_box(const RationalPolyhedron& P);
std::vector<ZVec> box_points(const Box& box);
/** Integer points of P in lexicographic order. Throws Precondition when P is unbounded and no box is given. */
std::vector<ZVec> lattice_points(const RationalPolyhedron& P, const std::optional<Box>& box = std::nullopt);

/** Vertices and recession rays of a closed polyhedron by brute-force basis enumeration. */
struct VRep {
    bool pointed = true;
    std::vector<QVec> vertices;
    std::vector<ZVec> rays;
    bool empty() const { return vertices.empty(); }
    bool bounded() const { return rays.empty(); }
};
VRep vrep(const RationalPolyhedron& P);

/** Box covering conv(vertices) + sum of [0,1]*rays. */
Box reduction_box(const VRep& v);

struct LatticeComparison {
    bool equal = false;
    bool recession_equal = false;
    bool first_subset = false;   // lattice points of P1 are contained in those of P2
    bool second_subset = false;
    Box box;
    std::vector<ZVec> only_first;
    std::vector<ZVec> only_second;
};

/** Compares the lattice point sets of two closed pointed polyhedra exactly. */
LatticeComparison compare_lattice_points(const RationalPolyhedron& P1, const RationalPolyhedron& P2);

/** Some integer point of P, or nullopt when P has none. Handles unbounded and non-pointed P. */
std::optional<ZVec> find_lattice_point(const RationalPolyhedron& P);

/** Exact lattice point count of a closed pointed polyhedron; nullopt means infinitely many. */
std::optional<Int> count_lattice_points(const RationalPolyhedron& P, std::vector<ZVec>* points = nullptr);

}  // namespace coxskel
