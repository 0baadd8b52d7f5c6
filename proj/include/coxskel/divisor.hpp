#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxskel/fan.hpp"

namespace coxskel {

/**
 * Cl = Z^r + torsion. A class is a vector of width r + t: free coordinates first,
 * then torsion coordinates reduced into [0, t_i).
 */
struct ClassGroup {
    std::size_t nvars = 0;
    std::size_t free_rank = 0;
    std::vector<Int> torsion;
    IntMatrix proj;  // (free_rank + torsion.size()) x nvars
    std::vector<std::string> notes;

    std::size_t width() const { return free_rank + torsion.size(); }
    ZVec reduce(ZVec c) const;
    ZVec class_of(const ZVec& a) const;
    ZVec degree(std::size_t rho) const;
    std::vector<ZVec> degrees() const;
    /** Free parts of the degrees as rational vectors (the image in Cl_R). */
    std::vector<QVec> real_degrees() const;
    ZVec add(const ZVec& a, const ZVec& b) const;
    ZVec sub(const ZVec& a, const ZVec& b) const;
    ZVec neg(const ZVec& a) const;
    ZVec omega() const;
    QVec real(const ZVec& c) const;
    /** Integer lift a with class_of(a) = c. */
    ZVec lift(const ZVec& c) const;
};

/** Class group of the cokernel of m -> (<m, beta_rho>)_rho. Optional basis: variables whose free degrees become e_1..e_r. */
ClassGroup class_group(const std::vector<ZVec>& betas, std::size_t dim, const std::vector<std::size_t>& basis = {});

/** Geometric input: rays (with multipliers) for every Cox variable and, in fan mode, the fan. */
struct ToricData {
    std::string name;
    std::size_t dim = 0;
    std::vector<ZVec> rays;
    ZVec mult;
    std::optional<Fan> fan;
    ClassGroup cg;

    std::size_t nvars() const { return rays.size(); }
    ZVec beta(std::size_t rho) const { return scale(rays[rho], mult[rho]); }
    std::vector<ZVec> betas() const;
    StackyFan stacky() const;
    StackyFan stacky(const Fan& f) const;
};

ToricData from_fan(const std::string& name, const StackyFan& sf, const std::vector<std::size_t>& class_basis = {});
/** Cox mode: degrees per variable (free part) and optional torsion parts; rays come from the Gale dual. */
ToricData from_degrees(const std::string& name, const std::vector<ZVec>& free_degrees, const std::vector<Int>& torsion = {},
                       const std::vector<ZVec>& torsion_degrees = {});

struct SupportFunction {
    std::vector<QVec> m;  // per maximal cone
    /** Value at v, using the first cone containing it. */
    Rat eval(const Fan& fan, const QVec& v) const;
};

SupportFunction support_function(const StackyFan& sf, const ZVec& a);
bool is_nef(const StackyFan& sf, const ZVec& a);

/** {m : <m, u_rho> >= -a_rho} over the given rays. */
RationalPolyhedron section_polyhedron(const std::vector<ZVec>& rays, const ZVec& a);
RationalPolyhedron section_polyhedron(const StackyFan& sf, const ZVec& a);
/** {m : <m, beta_rho> >= -a_rho}: lattice points m give the monomials x^(a + <m,beta>) of the class of a. */
RationalPolyhedron monomial_polyhedron(const ToricData& td, const ZVec& a);

struct Effectivity {
    bool effective = false;
    ZVec witness;  // exponent vector
};

Effectivity effective(const ToricData& td, const ZVec& cls);
/** dim S_cls; nullopt when infinite. */
std::optional<Int> graded_dimension(const ToricData& td, const ZVec& cls);
/** Exponent vectors of degree cls, lexicographically descending. Throws Precondition when infinite. */
std::vector<ZVec> monomial_basis(const ToricData& td, const ZVec& cls);

}  // namespace coxskel
