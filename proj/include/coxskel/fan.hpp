#pragma once

#include <string>
#include <vector>

#include "coxskel/exactlin.hpp"

namespace coxskel {

using Cone = std::vector<std::size_t>;  // sorted ray indices

struct Fan {
    std::size_t dim = 0;
    std::vector<ZVec> rays;
    std::vector<Cone> cones;  // maximal cones

    bool simplicial() const;
    /** Pseudomanifold test on full-dimensional simplicial fans: every facet lies in exactly two maximal cones. */
    bool complete() const;
    /** Indices of rays that occur in some cone. */
    std::vector<std::size_t> used_rays() const;
    std::vector<ZVec> cone_rays(const Cone& c) const;
};

struct FanViolation {
    enum class Kind { BadIndex, DimensionMismatch, NonPrimitiveRay, DuplicateRay, NotStronglyConvex, BadIntersection };
    Kind kind;
    std::vector<std::size_t> where;  // ray index, cone index, or cone pair
    std::string detail;
};

std::string to_string(FanViolation::Kind k);

std::vector<FanViolation> fan_violations(std::size_t dim, const std::vector<ZVec>& rays, const std::vector<Cone>& cones);
/** Returns a validated fan with sorted cones; throws Precondition listing every violation otherwise. */
Fan validate_fan(std::size_t dim, const std::vector<ZVec>& rays, std::vector<Cone> cones);

struct StackyFan {
    Fan fan;
    ZVec mult;  // b_rho > 0
    ZVec beta(std::size_t rho) const;
};

StackyFan make_stacky(const Fan& fan, ZVec mult = {});

/** Coordinates of v in the simplicial cone c when v lies in it (all nonnegative), else nullopt. */
std::optional<QVec> cone_coordinates(const Fan& fan, const Cone& c, const QVec& v);

struct ConeRelation {
    Cone cone;              // minimal cone containing v
    Int a_v;                // a_v * v = sum a_tau u_tau
    std::vector<Int> a_tau; // aligned with cone
};

ConeRelation minimal_cone_relation(const Fan& fan, const ZVec& v);

struct Refinement {
    StackyFan lambda;
    /** Per input fan: a_{rho i} for each ray of lambda. */
    std::vector<std::vector<Int>> a;
    /** Per input fan: Phi_i with columns indexed by lambda rays, rows by the input fan's rays; beta_i Phi_i = beta_Lambda. */
    std::vector<IntMatrix> phi;
};

Refinement common_stacky_refinement(const std::vector<Fan>& fans);

/** Extreme rays (primitive, sorted) of a rational polyhedral cone given by inequalities <a,x> >= 0. */
std::vector<ZVec> cone_extreme_rays(const RationalPolyhedron& cone);
/** H-description of the cone spanned by the given generators (equalities for the span included). */
RationalPolyhedron cone_hrep(const std::vector<ZVec>& gens, std::size_t dim);

/** Generalized fan: lineality space, quotient fan on N/(N cap L), contracted rays. */
struct GeneralizedFan {
    std::vector<ZVec> lineality;         // lattice basis of L cap N
    std::vector<ZVec> quotient_map;      // rows w_j: N -> N/(N cap L) as <w_j, .>
    Fan quotient;                        // rays are images of surviving rays
    std::vector<std::size_t> contracted; // I_Gamma
    std::vector<std::size_t> surviving;  // rays of the ambient fan kept, aligned with quotient rays
    std::vector<Int> quotient_mult;      // u_rho maps to mult * primitive quotient ray
    std::vector<Cone> cones;             // quasi-fan cones in ambient ray indices
};

}  // namespace coxskel
