#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coxskel/gkz.hpp"

namespace coxskel {

/** An element -d of the Bondal-Thomsen collection with a witness theta, d = d(theta). */
struct ThetaElement {
    ZVec cls;      // class of -d (or omega + d for the star variant)
    ZVec d;        // class of d
    ZVec divisor;  // ceil(<theta, beta_rho>)
    QVec witness;  // theta in [0,1)^dim
    bool star = false;
    std::optional<std::size_t> chamber;  // set by the Cox-category layer
    std::size_t order = 0;
};

enum class ThetaVariant { Standard, Star };

/** Cells {c - 1 < <theta, beta> <= c} of the fundamental domain, one class per distinct d(theta). Sorted by class. */
std::vector<ThetaElement> enumerate_theta(const ToricData& td, ThetaVariant variant = ThetaVariant::Standard);

struct Membership {
    bool member = false;
    QVec witness;
};

/** cls in Theta iff {theta : a - 1 < <theta, beta> <= a} is nonempty for a lift a of -cls. */
Membership theta_membership(const ToricData& td, const ZVec& cls);

/** Classes -d(theta) over the grid (1/ell) M / M. */
std::set<ZVec> frobenius_oracle(const ToricData& td, const Int& ell);

/** lcm of witness denominators: the grid size at which the Frobenius oracle must reproduce Theta. */
Int witness_denominator_lcm(const std::vector<ThetaElement>& theta);

/** Zonotope in Cl_R: sum a_i g_i with a_i in (-1,0], [-1,0] or (-1,0) per generator. */
struct Zonotope {
    enum class Side { HalfOpen, Closed, Open };
    std::vector<QVec> gens;
    std::vector<Side> sides;
    std::size_t dim = 0;

    bool contains(const QVec& x) const;
    /** Lattice points (free coordinates), lexicographic. */
    std::vector<ZVec> lattice_points() const;
    Box box() const;
};

/** The half-open zonotope Z, image of (-1,0]^n. */
Zonotope bt_zonotope(const ToricData& td);
/** Minkowski sum of two zonotopes in the same space. */
Zonotope minkowski(const Zonotope& a, const Zonotope& b);

/**
 * Total order refining "e_b before e_a whenever d_a - d_b is effective", so that for i > j the class
 * d_j - d_i is never effective. Ties: graded lexicographic descending on the class, or a seeded choice.
 */
std::vector<ThetaElement> order_theta(const ToricData& td, std::vector<ThetaElement> theta,
                                      std::optional<std::uint64_t> seed = std::nullopt);

struct PrimitiveCollection {
    std::vector<std::size_t> rays;  // P
    ZVec circuit;                   // b_rho for every ray of the fan, sum b_rho u_rho = 0, coprime
    /** deg_Gamma of a class: sum b_rho a_rho for any lift a. */
    Int degree(const ClassGroup& cg, const ZVec& cls) const;
};

std::vector<PrimitiveCollection> primitive_collections(const Fan& fan);

struct KoszulTerm {
    std::size_t hdeg = 0;  // |I|
    ZVec cls;              // -d - e_I
    std::size_t mult = 0;
    bool in_theta = false;
    Int deg_gamma;         // deg_Gamma(d + e_I)
};

struct KoszulCertificate {
    ZVec cls;  // -d
    std::vector<KoszulTerm> terms;
    bool all_in_theta = true;
    bool degree_increases = true;
};

struct SharpenReport {
    bool noop = false;
    std::string reason;
    std::size_t chamber = 0;  // chamber of X
    std::size_t wall_face = 0;
    PrimitiveCollection collection;
    Zonotope zplus, zminus;
    std::vector<ZVec> theta_circ;
    std::vector<ZVec> remaining;
    std::vector<KoszulCertificate> koszul;
    std::size_t minkowski_checked = 0;
    bool minkowski_ok = true;
};

/** Chamber whose fan is the fan of td (fan mode only). */
std::size_t chamber_of_fan(const ToricData& td, const SecondaryFan& g);
/** Interior walls (face ids) of the chamber of td. */
std::vector<std::size_t> nef_walls(const ToricData& td, const SecondaryFan& g);
/** Reduction Theta -> Theta minus Theta_Gamma^circ for one interior wall of the nef cone. */
SharpenReport sharpened_reduction(const ToricData& td, const SecondaryFan& g, std::size_t wall_face);
/** Runs the reduction on the first interior wall, or reports a no-op when there is none. */
SharpenReport sharpened_reduction(const ToricData& td, const SecondaryFan& g);

}  // namespace coxskel
