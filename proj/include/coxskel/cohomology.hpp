#pragma once

#include <map>
#include <string>
#include <vector>

#include "coxskel/divisor.hpp"

namespace coxskel {

/** A dimension that may be infinite (non-complete varieties). */
struct Dim {
    bool infinite = false;
    Int value = 0;
    static Dim of(const std::optional<Int>& n) { return n ? Dim{false, *n} : Dim{true, 0}; }
    bool is_zero() const { return !infinite && value == 0; }
    bool operator==(const Dim& o) const { return infinite == o.infinite && value == o.value; }
    Dim& operator+=(const Dim& o);
    std::string str() const;
};

/**
 * Reduced homology ranks of the simplicial complex generated by `faces` (vertex ids arbitrary).
 * Result index k+1 holds the rank of reduced H_k, for k = -1 .. max face dimension.
 * Characteristic 0 means the rationals; otherwise a prime.
 */
std::vector<std::size_t> reduced_homology(const std::vector<Cone>& faces, unsigned long characteristic = 0);

struct Contribution {
    std::vector<std::size_t> negative;  // rays with <m, beta> < -a
    std::size_t degree = 0;             // cohomological degree p
    std::size_t betti = 0;              // rank of reduced H_{p-1} of the full subcomplex
    Dim weights;                        // number of lattice weights with this sign pattern
};

struct CohomologyTable {
    std::vector<Dim> h;  // p = 0..dim N
    std::vector<Contribution> contributions;
    bool outside_hypothesis = false;  // some multiplier does not divide its coefficient
    bool h0_crosscheck = true;
};

/**
 * Cohomology of O(D), D = sum a_rho D_rho, on the stack of a simplicial stacky fan.
 * Only rays that occur in cones take part; a covers every ray of the fan's list.
 */
CohomologyTable line_bundle_cohomology(const StackyFan& sf, const ZVec& a, unsigned long characteristic = 0);

/** Cohomology restricted to one weight m (for oracles and probes). */
std::vector<std::size_t> weight_cohomology(const StackyFan& sf, const ZVec& a, const ZVec& m, unsigned long characteristic = 0);

/** {m : <m, beta_rho> >= -a_rho - <shift, beta_rho>} over used rays; lattice points count sections of a twisted by shift. */
RationalPolyhedron shifted_section(const StackyFan& sf, const ZVec& a, const QVec& shift);

/** Coefficients ceil(<theta, beta_rho>) of the torus-invariant representative of d(theta). */
ZVec theta_divisor(const ToricData& td, const QVec& theta);

struct HomResult {
    Dim dim;
    std::vector<ZVec> basis;  // exponent vectors, lexicographically descending
    Dim polytope_count;       // #(P_d cap (M - theta'))
    Dim module_count;         // dim S_{d-d'}
    Dim q_count;              // #(Q_{d-d'} cap M)
};

/** Hom(O(-d) -> O(-d')) in the Cox category, computed three ways; mismatch is an invariant violation. */
HomResult hom_theta(const ToricData& td, const QVec& theta, const QVec& theta_prime);

struct HomZeroReport {
    bool pass = false;
    Dim h0;
    Dim predicted;  // #(P_A cap (M - theta))
    std::vector<Dim> higher;
    std::string detail;
};

/** Checks h^0(A - d) = #(P_A cap (M - theta)) and vanishing of higher cohomology. A must be nef. */
HomZeroReport verify_homzero(const ToricData& td, const StackyFan& sf, const ZVec& A, const QVec& theta);

}  // namespace coxskel
