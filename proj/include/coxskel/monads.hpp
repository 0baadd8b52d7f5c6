#pragma once

#include <map>
#include <string>
#include <vector>

#include "coxskel/gkz.hpp"

namespace coxskel {

/** Polynomial in the Cox variables: exponent vector -> nonzero coefficient. */
using Poly = std::map<ZVec, Int>;

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, const Int& c);
Poly monomial(const ZVec& exponent, const Int& coeff = 1);
/** Sets the listed variables to 1. */
Poly poly_specialize(const Poly& a, const std::vector<std::size_t>& vars);
/** Human-readable form, e.g. "x1*x3 - x2^2*x4". */
std::string poly_str(const Poly& a);
/** Parses sums of monomials in x0, x1, ... with integer coefficients. */
Poly parse_poly(const std::string& s, std::size_t nvars);

struct Summand {
    ZVec cls;  // twist: the summand is S(cls)^mult
    std::size_t mult = 1;
};

/**
 * Free complex with terms in cohomological degrees lowest, lowest + 1, ...
 * maps[k] : terms[k] -> terms[k+1]; rows index the expanded target, columns the expanded source.
 */
struct ThetaComplex {
    std::size_t nvars = 0;
    int lowest = 0;
    std::vector<std::vector<Summand>> terms;
    std::vector<std::vector<std::vector<Poly>>> maps;

    std::size_t rank(std::size_t k) const;
    /** Class of the expanded index within terms[k]. */
    const ZVec& cls(std::size_t k, std::size_t index) const;
    int degree(std::size_t k) const { return lowest + static_cast<int>(k); }
};

struct ComplexVerdict {
    bool valid = true;
    std::vector<std::string> violations;
};

/** Entry degrees equal target minus source twist, and consecutive maps compose to zero. */
ComplexVerdict validate_complex(const ThetaComplex& c, const ClassGroup& cg);

struct RestrictedSummand {
    std::size_t source_index = 0;  // index of the summand in the original term
    ZVec cls;                      // original twist
    ZVec restricted;               // class of d-bar in Cl(X_Gamma); the summand is O(-d-bar); empty when X_Gamma is a point
    std::size_t mult = 1;
};

struct RestrictedComplex {
    std::size_t face = 0;
    int lowest = 0;
    std::vector<std::vector<RestrictedSummand>> terms;
    std::vector<std::vector<std::vector<Poly>>> maps;  // entries with contracted variables set to 1
    std::vector<std::string> dropped;
    bool d2_zero = true;
};

/** Keeps the summands whose witness theta lies in L^perp + M and deletes the rest. */
RestrictedComplex restrict_to_face(const ThetaComplex& c, const ToricData& td, const SecondaryFan& g, std::size_t face);

struct Strand {
    int lowest = 0;
    std::vector<std::size_t> dims;
    std::vector<std::size_t> ranks;       // rank of the map leaving each term
    std::vector<std::size_t> cohomology;  // per term
};

/** The degree-zero part over k, with exact ranks. Precondition error when some S_cls is infinite. */
Strand degree_zero_strand(const ThetaComplex& c, const ToricData& td, unsigned long characteristic = 0);

struct VanishingReport {
    bool pass = true;
    std::vector<int> offending;          // positive degrees carrying terms
    std::vector<std::size_t> faces;      // faces certified
    std::vector<std::size_t> surviving;  // summands surviving per certified face
};

/** Nonpositive terms certify R^{>0} pi_* = 0 on every face meeting the interior of the effective cone. */
VanishingReport vanishing_report(const ThetaComplex& c, const ToricData& td, const SecondaryFan& g);

/** Witness theta for a class of Theta: the enumeration witness when present. Precondition error outside Theta. */
QVec witness_of(const ToricData& td, const ZVec& cls);

}  // namespace coxskel
