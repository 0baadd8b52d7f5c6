#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxskel/cohomology.hpp"
#include "coxskel/theta.hpp"

namespace coxskel {

/** Support-function agreement for an element whose degree sits in several chambers. */
struct AgreementCheck {
    std::size_t element = 0;
    std::vector<std::size_t> chambers;
    std::size_t rays_checked = 0;
    bool ok = true;
};

struct ThetaCox {
    std::vector<ThetaElement> elements;  // chamber field set
    std::vector<CellRef> cells;          // cell holding the image of d, per element
    std::vector<AgreementCheck> checks;
};

/** Assigns every element to the lowest-id chamber containing d and checks agreement on shared cells. */
ThetaCox build_theta_cox(const ToricData& td, const SecondaryFan& g, std::vector<ThetaElement> theta);

struct EndAlgebra {
    std::vector<ThetaElement> order;
    std::vector<std::vector<Dim>> dims;                   // dims[i][j] = dim Hom(e_i -> e_j) = dim S_{d_i - d_j}
    std::vector<std::vector<std::vector<ZVec>>> basis;    // monomials, empty when infinite
    bool finite = true;

    /** Index of x^a * x^b in basis[i][k] for a in basis[i][j], b in basis[j][k]. */
    std::optional<std::size_t> compose(std::size_t i, std::size_t j, std::size_t k, std::size_t a, std::size_t b) const;
};

EndAlgebra endomorphism_algebra(const ToricData& td, const std::vector<ThetaElement>& ordered);

struct ExceptionalVerdict {
    bool pass = true;
    bool complete = true;  // false: only the tilting (Ext concentration) part applies
    std::size_t pairs = 0;
    std::vector<std::string> violations;
};

/** End = k, triangularity and H^{>0} = 0 with H^0 matching the algebra, on the chamber stack of each source. */
ExceptionalVerdict check_full_strong_exceptional(const ToricData& td, const SecondaryFan& g, const EndAlgebra& alg,
                                                 unsigned long characteristic = 0);

struct TransformOptions {
    std::size_t nef_battery = 2;  // nef twists: nonnegative combinations of extreme rays of total weight <= this
    unsigned long characteristic = 0;
};

struct ChartCheck {
    Cone cone;  // maximal cone of the target fan
    bool recession_equal = false;
    bool equal = false;
    bool deficit = false;  // target chart semigroup has points the pushforward misses
    bool excess = false;
    Box box;
};

struct StarCheck {
    ZVec twist;  // divisor A on the target
    std::size_t weights = 0;
    std::size_t nonempty = 0;
    bool ok = true;
    std::string detail;
};

struct NefProbe {
    ZVec twist;
    std::vector<Dim> refinement;  // H^p on the common refinement
    std::vector<Dim> target;      // H^p(X_j, O(A + c))
    std::optional<Dim> predicted; // #(P_A cap (M - theta)) when theta is known
    bool ok = true;
};

struct TransformReport {
    std::size_t source = 0, target = 0;
    ZVec cls;
    std::optional<QVec> theta;
    ZVec lambda_mult;
    std::vector<ChartCheck> charts;
    bool r0_ok = true;
    bool r0_deficit = false;
    bool support_order_ok = true;
    std::vector<StarCheck> star;
    bool star_ok = true;
    std::vector<NefProbe> battery;
    bool battery_ok = true;
    bool higher_nonzero = false;  // some H^{>0} probe on the refinement is nonzero
    bool pass = true;
};

/** Diagnostic transform of O(cls) from chamber i to chamber j: chart semigroups and nef-twist cohomology probes. */
TransformReport transform_line_bundle(const ToricData& td, const SecondaryFan& g, std::size_t i, std::size_t j, const ZVec& cls,
                                      const TransformOptions& opt = {});

/** Transform check for -d in Theta with d in chamber i: charts, support-function order, star shapes, nef battery. */
TransformReport verify_theta_transform(const ToricData& td, const SecondaryFan& g, std::size_t i, std::size_t j,
                                       const ThetaElement& e, const TransformOptions& opt = {});

/** Divisors (on all variables) of the nonnegative combinations of a chamber's extreme rays with total weight <= n. */
std::vector<ZVec> nef_battery(const ToricData& td, const Chamber& c, std::size_t n);

/** Whether the real image of cls lies in the closed chamber. */
bool in_chamber(const SecondaryFan& g, std::size_t chamber, const ZVec& cls);

}  // namespace coxskel
