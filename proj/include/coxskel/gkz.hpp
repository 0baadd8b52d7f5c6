#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxskel/divisor.hpp"

namespace coxskel {

/** Maximal cone of the secondary fan together with its simplicial fan. */
struct Chamber {
    std::size_t id = 0;
    ZVec sample;                   // strictly interior, free coordinates of Cl
    std::vector<ZVec> extreme_rays;
    RationalPolyhedron hrep;       // closed cone in Cl_R
    Fan fan;                       // on the global ray list; contracted rays are absent from every cone
    StackyFan stacky;
    std::vector<std::vector<std::size_t>> irrelevant;  // complements of maximal cones
    std::size_t face = 0;          // index of this chamber among the faces
};

/** Any cone of the secondary fan, chambers included. */
struct Face {
    std::size_t id = 0;
    std::size_t dim = 0;
    std::vector<ZVec> extreme_rays;
    ZVec sample;                         // relative interior (sum of extreme rays)
    ZVec lift;                           // divisor coefficients of the sample class
    std::vector<std::size_t> chambers;   // chambers containing this face
    std::optional<std::size_t> chamber;  // set when the face is a chamber
    GeneralizedFan gfan;
    ClassGroup quotient_cg;              // class group of X_Gamma
};

struct Wall {
    std::size_t a = 0, b = 0;  // adjacent chambers
    std::size_t face = 0;
};

struct SecondaryFan {
    ClassGroup cg;
    std::vector<Chamber> chambers;
    std::vector<Face> faces;
    std::vector<Wall> walls;
    std::size_t hyperplanes = 0;  // size of the arrangement
    std::size_t cells = 0;        // arrangement cells inside the effective cone
};

/** Secondary fan from the degree configuration; chamber fans use the rays of td. */
SecondaryFan secondary_fan(const ToricData& td);

/** Simplicial fan of a generic class (free coordinates). Throws Precondition on walls. */
Fan fan_of_point(const ToricData& td, const QVec& d);

/** Generalized fan of the section polyhedron {m : <m, beta_rho> >= -a_rho}. */
GeneralizedFan face_data(const ToricData& td, const ZVec& a);

struct CellRef {
    bool is_chamber = false;
    std::size_t id = 0;  // chamber id or face id
    std::size_t face = 0;
};

/** Cell of the secondary fan whose relative interior holds the image of cls. Precondition error when not effective. */
CellRef chamber_of(const SecondaryFan& g, const ZVec& cls);

/** Faces whose relative interior meets the interior of the effective cone, by id. */
std::vector<std::size_t> interior_faces(const SecondaryFan& g);

/** theta in L^perp + M, decided by integrality of <theta, l> over a lattice basis of L cap N. */
bool restricts(const GeneralizedFan& gf, const QVec& theta);

/** Class in Cl(X_Gamma) of d(lambda) where lambda = theta - m lies in L^perp. Requires restricts(). */
ZVec restricted_class(const Face& f, const ToricData& td, const QVec& theta);

}  // namespace coxskel
