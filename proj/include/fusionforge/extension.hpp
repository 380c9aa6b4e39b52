#pragma once

#include <vector>

#include "fusionforge/lattice.hpp"
#include "fusionforge/modular_data.hpp"

namespace fusionforge {

/// A finite abelian group of simple currents J^g inside a base category.
/// Element 0 is the vacuum; the group law is the fusion product.
struct CurrentGroup {
    ModularData base;
    std::vector<int> elements;       // label of J^g per group element
    std::vector<int> generators;     // positions into elements
    std::vector<int> elem_of_label;  // inverse map, -1 for labels outside

    int order() const { return int(elements.size()); }
    int add(int g, int h) const;
};

/// Closes the generators under fusion and validates invertibility, trivial
/// mutual monodromy and the twist pattern theta_{J^g} in {+-1} with
/// theta_{J^g} = theta_{J^{g+2}}.
CurrentGroup build_current_group(const ModularData& md, const std::vector<int>& generators);

struct SectorInfo {
    bool local = true;
    std::vector<int> eps_per_generator;  // +-1 against each generator
};

/// Local iff the monodromy charge against every current is trivial.
SectorInfo classify_sector(const CurrentGroup& cg, int x);

enum class ExtCase {
    Ordinary,         // theta = +1, qdim = +1 (any group order)
    WrongStatSuper,   // Z-graded VOSA: theta = +1, qdim = -1
    WrongStatAlgebra, // 1/2Z-graded VOA: theta = -1, qdim = -1
    CorrectStatSuper, // 1/2Z-graded VOSA: theta = -1, qdim = +1
};

std::string to_string(ExtCase c);

struct ExtOrbit {
    std::vector<int> members;  // members[0] is the representative ("+" parity)
    bool local = true;
    bool fixed_point = false;
    int epsilon = 1;
    int n_factor = 1;          // 2 on fixed points
    Rational t_phase;          // h of the representative mod 1
    bool t_swaps_sign = false; // whether T sends ch^+ to ch^- for this orbit

    int rep() const { return members[0]; }
};

/// Signed (super)character basis element: (orbit, +1/-1). Fixed-point
/// orbits carry only the "+" element (their supercharacter vanishes).
struct SignedBasisElem {
    int orbit;
    int sign;
};

struct ExtensionResult {
    CurrentGroup group;
    ExtCase statistics = ExtCase::Ordinary;
    std::vector<ExtOrbit> orbits;
    std::vector<SignedBasisElem> basis;
    CMatrix stilde;      // block-sparse, zeros structural
    CMatrix stilde_inv;
    int vacuum_orbit = 0;

    int orbit_of_label(int label) const;
    int basis_index(int orbit, int sign) const;

    /// The unique possibly-nonzero signed coefficient for the orbit pair
    /// (p,q); zero when the block pattern has no slot (both twisted, one
    /// fixed). `inverse` selects the S-tilde^{-1} matrix.
    Complex stilde_entry(int p, int q, bool inverse = false) const;
};

/// Orbits, sectors, statistics case and the signed S-tilde data. The three
/// super cases require |G| = 2; groups of other orders are accepted only
/// in the Ordinary case.
ExtensionResult build_extension(const CurrentGroup& cg);

/// Super-Verlinde coefficient N^{sign} for orbit triples, evaluated through
/// the S-tilde route and cross-checked against the base-category route.
std::int64_t super_verlinde(const ExtensionResult& ext, int u, int w, int x, int sign);

struct SuperFusion {
    FusionTensor n_even;  // N^0 per orbit triple
    FusionTensor n_odd;   // N^1 per orbit triple
};

SuperFusion compute_super_fusion(const ExtensionResult& ext);

/// Asymptotic (super)dimension of an orbit: an S-matrix ratio against the
/// unique minimal-weight sector of the case-correct type.
double adim(const ExtensionResult& ext, int x, int sign);

/// Full modular data of a fixed-point-free extension with all twists +1 and
/// quantum dimensions +1: labels are orbits of local labels, S scales by |G|.
ModularData extend_ordinary(const CurrentGroup& cg);

/// Grading classification of an index-2 lattice extension by glue vector
/// gamma against the background charge rho: decided by the parities of
/// <gamma,gamma> and <rho,gamma>.
GradedType classify_screening_lattice(const IntMat& gram_n, const RationalVec& rho,
                                      const RationalVec& gamma);

}  // namespace fusionforge
