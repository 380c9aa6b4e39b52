#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "fusionforge/intmat.hpp"
#include "fusionforge/rational.hpp"

namespace fusionforge {

using RationalVec = std::vector<Rational>;

/// An even positive-definite integer Gram matrix together with its
/// discriminant group L'/L. Classes are indexed 0..det-1 in mixed-radix
/// order over the Smith elementary divisors; class 0 is the zero class.
/// Each class stores a minimal-norm representative (coefficient vector in
/// the lattice basis, lexicographic tie-break).
class LatticeData {
public:
    const IntMat& gram() const { return gram_; }
    int rank() const { return gram_.rows(); }
    std::int64_t group_order() const { return order_; }
    const std::vector<std::int64_t>& divisors() const { return divisors_; }

    std::int64_t class_count() const { return order_; }
    std::vector<std::int64_t> tuple_of(std::int64_t idx) const;
    std::int64_t index_of(const std::vector<std::int64_t>& tuple) const;

    std::int64_t add(std::int64_t a, std::int64_t b) const;
    std::int64_t neg(std::int64_t a) const;

    /// Class of a rational vector in L' (coefficients in the lattice basis).
    std::int64_t class_of(const RationalVec& x) const;

    const RationalVec& rep(std::int64_t idx) const { return reps_[std::size_t(idx)]; }

    /// <rep_a, rep_b> mod 1 (well-defined on classes).
    Rational bilinear(std::int64_t a, std::int64_t b) const;
    /// <rep,rep>/2 of the stored minimal representative (the conformal weight).
    Rational quad(std::int64_t a) const;

    Rational pairing(const RationalVec& x, const RationalVec& y) const;
    Rational norm2(const RationalVec& x) const { return pairing(x, x); }

    friend LatticeData build_lattice_data(const IntMat& gram);

private:
    IntMat gram_;
    IntMat u_;  // from SNF: u * gram * v = diag(divisors)
    IntMat v_;
    std::vector<std::int64_t> divisors_;
    std::int64_t order_ = 1;
    std::vector<RationalVec> reps_;
};

/// Validates symmetry, even diagonal and positive definiteness, then
/// assembles the discriminant data. Throws NotSymmetric / NotEven /
/// NotPositiveDefinite.
LatticeData build_lattice_data(const IntMat& gram);

/// All x = offset + m, m integral, with <x,x> <= max_norm2 (or < if
/// strict). Exact: bounds come from a rational LDL^T decomposition.
void enumerate_vectors(const IntMat& gram, const RationalVec& offset,
                       const Rational& max_norm2, bool strict,
                       const std::function<void(const RationalVec&, const Rational&)>& cb);

/// Subgroup of the discriminant group, closed under addition.
struct DiscSubgroup {
    std::vector<std::int64_t> elements;  // sorted class indices
    bool contains(std::int64_t c) const;
    std::int64_t order() const { return std::int64_t(elements.size()); }
};

DiscSubgroup subgroup_of_discriminant(const LatticeData& lat,
                                      const std::vector<std::int64_t>& generators);

/// Annihilator of a subgroup under the discriminant pairing.
DiscSubgroup annihilator(const LatticeData& lat, const DiscSubgroup& sub);

}  // namespace fusionforge
