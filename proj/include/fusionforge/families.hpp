#pragma once

#include <string>
#include <utility>

#include "fusionforge/lattice.hpp"
#include "fusionforge/modular_data.hpp"

namespace fusionforge {

/// Affine sl2 at positive integer level k: labels 0..k, closed-form S and
/// fusion, cross-validated against the Verlinde recomputation.
ModularData affine_sl2(int k);

/// Virasoro minimal model Vir(u,v), gcd(u,v)=1, u,v >= 2. Labels are the
/// lexicographically smaller representatives of (r,s) ~ (u-r,v-s) in
/// row-major order, so the vacuum (1,1) is label 0 and for u=3 the labels
/// read W(1,1)..W(1,v-1).
ModularData virasoro_minimal(int u, int v);

struct LatticeFamily {
    ModularData md;
    LatticeData lat;
};

/// Lattice VOA data from an even positive-definite Gram matrix: labels are
/// discriminant classes, S_{ab} = e^{2 pi i <a,b>}/sqrt|L'/L|, h = minimal
/// norm / 2, fusion = group law.
LatticeFamily lattice_family(const IntMat& gram);

/// sin(pi * q) with the rational phase reduced first.
double sin_pi(const Rational& q);

/// Parses family descriptors: "sl2:k=4", "vir:u=3,v=5",
/// "lattice:gram=[[2,0],[0,2]]", "tensor:(A)x(B)", "trivial".
ModularData parse_family(const std::string& descriptor);

/// Like parse_family but also returns lattice data when the descriptor is
/// a plain lattice (needed by coset setups).
IntMat parse_gram(const std::string& text);

}  // namespace fusionforge
