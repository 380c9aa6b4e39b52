#include <doctest.h>

#include "fusionforge/errors.hpp"
#include "fusionforge/families.hpp"
#include "fusionforge/modular_data.hpp"

using namespace fusionforge;

TEST_CASE("verlinde on sl2 level 2 matches the closed-form rule") {
    ModularData md = affine_sl2(2);
    FusionTensor f = verlinde_fusion(md);
    CHECK(f.at(1, 1, 0) == 1);
    CHECK(f.at(1, 1, 2) == 1);
    CHECK(f.at(1, 1, 1) == 0);
    // vacuum row
    for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) CHECK(f.at(0, j, k) == (j == k ? 1 : 0));
}

TEST_CASE("vir(3,5) fusion: W(1,2) x W(1,2) = W(1,1) + W(1,3)") {
    ModularData md = virasoro_minimal(3, 5);
    FusionTensor f = verlinde_fusion(md);
    CHECK(f.at(1, 1, 0) == 1);
    CHECK(f.at(1, 1, 2) == 1);
    CHECK(f.at(1, 1, 1) == 0);
    CHECK(f.at(1, 1, 3) == 0);
}

TEST_CASE("qdim") {
    ModularData vir = virasoro_minimal(3, 5);
    CHECK(qdim(vir, 0) == doctest::Approx(1.0));
    // W(1,4) has quantum dimension -1
    CHECK(qdim(vir, 3) == doctest::Approx(-1.0));
    ModularData sl2 = affine_sl2(5);
    CHECK(qdim(sl2, 5) == doctest::Approx(1.0));
}

TEST_CASE("perturbed S is flagged as non-integer fusion") {
    ModularData md = affine_sl2(2);
    md.s_matrix(1, 2) += 1e-3;
    CHECK_THROWS_AS(verlinde_fusion(md), Error);
}

TEST_CASE("monodromy charges") {
    ModularData md = affine_sl2(2);
    for (int x = 0; x < 3; ++x)
        CHECK(std::abs(monodromy_charge(md, 0, x) - Complex(1.0, 0.0)) < 1e-15);
    LatticeFamily lf = lattice_family([] {
        IntMat g(1, 1);
        g(0, 0) = 6;
        return g;
    }());
    // j = beta/2 (class 3), x = beta/6 (class 1): <b/2,b/6> = 1/2
    CHECK(monodromy_exponent(lf.md, 3, 1) == Rational(1, 2));
    CHECK(std::abs(monodromy_charge(lf.md, 3, 1) - Complex(-1.0, 0.0)) == 0.0);
}

TEST_CASE("monodromy of j and j^{-1} cancel") {
    LatticeFamily lf = lattice_family([] {
        IntMat g(1, 1);
        g(0, 0) = 8;
        return g;
    }());
    const ModularData& md = lf.md;
    for (int j = 0; j < md.size(); ++j)
        for (int x = 0; x < md.size(); ++x) {
            Complex a = monodromy_charge(md, j, x);
            Complex b = monodromy_charge(md, md.dual[j], x);
            CHECK(std::abs(a * b - Complex(1.0, 0.0)) < 1e-15);
        }
}

TEST_CASE("classify_simple_current four cases") {
    ModularData ising = virasoro_minimal(3, 4);
    CHECK(classify_simple_current(ising, 2) == GradedType::HalfZVosa);

    ModularData bp_base = tensor_product(
        lattice_family([] {
            IntMat g(1, 1);
            g(0, 0) = 6;
            return g;
        }()).md,
        virasoro_minimal(3, 5));
    // current (beta/2, W(1,4)): lattice class 3, vir label 3 -> index 3*4+3
    CHECK(classify_simple_current(bp_base, 3 * 4 + 3) == GradedType::HalfZVoa);

    ModularData ws_base = tensor_product(
        lattice_family([] {
            IntMat g(1, 1);
            g(0, 0) = 10;
            return g;
        }()).md,
        virasoro_minimal(3, 5));
    CHECK(classify_simple_current(ws_base, 5 * 4 + 3) == GradedType::ZVosa);
}

TEST_CASE("tensor with trivial is identity up to names") {
    ModularData md = affine_sl2(3);
    ModularData t = tensor_product(md, trivial_data());
    REQUIRE(t.size() == md.size());
    for (int i = 0; i < md.size(); ++i) {
        CHECK(t.conf_weights[i] == md.conf_weights[i]);
        for (int j = 0; j < md.size(); ++j)
            CHECK(std::abs(t.s_matrix(i, j) - md.s_matrix(i, j)) == 0.0);
    }
    CHECK(t.central_charge == md.central_charge);
}

TEST_CASE("tensor product of Gram[6] and vir(3,5)") {
    ModularData md = tensor_product(
        lattice_family([] {
            IntMat g(1, 1);
            g(0, 0) = 6;
            return g;
        }()).md,
        virasoro_minimal(3, 5));
    CHECK(md.size() == 24);
    CHECK(md.central_charge == Rational(2, 5));
    CHECK(check_axioms(md).all_pass());
}

TEST_CASE("check_axioms passes on the standard families") {
    CHECK(check_axioms(affine_sl2(4)).all_pass());
    CHECK(check_axioms(virasoro_minimal(2, 5)).all_pass());
    ModularData d22 = lattice_family([] {
        IntMat g(2, 2);
        g(0, 0) = 2;
        g(1, 1) = 2;
        return g;
    }()).md;
    CHECK(check_axioms(d22).all_pass());
    AxiomReport rep = check_axioms(affine_sl2(4));
    CHECK(rep.worst_residual() < 1e-12);
}

TEST_CASE("dimension homomorphism qdim_i qdim_j = sum N qdim_k") {
    for (const ModularData& md :
         {affine_sl2(3), virasoro_minimal(3, 5), virasoro_minimal(4, 5)}) {
        const FusionTensor& f = *md.fusion;
        for (int i = 0; i < md.size(); ++i)
            for (int j = 0; j < md.size(); ++j) {
                double lhs = qdim(md, i) * qdim(md, j);
                double rhs = 0.0;
                for (int k = 0; k < md.size(); ++k)
                    rhs += double(f.at(i, j, k)) * qdim(md, k);
                CHECK(std::abs(lhs - rhs) < 1e-9);
            }
    }
}
