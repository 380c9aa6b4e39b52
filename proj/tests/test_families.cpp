#include <doctest.h>

#include "fusionforge/errors.hpp"
#include "fusionforge/families.hpp"

using namespace fusionforge;

namespace {
IntMat gram1(std::int64_t a) {
    IntMat g(1, 1);
    g(0, 0) = a;
    return g;
}
}  // namespace

TEST_CASE("sl2 level 1") {
    ModularData md = affine_sl2(1);
    REQUIRE(md.size() == 2);
    CHECK(md.conf_weights[0] == Rational(0));
    CHECK(md.conf_weights[1] == Rational(1, 4));
    double r = 1.0 / std::sqrt(2.0);
    CHECK(md.s_matrix(0, 0).real() == doctest::Approx(r));
    CHECK(md.s_matrix(0, 1).real() == doctest::Approx(r));
    CHECK(md.s_matrix(1, 1).real() == doctest::Approx(-r));
}

TEST_CASE("sl2: top label is an order-2 simple current") {
    for (int k = 1; k <= 6; ++k) {
        ModularData md = affine_sl2(k);
        CHECK(is_invertible(md, k));
        CHECK(fusion_image(md, k, k) == 0);
    }
}

TEST_CASE("verlinde equals closed form for sl2 k <= 12") {
    for (int k = 1; k <= 12; ++k) {
        ModularData md = affine_sl2(k);
        CHECK(verlinde_fusion(md) == *md.fusion);
    }
}

TEST_CASE("vir(3,5) data") {
    ModularData md = virasoro_minimal(3, 5);
    REQUIRE(md.size() == 4);
    CHECK(md.central_charge == Rational(-3, 5));
    CHECK(md.conf_weights[3] == Rational(3, 4));   // W(1,4)
    CHECK(md.conf_weights[1] == Rational(-1, 20)); // W(1,2)
    // S entries against the closed (3,5) form
    for (int s = 1; s <= 4; ++s)
        for (int sig = 1; sig <= 4; ++sig) {
            double expect = ((s + sig) % 2 == 0 ? 1.0 : -1.0) * std::sqrt(2.0 / 5.0) *
                            std::sin(3.0 * M_PI * s * sig / 5.0);
            CHECK(md.s_matrix(s - 1, sig - 1).real() == doctest::Approx(expect).epsilon(1e-12));
        }
    // W(1,4) is an order-2 simple current
    CHECK(is_invertible(md, 3));
    CHECK(fusion_image(md, 3, 3) == 0);
}

TEST_CASE("vir(3,4) is Ising") {
    ModularData md = virasoro_minimal(3, 4);
    REQUIRE(md.size() == 3);
    CHECK(md.conf_weights[0] == Rational(0));
    CHECK(md.conf_weights[1] == Rational(1, 16));
    CHECK(md.conf_weights[2] == Rational(1, 2));
    CHECK(md.s_matrix(0, 0).real() == doctest::Approx(0.5));
    CHECK(md.s_matrix(0, 1).real() == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(md.s_matrix(1, 1).real() == doctest::Approx(0.0));
    CHECK(md.s_matrix(2, 2).real() == doctest::Approx(0.5));
}

TEST_CASE("coprimality enforced") {
    CHECK_THROWS_AS(virasoro_minimal(2, 4), Error);
    CHECK_THROWS_AS(virasoro_minimal(3, 1), Error);
}

TEST_CASE("lattice Gram[2] equals sl2 level 1") {
    LatticeFamily lf = lattice_family(gram1(2));
    ModularData sl = affine_sl2(1);
    REQUIRE(lf.md.size() == 2);
    for (int i = 0; i < 2; ++i) {
        CHECK(lf.md.conf_weights[i] == sl.conf_weights[i]);
        for (int j = 0; j < 2; ++j)
            CHECK(std::abs(lf.md.s_matrix(i, j) - sl.s_matrix(i, j)) < 1e-12);
    }
    CHECK(lf.md.central_charge == Rational(1));
}

TEST_CASE("lattice Gram[6] weights i^2/12") {
    LatticeFamily lf = lattice_family(gram1(6));
    REQUIRE(lf.md.size() == 6);
    std::vector<Rational> expect = {Rational(0),     Rational(1, 12), Rational(1, 3),
                                    Rational(3, 4),  Rational(1, 3),  Rational(1, 12)};
    for (int i = 0; i < 6; ++i) CHECK(lf.md.conf_weights[i] == expect[i]);
    CHECK(check_axioms(lf.md).all_pass());
}

TEST_CASE("lattice diag(2,2)") {
    IntMat g(2, 2);
    g(0, 0) = 2;
    g(1, 1) = 2;
    LatticeFamily lf = lattice_family(g);
    REQUIRE(lf.md.size() == 4);
    std::vector<Rational> hs = {lf.md.conf_weights[0], lf.md.conf_weights[1],
                                lf.md.conf_weights[2], lf.md.conf_weights[3]};
    std::sort(hs.begin(), hs.end());
    CHECK(hs[0] == Rational(0));
    CHECK(hs[1] == Rational(1, 4));
    CHECK(hs[2] == Rational(1, 4));
    CHECK(hs[3] == Rational(1, 2));
    CHECK(check_axioms(lf.md).all_pass());
}

TEST_CASE("lattice rejects bad gram matrices") {
    CHECK_THROWS_AS(lattice_family(gram1(3)), Error);   // odd
    CHECK_THROWS_AS(lattice_family(gram1(-2)), Error);  // not pos def
    IntMat g(2, 2);
    g(0, 0) = 2;
    g(0, 1) = 5;
    g(1, 0) = 5;
    g(1, 1) = 2;
    CHECK_THROWS_AS(lattice_family(g), Error);  // indefinite
}

TEST_CASE("lattice monodromy equals the pairing phase") {
    LatticeFamily lf = lattice_family(gram1(6));
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b)
            CHECK(monodromy_exponent(lf.md, a, b) == lf.lat.bilinear(a, b));
}

TEST_CASE("subgroup of discriminant") {
    LatticeFamily lf = lattice_family(gram1(8));
    DiscSubgroup sub = subgroup_of_discriminant(lf.lat, {4});
    CHECK(sub.elements == std::vector<std::int64_t>{0, 4});
    DiscSubgroup triv = subgroup_of_discriminant(lf.lat, {});
    CHECK(triv.elements == std::vector<std::int64_t>{0});

    IntMat g(2, 2);
    g(0, 0) = 2;
    g(1, 1) = 2;
    LatticeFamily d22 = lattice_family(g);
    // class of (b1+b2)/2
    std::int64_t diag = d22.lat.class_of({Rational(1, 2), Rational(1, 2)});
    DiscSubgroup s2 = subgroup_of_discriminant(d22.lat, {diag});
    CHECK(s2.order() == 2);
    DiscSubgroup ann = annihilator(d22.lat, s2);
    CHECK(ann.order() == 2);  // index 2 in the 4-element group
}

TEST_CASE("smith reconstruction on the lattice data") {
    for (auto det : {2, 4, 6, 8, 10}) {
        LatticeFamily lf = lattice_family(gram1(det));
        CHECK(lf.lat.group_order() == det);
    }
}

TEST_CASE("descriptor parsing") {
    CHECK(parse_family("sl2:k=2").size() == 3);
    CHECK(parse_family("vir:u=3,v=5").size() == 4);
    CHECK(parse_family("lattice:gram=[[6]]").size() == 6);
    CHECK(parse_family("tensor:(lattice:gram=[[6]])x(vir:u=3,v=5)").size() == 24);
    CHECK(parse_family("trivial").size() == 1);
    CHECK_THROWS_AS(parse_family("nope:x=1"), Error);
}
