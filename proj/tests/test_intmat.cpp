#include <doctest.h>

#include "fusionforge/intmat.hpp"

using namespace fusionforge;

namespace {
IntMat from(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    IntMat m(int(rows.size()), int(rows.begin()->size()));
    int i = 0;
    for (auto& r : rows) {
        int j = 0;
        for (auto v : r) m(i, j++) = v;
        ++i;
    }
    return m;
}
}  // namespace

TEST_CASE("smith normal form reconstructs and divides") {
    auto check_snf = [](const IntMat& a) {
        SmithResult s = smith_normal_form(a);
        CHECK(s.u * a * s.v == s.d);
        std::int64_t du = s.u.det();
        std::int64_t dv = s.v.det();
        CHECK((du == 1 || du == -1));
        CHECK((dv == 1 || dv == -1));
        for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) {
            if (s.divisors[i] == 0) continue;
            CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
        }
    };
    check_snf(from({{6}}));
    check_snf(from({{2, 0}, {0, 2}}));
    check_snf(from({{2, 1}, {1, 2}}));
    check_snf(from({{4, 2}, {2, 6}}));
    check_snf(from({{0, 1}, {1, 0}}));
    check_snf(from({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}));
}

TEST_CASE("determinants") {
    CHECK(from({{2, 1}, {1, 2}}).det() == 3);
    CHECK(from({{2, -1, 0}, {-1, 2, -1}, {0, -1, 2}}).det() == 4);
    CHECK(from({{1, 2}, {2, 4}}).det() == 0);
}

TEST_CASE("unimodular inverse") {
    IntMat m = from({{2, 1}, {1, 1}});
    IntMat inv = unimodular_inverse(m);
    CHECK(m * inv == IntMat::identity(2));
}
