#include "fusionforge/lattice.hpp"

#include <algorithm>
#include <cmath>

#include "fusionforge/errors.hpp"

namespace fusionforge {

namespace {

// G = L D L^T with L unit lower triangular; returns false if a pivot is <= 0.
bool rational_ldlt(const IntMat& g, std::vector<std::vector<Rational>>& l,
                   std::vector<Rational>& d) {
    const int n = g.rows();
    l.assign(n, std::vector<Rational>(n, Rational(0)));
    d.assign(n, Rational(0));
    for (int i = 0; i < n; ++i) l[i][i] = Rational(1);
    for (int j = 0; j < n; ++j) {
        Rational dj = Rational(g(j, j));
        for (int k = 0; k < j; ++k) dj -= l[j][k] * l[j][k] * d[k];
        if (!(Rational(0) < dj)) return false;
        d[j] = dj;
        for (int i = j + 1; i < n; ++i) {
            Rational s = Rational(g(i, j));
            for (int k = 0; k < j; ++k) s -= l[i][k] * l[j][k] * d[k];
            l[i][j] = s / dj;
        }
    }
    return true;
}

void check_gram(const IntMat& g) {
    if (g.rows() != g.cols() || g.rows() == 0)
        throw Error("NotSymmetric", "Gram matrix must be square and nonempty");
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (g(i, j) != g(j, i)) throw Error("NotSymmetric", "Gram matrix not symmetric");
    for (int i = 0; i < g.rows(); ++i)
        if (g(i, i) % 2 != 0) throw Error("NotEven", "diagonal entry not even");
    std::vector<std::vector<Rational>> l;
    std::vector<Rational> d;
    if (!rational_ldlt(g, l, d))
        throw Error("NotPositiveDefinite", "Gram matrix not positive definite");
}

}  // namespace

void enumerate_vectors(const IntMat& gram, const RationalVec& offset,
                       const Rational& max_norm2, bool strict,
                       const std::function<void(const RationalVec&, const Rational&)>& cb) {
    const int n = gram.rows();
    std::vector<std::vector<Rational>> l;
    std::vector<Rational> d;
    if (!rational_ldlt(gram, l, d))
        throw Error("NotPositiveDefinite", "Gram matrix not positive definite");
    if (max_norm2 < Rational(0)) return;

    // Q(x) = sum_i d_i z_i^2 with z_i = x_i + sum_{j>i} l[j][i] x_j.
    // Recurse from the last coordinate down, pruning with exact partial sums.
    RationalVec x(n, Rational(0));
    std::function<void(int, const Rational&)> rec = [&](int i, const Rational& budget) {
        if (i < 0) {
            Rational q = max_norm2 - budget;  // accumulated below
            // recompute exactly (cheap at these ranks) to avoid bookkeeping
            Rational qq(0);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) qq += x[a] * x[b] * Rational(gram(a, b));
            if (strict ? qq < max_norm2 : qq <= max_norm2) cb(x, qq);
            return;
        }
        // z_i = x_i + c with c = sum_{j>i} l[j][i] x_j; need d_i z_i^2 <= budget
        Rational c(0);
        for (int j = i + 1; j < n; ++j) c += l[j][i] * x[j];
        double zmax = std::sqrt(std::max(0.0, budget.to_double() / d[i].to_double()));
        double center = -(c + offset[i]).to_double();
        std::int64_t lo = std::int64_t(std::floor(center - zmax)) - 1;
        std::int64_t hi = std::int64_t(std::ceil(center + zmax)) + 1;
        for (std::int64_t m = lo; m <= hi; ++m) {
            x[i] = offset[i] + Rational(m);
            Rational z = x[i] + c;
            Rational used = d[i] * z * z;
            if (budget < used) continue;  // exact prune
            rec(i - 1, budget - used);
        }
        x[i] = Rational(0);
    };
    rec(n - 1, max_norm2);
}

LatticeData build_lattice_data(const IntMat& gram) {
    check_gram(gram);
    LatticeData lat;
    lat.gram_ = gram;
    SmithResult snf = smith_normal_form(gram);
    lat.u_ = snf.u;
    lat.v_ = snf.v;
    lat.divisors_ = snf.divisors;
    lat.order_ = 1;
    for (auto d : lat.divisors_) lat.order_ *= d;
    if (lat.order_ != std::llabs(gram.det()))
        throw Error("InternalInconsistency", "SNF divisors do not multiply to det");

    const int n = gram.rows();
    lat.reps_.resize(std::size_t(lat.order_));
    for (std::int64_t c = 0; c < lat.order_; ++c) {
        auto t = lat.tuple_of(c);
        // x = V * diag(1/d_i) * t, then reduce coefficients into [0,1)
        RationalVec x(n, Rational(0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                x[i] += Rational(lat.v_(i, j)) * Rational(t[j], lat.divisors_[j]);
        for (auto& xi : x) xi = xi.mod1();
        // minimal-norm representative in x + Z^n, lexicographic tie-break
        Rational bound = lat.norm2(x);
        RationalVec best = x;
        Rational best_q = bound;
        enumerate_vectors(gram, x, bound, false, [&](const RationalVec& v, const Rational& q) {
            if (q < best_q) { best_q = q; best = v; return; }
            if (q == best_q && std::lexicographical_compare(v.begin(), v.end(),
                                                            best.begin(), best.end()))
                best = v;
        });
        lat.reps_[std::size_t(c)] = best;
    }
    // class 0 must come out as the zero vector
    for (const auto& xi : lat.reps_[0])
        if (xi != Rational(0))
            throw Error("InternalInconsistency", "zero class has nonzero representative");
    return lat;
}

std::vector<std::int64_t> LatticeData::tuple_of(std::int64_t idx) const {
    std::vector<std::int64_t> t(divisors_.size());
    for (int i = int(divisors_.size()) - 1; i >= 0; --i) {
        t[i] = idx % divisors_[i];
        idx /= divisors_[i];
    }
    return t;
}

std::int64_t LatticeData::index_of(const std::vector<std::int64_t>& tuple) const {
    std::int64_t idx = 0;
    for (std::size_t i = 0; i < divisors_.size(); ++i) {
        std::int64_t t = tuple[i] % divisors_[i];
        if (t < 0) t += divisors_[i];
        idx = idx * divisors_[i] + t;
    }
    return idx;
}

std::int64_t LatticeData::add(std::int64_t a, std::int64_t b) const {
    auto ta = tuple_of(a), tb = tuple_of(b);
    for (std::size_t i = 0; i < ta.size(); ++i) ta[i] += tb[i];
    return index_of(ta);
}

std::int64_t LatticeData::neg(std::int64_t a) const {
    auto t = tuple_of(a);
    for (auto& ti : t) ti = -ti;
    return index_of(t);
}

std::int64_t LatticeData::class_of(const RationalVec& x) const {
    const int n = gram_.rows();
    // y = G x must be integral for x in the dual lattice
    std::vector<std::int64_t> y(n);
    for (int i = 0; i < n; ++i) {
        Rational yi(0);
        for (int j = 0; j < n; ++j) yi += Rational(gram_(i, j)) * x[j];
        if (!yi.is_integer())
            throw Error("NotInDualLattice", "vector does not pair integrally with the lattice");
        y[i] = yi.num();
    }
    std::vector<std::int64_t> t(n, 0);
    for (int i = 0; i < n; ++i) {
        __int128 acc = 0;
        for (int j = 0; j < n; ++j) acc += __int128(u_(i, j)) * y[j];
        std::int64_t m = std::int64_t(acc % divisors_[i]);
        if (m < 0) m += divisors_[i];
        t[i] = m;
    }
    return index_of(t);
}

Rational LatticeData::pairing(const RationalVec& x, const RationalVec& y) const {
    Rational acc(0);
    for (int i = 0; i < gram_.rows(); ++i)
        for (int j = 0; j < gram_.cols(); ++j) acc += x[i] * y[j] * Rational(gram_(i, j));
    return acc;
}

Rational LatticeData::bilinear(std::int64_t a, std::int64_t b) const {
    return pairing(reps_[std::size_t(a)], reps_[std::size_t(b)]).mod1();
}

Rational LatticeData::quad(std::int64_t a) const {
    return pairing(reps_[std::size_t(a)], reps_[std::size_t(a)]) / Rational(2);
}

bool DiscSubgroup::contains(std::int64_t c) const {
    return std::binary_search(elements.begin(), elements.end(), c);
}

DiscSubgroup subgroup_of_discriminant(const LatticeData& lat,
                                      const std::vector<std::int64_t>& generators) {
    std::vector<std::int64_t> elems = {0};
    std::vector<std::int64_t> frontier = {0};
    auto known = [&](std::int64_t c) {
        return std::find(elems.begin(), elems.end(), c) != elems.end();
    };
    while (!frontier.empty()) {
        std::vector<std::int64_t> next;
        for (auto e : frontier)
            for (auto g : generators) {
                std::int64_t s = lat.add(e, g);
                if (!known(s)) {
                    elems.push_back(s);
                    next.push_back(s);
                }
            }
        frontier = std::move(next);
    }
    std::sort(elems.begin(), elems.end());
    return DiscSubgroup{std::move(elems)};
}

DiscSubgroup annihilator(const LatticeData& lat, const DiscSubgroup& sub) {
    DiscSubgroup ann;
    for (std::int64_t c = 0; c < lat.class_count(); ++c) {
        bool ok = true;
        for (auto e : sub.elements)
            if (lat.bilinear(c, e) != Rational(0)) { ok = false; break; }
        if (ok) ann.elements.push_back(c);
    }
    return ann;
}

}  // namespace fusionforge
