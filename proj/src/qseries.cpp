#include "fusionforge/qseries.hpp"

#include <cctype>
#include <cmath>

#include "fusionforge/errors.hpp"
#include "fusionforge/families.hpp"

namespace fusionforge {

QSeries QSeries::one(const Rational& trunc) {
    QSeries s(trunc);
    s.add_term(Rational(0), 1.0);
    return s;
}

QSeries QSeries::monomial(const Rational& e, Complex c, const Rational& trunc) {
    QSeries s(trunc);
    if (e < trunc) s.add_term(e, c);
    return s;
}

Rational QSeries::min_exponent() const {
    if (terms_.empty()) throw Error("EmptySeries", "zero series has no leading exponent");
    return terms_.begin()->first;
}

Complex QSeries::coeff(const Rational& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Complex(0.0, 0.0) : it->second;
}

void QSeries::add_term(const Rational& e, Complex c) {
    if (!(e < trunc_)) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (std::abs(it->second) == 0.0) terms_.erase(it);
    }
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.trunc_, b.trunc_));
    for (const auto& [e, c] : a.terms_) out.add_term(e, c);
    for (const auto& [e, c] : b.terms_) out.add_term(e, c);
    return out;
}

QSeries operator-(const QSeries& a, const QSeries& b) {
    QSeries out(std::min(a.trunc_, b.trunc_));
    for (const auto& [e, c] : a.terms_) out.add_term(e, c);
    for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
    return out;
}

QSeries QSeries::operator-() const {
    QSeries out(trunc_);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
}

QSeries QSeries::scaled(Complex c) const {
    QSeries out(trunc_);
    if (std::abs(c) == 0.0) return out;
    for (const auto& [e, k] : terms_) out.terms_.emplace(e, c * k);
    return out;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    // completeness below min(Ta + min_b, Tb + min_a)
    if (a.terms_.empty() || b.terms_.empty())
        return QSeries::zero(std::max(a.trunc_, b.trunc_));
    Rational t = std::min(a.trunc_ + b.min_exponent(), b.trunc_ + a.min_exponent());
    QSeries out(t);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            Rational e = ea + eb;
            if (!(e < t)) break;  // map iteration is ordered in eb
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

QSeries QSeries::divided_by(const QSeries& b) const {
    if (b.terms_.empty()) throw Error("DivisionByVanishingLead", "division by zero series");
    Rational mb = b.min_exponent();
    Complex lead = b.terms_.begin()->second;
    if (std::abs(lead) < 1e-13)
        throw Error("DivisionByVanishingLead", "leading coefficient vanishes");
    if (terms_.empty()) return QSeries::zero(trunc_ - mb);
    Rational ma = min_exponent();
    Rational t = std::min(trunc_ - mb, b.trunc_ + ma - mb - mb);
    QSeries q(t);
    QSeries r = *this;
    while (!r.terms_.empty()) {
        Rational e = r.min_exponent() - mb;
        if (!(e < t)) break;
        Complex c = r.terms_.begin()->second / lead;
        q.terms_.emplace(e, c);
        // r -= c q^e b
        for (const auto& [eb, cb] : b.terms_) {
            Rational re = e + eb;
            auto [it, inserted] = r.terms_.emplace(re, -c * cb);
            if (!inserted) {
                it->second -= c * cb;
                if (std::abs(it->second) < 1e-300) r.terms_.erase(it);
            }
        }
        // the leading term cancels by construction; drop residue
        auto it = r.terms_.find(e + mb);
        if (it != r.terms_.end() && std::abs(it->second) < 1e-9 * std::abs(c * lead) + 1e-300)
            r.terms_.erase(it);
    }
    return q;
}

QSeries QSeries::rescaled(const Rational& a) const {
    if (!(Rational(0) < a)) throw Error("BadRescale", "rescale factor must be positive");
    QSeries out(trunc_ * a);
    for (const auto& [e, c] : terms_) out.terms_.emplace(e * a, c);
    return out;
}

QSeries QSeries::shifted(const Rational& e) const {
    QSeries out(trunc_ + e);
    for (const auto& [ee, c] : terms_) out.terms_.emplace(ee + e, c);
    return out;
}

QSeries QSeries::powed(int n) const {
    if (n < 0) return QSeries::one(trunc_).divided_by(powed(-n));
    QSeries acc = QSeries::one(trunc_ + Rational(1));
    QSeries base = *this;
    // simple ladder; n stays tiny in practice
    for (int i = 0; i < n; ++i) acc = acc * base;
    if (n == 0) acc = QSeries::one(trunc_);
    return acc;
}

QSeries::Eval QSeries::evaluate(Complex tau) const {
    if (!(tau.imag() > 0.0)) throw Error("NotUpperHalfPlane", "Im tau must be positive");
    static const double TWO_PI = 6.283185307179586476925286766559;
    Complex two_pi_i_tau = Complex(0.0, TWO_PI) * tau;
    Complex value = 0.0;
    double max_coeff = 0.0;
    for (const auto& [e, c] : terms_) {
        value += c * std::exp(two_pi_i_tau * e.to_double());
        max_coeff = std::max(max_coeff, std::abs(c));
    }
    double absq = std::exp(-TWO_PI * tau.imag());
    double tail = std::pow(absq, trunc_.to_double()) / (1.0 - absq) * std::max(max_coeff, 1.0);
    return {value, tail};
}

QSeries eta(const Rational& trunc) {
    QSeries prod = QSeries::one(trunc);
    for (std::int64_t n = 1; Rational(n) < trunc; ++n)
        prod = prod - prod.shifted(Rational(n));
    return prod.shifted(Rational(1, 24));
}

QSeries eta_scaled(const Rational& a, const Rational& trunc) {
    return eta(trunc / a + Rational(1)).rescaled(a);
}

QSeries lattice_theta(const LatticeData& lat, std::int64_t cls, const RationalVec& u,
                      const Rational& trunc) {
    QSeries out(trunc);
    if (!(Rational(0) < trunc)) return out;
    RationalVec offset = lat.rep(cls);
    RationalVec uu = u;
    if (uu.empty()) uu.assign(std::size_t(lat.rank()), Rational(0));
    enumerate_vectors(lat.gram(), offset, trunc * Rational(2), true,
                      [&](const RationalVec& x, const Rational& q2) {
                          Rational phase(0);
                          for (int i = 0; i < lat.rank(); ++i) {
                              Rational gx(0);
                              for (int j = 0; j < lat.rank(); ++j)
                                  gx += Rational(lat.gram()(i, j)) * x[j];
                              phase += uu[std::size_t(i)] * gx;
                          }
                          out.add_term(q2 / Rational(2), exp2pi(phase));
                      });
    return out;
}

QSeries minimal_char(int u, int v, int r, int s, const Rational& trunc) {
    if (u < 2 || v < 2 || std::gcd(u, v) != 1)
        throw Error("NotCoprime", "minimal_char needs coprime u,v >= 2");
    if (r < 1 || r > u - 1 || s < 1 || s > v - 1)
        throw Error("BadKacLabel", "(r,s) outside the Kac table");
    Rational c = Rational(1) - Rational(6 * std::int64_t(u - v) * (u - v), std::int64_t(u) * v);
    Rational shift = -(c / Rational(24));
    Rational tt = trunc - shift + Rational(1);

    QSeries num(tt);
    const std::int64_t uv = std::int64_t(u) * v;
    const std::int64_t big =
        std::int64_t(std::sqrt(std::max(0.0, tt.to_double() / double(uv)))) + 3;
    for (std::int64_t n = -big; n <= big; ++n) {
        Rational ep = Rational(2 * uv * n + std::int64_t(r) * v - std::int64_t(s) * u);
        ep = (ep * ep - Rational(std::int64_t(u - v) * (u - v))) / Rational(4 * uv);
        Rational em = Rational(2 * uv * n + std::int64_t(r) * v + std::int64_t(s) * u);
        em = (em * em - Rational(std::int64_t(u - v) * (u - v))) / Rational(4 * uv);
        num.add_term(ep, 1.0);
        num.add_term(em, -1.0);
    }
    QSeries denom = QSeries::one(tt);
    for (std::int64_t n = 1; Rational(n) < tt; ++n)
        denom = denom - denom.shifted(Rational(n));
    return num.divided_by(denom).shifted(shift);
}

namespace {

QSeries theta_level(std::int64_t m, std::int64_t kappa, const Rational& u, bool derivative,
                    const Rational& trunc) {
    QSeries out(trunc);
    Rational base(m, 2 * kappa);
    const std::int64_t big =
        std::int64_t(std::sqrt(std::max(0.0, trunc.to_double() / double(kappa)))) + 3;
    for (std::int64_t t = -big; t <= big; ++t) {
        Rational j = Rational(t) + base;
        Rational e = Rational(kappa) * j * j;
        if (!(e < trunc)) continue;
        Complex coeff = exp2pi(u * Rational(kappa) * j);
        if (derivative) coeff *= (Rational(kappa) * j).to_double();
        out.add_term(e, coeff);
    }
    return out;
}

}  // namespace

QSeries sl2_char(int k, int la, const Rational& u, const Rational& trunc) {
    if (k < 1 || la < 0 || la > k) throw Error("BadLevel", "need 0 <= lambda <= k");
    const std::int64_t kappa = k + 2;
    // margin: the quotient loses the denominator lead 1/8 and numerator lead
    Rational tt = trunc + Rational(2);
    bool deriv = u == Rational(0);
    QSeries num = theta_level(la + 1, kappa, u, deriv, tt) -
                  theta_level(-(la + 1), kappa, u, deriv, tt);
    QSeries den = theta_level(1, 2, u, deriv, tt) - theta_level(-1, 2, u, deriv, tt);
    return num.divided_by(den);
}

// ---- expression grammar ----

namespace {

struct Parser {
    std::string src;
    std::size_t pos = 0;
    Rational trunc;

    explicit Parser(std::string s, const Rational& t) : src(std::move(s)), trunc(t) {}

    void skip_ws() {
        while (pos < src.size() && std::isspace(unsigned(src[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    [[noreturn]] void fail(const std::string& what) {
        throw Error("BadCharExpr", what + " at position " + std::to_string(pos) + " in '" +
                                        src + "'");
    }

    Rational parse_rational() {
        skip_ws();
        std::size_t start = pos;
        if (pos < src.size() && (src[pos] == '-' || src[pos] == '+')) ++pos;
        while (pos < src.size() && std::isdigit(unsigned(src[pos]))) ++pos;
        if (pos < src.size() && src[pos] == '/') {
            ++pos;
            while (pos < src.size() && std::isdigit(unsigned(src[pos]))) ++pos;
        }
        if (start == pos) fail("expected number");
        return Rational::parse(src.substr(start, pos - start));
    }

    std::string parse_bracketed() {
        skip_ws();
        if (peek() != '[') fail("expected '['");
        std::size_t start = pos;
        int depth = 0;
        while (pos < src.size()) {
            if (src[pos] == '[') ++depth;
            if (src[pos] == ']') {
                --depth;
                if (depth == 0) {
                    ++pos;
                    return src.substr(start, pos - start);
                }
            }
            ++pos;
        }
        fail("unbalanced '['");
    }

    std::string parse_ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && (std::isalnum(unsigned(src[pos])) || src[pos] == '_')) ++pos;
        return src.substr(start, pos - start);
    }

    QSeries parse_expr() {
        QSeries lhs = parse_term();
        while (true) {
            if (eat('+')) lhs = lhs + parse_term();
            else if (eat('-')) lhs = lhs - parse_term();
            else return lhs;
        }
    }

    QSeries parse_term() {
        QSeries lhs = parse_power();
        while (true) {
            if (eat('*')) lhs = lhs * parse_power();
            else if (eat('/')) lhs = lhs.divided_by(parse_power());
            else return lhs;
        }
    }

    QSeries parse_power() {
        QSeries base = parse_atom();
        if (eat('^')) {
            bool paren = eat('(');
            Rational e = parse_rational();
            if (paren && !eat(')')) fail("expected ')'");
            if (!e.is_integer()) fail("non-integer power of a series");
            return base.powed(int(e.num()));
        }
        return base;
    }

    QSeries parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            eat('(');
            QSeries s = parse_expr();
            if (!eat(')')) fail("expected ')'");
            return s;
        }
        if (std::isdigit(unsigned(c)) || c == '-' || c == '+') {
            Rational r = parse_rational();
            return QSeries::monomial(Rational(0), Complex(r.to_double(), 0.0),
                                     trunc + Rational(5));
        }
        std::string id = parse_ident();
        if (id == "Q") {
            if (!eat('^')) fail("Q needs an exponent");
            bool paren = eat('(');
            Rational e = parse_rational();
            if (paren && !eat(')')) fail("expected ')'");
            Rational tq = trunc + Rational(5);
            if (Rational(0) < e) tq += e;
            return QSeries::monomial(e, 1.0, tq);
        }
        if (id.empty()) fail("expected a function, number or Q-power");
        if (!eat('(')) fail(id + " needs arguments");
        Rational leaf_trunc = trunc + Rational(5);
        if (id == "ETA") {
            Rational a = parse_rational();
            if (!eat(')')) fail("expected ')'");
            return eta_scaled(a, leaf_trunc);
        }
        if (id == "THETA") {
            std::string gram = parse_bracketed();
            if (!eat(',')) fail("THETA needs a class");
            Rational cls = parse_rational();
            if (!eat(')')) fail("expected ')'");
            LatticeData lat = build_lattice_data(parse_gram(gram));
            return lattice_theta(lat, cls.num(), {}, leaf_trunc);
        }
        if (id == "MINCHAR") {
            Rational u = parse_rational();
            if (!eat(',')) fail("MINCHAR needs 4 args");
            Rational v = parse_rational();
            if (!eat(',')) fail("MINCHAR needs 4 args");
            Rational r = parse_rational();
            if (!eat(',')) fail("MINCHAR needs 4 args");
            Rational s = parse_rational();
            if (!eat(')')) fail("expected ')'");
            return minimal_char(int(u.num()), int(v.num()), int(r.num()), int(s.num()),
                                leaf_trunc);
        }
        if (id == "SL2CHAR") {
            Rational k = parse_rational();
            if (!eat(',')) fail("SL2CHAR needs at least 2 args");
            Rational la = parse_rational();
            Rational u(0);
            if (eat(',')) u = parse_rational();
            if (!eat(')')) fail("expected ')'");
            return sl2_char(int(k.num()), int(la.num()), u, leaf_trunc);
        }
        fail("unknown function '" + id + "'");
    }
};

}  // namespace

QSeries parse_char_expr(const std::string& text, const Rational& trunc) {
    Parser p(text, trunc);
    QSeries s = p.parse_expr();
    p.skip_ws();
    if (p.pos != p.src.size()) p.fail("trailing input");
    if (s.trunc() < trunc)
        throw Error("TruncationTooShort", "expression truncation " + s.trunc().str() +
                                              " below requested " + trunc.str());
    return s;
}

TransformReport verify_stilde_transform(const ExtensionResult& ext,
                                        const std::vector<QSeries>& basis_chars,
                                        const std::vector<Complex>& taus) {
    if (basis_chars.size() != ext.basis.size())
        throw Error("BadCharAssignment", "need one series per signed basis element");
    TransformReport rep;
    const int nb = int(ext.basis.size());
    for (Complex tau : taus) {
        Complex mtau = -1.0 / tau;
        std::vector<Complex> at_tau(nb), at_mtau(nb);
        for (int i = 0; i < nb; ++i) {
            auto e1 = basis_chars[std::size_t(i)].evaluate(tau);
            auto e2 = basis_chars[std::size_t(i)].evaluate(mtau);
            at_tau[std::size_t(i)] = e1.value;
            at_mtau[std::size_t(i)] = e2.value;
            rep.tail_bound = std::max({rep.tail_bound, e1.tail_bound, e2.tail_bound});
        }
        for (int i = 0; i < nb; ++i) {
            Complex rhs = 0.0;
            for (int j = 0; j < nb; ++j) rhs += ext.stilde(i, j) * at_tau[std::size_t(j)];
            rep.max_residual =
                std::max(rep.max_residual, std::abs(at_mtau[std::size_t(i)] - rhs));
        }
    }
    return rep;
}

}  // namespace fusionforge
