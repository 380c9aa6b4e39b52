#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "fusionforge/extension.hpp"
#include "fusionforge/lattice.hpp"
#include "fusionforge/modular_data.hpp"
#include "fusionforge/rational.hpp"

namespace fusionforge {

/// Truncated series in rational powers of q with complex coefficients.
/// All exponents are exact rationals; every coefficient below trunc() is
/// complete (arithmetic tracks how truncation propagates).
class QSeries {
public:
    QSeries() : trunc_(0) {}
    explicit QSeries(const Rational& trunc) : trunc_(trunc) {}

    static QSeries zero(const Rational& trunc) { return QSeries(trunc); }
    static QSeries one(const Rational& trunc);
    static QSeries monomial(const Rational& e, Complex c, const Rational& trunc);

    const Rational& trunc() const { return trunc_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Rational, Complex>& terms() const { return terms_; }

    Rational min_exponent() const;  // throws on the zero series
    Complex coeff(const Rational& e) const;

    void add_term(const Rational& e, Complex c);

    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator-(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries operator-() const;
    QSeries scaled(Complex c) const;

    /// Division by a series with a nonzero leading coefficient.
    QSeries divided_by(const QSeries& b) const;

    /// q -> q^a for rational a > 0 (exponents and truncation scale).
    QSeries rescaled(const Rational& a) const;

    /// Multiply by q^e.
    QSeries shifted(const Rational& e) const;

    QSeries powed(int n) const;

    struct Eval {
        Complex value;
        double tail_bound;
    };
    /// Sum at q = e^{2 pi i tau}, Im tau > 0, plus a geometric tail bound
    /// |q|^T / (1-|q|) * max|coeff|.
    Eval evaluate(Complex tau) const;

private:
    Rational trunc_;
    std::map<Rational, Complex> terms_;
};

/// Dedekind eta: q^{1/24} prod (1-q^n), exact below T.
QSeries eta(const Rational& trunc);

/// eta(a*tau) as a series in q.
QSeries eta_scaled(const Rational& a, const Rational& trunc);

/// Theta series of a discriminant class: sum over x in class + L with
/// <x,x>/2 < T of q^{<x,x>/2} e^{2 pi i <u,x>}. u is a rational vector in
/// the lattice basis (empty = 0).
QSeries lattice_theta(const LatticeData& lat, std::int64_t cls, const RationalVec& u,
                      const Rational& trunc);

/// Virasoro minimal-model character for Kac label (r,s) of Vir(u,v).
QSeries minimal_char(int u, int v, int r, int s, const Rational& trunc);

/// Weyl-Kac character of the level-k sl2 module with highest weight la,
/// with the Jacobi variable specialized at z = e^{2 pi i u}. u = 0 uses the
/// derivative-theta limit of the quotient.
QSeries sl2_char(int k, int la, const Rational& u, const Rational& trunc);

/// Tiny expression grammar over q-series:
///   ETA(a), THETA([[gram]], class), MINCHAR(u,v,r,s), SL2CHAR(k,la[,u]),
///   Q^(p/q), rational literals, + - * / ^ and parentheses.
QSeries parse_char_expr(const std::string& text, const Rational& trunc);

struct TransformReport {
    double max_residual = 0.0;
    double tail_bound = 0.0;
    bool pass(double tol) const { return max_residual < tol && tail_bound < tol; }
};

/// Checks ch_i(-1/tau) = sum_j Stilde_{ij} ch_j(tau) for every signed basis
/// element, at each tau sample. basis_chars are indexed like ext.basis.
TransformReport verify_stilde_transform(const ExtensionResult& ext,
                                        const std::vector<QSeries>& basis_chars,
                                        const std::vector<Complex>& taus);

}  // namespace fusionforge
