#include "fusionforge/modular_data.hpp"

#include <cmath>

#include "fusionforge/errors.hpp"

namespace fusionforge {

FusionTensor verlinde_fusion(const ModularData& md, double int_tol) {
    const int n = md.size();
    const CMatrix& s = md.s_matrix;
    FusionTensor t(n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Complex acc = 0.0;
                for (int m = 0; m < n; ++m)
                    acc += s(i, m) * s(j, m) * std::conj(s(k, m)) / s(0, m);
                double re = acc.real();
                double rounded = std::round(re);
                if (std::abs(acc - Complex(rounded, 0.0)) >= int_tol)
                    throw Error("NonIntegerFusion",
                                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    "," + std::to_string(k) + ") = " + std::to_string(re));
                if (rounded < 0.0)
                    throw Error("NegativeFusion",
                                "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                    "," + std::to_string(k) + ") = " + std::to_string(rounded));
                t.at(i, j, k) = std::int64_t(rounded);
                t.at(j, i, k) = std::int64_t(rounded);
            }
    return t;
}

double qdim(const ModularData& md, int i, double tol) {
    Complex s00 = md.s_matrix(0, 0);
    if (std::abs(s00) == 0.0) throw Error("VanishingDenominator", "S_00 = 0");
    Complex q = md.s_matrix(0, i) / s00;
    if (std::abs(q.imag()) >= tol)
        throw Error("NonRealQdim", "label " + std::to_string(i) +
                                       " has Im(qdim) = " + std::to_string(q.imag()));
    return q.real();
}

bool is_invertible(const ModularData& md, int j) {
    if (!md.fusion) return false;
    const FusionTensor& f = *md.fusion;
    for (int x = 0; x < md.size(); ++x) {
        std::int64_t total = 0;
        for (int k = 0; k < md.size(); ++k) total += f.at(j, x, k);
        if (total != 1) return false;
    }
    return true;
}

int fusion_image(const ModularData& md, int j, int x) {
    if (!md.fusion) throw Error("MissingFusion", "fusion tensor not populated");
    const FusionTensor& f = *md.fusion;
    int image = -1;
    std::int64_t total = 0;
    for (int k = 0; k < md.size(); ++k) {
        total += f.at(j, x, k);
        if (f.at(j, x, k) == 1) image = k;
    }
    if (total != 1 || image < 0)
        throw Error("NotSimpleCurrent",
                    "label " + std::to_string(j) + " has multiplicity " +
                        std::to_string(total) + " against " + std::to_string(x));
    return image;
}

Rational monodromy_exponent(const ModularData& md, int j, int x) {
    if (!is_invertible(md, j))
        throw Error("NotSimpleCurrent", "label " + std::to_string(j) + " is not invertible");
    int jx = fusion_image(md, j, x);
    return (md.conf_weights[jx] - md.conf_weights[j] - md.conf_weights[x]).mod1();
}

Complex monodromy_charge(const ModularData& md, int j, int x) {
    return exp2pi(monodromy_exponent(md, j, x));
}

std::string to_string(GradedType t) {
    switch (t) {
        case GradedType::ZVoa: return "Z-VOA";
        case GradedType::ZVosa: return "Z-VOSA";
        case GradedType::HalfZVosa: return "1/2Z-VOSA";
        case GradedType::HalfZVoa: return "1/2Z-VOA";
    }
    return "?";
}

GradedType classify_simple_current(const ModularData& md, int j, double tol) {
    if (!is_invertible(md, j))
        throw Error("NotSimpleCurrent", "label " + std::to_string(j) + " is not invertible");
    if (fusion_image(md, j, j) != 0)
        throw Error("NotSelfDual", "J x J is not the vacuum");

    Rational h2 = (md.conf_weights[j] * Rational(2)).mod1();
    if (h2 != Rational(0))
        throw Error("BadTwist", "theta_J is not +-1 (h = " + md.conf_weights[j].str() + ")");
    bool theta_plus = md.conf_weights[j].mod1() == Rational(0);

    double d = qdim(md, j, tol);
    if (std::abs(std::abs(d) - 1.0) >= tol)
        throw Error("BadQdim", "qdim(J) = " + std::to_string(d));
    bool qdim_plus = d > 0.0;

    if (theta_plus) return qdim_plus ? GradedType::ZVoa : GradedType::ZVosa;
    return qdim_plus ? GradedType::HalfZVosa : GradedType::HalfZVoa;
}

ModularData tensor_product(const ModularData& a, const ModularData& b) {
    ModularData out;
    out.name = a.name + " (x) " + b.name;
    const int na = a.size(), nb = b.size();
    out.central_charge = a.central_charge + b.central_charge;
    out.labels.reserve(std::size_t(na) * nb);
    out.conf_weights.reserve(std::size_t(na) * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            Label l;
            l.index = i * nb + j;
            l.display_name = a.labels[i].display_name + "*" + b.labels[j].display_name;
            out.labels.push_back(l);
            out.conf_weights.push_back(a.conf_weights[i] + b.conf_weights[j]);
        }
    out.s_matrix = CMatrix(na * nb, na * nb);
    for (int i1 = 0; i1 < na; ++i1)
        for (int j1 = 0; j1 < nb; ++j1)
            for (int i2 = 0; i2 < na; ++i2)
                for (int j2 = 0; j2 < nb; ++j2)
                    out.s_matrix(i1 * nb + j1, i2 * nb + j2) =
                        a.s_matrix(i1, i2) * b.s_matrix(j1, j2);
    if (a.fusion && b.fusion) {
        FusionTensor f(na * nb);
        for (int i1 = 0; i1 < na; ++i1)
            for (int j1 = 0; j1 < nb; ++j1)
                for (int i2 = 0; i2 < na; ++i2)
                    for (int j2 = 0; j2 < nb; ++j2)
                        for (int i3 = 0; i3 < na; ++i3)
                            for (int j3 = 0; j3 < nb; ++j3)
                                f.at(i1 * nb + j1, i2 * nb + j2, i3 * nb + j3) =
                                    a.fusion->at(i1, i2, i3) * b.fusion->at(j1, j2, j3);
        out.fusion = std::move(f);
    }
    if (!a.dual.empty() && !b.dual.empty()) {
        out.dual.resize(std::size_t(na) * nb);
        for (int i = 0; i < na; ++i)
            for (int j = 0; j < nb; ++j)
                out.dual[std::size_t(i) * nb + j] = a.dual[i] * nb + b.dual[j];
    }
    return out;
}

namespace {

void push(AxiomReport& rep, const std::string& name, bool pass, double residual,
          std::vector<int> where = {}) {
    rep.checks.push_back({name, pass, residual, std::move(where)});
}

// permutation matrix check: S^2 ~ alpha * C for a unit scalar alpha
double charge_conjugation_residual(const ModularData& md, std::vector<int>& tup) {
    const CMatrix s2 = md.s_matrix * md.s_matrix;
    const int n = md.size();
    // expected permutation: dual from fusion if present, else from argmax of S^2
    std::vector<int> perm(n, -1);
    if (!md.dual.empty()) {
        perm = md.dual;
    } else {
        for (int i = 0; i < n; ++i) {
            int best = 0;
            for (int k = 1; k < n; ++k)
                if (std::abs(s2(i, k)) > std::abs(s2(i, best))) best = k;
            perm[i] = best;
        }
    }
    Complex alpha = s2(0, perm[0]);
    double worst = std::abs(std::abs(alpha) - 1.0);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Complex expect = (k == perm[i]) ? alpha : Complex(0.0, 0.0);
            double r = std::abs(s2(i, k) - expect);
            if (r > worst) {
                worst = r;
                tup = {i, k};
            }
        }
    return worst;
}

}  // namespace

AxiomReport check_axioms(const ModularData& md, double tol) {
    AxiomReport rep;
    const int n = md.size();
    if (n == 0) {
        push(rep, "nonempty", false, 1.0);
        return rep;
    }
    const CMatrix& s = md.s_matrix;

    {
        double worst = 0.0;
        std::vector<int> tup;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double r = std::abs(s(i, j) - s(j, i));
                if (r > worst) { worst = r; tup = {i, j}; }
            }
        push(rep, "s_symmetric", worst < tol, worst, tup);
    }
    {
        CMatrix g = s * s.adjoint() - CMatrix::Identity(n, n);
        double worst = 0.0;
        std::vector<int> tup;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (std::abs(g(i, j)) > worst) { worst = std::abs(g(i, j)); tup = {i, j}; }
        push(rep, "s_unitary", worst < tol, worst, tup);
    }
    {
        double im = std::abs(s(0, 0).imag());
        bool pos = s(0, 0).real() > 0.0 && im < tol;
        push(rep, "s00_real_positive", pos, im);
    }
    {
        // twists are roots of unity by construction (h rational); report 0
        push(rep, "twists_roots_of_unity", true, 0.0);
    }

    bool verlinde_ok = true;
    FusionTensor computed;
    try {
        computed = verlinde_fusion(md);
    } catch (const Error& e) {
        verlinde_ok = false;
        push(rep, std::string("verlinde_integrality(") + e.code() + ")", false, 1.0);
    }
    if (verlinde_ok) {
        push(rep, "verlinde_integrality", true, 0.0);
        if (md.fusion) {
            bool same = computed == *md.fusion;
            push(rep, "fusion_matches_verlinde", same, same ? 0.0 : 1.0);
        }
        const FusionTensor& f = md.fusion ? *md.fusion : computed;
        // unit row
        bool unit_ok = true;
        std::vector<int> tup;
        for (int j = 0; j < n && unit_ok; ++j)
            for (int k = 0; k < n && unit_ok; ++k)
                if (f.at(0, j, k) != (j == k ? 1 : 0)) { unit_ok = false; tup = {0, j, k}; }
        push(rep, "vacuum_unit", unit_ok, unit_ok ? 0.0 : 1.0, tup);
        // dual: exactly one k per i with N_{ik}^0 = 1
        bool dual_ok = true;
        for (int i = 0; i < n && dual_ok; ++i) {
            int count = 0;
            for (int k = 0; k < n; ++k) count += int(f.at(i, k, 0));
            if (count != 1) { dual_ok = false; tup = {i}; }
        }
        push(rep, "duality_permutation", dual_ok, dual_ok ? 0.0 : 1.0, tup);
        // associativity, exact integers
        bool assoc_ok = true;
        if (n <= 64) {
            for (int i = 0; i < n && assoc_ok; ++i)
                for (int j = 0; j < n && assoc_ok; ++j)
                    for (int k = 0; k < n && assoc_ok; ++k)
                        for (int l = 0; l < n && assoc_ok; ++l) {
                            std::int64_t lhs = 0, rhs = 0;
                            for (int m = 0; m < n; ++m) {
                                lhs += f.at(i, j, m) * f.at(m, k, l);
                                rhs += f.at(j, k, m) * f.at(i, m, l);
                            }
                            if (lhs != rhs) { assoc_ok = false; tup = {i, j, k, l}; }
                        }
        }
        push(rep, "fusion_associativity", assoc_ok, assoc_ok ? 0.0 : 1.0, tup);
    }
    {
        std::vector<int> tup;
        double worst = charge_conjugation_residual(md, tup);
        push(rep, "s_squared_charge_conjugation", worst < std::max(tol, 1e-8), worst, tup);
    }
    return rep;
}

ModularData trivial_data() {
    ModularData md;
    md.name = "trivial";
    md.labels = {{0, "1"}};
    md.central_charge = Rational(0);
    md.conf_weights = {Rational(0)};
    md.s_matrix = CMatrix::Ones(1, 1);
    FusionTensor f(1);
    f.at(0, 0, 0) = 1;
    md.fusion = f;
    md.dual = {0};
    return md;
}

}  // namespace fusionforge
