#include "fusionforge/extension.hpp"

#include <algorithm>
#include <cmath>

#include "fusionforge/errors.hpp"

namespace fusionforge {

int CurrentGroup::add(int g, int h) const {
    int label = fusion_image(base, elements[g], elements[h]);
    int e = elem_of_label[label];
    if (e < 0) throw Error("InternalInconsistency", "current group not closed");
    return e;
}

CurrentGroup build_current_group(const ModularData& md, const std::vector<int>& generators) {
    CurrentGroup cg;
    cg.base = md;
    if (!cg.base.fusion) cg.base.fusion = verlinde_fusion(cg.base);

    for (int g : generators)
        if (!is_invertible(cg.base, g))
            throw Error("NotInvertible", "label " + std::to_string(g) + " is not invertible");

    // close under fusion
    std::vector<int> labels = {0};
    std::vector<int> frontier = {0};
    auto known = [&](int l) { return std::find(labels.begin(), labels.end(), l) != labels.end(); };
    while (!frontier.empty()) {
        std::vector<int> next;
        for (int l : frontier)
            for (int g : generators) {
                int img = fusion_image(cg.base, g, l);
                if (!known(img)) {
                    labels.push_back(img);
                    next.push_back(img);
                }
            }
        frontier = std::move(next);
    }
    cg.elements = labels;
    cg.elem_of_label.assign(cg.base.size(), -1);
    for (std::size_t i = 0; i < labels.size(); ++i) cg.elem_of_label[labels[i]] = int(i);
    for (int g : generators) cg.generators.push_back(cg.elem_of_label[g]);

    // mutual monodromy must be trivial
    for (int a : cg.elements)
        for (int b : cg.elements)
            if (monodromy_exponent(cg.base, a, b) != Rational(0))
                throw Error("NontrivialMutualMonodromy",
                            "currents " + std::to_string(a) + ", " + std::to_string(b));

    // twist pattern: theta in {+-1} and theta_{J^g} = theta_{J^{g+2h}}
    for (int l : cg.elements) {
        Rational h2 = (cg.base.conf_weights[l] * Rational(2)).mod1();
        if (h2 != Rational(0))
            throw Error("BadTwistPattern",
                        "current " + std::to_string(l) + " has twist not in {+1,-1}");
    }
    for (int g = 0; g < cg.order(); ++g)
        for (int h = 0; h < cg.order(); ++h) {
            int shifted = cg.add(g, cg.add(h, h));
            Rational a = cg.base.conf_weights[cg.elements[g]].mod1();
            Rational b = cg.base.conf_weights[cg.elements[shifted]].mod1();
            if (a != b)
                throw Error("BadTwistPattern", "theta_{J^g} != theta_{J^{g+2h}}");
        }
    return cg;
}

SectorInfo classify_sector(const CurrentGroup& cg, int x) {
    SectorInfo info;
    for (int g : cg.generators) {
        Rational e = monodromy_exponent(cg.base, cg.elements[g], x);
        int sgn;
        if (e == Rational(0)) {
            sgn = 1;
        } else if (e == Rational(1, 2)) {
            sgn = -1;
        } else {
            throw Error("InternalInconsistency",
                        "monodromy charge of order-2 current is not +-1");
        }
        info.eps_per_generator.push_back(sgn);
        if (sgn != 1) info.local = false;
    }
    return info;
}

std::string to_string(ExtCase c) {
    switch (c) {
        case ExtCase::Ordinary: return "ordinary";
        case ExtCase::WrongStatSuper: return "wrong-statistics-superalgebra";
        case ExtCase::WrongStatAlgebra: return "wrong-statistics-algebra";
        case ExtCase::CorrectStatSuper: return "correct-statistics-superalgebra";
    }
    return "?";
}

int ExtensionResult::orbit_of_label(int label) const {
    for (std::size_t i = 0; i < orbits.size(); ++i)
        for (int m : orbits[i].members)
            if (m == label) return int(i);
    return -1;
}

int ExtensionResult::basis_index(int orbit, int sign) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].orbit == orbit && basis[i].sign == sign) return int(i);
    return -1;
}

namespace {

// The block pattern: for an ordered orbit pair, the unique signed slot that
// may be nonzero, or none. Rows are the transforming side.
bool stilde_slot(const ExtensionResult& ext, int p, int q, int& sp, int& sq) {
    const ExtOrbit& P = ext.orbits[std::size_t(p)];
    const ExtOrbit& Q = ext.orbits[std::size_t(q)];
    bool correct = ext.statistics == ExtCase::CorrectStatSuper;
    if (!correct) {
        // wrong statistics: no fixed points exist
        if (P.local && Q.local) { sp = -1; sq = -1; return true; }
        if (P.local && !Q.local) { sp = +1; sq = -1; return true; }
        if (!P.local && Q.local) { sp = -1; sq = +1; return true; }
        sp = +1; sq = +1; return true;
    }
    if (P.local && Q.local) { sp = +1; sq = +1; return true; }
    if (P.local && !Q.local) { sp = -1; sq = +1; return true; }
    if (!P.local && Q.local) { sp = +1; sq = -1; return true; }
    if (!P.fixed_point && !Q.fixed_point) { sp = -1; sq = -1; return true; }
    return false;  // both twisted, at least one fixed
}

}  // namespace

Complex ExtensionResult::stilde_entry(int p, int q, bool inverse) const {
    int sp, sq;
    if (!stilde_slot(*this, p, q, sp, sq)) return {0.0, 0.0};
    int i = basis_index(p, sp);
    int j = basis_index(q, sq);
    return inverse ? stilde_inv(i, j) : stilde(i, j);
}

ExtensionResult build_extension(const CurrentGroup& cg) {
    ExtensionResult ext;
    ext.group = cg;
    const ModularData& md = cg.base;
    const int n = md.size();
    const int ord = cg.order();

    // statistics case
    if (ord == 1) {
        ext.statistics = ExtCase::Ordinary;
    } else if (ord == 2) {
        switch (classify_simple_current(md, cg.elements[1])) {
            case GradedType::ZVoa: ext.statistics = ExtCase::Ordinary; break;
            case GradedType::ZVosa: ext.statistics = ExtCase::WrongStatSuper; break;
            case GradedType::HalfZVoa: ext.statistics = ExtCase::WrongStatAlgebra; break;
            case GradedType::HalfZVosa: ext.statistics = ExtCase::CorrectStatSuper; break;
        }
    } else {
        for (int l : cg.elements) {
            if (md.conf_weights[l].mod1() != Rational(0) ||
                std::abs(qdim(md, l) - 1.0) > kDefaultTol)
                throw Error("UnsupportedGroupOrder",
                            "super cases are implemented for order-2 groups only");
        }
        ext.statistics = ExtCase::Ordinary;
    }

    // orbits under the group action, representative = lowest label
    std::vector<int> orbit_of(n, -1);
    for (int x = 0; x < n; ++x) {
        if (orbit_of[x] >= 0) continue;
        ExtOrbit orb;
        std::vector<int> seen;
        for (int g = 0; g < ord; ++g) {
            int img = fusion_image(md, cg.elements[g], x);
            if (std::find(seen.begin(), seen.end(), img) == seen.end()) seen.push_back(img);
        }
        std::sort(seen.begin(), seen.end());
        orb.members = seen;
        orb.fixed_point = int(seen.size()) < ord;
        SectorInfo sec = classify_sector(cg, orb.rep());
        orb.local = sec.local;
        orb.epsilon = sec.local ? 1 : -1;
        // epsilon must be constant on the orbit
        for (int m : orb.members)
            if (classify_sector(cg, m).local != orb.local)
                throw Error("InternalInconsistency", "monodromy charge varies on an orbit");
        orb.n_factor = orb.fixed_point ? 2 : 1;
        orb.t_phase = md.conf_weights[orb.rep()].mod1();
        // T swaps ch^+ and ch^- when theta_J * epsilon = -1
        bool theta_j_plus = ord < 2 || md.conf_weights[cg.elements[1]].mod1() == Rational(0);
        orb.t_swaps_sign = (theta_j_plus ? orb.epsilon : -orb.epsilon) < 0;
        for (int m : orb.members) orbit_of[m] = int(ext.orbits.size());
        ext.orbits.push_back(std::move(orb));
    }
    ext.vacuum_orbit = orbit_of[0];

    if (ext.statistics == ExtCase::Ordinary) return ext;  // no super structure

    if (ext.statistics != ExtCase::CorrectStatSuper) {
        for (const auto& o : ext.orbits)
            if (o.fixed_point)
                throw Error("InternalInconsistency",
                            "fixed point in a wrong-statistics extension");
    }

    // signed basis
    for (std::size_t i = 0; i < ext.orbits.size(); ++i) {
        ext.basis.push_back({int(i), +1});
        if (!ext.orbits[i].fixed_point) ext.basis.push_back({int(i), -1});
    }

    const int nb = int(ext.basis.size());
    ext.stilde = CMatrix::Zero(nb, nb);
    const CMatrix& s = md.s_matrix;
    const int no = int(ext.orbits.size());
    for (int p = 0; p < no; ++p)
        for (int q = 0; q < no; ++q) {
            int sp, sq;
            if (!stilde_slot(ext, p, q, sp, sq)) continue;
            const ExtOrbit& P = ext.orbits[std::size_t(p)];
            const ExtOrbit& Q = ext.orbits[std::size_t(q)];
            Complex base = s(P.rep(), Q.rep());
            // single-S column against fixed points, doubled everywhere else
            double factor = (ext.statistics == ExtCase::CorrectStatSuper &&
                             Q.fixed_point && !P.fixed_point)
                                ? 1.0
                                : 2.0;
            ext.stilde(ext.basis_index(p, sp), ext.basis_index(q, sq)) = factor * base;
        }
    ext.stilde_inv = ext.stilde.inverse();
    return ext;
}

namespace {

std::int64_t round_integer(Complex v, const char* what) {
    double r = std::round(v.real());
    if (std::abs(v - Complex(r, 0.0)) >= kFusionIntTol)
        throw Error("InternalInconsistency",
                    std::string(what) + " is not integral: " + std::to_string(v.real()) +
                        "+" + std::to_string(v.imag()) + "i");
    return std::int64_t(r);
}

}  // namespace

std::int64_t super_verlinde(const ExtensionResult& ext, int u, int w, int x, int sign) {
    if (ext.statistics == ExtCase::Ordinary)
        throw Error("UnsupportedGroupOrder", "super-Verlinde needs an order-2 super case");
    const ExtOrbit& U = ext.orbits[std::size_t(u)];
    const ExtOrbit& W = ext.orbits[std::size_t(w)];
    const ExtOrbit& X = ext.orbits[std::size_t(x)];

    // sector selection rule
    int tu = U.local ? 0 : 1, tw = W.local ? 0 : 1, tx = X.local ? 0 : 1;
    if ((tu + tw) % 2 != tx) return 0;

    bool correct = ext.statistics == ExtCase::CorrectStatSuper;
    // which sector the sum runs over
    bool sum_over_local = correct ? (sign > 0) : (sign < 0);

    Complex acc = 0.0;
    for (std::size_t z = 0; z < ext.orbits.size(); ++z) {
        if (ext.orbits[z].local != sum_over_local) continue;
        Complex den = ext.stilde_entry(ext.vacuum_orbit, int(z));
        if (std::abs(den) < 1e-14)
            throw Error("VanishingDenominator", "S-tilde_{A,Z} = 0 in the Verlinde sum");
        acc += ext.stilde_entry(u, int(z)) * ext.stilde_entry(w, int(z)) *
               ext.stilde_entry(int(z), x, true) / den;
    }
    if (correct && sign > 0) acc *= double(X.n_factor);
    std::int64_t via_stilde = round_integer(acc, "super-Verlinde sum");

    // independent route through the base category
    const ModularData& md = ext.group.base;
    int x0 = X.rep();
    int x1 = fusion_image(md, ext.group.elements[1], x0);
    std::int64_t n0 = md.fusion->at(U.rep(), W.rep(), x0);
    std::int64_t n1 = md.fusion->at(U.rep(), W.rep(), x1);
    std::int64_t via_base = (sign > 0) ? n0 + n1 : n0 - n1;

    if (via_stilde != via_base)
        throw Error("InternalInconsistency",
                    "S-tilde route (" + std::to_string(via_stilde) +
                        ") disagrees with base-category route (" + std::to_string(via_base) +
                        ")");
    return via_stilde;
}

SuperFusion compute_super_fusion(const ExtensionResult& ext) {
    const int no = int(ext.orbits.size());
    SuperFusion sf{FusionTensor(no), FusionTensor(no)};
    for (int u = 0; u < no; ++u)
        for (int w = 0; w < no; ++w)
            for (int x = 0; x < no; ++x) {
                std::int64_t p = super_verlinde(ext, u, w, x, +1);
                std::int64_t m = super_verlinde(ext, u, w, x, -1);
                if ((p + m) % 2 != 0)
                    throw Error("InternalInconsistency", "N^+ and N^- have different parity");
                sf.n_even.at(u, w, x) = (p + m) / 2;
                sf.n_odd.at(u, w, x) = (p - m) / 2;
            }
    return sf;
}

namespace {

// minimal-weight orbit of the requested sector; unique minimum required
int minimal_sector_orbit(const ExtensionResult& ext, bool local, int& member) {
    int best = -1;
    Rational best_h(0);
    bool tie = false;
    for (std::size_t i = 0; i < ext.orbits.size(); ++i) {
        const ExtOrbit& o = ext.orbits[i];
        if (o.local != local) continue;
        for (int m : o.members) {
            Rational h = ext.group.base.conf_weights[m];
            if (best < 0 || h < best_h) {
                best = int(i);
                member = m;
                best_h = h;
                tie = false;
            } else if (h == best_h && int(i) != best) {
                tie = true;
            }
        }
    }
    if (best < 0 || tie)
        throw Error("NonUniqueMinimum",
                    std::string("no unique minimal-weight ") + (local ? "local" : "twisted") +
                        " sector");
    return best;
}

}  // namespace

double adim(const ExtensionResult& ext, int x, int sign) {
    if (ext.statistics == ExtCase::Ordinary)
        throw Error("UnsupportedGroupOrder", "adim needs an order-2 super case");
    bool correct = ext.statistics == ExtCase::CorrectStatSuper;
    // wrong statistics pairs adim^+- with Z_(-+), correct statistics with Z_(+-)
    bool want_local = correct ? (sign > 0) : (sign < 0);
    int member = -1;
    minimal_sector_orbit(ext, want_local, member);
    const ModularData& md = ext.group.base;
    Complex den = md.s_matrix(0, member);
    if (std::abs(den) < 1e-14) throw Error("VanishingDenominator", "S_{V,Z} = 0");
    Complex v = md.s_matrix(ext.orbits[std::size_t(x)].rep(), member) / den;
    if (std::abs(v.imag()) > 1e-9)
        throw Error("InternalInconsistency", "asymptotic dimension is not real");
    return v.real();
}

ModularData extend_ordinary(const CurrentGroup& cg) {
    const ModularData& md = cg.base;
    for (int l : cg.elements) {
        if (md.conf_weights[l].mod1() != Rational(0) ||
            std::abs(qdim(md, l) - 1.0) > kDefaultTol)
            throw Error("WrongCase", "extend_ordinary needs theta = +1, qdim = +1 currents");
    }
    const int ord = cg.order();
    // gather local labels and orbits
    std::vector<int> orbit_rep;
    std::vector<int> orbit_of(md.size(), -1);
    for (int x = 0; x < md.size(); ++x) {
        if (!classify_sector(cg, x).local) continue;
        if (orbit_of[x] >= 0) continue;
        std::vector<int> members;
        for (int g = 0; g < ord; ++g) {
            int img = fusion_image(md, cg.elements[g], x);
            if (std::find(members.begin(), members.end(), img) == members.end())
                members.push_back(img);
        }
        if (int(members.size()) < ord)
            throw Error("FixedPointPresent",
                        "local label " + std::to_string(x) + " is a fixed point");
        std::sort(members.begin(), members.end());
        for (int m : members) orbit_of[m] = int(orbit_rep.size());
        orbit_rep.push_back(members[0]);
    }

    ModularData out;
    out.name = md.name + "/ext";
    out.central_charge = md.central_charge;
    const int n = int(orbit_rep.size());
    for (int i = 0; i < n; ++i) {
        out.labels.push_back({i, "[" + md.labels[orbit_rep[i]].display_name + "]"});
        out.conf_weights.push_back(md.conf_weights[orbit_rep[i]]);
    }
    out.s_matrix = CMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.s_matrix(i, j) = double(ord) * md.s_matrix(orbit_rep[i], orbit_rep[j]);
    out.fusion = verlinde_fusion(out);
    out.dual.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k)
            if (out.fusion->at(i, k, 0) == 1) out.dual[i] = k;
    }
    return out;
}

GradedType classify_screening_lattice(const IntMat& gram_n, const RationalVec& rho,
                                      const RationalVec& gamma) {
    LatticeData lat = build_lattice_data(gram_n);
    // 2*gamma must be a lattice vector, gamma itself integral against N
    bool twice_in = true;
    for (const auto& c : gamma)
        if (!(c * Rational(2)).is_integer()) twice_in = false;
    if (!twice_in) throw Error("NotIntegralGlue", "2*gamma is not in N");
    bool proper = false;
    for (const auto& c : gamma)
        if (!c.is_integer()) proper = true;
    if (!proper) throw Error("NotIntegralGlue", "gamma is already in N (no index-2 glue)");
    const int r = gram_n.rows();
    for (int i = 0; i < r; ++i) {
        Rational p(0);
        for (int j = 0; j < r; ++j) p += Rational(gram_n(i, j)) * gamma[j];
        if (!p.is_integer()) throw Error("NotIntegralGlue", "<gamma, N> is not integral");
    }
    Rational g2 = lat.pairing(gamma, gamma);
    if (!g2.is_integer())
        throw Error("NotIntegralGlue", "<gamma,gamma> is not an integer");
    Rational rg = lat.pairing(rho, gamma);
    if (!rg.is_integer())
        throw Error("NotIntegralGlue", "<rho,gamma> is not an integer");

    bool g2_even = g2.num() % 2 == 0;
    bool rg_even = rg.num() % 2 == 0;
    if (g2_even && rg_even) return GradedType::ZVoa;
    if (g2_even && !rg_even) return GradedType::HalfZVoa;
    if (!g2_even && rg_even) return GradedType::HalfZVosa;
    return GradedType::ZVosa;
}

}  // namespace fusionforge
