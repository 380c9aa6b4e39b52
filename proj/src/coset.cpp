#include "fusionforge/coset.hpp"

#include <algorithm>
#include <cmath>

#include "fusionforge/errors.hpp"

namespace fusionforge {

CosetSetup make_coset_setup(ModularData md_v, LatticeData lat,
                            std::vector<std::int64_t> weight,
                            const std::vector<std::int64_t>& n_generators,
                            const std::map<std::int64_t, int>& currents_for_generators) {
    CosetSetup s;
    s.md_v = std::move(md_v);
    s.lat = std::move(lat);
    s.weight = std::move(weight);
    if (!s.md_v.fusion) s.md_v.fusion = verlinde_fusion(s.md_v);

    if (int(s.weight.size()) != s.md_v.size())
        throw Error("BadSetup", "weight map must cover every V-label");
    if (s.weight[0] != 0) throw Error("BadSetup", "weight of the vacuum must be the zero class");

    s.n_sub = subgroup_of_discriminant(s.lat, n_generators);
    for (auto a : s.n_sub.elements)
        for (auto b : s.n_sub.elements)
            if (s.lat.bilinear(a, b) != Rational(0))
                throw Error("BadSetup", "N/L is not isotropic under the pairing");
    s.n_dual = annihilator(s.lat, s.n_sub);
    for (auto a : s.n_sub.elements)
        if (!s.n_dual.contains(a))
            throw Error("BadSetup", "N is not contained in its annihilator");

    // close the current labels over N'/L
    std::map<std::int64_t, int> currents = {{0, 0}};
    bool grew = true;
    while (grew) {
        grew = false;
        for (const auto& [g, lg] : currents_for_generators) {
            if (!s.n_dual.contains(g))
                throw Error("BadSetup", "current class is not in N'/L");
            for (const auto& [nu, l] : currents) {
                std::int64_t sum = s.lat.add(nu, g);
                if (currents.count(sum)) continue;
                currents[sum] = fusion_image(s.md_v, lg, l);
                grew = true;
                break;
            }
            if (grew) break;
        }
    }
    if (std::int64_t(currents.size()) != s.n_dual.order())
        throw Error("BadSetup", "current labels do not generate N'/L");

    for (auto nu : s.n_dual.elements) {
        int label = currents.at(nu);
        if (!is_invertible(s.md_v, label))
            throw Error("NotInvertible", "current label is not a simple current");
        if (s.weight[std::size_t(label)] != nu)
            throw Error("InconsistentAction", "weight of M^nu is not nu");
        s.current_label.push_back(label);
    }

    // action and its equivariance
    s.action.resize(s.current_label.size());
    for (std::size_t p = 0; p < s.current_label.size(); ++p) {
        std::int64_t nu = s.n_dual.elements[p];
        s.action[p].resize(std::size_t(s.md_v.size()));
        for (int i = 0; i < s.md_v.size(); ++i) {
            int img = fusion_image(s.md_v, s.current_label[p], i);
            s.action[p][std::size_t(i)] = img;
            if (s.weight[std::size_t(img)] != s.lat.add(s.weight[std::size_t(i)], nu))
                throw Error("InconsistentAction",
                            "weight(M^nu x M_i) != weight(M_i) + nu for label " +
                                std::to_string(i));
        }
    }
    return s;
}

CosetClass coset_canonicalize(const CosetSetup& setup, int i, std::int64_t mu) {
    CosetClass best{i, mu};
    for (std::size_t p = 0; p < setup.n_dual.elements.size(); ++p) {
        CosetClass cand{setup.action[p][std::size_t(i)],
                        setup.lat.add(mu, setup.n_dual.elements[p])};
        if (cand < best) best = cand;
    }
    return best;
}

std::vector<CosetClass> coset_classify(const CosetSetup& setup) {
    std::vector<CosetClass> classes;
    for (int i = 0; i < setup.md_v.size(); ++i)
        for (auto nu : setup.n_sub.elements) {
            std::int64_t mu = setup.lat.add(setup.weight[std::size_t(i)], nu);
            CosetClass c = coset_canonicalize(setup, i, mu);
            if (std::find(classes.begin(), classes.end(), c) == classes.end())
                classes.push_back(c);
        }
    std::sort(classes.begin(), classes.end());
    return classes;
}

std::int64_t coset_count(const CosetSetup& setup) {
    std::int64_t num = std::int64_t(setup.md_v.size()) * setup.n_sub.order();
    if (num % setup.n_dual.order() != 0)
        throw Error("NonIntegerCount", "(n+1)|N/L| is not divisible by |N'/L|");
    return num / setup.n_dual.order();
}

namespace {

int lookup_class(const CosetTables& t, int i, std::int64_t mu) {
    CosetClass c = coset_canonicalize(t.setup, i, mu);
    auto it = t.class_index.find({c.i, c.mu});
    if (it == t.class_index.end())
        throw Error("InternalInconsistency", "class lookup failed");
    return it->second;
}

}  // namespace

CosetTables solve_coset(const CosetSetup& setup) {
    CosetTables t;
    t.setup = setup;
    t.classes = coset_classify(setup);
    std::int64_t expect = coset_count(setup);
    if (std::int64_t(t.classes.size()) != expect)
        throw Error("NonIntegerCount",
                    "class enumeration (" + std::to_string(t.classes.size()) +
                        ") disagrees with the counting formula (" + std::to_string(expect) +
                        ")");
    for (std::size_t a = 0; a < t.classes.size(); ++a)
        t.class_index[{t.classes[a].i, t.classes[a].mu}] = int(a);

    const ModularData& v = setup.md_v;
    const int nc = int(t.classes.size());

    // closed-form coset fusion from V's fusion
    t.fusion = FusionTensor(nc);
    for (int p = 0; p < nc; ++p)
        for (int q = 0; q < nc; ++q) {
            const CosetClass& P = t.classes[std::size_t(p)];
            const CosetClass& Q = t.classes[std::size_t(q)];
            std::int64_t mu = setup.lat.add(P.mu, Q.mu);
            std::vector<int> hit;
            for (int k = 0; k < v.size(); ++k) {
                std::int64_t n = v.fusion->at(P.i, Q.i, k);
                if (n == 0) continue;
                // Heisenberg selection: the target weight must be reachable
                std::int64_t diff = setup.lat.add(setup.weight[std::size_t(k)],
                                                  setup.lat.neg(mu));
                if (!setup.n_sub.contains(diff))
                    throw Error("WeightMismatch",
                                "fusion target violates the weight selection rule");
                int cls = lookup_class(t, k, mu);
                if (std::find(hit.begin(), hit.end(), cls) != hit.end())
                    throw Error("InternalInconsistency",
                                "coset fusion summands are not pairwise inequivalent");
                hit.push_back(cls);
                t.fusion.at(p, q, cls) += n;
            }
        }

    // assemble C's modular data from V's by the lattice phases
    ModularData c;
    c.name = v.name + "/coset";
    c.central_charge = v.central_charge - Rational(setup.lat.rank());
    for (int a = 0; a < nc; ++a) {
        const CosetClass& P = t.classes[std::size_t(a)];
        std::string nm = "[" + v.labels[std::size_t(P.i)].display_name + "|" +
                         std::to_string(P.mu) + "]";
        c.labels.push_back({a, nm});
        Rational h = (v.conf_weights[std::size_t(P.i)] - setup.lat.quad(P.mu)).mod1();
        c.conf_weights.push_back(h);
    }
    const double scale = std::sqrt(double(setup.lat.group_order())) / double(setup.n_sub.order());
    c.s_matrix = CMatrix(nc, nc);
    for (int a = 0; a < nc; ++a)
        for (int b = 0; b < nc; ++b) {
            const CosetClass& P = t.classes[std::size_t(a)];
            const CosetClass& Q = t.classes[std::size_t(b)];
            c.s_matrix(a, b) = exp2pi(-setup.lat.bilinear(P.mu, Q.mu)) * scale *
                               v.s_matrix(P.i, Q.i);
        }
    FusionTensor verl = verlinde_fusion(c);
    if (!(verl == t.fusion))
        throw Error("AxiomFailure",
                    "Verlinde fusion of the assembled coset data disagrees with the closed form");
    c.fusion = t.fusion;
    c.dual.resize(std::size_t(nc));
    for (int a = 0; a < nc; ++a)
        for (int k = 0; k < nc; ++k)
            if (t.fusion.at(a, k, 0) == 1) c.dual[std::size_t(a)] = k;
    t.md_c = std::move(c);
    return t;
}

std::vector<std::pair<int, std::int64_t>> coset_fusion(const CosetTables& tables, int p, int q) {
    std::vector<std::pair<int, std::int64_t>> out;
    for (int k = 0; k < int(tables.classes.size()); ++k) {
        std::int64_t n = tables.fusion.at(p, q, k);
        if (n != 0) out.emplace_back(k, n);
    }
    return out;
}

std::int64_t coset_fusion_inverse(const CosetTables& tables, int i, int j, int k) {
    const CosetSetup& s = tables.setup;
    std::int64_t li = s.weight[std::size_t(i)];
    std::int64_t lj = s.weight[std::size_t(j)];
    std::int64_t lk = s.weight[std::size_t(k)];
    std::int64_t diff = s.lat.add(lk, s.lat.neg(s.lat.add(li, lj)));
    if (!s.n_sub.contains(diff)) return 0;
    int p = lookup_class(tables, i, li);
    int q = lookup_class(tables, j, lj);
    int r = lookup_class(tables, k, s.lat.add(li, lj));
    return tables.fusion.at(p, q, r);
}

CharIdentityReport verify_coset_characters(const CosetTables& tables,
                                           const VCharProvider& vchar,
                                           const CCharProvider& cchar, Complex tau,
                                           const Rational& trunc,
                                           const RationalVec& jacobi_u) {
    const CosetSetup& s = tables.setup;
    CharIdentityReport rep;
    const int rank = s.lat.rank();
    QSeries eta_r = eta(trunc).powed(rank);

    // coset character values, indexed by class
    std::vector<Complex> cvals(tables.classes.size());
    for (std::size_t a = 0; a < tables.classes.size(); ++a) {
        auto e = cchar(int(a)).evaluate(tau);
        cvals[a] = e.value;
        rep.tail_bound = std::max(rep.tail_bound, e.tail_bound);
    }

    // forward: ch[M_i](u,tau) = sum_nu theta_{lambda_i+nu}(u,tau)/eta^r * ch[M_{i,...}](tau)
    for (int i = 0; i < s.md_v.size(); ++i) {
        auto lhs = vchar(i, jacobi_u).evaluate(tau);
        rep.tail_bound = std::max(rep.tail_bound, lhs.tail_bound);
        Complex rhs = 0.0;
        for (auto nu : s.n_sub.elements) {
            std::int64_t mu = s.lat.add(s.weight[std::size_t(i)], nu);
            QSeries th = lattice_theta(s.lat, mu, jacobi_u, trunc);
            auto tv = th.divided_by(eta_r).evaluate(tau);
            rep.tail_bound = std::max(rep.tail_bound, tv.tail_bound);
            rhs += tv.value * cvals[std::size_t(lookup_class(tables, i, mu))];
        }
        rep.forward_residual = std::max(rep.forward_residual, std::abs(lhs.value - rhs));
    }

    // backward: ch[M_{i,mu}](tau) extracted from the V characters
    for (std::size_t a = 0; a < tables.classes.size(); ++a) {
        const CosetClass& P = tables.classes[a];
        Complex acc = 0.0;
        for (std::int64_t g = 0; g < s.lat.class_count(); ++g) {
            auto gv = vchar(P.i, s.lat.rep(g)).evaluate(tau);
            rep.tail_bound = std::max(rep.tail_bound, gv.tail_bound);
            acc += exp2pi(-s.lat.bilinear(P.mu, g)) * gv.value;
        }
        auto eta_v = eta_r.evaluate(tau);
        auto th_v = lattice_theta(s.lat, P.mu, {}, trunc).evaluate(tau);
        Complex extracted = eta_v.value /
                            (double(s.lat.group_order()) * th_v.value) * acc;
        rep.backward_residual =
            std::max(rep.backward_residual, std::abs(extracted - cvals[a]));
    }
    return rep;
}

}  // namespace fusionforge
