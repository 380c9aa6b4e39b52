#include "fusionforge/json_io.hpp"

#include <cstdio>
#include <sstream>

#include "fusionforge/errors.hpp"
#include "fusionforge/families.hpp"

namespace fusionforge {

double canonical_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    double y = std::strtod(buf, nullptr);
    if (y == 0.0) y = 0.0;  // flush -0
    return y;
}

Json complex_to_json(Complex z) {
    return Json{{"re", canonical_double(z.real())}, {"im", canonical_double(z.imag())}};
}

Complex complex_from_json(const Json& j) {
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

Json modular_data_to_json(const ModularData& md) {
    Json j;
    j["schema"] = kSchemaTag;
    j["name"] = md.name;
    j["central_charge"] = md.central_charge.str();
    Json labels = Json::array();
    for (const auto& l : md.labels) labels.push_back(l.display_name);
    j["labels"] = labels;
    Json h = Json::array();
    for (const auto& w : md.conf_weights) h.push_back(w.str());
    j["h"] = h;
    Json s = Json::array();
    for (int i = 0; i < md.size(); ++i) {
        Json row = Json::array();
        for (int k = 0; k < md.size(); ++k) row.push_back(complex_to_json(md.s_matrix(i, k)));
        s.push_back(row);
    }
    j["S"] = s;
    if (md.fusion) {
        Json f = Json::array();
        for (int a = 0; a < md.size(); ++a) {
            Json fa = Json::array();
            for (int b = 0; b < md.size(); ++b) {
                Json fb = Json::array();
                for (int c = 0; c < md.size(); ++c) fb.push_back(md.fusion->at(a, b, c));
                fa.push_back(fb);
            }
            f.push_back(fa);
        }
        j["fusion"] = f;
    }
    if (!md.dual.empty()) j["dual"] = md.dual;
    return j;
}

ModularData modular_data_from_json(const Json& j) {
    if (j.value("schema", "") != kSchemaTag)
        throw Error("BadSchema", "expected schema tag " + std::string(kSchemaTag));
    ModularData md;
    md.name = j.value("name", "");
    md.central_charge = Rational::parse(j.at("central_charge").get<std::string>());
    int idx = 0;
    for (const auto& l : j.at("labels")) md.labels.push_back({idx++, l.get<std::string>()});
    for (const auto& h : j.at("h"))
        md.conf_weights.push_back(Rational::parse(h.get<std::string>()));
    const int n = int(md.labels.size());
    if (int(md.conf_weights.size()) != n) throw Error("BadSchema", "h length mismatch");
    md.s_matrix = CMatrix(n, n);
    const Json& s = j.at("S");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) md.s_matrix(a, b) = complex_from_json(s.at(a).at(b));
    if (j.contains("fusion")) {
        FusionTensor f(n);
        const Json& ft = j.at("fusion");
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < n; ++c)
                    f.at(a, b, c) = ft.at(a).at(b).at(c).get<std::int64_t>();
        md.fusion = std::move(f);
    }
    if (j.contains("dual")) md.dual = j.at("dual").get<std::vector<int>>();
    return md;
}

Json axiom_report_to_json(const AxiomReport& rep) {
    Json out = Json::array();
    for (const auto& c : rep.checks) {
        Json j;
        j["check"] = c.name;
        j["pass"] = c.pass;
        j["residual"] = canonical_double(c.residual);
        if (!c.where.empty()) j["where"] = c.where;
        out.push_back(j);
    }
    return out;
}

Json extension_to_json(const ExtensionResult& ext, const SuperFusion& sf) {
    Json j;
    j["schema"] = kSchemaTag;
    j["statistics"] = to_string(ext.statistics);
    Json orbits = Json::array();
    for (const auto& o : ext.orbits) {
        Json jo;
        jo["members"] = o.members;
        jo["sector"] = o.local ? "local" : "twisted";
        jo["fixed_point"] = o.fixed_point;
        jo["epsilon"] = o.epsilon;
        jo["n_factor"] = o.n_factor;
        jo["h_rep"] = ext.group.base.conf_weights[std::size_t(o.rep())].str();
        jo["t_swaps_sign"] = o.t_swaps_sign;
        orbits.push_back(jo);
    }
    j["orbits"] = orbits;
    Json basis = Json::array();
    for (const auto& b : ext.basis)
        basis.push_back(std::to_string(b.orbit) + (b.sign > 0 ? ":+" : ":-"));
    j["basis"] = basis;
    Json st = Json::array();
    for (int r = 0; r < ext.stilde.rows(); ++r)
        for (int c = 0; c < ext.stilde.cols(); ++c)
            if (std::abs(ext.stilde(r, c)) > 0.0) {
                Json e;
                e["row"] = r;
                e["col"] = c;
                e["value"] = complex_to_json(ext.stilde(r, c));
                st.push_back(e);
            }
    j["stilde"] = st;
    const int no = sf.n_even.size();
    auto tensor_json = [&](bool plus) {
        Json out = Json::array();
        for (int a = 0; a < no; ++a) {
            Json ja = Json::array();
            for (int b = 0; b < no; ++b) {
                Json jb = Json::array();
                for (int c = 0; c < no; ++c)
                    jb.push_back(plus ? sf.n_even.at(a, b, c) + sf.n_odd.at(a, b, c)
                                      : sf.n_even.at(a, b, c) - sf.n_odd.at(a, b, c));
                ja.push_back(jb);
            }
            out.push_back(ja);
        }
        return out;
    };
    if (no > 0) {
        j["n_plus"] = tensor_json(true);
        j["n_minus"] = tensor_json(false);
    }
    return j;
}

Json coset_tables_to_json(const CosetTables& tables) {
    Json j;
    j["schema"] = kSchemaTag;
    j["count"] = tables.classes.size();
    Json cl = Json::array();
    for (std::size_t a = 0; a < tables.classes.size(); ++a) {
        Json jc;
        jc["i"] = tables.classes[a].i;
        jc["mu"] = tables.classes[a].mu;
        jc["name"] = tables.md_c.labels[a].display_name;
        jc["h"] = tables.md_c.conf_weights[a].str();
        cl.push_back(jc);
    }
    j["classes"] = cl;
    j["modular_data"] = modular_data_to_json(tables.md_c);
    return j;
}

CosetSetup coset_setup_from_json(const Json& j) {
    if (j.value("schema", "") != kSchemaTag)
        throw Error("BadSchema", "expected schema tag " + std::string(kSchemaTag));
    ModularData md;
    if (j.contains("family"))
        md = parse_family(j.at("family").get<std::string>());
    else if (j.contains("modular_data"))
        md = modular_data_from_json(j.at("modular_data"));
    else
        throw Error("BadSetup", "setup needs 'family' or 'modular_data'");
    const Json& g = j.at("gram");
    IntMat gram(int(g.size()), int(g.at(0).size()));
    for (int a = 0; a < gram.rows(); ++a)
        for (int b = 0; b < gram.cols(); ++b) gram(a, b) = g.at(a).at(b).get<std::int64_t>();
    LatticeData lat = build_lattice_data(gram);
    std::vector<std::int64_t> weight = j.at("weight").get<std::vector<std::int64_t>>();
    std::vector<std::int64_t> gens = j.at("subgroup").get<std::vector<std::int64_t>>();
    std::map<std::int64_t, int> currents;
    for (const auto& [key, val] : j.at("currents").items())
        currents[std::stoll(key)] = val.get<int>();
    return make_coset_setup(std::move(md), std::move(lat), std::move(weight), gens, currents);
}

namespace {

std::string fmt_complex(Complex z) {
    char buf[64];
    double re = canonical_double(z.real()), im = canonical_double(z.imag());
    if (std::abs(im) < 1e-12) {
        std::snprintf(buf, sizeof buf, "%10.6f", re);
    } else {
        std::snprintf(buf, sizeof buf, "%.4f%+.4fi", re, im);
    }
    return buf;
}

}  // namespace

std::string render_modular_data_text(const ModularData& md) {
    std::ostringstream os;
    os << md.name << ": " << md.size() << " labels, c = " << md.central_charge.str() << "\n";
    os << "labels:";
    for (const auto& l : md.labels) os << " " << l.display_name;
    os << "\nh:";
    for (const auto& h : md.conf_weights) os << " " << h.str();
    os << "\nS:\n";
    for (int i = 0; i < md.size(); ++i) {
        for (int j = 0; j < md.size(); ++j) os << fmt_complex(md.s_matrix(i, j)) << " ";
        os << "\n";
    }
    return os.str();
}

std::string render_extension_text(const ExtensionResult& ext, const SuperFusion& sf) {
    std::ostringstream os;
    os << "statistics: " << to_string(ext.statistics) << "\n";
    os << "orbits (" << ext.orbits.size() << "):\n";
    for (std::size_t i = 0; i < ext.orbits.size(); ++i) {
        const auto& o = ext.orbits[i];
        os << "  #" << i << " rep=" << ext.group.base.labels[std::size_t(o.rep())].display_name
           << " members={";
        for (std::size_t m = 0; m < o.members.size(); ++m)
            os << (m ? "," : "") << o.members[m];
        os << "} " << (o.local ? "local" : "twisted");
        if (o.fixed_point) os << " fixed";
        os << " h=" << ext.group.base.conf_weights[std::size_t(o.rep())].str() << "\n";
    }
    if (ext.stilde.rows() > 0) {
        os << "S-tilde (basis";
        for (const auto& b : ext.basis) os << " " << b.orbit << (b.sign > 0 ? "+" : "-");
        os << "):\n";
        for (int r = 0; r < ext.stilde.rows(); ++r) {
            os << "  ";
            for (int c = 0; c < ext.stilde.cols(); ++c)
                os << fmt_complex(ext.stilde(r, c)) << " ";
            os << "\n";
        }
        (void)sf;
    }
    return os.str();
}

std::string render_coset_text(const CosetTables& tables) {
    std::ostringstream os;
    os << tables.md_c.name << ": " << tables.classes.size() << " classes, c = "
       << tables.md_c.central_charge.str() << "\n";
    for (std::size_t a = 0; a < tables.classes.size(); ++a)
        os << "  " << tables.md_c.labels[a].display_name
           << " h=" << tables.md_c.conf_weights[a].str() << "\n";
    return os.str();
}

}  // namespace fusionforge
