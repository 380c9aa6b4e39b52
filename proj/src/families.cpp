#include "fusionforge/families.hpp"

#include <cmath>
#include <numeric>

#include "fusionforge/errors.hpp"

namespace fusionforge {

double sin_pi(const Rational& q) {
    Rational m = q - Rational(2 * (q / Rational(2)).floor());  // reduce mod 2
    if (m == Rational(0) || m == Rational(1)) return 0.0;
    if (m == Rational(1, 2)) return 1.0;
    if (m == Rational(3, 2)) return -1.0;
    return std::sin(M_PI * m.to_double());
}

namespace {

void validate_against_verlinde(const ModularData& md, const char* family) {
    FusionTensor recomputed = verlinde_fusion(md);
    if (!(recomputed == *md.fusion))
        throw Error("InternalInconsistency",
                    std::string(family) + ": closed-form fusion disagrees with Verlinde");
}

}  // namespace

ModularData affine_sl2(int k) {
    if (k < 1) throw Error("BadLevel", "level must be a positive integer");
    const int n = k + 1;
    ModularData md;
    md.name = "sl2:k=" + std::to_string(k);
    md.central_charge = Rational(3 * std::int64_t(k), k + 2);
    for (int l = 0; l < n; ++l) {
        md.labels.push_back({l, "L" + std::to_string(l)});
        md.conf_weights.push_back(Rational(std::int64_t(l) * (l + 2), 4 * std::int64_t(k + 2)));
    }
    md.s_matrix = CMatrix(n, n);
    const double norm = std::sqrt(2.0 / (k + 2));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            md.s_matrix(a, b) =
                norm * sin_pi(Rational(std::int64_t(a + 1) * (b + 1), k + 2));

    FusionTensor f(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int t = std::abs(i - j); t <= std::min(i + j, 2 * k - i - j); ++t)
                if ((i + j + t) % 2 == 0) f.at(i, j, t) = 1;
    md.fusion = std::move(f);
    md.dual.resize(n);
    for (int i = 0; i < n; ++i) md.dual[i] = i;

    validate_against_verlinde(md, "affine_sl2");
    return md;
}

ModularData virasoro_minimal(int u, int v) {
    if (u < 2 || v < 2) throw Error("NotCoprime", "u,v must be >= 2");
    if (std::gcd(u, v) != 1) throw Error("NotCoprime", "gcd(u,v) must be 1");

    // representatives of (r,s) ~ (u-r, v-s): lexicographically smaller one
    std::vector<std::pair<int, int>> reps;
    std::vector<std::vector<int>> rep_index(u, std::vector<int>(v, -1));
    for (int r = 1; r < u; ++r)
        for (int s = 1; s < v; ++s)
            if (std::make_pair(r, s) < std::make_pair(u - r, v - s)) {
                rep_index[r][s] = int(reps.size());
                reps.emplace_back(r, s);
            }
    auto classof = [&](int r, int s) {
        return rep_index[r][s] >= 0 ? rep_index[r][s] : rep_index[u - r][v - s];
    };

    const int n = int(reps.size());
    ModularData md;
    md.name = "vir:u=" + std::to_string(u) + ",v=" + std::to_string(v);
    md.central_charge =
        Rational(1) - Rational(6 * std::int64_t(u - v) * (u - v), std::int64_t(u) * v);
    for (int i = 0; i < n; ++i) {
        auto [r, s] = reps[i];
        md.labels.push_back({i, "W(" + std::to_string(r) + "," + std::to_string(s) + ")"});
        std::int64_t t = std::int64_t(r) * v - std::int64_t(s) * u;
        md.conf_weights.push_back(
            Rational(t * t - std::int64_t(u - v) * (u - v), 4 * std::int64_t(u) * v));
    }

    md.s_matrix = CMatrix(n, n);
    const double norm = 2.0 * std::sqrt(2.0 / (double(u) * v));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [r, s] = reps[i];
            auto [rho, sigma] = reps[j];
            double sign = ((1 + s * rho + r * sigma) % 2 == 0) ? 1.0 : -1.0;
            md.s_matrix(i, j) = sign * norm *
                                sin_pi(Rational(std::int64_t(v) * r * rho, u)) *
                                sin_pi(Rational(std::int64_t(u) * s * sigma, v));
        }
    // canonical normalization S_00 = 1/sqrt(D) > 0 (a global sign against
    // the character convention for some non-unitary families, e.g. (2,5))
    if (md.s_matrix(0, 0).real() < 0.0) md.s_matrix = -md.s_matrix;

    FusionTensor f(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            auto [r1, s1] = reps[i];
            auto [r2, s2] = reps[j];
            for (int r3 = std::abs(r1 - r2) + 1;
                 r3 <= std::min(r1 + r2 - 1, 2 * u - 1 - r1 - r2); r3 += 2)
                for (int s3 = std::abs(s1 - s2) + 1;
                     s3 <= std::min(s1 + s2 - 1, 2 * v - 1 - s1 - s2); s3 += 2)
                    f.at(i, j, classof(r3, s3)) += 1;
        }
    md.fusion = std::move(f);
    md.dual.resize(n);
    for (int i = 0; i < n; ++i) md.dual[i] = i;

    validate_against_verlinde(md, "virasoro_minimal");
    return md;
}

LatticeFamily lattice_family(const IntMat& gram) {
    LatticeFamily out{ModularData{}, build_lattice_data(gram)};
    const LatticeData& lat = out.lat;
    ModularData& md = out.md;
    const auto n = lat.class_count();

    md.name = "lattice:rank=" + std::to_string(lat.rank()) +
              ",det=" + std::to_string(lat.group_order());
    md.central_charge = Rational(lat.rank());
    for (std::int64_t c = 0; c < n; ++c) {
        std::string name = "g";
        auto t = lat.tuple_of(c);
        // drop the trivial divisor-1 components from the display name
        std::vector<std::int64_t> shown;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (lat.divisors()[i] > 1) shown.push_back(t[i]);
        if (shown.empty()) shown.push_back(0);
        if (shown.size() == 1) {
            name += std::to_string(shown[0]);
        } else {
            name += "(";
            for (std::size_t i = 0; i < shown.size(); ++i)
                name += (i ? "," : "") + std::to_string(shown[i]);
            name += ")";
        }
        md.labels.push_back({int(c), name});
        md.conf_weights.push_back(lat.quad(c));
    }
    md.s_matrix = CMatrix(n, n);
    const double norm = 1.0 / std::sqrt(double(lat.group_order()));
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b)
            md.s_matrix(a, b) = norm * exp2pi(lat.bilinear(a, b));

    FusionTensor f(int(n));
    for (std::int64_t a = 0; a < n; ++a)
        for (std::int64_t b = 0; b < n; ++b) f.at(int(a), int(b), int(lat.add(a, b))) = 1;
    md.fusion = std::move(f);
    md.dual.resize(std::size_t(n));
    for (std::int64_t a = 0; a < n; ++a) md.dual[std::size_t(a)] = int(lat.neg(a));
    return out;
}

// ---- descriptor parsing ----

namespace {

std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    if (b == std::string::npos) return "";
    return s.substr(b, e - b + 1);
}

long long parse_int(const std::string& s) {
    try {
        std::size_t pos = 0;
        long long x = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return x;
    } catch (const std::exception&) {
        throw Error("BadDescriptor", "expected integer, got '" + s + "'");
    }
}

// "k=4,v=5" -> {k:4, v:5}
std::vector<std::pair<std::string, std::string>> parse_kv(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::size_t pos = 0;
    int depth = 0;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) return;
        auto eq = cur.find('=');
        if (eq == std::string::npos) throw Error("BadDescriptor", "expected key=value in '" + cur + "'");
        out.emplace_back(strip(cur.substr(0, eq)), strip(cur.substr(eq + 1)));
        cur.clear();
    };
    for (; pos < s.size(); ++pos) {
        char c = s[pos];
        if (c == '[' || c == '(') ++depth;
        if (c == ']' || c == ')') --depth;
        if (c == ',' && depth == 0) { flush(); continue; }
        cur += c;
    }
    flush();
    return out;
}

}  // namespace

IntMat parse_gram(const std::string& text) {
    // minimal bracket parser for [[a,b],[c,d]]
    std::string s = strip(text);
    if (s.size() < 2 || s.front() != '[' || s.back() != ']')
        throw Error("BadDescriptor", "gram must look like [[..],[..]]");
    std::vector<std::vector<long long>> rows;
    std::size_t i = 1;
    while (i < s.size() - 1) {
        while (i < s.size() - 1 && (s[i] == ',' || s[i] == ' ')) ++i;
        if (i >= s.size() - 1) break;
        if (s[i] != '[') throw Error("BadDescriptor", "expected '[' in gram");
        auto close = s.find(']', i);
        if (close == std::string::npos) throw Error("BadDescriptor", "unbalanced gram");
        std::string row = s.substr(i + 1, close - i - 1);
        std::vector<long long> r;
        std::size_t p = 0;
        while (p < row.size()) {
            auto comma = row.find(',', p);
            std::string tok = strip(row.substr(p, comma == std::string::npos ? std::string::npos
                                                                             : comma - p));
            if (!tok.empty()) r.push_back(parse_int(tok));
            if (comma == std::string::npos) break;
            p = comma + 1;
        }
        rows.push_back(std::move(r));
        i = close + 1;
    }
    if (rows.empty()) throw Error("BadDescriptor", "empty gram");
    IntMat g(int(rows.size()), int(rows[0].size()));
    for (std::size_t a = 0; a < rows.size(); ++a) {
        if (rows[a].size() != rows[0].size())
            throw Error("BadDescriptor", "ragged gram");
        for (std::size_t b = 0; b < rows[a].size(); ++b) g(int(a), int(b)) = rows[a][b];
    }
    return g;
}

ModularData parse_family(const std::string& descriptor) {
    std::string s = strip(descriptor);
    if (s == "trivial") return trivial_data();
    auto colon = s.find(':');
    if (colon == std::string::npos)
        throw Error("BadDescriptor", "missing ':' in '" + s + "'");
    std::string head = s.substr(0, colon);
    std::string rest = s.substr(colon + 1);

    if (head == "sl2") {
        for (auto& [k, v] : parse_kv(rest))
            if (k == "k") return affine_sl2(int(parse_int(v)));
        throw Error("BadDescriptor", "sl2 needs k=<level>");
    }
    if (head == "vir") {
        int u = -1, v = -1;
        for (auto& [k, val] : parse_kv(rest)) {
            if (k == "u") u = int(parse_int(val));
            if (k == "v") v = int(parse_int(val));
        }
        if (u < 0 || v < 0) throw Error("BadDescriptor", "vir needs u=,v=");
        return virasoro_minimal(u, v);
    }
    if (head == "lattice") {
        for (auto& [k, v] : parse_kv(rest))
            if (k == "gram") return lattice_family(parse_gram(v)).md;
        throw Error("BadDescriptor", "lattice needs gram=[[..]]");
    }
    if (head == "tensor") {
        // tensor:(A)x(B)
        if (rest.empty() || rest.front() != '(')
            throw Error("BadDescriptor", "tensor:(A)x(B) expected");
        int depth = 0;
        std::size_t split = std::string::npos;
        for (std::size_t i = 0; i < rest.size(); ++i) {
            if (rest[i] == '(') ++depth;
            if (rest[i] == ')') {
                --depth;
                if (depth == 0) { split = i; break; }
            }
        }
        if (split == std::string::npos) throw Error("BadDescriptor", "unbalanced tensor");
        std::string a = rest.substr(1, split - 1);
        std::string tail = strip(rest.substr(split + 1));
        if (tail.size() < 3 || tail.front() != 'x')
            throw Error("BadDescriptor", "tensor:(A)x(B) expected");
        tail = strip(tail.substr(1));
        if (tail.front() != '(' || tail.back() != ')')
            throw Error("BadDescriptor", "tensor:(A)x(B) expected");
        std::string b = tail.substr(1, tail.size() - 2);
        return tensor_product(parse_family(a), parse_family(b));
    }
    throw Error("BadDescriptor", "unknown family '" + head + "'");
}

}  // namespace fusionforge
