#include "qg/construct.hpp"

#include <algorithm>
#include <array>
#include <cctype>

namespace qg {

namespace {

QuasigroupTable cyclic_table(int n) {
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] =
                (x + y) % n;
    return QuasigroupTable(n, std::move(cells), "Z" + std::to_string(n));
}

// permutations of {0,1,2} in lexicographic one-line order; p*q is p∘q
QuasigroupTable s3_table() {
    std::array<std::array<int, 3>, 6> perms{};
    std::array<int, 3> base{0, 1, 2};
    for (int i = 0; i < 6; ++i) {
        perms[static_cast<size_t>(i)] = base;
        std::next_permutation(base.begin(), base.end());
    }
    std::vector<int> cells(36);
    for (int p = 0; p < 6; ++p)
        for (int q = 0; q < 6; ++q) {
            std::array<int, 3> comp{};
            for (int x = 0; x < 3; ++x)
                comp[static_cast<size_t>(x)] =
                    perms[static_cast<size_t>(p)][static_cast<size_t>(
                        perms[static_cast<size_t>(q)][static_cast<size_t>(x)])];
            int idx = -1;
            for (int r = 0; r < 6; ++r)
                if (perms[static_cast<size_t>(r)] == comp) idx = r;
            cells[static_cast<size_t>(p) * 6 + static_cast<size_t>(q)] = idx;
        }
    return QuasigroupTable(6, std::move(cells), "S3");
}

// rotations r^i at 0..3, reflections s*r^i at 4..7, with s*r*s = r^-1
QuasigroupTable d4_table() {
    auto code = [](bool refl, int rot) { return (refl ? 4 : 0) + ((rot % 4) + 4) % 4; };
    std::vector<int> cells(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            bool ra = a >= 4, rb = b >= 4;
            int ia = a % 4, ib = b % 4;
            int v;
            if (!ra && !rb) v = code(false, ia + ib);        // r^i r^j
            else if (!ra && rb) v = code(true, ib - ia);     // r^i (s r^j) = s r^(j-i)
            else if (ra && !rb) v = code(true, ia + ib);     // (s r^i) r^j
            else v = code(false, ib - ia);                   // (s r^i)(s r^j) = r^(j-i)
            cells[static_cast<size_t>(a) * 8 + static_cast<size_t>(b)] = v;
        }
    return QuasigroupTable(8, std::move(cells), "D4");
}

// {1, i, j, k, -1, -i, -j, -k} in that index order
QuasigroupTable q8_table() {
    // basis products with signs: basis[a][b] = (sign, unit) for a,b in {1,i,j,k}
    static const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const int sign[4][4] = {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    std::vector<int> cells(64);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) {
            int ua = a % 4, ub = b % 4;
            int s = sign[ua][ub] * (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1);
            int v = unit[ua][ub] + (s < 0 ? 4 : 0);
            cells[static_cast<size_t>(a) * 8 + static_cast<size_t>(b)] = v;
        }
    return QuasigroupTable(8, std::move(cells), "Q8");
}

QuasigroupTable resolve_factor(const GroupSpec::Factor& f) {
    switch (f.kind) {
        case GroupSpec::Factor::Kind::Cyclic: return cyclic_table(f.n);
        case GroupSpec::Factor::Kind::S3: return s3_table();
        case GroupSpec::Factor::Kind::D4: return d4_table();
        case GroupSpec::Factor::Kind::Q8: return q8_table();
    }
    throw ConstructError(ConstructError::Kind::BadSpec, "unknown group factor");
}

QuasigroupTable direct_product(const QuasigroupTable& a, const QuasigroupTable& b,
                               const std::string& name) {
    const int na = a.order(), nb = b.order(), n = na * nb;
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int v = a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb);
            cells[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] = v;
        }
    return QuasigroupTable(n, std::move(cells), name);
}

} // namespace

GroupSpec GroupSpec::parse(std::string_view text) {
    GroupSpec spec;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t next = text.find('x', pos);
        std::string_view part =
            text.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos);
        Factor f;
        if (part == "S3") f.kind = Factor::Kind::S3;
        else if (part == "D4") f.kind = Factor::Kind::D4;
        else if (part == "Q8") f.kind = Factor::Kind::Q8;
        else if (part.size() >= 2 && (part[0] == 'Z' || part[0] == 'z')) {
            int n = 0;
            for (size_t i = 1; i < part.size(); ++i) {
                if (!std::isdigit(static_cast<unsigned char>(part[i])))
                    throw ConstructError(ConstructError::Kind::BadSpec,
                                         "bad group spec: " + std::string(text));
                n = n * 10 + (part[i] - '0');
            }
            if (n < 1 || n > 64)
                throw ConstructError(ConstructError::Kind::BadSpec,
                                     "cyclic order out of range in: " + std::string(text));
            f.n = n;
        } else {
            throw ConstructError(ConstructError::Kind::BadSpec,
                                 "bad group spec: " + std::string(text));
        }
        spec.factors.push_back(f);
        if (next == std::string_view::npos) break;
        pos = next + 1;
    }
    if (spec.factors.empty())
        throw ConstructError(ConstructError::Kind::BadSpec, "empty group spec");
    return spec;
}

std::string GroupSpec::to_string() const {
    std::string out;
    for (size_t i = 0; i < factors.size(); ++i) {
        if (i) out += 'x';
        switch (factors[i].kind) {
            case Factor::Kind::Cyclic: out += 'Z' + std::to_string(factors[i].n); break;
            case Factor::Kind::S3: out += "S3"; break;
            case Factor::Kind::D4: out += "D4"; break;
            case Factor::Kind::Q8: out += "Q8"; break;
        }
    }
    return out;
}

QuasigroupTable resolve_group(const GroupSpec& spec) {
    QuasigroupTable table = resolve_factor(spec.factors[0]);
    for (size_t i = 1; i < spec.factors.size(); ++i)
        table = direct_product(table, resolve_factor(spec.factors[i]), "");
    table.set_name(spec.to_string());
    GroupAnalysis a = analyze_group(table);
    if (!a.is_group || a.identity != 0)
        throw ConstructError(ConstructError::Kind::NotGroup,
                             "internal: constructed table failed group certification");
    return table;
}

QuasigroupTable resolve_group(std::string_view spec_text) {
    return resolve_group(GroupSpec::parse(spec_text));
}

bool is_automorphism(const QuasigroupTable& g, const Permutation& f) {
    if (f.size() != g.order()) return false;
    const int n = g.order();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (f(g.mul(x, y)) != g.mul(f(x), f(y))) return false;
    return true;
}

namespace {

std::vector<Element> closure_of(const QuasigroupTable& g, Element e,
                                const std::vector<Element>& gens) {
    const int n = g.order();
    std::vector<char> in(static_cast<size_t>(n), 0);
    std::vector<Element> work;
    auto add = [&](Element x) {
        if (!in[static_cast<size_t>(x)]) {
            in[static_cast<size_t>(x)] = 1;
            work.push_back(x);
        }
    };
    add(e);
    for (Element x : gens) add(x);
    for (size_t i = 0; i < work.size(); ++i)
        for (size_t j = 0; j < work.size(); ++j) add(g.mul(work[i], work[j]));
    std::vector<Element> out;
    for (int x = 0; x < n; ++x)
        if (in[static_cast<size_t>(x)]) out.push_back(x);
    return out;
}

int element_order(const QuasigroupTable& g, Element e, Element x) {
    int ord = 1;
    Element cur = x;
    while (cur != e) {
        cur = g.mul(cur, x);
        ++ord;
    }
    return ord;
}

} // namespace

std::vector<Permutation> enumerate_automorphisms(const QuasigroupTable& g, int max_order) {
    const int n = g.order();
    if (n > max_order)
        throw ConstructError(ConstructError::Kind::BoundExceeded,
                             "automorphism search bound exceeded (order " + std::to_string(n) +
                                 ", max " + std::to_string(max_order) + ")");
    GroupAnalysis a = analyze_group(g);
    if (!a.is_group)
        throw ConstructError(ConstructError::Kind::NotGroup, "table is not a group");
    const Element e = *a.identity;

    // greedy generating set: keep adding the smallest element outside the
    // closure so far
    std::vector<Element> gens;
    std::vector<Element> closed = closure_of(g, e, {});
    while (static_cast<int>(closed.size()) < n) {
        for (int x = 0; x < n; ++x)
            if (!std::binary_search(closed.begin(), closed.end(), x)) {
                gens.push_back(x);
                break;
            }
        closed = closure_of(g, e, gens);
    }

    std::vector<int> orders(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) orders[static_cast<size_t>(x)] = element_order(g, e, x);

    std::vector<Permutation> found;
    const size_t k = gens.size();
    std::vector<Element> images(k, 0);
    // try every image tuple whose element orders match, then grow the map by
    // multiplication and verify the homomorphism law on all pairs
    auto try_tuple = [&]() {
        std::vector<int> f(static_cast<size_t>(n), -1);
        f[static_cast<size_t>(e)] = e;
        std::vector<Element> frontier{e};
        for (size_t i = 0; i < k; ++i) {
            Element x = gens[i];
            if (f[static_cast<size_t>(x)] == -1) {
                f[static_cast<size_t>(x)] = images[i];
                frontier.push_back(x);
            } else if (f[static_cast<size_t>(x)] != images[i]) {
                return;
            }
        }
        for (size_t i = 0; i < frontier.size(); ++i) {
            Element x = frontier[i];
            for (size_t j = 0; j < k; ++j) {
                Element y = g.mul(x, gens[j]);
                Element fy = g.mul(f[static_cast<size_t>(x)], images[j]);
                if (f[static_cast<size_t>(y)] == -1) {
                    f[static_cast<size_t>(y)] = fy;
                    frontier.push_back(y);
                } else if (f[static_cast<size_t>(y)] != fy) {
                    return;
                }
            }
        }
        std::vector<char> seen(static_cast<size_t>(n), 0);
        for (int x = 0; x < n; ++x) {
            if (f[static_cast<size_t>(x)] == -1) return;
            if (seen[static_cast<size_t>(f[static_cast<size_t>(x)])]) return;
            seen[static_cast<size_t>(f[static_cast<size_t>(x)])] = 1;
        }
        Permutation perm{std::vector<int>(f.begin(), f.end())};
        if (is_automorphism(g, perm)) found.push_back(std::move(perm));
    };
    auto rec = [&](auto&& self, size_t i) -> void {
        if (i == k) {
            try_tuple();
            return;
        }
        for (int v = 0; v < n; ++v) {
            if (orders[static_cast<size_t>(v)] !=
                orders[static_cast<size_t>(gens[i])])
                continue;
            images[i] = v;
            self(self, i + 1);
        }
    };
    rec(rec, 0);
    std::sort(found.begin(), found.end(),
              [](const Permutation& a_, const Permutation& b_) { return a_ < b_; });
    return found;
}

namespace {

void require_group(const GroupAnalysis& a, bool abelian, const char* what) {
    if (!a.is_group)
        throw ConstructError(ConstructError::Kind::NotGroup,
                             std::string(what) + ": table is not a group");
    if (abelian && !a.is_abelian)
        throw ConstructError(ConstructError::Kind::NotAbelian,
                             std::string(what) + ": group is not abelian");
}

} // namespace

QuasigroupTable linear_quasigroup(const LinearSpec& spec) {
    const QuasigroupTable& g = spec.group;
    if (!is_automorphism(g, spec.phi))
        throw ConstructError(ConstructError::Kind::NotAutomorphism,
                             "phi is not an automorphism of the group", "phi");
    if (!is_automorphism(g, spec.psi))
        throw ConstructError(ConstructError::Kind::NotAutomorphism,
                             "psi is not an automorphism of the group", "psi");
    const int n = g.order();
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int v = spec.form == LinearForm::Middle
                        ? g.mul(g.mul(spec.phi(x), spec.c), spec.psi(y))
                        : g.mul(g.mul(spec.phi(x), spec.psi(y)), spec.c);
            cells[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] = v;
        }
    return QuasigroupTable(n, std::move(cells),
                           "linear(" + g.name() + ")");
}

QuasigroupTable t_quasigroup(const LinearSpec& spec) {
    require_group(analyze_group(spec.group), true, "t_quasigroup");
    QuasigroupTable q = linear_quasigroup(spec);
    q.set_name("t(" + spec.group.name() + ")");
    return q;
}

QuasigroupTable ch_quasigroup(const QuasigroupTable& g, Element d) {
    GroupAnalysis a = analyze_group(g);
    require_group(a, true, "ch_quasigroup");
    const Element e = *a.identity;
    const int n = g.order();
    std::vector<int> neg(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) neg[static_cast<size_t>(x)] = g.ldiv(x, e);
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] =
                g.mul(g.mul(neg[static_cast<size_t>(x)], neg[static_cast<size_t>(y)]), d);
    return QuasigroupTable(n, std::move(cells), "ch(" + g.name() + ")");
}

QuasigroupTable left_distributive_quasigroup(const QuasigroupTable& g, const Permutation& phi) {
    GroupAnalysis a = analyze_group(g);
    require_group(a, false, "left_distributive_quasigroup");
    if (!is_automorphism(g, phi))
        throw ConstructError(ConstructError::Kind::NotAutomorphism,
                             "phi is not an automorphism of the group", "phi");
    const Element e = *a.identity;
    const int n = g.order();
    std::vector<int> neg(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) neg[static_cast<size_t>(x)] = g.ldiv(x, e);
    // x -> x + phi(-x) must be a bijection for x*y = x + phi(-x+y) to be a
    // quasigroup
    std::vector<char> seen(static_cast<size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
        int v = g.mul(x, phi(neg[static_cast<size_t>(x)]));
        if (seen[static_cast<size_t>(v)])
            throw ConstructError(ConstructError::Kind::PsiNotBijective,
                                 "x + phi(-x) is not a permutation");
        seen[static_cast<size_t>(v)] = 1;
    }
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] =
                g.mul(x, phi(g.mul(neg[static_cast<size_t>(x)], y)));
    return QuasigroupTable(n, std::move(cells), "leftdist(" + g.name() + ")");
}

} // namespace qg
