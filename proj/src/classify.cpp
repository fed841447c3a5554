#include "qg/classify.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

namespace qg {

namespace {

std::vector<CatalogEntry> build_catalog() {
    auto entry = [](const char* key, const char* text, const char* meaning,
                    const char* attribution) {
        return CatalogEntry{key, parse_identity(text), meaning, attribution};
    };
    // u1 stands in for the customary variable u, which our grammar reserves
    // for the 0-ary constant
    return {
        entry("AB_BELOUSOV", "x\\(y*(u1\\v)) = u1\\(y*(x\\v))",
              "isotopic to an abelian group", "Belousov"),
        entry("AB_DRAPAL", "((x*y)/u1)*v = ((x*v)/u1)*y",
              "isotopic to an abelian group", "Drapal"),
        entry("AB_GLUKHOV_DIV", "((x/y)*u1)/v = ((x/v)*u1)/y",
              "isotopic to an abelian group", "Glukhov"),
        entry("AB_GLUKHOV_MUL", "x*(y\\(u1*v)) = u1*(y\\(x*v))",
              "isotopic to an abelian group", "Glukhov"),
        entry("AB_N1", "(x/u1)*(v\\y) = (y/u1)*(v\\x)",
              "isotopic to an abelian group (nilpotency chain, n = 1)", "Belousov"),
        entry("AB_SYM", "((u1/v)*x)/y = ((u1/y)*x)/v",
              "isotopic to an abelian group (mirror of Belousov's identity)", "Belousov"),
        entry("AB_T22_A", "(x/u1)*(v\\(y*z)) = ((y*(v\\x))/u1)*z",
              "isotopic to an abelian group (five variables)", "Glukhov"),
        entry("AB_T22_B", "(x/u1)*(v\\(y*(v\\z))) = (z/u1)*(v\\(y*(v\\x)))",
              "isotopic to an abelian group (five variables)", "Glukhov"),
        entry("AB_T22_C", "(x/u1)*(v\\(y*z)) = ((y*z)/u1)*(v\\x)",
              "isotopic to an abelian group (five variables)", "Glukhov"),
        entry("AB_T22_D", "x*(v\\((y/u1)*z)) = ((x*z)/u1)*(v\\y)",
              "isotopic to an abelian group (five variables)", ""),
        entry("AB_T22_E", "x*(v\\((y/u1)*(v\\z))) = (z/u1)*(v\\(x*(v\\y)))",
              "isotopic to an abelian group (five variables)", ""),
        entry("CH_COMM", "x*y = y*x", "commutativity (CH pair)", "Manin"),
        entry("CH_INV", "x*(x*y) = y", "left keys law (CH pair)", "Manin"),
        entry("GROUP_4VAR", "((x*(u1\\y))/u1)*z = x*(u1\\((y/u1)*z))",
              "isotopic to a group (four variables)", "Sokhatsky"),
        entry("GROUP_5VAR", "x*(y\\((z/u1)*v)) = ((x*(y\\z))/u1)*v",
              "isotopic to a group (five variables)", "Belousov"),
        entry("LEFT_DISTRIB", "x*(y*z) = (x*y)*(x*z)", "left distributivity", "Stein"),
        entry("MEDIAL", "(x*y)*(z*w) = (x*z)*(y*w)", "mediality", "Toyoda"),
        entry("RIGHT_DISTRIB", "(x*y)*z = (x*z)*(y*z)", "right distributivity", "Stein"),
    };
}

} // namespace

const std::vector<CatalogEntry>& catalog() {
    static const std::vector<CatalogEntry> entries = build_catalog();
    return entries;
}

const CatalogEntry* catalog_find(std::string_view key) {
    for (const CatalogEntry& e : catalog())
        if (e.key == key) return &e;
    return nullptr;
}

const std::vector<std::string>& abelian_cluster_keys() {
    static const std::vector<std::string> keys = {
        "AB_BELOUSOV", "AB_SYM",    "AB_N1",    "AB_GLUKHOV_DIV", "AB_GLUKHOV_MUL",
        "AB_DRAPAL",   "AB_T22_A",  "AB_T22_B", "AB_T22_C",       "AB_T22_D",
        "AB_T22_E",
    };
    return keys;
}

const std::vector<std::string>& group_cluster_keys() {
    static const std::vector<std::string> keys = {"GROUP_5VAR", "GROUP_4VAR"};
    return keys;
}

Element quasicommutator(const QuasigroupTable& q, Element u, Element v,
                        std::span<const Element> xs) {
    if (xs.size() < 2)
        throw std::invalid_argument("quasicommutator needs at least two elements");
    // R_u⁻¹x = x/u, L_v⁻¹x = v\x, R_u(x) = x*u
    Element acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) {
        Element x = xs[i];
        Element left = q.mul(q.rdiv(acc, u), q.ldiv(v, x));
        Element right = q.ldiv(v, q.mul(q.rdiv(x, u), q.ldiv(v, acc)));
        acc = q.mul(q.rdiv(left, right), u);
    }
    return acc;
}

namespace {

Element quasicommutator_or_single(const QuasigroupTable& q, Element u, Element v,
                                  std::span<const Element> xs) {
    return xs.size() == 1 ? xs[0] : quasicommutator(q, u, v, xs);
}

CheckResult scan_quasicommutator_identity(
    const QuasigroupTable& q, const std::vector<std::string>& names,
    const std::function<bool(const std::vector<Element>&)>& holds_at) {
    const int n_order = q.order();
    const size_t k = names.size();
    std::vector<Element> values(k, 0);
    while (true) {
        if (!holds_at(values)) {
            CheckResult res;
            res.holds = false;
            for (size_t i = 0; i < k; ++i) res.counterexample.emplace_back(names[i], values[i]);
            return res;
        }
        size_t i = k;
        while (i > 0 && values[i - 1] == n_order - 1) values[--i] = 0;
        if (i == 0) break;
        ++values[i - 1];
    }
    CheckResult res;
    res.holds = true;
    return res;
}

} // namespace

CheckResult check_nilpotent_isotopy(const QuasigroupTable& q, int n, long long budget) {
    if (n < 1) throw std::invalid_argument("class bound must be >= 1");
    const int order = q.order();
    const int k = n + 3;
    long long count = 1;
    for (int i = 0; i < k; ++i) {
        count *= order;
        if (count > budget)
            throw BudgetError(k, order, "nilpotency check exceeds the evaluation budget");
    }
    // variable order: x1..xn, u1, v, x_{n+1}
    std::vector<std::string> names;
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    names.push_back("u1");
    names.push_back("v");
    names.push_back("x" + std::to_string(n + 1));
    return scan_quasicommutator_identity(q, names, [&](const std::vector<Element>& vals) {
        std::span<const Element> xs(vals.data(), static_cast<size_t>(n));
        Element u = vals[static_cast<size_t>(n)];
        Element v = vals[static_cast<size_t>(n) + 1];
        Element last = vals[static_cast<size_t>(n) + 2];
        Element qc = quasicommutator_or_single(q, u, v, xs);
        Element lhs = q.mul(q.rdiv(qc, u), q.ldiv(v, last));
        Element rhs = q.mul(q.rdiv(last, u), q.ldiv(v, qc));
        return lhs == rhs;
    });
}

CheckResult check_engel_isotopy(const QuasigroupTable& q, int n) {
    if (n < 2) throw std::invalid_argument("engel degree must be >= 2");
    std::vector<std::string> names = {"x", "y", "u1", "v"};
    return scan_quasicommutator_identity(q, names, [&](const std::vector<Element>& vals) {
        Element x = vals[0], y = vals[1], u = vals[2], v = vals[3];
        std::vector<Element> xs(static_cast<size_t>(n), y);
        xs[0] = x;  // {x, y, ..., y} with n-1 copies of y
        Element qc = quasicommutator_or_single(q, u, v, xs);
        Element lhs = q.mul(q.rdiv(qc, u), q.ldiv(v, y));
        Element rhs = q.mul(q.rdiv(y, u), q.ldiv(v, qc));
        return lhs == rhs;
    });
}

namespace {

std::string fresh_name(const std::string& base, const std::vector<std::string>& taken,
                       bool number_from_one) {
    if (!number_from_one &&
        std::find(taken.begin(), taken.end(), base) == taken.end())
        return base;
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (std::find(taken.begin(), taken.end(), cand) == taken.end()) return cand;
    }
}

TermPtr derive_term(const LoopTermPtr& t, const std::string& uvar, const std::string& vvar) {
    switch (t->kind) {
        case LoopTerm::Kind::Var: return Term::variable(t->var);
        case LoopTerm::Kind::Zero:
            throw DeriveError("loop identity uses '0'; only '+' is supported");
        case LoopTerm::Kind::Neg:
            throw DeriveError("loop identity uses '-'; only '+' is supported");
        case LoopTerm::Kind::Plus: {
            TermPtr l = derive_term(t->left, uvar, vvar);
            TermPtr r = derive_term(t->right, uvar, vvar);
            // s+t  ->  (s/u1)*(v\t)
            return Term::binary(Op::Mul,
                                Term::binary(Op::RDiv, std::move(l), Term::variable(uvar)),
                                Term::binary(Op::LDiv, Term::variable(vvar), std::move(r)));
        }
    }
    throw DeriveError("malformed loop term");
}

} // namespace

Identity derive_identity(const LoopIdentity& loop_identity) {
    // the customary names are u (spelled u1 here) and v; renumber on collision
    std::string uvar = fresh_name("u", loop_identity.variables, true);
    std::string vvar = fresh_name("v", loop_identity.variables, false);
    return make_identity(derive_term(loop_identity.lhs, uvar, vvar),
                         derive_term(loop_identity.rhs, uvar, vvar));
}

IsotopyOracle oracle_isotopy(const QuasigroupTable& q) {
    GroupAnalysis a = analyze_group(q.principal_isotope(0, 0));
    IsotopyOracle o;
    o.group_isotope = a.is_group;
    o.abelian_isotope = a.is_group && a.is_abelian;
    o.nilpotency_class = a.nilpotency_class;
    return o;
}

std::optional<TDecomposition> decompose_t(const QuasigroupTable& q) {
    const int n = q.order();
    for (Element a = 0; a < n; ++a) {
        for (Element b = 0; b < n; ++b) {
            QuasigroupTable loop = q.principal_isotope(a, b);
            GroupAnalysis ga = analyze_group(loop);
            if (!ga.is_group || !ga.is_abelian) continue;
            const Element e = *ga.identity;  // = b*a
            // forced middle-form candidate: c = e*e, phi(x) = (x*e) - c,
            // psi(y) = -c + (e*y), all in the isotope group
            Element c = q.mul(e, e);
            Element neg_c = loop.ldiv(c, e);
            std::vector<int> phi_im(static_cast<size_t>(n)), psi_im(static_cast<size_t>(n));
            for (int x = 0; x < n; ++x) {
                phi_im[static_cast<size_t>(x)] = loop.mul(q.mul(x, e), neg_c);
                psi_im[static_cast<size_t>(x)] = loop.mul(neg_c, q.mul(e, x));
            }
            std::vector<char> seen(static_cast<size_t>(n), 0);
            bool bijective = true;
            for (int x = 0; x < n && bijective; ++x) {
                int v = phi_im[static_cast<size_t>(x)];
                if (seen[static_cast<size_t>(v)]) bijective = false;
                seen[static_cast<size_t>(v)] = 1;
            }
            if (!bijective) continue;
            Permutation phi{phi_im};
            std::fill(seen.begin(), seen.end(), 0);
            for (int x = 0; x < n && bijective; ++x) {
                int v = psi_im[static_cast<size_t>(x)];
                if (seen[static_cast<size_t>(v)]) bijective = false;
                seen[static_cast<size_t>(v)] = 1;
            }
            if (!bijective) continue;
            Permutation psi{psi_im};
            if (!is_automorphism(loop, phi) || !is_automorphism(loop, psi)) continue;
            bool ok = true;
            for (int x = 0; x < n && ok; ++x)
                for (int y = 0; y < n && ok; ++y)
                    ok = q.mul(x, y) == loop.mul(loop.mul(phi(x), c), psi(y));
            if (!ok) continue;
            return TDecomposition{a, b, phi, psi, c};
        }
    }
    return std::nullopt;
}

QuasigroupTable reconstruct_t(const QuasigroupTable& q, const TDecomposition& dec) {
    QuasigroupTable loop = q.principal_isotope(dec.a, dec.b);
    LinearSpec spec{loop, dec.phi, dec.psi, dec.c, LinearForm::Middle};
    return linear_quasigroup(spec);
}

namespace {

EntryResult run_entry(const QuasigroupTable& q, const Identity& id, long long budget) {
    EntryResult r;
    try {
        CheckResult res = check_identity(q, id, budget);
        r.verdict = res.holds ? Verdict::Holds : Verdict::Fails;
        r.counterexample = std::move(res.counterexample);
    } catch (const BudgetError&) {
        r.verdict = Verdict::BudgetExceeded;
    }
    return r;
}

bool entry_matches(const std::map<std::string, EntryResult>& entries, const std::string& key,
                   bool expected, bool& consistent) {
    auto it = entries.find(key);
    if (it == entries.end() || it->second.verdict == Verdict::BudgetExceeded) return false;
    if ((it->second.verdict == Verdict::Holds) != expected) consistent = false;
    return true;
}

} // namespace

ClassificationReport classify(const QuasigroupTable& q, const ClassifyOptions& options) {
    ClassificationReport report;
    report.order = q.order();

    // five-variable entries over order six are the worst case the catalog
    // needs; never let a smaller user budget starve them
    const long long budget = std::max<long long>(options.budget, 7776);

    for (const CatalogEntry& entry : catalog()) {
        if (!options.entries.empty() &&
            std::find(options.entries.begin(), options.entries.end(), entry.key) ==
                options.entries.end())
            continue;
        report.entries[entry.key] = run_entry(q, entry.identity, budget);
    }

    report.oracle = oracle_isotopy(q);

    for (int n = 1; n <= options.max_class; ++n) {
        EntryResult r;
        try {
            CheckResult res = check_nilpotent_isotopy(q, n, budget);
            r.verdict = res.holds ? Verdict::Holds : Verdict::Fails;
            r.counterexample = std::move(res.counterexample);
        } catch (const BudgetError&) {
            r.verdict = Verdict::BudgetExceeded;
        }
        report.nilpotent_isotopy[n] = r;
    }

    if (options.decompose) {
        report.decompose_attempted = true;
        report.t_decomposition = decompose_t(q);
    }

    // the consistency flag records whether the identity verdicts agree with
    // the brute-force oracle; entries are never inferred from one another
    bool consistent = true;
    for (const std::string& key : group_cluster_keys())
        entry_matches(report.entries, key, report.oracle.group_isotope, consistent);
    for (const std::string& key : abelian_cluster_keys())
        entry_matches(report.entries, key, report.oracle.abelian_isotope, consistent);
    for (const auto& [n, res] : report.nilpotent_isotopy) {
        if (res.verdict == Verdict::BudgetExceeded) continue;
        bool expected = report.oracle.group_isotope && report.oracle.nilpotency_class &&
                        *report.oracle.nilpotency_class <= n;
        if ((res.verdict == Verdict::Holds) != expected) consistent = false;
    }
    report.consistent = consistent;
    return report;
}

namespace {

nlohmann::json entry_to_json(const EntryResult& r) {
    nlohmann::json j;
    switch (r.verdict) {
        case Verdict::Holds: j["verdict"] = "holds"; break;
        case Verdict::Fails: j["verdict"] = "fails"; break;
        case Verdict::BudgetExceeded: j["verdict"] = "budget_exceeded"; break;
    }
    if (r.verdict == Verdict::Fails) {
        nlohmann::json cex = nlohmann::json::array();
        for (const auto& [name, value] : r.counterexample)
            cex.push_back({{"var", name}, {"value", value}});
        j["counterexample"] = cex;
    }
    return j;
}

} // namespace

nlohmann::json report_to_json(const ClassificationReport& report) {
    nlohmann::json j;
    j["order"] = report.order;
    nlohmann::json entries = nlohmann::json::object();
    for (const auto& [key, res] : report.entries) entries[key] = entry_to_json(res);
    j["entries"] = entries;
    nlohmann::json oracle;
    oracle["group_isotope"] = report.oracle.group_isotope;
    oracle["abelian_isotope"] = report.oracle.abelian_isotope;
    if (report.oracle.nilpotency_class)
        oracle["nilpotency_class"] = *report.oracle.nilpotency_class;
    else
        oracle["nilpotency_class"] = nullptr;
    j["oracle"] = oracle;
    if (!report.nilpotent_isotopy.empty()) {
        nlohmann::json nil = nlohmann::json::object();
        for (const auto& [n, res] : report.nilpotent_isotopy)
            nil[std::to_string(n)] = entry_to_json(res);
        j["nilpotent_isotopy"] = nil;
    }
    if (report.decompose_attempted) {
        nlohmann::json dec;
        if (report.t_decomposition) {
            const TDecomposition& d = *report.t_decomposition;
            dec["found"] = true;
            dec["a"] = d.a;
            dec["b"] = d.b;
            dec["phi"] = d.phi.images();
            dec["psi"] = d.psi.images();
            dec["c"] = d.c;
        } else {
            dec["found"] = false;
        }
        j["t_decomposition"] = dec;
    }
    j["consistency"] = report.consistent;
    return j;
}

} // namespace qg
