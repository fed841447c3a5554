#include "qg/freewords.hpp"

#include <algorithm>

#include "qg/construct.hpp"

namespace qg {

AutLetter inverse_letter(AutLetter l) {
    switch (l) {
        case AutLetter::Alpha: return AutLetter::AlphaInv;
        case AutLetter::AlphaInv: return AutLetter::Alpha;
        case AutLetter::Beta: return AutLetter::BetaInv;
        case AutLetter::BetaInv: return AutLetter::Beta;
    }
    return AutLetter::Alpha;
}

char letter_base(AutLetter l) {
    return (l == AutLetter::Alpha || l == AutLetter::AlphaInv) ? 'a' : 'b';
}

bool letter_inverted(AutLetter l) {
    return l == AutLetter::AlphaInv || l == AutLetter::BetaInv;
}

ReducedGroupWord ReducedGroupWord::reduce(WordMode mode, std::span<const AutLetter> raw) {
    ReducedGroupWord w;
    w.mode = mode;
    if (mode == WordMode::FreeT) {
        // stack cancellation of adjacent γγ⁻¹ pairs; free reduction is
        // confluent so this is the unique reduced word
        for (AutLetter l : raw) {
            if (!w.letters.empty() && w.letters.back() == inverse_letter(l))
                w.letters.pop_back();
            else
                w.letters.push_back(l);
        }
    } else {
        for (AutLetter l : raw) {
            long long d = letter_inverted(l) ? -1 : 1;
            if (letter_base(l) == 'a') w.alpha += d;
            else w.beta += d;
        }
    }
    return w;
}

ReducedGroupWord ReducedGroupWord::empty(WordMode mode) {
    ReducedGroupWord w;
    w.mode = mode;
    return w;
}

bool ReducedGroupWord::is_empty() const {
    return mode == WordMode::FreeT ? letters.empty() : (alpha == 0 && beta == 0);
}

std::string ReducedGroupWord::display() const {
    std::string out;
    auto emit = [&](char base, bool inverted, long long count) {
        for (long long i = 0; i < count; ++i) {
            out += base;
            if (inverted) out += '\'';
        }
    };
    if (mode == WordMode::FreeT) {
        for (AutLetter l : letters) emit(letter_base(l), letter_inverted(l), 1);
    } else {
        emit('a', alpha < 0, alpha < 0 ? -alpha : alpha);
        emit('b', beta < 0, beta < 0 ? -beta : beta);
    }
    return out;
}

std::strong_ordering ReducedGroupWord::operator<=>(const ReducedGroupWord& o) const {
    if (mode != o.mode) return mode <=> o.mode;
    if (mode == WordMode::FreeT) {
        if (letters.size() != o.letters.size()) return letters.size() <=> o.letters.size();
        for (size_t i = 0; i < letters.size(); ++i)
            if (letters[i] != o.letters[i]) return letters[i] <=> o.letters[i];
        return std::strong_ordering::equal;
    }
    if (alpha != o.alpha) return alpha <=> o.alpha;
    return beta <=> o.beta;
}

Delta1Ptr d1_generator(std::string name) {
    auto w = std::make_shared<Delta1Word>();
    w->kind = Delta1Word::Kind::Generator;
    w->generator = std::move(name);
    return w;
}

Delta1Ptr d1_zero() {
    auto w = std::make_shared<Delta1Word>();
    w->kind = Delta1Word::Kind::Zero;
    return w;
}

Delta1Ptr d1_plus(Delta1Ptr l, Delta1Ptr r) {
    auto w = std::make_shared<Delta1Word>();
    w->kind = Delta1Word::Kind::Plus;
    w->left = std::move(l);
    w->right = std::move(r);
    return w;
}

Delta1Ptr d1_neg(Delta1Ptr inner) {
    auto w = std::make_shared<Delta1Word>();
    w->kind = Delta1Word::Kind::Neg;
    w->left = std::move(inner);
    return w;
}

Delta1Ptr d1_apply(AutLetter letter, Delta1Ptr inner) {
    auto w = std::make_shared<Delta1Word>();
    w->kind = Delta1Word::Kind::Apply;
    w->letter = letter;
    w->left = std::move(inner);
    return w;
}

std::string to_string(const Delta1Ptr& w) {
    switch (w->kind) {
        case Delta1Word::Kind::Generator: return w->generator;
        case Delta1Word::Kind::Zero: return "0";
        case Delta1Word::Kind::Plus:
            return "(" + to_string(w->left) + " + " + to_string(w->right) + ")";
        case Delta1Word::Kind::Neg: return "-" + to_string(w->left);
        case Delta1Word::Kind::Apply: {
            std::string l(1, letter_base(w->letter));
            if (letter_inverted(w->letter)) l += '\'';
            return to_string(w->left) + l;
        }
    }
    return "?";
}

std::string CanonicalWord::display() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [key, coef] : terms) {
        long long mag = coef < 0 ? -coef : coef;
        if (first) {
            if (coef < 0) out += '-';
            first = false;
        } else {
            out += coef < 0 ? " - " : " + ";
        }
        out += std::to_string(mag);
        out += "·";
        out += key.generator;
        out += '[';
        out += key.word.display();
        out += ']';
    }
    return out;
}

Delta1Ptr tau_transfer(const TermPtr& term) {
    switch (term->kind) {
        case Term::Kind::Var: return d1_generator(term->var);
        case Term::Kind::ConstU: return d1_zero();
        case Term::Kind::Bin: {
            Delta1Ptr x = tau_transfer(term->left);
            Delta1Ptr y = tau_transfer(term->right);
            switch (term->op) {
                case Op::Mul:  // xα + yβ
                    return d1_plus(d1_apply(AutLetter::Alpha, x), d1_apply(AutLetter::Beta, y));
                case Op::RDiv:  // (x - yβ)α⁻¹
                    return d1_apply(AutLetter::AlphaInv,
                                    d1_plus(x, d1_neg(d1_apply(AutLetter::Beta, y))));
                case Op::LDiv:  // (-xα + y)β⁻¹
                    return d1_apply(AutLetter::BetaInv,
                                    d1_plus(d1_neg(d1_apply(AutLetter::Alpha, x)), y));
            }
        }
    }
    return d1_zero();
}

TermPtr sigma_template(Delta1Symbol symbol) {
    const TermPtr x = Term::variable("x");
    const TermPtr y = Term::variable("y");
    const TermPtr u = Term::constant_u();
    auto mul = [](TermPtr l, TermPtr r) { return Term::binary(Op::Mul, std::move(l), std::move(r)); };
    auto rdiv = [](TermPtr l, TermPtr r) { return Term::binary(Op::RDiv, std::move(l), std::move(r)); };
    auto ldiv = [](TermPtr l, TermPtr r) { return Term::binary(Op::LDiv, std::move(l), std::move(r)); };
    switch (symbol) {
        case Delta1Symbol::Plus: return mul(rdiv(x, u), ldiv(rdiv(u, u), y));
        case Delta1Symbol::Neg: return mul(rdiv(u, u), ldiv(rdiv(x, u), u));
        case Delta1Symbol::Zero: return u;
        case Delta1Symbol::Alpha: return mul(x, ldiv(u, u));
        case Delta1Symbol::Beta: return mul(rdiv(u, u), x);
        case Delta1Symbol::AlphaInv: return rdiv(x, ldiv(u, u));
        case Delta1Symbol::BetaInv: return ldiv(rdiv(u, u), x);
    }
    throw UnknownSymbolError("unknown Δ₁ symbol");
}

namespace {

TermPtr substitute_x(const TermPtr& tpl, const TermPtr& xval, const TermPtr& yval) {
    switch (tpl->kind) {
        case Term::Kind::Var:
            if (tpl->var == "x") return xval;
            if (tpl->var == "y") return yval;
            return tpl;
        case Term::Kind::ConstU: return tpl;
        case Term::Kind::Bin:
            return Term::binary(tpl->op, substitute_x(tpl->left, xval, yval),
                                substitute_x(tpl->right, xval, yval));
    }
    return tpl;
}

Delta1Symbol letter_symbol(AutLetter l) {
    switch (l) {
        case AutLetter::Alpha: return Delta1Symbol::Alpha;
        case AutLetter::AlphaInv: return Delta1Symbol::AlphaInv;
        case AutLetter::Beta: return Delta1Symbol::Beta;
        case AutLetter::BetaInv: return Delta1Symbol::BetaInv;
    }
    return Delta1Symbol::Alpha;
}

} // namespace

TermPtr sigma_expand(const Delta1Ptr& w) {
    switch (w->kind) {
        case Delta1Word::Kind::Generator: return Term::variable(w->generator);
        case Delta1Word::Kind::Zero: return Term::constant_u();
        case Delta1Word::Kind::Plus:
            return substitute_x(sigma_template(Delta1Symbol::Plus), sigma_expand(w->left),
                                sigma_expand(w->right));
        case Delta1Word::Kind::Neg:
            return substitute_x(sigma_template(Delta1Symbol::Neg), sigma_expand(w->left), nullptr);
        case Delta1Word::Kind::Apply:
            return substitute_x(sigma_template(letter_symbol(w->letter)), sigma_expand(w->left),
                                nullptr);
    }
    return Term::constant_u();
}

namespace {

struct Atom {
    std::string generator;
    std::vector<AutLetter> letters;  // application order
    int sign;
};

// open all brackets: -(x+y) = -x-y, (x+y)γ = xγ+yγ, -(xγ) = (-x)γ, 0γ = 0.
// `carry` holds the letters applied after this subword, outermost last.
void flatten(const Delta1Ptr& w, int sign, std::vector<AutLetter>& carry,
             std::vector<Atom>& atoms) {
    switch (w->kind) {
        case Delta1Word::Kind::Generator:
            atoms.push_back(Atom{w->generator, carry, sign});
            return;
        case Delta1Word::Kind::Zero: return;
        case Delta1Word::Kind::Plus:
            flatten(w->left, sign, carry, atoms);
            flatten(w->right, sign, carry, atoms);
            return;
        case Delta1Word::Kind::Neg:
            flatten(w->left, -sign, carry, atoms);
            return;
        case Delta1Word::Kind::Apply:
            carry.insert(carry.begin(), w->letter);
            flatten(w->left, sign, carry, atoms);
            carry.erase(carry.begin());
            return;
    }
}

CanonicalWord combine(std::vector<Atom> atoms, WordMode mode) {
    CanonicalWord cw;
    cw.mode = mode;
    for (Atom& a : atoms) {
        CanonicalKey key{std::move(a.generator), ReducedGroupWord::reduce(mode, a.letters)};
        auto [it, inserted] = cw.terms.try_emplace(std::move(key), a.sign);
        if (!inserted) {
            it->second += a.sign;
            if (it->second == 0) cw.terms.erase(it);
        }
    }
    return cw;
}

} // namespace

CanonicalWord normalize(const Delta1Ptr& w, WordMode mode) {
    std::vector<Atom> atoms;
    std::vector<AutLetter> carry;
    flatten(w, 1, carry, atoms);
    return combine(std::move(atoms), mode);
}

CanonicalWord normalize_shuffled(const Delta1Ptr& w, WordMode mode, Rng& rng) {
    // distribute in a scrambled order: negation/letters pushed through Plus
    // children visited left-first or right-first at random, atoms combined in
    // a shuffled sequence
    std::vector<Atom> atoms;
    std::vector<AutLetter> carry;
    auto walk = [&](auto&& self, const Delta1Ptr& node, int sign) -> void {
        switch (node->kind) {
            case Delta1Word::Kind::Generator:
                atoms.push_back(Atom{node->generator, carry, sign});
                return;
            case Delta1Word::Kind::Zero: return;
            case Delta1Word::Kind::Plus:
                if (rng.below(2)) {
                    self(self, node->right, sign);
                    self(self, node->left, sign);
                } else {
                    self(self, node->left, sign);
                    self(self, node->right, sign);
                }
                return;
            case Delta1Word::Kind::Neg: self(self, node->left, -sign); return;
            case Delta1Word::Kind::Apply:
                carry.insert(carry.begin(), node->letter);
                self(self, node->left, sign);
                carry.erase(carry.begin());
                return;
        }
    };
    walk(walk, w, 1);
    rng.shuffle(atoms);
    return combine(std::move(atoms), mode);
}

Delta1Ptr expand(const CanonicalWord& cw) {
    Delta1Ptr sum;
    for (const auto& [key, coef] : cw.terms) {
        Delta1Ptr atom = d1_generator(key.generator);
        if (cw.mode == WordMode::FreeT) {
            for (AutLetter l : key.word.letters) atom = d1_apply(l, atom);
        } else {
            auto apply_power = [&](AutLetter pos, AutLetter neg, long long e) {
                for (long long i = 0; i < (e < 0 ? -e : e); ++i)
                    atom = d1_apply(e < 0 ? neg : pos, atom);
            };
            apply_power(AutLetter::Alpha, AutLetter::AlphaInv, key.word.alpha);
            apply_power(AutLetter::Beta, AutLetter::BetaInv, key.word.beta);
        }
        long long mag = coef < 0 ? -coef : coef;
        for (long long i = 0; i < mag; ++i) {
            Delta1Ptr item = coef < 0 ? d1_neg(atom) : atom;
            sum = sum ? d1_plus(sum, item) : item;
        }
    }
    return sum ? sum : d1_zero();
}

CanonicalWord abelianize(const CanonicalWord& cw) {
    if (cw.mode == WordMode::Medial) return cw;
    CanonicalWord out;
    out.mode = WordMode::Medial;
    for (const auto& [key, coef] : cw.terms) {
        CanonicalKey mkey{key.generator,
                          ReducedGroupWord::reduce(WordMode::Medial, key.word.letters)};
        auto [it, inserted] = out.terms.try_emplace(std::move(mkey), coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) out.terms.erase(it);
        }
    }
    return out;
}

Delta1Model Delta1Model::make(QuasigroupTable group, Permutation alpha, Permutation beta,
                              std::map<std::string, Element> assignment, WordMode mode) {
    GroupAnalysis a = analyze_group(group);
    if (!a.is_group || !a.is_abelian)
        throw ModelError("model group must be an abelian group table");
    if (!is_automorphism(group, alpha))
        throw ModelError("alpha is not an automorphism of the model group");
    if (!is_automorphism(group, beta))
        throw ModelError("beta is not an automorphism of the model group");
    if (mode == WordMode::Medial && !(alpha.then(beta) == beta.then(alpha)))
        throw ModelError("medial models need commuting automorphisms");
    return Delta1Model(std::move(group), std::move(alpha), std::move(beta),
                       std::move(assignment), *a.identity);
}

QuasigroupTable Delta1Model::quasigroup() const {
    const int n = group_.order();
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[static_cast<size_t>(x) * static_cast<size_t>(n) + static_cast<size_t>(y)] =
                group_.mul(alpha_(x), beta_(y));
    return QuasigroupTable(n, std::move(cells), "t(" + group_.name() + ")");
}

Element eval_delta1(const Delta1Ptr& w, const Delta1Model& model) {
    switch (w->kind) {
        case Delta1Word::Kind::Generator: {
            auto it = model.assignment().find(w->generator);
            if (it == model.assignment().end())
                throw EvalError(w->generator, "unbound generator: " + w->generator);
            return it->second;
        }
        case Delta1Word::Kind::Zero: return model.zero();
        case Delta1Word::Kind::Plus:
            return model.group().mul(eval_delta1(w->left, model), eval_delta1(w->right, model));
        case Delta1Word::Kind::Neg:
            return model.group().ldiv(eval_delta1(w->left, model), model.zero());
        case Delta1Word::Kind::Apply: {
            Element x = eval_delta1(w->left, model);
            switch (w->letter) {
                case AutLetter::Alpha: return model.alpha()(x);
                case AutLetter::AlphaInv: return model.alpha().inverse()(x);
                case AutLetter::Beta: return model.beta()(x);
                case AutLetter::BetaInv: return model.beta().inverse()(x);
            }
        }
    }
    return model.zero();
}

const std::vector<CertificateGroup>& certificate_groups(int max_order) {
    static std::map<int, std::vector<CertificateGroup>> cache;
    auto it = cache.find(max_order);
    if (it != cache.end()) return it->second;
    // all abelian groups of each order, cyclic first
    static const std::map<int, std::vector<const char*>> specs = {
        {2, {"Z2"}},          {3, {"Z3"}},
        {4, {"Z4", "Z2xZ2"}}, {5, {"Z5"}},
        {6, {"Z6"}},          {7, {"Z7"}},
        {8, {"Z8", "Z4xZ2", "Z2xZ2xZ2"}},
    };
    std::vector<CertificateGroup> groups;
    for (const auto& [order, names] : specs) {
        if (order > max_order) break;
        for (const char* name : names) {
            QuasigroupTable table = resolve_group(name);
            std::vector<Permutation> autos = enumerate_automorphisms(table);
            groups.push_back(CertificateGroup{std::move(table), std::move(autos)});
        }
    }
    return cache.emplace(max_order, std::move(groups)).first->second;
}

namespace {

// value of a reduced word applied to x under concrete automorphisms
Element apply_word(const ReducedGroupWord& w, const Permutation& alpha,
                   const Permutation& alpha_inv, const Permutation& beta,
                   const Permutation& beta_inv, Element x) {
    if (w.mode == WordMode::FreeT) {
        for (AutLetter l : w.letters) {
            switch (l) {
                case AutLetter::Alpha: x = alpha(x); break;
                case AutLetter::AlphaInv: x = alpha_inv(x); break;
                case AutLetter::Beta: x = beta(x); break;
                case AutLetter::BetaInv: x = beta_inv(x); break;
            }
        }
        return x;
    }
    for (long long i = 0; i < (w.alpha < 0 ? -w.alpha : w.alpha); ++i)
        x = w.alpha < 0 ? alpha_inv(x) : alpha(x);
    for (long long i = 0; i < (w.beta < 0 ? -w.beta : w.beta); ++i)
        x = w.beta < 0 ? beta_inv(x) : beta(x);
    return x;
}

} // namespace

WordsEqualResult words_equal(const TermPtr& lhs, const TermPtr& rhs, WordMode mode,
                             int max_group_order) {
    WordsEqualResult result;
    result.lhs = normalize(tau_transfer(lhs), mode);
    result.rhs = normalize(tau_transfer(rhs), mode);
    result.equal = result.lhs == result.rhs;
    if (result.equal) return result;

    // difference of the canonical forms; nonzero by construction
    CanonicalWord diff = result.lhs;
    for (const auto& [key, coef] : result.rhs.terms) {
        auto [it, inserted] = diff.terms.try_emplace(key, -coef);
        if (!inserted) {
            it->second -= coef;
            if (it->second == 0) diff.terms.erase(it);
        }
    }

    // A model separates the terms iff the difference evaluates nonzero under
    // it. The difference splits per generator, and automorphisms fix the
    // group zero, so it suffices to probe assignments with a single nonzero
    // generator: value = Σ_words c·γ(x_gen).
    std::vector<std::string> gens;
    collect_variables(lhs, gens);
    collect_variables(rhs, gens);
    std::sort(gens.begin(), gens.end());

    for (const CertificateGroup& cg : certificate_groups(max_group_order)) {
        const QuasigroupTable& group = cg.table;
        const Element zero = 0;  // builtin groups have identity 0
        for (const Permutation& alpha : cg.automorphisms) {
            Permutation alpha_inv = alpha.inverse();
            for (const Permutation& beta : cg.automorphisms) {
                if (mode == WordMode::Medial && !(alpha.then(beta) == beta.then(alpha)))
                    continue;
                Permutation beta_inv = beta.inverse();
                for (const std::string& gen : gens) {
                    for (Element e = 0; e < group.order(); ++e) {
                        Element sum = zero;
                        for (const auto& [key, coef] : diff.terms) {
                            if (key.generator != gen) continue;
                            Element val =
                                apply_word(key.word, alpha, alpha_inv, beta, beta_inv, e);
                            long long mag = coef < 0 ? -coef : coef;
                            Element signed_val =
                                coef < 0 ? group.ldiv(val, zero) : val;
                            for (long long i = 0; i < mag; ++i)
                                sum = group.mul(sum, signed_val);
                        }
                        if (sum == zero) continue;
                        // verify by direct evaluation over the T-quasigroup
                        std::map<std::string, Element> assignment;
                        for (const std::string& g2 : gens) assignment[g2] = g2 == gen ? e : zero;
                        Delta1Model model =
                            Delta1Model::make(group, alpha, beta, assignment, mode);
                        QuasigroupTable tq = model.quasigroup();
                        Element lv = eval(lhs, tq, assignment, zero);
                        Element rv = eval(rhs, tq, assignment, zero);
                        if (lv == rv) continue;
                        SeparationCertificate cert{group.name(), group,    alpha,
                                                   beta,         tq,       assignment,
                                                   lv,           rv};
                        result.certificate = std::move(cert);
                        return result;
                    }
                }
            }
        }
    }
    return result;
}

} // namespace qg
