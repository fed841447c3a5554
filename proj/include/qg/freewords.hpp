#pragma once

#include <compare>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qg/rng.hpp"
#include "qg/table.hpp"
#include "qg/term.hpp"

namespace qg {

// Two solved word problems share this machinery: free T-quasigroups, where
// the automorphism symbols α, β generate a free group, and free medial
// quasigroups, where they commute and a word collapses to an exponent pair.
enum class WordMode { FreeT, Medial };

enum class AutLetter : uint8_t { Alpha, AlphaInv, Beta, BetaInv };

AutLetter inverse_letter(AutLetter l);
char letter_base(AutLetter l);        // 'a' or 'b'
bool letter_inverted(AutLetter l);

// FreeT: a reduced word (no γγ⁻¹ subword) over {α, α⁻¹, β, β⁻¹}, letters in
// application order. Medial: the exponent pair of α^p β^q.
struct ReducedGroupWord {
    WordMode mode = WordMode::FreeT;
    std::vector<AutLetter> letters;       // FreeT only
    long long alpha = 0, beta = 0;        // Medial only

    static ReducedGroupWord reduce(WordMode mode, std::span<const AutLetter> raw);
    static ReducedGroupWord empty(WordMode mode);

    bool is_empty() const;
    std::string display() const;          // "aab'" style; "" for the empty word
    // FreeT orders by length then letters (a < a' < b < b'); Medial by the
    // exponent pair
    std::strong_ordering operator<=>(const ReducedGroupWord&) const;
    bool operator==(const ReducedGroupWord&) const = default;
};

// Δ₁-words: the group signature {+, -, 0} extended by the unary letters
struct Delta1Word;
using Delta1Ptr = std::shared_ptr<const Delta1Word>;

struct Delta1Word {
    enum class Kind { Generator, Zero, Plus, Neg, Apply };
    Kind kind;
    std::string generator;       // Generator
    AutLetter letter = AutLetter::Alpha;  // Apply
    Delta1Ptr left, right;       // Plus; Neg/Apply use left only
};

Delta1Ptr d1_generator(std::string name);
Delta1Ptr d1_zero();
Delta1Ptr d1_plus(Delta1Ptr l, Delta1Ptr r);
Delta1Ptr d1_neg(Delta1Ptr inner);
Delta1Ptr d1_apply(AutLetter letter, Delta1Ptr inner);
std::string to_string(const Delta1Ptr& w);

struct CanonicalKey {
    std::string generator;
    ReducedGroupWord word;
    std::strong_ordering operator<=>(const CanonicalKey&) const = default;
};

// Σ c·a·γ with reduced γ and nonzero integer coefficients; the zero word is
// the empty sum. Equality is plain association equality.
struct CanonicalWord {
    WordMode mode = WordMode::FreeT;
    std::map<CanonicalKey, long long> terms;

    bool is_zero() const { return terms.empty(); }
    std::string display() const;  // e.g. "3·x[aab'] - 1·y[]", "0" when zero
    bool operator==(const CanonicalWord&) const = default;
};

// τ: {*, /, \, u} -> Δ₁:  x*y = xα + yβ,  x/y = (x - yβ)α⁻¹,
// x\y = (-xα + y)β⁻¹,  u = 0
Delta1Ptr tau_transfer(const TermPtr& term);

enum class Delta1Symbol { Plus, Neg, Zero, Alpha, AlphaInv, Beta, BetaInv };

struct UnknownSymbolError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// σ templates over placeholder variables x (and y for +):
// σ(+) = (x/u)*((u/u)\y), σ(-) = (u/u)*((x/u)\u), σ(α) = x*(u\u),
// σ(β) = (u/u)*x, σ(α⁻¹) = x/(u\u), σ(β⁻¹) = (u/u)\x, σ(0) = u
TermPtr sigma_template(Delta1Symbol symbol);
// full σ-expansion of a Δ₁-word into an {*, /, \, u}-term
TermPtr sigma_expand(const Delta1Ptr& w);

// Canonical form: distribute - and the letters over +, reduce each letter
// word, combine like terms, drop zeros. The result does not depend on the
// distribution order.
CanonicalWord normalize(const Delta1Ptr& w, WordMode mode);
// same result, but atoms are collected and combined in an order scrambled by
// the rng; exists so confluence can be exercised directly
CanonicalWord normalize_shuffled(const Delta1Ptr& w, WordMode mode, Rng& rng);

// re-expansion of a canonical word as a Δ₁-word (coefficient-many copies)
Delta1Ptr expand(const CanonicalWord& cw);
// projection FreeT -> Medial (abelianize every key word)
CanonicalWord abelianize(const CanonicalWord& cw);

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A finite T-quasigroup model: abelian group table, automorphisms for α and
// β (commuting in Medial mode), and values for the generators.
class Delta1Model {
public:
    // validates the group/automorphism/commutation requirements
    static Delta1Model make(QuasigroupTable group, Permutation alpha, Permutation beta,
                            std::map<std::string, Element> assignment, WordMode mode);

    const QuasigroupTable& group() const { return group_; }
    const Permutation& alpha() const { return alpha_; }
    const Permutation& beta() const { return beta_; }
    const std::map<std::string, Element>& assignment() const { return assignment_; }
    Element zero() const { return zero_; }
    // the T-quasigroup x*y = alpha(x) + beta(y) carried by the model
    QuasigroupTable quasigroup() const;

private:
    Delta1Model(QuasigroupTable group, Permutation alpha, Permutation beta,
                std::map<std::string, Element> assignment, Element zero)
        : group_(std::move(group)), alpha_(std::move(alpha)), beta_(std::move(beta)),
          assignment_(std::move(assignment)), zero_(zero) {}

    QuasigroupTable group_;
    Permutation alpha_, beta_;
    std::map<std::string, Element> assignment_;
    Element zero_ = 0;
};

Element eval_delta1(const Delta1Ptr& w, const Delta1Model& model);

struct SeparationCertificate {
    std::string group_name;
    QuasigroupTable group;       // abelian group
    Permutation alpha, beta;
    QuasigroupTable quasigroup;  // x*y = alpha(x) + beta(y)
    std::map<std::string, Element> assignment;
    Element lhs_value = 0, rhs_value = 0;
};

struct WordsEqualResult {
    bool equal = false;
    CanonicalWord lhs, rhs;
    // present for unequal pairs when the model search separates them; absent
    // means "canonical forms differ" is the only evidence
    std::optional<SeparationCertificate> certificate;
};

// Decides equality by comparing canonical forms of the τ-transfers. For
// unequal pairs, searches the abelian groups of order 2..max_group_order with
// every automorphism pair (commuting pairs in Medial mode) for a model and
// assignment under which the two terms evaluate differently.
WordsEqualResult words_equal(const TermPtr& lhs, const TermPtr& rhs, WordMode mode,
                             int max_group_order = 8);

struct CertificateGroup {
    QuasigroupTable table;  // abelian, identity element 0
    std::vector<Permutation> automorphisms;
};

// the abelian groups used by the certificate search, ascending order
const std::vector<CertificateGroup>& certificate_groups(int max_order = 8);

} // namespace qg
