#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qg/construct.hpp"
#include "qg/table.hpp"
#include "qg/term.hpp"

#include <nlohmann/json_fwd.hpp>

namespace qg {

// One identity from the catalog of isotopy-characterizing identities.
// Attribution names the mathematician the identity is usually credited to.
struct CatalogEntry {
    std::string key;
    Identity identity;
    std::string meaning;
    std::string attribution;
};

const std::vector<CatalogEntry>& catalog();
const CatalogEntry* catalog_find(std::string_view key);

// keys of the abelian-isotopy equivalence cluster / the group-isotopy pair
const std::vector<std::string>& abelian_cluster_keys();
const std::vector<std::string>& group_cluster_keys();

// {x1,x2} = R_u((R_u⁻¹x1 · L_v⁻¹x2) / L_v⁻¹(R_u⁻¹x2 · L_v⁻¹x1)), extended
// recursively on the left; the parameters (u, v) play the roles of the
// isotopy pair (a, b). Throws std::invalid_argument for fewer than 2 elements.
Element quasicommutator(const QuasigroupTable& q, Element u, Element v,
                        std::span<const Element> xs);

// ({x1..xn}/u1)*(v\x_{n+1}) = (x_{n+1}/u1)*(v\{x1..xn}) over all assignments;
// n = 1 degenerates to the abelian identity (x1/u1)*(v\x2) = (x2/u1)*(v\x1).
CheckResult check_nilpotent_isotopy(const QuasigroupTable& q, int n,
                                    long long budget = 100'000'000);

// ({x,y,..,y}/u1)*(v\y) = (y/u1)*(v\{x,y,..,y}) with n-1 copies of y; n >= 2
CheckResult check_engel_isotopy(const QuasigroupTable& q, int n);

struct DeriveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Replaces every s+t by (s/u1)*(v\t) with two fresh variables (renamed when
// the loop identity already uses them). Rejects identities containing '-'
// or '0'.
Identity derive_identity(const LoopIdentity& loop_identity);

struct IsotopyOracle {
    bool group_isotope = false;
    bool abelian_isotope = false;
    // present iff group_isotope and the isotope group is nilpotent
    std::optional<int> nilpotency_class;
};

// Brute-force oracle: analyze the principal isotope at (0,0). Any single
// principal isotope decides group/abelian isotopy and the class.
IsotopyOracle oracle_isotopy(const QuasigroupTable& q);

struct TDecomposition {
    Element a = 0, b = 0;  // isotopy parameters; the group is the isotope at (a,b)
    Permutation phi, psi;  // automorphisms of that group
    Element c = 0;
};

// Scans (a,b) lexicographically; for each abelian-group isotope extracts the
// forced candidate (phi, psi, c) of the middle linear form and verifies it.
std::optional<TDecomposition> decompose_t(const QuasigroupTable& q);
// rebuild x*y = phi(x) ∘ c ∘ psi(y) over the isotope group; equals q whenever
// the decomposition came from decompose_t(q)
QuasigroupTable reconstruct_t(const QuasigroupTable& q, const TDecomposition& dec);

enum class Verdict { Holds, Fails, BudgetExceeded };

struct EntryResult {
    Verdict verdict = Verdict::Holds;
    std::vector<std::pair<std::string, Element>> counterexample;
};

struct ClassifyOptions {
    long long budget = 100'000'000;
    int max_class = 0;      // run check_nilpotent_isotopy for n = 1..max_class
    bool decompose = false;
    std::vector<std::string> entries;  // empty = whole catalog
};

struct ClassificationReport {
    int order = 0;
    std::map<std::string, EntryResult> entries;
    IsotopyOracle oracle;
    std::map<int, EntryResult> nilpotent_isotopy;
    bool decompose_attempted = false;
    std::optional<TDecomposition> t_decomposition;
    // conjunction of the documented identity<->oracle equivalences over the
    // entries that actually ran
    bool consistent = true;
};

// Runs every selected entry independently (budget overruns are recorded, not
// fatal), then the oracle, then optional nilpotency checks and decomposition.
ClassificationReport classify(const QuasigroupTable& q, const ClassifyOptions& options = {});

nlohmann::json report_to_json(const ClassificationReport& report);

} // namespace qg
