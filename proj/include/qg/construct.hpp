#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "qg/table.hpp"

namespace qg {

struct ConstructError : std::runtime_error {
    enum class Kind {
        BadSpec,
        NotGroup,
        NotAbelian,
        NotAutomorphism,
        PsiNotBijective,
        BoundExceeded,
    };
    Kind kind;
    std::string which;  // "phi" / "psi" for NotAutomorphism
    ConstructError(Kind k, const std::string& msg, std::string which_ = "")
        : std::runtime_error(msg), kind(k), which(std::move(which_)) {}
};

// Group specs as written on the command line: "Z6", "Z2xZ2xZ4", "S3", "D4",
// "Q8"; direct products combine any factors by mixed-radix index encoding
// (first factor most significant). Element 0 is always the identity.
struct GroupSpec {
    struct Factor {
        enum class Kind { Cyclic, S3, D4, Q8 };
        Kind kind = Kind::Cyclic;
        int n = 1;  // Cyclic only
    };
    std::vector<Factor> factors;

    static GroupSpec parse(std::string_view text);
    std::string to_string() const;
};

// Cayley table of the spec; certified by analyze_group at construction so a
// bad encoding cannot slip through.
QuasigroupTable resolve_group(const GroupSpec& spec);
QuasigroupTable resolve_group(std::string_view spec_text);

bool is_automorphism(const QuasigroupTable& g, const Permutation& f);

// All automorphisms of a group table, sorted by image sequence. Search is by
// images of a greedily chosen generating set, so it stays cheap up to the
// bound (default order 12). Throws ConstructError(BoundExceeded) above it.
std::vector<Permutation> enumerate_automorphisms(const QuasigroupTable& g, int max_order = 12);

enum class LinearForm { Middle, Trailing };

struct LinearSpec {
    QuasigroupTable group;  // any group table; identity element may be anywhere
    Permutation phi, psi;   // must be automorphisms of the group
    Element c = 0;
    LinearForm form = LinearForm::Middle;
};

// x*y = phi(x) + c + psi(y)  (Middle), or  (phi(x) + psi(y)) + c  (Trailing)
QuasigroupTable linear_quasigroup(const LinearSpec& spec);
// linear over an abelian group; NotAbelian otherwise
QuasigroupTable t_quasigroup(const LinearSpec& spec);
// x*y = (-x - y) + d over an abelian group; commutative and x(xy)=y
QuasigroupTable ch_quasigroup(const QuasigroupTable& g, Element d);
// x*y = x + phi(-x + y); requires x -> x + phi(-x) to be a bijection
QuasigroupTable left_distributive_quasigroup(const QuasigroupTable& g, const Permutation& phi);

} // namespace qg
