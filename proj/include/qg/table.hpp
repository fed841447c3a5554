#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qg {

// Elements of a finite quasigroup are dense indices 0..n-1. External labels,
// if any, live in I/O code only.
using Element = int;

struct TableError : std::runtime_error {
    enum class Kind { NonSquare, EntryOutOfRange, RowDuplicate, ColumnDuplicate };
    Kind kind;
    int row = -1;
    int col = -1;
    TableError(Kind k, int r, int c, const std::string& msg)
        : std::runtime_error(msg), kind(k), row(r), col(c) {}
};

struct BoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Permutation {
public:
    Permutation() = default;
    // throws std::invalid_argument unless images is a bijection on 0..n-1
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int x) const { return images_[static_cast<size_t>(x)]; }
    const std::vector<int>& images() const { return images_; }
    Permutation inverse() const;
    // (f.then(g))(x) == g(f(x))
    Permutation then(const Permutation& g) const;
    bool is_identity() const;

    bool operator==(const Permutation&) const = default;
    bool operator<(const Permutation& o) const { return images_ < o.images_; }

private:
    std::vector<int> images_;
};

// A validated Latin square of order n together with its two division tables.
// Immutable after construction; all member functions are pure.
class QuasigroupTable {
public:
    // cells are row-major, cell(x, y) = x*y. Validation scans cells in
    // row-major order and reports the first offense (TableError).
    QuasigroupTable(int order, std::vector<int> cells, std::string name = "");
    static QuasigroupTable from_rows(const std::vector<std::vector<int>>& rows,
                                     std::string name = "");

    int order() const { return order_; }
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }
    const std::vector<int>& cells() const { return cells_; }

    Element mul(Element x, Element y) const { return cells_[idx(x, y)]; }
    // unique y with x*y == z
    Element ldiv(Element x, Element z) const { return ldiv_[idx(x, z)]; }
    // unique x with x*y == z
    Element rdiv(Element z, Element y) const { return rdiv_[idx(z, y)]; }

    Permutation left_translation(Element b) const;   // x -> b*x
    Permutation right_translation(Element a) const;  // x -> x*a

    // x∘y = R_a⁻¹(x) · L_b⁻¹(y); always a loop with identity b*a
    QuasigroupTable principal_isotope(Element a, Element b) const;
    // x∘y = h⁻¹( f(x) · g(y) )
    QuasigroupTable isotope(const Permutation& f, const Permutation& g,
                            const Permutation& h) const;

    bool operator==(const QuasigroupTable& o) const {
        return order_ == o.order_ && cells_ == o.cells_;
    }

private:
    size_t idx(Element x, Element y) const {
        return static_cast<size_t>(x) * static_cast<size_t>(order_) +
               static_cast<size_t>(y);
    }
    int order_ = 0;
    std::vector<int> cells_, ldiv_, rdiv_;
    std::string name_;
};

struct GroupAnalysis {
    bool is_loop = false;
    std::optional<Element> identity;  // present iff is_loop
    bool is_group = false;
    bool is_abelian = false;
    // present iff is_group and the group is nilpotent; class 0 only for the
    // trivial group, class 1 iff abelian and nontrivial
    std::optional<int> nilpotency_class;
    // γ₁ ⊇ γ₂ ⊇ ..., listed until the series stabilizes; empty unless a group
    std::vector<std::vector<Element>> lower_central_series;

    bool nilpotent() const { return nilpotency_class.has_value(); }
};

// Identity detection, exhaustive associativity/commutativity checks, and the
// lower central series γ_{k+1} = normal closure of {[g,h] : g∈γ_k, h∈G}.
GroupAnalysis analyze_group(const QuasigroupTable& q);

// Yields every order-n Latin square exactly once, in row-major lexicographic
// order. The visitor returns false to stop early. Throws BoundError when
// n > max_order (default 5: 161280 squares).
void enumerate_latin_squares(int n,
                             const std::function<bool(const QuasigroupTable&)>& visit,
                             int max_order = 5);
std::vector<QuasigroupTable> all_latin_squares(int n, int max_order = 5);

// Deterministic for a fixed (n, seed); backtracking with seeded per-cell
// candidate orders. Not uniform over all squares, which is fine for sampling.
QuasigroupTable random_latin_square(int n, uint64_t seed);

} // namespace qg
