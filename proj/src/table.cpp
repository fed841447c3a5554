#include "qg/table.hpp"

#include <algorithm>

#include "qg/rng.hpp"

namespace qg {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<char> seen(images_.size(), 0);
    for (int v : images_) {
        if (v < 0 || v >= static_cast<int>(images_.size()) || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("permutation images are not a bijection");
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<size_t>(i)] = i;
    return Permutation(std::move(im));
}

Permutation Permutation::inverse() const {
    std::vector<int> im(images_.size());
    for (int i = 0; i < size(); ++i) im[static_cast<size_t>(images_[static_cast<size_t>(i)])] = i;
    return Permutation(std::move(im));
}

Permutation Permutation::then(const Permutation& g) const {
    std::vector<int> im(images_.size());
    for (int i = 0; i < size(); ++i) im[static_cast<size_t>(i)] = g(images_[static_cast<size_t>(i)]);
    return Permutation(std::move(im));
}

bool Permutation::is_identity() const {
    for (int i = 0; i < size(); ++i)
        if (images_[static_cast<size_t>(i)] != i) return false;
    return true;
}

QuasigroupTable::QuasigroupTable(int order, std::vector<int> cells, std::string name)
    : order_(order), cells_(std::move(cells)), name_(std::move(name)) {
    if (order_ <= 0 || cells_.size() != static_cast<size_t>(order_) * static_cast<size_t>(order_))
        throw TableError(TableError::Kind::NonSquare, -1, -1, "table is not an n x n grid");
    const int n = order_;
    // row-major scan; the first offending cell decides the diagnostic
    std::vector<char> row_seen(static_cast<size_t>(n), 0);
    std::vector<char> col_seen(static_cast<size_t>(n) * static_cast<size_t>(n), 0);
    for (int x = 0; x < n; ++x) {
        std::fill(row_seen.begin(), row_seen.end(), 0);
        for (int y = 0; y < n; ++y) {
            int v = cells_[idx(x, y)];
            if (v < 0 || v >= n)
                throw TableError(TableError::Kind::EntryOutOfRange, x, y,
                                 "entry out of range at row " + std::to_string(x) +
                                     ", column " + std::to_string(y));
            if (row_seen[static_cast<size_t>(v)])
                throw TableError(TableError::Kind::RowDuplicate, x, y,
                                 "duplicate entry in row " + std::to_string(x));
            if (col_seen[static_cast<size_t>(y) * static_cast<size_t>(n) + static_cast<size_t>(v)])
                throw TableError(TableError::Kind::ColumnDuplicate, x, y,
                                 "duplicate entry in column " + std::to_string(y));
            row_seen[static_cast<size_t>(v)] = 1;
            col_seen[static_cast<size_t>(y) * static_cast<size_t>(n) + static_cast<size_t>(v)] = 1;
        }
    }
    ldiv_.assign(cells_.size(), 0);
    rdiv_.assign(cells_.size(), 0);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int z = cells_[idx(x, y)];
            ldiv_[idx(x, z)] = y;
            rdiv_[idx(z, y)] = x;
        }
}

QuasigroupTable QuasigroupTable::from_rows(const std::vector<std::vector<int>>& rows,
                                           std::string name) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> cells;
    cells.reserve(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) {
        if (static_cast<int>(rows[static_cast<size_t>(x)].size()) != n)
            throw TableError(TableError::Kind::NonSquare, x, -1,
                             "row " + std::to_string(x) + " has wrong length");
        for (int v : rows[static_cast<size_t>(x)]) cells.push_back(v);
    }
    return QuasigroupTable(n, std::move(cells), std::move(name));
}

Permutation QuasigroupTable::left_translation(Element b) const {
    std::vector<int> im(static_cast<size_t>(order_));
    for (int x = 0; x < order_; ++x) im[static_cast<size_t>(x)] = mul(b, x);
    return Permutation(std::move(im));
}

Permutation QuasigroupTable::right_translation(Element a) const {
    std::vector<int> im(static_cast<size_t>(order_));
    for (int x = 0; x < order_; ++x) im[static_cast<size_t>(x)] = mul(x, a);
    return Permutation(std::move(im));
}

QuasigroupTable QuasigroupTable::principal_isotope(Element a, Element b) const {
    const int n = order_;
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[idx(x, y)] = mul(rdiv(x, a), ldiv(b, y));
    return QuasigroupTable(n, std::move(cells));
}

QuasigroupTable QuasigroupTable::isotope(const Permutation& f, const Permutation& g,
                                         const Permutation& h) const {
    const int n = order_;
    Permutation hinv = h.inverse();
    std::vector<int> cells(static_cast<size_t>(n) * static_cast<size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            cells[idx(x, y)] = hinv(mul(f(x), g(y)));
    return QuasigroupTable(n, std::move(cells));
}

namespace {

// subgroup generated by seed, closed under products and conjugation by all of G
std::vector<Element> normal_closure(const QuasigroupTable& g, Element e,
                                    const std::vector<Element>& seed) {
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
    for (Element s : seed) add(s);
    std::vector<Element> inv(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) inv[static_cast<size_t>(x)] = g.ldiv(x, e);
    for (size_t i = 0; i < work.size(); ++i) {
        Element x = work[i];
        add(inv[static_cast<size_t>(x)]);
        for (size_t j = 0; j <= i; ++j) {
            add(g.mul(x, work[j]));
            add(g.mul(work[j], x));
        }
        for (int h = 0; h < n; ++h)
            add(g.mul(g.mul(h, x), inv[static_cast<size_t>(h)]));
    }
    std::vector<Element> out;
    for (int x = 0; x < n; ++x)
        if (in[static_cast<size_t>(x)]) out.push_back(x);
    return out;
}

} // namespace

GroupAnalysis analyze_group(const QuasigroupTable& q) {
    GroupAnalysis a;
    const int n = q.order();
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = q.mul(e, x) == x && q.mul(x, e) == x;
        if (ok) {
            a.is_loop = true;
            a.identity = e;
            break;
        }
    }
    if (!a.is_loop) return a;

    bool assoc = true;
    for (int x = 0; x < n && assoc; ++x)
        for (int y = 0; y < n && assoc; ++y)
            for (int z = 0; z < n && assoc; ++z)
                assoc = q.mul(q.mul(x, y), z) == q.mul(x, q.mul(y, z));
    a.is_group = assoc;
    if (!a.is_group) return a;

    a.is_abelian = true;
    for (int x = 0; x < n && a.is_abelian; ++x)
        for (int y = x + 1; y < n && a.is_abelian; ++y)
            a.is_abelian = q.mul(x, y) == q.mul(y, x);

    const Element e = *a.identity;
    std::vector<Element> inv(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) inv[static_cast<size_t>(x)] = q.ldiv(x, e);
    auto commutator = [&](Element x, Element y) {
        return q.mul(q.mul(q.mul(x, y), inv[static_cast<size_t>(x)]), inv[static_cast<size_t>(y)]);
    };

    std::vector<Element> whole(static_cast<size_t>(n));
    for (int x = 0; x < n; ++x) whole[static_cast<size_t>(x)] = x;
    a.lower_central_series.push_back(whole);
    while (true) {
        const std::vector<Element>& g_k = a.lower_central_series.back();
        std::vector<Element> comms;
        for (Element x : g_k)
            for (int y = 0; y < n; ++y) comms.push_back(commutator(x, y));
        std::vector<Element> next = normal_closure(q, e, comms);
        if (next == g_k) break;
        a.lower_central_series.push_back(std::move(next));
    }
    const std::vector<Element>& last = a.lower_central_series.back();
    if (last.size() == 1)
        a.nilpotency_class = static_cast<int>(a.lower_central_series.size()) - 1;
    return a;
}

void enumerate_latin_squares(int n,
                             const std::function<bool(const QuasigroupTable&)>& visit,
                             int max_order) {
    if (n < 1 || n > max_order)
        throw BoundError("latin square enumeration bound exceeded (n=" + std::to_string(n) +
                         ", max=" + std::to_string(max_order) + ")");
    const size_t total = static_cast<size_t>(n) * static_cast<size_t>(n);
    std::vector<int> cells(total, 0);
    std::vector<uint32_t> row_used(static_cast<size_t>(n), 0), col_used(static_cast<size_t>(n), 0);
    bool stop = false;
    // fill cells in row-major order, candidates ascending: output is the
    // row-major lexicographic enumeration
    auto rec = [&](auto&& self, size_t pos) -> void {
        if (stop) return;
        if (pos == total) {
            if (!visit(QuasigroupTable(n, cells))) stop = true;
            return;
        }
        const int r = static_cast<int>(pos) / n;
        const int c = static_cast<int>(pos) % n;
        for (int v = 0; v < n; ++v) {
            uint32_t bit = 1u << v;
            if ((row_used[static_cast<size_t>(r)] & bit) || (col_used[static_cast<size_t>(c)] & bit))
                continue;
            row_used[static_cast<size_t>(r)] |= bit;
            col_used[static_cast<size_t>(c)] |= bit;
            cells[pos] = v;
            self(self, pos + 1);
            row_used[static_cast<size_t>(r)] &= ~bit;
            col_used[static_cast<size_t>(c)] &= ~bit;
            if (stop) return;
        }
    };
    rec(rec, 0);
}

std::vector<QuasigroupTable> all_latin_squares(int n, int max_order) {
    std::vector<QuasigroupTable> out;
    enumerate_latin_squares(n, [&](const QuasigroupTable& q) {
        out.push_back(q);
        return true;
    }, max_order);
    return out;
}

QuasigroupTable random_latin_square(int n, uint64_t seed) {
    if (n < 1) throw std::invalid_argument("order must be positive");
    Rng rng(seed ^ (static_cast<uint64_t>(n) << 32));
    const size_t total = static_cast<size_t>(n) * static_cast<size_t>(n);
    // per-cell candidate orders are fixed up front so backtracking stays
    // deterministic
    std::vector<std::vector<int>> prefs(total);
    for (auto& p : prefs) {
        p.resize(static_cast<size_t>(n));
        for (int v = 0; v < n; ++v) p[static_cast<size_t>(v)] = v;
        rng.shuffle(p);
    }
    std::vector<int> cells(total, 0);
    std::vector<uint32_t> row_used(static_cast<size_t>(n), 0), col_used(static_cast<size_t>(n), 0);
    auto rec = [&](auto&& self, size_t pos) -> bool {
        if (pos == total) return true;
        const int r = static_cast<int>(pos) / n;
        const int c = static_cast<int>(pos) % n;
        for (int v : prefs[pos]) {
            uint32_t bit = 1u << v;
            if ((row_used[static_cast<size_t>(r)] & bit) || (col_used[static_cast<size_t>(c)] & bit))
                continue;
            row_used[static_cast<size_t>(r)] |= bit;
            col_used[static_cast<size_t>(c)] |= bit;
            cells[pos] = v;
            if (self(self, pos + 1)) return true;
            row_used[static_cast<size_t>(r)] &= ~bit;
            col_used[static_cast<size_t>(c)] &= ~bit;
        }
        return false;
    };
    rec(rec, 0);
    return QuasigroupTable(n, std::move(cells));
}

} // namespace qg
