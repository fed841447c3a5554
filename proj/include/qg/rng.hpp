#pragma once

#include <cstdint>
#include <vector>

namespace qg {

// splitmix64; self-contained so that seeded output is identical on every
// platform (std::shuffle / std::uniform_int_distribution are not portable).
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}

    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform-ish in [0, n); modulo bias is irrelevant at our sizes
    uint64_t below(uint64_t n) { return n ? next() % n : 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) {
            size_t j = static_cast<size_t>(below(i));
            std::swap(v[i - 1], v[j]);
        }
    }

private:
    uint64_t state_;
};

} // namespace qg
