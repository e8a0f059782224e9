#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>

#include "blocky/factor.hpp"
#include "blocky/matrix.hpp"

namespace blocky {

/// Seeded, portable draws on top of mt19937_64: raw 64-bit outputs reduced
/// by modulo, so identical seeds give identical instances everywhere.
class FamilyRng {
public:
    explicit FamilyRng(uint64_t seed) : engine_(seed) {}
    uint64_t next() { return engine_(); }
    int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }
    bool chance(int num, int den) { return below(den) < num; }
    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(static_cast<int>(i))]);
    }

private:
    std::mt19937_64 engine_;
};

struct FamilySpec {
    std::string name;  // identity | all_ones | half_graph | random_blocky |
                       // nested_blocky_difference | group_lift_random | staircase_pattern
    int m = 0, n = 0;
    int k = 0;           // group_lift_random: dimension of Z_2^k
    int d = 0;           // staircase_pattern: staircase depth
    double density = 0.5;
    uint64_t seed = 0;
};

struct GroundTruth {
    std::optional<double> gamma2_exact;
    std::optional<double> gamma2_upper;
    std::optional<double> gamma2_lower;
    std::optional<int> td;
    std::optional<int> td_upper;
};

struct FamilyInstance {
    BooleanMatrix matrix;
    std::optional<Factorization> factor;
    GroundTruth truth;
};

FamilyInstance generate(const FamilySpec& spec);

// Direct generators used by tests.
BooleanMatrix half_graph(int n);
BlockyCover random_blocky_cover(int m, int n, FamilyRng& rng);

struct NestedDifference {
    BooleanMatrix matrix;   // B1 - B2 entrywise, with supp(B2) inside B1's blocks
    BlockyCover outer, inner;
    Factorization factor;   // lambda = 2 stacking witness
};

NestedDifference nested_blocky_difference(int m, int n, uint64_t seed);

}  // namespace blocky
