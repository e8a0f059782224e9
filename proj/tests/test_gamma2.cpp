#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "blocky/families.hpp"
#include "blocky/gamma2.hpp"
#include "oracles.hpp"

using namespace blocky;

namespace {

GroupFunction indicator(int k, std::vector<int> points) {
    std::vector<uint8_t> values(size_t{1} << k, 0);
    for (int p : points) values[p] = 1;
    return make_group_function(k, std::move(values));
}

GroupFunction random_function(int k, uint64_t seed) {
    FamilyRng rng(seed);
    std::vector<uint8_t> values(size_t{1} << k);
    bool any = false;
    for (auto& v : values) {
        v = rng.chance(1, 2);
        any = any || v;
    }
    if (!any) values[0] = 1;
    return make_group_function(k, std::move(values));
}

}  // namespace

TEST_CASE("fast Walsh transform equals the naive transform, k <= 4") {
    for (int k = 0; k <= 4; ++k) {
        int size = 1 << k;
        // all functions for k <= 3, a seeded sample for k = 4
        int limit = k <= 3 ? (1 << size) : 0;
        for (int bits = 0; bits < limit; ++bits) {
            std::vector<uint8_t> values(size);
            for (int x = 0; x < size; ++x) values[x] = (bits >> x) & 1;
            GroupFunction f = make_group_function(k, values);
            auto naive = oracles::walsh_coeffs(k, values);
            for (int a = 0; a < size; ++a) CHECK(f.coeffs[a] == doctest::Approx(naive[a]).epsilon(1e-12));
        }
        if (k == 4) {
            for (uint64_t seed = 0; seed < 50; ++seed) {
                GroupFunction f = random_function(4, seed);
                auto naive = oracles::walsh_coeffs(4, f.values);
                for (int a = 0; a < 16; ++a)
                    CHECK(f.coeffs[a] == doctest::Approx(naive[a]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("inverse transform reproduces the function") {
    GroupFunction f = random_function(4, 13);
    int size = 1 << f.k;
    for (int x = 0; x < size; ++x) {
        double v = 0.0;
        for (int a = 0; a < size; ++a)
            v += f.coeffs[a] * (__builtin_popcount(a & x) % 2 ? -1.0 : 1.0);
        CHECK(std::abs(v - f.values[x]) < 1e-12);
    }
}

TEST_CASE("algebra norm of point masses and cosets") {
    for (int k = 1; k <= 5; ++k)
        CHECK(walsh_algebra_norm(indicator(k, {0})) == doctest::Approx(1.0));

    // cosets of subgroups of Z_2^3: a subgroup spanned by {001,010}, shifted
    CHECK(walsh_algebra_norm(indicator(3, {0, 1, 2, 3})) == doctest::Approx(1.0));
    CHECK(walsh_algebra_norm(indicator(3, {4, 5, 6, 7})) == doctest::Approx(1.0));
    CHECK(walsh_algebra_norm(indicator(3, {0, 5})) == doctest::Approx(1.0));  // coset of {0,101}

    // two-point non-coset-like value checked against the naive oracle
    GroupFunction two = indicator(3, {0, 4});
    auto naive = oracles::walsh_coeffs(3, two.values);
    double expect = 0.0;
    for (double c : naive) expect += std::abs(c);
    CHECK(walsh_algebra_norm(two) == doctest::Approx(expect));
    CHECK(expect == doctest::Approx(1.0));  // {0,100} is itself a subgroup

    GroupFunction skew = indicator(3, {0, 3, 5});
    auto naive2 = oracles::walsh_coeffs(3, skew.values);
    double expect2 = 0.0;
    for (double c : naive2) expect2 += std::abs(c);
    CHECK(walsh_algebra_norm(skew) == doctest::Approx(expect2));

    // norm dominates the maximum of |f| for nonzero f
    for (uint64_t seed = 0; seed < 20; ++seed)
        CHECK(walsh_algebra_norm(random_function(4, seed)) >= 1.0 - 1e-12);
}

TEST_CASE("group lift of the point mass is the identity") {
    GroupLift lift = group_lift(indicator(2, {0}));
    CHECK(lift.matrix == BooleanMatrix::identity(4));
    CHECK(lift.factor.lambda == doctest::Approx(1.0));
    CHECK(verify(lift.matrix, lift.factor).empty());
}

TEST_CASE("group lift of the constant function is all-ones") {
    GroupLift lift = group_lift(indicator(2, {0, 1, 2, 3}));
    CHECK(lift.matrix == BooleanMatrix::all_ones(4, 4));
    CHECK(lift.factor.lambda == doctest::Approx(1.0));
    CHECK(verify(lift.matrix, lift.factor).empty());
}

TEST_CASE("group lift reproduces random functions with exact norms") {
    for (uint64_t seed = 0; seed < 25; ++seed) {
        GroupFunction f = random_function(3, seed * 31 + 1);
        GroupLift lift = group_lift(f);
        CHECK(lift.factor.lambda == doctest::Approx(walsh_algebra_norm(f)).epsilon(1e-9));
        int size = 1 << f.k;
        for (int x = 0; x < size; ++x)
            for (int y = 0; y < size; ++y)
                CHECK(lift.matrix.get(x, y) == (f.values[x ^ y] != 0));
        CHECK(verify(lift.matrix, lift.factor).empty());
        for (int x = 0; x < size; ++x)
            CHECK(lift.factor.U.row(x).norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (int y = 0; y < size; ++y)
            CHECK(lift.factor.V.col(y).norm() ==
                  doctest::Approx(lift.factor.lambda).epsilon(1e-12));
    }
    CHECK_THROWS_AS(group_lift(GroupFunction{2, {0, 0, 0, 0}, {0, 0, 0, 0}}),
                    std::invalid_argument);
}

TEST_CASE("half-graph bound values") {
    CHECK(halfgraph_lower_bound(1) == doctest::Approx(1.0));
    CHECK(halfgraph_lower_bound(2) == doctest::Approx(0.5 + std::sqrt(2.0) / 2.0).epsilon(1e-9));
    for (int n : {1, 2, 3, 4, 7, 8, 16, 31}) {
        CHECK(halfgraph_lower_bound(n) == doctest::Approx(oracles::halfgraph_norm(n)).epsilon(1e-9));
    }
    const double pi = std::acos(-1.0);
    for (int n = 2; n <= 4096; n *= 2)
        CHECK(halfgraph_lower_bound(n) >= std::log(n) / (2.0 * pi) - 1.0);
}

TEST_CASE("ALS finds factorizations that exist and returns verified ones") {
    AlsResult id = als_factorize(BooleanMatrix::identity(8), 1.0);
    REQUIRE(id.factor.has_value());
    CHECK(verify(BooleanMatrix::identity(8), *id.factor).empty());

    GroupFunction f = random_function(3, 77);
    GroupLift lift = group_lift(f);
    AlsResult near = als_factorize(lift.matrix, lift.factor.lambda + 0.01);
    REQUIRE(near.factor.has_value());
    CHECK(verify(lift.matrix, *near.factor).empty());
}

TEST_CASE("ALS negative control: the forbidden pattern at lambda 1") {
    BooleanMatrix bad = BooleanMatrix::from_rows({"10", "11"});
    AlsResult r = als_factorize(bad, 1.0);
    CHECK_FALSE(r.factor.has_value());
    CHECK(r.best_error > 1e-7);
}

TEST_CASE("ALS is deterministic for a fixed seed") {
    BooleanMatrix a = half_graph(5);
    AlsOptions opts;
    opts.seed = 4;
    AlsResult r1 = als_factorize(a, 2.0, opts);
    AlsResult r2 = als_factorize(a, 2.0, opts);
    CHECK(r1.factor.has_value() == r2.factor.has_value());
    CHECK(r1.best_error == r2.best_error);
    if (r1.factor && r2.factor) {
        CHECK((r1.factor->U - r2.factor->U).cwiseAbs().maxCoeff() == 0.0);
        CHECK((r1.factor->V - r2.factor->V).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("group function format round trip") {
    GroupFunction f = random_function(3, 2);
    std::ostringstream out;
    write_group_function(out, f);
    std::istringstream in(out.str());
    GroupFunction back = parse_group_function(in);
    CHECK(back.k == f.k);
    CHECK(back.values == f.values);

    std::istringstream bad("2\n01x0\n");
    CHECK_THROWS(parse_group_function(bad));
    std::istringstream shortv("3\n0101\n");
    CHECK_THROWS(parse_group_function(shortv));
}
