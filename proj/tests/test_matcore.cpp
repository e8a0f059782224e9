#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "blocky/matrix.hpp"
#include "oracles.hpp"

using namespace blocky;

namespace {
BooleanMatrix lower_triangle_2() { return BooleanMatrix::from_rows({"10", "11"}); }

// Every 0/1 matrix of a given small shape, by bit index.
BooleanMatrix nth_matrix(int rows, int cols, unsigned bits) {
    return BooleanMatrix::from_fn(rows, cols,
                                  [&](int i, int j) { return (bits >> (i * cols + j)) & 1u; });
}
}  // namespace

TEST_CASE("support_size counts 1-entries") {
    CHECK(BooleanMatrix::identity(3).support_size() == 3);
    CHECK(BooleanMatrix::all_ones(2, 3).support_size() == 6);
    CHECK(lower_triangle_2().support_size() == 3);
    CHECK(BooleanMatrix(4, 5).support_size() == 0);
}

TEST_CASE("row and column neighbourhoods") {
    CHECK(BooleanMatrix::identity(3).row_nbhd(1) == IndexSet{1});
    CHECK(BooleanMatrix::all_ones(2, 3).row_nbhd(0) == IndexSet{0, 1, 2});
    CHECK(lower_triangle_2().col_nbhd(0) == IndexSet{0, 1});
    CHECK_THROWS_AS(BooleanMatrix::identity(3).row_nbhd(3), std::out_of_range);
    CHECK_THROWS_AS((void)BooleanMatrix::identity(3).get(0, -1), std::out_of_range);
}

TEST_CASE("neighbourhood sizes balance") {
    for (unsigned bits = 0; bits < 512; ++bits) {
        BooleanMatrix a = nth_matrix(3, 3, bits);
        long rows = 0, cols = 0;
        for (int i = 0; i < 3; ++i) rows += a.row_count_ones(i);
        for (int j = 0; j < 3; ++j) cols += static_cast<long>(a.col_nbhd(j).size());
        CHECK(rows == a.support_size());
        CHECK(cols == a.support_size());
    }
}

TEST_CASE("restrict produces the submatrix with index maps") {
    BooleanMatrix id3 = BooleanMatrix::identity(3);
    Restriction r = restrict(id3, {0, 1}, {0, 1});
    CHECK(r.matrix == BooleanMatrix::identity(2));
    CHECK(r.row_map == IndexSet{0, 1});

    Restriction full = restrict(id3, full_index_set(3), full_index_set(3));
    CHECK(full.matrix == id3);

    Restriction one = restrict(lower_triangle_2(), {1}, {0, 1});
    CHECK(one.matrix == BooleanMatrix::all_ones(1, 2));

    Restriction empty = restrict(id3, {}, {0, 2});
    CHECK(empty.matrix.rows() == 0);
    CHECK(empty.matrix.support_size() == 0);
}

TEST_CASE("restrict composes") {
    BooleanMatrix a = BooleanMatrix::from_rows({"10110", "01011", "11100", "00101"});
    Restriction outer = restrict(a, {0, 2, 3}, {1, 2, 3, 4});
    Restriction inner = restrict(outer.matrix, {1, 2}, {0, 3});
    IndexSet rows, cols;
    for (int i : IndexSet{1, 2}) rows.push_back(outer.row_map[i]);
    for (int j : IndexSet{0, 3}) cols.push_back(outer.col_map[j]);
    CHECK(inner.matrix == restrict(a, rows, cols).matrix);
}

TEST_CASE("is_blocky recognizes the canonical cases") {
    auto id_cover = is_blocky(BooleanMatrix::identity(3));
    REQUIRE(id_cover.has_value());
    REQUIRE(id_cover->blocks.size() == 3);
    for (int k = 0; k < 3; ++k) {
        CHECK(id_cover->blocks[k].row_set == IndexSet{k});
        CHECK(id_cover->blocks[k].col_set == IndexSet{k});
    }

    CHECK_FALSE(is_blocky(lower_triangle_2()).has_value());

    auto zero_cover = is_blocky(BooleanMatrix(3, 4));
    REQUIRE(zero_cover.has_value());
    CHECK(zero_cover->blocks.empty());

    auto ones = is_blocky(BooleanMatrix::all_ones(2, 2));
    REQUIRE(ones.has_value());
    CHECK(ones->support_size() == 4);
}

TEST_CASE("is_blocky agrees with threshold dimension <= 1 on all 3x3 and 2x4") {
    for (unsigned bits = 0; bits < 512; ++bits) {
        BooleanMatrix a = nth_matrix(3, 3, bits);
        CHECK(is_blocky(a).has_value() == (oracles::threshold_dimension(a) <= 1));
    }
    for (unsigned bits = 0; bits < 256; ++bits) {
        BooleanMatrix a = nth_matrix(2, 4, bits);
        CHECK(is_blocky(a).has_value() == (oracles::threshold_dimension(a) <= 1));
    }
}

TEST_CASE("cover_support counts and checks the subset property") {
    BooleanMatrix id3 = BooleanMatrix::identity(3);
    CoverCheck c = cover_support(id3, *is_blocky(id3));
    CHECK(c.support == 3);
    CHECK(c.subset_ok);

    BlockyCover full{{Rectangle{{0, 1}, {0, 1}}}};
    CoverCheck c2 = cover_support(BooleanMatrix::all_ones(2, 2), full);
    CHECK(c2.support == 4);
    CHECK(c2.subset_ok);

    BlockyCover bad{{Rectangle{{0}, {0, 1}}}};
    CoverCheck c3 = cover_support(lower_triangle_2(), bad);
    CHECK_FALSE(c3.subset_ok);
    CHECK(c3.bad_row == 0);
    CHECK(c3.bad_col == 1);
}

TEST_CASE("cover validity and the indicator round trip") {
    BlockyCover cover{{Rectangle{{0, 2}, {1}}, Rectangle{{1}, {0, 3}}}};
    CHECK(cover.valid(3, 4));
    CHECK(cover.support_size() == 4);
    CHECK(cover.indicator(3, 4).support_size() == cover.support_size());

    BlockyCover overlap{{Rectangle{{0}, {1}}, Rectangle{{0}, {2}}}};
    CHECK_FALSE(overlap.valid(3, 4));  // rows shared between blocks
    BlockyCover out_of_range{{Rectangle{{5}, {0}}}};
    CHECK_FALSE(out_of_range.valid(3, 4));
}

TEST_CASE("bm format round trip and error reporting") {
    BooleanMatrix a = BooleanMatrix::from_rows({"0101", "1110", "0000"});
    std::ostringstream out;
    write_bm(out, a);
    std::istringstream in(out.str());
    CHECK(parse_bm(in) == a);

    std::istringstream ragged("2 3\n010\n01\n");
    try {
        parse_bm(ragged);
        FAIL("ragged row accepted");
    } catch (const ParseError& e) {
        CHECK(e.line() == 3);
    }

    std::istringstream badchar("1 2\n0x\n");
    CHECK_THROWS_AS(parse_bm(badchar), ParseError);
    std::istringstream truncated("2 2\n01\n");
    CHECK_THROWS_AS(parse_bm(truncated), ParseError);
}

TEST_CASE("complement and full_index_set") {
    CHECK(complement({1, 3}, 5) == IndexSet{0, 2, 4});
    CHECK(complement({}, 3) == IndexSet{0, 1, 2});
    CHECK(full_index_set(0).empty());
}
