#pragma once

#include <atomic>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace blocky {

// Sorted list of 0-based indices.
using IndexSet = std::vector<int>;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, int line)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

/// Dense 0/1 matrix, bit-packed by row. Treated as immutable once built;
/// column neighbourhoods are computed on first use and cached.
class BooleanMatrix {
public:
    BooleanMatrix() : BooleanMatrix(0, 0) {}
    BooleanMatrix(int rows, int cols);

    static BooleanMatrix identity(int n);
    static BooleanMatrix all_ones(int rows, int cols);
    static BooleanMatrix from_rows(const std::vector<std::string>& rows);
    template <typename Fn>
    static BooleanMatrix from_fn(int rows, int cols, Fn f) {
        BooleanMatrix a(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (f(i, j)) a.set(i, j);
        return a;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool get(int i, int j) const {
        check_index(i, j);
        return (words_[static_cast<size_t>(i) * words_per_row_ + (j >> 6)] >> (j & 63)) & 1u;
    }

    // Construction-time only; invalidates the column cache.
    void set(int i, int j, bool value = true);

    /// Number of 1-entries (the squared Frobenius norm of a 0/1 matrix).
    long support_size() const;

    /// R_i = { j : A(i,j) = 1 }
    IndexSet row_nbhd(int i) const;
    /// C_j = { i : A(i,j) = 1 }
    const IndexSet& col_nbhd(int j) const;

    int row_count_ones(int i) const;

    /// Popcount of row i restricted to a column mask (see col_mask()).
    int row_count_in(int i, const std::vector<uint64_t>& col_mask) const;

    /// Bit mask over columns for use with row_count_in.
    std::vector<uint64_t> col_mask(const IndexSet& cols) const;

    /// 1-entries of the submatrix S x T, counted in place.
    long support_in(const IndexSet& row_set, const IndexSet& col_set) const;
    long support_in_mask(const IndexSet& row_set, const std::vector<uint64_t>& col_mask) const;

    bool operator==(const BooleanMatrix& other) const;

    const std::vector<uint64_t>& row_words(int& nwords) const {
        nwords = words_per_row_;
        return words_;
    }
    size_t row_offset(int i) const { return static_cast<size_t>(i) * words_per_row_; }

private:
    void check_index(int i, int j) const;
    int rows_, cols_, words_per_row_;
    std::vector<uint64_t> words_;

    struct ColCache {
        std::once_flag once;
        std::atomic<bool> built{false};
        std::vector<IndexSet> cols;
    };
    mutable std::shared_ptr<ColCache> cache_;
};

struct Rectangle {
    IndexSet row_set;
    IndexSet col_set;
    long size() const {
        return static_cast<long>(row_set.size()) * static_cast<long>(col_set.size());
    }
};

/// Row- and column-disjoint family of rectangles.
struct BlockyCover {
    std::vector<Rectangle> blocks;

    long support_size() const;
    /// Disjointness and range checks against an m x n ambient matrix.
    bool valid(int rows, int cols, std::string* why = nullptr) const;
    /// Indicator matrix of the union of blocks.
    BooleanMatrix indicator(int rows, int cols) const;
};

struct Restriction {
    BooleanMatrix matrix;
    IndexSet row_map;  // row i of matrix is row row_map[i] of the parent
    IndexSet col_map;
};

Restriction restrict(const BooleanMatrix& a, const IndexSet& row_set, const IndexSet& col_set);

/// Canonical cover when A is blocky (rows grouped by identical nonzero
/// neighbourhood, groups ordered by smallest row index); absent otherwise.
std::optional<BlockyCover> is_blocky(const BooleanMatrix& a);

struct CoverCheck {
    long support = 0;
    bool subset_ok = true;
    int bad_row = -1, bad_col = -1;  // first covered cell that is a 0 of A
};

CoverCheck cover_support(const BooleanMatrix& a, const BlockyCover& cover);

IndexSet complement(const IndexSet& s, int n);
IndexSet full_index_set(int n);

// .bm text format: "m n" header then m lines of n characters in {0,1}.
BooleanMatrix parse_bm(std::istream& in);
void write_bm(std::ostream& out, const BooleanMatrix& a);

}  // namespace blocky
