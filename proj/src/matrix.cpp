#include "blocky/matrix.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

namespace blocky {

BooleanMatrix::BooleanMatrix(int rows, int cols)
    : rows_(rows),
      cols_(cols),
      words_per_row_(std::max(1, (cols + 63) / 64)),
      words_(static_cast<size_t>(std::max(rows, 0)) * words_per_row_, 0),
      cache_(std::make_shared<ColCache>()) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
}

BooleanMatrix BooleanMatrix::identity(int n) {
    BooleanMatrix a(n, n);
    for (int i = 0; i < n; ++i) a.set(i, i);
    return a;
}

BooleanMatrix BooleanMatrix::all_ones(int rows, int cols) {
    BooleanMatrix a(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) a.set(i, j);
    return a;
}

BooleanMatrix BooleanMatrix::from_rows(const std::vector<std::string>& rows) {
    int m = static_cast<int>(rows.size());
    int n = m == 0 ? 0 : static_cast<int>(rows[0].size());
    BooleanMatrix a(m, n);
    for (int i = 0; i < m; ++i) {
        if (static_cast<int>(rows[i].size()) != n)
            throw std::invalid_argument("ragged row in from_rows");
        for (int j = 0; j < n; ++j) {
            char c = rows[i][j];
            if (c == '1')
                a.set(i, j);
            else if (c != '0')
                throw std::invalid_argument("entry not in {0,1}");
        }
    }
    return a;
}

void BooleanMatrix::check_index(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
        throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                                ") out of range for " + std::to_string(rows_) + "x" +
                                std::to_string(cols_));
}

void BooleanMatrix::set(int i, int j, bool value) {
    check_index(i, j);
    uint64_t& w = words_[static_cast<size_t>(i) * words_per_row_ + (j >> 6)];
    if (value)
        w |= uint64_t{1} << (j & 63);
    else
        w &= ~(uint64_t{1} << (j & 63));
    if (cache_->built.load()) cache_ = std::make_shared<ColCache>();
}

long BooleanMatrix::support_size() const {
    long total = 0;
    for (uint64_t w : words_) total += std::popcount(w);
    return total;
}

IndexSet BooleanMatrix::row_nbhd(int i) const {
    if (i < 0 || i >= rows_) throw std::out_of_range("row index out of range");
    IndexSet r;
    size_t off = row_offset(i);
    for (int w = 0; w < words_per_row_; ++w) {
        uint64_t bits = words_[off + w];
        while (bits) {
            int b = std::countr_zero(bits);
            r.push_back(w * 64 + b);
            bits &= bits - 1;
        }
    }
    return r;
}

const IndexSet& BooleanMatrix::col_nbhd(int j) const {
    if (j < 0 || j >= cols_) throw std::out_of_range("column index out of range");
    std::call_once(cache_->once, [this] {
        cache_->cols.assign(cols_, {});
        for (int i = 0; i < rows_; ++i)
            for (int c : row_nbhd(i)) cache_->cols[c].push_back(i);
        cache_->built.store(true);
    });
    return cache_->cols[j];
}

int BooleanMatrix::row_count_ones(int i) const {
    int total = 0;
    size_t off = row_offset(i);
    for (int w = 0; w < words_per_row_; ++w) total += std::popcount(words_[off + w]);
    return total;
}

int BooleanMatrix::row_count_in(int i, const std::vector<uint64_t>& col_mask) const {
    int total = 0;
    size_t off = row_offset(i);
    for (int w = 0; w < words_per_row_; ++w) total += std::popcount(words_[off + w] & col_mask[w]);
    return total;
}

std::vector<uint64_t> BooleanMatrix::col_mask(const IndexSet& cols) const {
    std::vector<uint64_t> mask(words_per_row_, 0);
    for (int j : cols) {
        if (j < 0 || j >= cols_) throw std::out_of_range("column index out of range");
        mask[j >> 6] |= uint64_t{1} << (j & 63);
    }
    return mask;
}

long BooleanMatrix::support_in(const IndexSet& row_set, const IndexSet& col_set) const {
    return support_in_mask(row_set, col_mask(col_set));
}

long BooleanMatrix::support_in_mask(const IndexSet& row_set,
                                    const std::vector<uint64_t>& mask) const {
    long total = 0;
    for (int i : row_set) {
        if (i < 0 || i >= rows_) throw std::out_of_range("row index out of range");
        total += row_count_in(i, mask);
    }
    return total;
}

bool BooleanMatrix::operator==(const BooleanMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && words_ == other.words_;
}

long BlockyCover::support_size() const {
    long total = 0;
    for (const auto& b : blocks) total += b.size();
    return total;
}

bool BlockyCover::valid(int rows, int cols, std::string* why) const {
    std::vector<char> row_used(rows, 0), col_used(cols, 0);
    for (size_t k = 0; k < blocks.size(); ++k) {
        const auto& b = blocks[k];
        if (b.row_set.empty() || b.col_set.empty()) {
            if (why) *why = "empty block " + std::to_string(k);
            return false;
        }
        for (int i : b.row_set) {
            if (i < 0 || i >= rows) {
                if (why) *why = "row index out of range in block " + std::to_string(k);
                return false;
            }
            if (row_used[i]) {
                if (why) *why = "row " + std::to_string(i) + " reused in block " + std::to_string(k);
                return false;
            }
            row_used[i] = 1;
        }
        for (int j : b.col_set) {
            if (j < 0 || j >= cols) {
                if (why) *why = "column index out of range in block " + std::to_string(k);
                return false;
            }
            if (col_used[j]) {
                if (why)
                    *why = "column " + std::to_string(j) + " reused in block " + std::to_string(k);
                return false;
            }
            col_used[j] = 1;
        }
    }
    return true;
}

BooleanMatrix BlockyCover::indicator(int rows, int cols) const {
    BooleanMatrix a(rows, cols);
    for (const auto& b : blocks)
        for (int i : b.row_set)
            for (int j : b.col_set) a.set(i, j);
    return a;
}

Restriction restrict(const BooleanMatrix& a, const IndexSet& row_set, const IndexSet& col_set) {
    Restriction r;
    r.row_map = row_set;
    r.col_map = col_set;
    r.matrix = BooleanMatrix(static_cast<int>(row_set.size()), static_cast<int>(col_set.size()));
    for (size_t i = 0; i < row_set.size(); ++i)
        for (size_t j = 0; j < col_set.size(); ++j)
            if (a.get(row_set[i], col_set[j]))
                r.matrix.set(static_cast<int>(i), static_cast<int>(j));
    return r;
}

std::optional<BlockyCover> is_blocky(const BooleanMatrix& a) {
    // Group nonzero rows by identical neighbourhood; the matrix is blocky
    // iff the distinct neighbourhoods are pairwise disjoint.
    std::map<IndexSet, IndexSet> groups;  // neighbourhood -> rows, keyed canonically
    std::vector<const IndexSet*> order;   // by first appearance (smallest row)
    for (int i = 0; i < a.rows(); ++i) {
        IndexSet r = a.row_nbhd(i);
        if (r.empty()) continue;
        auto [it, fresh] = groups.try_emplace(std::move(r));
        it->second.push_back(i);
        if (fresh) order.push_back(&it->first);
    }
    std::vector<char> col_seen(a.cols(), 0);
    for (const auto& [nbhd, rows] : groups) {
        for (int j : nbhd) {
            if (col_seen[j]) return std::nullopt;
            col_seen[j] = 1;
        }
    }
    // Order groups by smallest member row.
    std::sort(order.begin(), order.end(), [&](const IndexSet* x, const IndexSet* y) {
        return groups.at(*x).front() < groups.at(*y).front();
    });
    BlockyCover cover;
    for (const IndexSet* nbhd : order) cover.blocks.push_back({groups.at(*nbhd), *nbhd});
    return cover;
}

CoverCheck cover_support(const BooleanMatrix& a, const BlockyCover& cover) {
    CoverCheck res;
    for (const auto& b : cover.blocks) {
        res.support += b.size();
        for (int i : b.row_set)
            for (int j : b.col_set)
                if (!a.get(i, j) && res.subset_ok) {
                    res.subset_ok = false;
                    res.bad_row = i;
                    res.bad_col = j;
                }
    }
    return res;
}

IndexSet complement(const IndexSet& s, int n) {
    std::vector<char> in(n, 0);
    for (int i : s) in[i] = 1;
    IndexSet out;
    out.reserve(n - s.size());
    for (int i = 0; i < n; ++i)
        if (!in[i]) out.push_back(i);
    return out;
}

IndexSet full_index_set(int n) {
    IndexSet s(n);
    for (int i = 0; i < n; ++i) s[i] = i;
    return s;
}

BooleanMatrix parse_bm(std::istream& in) {
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line)) throw ParseError("missing header", 1);
    ++lineno;
    std::istringstream hdr(line);
    long m, n;
    if (!(hdr >> m >> n) || m < 0 || n < 0) throw ParseError("bad header, expected \"m n\"", lineno);
    std::string extra;
    if (hdr >> extra) throw ParseError("trailing data in header", lineno);
    BooleanMatrix a(static_cast<int>(m), static_cast<int>(n));
    for (int i = 0; i < m; ++i) {
        if (!std::getline(in, line)) throw ParseError("unexpected end of file", lineno + 1);
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (static_cast<long>(line.size()) != n)
            throw ParseError("ragged row: expected " + std::to_string(n) + " characters, got " +
                                 std::to_string(line.size()),
                             lineno);
        for (int j = 0; j < n; ++j) {
            if (line[j] == '1')
                a.set(i, j);
            else if (line[j] != '0')
                throw ParseError(std::string("invalid character '") + line[j] + "'", lineno);
        }
    }
    return a;
}

void write_bm(std::ostream& out, const BooleanMatrix& a) {
    out << a.rows() << ' ' << a.cols() << '\n';
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out << (a.get(i, j) ? '1' : '0');
        out << '\n';
    }
}

}  // namespace blocky
