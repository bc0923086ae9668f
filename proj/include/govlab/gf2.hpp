#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace govlab {

// Dense matrix over F_2 with at most 64 columns; row i is a bitmask.
class F2Matrix {
public:
    F2Matrix() = default;
    F2Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows), 0) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool get(int i, int j) const { return (data_[i] >> j) & 1u; }
    void set(int i, int j, bool v) {
        if (v)
            data_[i] |= (std::uint64_t{1} << j);
        else
            data_[i] &= ~(std::uint64_t{1} << j);
    }
    void flip(int i, int j) { data_[i] ^= (std::uint64_t{1} << j); }
    std::uint64_t row(int i) const { return data_[i]; }
    void set_row(int i, std::uint64_t r) { data_[i] = r; }

    int rank() const;
    // corank of a square matrix: cols - rank
    int corank() const { return cols_ - rank(); }
    bool is_alternating() const;
    F2Matrix operator+(const F2Matrix& o) const;
    bool operator==(const F2Matrix&) const = default;
    std::string str() const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint64_t> data_;
};

// Rank of a set of bit vectors.
int f2_rank(std::vector<std::uint64_t> vecs);
// Basis of {x : <row, x> = 0 for every row} in F_2^n.
std::vector<std::uint64_t> f2_kernel(const std::vector<std::uint64_t>& rows, int n);
// Reduced row-echelon basis of the span.
std::vector<std::uint64_t> f2_basis(const std::vector<std::uint64_t>& vecs);
bool f2_in_span(const std::vector<std::uint64_t>& basis, std::uint64_t v);

}  // namespace govlab
