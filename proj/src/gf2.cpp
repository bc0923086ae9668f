#include "govlab/gf2.hpp"

#include <stdexcept>

namespace govlab {

int f2_rank(std::vector<std::uint64_t> v) { return static_cast<int>(f2_basis(v).size()); }

std::vector<std::uint64_t> f2_basis(const std::vector<std::uint64_t>& vecs) {
    std::vector<std::uint64_t> basis;  // each with a distinct leading bit
    for (std::uint64_t x : vecs) {
        for (std::uint64_t b : basis) {
            std::uint64_t lead = std::uint64_t{1} << (63 - __builtin_clzll(b));
            if (x & lead) x ^= b;
        }
        if (!x) continue;
        std::uint64_t lead = std::uint64_t{1} << (63 - __builtin_clzll(x));
        for (auto& b : basis)
            if (b & lead) b ^= x;
        basis.push_back(x);
    }
    return basis;
}

bool f2_in_span(const std::vector<std::uint64_t>& basis, std::uint64_t v) {
    auto b = basis;
    std::size_t before = f2_basis(b).size();
    b.push_back(v);
    return f2_basis(b).size() == before;
}

std::vector<std::uint64_t> f2_kernel(const std::vector<std::uint64_t>& rows, int n) {
    // Gaussian elimination to RREF, then read off free variables.
    std::vector<std::uint64_t> r = rows;
    std::vector<int> pivcol;
    std::size_t rank = 0;
    for (int c = 0; c < n && rank < r.size(); ++c) {
        std::uint64_t bit = std::uint64_t{1} << c;
        std::size_t piv = rank;
        while (piv < r.size() && !(r[piv] & bit)) ++piv;
        if (piv == r.size()) continue;
        std::swap(r[piv], r[rank]);
        for (std::size_t i = 0; i < r.size(); ++i)
            if (i != rank && (r[i] & bit)) r[i] ^= r[rank];
        pivcol.push_back(c);
        ++rank;
    }
    std::uint64_t pivmask = 0;
    for (int c : pivcol) pivmask |= std::uint64_t{1} << c;
    std::vector<std::uint64_t> ker;
    for (int f = 0; f < n; ++f) {
        std::uint64_t fb = std::uint64_t{1} << f;
        if (pivmask & fb) continue;
        std::uint64_t x = fb;
        for (std::size_t i = 0; i < rank; ++i)
            if (r[i] & fb) x |= std::uint64_t{1} << pivcol[i];
        ker.push_back(x);
    }
    return ker;
}

int F2Matrix::rank() const { return f2_rank(data_); }

bool F2Matrix::is_alternating() const {
    if (rows_ != cols_) return false;
    for (int i = 0; i < rows_; ++i) {
        if (get(i, i)) return false;
        for (int j = 0; j < i; ++j)
            if (get(i, j) != get(j, i)) return false;
    }
    return true;
}

F2Matrix F2Matrix::operator+(const F2Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("F2Matrix: shape mismatch");
    F2Matrix r = *this;
    for (int i = 0; i < rows_; ++i) r.data_[i] ^= o.data_[i];
    return r;
}

std::string F2Matrix::str() const {
    std::string s;
    for (int i = 0; i < rows_; ++i) {
        if (i) s += ';';
        for (int j = 0; j < cols_; ++j) s += get(i, j) ? '1' : '0';
    }
    return s;
}

}  // namespace govlab
