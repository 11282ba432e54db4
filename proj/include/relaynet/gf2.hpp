#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace relaynet {

// Packed binary vector; bit i lives in word i/64, position i%64.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v = true) {
        std::uint64_t m = std::uint64_t{1} << (i & 63);
        if (v)
            words_[i >> 6] |= m;
        else
            words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    bool any() const {
        for (auto w : words_)
            if (w) return true;
        return false;
    }
    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    BitVector& operator^=(const BitVector& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] ^= o.words_[k];
        return *this;
    }
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::vector<std::uint64_t>& words() { return words_; }
    const std::vector<std::uint64_t>& words() const { return words_; }

    static BitVector from_bits(std::initializer_list<int> bits) {
        BitVector v(bits.size());
        std::size_t i = 0;
        for (int b : bits) v.set(i++, b != 0);
        return v;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < size_; ++i) s.push_back(get(i) ? '1' : '0');
        return s;
    }

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), bits_(rows * stride_, 0) {}

    static BitMatrix identity(std::size_t n) {
        BitMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i);
        return m;
    }

    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        BitMatrix m(r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw ArgumentError("ragged rows");
            std::size_t j = 0;
            for (int b : row) m.set(i, j++, b != 0);
            ++i;
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t stride() const { return stride_; }

    bool get(std::size_t i, std::size_t j) const {
        return (bits_[i * stride_ + (j >> 6)] >> (j & 63)) & 1U;
    }
    void set(std::size_t i, std::size_t j, bool v = true) {
        std::uint64_t m = std::uint64_t{1} << (j & 63);
        auto& w = bits_[i * stride_ + (j >> 6)];
        w = v ? (w | m) : (w & ~m);
    }

    std::uint64_t* row(std::size_t i) { return bits_.data() + i * stride_; }
    const std::uint64_t* row(std::size_t i) const { return bits_.data() + i * stride_; }

    // Copy `src` into this matrix with its top-left corner at (r0, c0).
    void paste(const BitMatrix& src, std::size_t r0, std::size_t c0) {
        if (r0 + src.rows_ > rows_ || c0 + src.cols_ > cols_)
            throw ArgumentError("paste out of bounds");
        for (std::size_t i = 0; i < src.rows_; ++i)
            for (std::size_t j = 0; j < src.cols_; ++j)
                if (src.get(i, j)) set(r0 + i, c0 + j);
    }

    BitVector operator*(const BitVector& x) const {
        if (x.size() != cols_) throw ArgumentError("matrix-vector dimension mismatch");
        BitVector y(rows_);
        const auto& xw = x.words();
        for (std::size_t i = 0; i < rows_; ++i) {
            const std::uint64_t* r = row(i);
            std::uint64_t acc = 0;
            for (std::size_t k = 0; k < stride_; ++k) acc ^= r[k] & xw[k];
            if (std::popcount(acc) & 1) y.set(i);
        }
        return y;
    }

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.bits_ == b.bits_;
    }

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s.push_back(get(i, j) ? '1' : '0');
            s.push_back('\n');
        }
        return s;
    }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> bits_;
};

// S^(q-n): ones on the (q-n)-th subdiagonal. Index 0 is the most significant level.
inline BitMatrix shift_matrix(long q, long n) {
    if (q < 0 || n < 0 || n > q) throw ArgumentError("shift_matrix requires 0 <= n <= q");
    auto uq = static_cast<std::size_t>(q);
    auto s = static_cast<std::size_t>(q - n);
    BitMatrix m(uq, uq);
    for (std::size_t i = s; i < uq; ++i) m.set(i, i - s);
    return m;
}

inline std::size_t rank(const BitMatrix& m) {
    std::size_t R = m.rows(), C = m.cols(), W = m.stride();
    if (R == 0 || C == 0) return 0;
    std::vector<std::uint64_t> a(R * W);
    for (std::size_t i = 0; i < R; ++i)
        for (std::size_t k = 0; k < W; ++k) a[i * W + k] = m.row(i)[k];

    std::size_t r = 0;
    for (std::size_t c = 0; c < C && r < R; ++c) {
        std::size_t wk = c >> 6;
        std::uint64_t bit = std::uint64_t{1} << (c & 63);
        std::size_t p = r;
        while (p < R && !(a[p * W + wk] & bit)) ++p;
        if (p == R) continue;
        if (p != r)
            for (std::size_t k = 0; k < W; ++k) std::swap(a[p * W + k], a[r * W + k]);
        for (std::size_t i = r + 1; i < R; ++i)
            if (a[i * W + wk] & bit)
                for (std::size_t k = wk; k < W; ++k) a[i * W + k] ^= a[r * W + k];
        ++r;
    }
    return r;
}

inline BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw ArgumentError("multiply: a.cols != b.rows");
    BitMatrix out(a.rows(), b.cols());
    std::size_t W = b.stride();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint64_t* o = out.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k)
            if (a.get(i, k)) {
                const std::uint64_t* br = b.row(k);
                for (std::size_t w = 0; w < W; ++w) o[w] ^= br[w];
            }
    }
    return out;
}

inline BitMatrix block_diag(const std::vector<BitMatrix>& blocks) {
    std::size_t R = 0, C = 0;
    for (const auto& b : blocks) {
        R += b.rows();
        C += b.cols();
    }
    BitMatrix out(R, C);
    std::size_t r = 0, c = 0;
    for (const auto& b : blocks) {
        out.paste(b, r, c);
        r += b.rows();
        c += b.cols();
    }
    return out;
}

template <class Gen>
BitMatrix random_bit_matrix(std::size_t rows, std::size_t cols, Gen& gen) {
    BitMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; j += 64) {
            std::uint64_t w = gen();
            std::size_t left = cols - j;
            if (left < 64) w &= (std::uint64_t{1} << left) - 1;
            m.row(i)[j >> 6] = w;
        }
    return m;
}

} // namespace relaynet
