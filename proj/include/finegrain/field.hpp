#ifndef FINEGRAIN_FIELD_HPP
#define FINEGRAIN_FIELD_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace fgr {

inline bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

/// Prime field F_p with p < 2^32, so a product of two reduced elements fits in 64 bits.
class Field {
public:
    using Elem = std::uint64_t;
    static constexpr Elem kDefaultPrime = 2147483647; // 2^31 - 1

    Field() = default;
    explicit Field(Elem p) : p_(p) {
        if (p >= (Elem{1} << 32) || !is_prime(p))
            throw PreconditionError("field modulus " + std::to_string(p) + " is not a prime below 2^32");
    }

    Elem prime() const noexcept { return p_; }

    Elem reduce(std::int64_t v) const noexcept {
        const auto p = static_cast<std::int64_t>(p_);
        std::int64_t r = v % p;
        return static_cast<Elem>(r < 0 ? r + p : r);
    }
    Elem from_uint(std::uint64_t v) const noexcept { return v % p_; }

    Elem add(Elem a, Elem b) const noexcept {
        Elem s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    Elem sub(Elem a, Elem b) const noexcept { return a >= b ? a - b : a + p_ - b; }
    Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
    Elem mul(Elem a, Elem b) const noexcept { return (a * b) % p_; }

    Elem pow(Elem base, std::uint64_t e) const noexcept {
        Elem r = 1 % p_;
        base %= p_;
        while (e) {
            if (e & 1U) r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Elem inv(Elem a) const {
        if (a % p_ == 0) throw PreconditionError("inverse of zero");
        return pow(a, p_ - 2);
    }

    friend bool operator==(const Field&, const Field&) = default;

private:
    Elem p_ = kDefaultPrime;
};

/// Dense row-major 2-D array.
template <class T>
class Array2 {
public:
    Array2() = default;
    Array2(std::size_t rows, std::size_t cols, T fill = T{}) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Array2&, const Array2&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

/// Dense 3-D array, last index fastest.
template <class T>
class Array3 {
public:
    Array3() = default;
    Array3(std::size_t d1, std::size_t d2, std::size_t d3, T fill = T{})
        : d1_(d1), d2_(d2), d3_(d3), data_(d1 * d2 * d3, fill) {}

    std::size_t d1() const noexcept { return d1_; }
    std::size_t d2() const noexcept { return d2_; }
    std::size_t d3() const noexcept { return d3_; }
    T& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * d2_ + j) * d3_ + k]; }
    const T& operator()(std::size_t i, std::size_t j, std::size_t k) const { return data_[(i * d2_ + j) * d3_ + k]; }
    std::vector<T>& data() noexcept { return data_; }
    const std::vector<T>& data() const noexcept { return data_; }

    friend bool operator==(const Array3&, const Array3&) = default;

private:
    std::size_t d1_ = 0, d2_ = 0, d3_ = 0;
    std::vector<T> data_;
};

using FieldVector = std::vector<Field::Elem>;

/// Matrix over a prime field. Entries are kept reduced into [0, p).
class FieldMatrix : public Array2<Field::Elem> {
public:
    FieldMatrix() = default;
    FieldMatrix(Field f, std::size_t rows, std::size_t cols) : Array2(rows, cols, 0), field_(f) {}

    static FieldMatrix identity(Field f, std::size_t n) {
        FieldMatrix m(f, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1 % f.prime();
        return m;
    }

    /// Builds from signed integers, reducing each into the field.
    static FieldMatrix from_rows(Field f, const std::vector<std::vector<std::int64_t>>& rows) {
        const std::size_t r = rows.size();
        const std::size_t c = r ? rows.front().size() : 0;
        FieldMatrix m(f, r, c);
        for (std::size_t i = 0; i < r; ++i) {
            if (rows[i].size() != c) throw ShapeError("ragged matrix rows");
            for (std::size_t j = 0; j < c; ++j) m(i, j) = f.reduce(rows[i][j]);
        }
        return m;
    }

    const Field& field() const noexcept { return field_; }

    /// Number of nonzero entries.
    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (auto v : data()) n += v != 0;
        return n;
    }

    FieldMatrix transpose() const {
        FieldMatrix t(field_, cols(), rows());
        for (std::size_t i = 0; i < rows(); ++i)
            for (std::size_t j = 0; j < cols(); ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

private:
    Field field_;
};

class Tensor3 : public Array3<Field::Elem> {
public:
    Tensor3() = default;
    Tensor3(Field f, std::size_t d1, std::size_t d2, std::size_t d3) : Array3(d1, d2, d3, 0), field_(f) {}

    const Field& field() const noexcept { return field_; }

    std::size_t nonzeros() const {
        std::size_t n = 0;
        for (auto v : data()) n += v != 0;
        return n;
    }

    friend bool operator==(const Tensor3&, const Tensor3&) = default;

private:
    Field field_;
};

} // namespace fgr

#endif
