#pragma once

// Exact dense linear algebra over Q and GF(p).
//
// Matrices act on column vectors. Every basis returned here is derived from a
// reduced row echelon form, so results are canonical and reproducible.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "higherar/errors.hpp"

namespace higherar {

/// Characteristic 0 means the rationals; otherwise a prime below 2^31.
class FieldSpec {
public:
    FieldSpec() = default;
    static FieldSpec rationals() { return FieldSpec{}; }
    static FieldSpec prime(std::uint32_t p);

    std::uint32_t characteristic() const { return p_; }
    bool is_rational() const { return p_ == 0; }
    std::string to_string() const;

    friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

private:
    std::uint32_t p_ = 0;
};

inline constexpr std::uint32_t kDefaultPrime = 32003;

bool is_prime(std::uint64_t n);

class Scalar {
public:
    Scalar() = default;
    Scalar(FieldSpec f, std::int64_t v);
    Scalar(FieldSpec f, const mpq_class& q);

    static Scalar zero(FieldSpec f) { return Scalar(f, 0); }
    static Scalar one(FieldSpec f) { return Scalar(f, 1); }
    static Scalar random(FieldSpec f, std::mt19937_64& rng);

    const FieldSpec& field() const { return field_; }
    bool is_zero() const;
    bool is_one() const;

    /// Residue in [0, p) for prime fields.
    std::int64_t residue() const { return r_; }
    const mpq_class& rational() const;

    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar operator/(const Scalar& o) const;
    Scalar operator-() const;
    Scalar inverse() const;
    bool operator==(const Scalar& o) const;
    bool operator!=(const Scalar& o) const { return !(*this == o); }

    /// Symmetric representative for prime fields (e.g. p-1 prints as -1).
    std::string to_string() const;

private:
    FieldSpec field_;
    std::int64_t r_ = 0;
    std::optional<mpq_class> q_;
};

class Mat {
public:
    Mat() = default;
    Mat(FieldSpec f, std::size_t rows, std::size_t cols);

    static Mat identity(FieldSpec f, std::size_t n);
    static Mat from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows);
    static Mat random(FieldSpec f, std::size_t rows, std::size_t cols, std::mt19937_64& rng);
    /// Column vectors side by side; `rows` fixes the height when the list is empty.
    static Mat from_columns(FieldSpec f, std::size_t rows, const std::vector<Mat>& cols);

    const FieldSpec& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Scalar at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, const Scalar& v);
    void set_int(std::size_t i, std::size_t j, std::int64_t v);
    /// Adds c * src(i2, j2) into (i, j) without a Scalar round trip.
    void axpy_entry(std::size_t i, std::size_t j, const Scalar& c, const Mat& src, std::size_t i2, std::size_t j2);
    /// Adds (or subtracts) src(i2, j2) into (i, j).
    void accumulate(std::size_t i, std::size_t j, const Mat& src, std::size_t i2, std::size_t j2, bool negate = false);

    bool is_zero() const;
    bool operator==(const Mat& o) const;
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    Mat operator*(const Mat& o) const;
    Mat operator-() const;
    Mat scaled(const Scalar& c) const;
    Mat& operator+=(const Mat& o);

    Mat transpose() const;
    Mat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const Mat& b);
    Mat column(std::size_t j) const { return block(0, j, rows_, 1); }
    Mat select_columns(const std::vector<std::size_t>& idx) const;
    Mat select_rows(const std::vector<std::size_t>& idx) const;
    static Mat hstack(const Mat& a, const Mat& b);
    static Mat vstack(const Mat& a, const Mat& b);
    static Mat block_diag(const Mat& a, const Mat& b);

    /// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
    Mat rref(std::vector<std::size_t>* pivots = nullptr) const;
    std::size_t rank() const;
    Scalar trace() const;
    Scalar determinant() const;
    std::optional<Mat> inverse() const;
    bool is_invertible() const;
    Mat power(std::size_t e) const;

    /// Coefficients of det(xI - A), constant term first, monic.
    std::vector<Scalar> charpoly() const;

    std::string to_string() const;

private:
    template <class Arith>
    friend struct MatAccess;

    FieldSpec field_;
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int64_t> m_;
    std::vector<mpq_class> q_;
};

struct KernelImage {
    Mat kernel;  ///< columns span {v : Av = 0}
    Mat image;   ///< columns span the column space of A
    std::size_t rank = 0;
};

KernelImage kernel_image(const Mat& a);
Mat kernel_basis(const Mat& a);
/// Canonical basis of the column space (transposed nonzero rows of rref(A^T)).
Mat image_basis(const Mat& a);

/// Particular solution of AX = B with free variables zero, if one exists.
std::optional<Mat> try_solve_matrix(const Mat& a, const Mat& b);
/// As above; throws NoSolution.
Mat solve_matrix(const Mat& a, const Mat& b);

/// (A⊗B)[i*B.rows + k, j*B.cols + l] = A[i,j] * B[k,l].
Mat kronecker(const Mat& a, const Mat& b);

/// Columns of `complement` together with those of `sub` span the ambient space;
/// `complement` consists of standard basis vectors (non-pivot rows of rref(sub^T)).
Mat complement_basis(const Mat& sub, std::size_t ambient);

/// Roots in the base field of a polynomial given constant term first.
/// Over Q only roots with numerator/denominator dividing small integers are searched.
std::vector<Scalar> field_roots(const std::vector<Scalar>& poly, std::size_t max_roots = 1);

}  // namespace higherar
