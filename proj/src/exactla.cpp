#include "higherar/exactla.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <sstream>
#include <utility>

namespace higherar {

FieldSpec FieldSpec::prime(std::uint32_t p) {
    if (!is_prime(p) || p >= (1u << 31)) {
        throw FieldMismatch("characteristic " + std::to_string(p) + " is not a prime below 2^31");
    }
    FieldSpec f;
    f.p_ = p;
    return f;
}

std::string FieldSpec::to_string() const {
    return p_ == 0 ? std::string("q") : "p=" + std::to_string(p_);
}

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

namespace {

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t p) {
    std::int64_t r = 1;
    b %= p;
    while (e > 0) {
        if (e & 1) r = r * b % p;
        b = b * b % p;
        e >>= 1;
    }
    return r;
}

std::int64_t normalize(std::int64_t v, std::int64_t p) {
    v %= p;
    return v < 0 ? v + p : v;
}

struct ModArith {
    using T = std::int64_t;
    std::int64_t p;
    T zero() const { return 0; }
    T one() const { return 1; }
    T from_int(std::int64_t v) const { return normalize(v, p); }
    T add(T a, T b) const {
        T s = a + b;
        return s >= p ? s - p : s;
    }
    T sub(T a, T b) const {
        T s = a - b;
        return s < 0 ? s + p : s;
    }
    T mul(T a, T b) const { return a * b % p; }
    T neg(T a) const { return a == 0 ? 0 : p - a; }
    T inv(T a) const { return mod_pow(a, p - 2, p); }
    bool is_zero(T a) const { return a == 0; }
    // a - f*b
    T submul(T a, T f, T b) const { return sub(a, f * b % p); }
};

struct RatArith {
    using T = mpq_class;
    T zero() const { return 0; }
    T one() const { return 1; }
    T from_int(std::int64_t v) const { return mpq_class(static_cast<long>(v)); }
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T neg(const T& a) const { return -a; }
    T inv(const T& a) const { return 1 / a; }
    bool is_zero(const T& a) const { return sgn(a) == 0; }
    T submul(const T& a, const T& f, const T& b) const { return a - f * b; }
};

}  // namespace

template <class Arith>
struct MatAccess;

template <>
struct MatAccess<ModArith> {
    static std::vector<std::int64_t>& data(Mat& m) { return m.m_; }
    static const std::vector<std::int64_t>& data(const Mat& m) { return m.m_; }
};

template <>
struct MatAccess<RatArith> {
    static std::vector<mpq_class>& data(Mat& m) { return m.q_; }
    static const std::vector<mpq_class>& data(const Mat& m) { return m.q_; }
};

namespace {

template <class F>
decltype(auto) dispatch(const FieldSpec& f, F&& fn) {
    if (f.is_rational()) return fn(RatArith{});
    return fn(ModArith{static_cast<std::int64_t>(f.characteristic())});
}

template <class A>
auto& dat(Mat& m) {
    return MatAccess<A>::data(m);
}

template <class A>
const auto& dat(const Mat& m) {
    return MatAccess<A>::data(m);
}

void require_same_field(const FieldSpec& a, const FieldSpec& b) {
    if (!(a == b)) throw FieldMismatch("operands over " + a.to_string() + " and " + b.to_string());
}

// In-place rref on a row-major buffer; returns pivot columns.
template <class A>
std::vector<std::size_t> rref_inplace(const A& ar, std::vector<typename A::T>& a, std::size_t rows, std::size_t cols) {
    std::vector<std::size_t> piv;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t sel = rows;
        for (std::size_t i = r; i < rows; ++i) {
            if (!ar.is_zero(a[i * cols + c])) {
                sel = i;
                break;
            }
        }
        if (sel == rows) continue;
        if (sel != r) {
            for (std::size_t j = c; j < cols; ++j) std::swap(a[sel * cols + j], a[r * cols + j]);
        }
        auto iv = ar.inv(a[r * cols + c]);
        for (std::size_t j = c; j < cols; ++j) a[r * cols + j] = ar.mul(a[r * cols + j], iv);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r) continue;
            auto f = a[i * cols + c];
            if (ar.is_zero(f)) continue;
            for (std::size_t j = c; j < cols; ++j) {
                a[i * cols + j] = ar.submul(a[i * cols + j], f, a[r * cols + j]);
            }
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

// ---------------------------------------------------------------- Scalar

Scalar::Scalar(FieldSpec f, std::int64_t v) : field_(f) {
    if (f.is_rational()) {
        q_ = mpq_class(static_cast<long>(v));
    } else {
        r_ = normalize(v, f.characteristic());
    }
}

Scalar::Scalar(FieldSpec f, const mpq_class& q) : field_(f) {
    if (f.is_rational()) {
        q_ = q;
    } else {
        const auto p = static_cast<std::int64_t>(f.characteristic());
        mpz_class num = q.get_num() % p;
        mpz_class den = q.get_den() % p;
        if (den == 0) throw FieldMismatch("denominator divisible by the characteristic");
        std::int64_t n = normalize(num.get_si(), p);
        std::int64_t d = normalize(den.get_si(), p);
        r_ = n * mod_pow(d, p - 2, p) % p;
    }
}

Scalar Scalar::random(FieldSpec f, std::mt19937_64& rng) {
    if (f.is_rational()) {
        std::uniform_int_distribution<int> dist(-5, 5);
        return Scalar(f, dist(rng));
    }
    std::uniform_int_distribution<std::int64_t> dist(0, f.characteristic() - 1);
    return Scalar(f, dist(rng));
}

bool Scalar::is_zero() const { return field_.is_rational() ? sgn(*q_) == 0 : r_ == 0; }
bool Scalar::is_one() const { return field_.is_rational() ? *q_ == 1 : r_ == 1; }

const mpq_class& Scalar::rational() const {
    static const mpq_class zero(0);
    return q_ ? *q_ : zero;
}

Scalar Scalar::operator+(const Scalar& o) const {
    require_same_field(field_, o.field_);
    Scalar s = *this;
    if (field_.is_rational()) {
        *s.q_ += *o.q_;
    } else {
        s.r_ = (r_ + o.r_) % field_.characteristic();
    }
    return s;
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    require_same_field(field_, o.field_);
    Scalar s = *this;
    if (field_.is_rational()) {
        *s.q_ *= *o.q_;
    } else {
        s.r_ = r_ * o.r_ % field_.characteristic();
    }
    return s;
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
    Scalar s = *this;
    if (field_.is_rational()) {
        s.q_ = -*q_;
    } else {
        s.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
    }
    return s;
}

Scalar Scalar::inverse() const {
    if (is_zero()) throw NoSolution("inverse of zero");
    Scalar s = *this;
    if (field_.is_rational()) {
        s.q_ = 1 / *q_;
    } else {
        s.r_ = mod_pow(r_, field_.characteristic() - 2, field_.characteristic());
    }
    return s;
}

bool Scalar::operator==(const Scalar& o) const {
    if (!(field_ == o.field_)) return false;
    return field_.is_rational() ? *q_ == *o.q_ : r_ == o.r_;
}

std::string Scalar::to_string() const {
    if (field_.is_rational()) return q_->get_str();
    const std::int64_t p = field_.characteristic();
    return std::to_string(r_ > p / 2 ? r_ - p : r_);
}

// ---------------------------------------------------------------- Mat

Mat::Mat(FieldSpec f, std::size_t rows, std::size_t cols) : field_(f), rows_(rows), cols_(cols) {
    if (f.is_rational()) {
        q_.assign(rows * cols, mpq_class(0));
    } else {
        m_.assign(rows * cols, 0);
    }
}

Mat Mat::identity(FieldSpec f, std::size_t n) {
    Mat m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m.set_int(i, i, 1);
    return m;
}

Mat Mat::from_ints(FieldSpec f, const std::vector<std::vector<std::int64_t>>& rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.front().size();
    Mat m(f, r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw DimensionMismatch("ragged rows in from_ints");
        for (std::size_t j = 0; j < c; ++j) m.set_int(i, j, rows[i][j]);
    }
    return m;
}

Mat Mat::random(FieldSpec f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) m.set(i, j, Scalar::random(f, rng));
    }
    return m;
}

Mat Mat::from_columns(FieldSpec f, std::size_t rows, const std::vector<Mat>& cols) {
    Mat m(f, rows, cols.size());
    for (std::size_t j = 0; j < cols.size(); ++j) {
        if (cols[j].rows() != rows || cols[j].cols() != 1) throw DimensionMismatch("from_columns expects column vectors");
        m.set_block(0, j, cols[j]);
    }
    return m;
}

Scalar Mat::at(std::size_t i, std::size_t j) const {
    if (field_.is_rational()) return Scalar(field_, q_[i * cols_ + j]);
    return Scalar(field_, m_[i * cols_ + j]);
}

void Mat::set(std::size_t i, std::size_t j, const Scalar& v) {
    require_same_field(field_, v.field());
    if (field_.is_rational()) {
        q_[i * cols_ + j] = v.rational();
    } else {
        m_[i * cols_ + j] = v.residue();
    }
}

void Mat::set_int(std::size_t i, std::size_t j, std::int64_t v) {
    if (field_.is_rational()) {
        q_[i * cols_ + j] = mpq_class(static_cast<long>(v));
    } else {
        m_[i * cols_ + j] = normalize(v, field_.characteristic());
    }
}

void Mat::accumulate(std::size_t i, std::size_t j, const Mat& src, std::size_t i2, std::size_t j2, bool negate) {
    if (field_.is_rational()) {
        if (negate) {
            q_[i * cols_ + j] -= src.q_[i2 * src.cols_ + j2];
        } else {
            q_[i * cols_ + j] += src.q_[i2 * src.cols_ + j2];
        }
    } else {
        const std::int64_t p = field_.characteristic();
        std::int64_t v = src.m_[i2 * src.cols_ + j2];
        if (negate && v != 0) v = p - v;
        std::int64_t s = m_[i * cols_ + j] + v;
        m_[i * cols_ + j] = s >= p ? s - p : s;
    }
}

void Mat::axpy_entry(std::size_t i, std::size_t j, const Scalar& c, const Mat& src, std::size_t i2, std::size_t j2) {
    if (field_.is_rational()) {
        q_[i * cols_ + j] += c.rational() * src.q_[i2 * src.cols_ + j2];
    } else {
        const std::int64_t p = field_.characteristic();
        m_[i * cols_ + j] = (m_[i * cols_ + j] + c.residue() * src.m_[i2 * src.cols_ + j2]) % p;
    }
}

bool Mat::is_zero() const {
    if (field_.is_rational()) {
        return std::all_of(q_.begin(), q_.end(), [](const mpq_class& x) { return sgn(x) == 0; });
    }
    return std::all_of(m_.begin(), m_.end(), [](std::int64_t x) { return x == 0; });
}

bool Mat::operator==(const Mat& o) const {
    return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && m_ == o.m_ && q_ == o.q_;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r = *this;
    r += o;
    return r;
}

Mat& Mat::operator+=(const Mat& o) {
    require_same_field(field_, o.field_);
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionMismatch("matrix sum shape");
    dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        auto& a = dat<A>(*this);
        const auto& b = dat<A>(o);
        for (std::size_t k = 0; k < a.size(); ++k) a[k] = ar.add(a[k], b[k]);
        return 0;
    });
    return *this;
}

Mat Mat::operator-(const Mat& o) const { return *this + (-o); }

Mat Mat::operator-() const {
    Mat r = *this;
    dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        for (auto& x : dat<A>(r)) x = ar.neg(x);
        return 0;
    });
    return r;
}

Mat Mat::scaled(const Scalar& c) const {
    require_same_field(field_, c.field());
    Mat r = *this;
    if (field_.is_rational()) {
        for (auto& x : r.q_) x *= c.rational();
    } else {
        const std::int64_t p = field_.characteristic();
        for (auto& x : r.m_) x = x * c.residue() % p;
    }
    return r;
}

Mat Mat::operator*(const Mat& o) const {
    require_same_field(field_, o.field_);
    if (cols_ != o.rows_) {
        throw DimensionMismatch("product of " + std::to_string(rows_) + "x" + std::to_string(cols_) + " and " +
                                std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    }
    Mat r(field_, rows_, o.cols_);
    if (field_.is_rational()) {
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t k = 0; k < cols_; ++k) {
                const mpq_class& a = q_[i * cols_ + k];
                if (sgn(a) == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.q_[i * o.cols_ + j] += a * o.q_[k * o.cols_ + j];
            }
        }
    } else {
        const std::int64_t p = field_.characteristic();
        for (std::size_t i = 0; i < rows_; ++i) {
            std::int64_t* out = r.m_.data() + i * o.cols_;
            for (std::size_t k = 0; k < cols_; ++k) {
                const std::int64_t a = m_[i * cols_ + k];
                if (a == 0) continue;
                const std::int64_t* row = o.m_.data() + k * o.cols_;
                for (std::size_t j = 0; j < o.cols_; ++j) out[j] = (out[j] + a * row[j]) % p;
            }
        }
    }
    return r;
}

Mat Mat::transpose() const {
    Mat r(field_, cols_, rows_);
    dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        auto& out = dat<A>(r);
        const auto& in = dat<A>(*this);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) out[j * rows_ + i] = in[i * cols_ + j];
        }
        return 0;
    });
    return r;
}

Mat Mat::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw DimensionMismatch("block out of range");
    Mat r(field_, nr, nc);
    dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        auto& out = dat<A>(r);
        const auto& in = dat<A>(*this);
        for (std::size_t i = 0; i < nr; ++i) {
            for (std::size_t j = 0; j < nc; ++j) out[i * nc + j] = in[(r0 + i) * cols_ + c0 + j];
        }
        return 0;
    });
    return r;
}

void Mat::set_block(std::size_t r0, std::size_t c0, const Mat& b) {
    require_same_field(field_, b.field_);
    if (r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_) throw DimensionMismatch("set_block out of range");
    dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        auto& out = dat<A>(*this);
        const auto& in = dat<A>(b);
        for (std::size_t i = 0; i < b.rows_; ++i) {
            for (std::size_t j = 0; j < b.cols_; ++j) out[(r0 + i) * cols_ + c0 + j] = in[i * b.cols_ + j];
        }
        return 0;
    });
}

Mat Mat::select_columns(const std::vector<std::size_t>& idx) const {
    Mat r(field_, rows_, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j) r.set_block(0, j, column(idx[j]));
    return r;
}

Mat Mat::select_rows(const std::vector<std::size_t>& idx) const {
    Mat r(field_, idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i) r.set_block(i, 0, block(idx[i], 0, 1, cols_));
    return r;
}

Mat Mat::hstack(const Mat& a, const Mat& b) {
    require_same_field(a.field_, b.field_);
    if (a.rows_ != b.rows_) throw DimensionMismatch("hstack row counts differ");
    Mat r(a.field_, a.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(0, a.cols_, b);
    return r;
}

Mat Mat::vstack(const Mat& a, const Mat& b) {
    require_same_field(a.field_, b.field_);
    if (a.cols_ != b.cols_) throw DimensionMismatch("vstack column counts differ");
    Mat r(a.field_, a.rows_ + b.rows_, a.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, 0, b);
    return r;
}

Mat Mat::block_diag(const Mat& a, const Mat& b) {
    require_same_field(a.field_, b.field_);
    Mat r(a.field_, a.rows_ + b.rows_, a.cols_ + b.cols_);
    r.set_block(0, 0, a);
    r.set_block(a.rows_, a.cols_, b);
    return r;
}

Mat Mat::rref(std::vector<std::size_t>* pivots) const {
    Mat r = *this;
    auto piv = dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        return rref_inplace(ar, dat<A>(r), rows_, cols_);
    });
    if (pivots) *pivots = std::move(piv);
    return r;
}

std::size_t Mat::rank() const {
    std::vector<std::size_t> piv;
    rref(&piv);
    return piv.size();
}

Scalar Mat::trace() const {
    if (rows_ != cols_) throw DimensionMismatch("trace of a non-square matrix");
    Scalar t = Scalar::zero(field_);
    for (std::size_t i = 0; i < rows_; ++i) t = t + at(i, i);
    return t;
}

Scalar Mat::determinant() const {
    if (rows_ != cols_) throw DimensionMismatch("determinant of a non-square matrix");
    Mat r = *this;
    return dispatch(field_, [&](auto ar) {
        using A = decltype(ar);
        auto& a = dat<A>(r);
        const std::size_t n = rows_;
        auto det = ar.one();
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t sel = n;
            for (std::size_t i = c; i < n; ++i) {
                if (!ar.is_zero(a[i * n + c])) {
                    sel = i;
                    break;
                }
            }
            if (sel == n) return Scalar::zero(field_);
            if (sel != c) {
                for (std::size_t j = 0; j < n; ++j) std::swap(a[sel * n + j], a[c * n + j]);
                det = ar.neg(det);
            }
            det = ar.mul(det, a[c * n + c]);
            auto iv = ar.inv(a[c * n + c]);
            for (std::size_t i = c + 1; i < n; ++i) {
                auto f = ar.mul(a[i * n + c], iv);
                if (ar.is_zero(f)) continue;
                for (std::size_t j = c; j < n; ++j) a[i * n + j] = ar.submul(a[i * n + j], f, a[c * n + j]);
            }
        }
        if constexpr (std::is_same_v<A, RatArith>) {
            return Scalar(field_, det);
        } else {
            return Scalar(field_, static_cast<std::int64_t>(det));
        }
    });
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    auto x = try_solve_matrix(*this, identity(field_, rows_));
    if (!x) return std::nullopt;
    if (rank() != rows_) return std::nullopt;
    return x;
}

bool Mat::is_invertible() const { return rows_ == cols_ && rank() == rows_; }

Mat Mat::power(std::size_t e) const {
    if (rows_ != cols_) throw DimensionMismatch("power of a non-square matrix");
    Mat result = identity(field_, rows_);
    Mat base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

std::vector<Scalar> Mat::charpoly() const {
    if (rows_ != cols_) throw DimensionMismatch("charpoly of a non-square matrix");
    const std::size_t n = rows_;
    // Hessenberg reduction by similarity, then the usual three-term recursion.
    Mat h = *this;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        std::size_t sel = n;
        for (std::size_t i = m; i < n; ++i) {
            if (!h.at(i, m - 1).is_zero()) {
                sel = i;
                break;
            }
        }
        if (sel == n) continue;
        if (sel != m) {
            for (std::size_t j = 0; j < n; ++j) {
                Scalar t = h.at(sel, j);
                h.set(sel, j, h.at(m, j));
                h.set(m, j, t);
            }
            for (std::size_t i = 0; i < n; ++i) {
                Scalar t = h.at(i, sel);
                h.set(i, sel, h.at(i, m));
                h.set(i, m, t);
            }
        }
        const Scalar t = h.at(m, m - 1);
        for (std::size_t i = m + 1; i < n; ++i) {
            const Scalar u = h.at(i, m - 1) / t;
            if (u.is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) h.set(i, j, h.at(i, j) - u * h.at(m, j));
            for (std::size_t k = 0; k < n; ++k) h.set(k, m, h.at(k, m) + u * h.at(k, i));
        }
    }
    auto hh = [&](std::size_t i, std::size_t j) { return h.at(i - 1, j - 1); };
    std::vector<std::vector<Scalar>> p(n + 1);
    p[0] = {Scalar::one(field_)};
    for (std::size_t m = 1; m <= n; ++m) {
        // (x - h_mm) p_{m-1}
        std::vector<Scalar> cur(m + 1, Scalar::zero(field_));
        for (std::size_t k = 0; k < p[m - 1].size(); ++k) {
            cur[k + 1] = cur[k + 1] + p[m - 1][k];
            cur[k] = cur[k] - hh(m, m) * p[m - 1][k];
        }
        Scalar t = Scalar::one(field_);
        for (std::size_t i = m - 1; i >= 1; --i) {
            t = t * hh(i + 1, i);
            const Scalar c = hh(i, m) * t;
            if (!c.is_zero()) {
                for (std::size_t k = 0; k < p[i - 1].size(); ++k) cur[k] = cur[k] - c * p[i - 1][k];
            }
        }
        p[m] = std::move(cur);
    }
    return p[n];
}

std::string Mat::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) os << " ";
            os << at(i, j).to_string();
        }
    }
    os << "]";
    return os.str();
}

// ---------------------------------------------------------------- free functions

Mat kernel_basis(const Mat& a) {
    std::vector<std::size_t> piv;
    Mat r = a.rref(&piv);
    const std::size_t n = a.cols();
    std::vector<bool> is_piv(n, false);
    for (auto c : piv) is_piv[c] = true;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < n; ++j) {
        if (!is_piv[j]) free.push_back(j);
    }
    Mat k(a.field(), n, free.size());
    for (std::size_t f = 0; f < free.size(); ++f) {
        const std::size_t j = free[f];
        k.set_int(j, f, 1);
        for (std::size_t row = 0; row < piv.size(); ++row) k.set(piv[row], f, -r.at(row, j));
    }
    return k;
}

Mat image_basis(const Mat& a) {
    std::vector<std::size_t> piv;
    Mat r = a.transpose().rref(&piv);
    return r.block(0, 0, piv.size(), r.cols()).transpose();
}

KernelImage kernel_image(const Mat& a) {
    KernelImage ki;
    ki.kernel = kernel_basis(a);
    ki.image = image_basis(a);
    ki.rank = ki.image.cols();
    return ki;
}

std::optional<Mat> try_solve_matrix(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw DimensionMismatch("solve_matrix: row counts differ");
    std::vector<std::size_t> piv;
    Mat r = Mat::hstack(a, b).rref(&piv);
    const std::size_t n = a.cols();
    for (auto c : piv) {
        if (c >= n) return std::nullopt;
    }
    Mat x(a.field(), n, b.cols());
    for (std::size_t row = 0; row < piv.size(); ++row) {
        x.set_block(piv[row], 0, r.block(row, n, 1, b.cols()));
    }
    return x;
}

Mat solve_matrix(const Mat& a, const Mat& b) {
    auto x = try_solve_matrix(a, b);
    if (!x) throw NoSolution("right-hand side leaves the column space");
    return *x;
}

Mat kronecker(const Mat& a, const Mat& b) {
    if (!(a.field() == b.field())) throw FieldMismatch("kronecker over different fields");
    Mat r(a.field(), a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Scalar aij = a.at(i, j);
            if (aij.is_zero()) continue;
            r.set_block(i * b.rows(), j * b.cols(), b.scaled(aij));
        }
    }
    return r;
}

Mat complement_basis(const Mat& sub, std::size_t ambient) {
    std::vector<std::size_t> piv;
    if (sub.cols() > 0) sub.transpose().rref(&piv);
    std::vector<bool> used(ambient, false);
    for (auto c : piv) used[c] = true;
    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < ambient; ++i) {
        if (!used[i]) rest.push_back(i);
    }
    Mat c(sub.field(), ambient, rest.size());
    for (std::size_t k = 0; k < rest.size(); ++k) c.set_int(rest[k], k, 1);
    return c;
}

namespace {

Scalar eval_poly(const std::vector<Scalar>& poly, const Scalar& x) {
    Scalar acc = Scalar::zero(x.field());
    for (std::size_t k = poly.size(); k-- > 0;) acc = acc * x + poly[k];
    return acc;
}

std::vector<mpz_class> small_divisors(mpz_class n) {
    n = abs(n);
    std::vector<mpz_class> out;
    if (n == 0 || n > mpz_class("1000000000000")) {
        for (int d = 1; d <= 64; ++d) out.emplace_back(d);
        return out;
    }
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return out;
}

}  // namespace

std::vector<Scalar> field_roots(const std::vector<Scalar>& poly, std::size_t max_roots) {
    std::vector<Scalar> roots;
    if (poly.empty()) return roots;
    const FieldSpec f = poly.front().field();
    if (!f.is_rational()) {
        // Horner with raw residues: this loop runs over the whole field.
        const std::int64_t p = f.characteristic();
        std::vector<std::int64_t> c;
        for (const auto& s : poly) c.push_back(s.residue());
        for (std::int64_t x = 0; x < p && roots.size() < max_roots; ++x) {
            std::int64_t acc = 0;
            for (std::size_t k = c.size(); k-- > 0;) acc = (acc * x + c[k]) % p;
            if (acc == 0) roots.emplace_back(f, x);
        }
        return roots;
    }
    // Clear denominators, then rational root theorem.
    mpz_class l = 1;
    for (const auto& s : poly) l = lcm(l, s.rational().get_den());
    std::vector<mpz_class> c;
    for (const auto& s : poly) c.push_back(mpz_class(s.rational() * l));
    std::size_t lo = 0;
    while (lo < c.size() && c[lo] == 0) ++lo;
    if (lo > 0) roots.push_back(Scalar::zero(f));
    if (lo >= c.size() || roots.size() >= max_roots) return roots;
    std::size_t hi = c.size() - 1;
    while (c[hi] == 0) --hi;
    for (const auto& a : small_divisors(c[lo])) {
        for (const auto& b : small_divisors(c[hi])) {
            for (int sgn_ : {1, -1}) {
                mpq_class cand(sgn_ * a, b);
                cand.canonicalize();
                Scalar x(f, cand);
                if (eval_poly(poly, x).is_zero() &&
                    std::find(roots.begin(), roots.end(), x) == roots.end()) {
                    roots.push_back(x);
                    if (roots.size() >= max_roots) return roots;
                }
            }
        }
    }
    return roots;
}

}  // namespace higherar
