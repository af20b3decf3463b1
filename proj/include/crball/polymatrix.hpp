#pragma once

// Dense matrices over the polynomial ring, plus exact scalar matrices for
// evaluations. Determinants come from three independent algorithms:
//
//   laplace        cofactor expansion along rows, memoized over column sets
//   interpolation  exact evaluation on an integer grid + tensor Newton
//                  interpolation, degree-bounded by column degrees
//   leibniz        the permutation sum, used as a brute-force oracle
//
// The automatic backend uses Laplace up to DetOptions::laplace_max_size and
// interpolation beyond.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "poly.hpp"
#include "random.hpp"
#include "univariate.hpp"

namespace crball {

class ScalarMatrix {
public:
    ScalarMatrix() = default;
    ScalarMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static ScalarMatrix identity(std::size_t n) {
        ScalarMatrix m(n, n);
        for (std::size_t k = 0; k < n; ++k) m(k, k) = GaussianRational(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    GaussianRational& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
    const GaussianRational& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

    friend bool operator==(const ScalarMatrix&, const ScalarMatrix&) = default;

    friend ScalarMatrix operator*(const ScalarMatrix& a, const ScalarMatrix& b) {
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
        ScalarMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a(i, k).is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
            }
        }
        return c;
    }

    struct Elimination {
        std::size_t rank = 0;
        GaussianRational det;                 // meaningful for square input
        std::vector<std::size_t> pivot_rows;  // original row indices
        std::vector<std::size_t> pivot_cols;
    };

    /// Gaussian elimination with first-nonzero pivoting.
    Elimination eliminate() const {
        Elimination out;
        ScalarMatrix w = *this;
        std::vector<std::size_t> row_of(rows_);
        std::iota(row_of.begin(), row_of.end(), 0);
        GaussianRational det(1);
        std::size_t r = 0;
        for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
            std::size_t p = r;
            while (p < rows_ && w(p, c).is_zero()) ++p;
            if (p == rows_) {
                det = GaussianRational(0);
                continue;
            }
            if (p != r) {
                for (std::size_t j = 0; j < cols_; ++j) std::swap(w(p, j), w(r, j));
                std::swap(row_of[p], row_of[r]);
                det = -det;
            }
            det *= w(r, c);
            GaussianRational inv = w(r, c).inverse();
            for (std::size_t i = r + 1; i < rows_; ++i) {
                if (w(i, c).is_zero()) continue;
                GaussianRational f = w(i, c) * inv;
                for (std::size_t j = c; j < cols_; ++j) w(i, j) -= f * w(r, j);
            }
            out.pivot_rows.push_back(row_of[r]);
            out.pivot_cols.push_back(c);
            ++r;
        }
        out.rank = r;
        out.det = (rows_ == cols_ && r == rows_) ? det : GaussianRational(0);
        if (rows_ == 0 && cols_ == 0) out.det = GaussianRational(1);
        return out;
    }

    GaussianRational det() const {
        if (rows_ != cols_) throw NonSquare(std::to_string(rows_) + "x" + std::to_string(cols_));
        return eliminate().det;
    }
    std::size_t rank() const { return eliminate().rank; }

    ScalarMatrix drop(std::size_t row, std::size_t col) const {
        ScalarMatrix m(rows_ - 1, cols_ - 1);
        for (std::size_t i = 0, ii = 0; i < rows_; ++i) {
            if (i == row) continue;
            for (std::size_t j = 0, jj = 0; j < cols_; ++j) {
                if (j == col) continue;
                m(ii, jj++) = (*this)(i, j);
            }
            ++ii;
        }
        return m;
    }

    /// Adjugate by Gauss-Jordan when invertible, by cofactors otherwise.
    ScalarMatrix adjugate() const {
        if (rows_ != cols_) throw NonSquare(std::to_string(rows_) + "x" + std::to_string(cols_));
        const std::size_t n = rows_;
        if (n == 1) return identity(1);
        GaussianRational d = det();
        ScalarMatrix adj(n, n);
        if (!d.is_zero()) {
            ScalarMatrix w = *this, inv = identity(n);
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t p = c;
                while (w(p, c).is_zero()) ++p;
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(w(p, j), w(c, j));
                    std::swap(inv(p, j), inv(c, j));
                }
                GaussianRational s = w(c, c).inverse();
                for (std::size_t j = 0; j < n; ++j) {
                    w(c, j) *= s;
                    inv(c, j) *= s;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == c || w(i, c).is_zero()) continue;
                    GaussianRational f = w(i, c);
                    for (std::size_t j = 0; j < n; ++j) {
                        w(i, j) -= f * w(c, j);
                        inv(i, j) -= f * inv(c, j);
                    }
                }
            }
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) adj(i, j) = d * inv(i, j);
            }
            return adj;
        }
        if (rank() + 2 <= n) return adj;
        for (std::size_t k = 0; k < n; ++k) {
            for (std::size_t j = 0; j < n; ++j) {
                GaussianRational minor = drop(j, k).det();
                adj(k, j) = ((j + k) % 2 == 0) ? minor : -minor;
            }
        }
        return adj;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<GaussianRational> a_;
};

class PolyMatrix {
public:
    PolyMatrix() = default;
    PolyMatrix(RegistryPtr reg, std::size_t rows, std::size_t cols)
        : reg_(std::move(reg)), rows_(rows), cols_(cols), a_(rows * cols, MultiPoly(reg_)) {}

    static PolyMatrix identity(const RegistryPtr& reg, std::size_t n) {
        PolyMatrix m(reg, n, n);
        for (std::size_t k = 0; k < n; ++k) m.set(k, k, MultiPoly(reg, GaussianRational(1)));
        return m;
    }

    static PolyMatrix from_rows(const RegistryPtr& reg, const std::vector<std::vector<MultiPoly>>& rows) {
        std::size_t nc = rows.empty() ? 0 : rows[0].size();
        PolyMatrix m(reg, rows.size(), nc);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != nc) throw DimensionMismatch("ragged rows");
            for (std::size_t j = 0; j < nc; ++j) m.set(i, j, rows[i][j]);
        }
        return m;
    }

    static PolyMatrix from_scalars(const RegistryPtr& reg, const ScalarMatrix& s) {
        PolyMatrix m(reg, s.rows(), s.cols());
        for (std::size_t i = 0; i < s.rows(); ++i) {
            for (std::size_t j = 0; j < s.cols(); ++j) m.set(i, j, MultiPoly(reg, s(i, j)));
        }
        return m;
    }

    /// Column vector from a list of entries.
    static PolyMatrix column_vector(const RegistryPtr& reg, const std::vector<MultiPoly>& v) {
        PolyMatrix m(reg, v.size(), 1);
        for (std::size_t i = 0; i < v.size(); ++i) m.set(i, 0, v[i]);
        return m;
    }

    static PolyMatrix hstack(const PolyMatrix& a, const PolyMatrix& b) {
        check_registry(a, b);
        if (a.rows_ != b.rows_) throw DimensionMismatch("hstack row counts differ");
        PolyMatrix m(a.reg_, a.rows_, a.cols_ + b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t j = 0; j < a.cols_; ++j) m.at(i, j) = a(i, j);
            for (std::size_t j = 0; j < b.cols_; ++j) m.at(i, a.cols_ + j) = b(i, j);
        }
        return m;
    }

    static PolyMatrix vstack(const PolyMatrix& a, const PolyMatrix& b) {
        check_registry(a, b);
        if (a.cols_ != b.cols_) throw DimensionMismatch("vstack column counts differ");
        PolyMatrix m(a.reg_, a.rows_ + b.rows_, a.cols_);
        for (std::size_t j = 0; j < a.cols_; ++j) {
            for (std::size_t i = 0; i < a.rows_; ++i) m.at(i, j) = a(i, j);
            for (std::size_t i = 0; i < b.rows_; ++i) m.at(a.rows_ + i, j) = b(i, j);
        }
        return m;
    }

    const RegistryPtr& registry() const { return reg_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const MultiPoly& operator()(std::size_t r, std::size_t c) const {
        range_check(r, c);
        return a_[r * cols_ + c];
    }

    void set(std::size_t r, std::size_t c, MultiPoly p) {
        range_check(r, c);
        if (!same_registry(p.registry(), reg_)) throw RegistryMismatch("matrix entry registry");
        a_[r * cols_ + c] = std::move(p);
    }

    PolyMatrix column(std::size_t k) const {
        if (k >= cols_) throw IndexOutOfRange("column " + std::to_string(k));
        PolyMatrix m(reg_, rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) m.at(i, 0) = (*this)(i, k);
        return m;
    }

    PolyMatrix row(std::size_t j) const {
        if (j >= rows_) throw IndexOutOfRange("row " + std::to_string(j));
        PolyMatrix m(reg_, 1, cols_);
        for (std::size_t c = 0; c < cols_; ++c) m.at(0, c) = (*this)(j, c);
        return m;
    }

    PolyMatrix with_column(std::size_t k, const PolyMatrix& col) const {
        if (k >= cols_) throw IndexOutOfRange("column " + std::to_string(k));
        if (col.cols_ != 1 || col.rows_ != rows_) throw DimensionMismatch("replacement column shape");
        check_registry(*this, col);
        PolyMatrix m = *this;
        for (std::size_t i = 0; i < rows_; ++i) m.at(i, k) = col(i, 0);
        return m;
    }

    PolyMatrix drop_row(std::size_t j) const {
        if (j >= rows_) throw IndexOutOfRange("row " + std::to_string(j));
        std::vector<std::size_t> rs, cs(cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            if (i != j) rs.push_back(i);
        }
        std::iota(cs.begin(), cs.end(), 0);
        return select(rs, cs);
    }

    PolyMatrix drop_col(std::size_t k) const {
        if (k >= cols_) throw IndexOutOfRange("column " + std::to_string(k));
        std::vector<std::size_t> rs(rows_), cs;
        std::iota(rs.begin(), rs.end(), 0);
        for (std::size_t c = 0; c < cols_; ++c) {
            if (c != k) cs.push_back(c);
        }
        return select(rs, cs);
    }

    /// M[j, k]: row j and column k removed.
    PolyMatrix submatrix(std::size_t j, std::size_t k) const { return drop_row(j).drop_col(k); }

    PolyMatrix select(std::span<const std::size_t> rs, std::span<const std::size_t> cs) const {
        PolyMatrix m(reg_, rs.size(), cs.size());
        for (std::size_t i = 0; i < rs.size(); ++i) {
            for (std::size_t j = 0; j < cs.size(); ++j) m.at(i, j) = (*this)(rs[i], cs[j]);
        }
        return m;
    }

    PolyMatrix transpose() const {
        PolyMatrix m(reg_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) m.at(j, i) = (*this)(i, j);
        }
        return m;
    }

    bool is_zero() const {
        return std::all_of(a_.begin(), a_.end(), [](const MultiPoly& p) { return p.is_zero(); });
    }

    template <class F>
    PolyMatrix map(F&& f) const {
        PolyMatrix m(reg_, rows_, cols_);
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] = f(a_[k]);
        return m;
    }

    friend PolyMatrix operator+(const PolyMatrix& a, const PolyMatrix& b) { return combine(a, b, false); }
    friend PolyMatrix operator-(const PolyMatrix& a, const PolyMatrix& b) { return combine(a, b, true); }

    friend PolyMatrix operator*(const PolyMatrix& a, const PolyMatrix& b) {
        check_registry(a, b);
        if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product");
        PolyMatrix c(a.reg_, a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const MultiPoly& aik = a(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    if (!b(k, j).is_zero()) c.at(i, j) += aik * b(k, j);
                }
            }
        }
        return c;
    }

    friend PolyMatrix operator*(const MultiPoly& s, const PolyMatrix& m) {
        return m.map([&](const MultiPoly& p) { return s * p; });
    }
    friend PolyMatrix operator*(const GaussianRational& s, const PolyMatrix& m) {
        return m.map([&](const MultiPoly& p) { return s * p; });
    }

    friend bool operator==(const PolyMatrix& a, const PolyMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && same_registry(a.reg_, b.reg_) && a.a_ == b.a_;
    }

    ScalarMatrix evaluate(std::span<const GaussianRational> point) const {
        ScalarMatrix s(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(i, j).evaluate(point);
        }
        return s;
    }

    /// Largest entry degree, optionally restricted to some variables.
    Degree max_degree(std::span<const std::size_t> vars) const {
        Degree d = Degree::zero_poly();
        for (const auto& p : a_) d = Degree::max(d, total_degree(p, vars));
        return d;
    }
    Degree max_degree() const {
        Degree d = Degree::zero_poly();
        for (const auto& p : a_) d = Degree::max(d, total_degree(p));
        return d;
    }
    Degree column_degree(std::size_t k) const {
        Degree d = Degree::zero_poly();
        for (std::size_t i = 0; i < rows_; ++i) d = Degree::max(d, total_degree((*this)(i, k)));
        return d;
    }

private:
    MultiPoly& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

    void range_check(std::size_t r, std::size_t c) const {
        if (r >= rows_ || c >= cols_) {
            throw IndexOutOfRange("(" + std::to_string(r) + "," + std::to_string(c) + ") in " +
                                  std::to_string(rows_) + "x" + std::to_string(cols_));
        }
    }

    static void check_registry(const PolyMatrix& a, const PolyMatrix& b) {
        if (!same_registry(a.reg_, b.reg_)) throw RegistryMismatch("matrices use different registries");
    }

    static PolyMatrix combine(const PolyMatrix& a, const PolyMatrix& b, bool subtract) {
        check_registry(a, b);
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum shapes");
        PolyMatrix c = a;
        for (std::size_t k = 0; k < a.a_.size(); ++k) {
            if (subtract) {
                c.a_[k] -= b.a_[k];
            } else {
                c.a_[k] += b.a_[k];
            }
        }
        return c;
    }

    RegistryPtr reg_;
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<MultiPoly> a_;
};

enum class DetBackend { automatic, laplace, interpolation, leibniz };

struct DetOptions {
    DetBackend backend = DetBackend::automatic;
    std::size_t laplace_max_size = 8;
};

namespace detail {

inline void require_square(const PolyMatrix& m) {
    if (!m.is_square()) throw NonSquare(std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

// table[mask] = det of the submatrix on the last popcount(mask) entries of
// `rows` and the columns in `mask`, for every mask with popcount <= rows.size().
inline std::vector<MultiPoly> laplace_table(const PolyMatrix& m, std::span<const std::size_t> rows) {
    const std::size_t nc = m.cols();
    const std::size_t nr = rows.size();
    std::vector<MultiPoly> table(std::size_t{1} << nc, MultiPoly(m.registry()));
    table[0] = MultiPoly(m.registry(), GaussianRational(1));
    for (std::uint32_t mask = 1; mask < (1U << nc); ++mask) {
        auto t = static_cast<std::size_t>(std::popcount(mask));
        if (t > nr) continue;
        std::size_t row = rows[nr - t];
        MultiPoly acc(m.registry());
        std::size_t position = 0;
        for (std::size_t c = 0; c < nc; ++c) {
            if (!(mask & (1U << c))) continue;
            const MultiPoly& entry = m(row, c);
            const MultiPoly& minor = table[mask & ~(1U << c)];
            if (!entry.is_zero() && !minor.is_zero()) {
                if (position % 2 == 0) {
                    acc += entry * minor;
                } else {
                    acc -= entry * minor;
                }
            }
            ++position;
        }
        table[mask] = std::move(acc);
    }
    return table;
}

inline MultiPoly det_laplace(const PolyMatrix& m) {
    if (m.rows() == 0) return MultiPoly(m.registry(), GaussianRational(1));
    if (m.rows() > 20) throw std::length_error("Laplace expansion limited to 20x20");
    std::vector<std::size_t> rows(m.rows());
    std::iota(rows.begin(), rows.end(), 0);
    auto table = laplace_table(m, rows);
    return table[(std::size_t{1} << m.cols()) - 1];
}

inline MultiPoly det_leibniz(const PolyMatrix& m) {
    const std::size_t n = m.rows();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    MultiPoly sum(m.registry());
    do {
        std::size_t inversions = 0;
        for (std::size_t a = 0; a < n; ++a) {
            for (std::size_t b = a + 1; b < n; ++b) inversions += perm[a] > perm[b] ? 1 : 0;
        }
        MultiPoly prod(m.registry(), GaussianRational(inversions % 2 == 0 ? 1 : -1));
        for (std::size_t r = 0; r < n && !prod.is_zero(); ++r) prod *= m(r, perm[r]);
        sum += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return sum;
}

struct Grid {
    std::vector<std::size_t> vars;
    std::vector<int> bounds;  // per-variable degree bound
};

// Per-variable degree bound of any minor of m: the smaller of the column-wise
// and row-wise sums of entry degrees in that variable.
inline Grid det_grid(const PolyMatrix& m) {
    Grid g;
    const std::size_t nv = m.registry()->size();
    for (std::size_t v = 0; v < nv; ++v) {
        int by_cols = 0, by_rows = 0;
        bool occurs = false;
        for (std::size_t c = 0; c < m.cols(); ++c) {
            int best = 0;
            for (std::size_t r = 0; r < m.rows(); ++r) {
                Degree d = degree_in(m(r, c), v);
                if (!d.is_zero_poly() && d.value() > 0) {
                    best = std::max(best, d.value());
                    occurs = true;
                }
            }
            by_cols += best;
        }
        for (std::size_t r = 0; r < m.rows(); ++r) {
            int best = 0;
            for (std::size_t c = 0; c < m.cols(); ++c) {
                Degree d = degree_in(m(r, c), v);
                if (!d.is_zero_poly()) best = std::max(best, d.value());
            }
            by_rows += best;
        }
        if (occurs) {
            g.vars.push_back(v);
            g.bounds.push_back(std::min(by_cols, by_rows));
        }
    }
    return g;
}

// Interpolates `outputs` polynomials from their values on the grid
// prod_v {0..bound_v}; `leaf` maps a full registry point to the values.
template <class Leaf>
std::vector<MultiPoly> interpolate_grid(const RegistryPtr& reg, const Grid& grid, std::size_t outputs, Leaf&& leaf) {
    std::vector<GaussianRational> point(reg->size());
    auto rec = [&](auto&& self, std::size_t level) -> std::vector<MultiPoly> {
        if (level == grid.vars.size()) {
            std::vector<GaussianRational> vals = leaf(std::span<const GaussianRational>(point));
            std::vector<MultiPoly> out;
            out.reserve(outputs);
            for (auto& v : vals) out.emplace_back(reg, v);
            return out;
        }
        const std::size_t var = grid.vars[level];
        const int bound = grid.bounds[level];
        std::vector<GaussianRational> nodes;
        std::vector<std::vector<MultiPoly>> samples;
        for (int t = 0; t <= bound; ++t) {
            nodes.emplace_back(static_cast<long>(t));
            point[var] = nodes.back();
            samples.push_back(self(self, level + 1));
        }
        point[var] = GaussianRational(0);
        MultiPoly x = MultiPoly::variable(reg, var);
        std::vector<MultiPoly> out;
        out.reserve(outputs);
        for (std::size_t o = 0; o < outputs; ++o) {
            std::vector<MultiPoly> ys;
            ys.reserve(samples.size());
            for (auto& s : samples) ys.push_back(s[o]);
            auto c = newton_coefficients<MultiPoly>(nodes, std::move(ys));
            // Horner on the Newton form
            MultiPoly acc = c.back();
            for (std::size_t k = c.size() - 1; k-- > 0;) {
                acc = acc * (x - MultiPoly(reg, nodes[k])) + c[k];
            }
            out.push_back(std::move(acc));
        }
        return out;
    };
    return rec(rec, 0);
}

// Deterministic off-grid check points for the interpolation backends.
inline std::vector<std::vector<GaussianRational>> check_points(const RegistryPtr& reg, std::size_t count) {
    Rng rng(0x5eed + reg->size());
    std::vector<std::vector<GaussianRational>> pts;
    for (std::size_t k = 0; k < count; ++k) pts.push_back(rng.gaussian_point(reg->size(), 7, 5));
    return pts;
}

inline MultiPoly det_interpolation(const PolyMatrix& m) {
    if (m.rows() == 0) return MultiPoly(m.registry(), GaussianRational(1));
    Grid grid = det_grid(m);
    auto result = interpolate_grid(m.registry(), grid, 1, [&](std::span<const GaussianRational> pt) {
        return std::vector<GaussianRational>{m.evaluate(pt).det()};
    });
    for (const auto& pt : check_points(m.registry(), 2)) {
        if (result[0].evaluate(pt) != m.evaluate(pt).det()) {
            throw std::logic_error("interpolated determinant failed its evaluation cross-check");
        }
    }
    return result[0];
}

} // namespace detail

inline MultiPoly det(const PolyMatrix& m, const DetOptions& opt = {}) {
    detail::require_square(m);
    switch (opt.backend) {
    case DetBackend::laplace: return detail::det_laplace(m);
    case DetBackend::interpolation: return detail::det_interpolation(m);
    case DetBackend::leibniz: return detail::det_leibniz(m);
    case DetBackend::automatic: break;
    }
    return m.rows() <= opt.laplace_max_size ? detail::det_laplace(m) : detail::det_interpolation(m);
}

/// Entry (k, j) of the adjugate computed literally as (-1)^(k+j) det M[j, k]
/// with the chosen determinant backend.
inline PolyMatrix adjugate_by_cofactors(const PolyMatrix& m, const DetOptions& opt = {}) {
    detail::require_square(m);
    const std::size_t n = m.rows();
    if (n == 1) return PolyMatrix::identity(m.registry(), 1);
    PolyMatrix adj(m.registry(), n, n);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t k = 0; k < n; ++k) {
            MultiPoly minor = det(m.submatrix(j, k), opt);
            adj.set(k, j, (j + k) % 2 == 0 ? minor : -minor);
        }
    }
    return adj;
}

/// Transpose of the cofactor matrix. A 1x1 matrix has adjugate [1].
inline PolyMatrix adjugate(const PolyMatrix& m, const DetOptions& opt = {}) {
    detail::require_square(m);
    const std::size_t n = m.rows();
    if (n == 1) return PolyMatrix::identity(m.registry(), 1);
    bool use_laplace = opt.backend == DetBackend::laplace ||
                       (opt.backend == DetBackend::automatic && n <= opt.laplace_max_size);
    if (opt.backend == DetBackend::leibniz) return adjugate_by_cofactors(m, opt);
    PolyMatrix adj(m.registry(), n, n);
    if (use_laplace) {
        const std::size_t full = (std::size_t{1} << n) - 1;
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> rows;
            for (std::size_t r = 0; r < n; ++r) {
                if (r != j) rows.push_back(r);
            }
            auto table = detail::laplace_table(m, rows);
            for (std::size_t k = 0; k < n; ++k) {
                const MultiPoly& minor = table[full & ~(std::size_t{1} << k)];
                adj.set(k, j, (j + k) % 2 == 0 ? minor : -minor);
            }
        }
        return adj;
    }
    detail::Grid grid = detail::det_grid(m);
    auto entries = detail::interpolate_grid(m.registry(), grid, n * n, [&](std::span<const GaussianRational> pt) {
        ScalarMatrix a = m.evaluate(pt).adjugate();
        std::vector<GaussianRational> v;
        v.reserve(n * n);
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) v.push_back(a(r, c));
        }
        return v;
    });
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) adj.set(r, c, std::move(entries[r * n + c]));
    }
    for (const auto& pt : detail::check_points(m.registry(), 1)) {
        if (adj.evaluate(pt) != m.evaluate(pt).adjugate()) {
            throw std::logic_error("interpolated adjugate failed its evaluation cross-check");
        }
    }
    return adj;
}

} // namespace crball
