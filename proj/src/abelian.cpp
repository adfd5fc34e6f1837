#include "kleinlens/abelian.hpp"

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kleinlens::abelian {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::initializer_list<std::int64_t> values)
    : IntMatrix(rows, cols) {
    if (values.size() != rows * cols)
        throw std::invalid_argument("IntMatrix: entry count does not match shape");
    std::size_t i = 0;
    for (std::int64_t v : values) entries_[i++] = v;
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void IntMatrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k)
        std::swap(at(i, k), at(j, k));
}

void IntMatrix::swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < rows_; ++k)
        std::swap(at(k, i), at(k, j));
}

void IntMatrix::add_row_multiple(std::size_t dst, std::size_t src,
                                 const Int& factor) {
    for (std::size_t k = 0; k < cols_; ++k)
        at(dst, k) += factor * at(src, k);
}

void IntMatrix::add_col_multiple(std::size_t dst, std::size_t src,
                                 const Int& factor) {
    for (std::size_t k = 0; k < rows_; ++k)
        at(k, dst) += factor * at(k, src);
}

void IntMatrix::negate_row(std::size_t i) {
    for (std::size_t k = 0; k < cols_; ++k)
        at(i, k) = -at(i, k);
}

bool IntMatrix::is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (i != j && at(i, j) != 0) return false;
    return true;
}

std::string IntMatrix::to_string() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < rows_; ++i) {
        out << "[";
        for (std::size_t j = 0; j < cols_; ++j) {
            if (j) out << " ";
            out << at(i, j);
        }
        out << "]";
        if (i + 1 < rows_) out << "\n";
    }
    return out.str();
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.rows())
        throw std::invalid_argument("IntMatrix product: shape mismatch");
    IntMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Int& aik = a.at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += aik * b.at(k, j);
        }
    return c;
}

Int determinant(const IntMatrix& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return 1;
    IntMatrix a = m;
    Int prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a.at(k, k) == 0) {
            std::size_t pivot = k + 1;
            while (pivot < n && a.at(pivot, k) == 0) ++pivot;
            if (pivot == n) return 0;
            a.swap_rows(k, pivot);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a.at(i, j) =
                    (a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j)) / prev;
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : Int(-a.at(n - 1, n - 1));
}

namespace {

// True when every off-diagonal entry in row/column s of the trailing block is
// zero.
bool pivot_isolated(const IntMatrix& d, std::size_t s) {
    for (std::size_t i = s + 1; i < d.rows(); ++i)
        if (d.at(i, s) != 0) return false;
    for (std::size_t j = s + 1; j < d.cols(); ++j)
        if (d.at(s, j) != 0) return false;
    return true;
}

// Position of the smallest non-zero |entry| in the trailing submatrix,
// scanning row-major so the choice is deterministic.
bool locate_pivot(const IntMatrix& d, std::size_t s, std::size_t& pi,
                  std::size_t& pj) {
    bool found = false;
    Int best;
    for (std::size_t i = s; i < d.rows(); ++i)
        for (std::size_t j = s; j < d.cols(); ++j) {
            if (d.at(i, j) == 0) continue;
            Int v = abs(d.at(i, j));
            if (!found || v < best) {
                found = true;
                best = v;
                pi = i;
                pj = j;
            }
        }
    return found;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    SmithDecomposition out{IntMatrix::identity(rows), m, IntMatrix::identity(cols)};
    IntMatrix& D = out.D;
    IntMatrix& U = out.U;
    IntMatrix& V = out.V;

    const std::size_t nmin = std::min(rows, cols);
    for (std::size_t s = 0; s < nmin; ++s) {
        std::size_t pi = s, pj = s;
        if (!locate_pivot(D, s, pi, pj)) break; // trailing block all zero
        for (;;) {
            D.swap_rows(s, pi);
            U.swap_rows(s, pi);
            D.swap_cols(s, pj);
            V.swap_cols(s, pj);

            // Euclidean clearing of row and column s; the pivot magnitude
            // strictly decreases whenever a remainder survives.
            while (!pivot_isolated(D, s)) {
                for (std::size_t i = s + 1; i < rows; ++i) {
                    if (D.at(i, s) == 0) continue;
                    Int f = -(D.at(i, s) / D.at(s, s));
                    D.add_row_multiple(i, s, f);
                    U.add_row_multiple(i, s, f);
                }
                for (std::size_t j = s + 1; j < cols; ++j) {
                    if (D.at(s, j) == 0) continue;
                    Int f = -(D.at(s, j) / D.at(s, s));
                    D.add_col_multiple(j, s, f);
                    V.add_col_multiple(j, s, f);
                }
                if (pivot_isolated(D, s)) break;
                locate_pivot(D, s, pi, pj);
                D.swap_rows(s, pi);
                U.swap_rows(s, pi);
                D.swap_cols(s, pj);
                V.swap_cols(s, pj);
            }

            // Divisibility chain: the pivot must divide the whole trailing
            // block.  Fold an offending row into row s and reduce again.
            bool divides_all = true;
            for (std::size_t i = s + 1; i < rows && divides_all; ++i)
                for (std::size_t j = s + 1; j < cols; ++j)
                    if (D.at(i, j) % D.at(s, s) != 0) {
                        D.add_row_multiple(s, i, 1);
                        U.add_row_multiple(s, i, 1);
                        divides_all = false;
                        break;
                    }
            if (divides_all) break;
            pi = s;
            pj = s;
        }
        if (D.at(s, s) < 0) {
            D.negate_row(s);
            U.negate_row(s);
        }
    }

    return out;
}

bool AbelianGroup::is_cyclic() const {
    if (free_rank == 0) return torsion.size() <= 1;
    return free_rank == 1 && torsion.empty();
}

Int AbelianGroup::order() const {
    Int n = 1;
    for (const Int& d : torsion) n *= d;
    return n;
}

std::string AbelianGroup::to_string() const {
    if (is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    if (free_rank == 1) {
        out << "Z";
        first = false;
    } else if (free_rank > 1) {
        out << "Z^" << free_rank;
        first = false;
    }
    for (const Int& d : torsion) {
        if (!first) out << " + ";
        out << "Z_" << d;
        first = false;
    }
    return out.str();
}

AbelianGroup free_abelian(std::size_t rank) { return AbelianGroup{{}, rank}; }

AbelianGroup cokernel(const IntMatrix& relations, const AbelianGroup& ambient) {
    const std::size_t gens = ambient.free_rank + ambient.torsion.size();
    if (relations.cols() != gens && relations.rows() != 0)
        throw std::invalid_argument(
            "cokernel: relation columns do not match ambient generator count");

    // Stack the given relations on top of the torsion-order relations.
    IntMatrix full(relations.rows() + ambient.torsion.size(), gens);
    for (std::size_t i = 0; i < relations.rows(); ++i)
        for (std::size_t j = 0; j < gens; ++j)
            full.at(i, j) = relations.at(i, j);
    for (std::size_t k = 0; k < ambient.torsion.size(); ++k)
        full.at(relations.rows() + k, ambient.free_rank + k) = ambient.torsion[k];

    SmithDecomposition snf = smith_normal_form(full);
    AbelianGroup result;
    std::size_t nonzero = 0;
    const std::size_t nmin = std::min(full.rows(), full.cols());
    for (std::size_t i = 0; i < nmin; ++i) {
        const Int& d = snf.D.at(i, i);
        if (d == 0) continue;
        ++nonzero;
        if (d >= 2) result.torsion.push_back(d);
    }
    result.free_rank = gens - nonzero;
    return result;
}

std::pair<std::int64_t, int> inclusion_map_H1(const TorusClass& c) {
    if (c.basis != Basis::NuKBoundary)
        throw std::invalid_argument("inclusion_map_H1 expects a class in basis NuKBoundary");
    const std::int64_t n = c.mu;
    const std::int64_t ell = c.lambda;
    return {2 * n, int(((ell % 2) + 2) % 2)};
}

AbelianGroup dehn_filling_H1(std::int64_t n, std::int64_t ell) {
    if (std::gcd(n, ell) != 1)
        throw std::invalid_argument("attaching class not primitive");
    auto [twice_n, parity] =
        inclusion_map_H1(TorusClass{n, ell, Basis::NuKBoundary});
    IntMatrix rel(1, 2);
    rel.at(0, 0) = twice_n;
    rel.at(0, 1) = parity;
    AbelianGroup ambient;
    ambient.free_rank = 1;
    ambient.torsion = {2};
    return cokernel(rel, ambient);
}

} // namespace kleinlens::abelian
