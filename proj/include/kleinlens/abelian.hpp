#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "kleinlens/lens_core.hpp"

namespace kleinlens::abelian {

using Int = boost::multiprecision::cpp_int;

/// Dense integer matrix with arbitrary-precision entries.  Row-major.
class IntMatrix {
  public:
    IntMatrix() = default;
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols,
              std::initializer_list<std::int64_t> values);

    static IntMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Int& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Int& at(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    void swap_rows(std::size_t i, std::size_t j);
    void swap_cols(std::size_t i, std::size_t j);
    void add_row_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void add_col_multiple(std::size_t dst, std::size_t src, const Int& factor);
    void negate_row(std::size_t i);

    bool is_diagonal() const;

    std::string to_string() const;

    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Int> entries_;
};

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);

/// Determinant by fraction-free (Bareiss) elimination; exact.
Int determinant(const IntMatrix& m);

/// U * m * V = D with U, V unimodular and D diagonal, the diagonal entries
/// non-negative and forming a divisibility chain d1 | d2 | ...
struct SmithDecomposition {
    IntMatrix U;
    IntMatrix D;
    IntMatrix V;
};

/// Smith normal form.  Pivoting: smallest non-zero absolute value in the
/// trailing submatrix, scanning rows then columns, so U and V are
/// reproducible across runs.
SmithDecomposition smith_normal_form(const IntMatrix& m);

/// Finitely generated abelian group in invariant-factor form:
/// Z^free_rank + Z_{d1} + ... + Z_{dk} with 2 <= d1 | d2 | ... | dk.
struct AbelianGroup {
    std::vector<Int> torsion;
    std::size_t free_rank = 0;

    bool is_trivial() const { return torsion.empty() && free_rank == 0; }
    bool is_finite() const { return free_rank == 0; }
    /// Cyclic: at most one invariant factor and free rank 0, or Z itself.
    bool is_cyclic() const;
    /// Order of the torsion part (the group order when finite).
    Int order() const;

    /// "0" for the trivial group, else e.g. "Z", "Z_4", "Z^2 + Z_2 + Z_6".
    std::string to_string() const;

    friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// Free abelian group of the given rank.
AbelianGroup free_abelian(std::size_t rank);

/// Quotient of `ambient` by the subgroup generated by the rows of
/// `relations`.  Generator convention: free generators first, then torsion
/// generators; the torsion orders are adjoined internally as extra relations.
/// The number of columns of `relations` must equal
/// ambient.free_rank + ambient.torsion.size().
AbelianGroup cokernel(const IntMatrix& relations, const AbelianGroup& ambient);

/// Image of a boundary-torus class (n, l) under inclusion T -> nuK on first
/// homology: (n, l) |-> (2n, l mod 2) in H_1(nuK) = Z + Z_2.  The class must
/// be tagged NuKBoundary.
std::pair<std::int64_t, int> inclusion_map_H1(const TorusClass& c);

/// First homology of the Dehn filling of nuK along the primitive class
/// (n, l): the cokernel of Z -> Z + Z_2, 1 |-> (2n, l mod 2).  Equals Z_{4n}
/// for odd l and Z_{2n} + Z_2 for even l.
AbelianGroup dehn_filling_H1(std::int64_t n, std::int64_t ell);

} // namespace kleinlens::abelian
