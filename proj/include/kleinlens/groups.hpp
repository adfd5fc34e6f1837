#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kleinlens/abelian.hpp"

namespace kleinlens::groups {

/// Freely reduced word in a free group: (generator index, exponent) pairs
/// with adjacent pairs on distinct generators and no zero exponents.
struct Word {
    std::vector<std::pair<int, std::int64_t>> syllables;

    bool is_reduced() const;
    bool empty() const { return syllables.empty(); }

    /// Append a syllable and re-reduce at the join.
    void push(int generator, std::int64_t exponent);

    std::string to_string(const std::vector<std::string>& names) const;

    friend bool operator==(const Word&, const Word&) = default;
};

Word operator*(const Word& a, const Word& b);
Word inverse(const Word& w);

struct Presentation {
    int generator_count = 0;
    std::vector<Word> relators;
    std::vector<std::string> names;

    std::string to_string() const;
};

/// pi_1 of the Klein bottle: < u, v | u v u^-1 v >.
Presentation klein_bottle_group();

/// Image of the boundary-torus class (nn, l) in the Klein-bottle group:
/// the word u^{2 nn} v^l.
Word peripheral_image(std::int64_t nn, std::int64_t ell);

/// pi_1 of the Dehn filling of nuK along (n, l):
/// < u, v | u v u^-1 v, u^{2n} v^l >.  Requires n >= 1; l = 0 is accepted
/// (it arises in the torsion diagnostic).
Presentation dehn_filling_presentation(std::int64_t n, std::int64_t ell);

/// The finite metacyclic group < u, v | u v u^-1 = v^-1, u^{2n} = v^-l >
/// realized on normal forms u^j v^k, 0 <= j < 2n, 0 <= k < 2|l|, with a dense
/// multiplication table.  The table for (n, -l) coincides with the one for
/// (n, l) since -l = +|l| mod 2|l|; negative l is normalized to |l| and the
/// normalization is recorded.
class MetacyclicTable {
  public:
    MetacyclicTable(std::int64_t n, std::int64_t ell);

    std::int64_t n() const { return n_; }
    std::int64_t ell() const { return ell_given_; }
    std::int64_t ell_abs() const { return ell_abs_; }
    bool ell_normalized() const { return ell_given_ < 0; }
    std::int64_t order() const { return order_; }
    std::size_t size() const { return std::size_t(order_); }

    std::uint32_t index_of(std::int64_t j, std::int64_t k) const;
    /// Normal form (j, k) of an element index.
    std::pair<std::int64_t, std::int64_t> normal_form(std::uint32_t idx) const;

    std::uint32_t identity() const { return 0; }
    std::uint32_t u() const { return index_of(1, 0); }
    std::uint32_t v() const { return index_of(0, 1); }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return table_[std::size_t(a) * size() + b];
    }
    std::uint32_t inverse(std::uint32_t a) const { return inverse_[a]; }

    /// Order by repeated table multiplication.
    std::int64_t element_order(std::uint32_t a) const;

  private:
    std::int64_t n_;
    std::int64_t ell_given_;
    std::int64_t ell_abs_;
    std::int64_t order_;
    std::vector<std::uint32_t> table_;
    std::vector<std::uint32_t> inverse_;
};

/// Builds the table; order 4 n |l| must not exceed `cap`.
MetacyclicTable build_metacyclic_table(std::int64_t n, std::int64_t ell,
                                       std::int64_t cap = 20000);

std::int64_t group_order(const MetacyclicTable& t);
bool is_abelian(const MetacyclicTable& t);
bool is_cyclic(const MetacyclicTable& t);
std::int64_t element_order(const MetacyclicTable& t, std::int64_t j,
                           std::int64_t k);

/// Subgroup generated by the given elements (closure under multiplication).
std::vector<std::uint32_t> subgroup_generated(const MetacyclicTable& t,
                                              const std::vector<std::uint32_t>& gens);

bool is_normal_subgroup(const MetacyclicTable& t,
                        const std::vector<std::uint32_t>& subgroup);

std::vector<std::uint32_t> commutator_subgroup(const MetacyclicTable& t);

/// Finite quotient group by a normal subgroup, with its own dense table on
/// coset representatives (the smallest element index of each coset).
struct QuotientGroup {
    std::vector<std::uint32_t> reps;
    std::vector<std::uint32_t> table; // reps.size() x reps.size(), row-major

    std::size_t size() const { return reps.size(); }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return table[std::size_t(a) * size() + b];
    }
    std::int64_t element_order(std::uint32_t a) const;
    bool is_cyclic() const;
};

QuotientGroup quotient_by(const MetacyclicTable& t,
                          const std::vector<std::uint32_t>& normal_subgroup);

/// Invariant factors of a finite abelian quotient, recovered from the
/// element-order statistics (independent of the Smith-normal-form route).
abelian::AbelianGroup abelian_invariants(const QuotientGroup& g);

/// Abelianization of the table: quotient by its commutator subgroup.
abelian::AbelianGroup table_abelianization(const MetacyclicTable& t);

/// Abelianization of a presentation via the Smith normal form of the relator
/// exponent matrix.
abelian::AbelianGroup abelianization(const Presentation& p);

/// Consequence of adding the relation u^{2n} v^l = 1 to the Klein-bottle
/// group: a generator becomes torsion (u of order 2n when l = 0, otherwise v
/// with v^{2l} = 1).  `verified_order` is the exact order when a finite
/// witness is available: the cyclic quotient u -> 1, v -> 0 of Z_{2n} for
/// l = 0, the metacyclic table for l != 0, n >= 1 within the cap.
struct TorsionDiagnostic {
    std::int64_t n = 0;
    std::int64_t ell = 0;
    char generator = 'v';
    std::int64_t claimed_order = 0;
    std::optional<std::int64_t> verified_order;
    std::string method;

    bool verified() const { return verified_order.has_value(); }
    std::string to_string() const;
};

TorsionDiagnostic torsion_diagnostic(std::int64_t n, std::int64_t ell,
                                     std::int64_t cap = 20000);

} // namespace kleinlens::groups
