#include "kleinlens/groups.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace kleinlens::groups {

bool Word::is_reduced() const {
    for (std::size_t i = 0; i < syllables.size(); ++i) {
        if (syllables[i].second == 0) return false;
        if (i + 1 < syllables.size() &&
            syllables[i].first == syllables[i + 1].first)
            return false;
    }
    return true;
}

void Word::push(int generator, std::int64_t exponent) {
    if (exponent == 0) return;
    if (!syllables.empty() && syllables.back().first == generator) {
        syllables.back().second += exponent;
        if (syllables.back().second == 0) syllables.pop_back();
        return;
    }
    syllables.emplace_back(generator, exponent);
}

std::string Word::to_string(const std::vector<std::string>& names) const {
    if (syllables.empty()) return "1";
    std::ostringstream out;
    bool first = true;
    for (const auto& [g, e] : syllables) {
        if (!first) out << " ";
        first = false;
        out << names.at(std::size_t(g));
        if (e != 1) out << "^" << e;
    }
    return out.str();
}

Word operator*(const Word& a, const Word& b) {
    Word out = a;
    for (const auto& [g, e] : b.syllables) out.push(g, e);
    return out;
}

Word inverse(const Word& w) {
    Word out;
    for (auto it = w.syllables.rbegin(); it != w.syllables.rend(); ++it)
        out.push(it->first, -it->second);
    return out;
}

std::string Presentation::to_string() const {
    std::ostringstream out;
    out << "< ";
    for (int g = 0; g < generator_count; ++g) {
        if (g) out << ", ";
        out << names.at(std::size_t(g));
    }
    out << " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) {
        if (i) out << ", ";
        out << relators[i].to_string(names);
    }
    out << " >";
    return out.str();
}

Presentation klein_bottle_group() {
    Presentation p;
    p.generator_count = 2;
    p.names = {"u", "v"};
    Word rel;
    rel.push(0, 1);
    rel.push(1, 1);
    rel.push(0, -1);
    rel.push(1, 1);
    p.relators = {rel};
    return p;
}

Word peripheral_image(std::int64_t nn, std::int64_t ell) {
    Word w;
    w.push(0, 2 * nn);
    w.push(1, ell);
    return w;
}

Presentation dehn_filling_presentation(std::int64_t n, std::int64_t ell) {
    if (n < 1)
        throw std::invalid_argument("dehn_filling_presentation requires n >= 1");
    Presentation p = klein_bottle_group();
    p.relators.push_back(peripheral_image(n, ell));
    return p;
}

namespace {
std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}
} // namespace

MetacyclicTable::MetacyclicTable(std::int64_t n, std::int64_t ell)
    : n_(n), ell_given_(ell), ell_abs_(std::llabs(ell)),
      order_(4 * n * ell_abs_) {
    if (n < 1) throw std::invalid_argument("metacyclic table requires n >= 1");
    if (ell == 0) throw std::invalid_argument("metacyclic table requires l != 0");

    const std::int64_t uu = 2 * n_;       // u-exponent range
    const std::int64_t vv = 2 * ell_abs_; // v-exponent range
    table_.resize(std::size_t(order_) * std::size_t(order_));

    // (u^j v^k)(u^j' v^k') = u^{j+j'} v^{(-1)^{j'} k + k'}; each wrap of the
    // u-exponent past 2n rewrites u^{2n} -> v^{-l} by juxtaposition.
    for (std::int64_t j = 0; j < uu; ++j)
        for (std::int64_t k = 0; k < vv; ++k)
            for (std::int64_t j2 = 0; j2 < uu; ++j2)
                for (std::int64_t k2 = 0; k2 < vv; ++k2) {
                    std::int64_t ju = j + j2;
                    std::int64_t kv = (j2 % 2 ? -k : k) + k2;
                    while (ju >= uu) {
                        ju -= uu;
                        kv -= ell_abs_;
                    }
                    kv = mod_pos(kv, vv);
                    table_[std::size_t(index_of(j, k)) * size() +
                           index_of(j2, k2)] = index_of(ju, kv);
                }

    inverse_.assign(size(), 0);
    for (std::uint32_t a = 0; a < size(); ++a) {
        bool found = false;
        for (std::uint32_t b = 0; b < size(); ++b)
            if (mul(a, b) == identity()) {
                inverse_[a] = b;
                found = true;
                break;
            }
        if (!found)
            throw std::logic_error("metacyclic table has no inverse; table corrupt");
    }
}

std::uint32_t MetacyclicTable::index_of(std::int64_t j, std::int64_t k) const {
    const std::int64_t uu = 2 * n_, vv = 2 * ell_abs_;
    j = mod_pos(j, uu);
    k = mod_pos(k, vv);
    return std::uint32_t(j * vv + k);
}

std::pair<std::int64_t, std::int64_t>
MetacyclicTable::normal_form(std::uint32_t idx) const {
    const std::int64_t vv = 2 * ell_abs_;
    return {std::int64_t(idx) / vv, std::int64_t(idx) % vv};
}

std::int64_t MetacyclicTable::element_order(std::uint32_t a) const {
    std::uint32_t acc = a;
    std::int64_t k = 1;
    while (acc != identity()) {
        acc = mul(acc, a);
        ++k;
        if (k > order_)
            throw std::logic_error("element order exceeds group order; table corrupt");
    }
    return k;
}

MetacyclicTable build_metacyclic_table(std::int64_t n, std::int64_t ell,
                                       std::int64_t cap) {
    if (n < 1) throw std::invalid_argument("metacyclic table requires n >= 1");
    if (ell == 0) throw std::invalid_argument("metacyclic table requires l != 0");
    const std::int64_t order = 4 * n * std::llabs(ell);
    if (order > cap) {
        std::ostringstream msg;
        msg << "metacyclic table order " << order << " exceeds cap " << cap;
        throw std::length_error(msg.str());
    }
    return MetacyclicTable(n, ell);
}

std::int64_t group_order(const MetacyclicTable& t) { return t.order(); }

bool is_abelian(const MetacyclicTable& t) {
    for (std::uint32_t a = 0; a < t.size(); ++a)
        for (std::uint32_t b = a + 1; b < t.size(); ++b)
            if (t.mul(a, b) != t.mul(b, a)) return false;
    return true;
}

bool is_cyclic(const MetacyclicTable& t) {
    for (std::uint32_t a = 0; a < t.size(); ++a)
        if (t.element_order(a) == t.order()) return true;
    return false;
}

std::int64_t element_order(const MetacyclicTable& t, std::int64_t j,
                           std::int64_t k) {
    return t.element_order(t.index_of(j, k));
}

std::vector<std::uint32_t>
subgroup_generated(const MetacyclicTable& t,
                   const std::vector<std::uint32_t>& gens) {
    std::vector<bool> in(t.size(), false);
    std::vector<std::uint32_t> members{t.identity()};
    in[t.identity()] = true;
    std::vector<std::uint32_t> work = members;
    for (std::uint32_t g : gens)
        if (!in[g]) {
            in[g] = true;
            members.push_back(g);
            work.push_back(g);
        }
    while (!work.empty()) {
        std::uint32_t a = work.back();
        work.pop_back();
        for (std::uint32_t g : gens) {
            for (std::uint32_t c : {t.mul(a, g), t.mul(g, a)}) {
                if (!in[c]) {
                    in[c] = true;
                    members.push_back(c);
                    work.push_back(c);
                }
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

bool is_normal_subgroup(const MetacyclicTable& t,
                        const std::vector<std::uint32_t>& subgroup) {
    std::vector<bool> in(t.size(), false);
    for (std::uint32_t s : subgroup) in[s] = true;
    for (std::uint32_t g = 0; g < t.size(); ++g) {
        const std::uint32_t ginv = t.inverse(g);
        for (std::uint32_t s : subgroup)
            if (!in[t.mul(t.mul(g, s), ginv)]) return false;
    }
    return true;
}

std::vector<std::uint32_t> commutator_subgroup(const MetacyclicTable& t) {
    std::vector<std::uint32_t> comms;
    std::vector<bool> seen(t.size(), false);
    for (std::uint32_t a = 0; a < t.size(); ++a)
        for (std::uint32_t b = 0; b < t.size(); ++b) {
            std::uint32_t c =
                t.mul(t.mul(a, b), t.mul(t.inverse(a), t.inverse(b)));
            if (!seen[c]) {
                seen[c] = true;
                comms.push_back(c);
            }
        }
    return subgroup_generated(t, comms);
}

std::int64_t QuotientGroup::element_order(std::uint32_t a) const {
    std::uint32_t acc = a;
    std::int64_t k = 1;
    while (acc != 0) {
        acc = mul(acc, a);
        ++k;
        if (k > std::int64_t(size()))
            throw std::logic_error("quotient element order exceeds group order");
    }
    return k;
}

bool QuotientGroup::is_cyclic() const {
    for (std::uint32_t a = 0; a < size(); ++a)
        if (element_order(a) == std::int64_t(size())) return true;
    return false;
}

QuotientGroup quotient_by(const MetacyclicTable& t,
                          const std::vector<std::uint32_t>& normal_subgroup) {
    if (!is_normal_subgroup(t, normal_subgroup))
        throw std::invalid_argument("quotient_by: subgroup is not normal");

    // Left cosets; each element's coset is named by its smallest member.
    std::vector<std::uint32_t> coset_rep(t.size(), std::uint32_t(t.size()));
    std::vector<std::uint32_t> reps;
    for (std::uint32_t g = 0; g < t.size(); ++g) {
        if (coset_rep[g] != t.size()) continue;
        std::uint32_t rep = g; // smallest unassigned is the smallest member
        for (std::uint32_t s : normal_subgroup) coset_rep[t.mul(g, s)] = rep;
        reps.push_back(rep);
    }

    std::map<std::uint32_t, std::uint32_t> rep_index;
    for (std::uint32_t i = 0; i < reps.size(); ++i) rep_index[reps[i]] = i;

    QuotientGroup q;
    q.reps = reps;
    q.table.resize(reps.size() * reps.size());
    for (std::uint32_t a = 0; a < reps.size(); ++a)
        for (std::uint32_t b = 0; b < reps.size(); ++b)
            q.table[std::size_t(a) * reps.size() + b] =
                rep_index.at(coset_rep[t.mul(reps[a], reps[b])]);
    return q;
}

abelian::AbelianGroup abelian_invariants(const QuotientGroup& g) {
    const std::int64_t n = std::int64_t(g.size());
    // N(m) = #{x : x^m = e} determines a finite abelian group up to
    // isomorphism; peel invariant factors largest-first.
    std::vector<std::int64_t> divisors;
    for (std::int64_t m = 1; m <= n; ++m)
        if (n % m == 0) divisors.push_back(m);

    std::map<std::int64_t, std::int64_t> order_count;
    for (std::uint32_t a = 0; a < g.size(); ++a) ++order_count[g.element_order(a)];

    std::map<std::int64_t, std::int64_t> killed; // N(m)
    for (std::int64_t m : divisors) {
        std::int64_t c = 0;
        for (const auto& [ord, cnt] : order_count)
            if (m % ord == 0) c += cnt;
        killed[m] = c;
    }

    std::vector<abelian::Int> factors;
    std::int64_t remaining = n;
    while (remaining > 1) {
        std::int64_t exponent = remaining;
        for (std::int64_t m : divisors)
            if (killed[m] == remaining) {
                exponent = m;
                break;
            }
        factors.insert(factors.begin(), abelian::Int(exponent));
        for (std::int64_t m : divisors)
            killed[m] /= std::gcd(exponent, m);
        remaining /= exponent;
    }
    return abelian::AbelianGroup{factors, 0};
}

abelian::AbelianGroup table_abelianization(const MetacyclicTable& t) {
    return abelian_invariants(quotient_by(t, commutator_subgroup(t)));
}

abelian::AbelianGroup abelianization(const Presentation& p) {
    abelian::IntMatrix rel(p.relators.size(), std::size_t(p.generator_count));
    for (std::size_t i = 0; i < p.relators.size(); ++i)
        for (const auto& [g, e] : p.relators[i].syllables)
            rel.at(i, std::size_t(g)) += e;
    return abelian::cokernel(rel, abelian::free_abelian(std::size_t(p.generator_count)));
}

std::string TorsionDiagnostic::to_string() const {
    std::ostringstream out;
    out << "adding u^" << 2 * n << " v^" << ell << " = 1: generator "
        << generator << " becomes torsion of order " << claimed_order << " ("
        << method;
    if (verified_order)
        out << "; verified order " << *verified_order;
    out << ")";
    return out.str();
}

TorsionDiagnostic torsion_diagnostic(std::int64_t n, std::int64_t ell,
                                     std::int64_t cap) {
    if (n == 0 && ell == 0)
        throw std::invalid_argument("torsion diagnostic needs (n,l) != (0,0)");

    TorsionDiagnostic d;
    d.n = n;
    d.ell = ell;
    if (ell == 0) {
        // u^{2n} = 1; the quotient u -> 1, v -> 0 onto Z_{2n} shows the order
        // is exactly 2n.
        d.generator = 'u';
        d.claimed_order = 2 * std::llabs(n);
        const std::int64_t m = d.claimed_order;
        std::int64_t acc = 1 % m, ord = 1;
        while (acc != 0) {
            acc = (acc + 1) % m;
            ++ord;
        }
        d.verified_order = ord;
        d.method = "cyclic quotient u -> 1 of Z_" + std::to_string(m);
        return d;
    }

    d.generator = 'v';
    d.claimed_order = 2 * std::llabs(ell);
    if (n >= 1 && 4 * n * std::llabs(ell) <= cap) {
        MetacyclicTable t = build_metacyclic_table(n, ell, cap);
        d.verified_order = t.element_order(t.v());
        d.method = "metacyclic table";
    } else if (n >= 1) {
        d.method = "order cap exceeded; v^{2l} = 1 derived from the relators";
    } else {
        d.method = "no finite table for n = 0; v^{2l} = 1 derived from the relators";
    }
    return d;
}

} // namespace kleinlens::groups
