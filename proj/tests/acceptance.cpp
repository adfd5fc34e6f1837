// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "kleinlens/abelian.hpp"
#include "kleinlens/geometry.hpp"
#include "kleinlens/groups.hpp"
#include "kleinlens/lens_core.hpp"
#include "kleinlens/mesh.hpp"

using namespace kleinlens;

namespace {

struct Criterion {
    std::string name;
    double budget_seconds;
    bool pass = true;
    std::string detail;
    double seconds = 0;
};

class Checker {
  public:
    Checker(std::string name, double budget)
        : crit_{std::move(name), budget}, start_(std::chrono::steady_clock::now()) {}

    template <typename... Parts>
    void require(bool ok, const Parts&... parts) {
        if (ok || !crit_.pass) return;
        std::ostringstream out;
        (out << ... << parts);
        crit_.pass = false;
        crit_.detail = out.str();
    }

    Criterion finish() {
        crit_.seconds = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start_)
                            .count();
        if (crit_.pass && crit_.seconds > crit_.budget_seconds) {
            crit_.pass = false;
            std::ostringstream out;
            out << "runtime " << crit_.seconds << " s exceeds budget "
                << crit_.budget_seconds << " s";
            crit_.detail = out.str();
        }
        return crit_;
    }

  private:
    Criterion crit_;
    std::chrono::steady_clock::time_point start_;
};

// 1. Klein-bottle classification table for p <= 16, zero tolerance.
Criterion criterion_classification() {
    Checker c("Klein-bottle classification table, p <= 16", 1.0);
    const std::set<std::pair<std::int64_t, std::int64_t>> expected{
        {4, 1}, {4, 3}, {8, 3}, {8, 5}, {12, 5}, {12, 7}, {16, 7}, {16, 9}};
    for (std::int64_t p = 1; p <= 16; ++p)
        for (std::int64_t q = p == 1 ? 0 : 1; q < std::max<std::int64_t>(p, 1); ++q) {
            if (p > 1 && std::gcd(p, q) != 1) continue;
            const bool embeds = klein_bottle_embeds(LensSpace(p, q)).embeds;
            const bool should = expected.count({p, q}) > 0;
            c.require(embeds == should, "L(", p, ",", q, "): got ",
                      embeds ? "yes" : "no", ", expected ", should ? "yes" : "no");
        }
    return c.finish();
}

// 2. Mayer-Vietoris homology of the Dehn fillings, n <= 50, |l| <= 25.
Criterion criterion_homology() {
    Checker c("Dehn-filling homology, n <= 50, |l| <= 25", 5.0);
    using abelian::AbelianGroup;
    using abelian::Int;
    for (std::int64_t n = 1; n <= 50; ++n)
        for (std::int64_t ell = -25; ell <= 25; ++ell) {
            if (std::gcd(n, ell) != 1) continue;
            const AbelianGroup h1 = abelian::dehn_filling_H1(n, ell);
            if (ell % 2 != 0)
                c.require(h1 == AbelianGroup{{Int(4 * n)}, 0},
                          "odd (", n, ",", ell, "): got ", h1.to_string());
            else
                c.require(h1 == AbelianGroup{{Int(2), Int(2 * n)}, 0},
                          "even (", n, ",", ell, "): got ", h1.to_string());
        }
    return c.finish();
}

// 3. Metacyclic tables, n <= 12, |l| <= 12, with the abelianization oracle.
Criterion criterion_group_theory() {
    Checker c("metacyclic tables, n <= 12, |l| <= 12", 60.0);
    using namespace kleinlens::groups;
    std::mt19937_64 rng(20000);
    for (std::int64_t n = 1; n <= 12; ++n)
        for (std::int64_t ell = -12; ell <= 12; ++ell) {
            if (ell == 0) continue;
            const std::int64_t order = 4 * n * std::llabs(ell);
            if (order > 20000) continue;
            const MetacyclicTable t = build_metacyclic_table(n, ell);
            c.require(group_order(t) == order, "(", n, ",", ell, "): order");

            bool ok = true;
            for (std::uint32_t a = 0; a < t.size() && ok; ++a)
                ok = t.mul(0, a) == a && t.mul(a, 0) == a;
            c.require(ok, "(", n, ",", ell, "): identity");

            std::vector<bool> seen(t.size());
            bool perm = true;
            for (std::uint32_t a = 0; a < t.size() && perm; ++a) {
                std::fill(seen.begin(), seen.end(), false);
                for (std::uint32_t b = 0; b < t.size(); ++b) seen[t.mul(a, b)] = true;
                for (std::uint32_t b = 0; b < t.size(); ++b) perm = perm && seen[b];
                std::fill(seen.begin(), seen.end(), false);
                for (std::uint32_t b = 0; b < t.size(); ++b) seen[t.mul(b, a)] = true;
                for (std::uint32_t b = 0; b < t.size(); ++b) perm = perm && seen[b];
            }
            c.require(perm, "(", n, ",", ell, "): rows/columns not permutations");

            bool assoc = true;
            if (order <= 200) {
                for (std::uint32_t a = 0; a < t.size() && assoc; ++a)
                    for (std::uint32_t b = 0; b < t.size() && assoc; ++b)
                        for (std::uint32_t x = 0; x < t.size(); ++x)
                            if (t.mul(t.mul(a, b), x) != t.mul(a, t.mul(b, x))) {
                                assoc = false;
                                break;
                            }
            } else {
                std::uniform_int_distribution<std::uint32_t> pick(
                    0, std::uint32_t(t.size() - 1));
                for (int trial = 0; trial < 10000 && assoc; ++trial) {
                    const std::uint32_t a = pick(rng), b = pick(rng), x = pick(rng);
                    assoc = t.mul(t.mul(a, b), x) == t.mul(a, t.mul(b, x));
                }
            }
            c.require(assoc, "(", n, ",", ell, "): associativity");

            c.require(t.element_order(t.v()) == 2 * std::llabs(ell),
                      "(", n, ",", ell, "): ord(v)");
            c.require(is_abelian(t) == (ell == 1 || ell == -1),
                      "(", n, ",", ell, "): abelian iff l = +-1");

            if (std::gcd(n, ell) == 1)
                c.require(table_abelianization(t) == abelian::dehn_filling_H1(n, ell),
                          "(", n, ",", ell, "): abelianization oracle");
        }
    return c.finish();
}

// 4. Heegaard arithmetic: gluing identities and the three class identities.
Criterion criterion_heegaard() {
    Checker c("Heegaard arithmetic, p <= 500 / n <= 100", 2.0);
    for (std::int64_t p = 1; p <= 500; ++p)
        for (std::int64_t q = p == 1 ? 0 : 1; q < std::max<std::int64_t>(p, 1); ++q) {
            if (p > 1 && std::gcd(p, q) != 1) continue;
            const GluingMatrix g = heegaard_gluing(LensSpace(p, q));
            c.require(p * g.r + q * g.s == 1, "Bezout at L(", p, ",", q, ")");
            c.require(g.det() == -1, "determinant at L(", p, ",", q, ")");
        }
    for (std::int64_t n = 1; n <= 100; ++n) {
        // 2*lambda_1 + mu_1 -> +-(2*lambda_2 - mu_2)  (both signs).
        const auto plus = geometry::two_moebius_construction(n, Sign::Plus);
        c.require(plus.image == TorusClass{-1, 2, Basis::HeegaardSide2},
                  "two-Moebius + at n=", n);
        const auto minus = geometry::two_moebius_construction(n, Sign::Minus);
        c.require(minus.image == TorusClass{1, -2, Basis::HeegaardSide2},
                  "two-Moebius - at n=", n);

        // 4n*lambda_2 - (2n+1)*mu_2 is the image of mu_1.
        const TorusClass handle =
            geometry::handle_boundary_class(geometry::handle_layout(n, Sign::Plus));
        const GluingMatrix g = heegaard_gluing(LensSpace(4 * n, 2 * n + 1));
        c.require(handle == g.mu1_image() &&
                      handle == TorusClass{-(2 * n + 1), 4 * n, Basis::HeegaardSide2},
                  "handle class at n=", n);

        // -4n*lambda_2 - (2n+1)*mu_2 names L(4n, 2n-1).
        const TorusClass fib = geometry::heegaard_identification_from_fibration(n);
        c.require(geometry::lens_from_meridian_image(fib) == normalize(4 * n, 2 * n - 1),
                  "fibration identification at n=", n);
    }
    return c.finish();
}

// 5. Geometry: seams, Euler characteristic, injectivity, windings.
Criterion criterion_geometry() {
    Checker c("lens-model geometry, n <= 16 seams / n <= 8 injectivity", 30.0);
    using namespace kleinlens::geometry;
    for (std::int64_t n = 1; n <= 16; ++n)
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const QuotientMesh mesh = klein_lens_embedding(n, sign, 64);
            const SeamCheckReport seams = verify_seams(mesh);
            c.require(seams.max_residual < 1e-12, "seam residual ",
                      seams.max_residual, " at n=", n, " sign ", to_string(sign));
            c.require(mesh_euler_characteristic(mesh) == 0, "chi != 0 at n=", n);
            if (n <= 8) {
                const InjectivityReport inj =
                    embedded_injectivity_check(mesh, mesh.space, 1e-4);
                c.require(inj.pass, "injectivity at n=", n, " sign ",
                          to_string(sign), ": min separation ", inj.min_separation);
            }
        }
    const WindingCount w = moebius_boundary_winding(10000, false);
    c.require(w.longitude == 2 && w.meridian == 1, "standard winding");
    const WindingCount m = moebius_boundary_winding(10000, true);
    c.require(m.longitude == 2 && m.meridian == -1, "mirrored winding");
    return c.finish();
}

// 6. Negative controls.
Criterion criterion_negative_controls() {
    Checker c("negative controls", 30.0);
    for (std::int64_t p = 1; p <= 200; ++p)
        for (std::int64_t q = p == 1 ? 0 : 1; q < std::max<std::int64_t>(p, 1); ++q) {
            if (p > 1 && std::gcd(p, q) != 1) continue;
            const bool embeds = projective_plane_embeds(LensSpace(p, q));
            c.require(embeds == (p == 2 && q == 1), "RP^2 verdict at L(", p, ",",
                      q, ")");
        }
    for (std::int64_t n = 1; n <= 50; ++n)
        for (std::int64_t ell = -24; ell <= 24; ell += 2) {
            if (std::gcd(n, ell) != 1) continue;
            c.require(!abelian::dehn_filling_H1(n, ell).is_cyclic(),
                      "even filling cyclic at (", n, ",", ell, ")");
        }
    // A deliberately corrupted seam must fail verification.
    geometry::QuotientMesh mesh = geometry::klein_lens_embedding(2, Sign::Plus, 32);
    mesh.vertices[mesh.seams.front().b].z2 += std::complex<double>(0.0, 1e-6);
    c.require(!geometry::verify_seams(mesh).pass,
              "corrupted seam passed verification");
    return c.finish();
}

} // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion_classification());
    results.push_back(criterion_homology());
    results.push_back(criterion_group_theory());
    results.push_back(criterion_heegaard());
    results.push_back(criterion_geometry());
    results.push_back(criterion_negative_controls());

    std::size_t passed = 0;
    for (std::size_t i = 0; i < results.size(); ++i) {
        const Criterion& r = results[i];
        std::printf("criterion %zu [%s]: %s (%.3f s, budget %.0f s)%s%s\n", i + 1,
                    r.name.c_str(), r.pass ? "PASS" : "FAIL", r.seconds,
                    r.budget_seconds, r.detail.empty() ? "" : " -- ",
                    r.detail.c_str());
        if (r.pass) ++passed;
    }
    std::printf("acceptance: %zu/%zu criteria passed\n", passed, results.size());
    return passed == results.size() ? 0 : 1;
}
