#include "kleinlens/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>

#include "kleinlens/abelian.hpp"
#include "kleinlens/geometry.hpp"
#include "kleinlens/groups.hpp"
#include "kleinlens/lens_core.hpp"
#include "kleinlens/mesh.hpp"

namespace kleinlens::verify {

namespace {

using Clock = std::chrono::steady_clock;

/// Collects cases and the first counterexample of one sweep.
class Suite {
  public:
    explicit Suite(std::string name) { result_.name = std::move(name); }

    template <typename... Parts>
    void require(bool condition, const Parts&... parts) {
        ++result_.cases;
        if (condition || !result_.pass) return;
        std::ostringstream out;
        (out << ... << parts);
        result_.pass = false;
        result_.first_failure = out.str();
    }

    SuiteResult finish(double ms) {
        result_.ms = ms;
        return result_;
    }

  private:
    SuiteResult result_;
};

std::vector<LensSpace> canonical_spaces(std::int64_t max_p) {
    std::vector<LensSpace> spaces;
    spaces.emplace_back(1, 0);
    for (std::int64_t p = 2; p <= max_p; ++p)
        for (std::int64_t q = 1; q < p; ++q)
            if (std::gcd(p, q) == 1) spaces.emplace_back(p, q);
    return spaces;
}

void suite_heegaard(Suite& s, const VerifyOptions& opt) {
    for (const LensSpace& space : canonical_spaces(opt.max_p)) {
        const GluingMatrix g = heegaard_gluing(space);
        s.require(space.p * g.r + space.q * g.s == 1, "Bezout fails for ",
                  space.to_string());
        s.require(g.det() == -1, "determinant != -1 for ", space.to_string());
        if (space.q > 1)
            s.require(0 <= g.r && g.r < space.q, "witness r out of [0,q) for ",
                      space.to_string());
    }
}

void suite_homeo(Suite& s, const VerifyOptions& opt) {
    const std::int64_t cap_p = std::min<std::int64_t>(opt.max_p, 60);
    for (std::int64_t p = 1; p <= cap_p; ++p) {
        std::vector<LensSpace> at_p;
        for (const LensSpace& sp : canonical_spaces(cap_p))
            if (sp.p == p) at_p.push_back(sp);
        for (const LensSpace& a : at_p)
            for (const LensSpace& b : at_p)
                s.require(are_homeomorphic(a, b) ==
                              (homeo_class_rep(a) == homeo_class_rep(b)),
                          "homeomorphism predicate disagrees with class reps at ",
                          a.to_string(), " vs ", b.to_string());
    }
    for (std::int64_t n = 1; n <= opt.max_n; ++n)
        s.require(are_homeomorphic(LensSpace(4 * n, 2 * n + 1),
                                   LensSpace(4 * n, 2 * n - 1)),
                  "L(4n,2n+1) !~ L(4n,2n-1) at n=", n);
}

void suite_klein_classification(Suite& s, const VerifyOptions& opt) {
    for (const LensSpace& space : canonical_spaces(opt.max_p)) {
        // Enumeration oracle: some L(4n, 2n+-1) with 4n = p is homeomorphic.
        bool oracle = false;
        std::int64_t oracle_n = 0;
        if (space.p % 4 == 0) {
            const std::int64_t n = space.p / 4;
            if (are_homeomorphic(space, LensSpace(4 * n, 2 * n + 1)) ||
                are_homeomorphic(space, LensSpace(4 * n, 2 * n - 1))) {
                oracle = true;
                oracle_n = n;
            }
        }
        const EmbeddabilityVerdict v = klein_bottle_embeds(space);
        bool closed_form = v.embeds;
        if (opt.inject_fault && space == LensSpace(8, 3)) closed_form = !closed_form;
        s.require(closed_form == oracle,
                  "closed form disagrees with enumeration at ", space.to_string());
        if (v.embeds && oracle)
            s.require(*v.n == oracle_n && space.p == 4 * *v.n,
                      "verdict n wrong at ", space.to_string());
    }
}

void suite_deck(Suite& s, const VerifyOptions& opt, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::int64_t cap_p = std::min<std::int64_t>(opt.max_p, 100);
    for (const LensSpace& space : canonical_spaces(cap_p)) {
        for (int trial = 0; trial < 2; ++trial) {
            double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
            const double norm = std::sqrt(a * a + b * b + c * c + d * d);
            C2Point z{{a / norm, b / norm}, {c / norm, d / norm}};
            C2Point w = z;
            for (std::int64_t i = 0; i < space.p; ++i) {
                w = deck_generator(space, w);
                s.require(std::abs(w.norm_sq() - 1.0) <= 1e-12,
                          "norm drift at ", space.to_string());
            }
            const double err =
                std::max(std::abs(w.z1 - z.z1), std::abs(w.z2 - z.z2));
            s.require(err <= 1e-9, "sigma^p != id at ", space.to_string(),
                      ", error ", err);
        }
    }
}

void suite_gluing_linearity(Suite& s, const VerifyOptions& opt,
                            std::mt19937_64& rng) {
    std::uniform_int_distribution<std::int64_t> coeff(-20, 20);
    const auto spaces = canonical_spaces(std::min<std::int64_t>(opt.max_p, 40));
    for (const LensSpace& space : spaces) {
        const GluingMatrix g = heegaard_gluing(space);
        for (int trial = 0; trial < 4; ++trial) {
            const TorusClass c1{coeff(rng), coeff(rng), Basis::HeegaardSide1};
            const TorusClass c2{coeff(rng), coeff(rng), Basis::HeegaardSide1};
            s.require(apply_gluing(g, c1 + c2) ==
                          apply_gluing(g, c1) + apply_gluing(g, c2),
                      "apply_gluing not additive for ", space.to_string());
            s.require(apply_gluing_inverse(g, apply_gluing(g, c1)) == c1,
                      "gluing inverse fails for ", space.to_string());
        }
        s.require(apply_gluing(g, TorusClass{0, 0, Basis::HeegaardSide1}).is_zero(),
                  "zero class not preserved for ", space.to_string());
    }
}

void suite_snf(Suite& s, const VerifyOptions&, std::mt19937_64& rng) {
    using namespace kleinlens::abelian;
    std::uniform_int_distribution<int> dim(1, 8);
    std::uniform_int_distribution<std::int64_t> entry(-50, 50);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = std::size_t(dim(rng)), cols = std::size_t(dim(rng));
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
        const SmithDecomposition snf = smith_normal_form(m);
        s.require(snf.U * m * snf.V == snf.D, "U*m*V != D (trial ", trial, ")");
        s.require(snf.D.is_diagonal(), "D not diagonal (trial ", trial, ")");
        const Int du = determinant(snf.U), dv = determinant(snf.V);
        s.require(du == 1 || du == -1, "U not unimodular (trial ", trial, ")");
        s.require(dv == 1 || dv == -1, "V not unimodular (trial ", trial, ")");
        const std::size_t nmin = std::min(rows, cols);
        for (std::size_t i = 0; i + 1 < nmin; ++i) {
            const Int &a = snf.D.at(i, i), &b = snf.D.at(i + 1, i + 1);
            s.require(a >= 0 && b >= 0, "negative invariant factor (trial ",
                      trial, ")");
            if (a != 0)
                s.require(b % a == 0, "divisibility chain broken (trial ",
                          trial, ")");
            else
                s.require(b == 0, "zero not trailing (trial ", trial, ")");
        }
    }
}

void suite_cokernel_invariance(Suite& s, const VerifyOptions&,
                               std::mt19937_64& rng) {
    using namespace kleinlens::abelian;
    std::uniform_int_distribution<int> dim(1, 5);
    std::uniform_int_distribution<std::int64_t> entry(-9, 9);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = std::size_t(dim(rng)), cols = std::size_t(dim(rng));
        IntMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = entry(rng);
        const AbelianGroup base = cokernel(m, free_abelian(cols));

        IntMatrix shuffled = m;
        for (std::size_t i = 0; i + 1 < rows; ++i) {
            std::uniform_int_distribution<std::size_t> pick(i, rows - 1);
            shuffled.swap_rows(i, pick(rng));
        }
        s.require(cokernel(shuffled, free_abelian(cols)) == base,
                  "cokernel changed under row shuffle (trial ", trial, ")");

        // Unimodular change of generators: m -> m * E with E elementary.
        IntMatrix changed = m;
        if (cols >= 2) {
            std::uniform_int_distribution<std::size_t> pick(0, cols - 1);
            std::size_t aidx = pick(rng), bidx = pick(rng);
            if (aidx != bidx) changed.add_col_multiple(aidx, bidx, entry(rng));
        }
        s.require(cokernel(changed, free_abelian(cols)) == base,
                  "cokernel changed under unimodular basis change (trial ",
                  trial, ")");
    }
}

void suite_dehn_filling_h1(Suite& s, const VerifyOptions& opt) {
    using namespace kleinlens::abelian;
    const std::int64_t max_n = std::min<std::int64_t>(opt.max_n, 50);
    for (std::int64_t n = 1; n <= max_n; ++n)
        for (std::int64_t ell = -25; ell <= 25; ++ell) {
            if (std::gcd(n, ell) != 1) continue;
            const AbelianGroup h1 = dehn_filling_H1(n, ell);
            if (ell % 2 != 0) {
                s.require(h1.is_cyclic(), "odd l not cyclic at (", n, ",", ell, ")");
                s.require(h1 == AbelianGroup{{Int(4 * n)}, 0},
                          "odd l != Z_{4n} at (", n, ",", ell, ")");
            } else {
                s.require(!h1.is_cyclic(), "even l cyclic at (", n, ",", ell, ")");
                const AbelianGroup expected{{Int(2), Int(2 * n)}, 0};
                s.require(h1 == expected, "even l != Z_{2n}+Z_2 at (", n, ",",
                          ell, ")");
            }
            s.require(h1.order() == 4 * n, "order != 4n at (", n, ",", ell, ")");
        }
}

void suite_metacyclic(Suite& s, const VerifyOptions& opt, std::mt19937_64& rng) {
    using namespace kleinlens::groups;
    const std::int64_t max_n = std::min<std::int64_t>(opt.max_n, 12);
    for (std::int64_t n = 1; n <= max_n; ++n)
        for (std::int64_t ell = -12; ell <= 12; ++ell) {
            if (ell == 0 || 4 * n * std::llabs(ell) > opt.cap) continue;
            const MetacyclicTable t = build_metacyclic_table(n, ell, opt.cap);
            const std::int64_t order = t.order();
            s.require(order == 4 * n * std::llabs(ell), "order wrong at (", n,
                      ",", ell, ")");

            // Identity and two-sided inverses.
            bool id_ok = true;
            for (std::uint32_t a = 0; a < t.size(); ++a)
                id_ok = id_ok && t.mul(0, a) == a && t.mul(a, 0) == a;
            s.require(id_ok, "identity fails at (", n, ",", ell, ")");

            // Every row and column is a permutation.
            bool perm_ok = true;
            std::vector<bool> seen(t.size());
            for (std::uint32_t a = 0; a < t.size() && perm_ok; ++a) {
                std::fill(seen.begin(), seen.end(), false);
                for (std::uint32_t b = 0; b < t.size(); ++b) seen[t.mul(a, b)] = true;
                for (std::uint32_t b = 0; b < t.size(); ++b) perm_ok = perm_ok && seen[b];
                std::fill(seen.begin(), seen.end(), false);
                for (std::uint32_t b = 0; b < t.size(); ++b) seen[t.mul(b, a)] = true;
                for (std::uint32_t b = 0; b < t.size(); ++b) perm_ok = perm_ok && seen[b];
            }
            s.require(perm_ok, "rows/columns not permutations at (", n, ",", ell, ")");

            // Associativity: exhaustive up to order 200, random triples above.
            bool assoc_ok = true;
            if (order <= 200) {
                for (std::uint32_t a = 0; a < t.size() && assoc_ok; ++a)
                    for (std::uint32_t b = 0; b < t.size() && assoc_ok; ++b)
                        for (std::uint32_t c = 0; c < t.size(); ++c)
                            if (t.mul(t.mul(a, b), c) != t.mul(a, t.mul(b, c))) {
                                assoc_ok = false;
                                break;
                            }
            } else {
                std::uniform_int_distribution<std::uint32_t> pick(
                    0, std::uint32_t(t.size() - 1));
                for (int trial = 0; trial < 10000 && assoc_ok; ++trial) {
                    const std::uint32_t a = pick(rng), b = pick(rng), c = pick(rng);
                    assoc_ok = t.mul(t.mul(a, b), c) == t.mul(a, t.mul(b, c));
                }
            }
            s.require(assoc_ok, "associativity fails at (", n, ",", ell, ")");

            // v generates a normal subgroup of order 2|l| with cyclic
            // quotient of order 2n; u v u^-1 = v^-1 holds.
            s.require(t.element_order(t.v()) == 2 * std::llabs(ell),
                      "ord(v) != 2|l| at (", n, ",", ell, ")");
            s.require(t.mul(t.mul(t.u(), t.v()), t.inverse(t.u())) ==
                          t.inverse(t.v()),
                      "u v u^-1 != v^-1 at (", n, ",", ell, ")");
            const auto vsub = subgroup_generated(t, {t.v()});
            s.require(std::int64_t(vsub.size()) == 2 * std::llabs(ell),
                      "<v> order wrong at (", n, ",", ell, ")");
            s.require(is_normal_subgroup(t, vsub), "<v> not normal at (", n,
                      ",", ell, ")");
            const QuotientGroup q = quotient_by(t, vsub);
            s.require(std::int64_t(q.size()) == 2 * n && q.is_cyclic(),
                      "G/<v> not Z_{2n} at (", n, ",", ell, ")");

            const bool abelian_expected = ell == 1 || ell == -1;
            s.require(is_abelian(t) == abelian_expected,
                      "abelian iff l=+-1 fails at (", n, ",", ell, ")");
            s.require(is_cyclic(t) == abelian_expected,
                      "cyclic iff l=+-1 fails at (", n, ",", ell, ")");
        }
}

void suite_abelianization_oracle(Suite& s, const VerifyOptions& opt) {
    using namespace kleinlens::groups;
    const std::int64_t max_n = std::min<std::int64_t>(opt.max_n, 20);
    for (std::int64_t n = 1; n <= max_n; ++n)
        for (std::int64_t ell = -11; ell <= 11; ++ell) {
            if (ell == 0 || std::gcd(n, ell) != 1) continue;
            const auto from_presentation =
                abelianization(dehn_filling_presentation(n, ell));
            const auto from_mv = abelian::dehn_filling_H1(n, ell);
            s.require(from_presentation == from_mv,
                      "presentation abelianization != Mayer-Vietoris H1 at (",
                      n, ",", ell, ")");
            if (4 * n * std::llabs(ell) <= opt.cap) {
                const auto from_table =
                    table_abelianization(build_metacyclic_table(n, ell, opt.cap));
                s.require(from_table == from_mv,
                          "table abelianization != H1 at (", n, ",", ell, ")");
            }
        }
}

void suite_seams(Suite& s, const VerifyOptions& opt) {
    using namespace kleinlens::geometry;
    const std::int64_t max_n = std::min<std::int64_t>(opt.max_n, 16);
    for (std::int64_t n = 1; n <= max_n; ++n)
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const QuotientMesh mesh =
                klein_lens_embedding(n, sign, opt.mesh_resolution);
            const SeamCheckReport check = verify_seams(mesh);
            s.require(check.pass, "seam residual ", check.max_residual,
                      " at n=", n, " sign ", to_string(sign));
            s.require(mesh_euler_characteristic(mesh) == 0,
                      "Euler characteristic != 0 at n=", n);
            bool canon_ok = true;
            for (const auto& [cz, k] : mesh.canonical) {
                (void)k;
                canon_ok = canon_ok && std::abs(cz.norm_sq() - 1.0) <= 1e-12;
            }
            s.require(canon_ok, "canonical representative off sphere at n=", n);
        }
}

void suite_constructions(Suite& s, const VerifyOptions& opt) {
    using namespace kleinlens::geometry;
    for (std::int64_t n = 1; n <= opt.max_n; ++n) {
        // Bezout identity of the two-Moebius witnesses.
        s.require(4 * n * n + (2 * n + 1) * (-(2 * n - 1)) == 1,
                  "two-Moebius Bezout fails at n=", n);
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const TwoMoebiusReport rep = two_moebius_construction(n, sign);
            s.require(rep.pass, "two-Moebius image mismatch at n=", n);
        }

        // Handle construction: itemized counts sum to 4n and 2n+1 and the
        // class is the meridian image.
        const HandleLayout layout = handle_layout(n, Sign::Plus);
        std::int64_t mu_total = 0, lambda_total = 0;
        for (std::int64_t c : layout.mu_intersections) mu_total += c;
        for (std::int64_t c : layout.lambda_intersections) lambda_total += c;
        s.require(mu_total == 4 * n, "mu intersections != 4n at n=", n);
        s.require(lambda_total == 2 * n + 1, "lambda intersections != 2n+1 at n=", n);
        s.require(layout.second_over_first == n - 1, "passes over first != n-1");
        const TorusClass cls = handle_boundary_class(layout);
        const GluingMatrix g =
            gluing_with_witnesses(LensSpace(4 * n, 2 * n + 1), n, -(2 * n - 1));
        s.require(cls == apply_gluing(g, TorusClass{1, 0, Basis::HeegaardSide1}),
                  "handle class != mu_1 image at n=", n);

        // The fibration identification names L(4n, 2n-1), a Klein-bottle space.
        const TorusClass fib = heegaard_identification_from_fibration(n);
        const LensSpace named = lens_from_meridian_image(fib);
        s.require(named == normalize(4 * n, 2 * n - 1),
                  "fibration identification wrong at n=", n);
        s.require(klein_bottle_embeds(named).embeds,
                  "fibration space rejected by classification at n=", n);
    }
}

void suite_fibers_and_moebius(Suite& s, const VerifyOptions&) {
    using namespace kleinlens::geometry;
    const NuKModel model;
    for (int i = 0; i < 100; ++i)
        for (int j = 0; j <= 20; ++j) {
            const double theta = 2.0 * M_PI * double(i) / 100.0;
            const double r = -1.0 + 0.1 * double(j);
            const ModelCurve fiber = fiber_through(model, theta, r);
            const bool exceptional =
                std::abs(r) < 1e-9 && (i == 0 || i == 50); // theta = 0 or pi
            s.require(fiber.length == (exceptional ? 1.0 : 2.0),
                      "fiber length wrong at grid (", i, ",", j, ")");
        }

    const WindingCount std_winding = moebius_boundary_winding(10000, false);
    s.require(std_winding.longitude == 2 && std_winding.meridian == 1,
              "standard Moebius winding != (2,1)");
    const WindingCount mirrored = moebius_boundary_winding(10000, true);
    s.require(mirrored.longitude == 2 && mirrored.meridian == -1,
              "mirrored Moebius winding != (2,-1)");

    const GluedKleinReport glued = klein_in_s1xs2();
    s.require(glued.pass, "Klein bottle in S^1 x S^2 verification failed");
}

void suite_canonicalize(Suite& s, const VerifyOptions& opt, std::mt19937_64& rng) {
    using namespace kleinlens::geometry;
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const std::int64_t cap_p = std::min<std::int64_t>(opt.max_p, 40);
    for (const LensSpace& space : canonical_spaces(cap_p)) {
        for (int trial = 0; trial < 3; ++trial) {
            double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
            const double norm = std::sqrt(a * a + b * b + c * c + d * d);
            if (norm < 1e-3) continue;
            const C2Point z{{a / norm, b / norm}, {c / norm, d / norm}};
            const auto [canon, k] = lens_fundamental_domain_canonicalize(space, z);
            const auto [canon2, k2] = lens_fundamental_domain_canonicalize(space, canon);
            s.require(k2 == 0 && distance(canon, canon2) <= 1e-9,
                      "canonicalize not idempotent for ", space.to_string());
            for (std::int64_t j = 0; j < space.p; ++j) {
                const auto [orbit_canon, jk] = lens_fundamental_domain_canonicalize(
                    space, deck_power(space, z, j));
                (void)jk;
                s.require(distance(orbit_canon, canon) <= 1e-9,
                          "canonicalize not orbit-invariant for ",
                          space.to_string(), " power ", j);
            }
        }
    }
}

} // namespace

std::vector<SuiteResult> run_verification(const VerifyOptions& options) {
    std::mt19937_64 rng(options.seed);
    std::vector<SuiteResult> results;

    const auto run = [&](const char* name, auto&& body) {
        Suite suite(name);
        const auto start = Clock::now();
        body(suite);
        const double ms =
            std::chrono::duration<double, std::milli>(Clock::now() - start).count();
        results.push_back(suite.finish(ms));
    };

    run("lens_core/heegaard-gluing", [&](Suite& s) { suite_heegaard(s, options); });
    run("lens_core/homeomorphism", [&](Suite& s) { suite_homeo(s, options); });
    run("lens_core/klein-classification",
        [&](Suite& s) { suite_klein_classification(s, options); });
    run("lens_core/deck-action", [&](Suite& s) { suite_deck(s, options, rng); });
    run("lens_core/gluing-linearity",
        [&](Suite& s) { suite_gluing_linearity(s, options, rng); });
    run("abelian/smith-normal-form", [&](Suite& s) { suite_snf(s, options, rng); });
    run("abelian/cokernel-invariance",
        [&](Suite& s) { suite_cokernel_invariance(s, options, rng); });
    run("abelian/dehn-filling-H1",
        [&](Suite& s) { suite_dehn_filling_h1(s, options); });
    run("groups/metacyclic-tables",
        [&](Suite& s) { suite_metacyclic(s, options, rng); });
    run("groups/abelianization-oracle",
        [&](Suite& s) { suite_abelianization_oracle(s, options); });
    run("geometry/lens-model-seams", [&](Suite& s) { suite_seams(s, options); });
    run("geometry/constructions",
        [&](Suite& s) { suite_constructions(s, options); });
    run("geometry/fibers-and-moebius",
        [&](Suite& s) { suite_fibers_and_moebius(s, options); });
    run("geometry/canonicalize",
        [&](Suite& s) { suite_canonicalize(s, options, rng); });

    return results;
}

} // namespace kleinlens::verify
