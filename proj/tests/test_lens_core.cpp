#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "kleinlens/lens_core.hpp"

using namespace kleinlens;

namespace {

// Independent oracle: multiplicative inverse by scanning, no Euclid.
std::int64_t scan_inverse(std::int64_t q, std::int64_t p) {
    for (std::int64_t r = 1; r < p; ++r)
        if ((q * r) % p == 1) return r;
    REQUIRE(false);
    return 0;
}

bool homeo_oracle(const LensSpace& a_raw, const LensSpace& b_raw) {
    const LensSpace a = a_raw.canonical(), b = b_raw.canonical();
    if (a.p != b.p) return false;
    if (a.p == 1) return true;
    std::set<std::int64_t> cls{a.q, (a.p - a.q) % a.p};
    const std::int64_t inv = scan_inverse(a.q, a.p);
    cls.insert(inv);
    cls.insert((a.p - inv) % a.p);
    return cls.count(b.q) > 0;
}

// Independent oracle for the Bezout witness: smallest non-negative r.
std::int64_t scan_witness_r(std::int64_t p, std::int64_t q) {
    for (std::int64_t r = 0;; ++r)
        if (q != 0 ? (1 - p * r) % q == 0 : p * r == 1) return r;
}

} // namespace

TEST_CASE("normalize reduces q into the canonical range") {
    CHECK(normalize(4, 7) == LensSpace(4, 3));
    CHECK(normalize(4, -1) == LensSpace(4, 3));
    CHECK(normalize(5, 2) == LensSpace(5, 2));
    CHECK(normalize(1, 1) == LensSpace(1, 0));
    CHECK(normalize(1, 0) == LensSpace(1, 0));
    CHECK(normalize(2, -1) == LensSpace(2, 1));
}

TEST_CASE("normalize rejects bad parameters") {
    CHECK_THROWS_AS(normalize(6, 4), std::invalid_argument);
    CHECK_THROWS_AS(normalize(0, 1), std::domain_error);
    CHECK_THROWS_AS(normalize(-4, 1), std::domain_error);
    CHECK_THROWS_WITH(normalize(6, 3),
                      "not a lens space parameterization: gcd(p,q) != 1");
}

TEST_CASE("are_homeomorphic matches the +-q^{+-1} classification") {
    CHECK(are_homeomorphic(LensSpace(8, 3), LensSpace(8, 5)));  // 3^-1 = 3, -3 = 5
    CHECK(are_homeomorphic(LensSpace(4, 1), LensSpace(4, 3)));  // L(4n,2n+1) ~ L(4n,2n-1), n = 1
    CHECK_FALSE(are_homeomorphic(LensSpace(5, 1), LensSpace(5, 2)));
    CHECK_FALSE(are_homeomorphic(LensSpace(5, 2), LensSpace(7, 2)));
    CHECK(are_homeomorphic(LensSpace(7, 2), LensSpace(7, 4))); // 4 = 2^-1 mod 7

    // Against the scanning oracle, all canonical pairs with p <= 30.
    for (std::int64_t p = 1; p <= 30; ++p)
        for (std::int64_t qa = p == 1 ? 0 : 1; qa < std::max<std::int64_t>(p, 1); ++qa) {
            if (p > 1 && std::gcd(p, qa) != 1) continue;
            for (std::int64_t qb = p == 1 ? 0 : 1; qb < std::max<std::int64_t>(p, 1); ++qb) {
                if (p > 1 && std::gcd(p, qb) != 1) continue;
                const LensSpace a(p, qa), b(p, qb);
                CHECK(are_homeomorphic(a, b) == homeo_oracle(a, b));
            }
        }
}

TEST_CASE("are_homeomorphic is an equivalence relation") {
    std::vector<LensSpace> spaces;
    for (std::int64_t p = 1; p <= 25; ++p)
        for (std::int64_t q = p == 1 ? 0 : 1; q < std::max<std::int64_t>(p, 1); ++q)
            if (p == 1 || std::gcd(p, q) == 1) spaces.emplace_back(p, q);
    for (const auto& a : spaces) {
        CHECK(are_homeomorphic(a, a));
        for (const auto& b : spaces) {
            CHECK(are_homeomorphic(a, b) == are_homeomorphic(b, a));
            CHECK(are_homeomorphic(a, b) ==
                  (homeo_class_rep(a) == homeo_class_rep(b)));
        }
    }
}

TEST_CASE("deck generator rotates the two coordinates") {
    const C2Point e1{{1.0, 0.0}, {0.0, 0.0}};
    const C2Point r1 = deck_generator(LensSpace(4, 1), e1);
    CHECK(std::abs(r1.z1 - std::complex<double>(0.0, 1.0)) < 1e-15);
    CHECK(std::abs(r1.z2) == 0.0);

    const C2Point e2{{0.0, 0.0}, {1.0, 0.0}};
    const C2Point r2 = deck_generator(LensSpace(2, 1), e2);
    CHECK(std::abs(r2.z2 - std::complex<double>(-1.0, 0.0)) < 1e-15);

    CHECK_THROWS_AS(deck_generator(LensSpace(4, 1), C2Point{{2.0, 0.0}, {0.0, 0.0}}),
                    std::domain_error);
}

TEST_CASE("deck generator iterated p times is the identity") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (const auto& [p, q] : std::vector<std::pair<std::int64_t, std::int64_t>>{
             {1, 0}, {2, 1}, {5, 2}, {12, 7}, {37, 16}, {101, 40}}) {
        const LensSpace space(p, q);
        for (int trial = 0; trial < 5; ++trial) {
            double a = unit(rng), b = unit(rng), c = unit(rng), d = unit(rng);
            const double norm = std::sqrt(a * a + b * b + c * c + d * d);
            const C2Point z{{a / norm, b / norm}, {c / norm, d / norm}};
            C2Point w = z;
            for (std::int64_t i = 0; i < p; ++i) {
                w = deck_generator(space, w);
                CHECK(std::abs(w.norm_sq() - 1.0) <= 1e-12);
            }
            CHECK(std::abs(w.z1 - z.z1) <= 1e-9);
            CHECK(std::abs(w.z2 - z.z2) <= 1e-9);
        }
    }
}

TEST_CASE("heegaard_gluing returns the canonical Bezout witnesses") {
    const GluingMatrix g52 = heegaard_gluing(LensSpace(5, 2));
    CHECK(g52.r == 1);
    CHECK(g52.s == -2);
    CHECK(g52.mu1_image() == TorusClass{-2, 5, Basis::HeegaardSide2});
    CHECK(g52.lambda1_image() == TorusClass{1, -2, Basis::HeegaardSide2});

    // mu_1 -> 4*lambda_2 - 3*mu_2 for L(4,3).
    const GluingMatrix g43 = heegaard_gluing(LensSpace(4, 3));
    CHECK(g43.mu1_image() == TorusClass{-3, 4, Basis::HeegaardSide2});

    // Raw (unreduced) parameters still get valid witnesses.
    const GluingMatrix graw = heegaard_gluing(LensSpace(4, -1));
    CHECK(4 * graw.r + (-1) * graw.s == 1);
    CHECK(graw.det() == -1);

    for (std::int64_t p = 1; p <= 200; ++p)
        for (std::int64_t q = p == 1 ? 0 : 1; q < std::max<std::int64_t>(p, 1); ++q) {
            if (p > 1 && std::gcd(p, q) != 1) continue;
            const GluingMatrix g = heegaard_gluing(LensSpace(p, q));
            CHECK(p * g.r + q * g.s == 1);
            CHECK(g.det() == -1);
            CHECK(g.r == scan_witness_r(p, q));
        }
}

TEST_CASE("gluing_with_witnesses validates the Bezout identity") {
    CHECK_NOTHROW(gluing_with_witnesses(LensSpace(4, 3), 1, -1));
    CHECK_THROWS_AS(gluing_with_witnesses(LensSpace(4, 3), 1, 1),
                    std::invalid_argument);
}

TEST_CASE("apply_gluing pushes classes through by linearity") {
    // L(4n, 2n+1) with r = n, s = -(2n-1): 2*lambda_1 + mu_1 -> 2*lambda_2 - mu_2.
    for (std::int64_t n = 1; n <= 8; ++n) {
        const auto g = gluing_with_witnesses(LensSpace(4 * n, 2 * n + 1), n,
                                             -(2 * n - 1));
        CHECK(apply_gluing(g, TorusClass{1, 2, Basis::HeegaardSide1}) ==
              TorusClass{-1, 2, Basis::HeegaardSide2});
    }

    // L(4,3) with r = 1, s = -1: mu_1 -> 4*lambda_2 - 3*mu_2.
    const auto g43 = gluing_with_witnesses(LensSpace(4, 3), 1, -1);
    CHECK(apply_gluing(g43, TorusClass{1, 0, Basis::HeegaardSide1}) ==
          TorusClass{-3, 4, Basis::HeegaardSide2});

    CHECK(apply_gluing(g43, TorusClass{0, 0, Basis::HeegaardSide1}).is_zero());
    CHECK_THROWS_AS(apply_gluing(g43, TorusClass{1, 0, Basis::HeegaardSide2}),
                    std::invalid_argument);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<std::int64_t> coeff(-100, 100);
    for (int trial = 0; trial < 200; ++trial) {
        const TorusClass c1{coeff(rng), coeff(rng), Basis::HeegaardSide1};
        const TorusClass c2{coeff(rng), coeff(rng), Basis::HeegaardSide1};
        CHECK(apply_gluing(g43, c1 + c2) ==
              apply_gluing(g43, c1) + apply_gluing(g43, c2));
        CHECK(apply_gluing_inverse(g43, apply_gluing(g43, c1)) == c1);
    }
}

TEST_CASE("klein_bottle_embeds decides the L(4n, 2n+-1) classification") {
    const auto v41 = klein_bottle_embeds(LensSpace(4, 1));
    REQUIRE(v41.embeds);
    CHECK(*v41.n == 1);
    CHECK(*v41.sign == Sign::Minus);

    const auto v83 = klein_bottle_embeds(LensSpace(8, 3));
    REQUIRE(v83.embeds);
    CHECK(*v83.n == 2);
    CHECK(*v83.sign == Sign::Minus);

    const auto v85 = klein_bottle_embeds(LensSpace(8, 5));
    REQUIRE(v85.embeds);
    CHECK(*v85.sign == Sign::Plus);

    CHECK_FALSE(klein_bottle_embeds(LensSpace(7, 3)).embeds);
    CHECK_FALSE(klein_bottle_embeds(LensSpace(8, 1)).embeds);
    CHECK_FALSE(klein_bottle_embeds(LensSpace(1, 0)).embeds);
    CHECK_FALSE(klein_bottle_embeds(LensSpace(2, 1)).embeds);
}

TEST_CASE("closed form agrees with the homeomorphism enumeration up to p = 200") {
    for (std::int64_t p = 1; p <= 200; ++p)
        for (std::int64_t q = p == 1 ? 0 : 1; q < std::max<std::int64_t>(p, 1); ++q) {
            if (p > 1 && std::gcd(p, q) != 1) continue;
            const LensSpace space(p, q);
            bool oracle = false;
            for (std::int64_t n = 1; 4 * n <= p; ++n)
                if (4 * n == p &&
                    (are_homeomorphic(space, LensSpace(4 * n, 2 * n + 1)) ||
                     are_homeomorphic(space, LensSpace(4 * n, 2 * n - 1))))
                    oracle = true;
            const auto verdict = klein_bottle_embeds(space);
            CHECK(verdict.embeds == oracle);
            if (verdict.embeds) {
                CHECK(space.p == 4 * *verdict.n);
                const std::int64_t expect_q =
                    *verdict.sign == Sign::Plus ? 2 * *verdict.n + 1 : 2 * *verdict.n - 1;
                CHECK(space.canonical().q == expect_q);
            }
        }
}

TEST_CASE("projective plane embeds only into L(2,1)") {
    CHECK(projective_plane_embeds(LensSpace(2, 1)));
    CHECK(projective_plane_embeds(LensSpace(2, -1)));
    CHECK_FALSE(projective_plane_embeds(LensSpace(4, 1)));
    CHECK_FALSE(projective_plane_embeds(LensSpace(1, 0)));
}

TEST_CASE("serialization formats") {
    CHECK(LensSpace(4, 3).to_string() == "L(4,3)");
    CHECK(TorusClass{-2, 5, Basis::HeegaardSide2}.to_string() ==
          "-2*mu+5*lambda@HeegaardSide2");
    CHECK(TorusClass{1, -2, Basis::NuKBoundary}.to_string() ==
          "1*mu-2*lambda@NuKBoundary");
    CHECK(TorusClass{0, 0, Basis::HeegaardSide1}.to_string() ==
          "0*mu+0*lambda@HeegaardSide1");
}

TEST_CASE("primitivity of torus classes") {
    CHECK(TorusClass{2, 3, Basis::HeegaardSide1}.is_primitive());
    CHECK_FALSE(TorusClass{2, 4, Basis::HeegaardSide1}.is_primitive());
    CHECK(TorusClass{1, 0, Basis::HeegaardSide1}.is_primitive());
    CHECK_FALSE(TorusClass{0, 0, Basis::HeegaardSide1}.is_primitive());
}
