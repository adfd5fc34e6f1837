#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>

namespace kleinlens {

/// Which torus (and which basis on it) a homology class lives in.
///
/// HeegaardSide1 / HeegaardSide2: the boundary tori of the two solid tori of a
/// genus-1 Heegaard splitting, with basis (mu_i, lambda_i); mu_i bounds a disc
/// inside solid torus i.
///
/// NuKBoundary: the boundary 2-torus T of a tubular neighbourhood of an
/// embedded Klein bottle, with basis (interval circle a, fibre circle b); the
/// `mu` field holds the coefficient of a, the `lambda` field the coefficient
/// of b, so (mu, lambda) = (n, l) for the class n*a + l*b.
enum class Basis { HeegaardSide1, HeegaardSide2, NuKBoundary };

enum class Sign { Plus, Minus };

std::string to_string(Basis b);
std::string to_string(Sign s);

/// Representative of a mod m in [0, m); m >= 1.
std::int64_t mod_pos(std::int64_t a, std::int64_t m);

/// Multiplicative inverse of a mod m, in [0, m); requires gcd(a, m) = 1.
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

/// Integer first-homology class on a 2-torus in a declared basis.
struct TorusClass {
    std::int64_t mu = 0;
    std::int64_t lambda = 0;
    Basis basis = Basis::HeegaardSide1;

    bool is_primitive() const;
    bool is_zero() const { return mu == 0 && lambda == 0; }

    /// Serialized as "a*mu+b*lambda@basis".
    std::string to_string() const;

    friend bool operator==(const TorusClass&, const TorusClass&) = default;
};

TorusClass operator+(const TorusClass& a, const TorusClass& b);
TorusClass operator-(const TorusClass& a, const TorusClass& b);
TorusClass operator*(std::int64_t k, const TorusClass& c);
TorusClass operator-(const TorusClass& c);

/// The lens space L(p,q): quotient of the unit sphere S^3 in C^2 by the
/// cyclic action sigma(z1,z2) = (e^{2 pi i/p} z1, e^{2 pi i q/p} z2).
///
/// p >= 1 and gcd(p,q) = 1 are enforced at construction; q may be held in raw
/// (unreduced) form. canonical() reduces q mod p into [1, p-1] for p >= 2;
/// p = 1 denotes S^3 and is normalized to (1,0).
struct LensSpace {
    std::int64_t p = 1;
    std::int64_t q = 0;

    LensSpace() = default;
    LensSpace(std::int64_t p_, std::int64_t q_);

    LensSpace canonical() const;
    bool is_canonical() const;

    /// Serialized as "L(p,q)".
    std::string to_string() const;

    friend bool operator==(const LensSpace&, const LensSpace&) = default;
};

/// normalize(p,q): canonical-form constructor; rejects non-coprime input.
LensSpace normalize(std::int64_t p, std::int64_t q);

/// Unoriented homeomorphism: p equal and q' = +-q^{+-1} (mod p).
bool are_homeomorphic(const LensSpace& a, const LensSpace& b);

/// Smallest canonical q in the unoriented homeomorphism class; two spaces are
/// homeomorphic iff their representatives coincide.
LensSpace homeo_class_rep(const LensSpace& space);

/// Point of C^2; the deck action and the mesh code keep these on the unit
/// sphere S^3, the solid-torus models only on |z1| = 1.
struct C2Point {
    std::complex<double> z1;
    std::complex<double> z2;

    double norm_sq() const { return std::norm(z1) + std::norm(z2); }
};

double distance(const C2Point& a, const C2Point& b);

/// One application of the deck transformation sigma.  The input must lie on
/// the unit sphere to within `tol`.
C2Point deck_generator(const LensSpace& space, const C2Point& z,
                       double tol = 1e-9);

/// sigma^k, with the rotation angles reduced mod p before evaluation.
C2Point deck_power(const LensSpace& space, const C2Point& z, std::int64_t k,
                   double tol = 1e-9);

/// Gluing of the two Heegaard solid tori of L(p,q):
///
///     mu_1     ~  p*lambda_2 - q*mu_2,
///     lambda_1 ~  s*lambda_2 + r*mu_2,       with  p*r + q*s = 1.
///
/// In the bases (mu_i, lambda_i) the map is the determinant -1 matrix
///
///     [ -q  r ]
///     [  p  s ]
///
/// (columns = images of mu_1, lambda_1 in coordinates (mu_2, lambda_2)).
struct GluingMatrix {
    LensSpace space;
    std::int64_t r = 0;
    std::int64_t s = 0;

    TorusClass mu1_image() const;     // p*lambda_2 - q*mu_2
    TorusClass lambda1_image() const; // s*lambda_2 + r*mu_2
    std::int64_t det() const;         // always -1

    /// entries[i][j]: row i is the (mu_2, lambda_2) coordinate, column j the
    /// preimage generator (mu_1, lambda_1).
    std::array<std::array<std::int64_t, 2>, 2> entries() const;

    std::string to_string() const;
};

/// Canonical Bezout witnesses: r is the minimal non-negative solution of
/// p*r = 1 (mod |q|) when |q| > 1, r = 0 when q = +-1, and r = 1 when q = 0
/// (p = 1).  Deterministic for reproducible reports.
GluingMatrix heegaard_gluing(const LensSpace& space);

/// Same gluing with caller-supplied witnesses; validates p*r + q*s = 1.
GluingMatrix gluing_with_witnesses(const LensSpace& space, std::int64_t r,
                                   std::int64_t s);

/// Push a class on side 1 through the gluing (linear extension).
TorusClass apply_gluing(const GluingMatrix& g, const TorusClass& c);

/// Pull a class on side 2 back to side 1 (exact, the matrix is unimodular).
TorusClass apply_gluing_inverse(const GluingMatrix& g, const TorusClass& c);

/// Outcome of the Klein-bottle embeddability decision.  When embeds is true,
/// the space is homeomorphic to L(4n, 2n+1) (Plus) or L(4n, 2n-1) (Minus);
/// the realized sign is reported because the classification is unoriented.
struct EmbeddabilityVerdict {
    bool embeds = false;
    std::optional<std::int64_t> n;
    std::optional<Sign> sign;
};

/// The Klein bottle embeds into L(p,q) iff p = 4n and q = 2n +- 1 (mod p).
EmbeddabilityVerdict klein_bottle_embeds(const LensSpace& space);

/// The projective plane embeds into a lens space iff it is L(2,1).
bool projective_plane_embeds(const LensSpace& space);

} // namespace kleinlens
