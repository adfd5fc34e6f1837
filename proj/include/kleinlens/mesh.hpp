#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "kleinlens/geometry.hpp"
#include "kleinlens/lens_core.hpp"

namespace kleinlens::geometry {

/// Moves z into the fundamental lens {arg(z1) in [0, 2 pi / p)} by a deck
/// power sigma^k and returns (sigma^k z, k).  When |z1| < tol.membership the
/// orbit rotates z2 through all multiples of 2 pi / p (gcd(p,q) = 1), so
/// arg(z2) is canonicalized into [0, 2 pi / p) instead.  The domain is
/// half-open; angles within 1e-12 of a sector boundary snap upward.
std::pair<C2Point, std::int64_t>
lens_fundamental_domain_canonicalize(const LensSpace& space, const C2Point& z,
                                     const Tolerances& tol = {});

/// Vertex pair identified by the quotient: vertex b = sigma^deck_power(a).
struct SeamPair {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::int64_t deck_power = 0;
};

/// Sampled image of the rectangle [0, pi/2n] x [0, pi] under
/// iota(phi, theta) = (sin(theta) e^{i phi}, cos(theta) e^{+- i phi}),
/// triangulated with the (low,low)-(high,high) diagonal of each grid quad.
/// Seams record the Klein-bottle identifications
/// (phi, 0) ~ (phi, pi) via sigma^{2n} and (0, theta) ~ (pi/2n, pi - theta)
/// via sigma; `canonical` holds each vertex's representative in the
/// fundamental lens together with the deck power used.
struct QuotientMesh {
    LensSpace space;
    std::int64_t n = 1;
    Sign sign = Sign::Minus;
    std::uint32_t resolution = 0;
    std::vector<C2Point> vertices;
    std::vector<std::array<double, 2>> params; // (phi, theta) per vertex
    std::vector<std::array<std::uint32_t, 3>> faces;
    std::vector<SeamPair> seams;
    std::vector<std::pair<C2Point, std::int64_t>> canonical;

    std::uint32_t vertex_index(std::uint32_t i, std::uint32_t j) const {
        return i * (resolution + 1) + j;
    }
};

/// Builds the mesh and verifies the seam identities; residuals beyond
/// tol.identity indicate broken construction arithmetic and throw.
QuotientMesh klein_lens_embedding(std::int64_t n, Sign sign,
                                  std::uint32_t resolution,
                                  const Tolerances& tol = {});

struct SeamCheckReport {
    double max_residual = 0;
    double tolerance = 0;
    bool pass = false;
};

SeamCheckReport verify_seams(const QuotientMesh& mesh,
                             const Tolerances& tol = {});

std::int64_t mesh_euler_characteristic(const QuotientMesh& mesh);

/// Quotient distance of two parameter points on the Klein bottle
/// [0, pi/2n] x [0, pi] / ((phi,0)~(phi,pi), (0,theta)~(pi/2n, pi-theta)).
double klein_param_distance(const QuotientMesh& mesh, std::uint32_t a,
                            std::uint32_t b);

/// Numeric injectivity evidence: every vertex pair whose Klein-bottle
/// parameter distance exceeds `param_threshold` must stay at orbit distance
/// (minimum over all p deck translates) of at least min_sep.  A threshold of
/// 0 selects 4 * (pi / resolution), four theta-grid steps.
struct InjectivityReport {
    double min_separation = 0;
    double param_threshold = 0;
    double min_sep_required = 0;
    std::size_t far_pairs = 0;
    bool pass = false;

    std::string to_string() const;
};

InjectivityReport embedded_injectivity_check(const QuotientMesh& mesh,
                                             const LensSpace& space,
                                             double min_sep,
                                             double param_threshold = 0.0);

/// Stereographic image in R^3; seam metadata carries over as annotations.
struct Mesh3 {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::array<std::uint32_t, 3>> faces;
    std::vector<SeamPair> seams;
    C2Point pole;
};

/// Pole (-1, 0): never hit by the lens-model meshes, whose z1 = sin(theta)
/// e^{i phi} has argument in [0, pi/2].
C2Point default_projection_pole();

std::array<double, 3> stereographic_project(const C2Point& pole,
                                            const C2Point& z);
C2Point stereographic_inverse(const C2Point& pole,
                              const std::array<double, 3>& y);

Mesh3 stereographic_export(const QuotientMesh& mesh,
                           const C2Point& pole = default_projection_pole(),
                           const Tolerances& tol = {});

/// Wavefront-style text export: "v x y z" and 1-based "f a b c" records,
/// reals at 17 significant digits.
void write_obj(const std::string& path, const Mesh3& mesh);

/// Key-value sidecar with seam pairs, deck powers, per-vertex unit-sphere
/// coordinates + canonical deck power, and the verification summary.
void write_mesh_metadata(const std::string& path, const QuotientMesh& mesh,
                         const SeamCheckReport& seam_check,
                         const InjectivityReport& injectivity);

void write_curve(const std::string& path, const std::vector<C2Point>& points);
void write_curve(const std::string& path, const std::vector<NuKPoint>& points);

} // namespace kleinlens::geometry
