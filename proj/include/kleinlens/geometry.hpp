#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "kleinlens/lens_core.hpp"

namespace kleinlens::geometry {

/// membership: point-on-set predicates (sphere membership, z1 = 0 tests,
/// exceptional-fibre detection).  identity: relations that are exact in real
/// arithmetic (seam identities, gluing checks).
struct Tolerances {
    double membership = 1e-9;
    double identity = 1e-12;
};

/// Point of the nuK model ([0,1] x S^1 x [-1,1]) / (1,theta,r) ~ (0,-theta,-r).
struct NuKPoint {
    double t = 0;
    double theta = 0;
    double r = 0;
};

/// The twisted-interval-bundle model of a Klein bottle neighbourhood; the
/// Klein bottle itself is {r = 0}.
struct NuKModel {
    /// The face identification (1,theta,r) <-> (0,-theta,-r); an involution on
    /// the parameter boundary {t=0} u {t=1}.
    static NuKPoint identify_face(const NuKPoint& p, double tol = 1e-9);

    /// H_1 basis of the boundary torus T = ([0,1] x S^1 x {+-1}) / ~ :
    /// the interval-direction circle a through (., 0, +-1) (it crosses both
    /// r-sheets, closing up after two traversals) ...
    static std::vector<NuKPoint> boundary_interval_circle(int samples = 64);
    /// ... and the fibre circle b = {1/2} x S^1 x {1}.
    static std::vector<NuKPoint> boundary_fiber_circle(int samples = 64);
};

/// Closed Seifert fibre of the S^2(2,2) fibration, traced in model
/// coordinates.  Generic fibres have length 2 (two interval segments);
/// exactly the fibres through (theta, r) = (0,0) and (pi,0) have length 1.
struct ModelCurve {
    std::vector<NuKPoint> points;
    double length = 0;
    bool exceptional = false;
};

ModelCurve fiber_through(const NuKModel& model, double theta, double r,
                         int samples_per_segment = 32,
                         const Tolerances& tol = {});

enum class SeifertBase { RP2, S2 };

std::string to_string(SeifertBase b);

/// Seifert fibration data of the Dehn filling of nuK along (n, 1).
/// fiber_class_on_T is the class of a regular fibre on the boundary torus in
/// the NuKBoundary basis; fiber_in_filling_basis expresses the same class in
/// the (mu, lambda) basis of the filling solid torus, whose meridian glues to
/// (n, 1) and whose longitude to (1, 0).
struct SeifertDescriptor {
    SeifertBase base = SeifertBase::RP2;
    std::int64_t n = 1;
    std::vector<std::int64_t> singular_fiber_orders;
    TorusClass fiber_class_on_T;
    std::pair<std::int64_t, std::int64_t> fiber_in_filling_basis; // (mu, lambda)
    std::vector<std::pair<double, double>> exceptional_points;    // (theta, r)

    std::string to_string() const;
};

/// Fibration over RP^2 with one singular fibre of order n; regular fibre
/// class (0,1) on T, identified with mu - n*lambda under the filling.
SeifertDescriptor seifert_over_rp2(std::int64_t n);

/// Fibration over S^2 with two singular fibres of order 2; regular fibre
/// class (1,0) on T, identified with the longitude lambda under the filling.
SeifertDescriptor seifert_over_s2(std::int64_t n);

/// Attaching classes of the Dehn filling (n, 1) on the nuK boundary torus.
TorusClass filling_meridian_class(std::int64_t n); // (n, 1)
TorusClass filling_longitude_class();              // (1, 0)

/// Reads L(p,q) off a meridian image mu_1 ~ p*lambda_2 - q*mu_2.  The class
/// must be primitive with non-zero lambda coefficient (lambda = 0 would glue
/// meridian to meridian, yielding S^1 x S^2).
LensSpace lens_from_meridian_image(const TorusClass& c);

/// The Heegaard identification derived from the S^2(2,2) fibration:
/// mu_1 ~ -mu_2 - 2n(2*lambda_2 + mu_2) = -4n*lambda_2 - (2n+1)*mu_2,
/// which names the lens space L(4n, -(2n+1)) = L(4n, 2n-1).
TorusClass heegaard_identification_from_fibration(std::int64_t n);

/// Moebius band in the solid torus S^1 x D^2 (in C^2 with |z1| = 1):
/// (t, r) -> (e^{2 pi i t}, r e^{pi i t}), respecting (1,r) ~ (0,-r) exactly.
/// The mirrored variant uses e^{-pi i t} and realizes boundary 2*lambda - mu.
C2Point moebius_in_solid_torus(double t, double r, bool mirrored = false);

struct WindingCount {
    std::int64_t longitude = 0;
    std::int64_t meridian = 0;
};

/// Winding numbers of the traced Moebius boundary {r = +-1}, by angle
/// accumulation; (2, 1) for the standard band, (2, -1) mirrored.
WindingCount moebius_boundary_winding(int samples = 10000, bool mirrored = false);

/// V - E + F after identifying the listed vertex pairs; faces triangles.
std::int64_t euler_characteristic_identified(
    std::size_t vertex_count,
    const std::vector<std::array<std::uint32_t, 3>>& triangles,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& identified);

/// Verification that two Moebius bands, one in each solid torus of
/// S^1 x S^2 = (S^1 x D^2) u_id (S^1 x D^2), glue to a Klein bottle: both
/// boundary curves lie in 2*lambda + mu and coincide pointwise under the
/// identity gluing mu_1 ~ mu_2, lambda_1 ~ lambda_2.
struct GluedKleinReport {
    TorusClass boundary_side1;
    TorusClass boundary_side2;
    double max_boundary_mismatch = 0;
    std::int64_t euler_characteristic = 0;
    bool pass = false;

    std::string to_string() const;
};

GluedKleinReport klein_in_s1xs2(int grid_t = 24, int grid_r = 8,
                                int boundary_samples = 512,
                                const Tolerances& tol = {});

/// The two-Moebius-band construction in L(4n, 2n+-1): with Bezout witnesses
/// r = n, s = -(2n -+ 1), the class 2*lambda_1 + mu_1 maps to
/// +-(2*lambda_2 - mu_2), so a Moebius band in either Heegaard torus glues to
/// a Klein bottle.
struct TwoMoebiusReport {
    LensSpace space;
    std::int64_t r = 0;
    std::int64_t s = 0;
    TorusClass input;
    TorusClass image;
    TorusClass expected;
    Sign sign = Sign::Plus;
    bool pass = false;

    std::string to_string() const;
};

TwoMoebiusReport two_moebius_construction(std::int64_t n, Sign sign);

/// Combinatorial record of the handle construction: a meridional 0-handle
/// disc in M_2 with two twisted 1-handles on the splitting torus.  The
/// intersection counts with mu_2 and lambda_2 are stored term by term as the
/// construction itemizes them; the boundary-circle data (band slots and
/// twists on the 0-handle disc) certify that the 1-handlebody boundary is a
/// single closed curve.
struct HandleLayout {
    std::int64_t n = 1;
    Sign sign = Sign::Plus;
    std::vector<std::int64_t> mu_intersections;     // 2, 1, 2(n-1), 1, 2(n-1)
    std::vector<std::int64_t> lambda_intersections; // 2, 1, 2(n-1)
    std::int64_t second_over_first = 0;             // n-1 passes
    std::vector<int> band_slots;                    // band index per disc slot
    std::vector<bool> band_twisted;
};

HandleLayout handle_layout(std::int64_t n, Sign sign);

/// Boundary circles of a disc with attached bands; band_slots lists, in
/// cyclic order around the disc, which band each attachment slot belongs to.
int boundary_circle_count(const std::vector<int>& band_slots,
                          const std::vector<bool>& band_twisted);

/// Total boundary class of the 1-handlebody: 4n*lambda_2 - (2n+1)*mu_2 for
/// the 2n+1 case, which is the image of mu_1; the 2n-1 case is obtained by
/// the conjugation diffeomorphism (z1, conj(z2)), which reverses mu_2 (so the
/// mu_2 coefficient matches the meridian image modulo p, under the induced
/// longitude re-marking lambda_2 -> lambda_2 + mu_2).
TorusClass handle_boundary_class(const HandleLayout& layout);

} // namespace kleinlens::geometry
