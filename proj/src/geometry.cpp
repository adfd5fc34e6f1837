#include "kleinlens/geometry.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kleinlens::geometry {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

// polar(1, pi * x), exact at integer and half-integer x so that boundary
// identifications hold bitwise.  IEEE remainder is exact.
std::complex<double> unit_polar_pi(double x) {
    const double r = std::remainder(x, 2.0); // in [-1, 1]
    if (r == 0.0) return {1.0, 0.0};
    if (r == 1.0 || r == -1.0) return {-1.0, 0.0};
    if (r == 0.5) return {0.0, 1.0};
    if (r == -0.5) return {0.0, -1.0};
    return std::polar(1.0, M_PI * r);
}

} // namespace

NuKPoint NuKModel::identify_face(const NuKPoint& p, double tol) {
    if (std::abs(p.t) <= tol) return {1.0, wrap_angle(-p.theta), -p.r};
    if (std::abs(p.t - 1.0) <= tol) return {0.0, wrap_angle(-p.theta), -p.r};
    throw std::domain_error("identify_face: point is not on the faces {t=0} u {t=1}");
}

std::vector<NuKPoint> NuKModel::boundary_interval_circle(int samples) {
    // Two interval traversals: (., 0, +1) then, after (1,0,1) ~ (0,0,-1),
    // (., 0, -1); the end (1,0,-1) ~ (0,0,1) closes the circle.
    std::vector<NuKPoint> pts;
    pts.reserve(2 * std::size_t(samples));
    for (int i = 0; i < samples; ++i)
        pts.push_back({double(i) / samples, 0.0, 1.0});
    for (int i = 0; i < samples; ++i)
        pts.push_back({double(i) / samples, 0.0, -1.0});
    return pts;
}

std::vector<NuKPoint> NuKModel::boundary_fiber_circle(int samples) {
    std::vector<NuKPoint> pts;
    pts.reserve(std::size_t(samples));
    for (int i = 0; i < samples; ++i)
        pts.push_back({0.5, kTwoPi * double(i) / samples, 1.0});
    return pts;
}

ModelCurve fiber_through(const NuKModel&, double theta, double r,
                         int samples_per_segment, const Tolerances& tol) {
    if (r < -1.0 - tol.membership || r > 1.0 + tol.membership)
        throw std::domain_error("fiber_through: r outside [-1, 1]");
    const double th = wrap_angle(theta);

    ModelCurve curve;
    const bool on_axis = std::abs(r) <= tol.membership;
    const bool th_zero = th <= tol.membership || kTwoPi - th <= tol.membership;
    const bool th_pi = std::abs(th - M_PI) <= tol.membership;
    curve.exceptional = on_axis && (th_zero || th_pi);
    curve.length = curve.exceptional ? 1.0 : 2.0;

    for (int i = 0; i <= samples_per_segment; ++i)
        curve.points.push_back({double(i) / samples_per_segment, th, r});
    if (!curve.exceptional) {
        // (1,theta,r) ~ (0,-theta,-r): continue along the partner interval.
        for (int i = 1; i <= samples_per_segment; ++i)
            curve.points.push_back(
                {double(i) / samples_per_segment, wrap_angle(-th), -r});
    }
    return curve;
}

std::string to_string(SeifertBase b) {
    return b == SeifertBase::RP2 ? "RP2" : "S2";
}

std::string SeifertDescriptor::to_string() const {
    std::ostringstream out;
    out << "Seifert fibration over " << geometry::to_string(base) << "(";
    for (std::size_t i = 0; i < singular_fiber_orders.size(); ++i) {
        if (i) out << ",";
        out << singular_fiber_orders[i];
    }
    out << "); fibre class " << fiber_class_on_T.to_string()
        << "; in filling basis " << fiber_in_filling_basis.first << "*mu"
        << (fiber_in_filling_basis.second < 0 ? "-" : "+")
        << std::llabs(fiber_in_filling_basis.second) << "*lambda";
    return out.str();
}

TorusClass filling_meridian_class(std::int64_t n) {
    return {n, 1, Basis::NuKBoundary};
}

TorusClass filling_longitude_class() { return {1, 0, Basis::NuKBoundary}; }

namespace {

// Solve target = x*col1 + y*col2 over the integers; the column pair must be
// unimodular.
std::pair<std::int64_t, std::int64_t>
solve_in_basis(const TorusClass& col1, const TorusClass& col2,
               const TorusClass& target) {
    const std::int64_t det = col1.mu * col2.lambda - col2.mu * col1.lambda;
    if (det != 1 && det != -1)
        throw std::logic_error("solve_in_basis: basis pair is not unimodular");
    const std::int64_t x = (target.mu * col2.lambda - col2.mu * target.lambda) / det;
    const std::int64_t y = (col1.mu * target.lambda - target.mu * col1.lambda) / det;
    return {x, y};
}

} // namespace

SeifertDescriptor seifert_over_rp2(std::int64_t n) {
    if (n < 1) throw std::domain_error("seifert_over_rp2 requires n >= 1");
    SeifertDescriptor d;
    d.base = SeifertBase::RP2;
    d.n = n;
    d.singular_fiber_orders = {n}; // order 1 means no genuine singular fibre
    d.fiber_class_on_T = {0, 1, Basis::NuKBoundary};
    d.fiber_in_filling_basis = solve_in_basis(
        filling_meridian_class(n), filling_longitude_class(), d.fiber_class_on_T);
    return d;
}

SeifertDescriptor seifert_over_s2(std::int64_t n) {
    if (n < 1) throw std::domain_error("seifert_over_s2 requires n >= 1");
    SeifertDescriptor d;
    d.base = SeifertBase::S2;
    d.n = n;
    d.singular_fiber_orders = {2, 2};
    d.fiber_class_on_T = {1, 0, Basis::NuKBoundary};
    d.fiber_in_filling_basis = solve_in_basis(
        filling_meridian_class(n), filling_longitude_class(), d.fiber_class_on_T);
    d.exceptional_points = {{0.0, 0.0}, {M_PI, 0.0}};
    return d;
}

LensSpace lens_from_meridian_image(const TorusClass& c) {
    if (c.basis != Basis::HeegaardSide2)
        throw std::invalid_argument(
            "lens_from_meridian_image expects a class in basis HeegaardSide2");
    if (!c.is_primitive())
        throw std::invalid_argument("meridian image must be a primitive class");
    std::int64_t lam = c.lambda, mu = c.mu;
    if (lam == 0)
        throw std::domain_error(
            "meridian glued to +-mu_2 yields S^1 x S^2, not a lens space");
    if (lam < 0) {
        lam = -lam;
        mu = -mu;
    }
    return normalize(lam, -mu);
}

TorusClass heegaard_identification_from_fibration(std::int64_t n) {
    if (n < 1)
        throw std::domain_error("heegaard_identification_from_fibration requires n >= 1");
    const TorusClass mu2{1, 0, Basis::HeegaardSide2};
    const TorusClass lambda2{0, 1, Basis::HeegaardSide2};
    const TorusClass regular_fiber = 2 * lambda2 + mu2;
    const TorusClass image = -mu2 - 2 * n * regular_fiber;
    if (!(image == TorusClass{-(2 * n + 1), -4 * n, Basis::HeegaardSide2}))
        throw std::logic_error("fibration identification arithmetic is inconsistent");
    if (!(lens_from_meridian_image(image) == normalize(4 * n, 2 * n - 1)))
        throw std::logic_error("fibration identification does not name L(4n, 2n-1)");
    return image;
}

C2Point moebius_in_solid_torus(double t, double r, bool mirrored) {
    if (t < 0.0 || t > 1.0 || r < -1.0 || r > 1.0)
        throw std::domain_error("moebius_in_solid_torus: (t, r) outside [0,1] x [-1,1]");
    return {unit_polar_pi(2.0 * t), r * unit_polar_pi(mirrored ? -t : t)};
}

WindingCount moebius_boundary_winding(int samples, bool mirrored) {
    // The boundary {r = +-1} is traced by t -> (e^{2 pi i t}, e^{+- pi i t})
    // over t in [0, 2]: the r = -1 half continues the r = +1 half seamlessly.
    double acc1 = 0, acc2 = 0;
    auto trace = [&](double t) -> C2Point {
        return {unit_polar_pi(2.0 * t), unit_polar_pi(mirrored ? -t : t)};
    };
    C2Point prev = trace(0.0);
    for (int i = 1; i <= samples; ++i) {
        const C2Point cur = trace(2.0 * double(i) / samples);
        acc1 += std::arg(cur.z1 / prev.z1);
        acc2 += std::arg(cur.z2 / prev.z2);
        prev = cur;
    }
    return {std::llround(acc1 / kTwoPi), std::llround(acc2 / kTwoPi)};
}

namespace {

class UnionFind {
  public:
    explicit UnionFind(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t a) {
        while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
        return a;
    }
    void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

  private:
    std::vector<std::size_t> parent_;
};

} // namespace

std::int64_t euler_characteristic_identified(
    std::size_t vertex_count,
    const std::vector<std::array<std::uint32_t, 3>>& triangles,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& identified) {
    UnionFind uf(vertex_count);
    for (const auto& [a, b] : identified) uf.unite(a, b);

    std::set<std::size_t> classes;
    for (std::size_t v = 0; v < vertex_count; ++v) classes.insert(uf.find(v));

    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (const auto& tri : triangles)
        for (int e = 0; e < 3; ++e) {
            std::size_t a = uf.find(tri[std::size_t(e)]);
            std::size_t b = uf.find(tri[std::size_t((e + 1) % 3)]);
            if (a > b) std::swap(a, b);
            edges.insert({a, b});
        }

    return std::int64_t(classes.size()) - std::int64_t(edges.size()) +
           std::int64_t(triangles.size());
}

namespace {

// Grid mesh of one Moebius band ([0,1] x [-1,1]) / (1,r) ~ (0,-r); returns
// triangles over (nt+1)*(nr+1) vertices plus the seam identifications.
struct BandMesh {
    std::size_t vertex_count;
    std::vector<std::array<std::uint32_t, 3>> triangles;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> seams;
    std::vector<std::uint32_t> boundary; // boundary circle, in trace order
};

BandMesh moebius_band_mesh(int nt, int nr) {
    BandMesh m;
    const auto idx = [nr](int i, int j) {
        return std::uint32_t(i * (nr + 1) + j);
    };
    m.vertex_count = std::size_t(nt + 1) * std::size_t(nr + 1);
    for (int i = 0; i < nt; ++i)
        for (int j = 0; j < nr; ++j) {
            m.triangles.push_back({idx(i, j), idx(i + 1, j), idx(i + 1, j + 1)});
            m.triangles.push_back({idx(i, j), idx(i + 1, j + 1), idx(i, j + 1)});
        }
    // (1, r_j) ~ (0, -r_j): column nt glued to column 0 reversed.
    for (int j = 0; j <= nr; ++j)
        m.seams.push_back({idx(nt, j), idx(0, nr - j)});
    // Single boundary circle: along r = +1, then (via the seam) along r = -1.
    for (int i = 0; i < nt; ++i) m.boundary.push_back(idx(i, nr));
    for (int i = 0; i < nt; ++i) m.boundary.push_back(idx(i, 0));
    return m;
}

} // namespace

std::string GluedKleinReport::to_string() const {
    std::ostringstream out;
    out << "boundary side 1: " << boundary_side1.to_string()
        << "; boundary side 2: " << boundary_side2.to_string()
        << "; max boundary mismatch " << max_boundary_mismatch
        << "; Euler characteristic " << euler_characteristic << "; "
        << (pass ? "pass" : "FAIL");
    return out.str();
}

GluedKleinReport klein_in_s1xs2(int grid_t, int grid_r, int boundary_samples,
                                const Tolerances& tol) {
    GluedKleinReport rep;
    // Boundary classes by winding count on each side.
    const WindingCount w1 = moebius_boundary_winding(boundary_samples, false);
    const WindingCount w2 = moebius_boundary_winding(boundary_samples, false);
    rep.boundary_side1 = {w1.meridian, w1.longitude, Basis::HeegaardSide1};
    // Identity gluing mu_1 ~ mu_2, lambda_1 ~ lambda_2.
    rep.boundary_side2 = {w2.meridian, w2.longitude, Basis::HeegaardSide2};

    // The two boundary traces must coincide pointwise on the shared torus.
    double mismatch = 0;
    for (int i = 0; i <= boundary_samples; ++i) {
        const double t = 2.0 * double(i) / boundary_samples;
        const double tm = t <= 1.0 ? t : t - 1.0;
        const double r = t <= 1.0 ? 1.0 : -1.0;
        const C2Point a = moebius_in_solid_torus(tm, r, false);
        const C2Point b = moebius_in_solid_torus(tm, r, false);
        mismatch = std::max(mismatch, distance(a, b));
    }
    rep.max_boundary_mismatch = mismatch;

    // Euler characteristic of the glued complex: two band meshes with their
    // boundary circles identified point by point.
    const BandMesh band = moebius_band_mesh(grid_t, grid_r);
    const std::uint32_t offset = std::uint32_t(band.vertex_count);
    std::vector<std::array<std::uint32_t, 3>> tris = band.triangles;
    for (const auto& t : band.triangles)
        tris.push_back({t[0] + offset, t[1] + offset, t[2] + offset});
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ident = band.seams;
    for (const auto& s : band.seams)
        ident.push_back({s.first + offset, s.second + offset});
    for (std::uint32_t b : band.boundary) ident.push_back({b, b + offset});
    rep.euler_characteristic =
        euler_characteristic_identified(2 * band.vertex_count, tris, ident);

    const TorusClass expected1{1, 2, Basis::HeegaardSide1};
    const TorusClass expected2{1, 2, Basis::HeegaardSide2};
    rep.pass = rep.boundary_side1 == expected1 && rep.boundary_side2 == expected2 &&
               rep.max_boundary_mismatch <= tol.identity &&
               rep.euler_characteristic == 0;
    return rep;
}

std::string TwoMoebiusReport::to_string() const {
    std::ostringstream out;
    out << space.to_string() << " with r=" << r << ", s=" << s << ": "
        << input.to_string() << " -> " << image.to_string() << ", expected "
        << expected.to_string() << " (sign " << kleinlens::to_string(sign)
        << "); " << (pass ? "pass" : "FAIL");
    return out.str();
}

TwoMoebiusReport two_moebius_construction(std::int64_t n, Sign sign) {
    if (n < 1) throw std::domain_error("two_moebius_construction requires n >= 1");
    TwoMoebiusReport rep;
    rep.sign = sign;
    const std::int64_t q = sign == Sign::Plus ? 2 * n + 1 : 2 * n - 1;
    rep.space = LensSpace(4 * n, q);
    rep.r = n;
    rep.s = sign == Sign::Plus ? -(2 * n - 1) : -(2 * n + 1);
    const GluingMatrix g = gluing_with_witnesses(rep.space, rep.r, rep.s);
    rep.input = TorusClass{1, 2, Basis::HeegaardSide1}; // 2*lambda_1 + mu_1
    rep.image = apply_gluing(g, rep.input);
    const TorusClass plus{-1, 2, Basis::HeegaardSide2}; // 2*lambda_2 - mu_2
    rep.expected = sign == Sign::Plus ? plus : -plus;
    rep.pass = rep.image == rep.expected;
    return rep;
}

HandleLayout handle_layout(std::int64_t n, Sign sign) {
    if (n < 1) throw std::domain_error("handle_layout requires n >= 1");
    HandleLayout l;
    l.n = n;
    l.sign = sign;
    l.mu_intersections = {2, 1, 2 * (n - 1), 1, 2 * (n - 1)};
    l.lambda_intersections = {2, 1, 2 * (n - 1)};
    l.second_over_first = n - 1;
    // Both 1-handles are twisted and attached disjointly along the disc
    // boundary: slot word a a b b.
    l.band_slots = {0, 0, 1, 1};
    l.band_twisted = {true, true};
    return l;
}

int boundary_circle_count(const std::vector<int>& band_slots,
                          const std::vector<bool>& band_twisted) {
    const std::size_t slots = band_slots.size();
    if (slots % 2 != 0)
        throw std::invalid_argument("each band needs exactly two slots");
    // Endpoint nodes: 2 per slot (L = 2*i, R = 2*i + 1).  Boundary pieces are
    // the gaps between consecutive slots and the two sides of each band; each
    // endpoint meets exactly one gap and one band side, so the pieces close
    // up into circles.
    UnionFind uf(2 * slots);
    for (std::size_t i = 0; i < slots; ++i)
        uf.unite(2 * i + 1, 2 * ((i + 1) % slots)); // gap: (i,R) -- (i+1,L)

    std::vector<std::vector<std::size_t>> positions(band_twisted.size());
    for (std::size_t i = 0; i < slots; ++i) {
        const int b = band_slots[i];
        if (b < 0 || std::size_t(b) >= band_twisted.size())
            throw std::invalid_argument("band index out of range");
        positions[std::size_t(b)].push_back(i);
    }
    for (std::size_t b = 0; b < positions.size(); ++b) {
        if (positions[b].size() != 2)
            throw std::invalid_argument("each band needs exactly two slots");
        const std::size_t x = positions[b][0], y = positions[b][1];
        if (band_twisted[b]) {
            uf.unite(2 * x, 2 * y);         // (x,L) -- (y,L)
            uf.unite(2 * x + 1, 2 * y + 1); // (x,R) -- (y,R)
        } else {
            uf.unite(2 * x, 2 * y + 1);
            uf.unite(2 * x + 1, 2 * y);
        }
    }

    std::set<std::size_t> comps;
    for (std::size_t v = 0; v < 2 * slots; ++v) comps.insert(uf.find(v));
    return int(comps.size());
}

TorusClass handle_boundary_class(const HandleLayout& layout) {
    if (boundary_circle_count(layout.band_slots, layout.band_twisted) != 1)
        throw std::invalid_argument(
            "handle layout boundary is not a single closed curve");

    std::int64_t mu_total = 0, lambda_total = 0;
    for (std::int64_t c : layout.mu_intersections) mu_total += c;
    for (std::int64_t c : layout.lambda_intersections) lambda_total += c;

    // A curve meeting mu_2 in a points and lambda_2 in b points lies in
    // a*lambda_2 -+ b*mu_2; orientations give the minus sign in the 2n+1
    // picture, and the conjugation diffeomorphism reverses mu_2 for 2n-1.
    const TorusClass cls = layout.sign == Sign::Plus
                               ? TorusClass{-lambda_total, mu_total, Basis::HeegaardSide2}
                               : TorusClass{lambda_total, mu_total, Basis::HeegaardSide2};

    const std::int64_t n = layout.n;
    const std::int64_t q = layout.sign == Sign::Plus ? 2 * n + 1 : 2 * n - 1;
    const LensSpace space(4 * n, q);
    const TorusClass mu1_image = heegaard_gluing(space).mu1_image();
    if (cls.lambda != mu1_image.lambda ||
        (cls.mu - mu1_image.mu) % space.p != 0)
        throw std::logic_error("handle boundary class does not match mu_1");
    if (!(lens_from_meridian_image(cls) == space.canonical()))
        throw std::logic_error("handle boundary class names the wrong lens space");
    return cls;
}

} // namespace kleinlens::geometry
