#include "kleinlens/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "kleinlens/version.hpp"

namespace kleinlens::geometry {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kBoundarySnap = 1e-12;

double wrap_angle(double a) {
    a = std::fmod(a, kTwoPi);
    return a < 0 ? a + kTwoPi : a;
}

// Sector index of an angle for sector width 2 pi / p, snapping angles within
// kBoundarySnap of a boundary upward.
std::int64_t sector_of(double angle, std::int64_t p) {
    const double sector = kTwoPi / double(p);
    std::int64_t j = std::int64_t(std::floor(angle / sector + kBoundarySnap));
    return mod_pos(j, p);
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::pair<C2Point, std::int64_t>
lens_fundamental_domain_canonicalize(const LensSpace& space, const C2Point& z,
                                     const Tolerances& tol) {
    if (std::abs(z.norm_sq() - 1.0) > tol.membership)
        throw std::domain_error("canonicalize: point is not on the unit sphere");
    const std::int64_t p = space.p;
    std::int64_t k = 0;
    if (std::abs(z.z1) >= tol.membership) {
        const std::int64_t j = sector_of(wrap_angle(std::arg(z.z1)), p);
        k = mod_pos(p - j, p);
    } else {
        // sigma rotates z2 by 2 pi q / p; q is invertible mod p.
        const std::int64_t j = sector_of(wrap_angle(std::arg(z.z2)), p);
        const std::int64_t qinv = p == 1 ? 0 : mod_inverse(space.canonical().q, p);
        k = mod_pos((p - j) * qinv, p);
    }
    return {deck_power(space, z, k, tol.membership), k};
}

QuotientMesh klein_lens_embedding(std::int64_t n, Sign sign,
                                  std::uint32_t resolution,
                                  const Tolerances& tol) {
    if (n < 1) throw std::domain_error("klein_lens_embedding requires n >= 1");
    if (resolution < 4)
        throw std::domain_error("klein_lens_embedding requires resolution >= 4");

    QuotientMesh mesh;
    mesh.n = n;
    mesh.sign = sign;
    mesh.space = LensSpace(4 * n, sign == Sign::Plus ? 2 * n + 1 : 2 * n - 1);
    mesh.resolution = resolution;

    const std::uint32_t R = resolution;
    const double phi_max = M_PI / (2.0 * double(n));
    const double dir = sign == Sign::Plus ? 1.0 : -1.0;

    mesh.vertices.reserve(std::size_t(R + 1) * (R + 1));
    mesh.params.reserve(std::size_t(R + 1) * (R + 1));
    for (std::uint32_t i = 0; i <= R; ++i) {
        const double phi = phi_max * double(i) / double(R);
        for (std::uint32_t j = 0; j <= R; ++j) {
            const double theta = M_PI * double(j) / double(R);
            mesh.vertices.push_back({std::sin(theta) * std::polar(1.0, phi),
                                     std::cos(theta) * std::polar(1.0, dir * phi)});
            mesh.params.push_back({phi, theta});
        }
    }

    for (std::uint32_t i = 0; i < R; ++i)
        for (std::uint32_t j = 0; j < R; ++j) {
            const std::uint32_t a = mesh.vertex_index(i, j);
            const std::uint32_t b = mesh.vertex_index(i + 1, j);
            const std::uint32_t c = mesh.vertex_index(i + 1, j + 1);
            const std::uint32_t d = mesh.vertex_index(i, j + 1);
            mesh.faces.push_back({a, b, c});
            mesh.faces.push_back({a, c, d});
        }

    // iota(phi, pi) = sigma^{2n} iota(phi, 0) and
    // iota(pi/2n, pi - theta) = sigma iota(0, theta).
    for (std::uint32_t i = 0; i <= R; ++i)
        mesh.seams.push_back({mesh.vertex_index(i, 0), mesh.vertex_index(i, R), 2 * n});
    for (std::uint32_t j = 0; j <= R; ++j)
        mesh.seams.push_back({mesh.vertex_index(0, j), mesh.vertex_index(R, R - j), 1});

    mesh.canonical.reserve(mesh.vertices.size());
    for (const C2Point& v : mesh.vertices)
        mesh.canonical.push_back(
            lens_fundamental_domain_canonicalize(mesh.space, v, tol));

    const SeamCheckReport check = verify_seams(mesh, tol);
    if (!check.pass) {
        std::ostringstream msg;
        msg << "seam verification failed: max residual " << check.max_residual
            << " exceeds " << check.tolerance;
        throw std::logic_error(msg.str());
    }
    return mesh;
}

SeamCheckReport verify_seams(const QuotientMesh& mesh, const Tolerances& tol) {
    SeamCheckReport rep;
    rep.tolerance = tol.identity;
    for (const SeamPair& s : mesh.seams) {
        const C2Point mapped =
            deck_power(mesh.space, mesh.vertices[s.a], s.deck_power, tol.membership);
        rep.max_residual =
            std::max(rep.max_residual, distance(mapped, mesh.vertices[s.b]));
    }
    rep.pass = rep.max_residual <= rep.tolerance;
    return rep;
}

std::int64_t mesh_euler_characteristic(const QuotientMesh& mesh) {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ident;
    ident.reserve(mesh.seams.size());
    for (const SeamPair& s : mesh.seams) ident.push_back({s.a, s.b});
    return euler_characteristic_identified(mesh.vertices.size(), mesh.faces, ident);
}

double klein_param_distance(const QuotientMesh& mesh, std::uint32_t a,
                            std::uint32_t b) {
    const double phi_period = M_PI / double(mesh.n); // square of the glide
    const double glide_shift = phi_period / 2.0;     // pi / 2n
    const auto& pa = mesh.params[a];
    const auto& pb = mesh.params[b];
    double best = std::numeric_limits<double>::infinity();
    // Images of b under the deck group of the Klein bottle: translations
    // (phi + c*pi/n, theta + t*pi) and glides (phi + pi/2n + c*pi/n,
    // pi - theta + t*pi); neighbours with |c|, |t| <= 1 suffice for points of
    // one fundamental rectangle.
    for (int glide = 0; glide < 2; ++glide) {
        const double phi0 = pb[0] + (glide ? glide_shift : 0.0);
        const double theta0 = glide ? M_PI - pb[1] : pb[1];
        for (int c = -1; c <= 1; ++c)
            for (int t = -1; t <= 1; ++t) {
                const double dphi = pa[0] - (phi0 + c * phi_period);
                const double dtheta = pa[1] - (theta0 + t * M_PI);
                best = std::min(best, std::hypot(dphi, dtheta));
            }
    }
    return best;
}

std::string InjectivityReport::to_string() const {
    std::ostringstream out;
    out << "min orbit separation " << min_separation << " over " << far_pairs
        << " pairs with parameter distance > " << param_threshold
        << " (required >= " << min_sep_required << "): "
        << (pass ? "pass" : "FAIL");
    return out.str();
}

InjectivityReport embedded_injectivity_check(const QuotientMesh& mesh,
                                             const LensSpace& space,
                                             double min_sep,
                                             double param_threshold) {
    InjectivityReport rep;
    rep.min_sep_required = min_sep;
    rep.param_threshold = param_threshold > 0.0
                              ? param_threshold
                              : 4.0 * M_PI / double(mesh.resolution);
    const double thr_sq = rep.param_threshold * rep.param_threshold;

    const std::size_t count = mesh.vertices.size();
    const std::int64_t p = space.p;
    const double phi_period = M_PI / double(mesh.n);
    const double glide_shift = phi_period / 2.0;

    // sigma preserves |z1| and |z2|, so | |z1_a| - |z1_b| | bounds the orbit
    // distance from below and prunes almost every pair.
    std::vector<double> mag1(count);
    for (std::size_t i = 0; i < count; ++i) mag1[i] = std::abs(mesh.vertices[i].z1);

    // Deck rotation phases, reused across pairs.
    std::vector<std::complex<double>> rot1(static_cast<std::size_t>(p));
    std::vector<std::complex<double>> rot2(static_cast<std::size_t>(p));
    const std::int64_t q = mod_pos(space.q, p);
    for (std::int64_t k = 0; k < p; ++k) {
        rot1[std::size_t(k)] = std::polar(1.0, kTwoPi * double(k) / double(p));
        rot2[std::size_t(k)] =
            std::polar(1.0, kTwoPi * double(mod_pos(k * q, p)) / double(p));
    }

    // Squared Klein-bottle parameter distance (same group enumeration as
    // klein_param_distance, arranged for the hot loop).
    const auto param_dist_sq = [&](std::size_t a, std::size_t b) {
        const double pa0 = mesh.params[a][0], pa1 = mesh.params[a][1];
        const double pb0 = mesh.params[b][0], pb1 = mesh.params[b][1];
        double best = std::numeric_limits<double>::infinity();
        for (int glide = 0; glide < 2; ++glide) {
            const double phi0 = pb0 + (glide ? glide_shift : 0.0);
            const double theta0 = glide ? M_PI - pb1 : pb1;
            for (int c = -1; c <= 1; ++c) {
                const double dphi = pa0 - (phi0 + c * phi_period);
                for (int t = -1; t <= 1; ++t) {
                    const double dtheta = pa1 - (theta0 + t * M_PI);
                    best = std::min(best, dphi * dphi + dtheta * dtheta);
                }
            }
        }
        return best;
    };

    double min_sq = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < count; ++a) {
        const C2Point& za = mesh.vertices[a];
        const double ta = mesh.params[a][1];
        for (std::size_t b = a + 1; b < count; ++b) {
            // 1-d prefilter: the theta distance alone already bounds the
            // parameter distance from below.  Theta images of b under the
            // deck group are theta_b + t*pi and (pi - theta_b) + t*pi.
            const double tb = mesh.params[b][1];
            const auto to_pi_multiple = [](double x) {
                x = std::abs(x);
                return std::min({x, std::abs(x - M_PI), std::abs(x - kTwoPi)});
            };
            const double dth = std::min(to_pi_multiple(ta - tb),
                                        to_pi_multiple(ta + tb - M_PI));
            if (dth * dth <= thr_sq && param_dist_sq(a, b) <= thr_sq)
                continue;
            ++rep.far_pairs;
            const double lower = mag1[a] - mag1[b];
            if (lower * lower >= min_sq) continue;
            const C2Point& zb = mesh.vertices[b];
            double best_sq = min_sq;
            for (std::int64_t k = 0; k < p; ++k) {
                const double d_sq =
                    std::norm(za.z1 - rot1[std::size_t(k)] * zb.z1) +
                    std::norm(za.z2 - rot2[std::size_t(k)] * zb.z2);
                best_sq = std::min(best_sq, d_sq);
            }
            min_sq = std::min(min_sq, best_sq);
        }
    }
    rep.min_separation = std::sqrt(min_sq);
    rep.pass = rep.min_separation >= min_sep;
    return rep;
}

C2Point default_projection_pole() { return {{-1.0, 0.0}, {0.0, 0.0}}; }

namespace {

using Vec4 = std::array<double, 4>;

Vec4 to_vec4(const C2Point& z) {
    return {z.z1.real(), z.z1.imag(), z.z2.real(), z.z2.imag()};
}

C2Point from_vec4(const Vec4& v) {
    return {{v[0], v[1]}, {v[2], v[3]}};
}

double dot(const Vec4& a, const Vec4& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

// Orthonormal frame of the pole's orthogonal complement: drop the standard
// basis vector with the largest pole component, Gram-Schmidt the rest in
// index order.  Deterministic, so exports are stable.
std::array<Vec4, 3> pole_frame(const Vec4& pole) {
    std::size_t drop = 0;
    for (std::size_t i = 1; i < 4; ++i)
        if (std::abs(pole[i]) > std::abs(pole[drop])) drop = i;
    std::array<Vec4, 3> frame{};
    std::size_t out = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        if (i == drop) continue;
        Vec4 e{};
        e[i] = 1.0;
        double c = dot(e, pole);
        for (std::size_t m = 0; m < 4; ++m) e[m] -= c * pole[m];
        for (std::size_t k = 0; k < out; ++k) {
            c = dot(e, frame[k]);
            for (std::size_t m = 0; m < 4; ++m) e[m] -= c * frame[k][m];
        }
        const double norm = std::sqrt(dot(e, e));
        for (std::size_t m = 0; m < 4; ++m) e[m] /= norm;
        frame[out++] = e;
    }
    return frame;
}

} // namespace

std::array<double, 3> stereographic_project(const C2Point& pole,
                                            const C2Point& z) {
    const Vec4 p = to_vec4(pole);
    const Vec4 x = to_vec4(z);
    const double u = dot(x, p);
    const auto frame = pole_frame(p);
    Vec4 w;
    for (std::size_t m = 0; m < 4; ++m) w[m] = (x[m] - u * p[m]) / (1.0 - u);
    return {dot(w, frame[0]), dot(w, frame[1]), dot(w, frame[2])};
}

C2Point stereographic_inverse(const C2Point& pole,
                              const std::array<double, 3>& y) {
    const Vec4 p = to_vec4(pole);
    const auto frame = pole_frame(p);
    const double norm_sq = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    Vec4 x{};
    for (std::size_t m = 0; m < 4; ++m) x[m] = (norm_sq - 1.0) * p[m];
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t m = 0; m < 4; ++m) x[m] += 2.0 * y[i] * frame[i][m];
    for (std::size_t m = 0; m < 4; ++m) x[m] /= norm_sq + 1.0;
    return from_vec4(x);
}

Mesh3 stereographic_export(const QuotientMesh& mesh, const C2Point& pole,
                           const Tolerances& tol) {
    for (const C2Point& v : mesh.vertices)
        if (distance(v, pole) <= tol.membership)
            throw std::domain_error("projection pole collides with a mesh vertex");
    Mesh3 out;
    out.pole = pole;
    out.faces = mesh.faces;
    out.seams = mesh.seams;
    out.vertices.reserve(mesh.vertices.size());
    for (const C2Point& v : mesh.vertices)
        out.vertices.push_back(stereographic_project(pole, v));
    return out;
}

void write_obj(const std::string& path, const Mesh3& mesh) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const auto& v : mesh.vertices)
        out << "v " << fmt17(v[0]) << " " << fmt17(v[1]) << " " << fmt17(v[2])
            << "\n";
    for (const auto& f : mesh.faces)
        out << "f " << f[0] + 1 << " " << f[1] + 1 << " " << f[2] + 1 << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_mesh_metadata(const std::string& path, const QuotientMesh& mesh,
                         const SeamCheckReport& seam_check,
                         const InjectivityReport& injectivity) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "format = kleinlens-mesh-metadata\n";
    out << "version = " << KLEINLENS_VERSION << "\n";
    out << "space = " << mesh.space.to_string() << "\n";
    out << "n = " << mesh.n << "\n";
    out << "sign = " << to_string(mesh.sign) << "\n";
    out << "resolution = " << mesh.resolution << "\n";
    out << "vertices = " << mesh.vertices.size() << "\n";
    out << "faces = " << mesh.faces.size() << "\n";
    out << "euler_characteristic = " << mesh_euler_characteristic(mesh) << "\n";
    out << "seam_count = " << mesh.seams.size() << "\n";
    out << "seam_max_residual = " << fmt17(seam_check.max_residual) << "\n";
    out << "seam_tolerance = " << fmt17(seam_check.tolerance) << "\n";
    out << "seam_check = " << (seam_check.pass ? "pass" : "fail") << "\n";
    out << "injectivity_min_separation = " << fmt17(injectivity.min_separation)
        << "\n";
    out << "injectivity_param_threshold = " << fmt17(injectivity.param_threshold)
        << "\n";
    out << "injectivity_required = " << fmt17(injectivity.min_sep_required)
        << "\n";
    out << "injectivity_check = " << (injectivity.pass ? "pass" : "fail")
        << "\n";
    for (const SeamPair& s : mesh.seams) {
        const C2Point mapped = deck_power(mesh.space, mesh.vertices[s.a], s.deck_power);
        out << "seam " << s.a << " " << s.b << " " << s.deck_power << " "
            << fmt17(distance(mapped, mesh.vertices[s.b])) << "\n";
    }
    for (std::size_t i = 0; i < mesh.vertices.size(); ++i) {
        const C2Point& v = mesh.vertices[i];
        out << "s3 " << i << " " << fmt17(v.z1.real()) << " "
            << fmt17(v.z1.imag()) << " " << fmt17(v.z2.real()) << " "
            << fmt17(v.z2.imag()) << " " << mesh.canonical[i].second << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_curve(const std::string& path, const std::vector<C2Point>& points) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const C2Point& p : points)
        out << fmt17(p.z1.real()) << " " << fmt17(p.z1.imag()) << " "
            << fmt17(p.z2.real()) << " " << fmt17(p.z2.imag()) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_curve(const std::string& path, const std::vector<NuKPoint>& points) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (const NuKPoint& p : points)
        out << fmt17(p.t) << " " << fmt17(p.theta) << " " << fmt17(p.r) << "\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace kleinlens::geometry
