#include "kleinlens/lens_core.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace kleinlens {

std::int64_t mod_pos(std::int64_t a, std::int64_t m) {
    std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
    if (m == 1) return 0;
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = m, new_r = mod_pos(a, m);
    while (new_r != 0) {
        std::int64_t quot = r / new_r;
        t = std::exchange(new_t, t - quot * new_t);
        r = std::exchange(new_r, r - quot * new_r);
    }
    if (r != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return mod_pos(t, m);
}

std::string to_string(Basis b) {
    switch (b) {
    case Basis::HeegaardSide1: return "HeegaardSide1";
    case Basis::HeegaardSide2: return "HeegaardSide2";
    case Basis::NuKBoundary: return "NuKBoundary";
    }
    return "?";
}

std::string to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

bool TorusClass::is_primitive() const {
    return std::gcd(mu, lambda) == 1;
}

std::string TorusClass::to_string() const {
    std::ostringstream out;
    out << mu << "*mu";
    if (lambda < 0)
        out << "-" << -lambda << "*lambda";
    else
        out << "+" << lambda << "*lambda";
    out << "@" << kleinlens::to_string(basis);
    return out.str();
}

namespace {
void require_same_basis(const TorusClass& a, const TorusClass& b) {
    if (a.basis != b.basis)
        throw std::invalid_argument("torus classes live in different bases");
}
} // namespace

TorusClass operator+(const TorusClass& a, const TorusClass& b) {
    require_same_basis(a, b);
    return {a.mu + b.mu, a.lambda + b.lambda, a.basis};
}

TorusClass operator-(const TorusClass& a, const TorusClass& b) {
    require_same_basis(a, b);
    return {a.mu - b.mu, a.lambda - b.lambda, a.basis};
}

TorusClass operator*(std::int64_t k, const TorusClass& c) {
    return {k * c.mu, k * c.lambda, c.basis};
}

TorusClass operator-(const TorusClass& c) {
    return {-c.mu, -c.lambda, c.basis};
}

LensSpace::LensSpace(std::int64_t p_, std::int64_t q_) : p(p_), q(q_) {
    if (p < 1) throw std::domain_error("lens space requires p >= 1");
    if (std::gcd(p, mod_pos(q, p)) != 1)
        throw std::invalid_argument("not a lens space parameterization: gcd(p,q) != 1");
}

LensSpace LensSpace::canonical() const {
    if (p == 1) return LensSpace(1, 0);
    return LensSpace(p, mod_pos(q, p));
}

bool LensSpace::is_canonical() const {
    if (p == 1) return q == 0;
    return 1 <= q && q <= p - 1;
}

std::string LensSpace::to_string() const {
    std::ostringstream out;
    out << "L(" << p << "," << q << ")";
    return out.str();
}

LensSpace normalize(std::int64_t p, std::int64_t q) {
    return LensSpace(p, q).canonical();
}

bool are_homeomorphic(const LensSpace& a, const LensSpace& b) {
    const LensSpace ca = a.canonical(), cb = b.canonical();
    if (ca.p != cb.p) return false;
    const std::int64_t p = ca.p;
    if (p == 1) return true;
    const std::int64_t inv = mod_inverse(ca.q, p);
    return cb.q == ca.q || cb.q == mod_pos(-ca.q, p) || cb.q == inv ||
           cb.q == mod_pos(-inv, p);
}

LensSpace homeo_class_rep(const LensSpace& space) {
    const LensSpace c = space.canonical();
    if (c.p == 1) return c;
    const std::int64_t inv = mod_inverse(c.q, c.p);
    std::int64_t best = c.q;
    for (std::int64_t cand : {mod_pos(-c.q, c.p), inv, mod_pos(-inv, c.p)})
        best = std::min(best, cand);
    return LensSpace(c.p, best);
}

double distance(const C2Point& a, const C2Point& b) {
    return std::sqrt(std::norm(a.z1 - b.z1) + std::norm(a.z2 - b.z2));
}

namespace {
void require_on_sphere(const C2Point& z, double tol) {
    if (std::abs(z.norm_sq() - 1.0) > tol)
        throw std::domain_error("point is not on the unit sphere S^3");
}
} // namespace

C2Point deck_generator(const LensSpace& space, const C2Point& z, double tol) {
    return deck_power(space, z, 1, tol);
}

C2Point deck_power(const LensSpace& space, const C2Point& z, std::int64_t k,
                   double tol) {
    require_on_sphere(z, tol);
    const std::int64_t p = space.p;
    const std::int64_t k1 = mod_pos(k, p);
    const std::int64_t k2 = mod_pos(k * mod_pos(space.q, p), p);
    const double two_pi = 2.0 * M_PI;
    const std::complex<double> rot1 = std::polar(1.0, two_pi * double(k1) / double(p));
    const std::complex<double> rot2 = std::polar(1.0, two_pi * double(k2) / double(p));
    return {rot1 * z.z1, rot2 * z.z2};
}

TorusClass GluingMatrix::mu1_image() const {
    return {-space.q, space.p, Basis::HeegaardSide2};
}

TorusClass GluingMatrix::lambda1_image() const {
    return {r, s, Basis::HeegaardSide2};
}

std::int64_t GluingMatrix::det() const {
    return -space.q * s - space.p * r;
}

std::array<std::array<std::int64_t, 2>, 2> GluingMatrix::entries() const {
    return {{{-space.q, r}, {space.p, s}}};
}

std::string GluingMatrix::to_string() const {
    std::ostringstream out;
    out << "mu1 -> " << mu1_image().to_string() << "; lambda1 -> "
        << lambda1_image().to_string() << " (r=" << r << ", s=" << s << ")";
    return out.str();
}

GluingMatrix heegaard_gluing(const LensSpace& space) {
    const std::int64_t p = space.p, q = space.q;
    std::int64_t r, s;
    if (q == 0) { // p = 1
        r = 1;
        s = 0;
    } else if (q == 1 || q == -1) {
        r = 0;
        s = q; // q*s = 1
    } else {
        r = mod_inverse(p, std::llabs(q));
        s = (1 - p * r) / q;
    }
    return gluing_with_witnesses(space, r, s);
}

GluingMatrix gluing_with_witnesses(const LensSpace& space, std::int64_t r,
                                   std::int64_t s) {
    if (space.p * r + space.q * s != 1)
        throw std::invalid_argument("Bezout witnesses do not satisfy p*r + q*s = 1");
    return GluingMatrix{space, r, s};
}

TorusClass apply_gluing(const GluingMatrix& g, const TorusClass& c) {
    if (c.basis != Basis::HeegaardSide1)
        throw std::invalid_argument("apply_gluing expects a class in basis HeegaardSide1");
    return c.mu * g.mu1_image() + c.lambda * g.lambda1_image();
}

TorusClass apply_gluing_inverse(const GluingMatrix& g, const TorusClass& c) {
    if (c.basis != Basis::HeegaardSide2)
        throw std::invalid_argument("apply_gluing_inverse expects a class in basis HeegaardSide2");
    // M = [[-q, r], [p, s]] has det -1, so M^{-1} = -adj(M) = [[-s, r], [p, q]].
    return {-g.s * c.mu + g.r * c.lambda, g.space.p * c.mu + g.space.q * c.lambda,
            Basis::HeegaardSide1};
}

EmbeddabilityVerdict klein_bottle_embeds(const LensSpace& space) {
    const LensSpace c = space.canonical();
    if (c.p % 4 != 0) return {};
    const std::int64_t n = c.p / 4;
    if (c.q == 2 * n - 1) return {true, n, Sign::Minus};
    if (c.q == 2 * n + 1) return {true, n, Sign::Plus};
    return {};
}

bool projective_plane_embeds(const LensSpace& space) {
    return space.canonical() == LensSpace(2, 1);
}

} // namespace kleinlens
