#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "polvar/majorana.hpp"
#include "polvar/polyroots.hpp"
#include "polvar/stokes.hpp"
#include "test_support.hpp"

using namespace polvar;

namespace {

// best-case greedy multiset match in angular distance
double multiset_mismatch(const MajoranaConstellation& a, const MajoranaConstellation& b) {
    std::vector<bool> used(b.points.size(), false);
    double worst = 0.0;
    for (const SpherePoint& p : a.points) {
        double best = 1e300;
        int best_j = -1;
        for (size_t j = 0; j < b.points.size(); ++j) {
            if (used[j]) continue;
            const double d = angular_distance(p, b.points[j]);
            if (d < best) { best = d; best_j = static_cast<int>(j); }
        }
        used[static_cast<size_t>(best_j)] = true;
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

TEST_CASE("aberth finds the roots of simple polynomials") {
    // (z - 1)(z - 2i)(z + 3) = z^3 + (2 - 2i) z^2 + (-3 - 4i) z + (-6i)... build numerically
    const std::vector<cplx> roots{cplx(1, 0), cplx(0, 2), cplx(-3, 0)};
    std::vector<cplx> coeffs{1.0};
    for (const cplx& r : roots) {
        coeffs.insert(coeffs.begin(), 0.0);
        for (size_t k = 0; k + 1 < coeffs.size(); ++k) coeffs[k] -= r * coeffs[k + 1];
    }
    std::vector<cplx> found = aberth_roots(coeffs);
    REQUIRE(found.size() == 3);
    for (const cplx& r : roots) {
        double best = 1e300;
        for (const cplx& f : found) best = std::min(best, std::abs(f - r));
        CHECK(best < 1e-12);
    }
}

TEST_CASE("cluster coalescing recovers multiple roots but keeps close pairs apart") {
    // (z - 0.7)^4: cluster collapses to the exact quadruple root
    std::vector<cplx> quad{1.0};
    for (int k = 0; k < 4; ++k) {
        quad.insert(quad.begin(), 0.0);
        for (size_t i = 0; i + 1 < quad.size(); ++i) quad[i] -= cplx(0.7) * quad[i + 1];
    }
    std::vector<cplx> r4 = coalesce_root_clusters(aberth_roots(quad), quad);
    REQUIRE(r4.size() == 4);
    for (const cplx& z : r4) CHECK(std::abs(z - cplx(0.7)) < 1e-10);

    // two genuinely distinct roots 1e-3 apart must stay distinct
    const cplx a(0.5, 0.0), b(0.5 + 1e-3, 0.0);
    std::vector<cplx> close{a * b, -(a + b), 1.0};
    std::vector<cplx> rc = coalesce_root_clusters(aberth_roots(close), close);
    REQUIRE(rc.size() == 2);
    std::sort(rc.begin(), rc.end(), [](const cplx& x, const cplx& y) { return x.real() < y.real(); });
    CHECK(std::abs(rc[0] - a) < 1e-9);
    CHECK(std::abs(rc[1] - b) < 1e-9);
}

TEST_CASE("constellations of the reference states") {
    // |2,0>: both points at the North pole
    MajoranaConstellation north = to_constellation(make_su2_coherent(2, 0.0, 0.0));
    REQUIRE(north.points.size() == 2);
    for (const SpherePoint& p : north.points) CHECK(p.theta == 0.0);

    // |0,2>: both at the South pole
    MajoranaConstellation south = to_constellation(make_su2_coherent(2, M_PI, 0.0));
    for (const SpherePoint& p : south.points) CHECK(p.theta == doctest::Approx(M_PI));

    // NOON_3: equidistant equatorial triangle
    MajoranaConstellation noon = to_constellation(make_noon(3));
    REQUIRE(noon.points.size() == 3);
    for (const SpherePoint& p : noon.points) CHECK(std::abs(p.theta - M_PI / 2.0) < 1e-12);
    for (size_t i = 0; i < 3; ++i)
        for (size_t j = i + 1; j < 3; ++j)
            CHECK(std::abs(angular_distance(noon.points[i], noon.points[j]) - 2.0 * M_PI / 3.0)
                  < 1e-12);

    // coherent states: N coincident points at (theta, phi)
    for (int n : {2, 3, 5, 8}) {
        const double theta = 1.0471975512, phi = 0.7853981634;
        MajoranaConstellation c = to_constellation(make_su2_coherent(n, theta, phi));
        REQUIRE(c.points.size() == static_cast<size_t>(n));
        for (const SpherePoint& p : c.points) {
            CHECK(std::abs(p.theta - theta) < 1e-7);
            CHECK(std::abs(p.phi - phi) < 1e-7);
        }
    }
}

TEST_CASE("from_constellation reference cases") {
    MajoranaConstellation two_north;
    two_north.points = {{0.0, 0.0}, {0.0, 0.0}};
    const TwoModeState s20 = from_constellation(two_north);
    CHECK(std::abs(s20.amplitude(2) - cplx(1.0)) < 1e-14);

    // antipodal equatorial pair lies on the |1,1>/NOON_2 orbit: variances {4,4,0}
    MajoranaConstellation antipodal;
    antipodal.points = {{M_PI / 2.0, 0.0}, {M_PI / 2.0, M_PI}};
    const PrincipalVariances pv = principal_variances(covariance(from_constellation(antipodal)));
    CHECK(std::abs(pv.lambdas[0] - 0.0) < 1e-12);
    CHECK(std::abs(pv.lambdas[1] - 4.0) < 1e-12);
    CHECK(std::abs(pv.lambdas[2] - 4.0) < 1e-12);

    // the canonical eta_3 angles rebuild an isotropic state
    MajoranaConstellation eta;
    const double t = 1.876226673284;  // 107.4999 deg
    eta.points = {{0.0, 0.0}, {t, 0.0}, {t, 2.015298914348}};
    const Mat3 g = covariance(from_constellation(eta)).gamma;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(std::abs(g(i, j) - (i == j ? 3.0 : 0.0)) < 1e-6);
}

TEST_CASE("roundtrip state -> constellation -> state has unit fidelity") {
    std::mt19937_64 rng(83);
    for (int n = 1; n <= 8; ++n) {
        for (int rep = 0; rep < 100; ++rep) {
            const TwoModeState psi = testsup::random_state(n, rng);
            const TwoModeState back = from_constellation(to_constellation(psi));
            CHECK(std::abs(overlap(back, psi)) >= 1.0 - 1e-9);
        }
    }
}

TEST_CASE("roundtrip constellation -> state -> constellation") {
    std::mt19937_64 rng(89);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 40; ++rep) {
            MajoranaConstellation c;
            for (int k = 0; k < n; ++k)
                c.points.push_back({std::acos(2.0 * u(rng) - 1.0), 2.0 * M_PI * u(rng)});
            std::sort(c.points.begin(), c.points.end(),
                      [](const SpherePoint& a, const SpherePoint& b) {
                          return a.theta < b.theta || (a.theta == b.theta && a.phi < b.phi);
                      });
            const MajoranaConstellation back = to_constellation(from_constellation(c));
            CHECK(multiset_mismatch(c, back) < 1e-7);
        }
    }
}

TEST_CASE("rotation rigidly rotates the constellation") {
    std::mt19937_64 rng(97);
    for (int n = 1; n <= 6; ++n) {
        for (int rep = 0; rep < 25; ++rep) {
            const TwoModeState psi = testsup::random_state(n, rng);
            const EulerAngles e = testsup::random_euler(rng);
            const Mat3 r = induced_so3(e);

            const MajoranaConstellation direct = to_constellation(apply_rotation(psi, e));
            MajoranaConstellation mapped;
            for (const SpherePoint& p : to_constellation(psi).points)
                mapped.points.push_back(from_unit_vector(r * to_unit_vector(p)));
            CHECK(multiset_mismatch(direct, mapped) < 1e-7);
        }
    }
}

TEST_CASE("pairwise separation multiset is rotation invariant") {
    std::mt19937_64 rng(101);
    const TwoModeState psi = testsup::random_state(5, rng);
    const MajoranaConstellation base = to_constellation(psi);
    std::vector<double> sep0;
    for (size_t i = 0; i < base.points.size(); ++i)
        for (size_t j = i + 1; j < base.points.size(); ++j)
            sep0.push_back(angular_distance(base.points[i], base.points[j]));
    std::sort(sep0.begin(), sep0.end());

    for (int rep = 0; rep < 20; ++rep) {
        const MajoranaConstellation rot =
            to_constellation(apply_rotation(psi, testsup::random_euler(rng)));
        std::vector<double> sep;
        for (size_t i = 0; i < rot.points.size(); ++i)
            for (size_t j = i + 1; j < rot.points.size(); ++j)
                sep.push_back(angular_distance(rot.points[i], rot.points[j]));
        std::sort(sep.begin(), sep.end());
        for (size_t k = 0; k < sep.size(); ++k) CHECK(std::abs(sep[k] - sep0[k]) < 1e-9);
    }
}

TEST_CASE("canonicalize puts anchors at the pole and meridian") {
    // two stacked points anywhere end at the North pole
    MajoranaConstellation stacked;
    stacked.points = {{1.1, 2.2}, {1.1, 2.2}};
    const CanonicalForm cs = canonicalize(stacked);
    for (const SpherePoint& p : cs.constellation.points) CHECK(p.theta == 0.0);

    // NOON_2: antipodal pair -> one pole point; pairwise angle preserved
    const CanonicalForm cn = canonicalize(to_constellation(make_noon(2)));
    REQUIRE(cn.constellation.points.size() == 2);
    CHECK(cn.constellation.points[0].theta == 0.0);
    CHECK(std::abs(angular_distance(cn.constellation.points[0], cn.constellation.points[1]) - M_PI)
          < 1e-9);

    // eta_3: the canonical angles
    const CanonicalForm ce = canonicalize(to_constellation(make_eta(3, EtaBranch::plus)));
    REQUIRE(ce.constellation.points.size() == 3);
    CHECK(ce.constellation.points[0].theta == 0.0);
    CHECK(std::abs(ce.constellation.points[1].theta - 107.5 * M_PI / 180.0) < 0.1 * M_PI / 180.0);
    CHECK(std::abs(ce.constellation.points[2].theta - 107.5 * M_PI / 180.0) < 0.1 * M_PI / 180.0);
    CHECK(std::abs(ce.constellation.points[1].phi) < 1e-9);
    CHECK(std::abs(ce.constellation.points[2].phi - 115.47 * M_PI / 180.0) < 0.05 * M_PI / 180.0);

    // generic: output has a pole point and a meridian point, angles preserved,
    // and the returned rotation maps input onto output
    std::mt19937_64 rng(103);
    for (int n = 2; n <= 6; ++n) {
        for (int rep = 0; rep < 20; ++rep) {
            const TwoModeState psi = testsup::random_state(n, rng);
            const MajoranaConstellation c = to_constellation(psi);
            const CanonicalForm cf = canonicalize(c);
            CHECK(cf.constellation.points[0].theta < 1e-9);
            bool has_meridian = false;
            for (const SpherePoint& p : cf.constellation.points)
                if (p.theta > 1e-9 && p.theta < M_PI - 1e-9 && std::abs(p.phi) < 1e-9)
                    has_meridian = true;
            const bool axis_only = [&] {
                for (const SpherePoint& p : cf.constellation.points)
                    if (p.theta > 1e-9 && p.theta < M_PI - 1e-9) return false;
                return true;
            }();
            CHECK((has_meridian || axis_only));

            const Mat3 r = induced_so3(cf.rotation);
            MajoranaConstellation mapped;
            for (const SpherePoint& p : c.points)
                mapped.points.push_back(from_unit_vector(r * to_unit_vector(p)));
            CHECK(multiset_mismatch(cf.constellation, mapped) < 1e-7);
        }
    }
}

TEST_CASE("canonicalize is deterministic and angle preserving") {
    std::mt19937_64 rng(107);
    for (int rep = 0; rep < 10; ++rep) {
        const TwoModeState psi = testsup::random_state(4, rng);
        const MajoranaConstellation c = to_constellation(psi);
        const CanonicalForm a = canonicalize(c);
        const CanonicalForm b = canonicalize(c);
        for (size_t k = 0; k < a.constellation.points.size(); ++k) {
            CHECK(a.constellation.points[k].theta == b.constellation.points[k].theta);
            CHECK(a.constellation.points[k].phi == b.constellation.points[k].phi);
        }
        // pairwise angles survive the rotation
        std::vector<double> before, after;
        for (size_t i = 0; i < c.points.size(); ++i)
            for (size_t j = i + 1; j < c.points.size(); ++j) {
                before.push_back(angular_distance(c.points[i], c.points[j]));
                after.push_back(angular_distance(a.constellation.points[i],
                                                 a.constellation.points[j]));
            }
        std::sort(before.begin(), before.end());
        std::sort(after.begin(), after.end());
        for (size_t k = 0; k < before.size(); ++k) CHECK(std::abs(before[k] - after[k]) < 1e-7);
    }
}

TEST_CASE("same_orbit: reference verdicts") {
    // |1,1> and NOON_2 lie on the same orbit
    const TwoModeState one_one = make_from_amplitudes(2, {0.0, 1.0, 0.0});
    const OrbitCheck c1 = same_orbit(one_one, make_noon(2));
    CHECK(c1.relation == OrbitRelation::same);
    REQUIRE(c1.witness.has_value());

    // a state and its rotation
    std::mt19937_64 rng(109);
    for (int rep = 0; rep < 20; ++rep) {
        const TwoModeState psi = testsup::random_state(4, rng);
        const TwoModeState rot = apply_rotation(psi, testsup::random_euler(rng));
        const OrbitCheck c = same_orbit(psi, rot);
        CHECK(c.relation == OrbitRelation::same);
        // the witness actually aligns the constellations
        REQUIRE(c.witness.has_value());
        const Mat3 r = induced_so3(*c.witness);
        MajoranaConstellation mapped;
        for (const SpherePoint& p : to_constellation(psi).points)
            mapped.points.push_back(from_unit_vector(r * to_unit_vector(p)));
        CHECK(multiset_mismatch(to_constellation(rot), mapped) < 1e-5);
    }

    // eta_3 vs the overlapping-trace hexagon state: different orbits
    const TwoModeState eta = make_eta(3, EtaBranch::plus);
    const TwoModeState hexagon = make_from_amplitudes(3, {0.0, 0.5704, 0.7914, 0.2199});
    CHECK(same_orbit(eta, hexagon).relation == OrbitRelation::different);

    // reflexive
    CHECK(same_orbit(eta, eta).relation == OrbitRelation::same);

    CHECK_THROWS_AS(same_orbit(make_noon(2), make_noon(3)), manifold_mismatch);
}

TEST_CASE("same_orbit: mirror discrimination") {
    // chiral triangle: scalene, not on a great circle
    MajoranaConstellation chiral;
    chiral.points = {{0.0, 0.0}, {M_PI / 2.0, 0.0}, {50.0 * M_PI / 180.0, 60.0 * M_PI / 180.0}};
    const TwoModeState a = from_constellation(chiral);

    MajoranaConstellation mirror;
    for (const SpherePoint& p : chiral.points)
        mirror.points.push_back({p.theta, std::fmod(2.0 * M_PI - p.phi, 2.0 * M_PI)});
    const TwoModeState b = from_constellation(mirror);

    CHECK(same_orbit(a, b).relation == OrbitRelation::mirror_only);

    // mirror images share the same principal variances
    const PrincipalVariances pa = principal_variances(covariance(a));
    const PrincipalVariances pb = principal_variances(covariance(b));
    for (int k = 0; k < 3; ++k)
        CHECK(std::abs(pa.lambdas[static_cast<size_t>(k)] - pb.lambdas[static_cast<size_t>(k)])
              < 1e-10);

    // an achiral (isosceles) configuration is its own mirror
    MajoranaConstellation iso;
    iso.points = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 2.0}};
    MajoranaConstellation iso_m;
    for (const SpherePoint& p : iso.points)
        iso_m.points.push_back({p.theta, std::fmod(2.0 * M_PI - p.phi, 2.0 * M_PI)});
    CHECK(same_orbit(from_constellation(iso), from_constellation(iso_m)).relation
          == OrbitRelation::same);
}

TEST_CASE("same_orbit: symmetric and rotation invariant") {
    std::mt19937_64 rng(113);
    for (int rep = 0; rep < 10; ++rep) {
        const TwoModeState a = testsup::random_state(3, rng);
        const TwoModeState b = testsup::random_state(3, rng);
        const OrbitRelation ab = same_orbit(a, b).relation;
        const OrbitRelation ba = same_orbit(b, a).relation;
        CHECK(ab == ba);
        const TwoModeState a_rot = apply_rotation(a, testsup::random_euler(rng));
        CHECK(same_orbit(a_rot, b).relation == ab);
    }
}

TEST_CASE("same_orbit: axis configurations") {
    // two North + one South vs rotated copy
    MajoranaConstellation axis;
    axis.points = {{0.0, 0.0}, {0.0, 0.0}, {M_PI, 0.0}};
    const TwoModeState a = from_constellation(axis);
    const TwoModeState b = apply_rotation(a, {0.3, 0.9, 1.7});
    CHECK(same_orbit(a, b).relation == OrbitRelation::same);

    // a pi rotation about an equatorial axis swaps the poles, so flipped
    // multiplicities (one North + two South) lie on the same orbit
    MajoranaConstellation flipped;
    flipped.points = {{0.0, 0.0}, {M_PI, 0.0}, {M_PI, 0.0}};
    CHECK(same_orbit(a, from_constellation(flipped)).relation == OrbitRelation::same);

    // all-coincident vs 2+1 multiplicities differ already in the separations
    CHECK(same_orbit(make_su2_coherent(3, 0.0, 0.0), a).relation == OrbitRelation::different);

    // coincident triples are all one orbit
    MajoranaConstellation c1, c2;
    c1.points = {{0.7, 1.0}, {0.7, 1.0}, {0.7, 1.0}};
    c2.points = {{2.0, 4.0}, {2.0, 4.0}, {2.0, 4.0}};
    CHECK(same_orbit(from_constellation(c1), from_constellation(c2)).relation
          == OrbitRelation::same);
}
