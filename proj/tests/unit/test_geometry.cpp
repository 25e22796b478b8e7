#include <cmath>
#include <vector>

#include "doctest.h"
#include "test_oracles.hpp"
#include "volrig/errors.hpp"
#include "volrig/geometry.hpp"
#include "volrig/rng.hpp"

using namespace volrig;
namespace ts = volrig::testsupport;

TEST_SUITE_BEGIN("geometry");

TEST_CASE("bilinear form matches the model signature") {
  Eigen::VectorXd u(2), v(2);
  u << 1, 0;
  v << 1, 0;
  // The base point of the one-dimensional hyperboloid squares to -1.
  CHECK(bilinear_dot(u, v, Metric::hyperbolic(1)) == doctest::Approx(-1.0).epsilon(1e-15));

  u << 1, 0;
  v << 0, 1;
  CHECK(bilinear_dot(u, v, Metric::euclidean(2)) == doctest::Approx(0.0));

  u << std::cosh(1.0), std::sinh(1.0);
  v << 1, 0;
  CHECK(bilinear_dot(u, v, Metric::hyperbolic(1)) ==
        doctest::Approx(-std::cosh(1.0)).epsilon(1e-15));

  Eigen::VectorXd w(3);
  w << 1, 2, 3;
  CHECK_THROWS_AS(bilinear_dot(u, w, Metric::euclidean(2)), DimensionMismatch);
}

TEST_CASE("bilinear form accepts embeddings wider than the metric") {
  Eigen::VectorXd u(4), v(4);
  u << 2, 1, 1, 1;  // -4 + 3 = -1: on the widened hyperboloid
  v << 2, 1, 1, 1;
  CHECK(bilinear_dot(u, v, Metric::hyperbolic(2)) == doctest::Approx(-1.0));
}

TEST_CASE("chord closed forms and their inverse") {
  CHECK(chord_from_geodesic(1.0, Metric::spherical(2)) ==
        doctest::Approx(2.0 - 2.0 * std::cos(1.0)).epsilon(1e-15));
  CHECK(chord_from_geodesic(1.0, Metric::hyperbolic(2)) ==
        doctest::Approx(2.0 * std::cosh(1.0) - 2.0).epsilon(1e-15));
  CHECK(chord_from_geodesic(1.5, Metric::euclidean(3)) == doctest::Approx(2.25));

  Rng rng(41);
  for (int i = 0; i < 50; ++i) {
    const double d = 0.05 + 2.0 * rng.uniform();
    for (const Metric& m : {Metric::euclidean(2), Metric::spherical(2), Metric::hyperbolic(2)}) {
      if (m.space == Space::Spherical && d > 3.0) continue;
      CHECK(geodesic_from_chord(chord_from_geodesic(d, m), m) ==
            doctest::Approx(d).epsilon(1e-12));
    }
  }
}

TEST_CASE("chord derivative equals twice the two-point origin wedge") {
  CHECK(chord_geodesic_derivative(0.7, Metric::spherical(2)) ==
        doctest::Approx(2.0 * std::sin(0.7)).epsilon(1e-15));
  CHECK(chord_geodesic_derivative(0.7, Metric::hyperbolic(2)) ==
        doctest::Approx(2.0 * std::sinh(0.7)).epsilon(1e-15));
  CHECK(chord_geodesic_derivative(0.7, Metric::euclidean(2)) == doctest::Approx(1.4));
  // Finite-difference confirmation.
  for (const Metric& m : {Metric::euclidean(2), Metric::spherical(2), Metric::hyperbolic(2)}) {
    const double fd = ts::fd_derivative(
        [&](double d) { return chord_from_geodesic(d, m); }, 0.7, 1e-3);
    CHECK(chord_geodesic_derivative(0.7, m) == doctest::Approx(fd).epsilon(1e-9));
  }
}

TEST_CASE("wedge_inner is the determinant of pairwise products") {
  Eigen::MatrixXd a(2, 3), b(2, 3);
  a << 1, 0, 0, 0, 1, 0;
  b << 1, 2, 0, 3, 4, 0;
  // det([[1,3],[2,4]]) with rows against rows: entries a_i . b_j.
  CHECK(wedge_inner(a, b, Metric::euclidean(3)) == doctest::Approx(1 * 4 - 2 * 3));
  CHECK(wedge_inner(Eigen::MatrixXd(0, 0), Eigen::MatrixXd(0, 0), Metric::euclidean(3)) ==
        doctest::Approx(1.0));
}

TEST_CASE("surface validation accepts, re-projects, and rejects") {
  Eigen::MatrixXd pts(2, 3);
  pts << 1, 0, 0, 0, 1, 0;
  const PointConfiguration ok = PointConfiguration::make(Metric::spherical(2), pts);
  CHECK(ok.count() == 2);

  // A point off the sphere within the gate is pulled back onto it.
  Eigen::MatrixXd near(2, 3);
  near << 1.0 + 1e-13, 0, 0, 0, 1, 0;
  const PointConfiguration snapped = PointConfiguration::make(Metric::spherical(2), near);
  CHECK(snapped.point(0).norm() == doctest::Approx(1.0).epsilon(1e-15));

  Eigen::MatrixXd far = near;
  far(0, 0) = 1.5;
  CHECK_THROWS_AS(PointConfiguration::make(Metric::spherical(2), far), ValidationError);

  Eigen::MatrixXd lower(1, 3);
  lower << -1.0, 0, 0;  // wrong sheet of the hyperboloid
  CHECK_THROWS_AS(PointConfiguration::make(Metric::hyperbolic(2), lower), ValidationError);
}

TEST_CASE("lifting appends a spare coordinate and preserves the surface") {
  const PointConfiguration base = ts::octant_plus();
  const PointConfiguration lifted = base.lifted();
  CHECK(lifted.ambient() == base.ambient() + 1);
  CHECK(lifted.metric.dim == base.metric.dim + 1);
  for (int i = 0; i < lifted.count(); ++i) {
    CHECK(lifted.points(i, lifted.ambient() - 1) == 0.0);
    CHECK(bilinear_dot(lifted.point(i), lifted.point(i), lifted.metric) ==
          doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("distance matrix is symmetric with exact zero diagonal") {
  for (const PointConfiguration& config :
       {ts::square(), ts::octant_plus(), ts::curved_builtin(Space::Hyperbolic)}) {
    const DistanceMatrix dm = distance_matrix(config);
    CHECK(dm.entries.rows() == config.count());
    for (int i = 0; i < config.count(); ++i) {
      CHECK(dm.entries(i, i) == 0.0);
      for (int j = 0; j < config.count(); ++j) {
        CHECK(dm.entries(i, j) == doctest::Approx(dm.entries(j, i)).epsilon(1e-15));
        if (i != j) CHECK(dm.entries(i, j) > 0.0);
      }
    }
  }
}

TEST_CASE("squared chords follow the model closed forms") {
  const PointConfiguration sph = ts::octant_plus();
  // Orthogonal unit vectors sit at geodesic distance pi/2: chord 2 - 2cos = 2.
  CHECK(squared_chord(sph, 0, 1) == doctest::Approx(2.0).epsilon(1e-14));

  Eigen::MatrixXd pts(2, 2);
  pts << 1, 0, std::cosh(1.0), std::sinh(1.0);
  const PointConfiguration hyp = PointConfiguration::make(Metric::hyperbolic(1), pts);
  CHECK(squared_chord(hyp, 0, 1) ==
        doctest::Approx(2.0 * std::cosh(1.0) - 2.0).epsilon(1e-14));
}

TEST_CASE("squared simplex volume: unit right triangle") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 0, 1;
  const PointConfiguration tri = PointConfiguration::make(Metric::euclidean(2), pts);
  // (k!)^2 V^2 = (2!)^2 (1/2)^2 = 1.
  CHECK(squared_simplex_volume({0, 1, 2}, tri) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("squared simplex volume agrees with the coordinate Gram oracle") {
  Rng rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_u64() % 3);
    const PointConfiguration config = ts::random_flat_degenerate(n, rng);
    for (int k = 1; k <= n; ++k) {
      std::vector<int> face;
      for (int i = 0; i <= k; ++i) face.push_back(i);
      const double lib = squared_simplex_volume(face, config);
      const double oracle = ts::gram_squared_volume(face, config);
      CHECK(ts::rel_diff(lib, oracle) < 1e-10);
    }
  }
}

TEST_CASE("explicit chord-matrix volume matches the configuration route") {
  Rng rng(11);
  const PointConfiguration config = ts::random_flat_degenerate(3, rng);
  const std::vector<int> face{0, 1, 2, 3};
  Eigen::MatrixXd chord2(4, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      chord2(i, j) = i == j ? 0.0 : squared_chord(config, face[static_cast<std::size_t>(i)],
                                                  face[static_cast<std::size_t>(j)]);
  CHECK(squared_volume_from_chords(chord2) ==
        doctest::Approx(squared_simplex_volume(face, config)).epsilon(1e-12));
}

TEST_CASE("origin-prefixed squares carry the model signs") {
  const PointConfiguration sph = ts::octant_plus();
  // Two orthogonal unit vectors: sin^2(pi/2) = 1.
  CHECK(o_prefixed_square({0, 1}, sph) == doctest::Approx(1.0).epsilon(1e-13));

  Eigen::MatrixXd pts(2, 2);
  pts << 1, 0, std::cosh(1.0), std::sinh(1.0);
  const PointConfiguration hyp = PointConfiguration::make(Metric::hyperbolic(1), pts);
  const double sq = o_prefixed_square({0, 1}, hyp);
  CHECK(sq == doctest::Approx(-std::sinh(1.0) * std::sinh(1.0)).epsilon(1e-13));
  CHECK(o_prefixed_abs({0, 1}, hyp) == doctest::Approx(std::sinh(1.0)).epsilon(1e-13));

  CHECK_THROWS_AS(o_prefixed_square({0, 1}, ts::square()), UnsupportedMetric);
}

TEST_CASE("volume gradient matches finite differences of the chord form") {
  Rng rng(13);
  for (const PointConfiguration& config :
       {ts::random_flat_degenerate(2, rng), ts::curved_builtin(Space::Spherical),
        ts::curved_builtin(Space::Hyperbolic)}) {
    const std::vector<int> face{0, 1, 2};
    Eigen::MatrixXd chord2(3, 3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        chord2(i, j) = i == j ? 0.0
                              : squared_chord(config, face[static_cast<std::size_t>(i)],
                                              face[static_cast<std::size_t>(j)]);
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        const double grad = volume_gradient_edge(face, face[static_cast<std::size_t>(i)],
                                                 face[static_cast<std::size_t>(j)], config);
        const double fd = ts::fd_derivative(
            [&](double value) {
              Eigen::MatrixXd c = chord2;
              c(i, j) = value;
              c(j, i) = value;
              return squared_volume_from_chords(c);
            },
            chord2(i, j), 1e-4);
        CHECK(ts::rel_diff(grad, fd) < 1e-8);
      }
    }
  }
}

TEST_CASE("tangent projection and exponential map") {
  Rng rng(17);
  for (const Metric& m : {Metric::spherical(2), Metric::hyperbolic(2)}) {
    Eigen::VectorXd base = Eigen::VectorXd::Zero(3);
    base[0] = 1.0;
    if (m.space == Space::Spherical) {
      base.setZero();
      base[2] = 1.0;
    }
    for (int trial = 0; trial < 20; ++trial) {
      const Eigen::VectorXd w = rng.gaussian_vector(3);
      const Eigen::VectorXd t = tangent_projection(base, w, m);
      CHECK(std::abs(bilinear_dot(t, base, m)) < 1e-12);

      const double norm = std::sqrt(bilinear_dot(t, t, m));
      if (norm < 1e-8) continue;
      const double dist = 0.3 + rng.uniform();
      const Eigen::VectorXd moved = exponential_map(base, (dist / norm) * t, m);
      CHECK(bilinear_dot(moved, moved, m) ==
            doctest::Approx(m.space == Space::Spherical ? 1.0 : -1.0).epsilon(1e-10));
      CHECK(ts::geodesic_oracle(base, moved, m.space) == doctest::Approx(dist).epsilon(1e-10));
    }
  }
}

TEST_CASE("vertex angles: octant corners are right angles") {
  const PointConfiguration sph = ts::octant_plus();
  CHECK(vertex_angle(sph, 0, 1, 2) == doctest::Approx(M_PI_2).epsilon(1e-12));
  CHECK(vertex_angle(sph, 1, 0, 2) == doctest::Approx(M_PI_2).epsilon(1e-12));
  CHECK(vertex_angle(sph, 2, 0, 1) == doctest::Approx(M_PI_2).epsilon(1e-12));
}

TEST_CASE("vertex angles agree with the law-of-cosines oracle") {
  Rng rng(19);
  for (const Metric& m : {Metric::spherical(2), Metric::hyperbolic(2)}) {
    for (int trial = 0; trial < 25; ++trial) {
      const Eigen::MatrixXd pts = ts::random_curved_points(3, m, 1.0, rng);
      const PointConfiguration tri = PointConfiguration::make(m, pts);
      const double a = ts::geodesic_oracle(tri.point(1), tri.point(2), m.space);
      const double b = ts::geodesic_oracle(tri.point(0), tri.point(2), m.space);
      const double c = ts::geodesic_oracle(tri.point(0), tri.point(1), m.space);
      CHECK(vertex_angle(tri, 0, 1, 2) ==
            doctest::Approx(ts::angle_from_sides(a, b, c, m.space)).epsilon(1e-9));
    }
  }
}

TEST_SUITE_END();
