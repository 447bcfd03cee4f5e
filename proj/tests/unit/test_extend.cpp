#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "fixtures.hpp"
#include "sobtrace/errors.hpp"
#include "sobtrace/extend_lmp.hpp"
#include "sobtrace/extend_wmp.hpp"
#include "sobtrace/functionals.hpp"
#include "sobtrace/whitfield.hpp"

using namespace sobtrace;
using fixture::rel_close;

namespace {

std::vector<double> v(std::initializer_list<double> x) { return x; }

PiecewiseExtension lmp(const SampleSet& d, int m) { return assemble_extension(build_field(d, m)); }

SampleSet transformed(const SampleSet& d, double scale, double shift, double c) {
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < d.size(); ++i) {
    xs.push_back(scale * d.x(i) + shift);
    ys.push_back(c * d.y(i));
  }
  return SampleSet(xs, ys);
}

}  // namespace

TEST_CASE("simplex data extends by the Lagrange polynomial") {
  const PiecewiseExtension f = lmp(SampleSet({0, 1, 2}, {0, 1, 4}), 2);
  for (double x : {0.0, 0.5, 1.0, 1.5, 2.0}) CHECK(extension_eval(f, x, 0) == doctest::Approx(x * x));
  // Tangent lines beyond the hull.
  CHECK(extension_eval(f, -3.0, 0) == doctest::Approx(0.0));
  CHECK(extension_eval(f, 4.0, 0) == doctest::Approx(12.0));
  CHECK(smoothness_report(f) <= 1e-15);
  CHECK(extension_eval(f, 1.5, 1) == doctest::Approx(3.0));
  CHECK(extension_eval(f, 0.0, 0) == 0.0);
  CHECK(extension_eval(f, 9.0, 2) == 0.0);
  CHECK(extension_eval(f, 1.0, 4) == 0.0);
  CHECK_THROWS_AS(extension_eval(f, 1.0, -1), Error);
  CHECK(lmp_seminorm(f, kInf) == doctest::Approx(2.0));
}

TEST_CASE("lmp extension examples") {
  const PiecewiseExtension hat = lmp(SampleSet({0, 1}, {0, 1}), 1);
  CHECK(lmp_seminorm(hat, 2.0) == doctest::Approx(1.0));
  CHECK(extension_eval(hat, -5.0, 0) == 0.0);
  CHECK(extension_eval(hat, 5.0, 0) == 1.0);
  CHECK(extension_eval(hat, 0.25, 0) == doctest::Approx(0.25));
  CHECK(smoothness_report(hat) == 0.0);

  // m = 1: piecewise-linear interpolant, constant tails.
  const SampleSet d({-1, 0.5, 2, 4}, {3, -1, 0.5, 2});
  const PiecewiseExtension pl = lmp(d, 1);
  CHECK(extension_eval(pl, 1.25, 0) == doctest::Approx(-0.25));
  CHECK(extension_eval(pl, -9, 0) == 3.0);
  CHECK(extension_eval(pl, 9, 1) == 0.0);
  CHECK(smoothness_report(pl) == 0.0);

  // Degree m-1 data: F = q, seminorm 0.
  const Poly q(0.0, {1.0, -0.5, 0.25});
  std::vector<double> xs{-2, -0.5, 1, 1.5, 3};
  std::vector<double> ys;
  for (double x : xs) ys.push_back(q(x));
  const PiecewiseExtension fq = lmp(SampleSet(xs, ys), 3);
  CHECK(lmp_seminorm(fq, 2.0) < 1e-9);
  CHECK(lmp_seminorm(fq, kInf) < 1e-9);
  for (double x : {-4.0, 0.0, 2.2, 6.0}) CHECK(extension_eval(fq, x, 0) == doctest::Approx(q(x)));

  CHECK_THROWS_AS(lmp_seminorm(fq, 1.0), Error);
}

TEST_CASE("smoothness report flags a corrupted gap") {
  std::mt19937_64 rng(41);
  PiecewiseExtension f = lmp(fixture::sample(rng, 8), 3);
  CHECK(smoothness_report(f) <= 1e-9);
  f.gap_polys[2].coeffs[1] += 1e-4;
  CHECK(smoothness_report(f) > 1e-9);
}

TEST_CASE("random lmp extensions: interpolation, smoothness, structure, idempotence") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 1 + trial % 4;
    const SampleSet d = fixture::sample(rng, static_cast<std::size_t>(m) + 1 + trial % 12);
    const PiecewiseExtension f = lmp(d, m);
    double scale = 1.0;
    for (double y : d.ys()) scale = std::max(scale, std::abs(y));
    for (std::size_t i = 0; i < d.size(); ++i) {
      CHECK(std::abs(extension_eval(f, d.x(i), 0) - d.y(i)) <= 1e-12 * scale);
    }
    CHECK(smoothness_report(f) <= 1e-9);
    for (const Poly& g : f.gap_polys) CHECK(g.degree() <= 2 * m - 1);
    CHECK(f.left_tail.degree() <= m - 1);

    // Re-extending F restricted to E gives the same pieces.
    std::vector<double> again;
    for (std::size_t i = 0; i < d.size(); ++i) again.push_back(extension_eval(f, d.x(i), 0));
    const PiecewiseExtension g = lmp(SampleSet({d.xs().begin(), d.xs().end()}, again), m);
    for (std::size_t j = 0; j < f.gap_polys.size(); ++j) {
      const double mid = 0.5 * (d.x(j) + d.x(j + 1));
      CHECK(rel_close(g.gap_polys[j](mid), f.gap_polys[j](mid), 1e-10));
    }
  }
}

TEST_CASE("necessity constant and ratio invariance") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 90; ++trial) {
    const int m = 1 + trial % 3;
    const double p = std::array{1.5, 2.0, 4.0}[trial % 3];
    const SampleSet d = fixture::sample(rng, static_cast<std::size_t>(m) + 2 + trial % 7);
    const double n = n_variational_exact(d, m, p);
    const double f = lmp_seminorm(lmp(d, m), p);
    CHECK(n <= 2.0 * f * (1 + 1e-12));
    const double ratio = f / n;
    const SampleSet t = transformed(d, 2.5, -3.75, -1.7);
    const double rt = lmp_seminorm(lmp(t, m), p) / n_variational_exact(t, m, p);
    CHECK(rel_close(ratio, rt, 1e-6));
  }
}

TEST_CASE("finite-family Riesz sums are monitored") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 3;
    const double p = 2.0;
    const SampleSet d = fixture::sample(rng, 8);
    const PiecewiseExtension f = lmp(d, m);
    const double norm = lmp_seminorm(f, p);
    if (norm == 0.0) continue;
    std::vector<double> cuts;
    for (int i = 0; i < 10; ++i) cuts.push_back(d.x(0) - 1 + u(rng) * (d.span_length() + 2));
    std::sort(cuts.begin(), cuts.end());
    double s = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); i += 2) {
      const double du = extension_eval(f, cuts[i + 1], m - 1) - extension_eval(f, cuts[i], m - 1);
      s += std::pow(std::abs(du), p) / std::pow(cuts[i + 1] - cuts[i], p - 1);
    }
    // Hoelder: this never exceeds ||F^{(m)}||_p^p.
    CHECK(s <= std::pow(norm, p) * (1 + 1e-9));
    worst = std::max(worst, s / std::pow(norm, p));
  }
  MESSAGE("max Riesz sum / ||F||^p = " << worst);
}

TEST_CASE("grid construction") {
  const AugmentedSet g = build_grid(SampleSet({0, 10}, {1, 1}), 1);
  std::vector<double> inner;
  for (double x : g.grid) {
    if (x > 0 && x < 10) inner.push_back(x);
  }
  CHECK(inner == v({2, 4, 6, 8}));
  const AugmentedSet none = build_grid(SampleSet({0, 4}, {1, 1}), 1);
  CHECK(std::none_of(none.grid.begin(), none.grid.end(), [](double x) { return x > 0 && x < 4; }));
  const AugmentedSet right = build_grid(SampleSet({3, 7}, {1, 1}), 1);
  std::vector<double> tail;
  for (double x : right.grid) {
    if (x > 7) tail.push_back(x);
  }
  CHECK(tail == v({9, 11, 13}));
  CHECK(right.truncation == 3);

  std::mt19937_64 rng(45);
  cli::InstanceShape shape;
  shape.long_gap_prob = 0.4;
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 1 + trial % 4;
    const SampleSet d = cli::random_instance(rng, 1 + trial % 10, shape);
    const AugmentedSet a = build_grid(d, m);
    CHECK(std::is_sorted(a.grid.begin(), a.grid.end()));
    for (double x : a.grid) {
      double dist = 1e300;
      for (double y : d.xs()) dist = std::min(dist, std::abs(x - y));
      CHECK(dist >= 2.0 - 1e-12);
    }
    for (std::size_t j = 0; j + 1 < d.size(); ++j) {
      std::vector<double> pts{d.x(j)};
      for (double x : a.grid) {
        if (x > d.x(j) && x < d.x(j + 1)) pts.push_back(x);
      }
      pts.push_back(d.x(j + 1));
      if (d.x(j + 1) - d.x(j) <= 4.0) {
        CHECK(pts.size() == 2);
        continue;
      }
      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        CHECK(pts[k + 1] - pts[k] >= 2.0 - 1e-12);
        CHECK(pts[k + 1] - pts[k] <= 3.0 + 1e-12);
      }
    }
    // Every point of the sampling window is within 2 of E u G, or lies past
    // the outermost retained grid point where F vanishes.
    const SampleSet merged = a.merged();
    const double delta = support_bound(m);
    for (double x = d.x(0) - delta; x <= d.x(d.size() - 1) + delta; x += 0.1) {
      if (x < merged.x(0) || x > merged.x(merged.size() - 1)) continue;
      double dist = 1e300;
      for (double y : merged.xs()) dist = std::min(dist, std::abs(x - y));
      CHECK(dist <= 2.0 + 1e-12);
    }
  }
}

TEST_CASE("small-set augmentation") {
  const SampleSet one = augment_small_set(SampleSet({0}, {5}), 2);
  CHECK(std::vector<double>(one.xs().begin(), one.xs().end()) == v({0, 2, 4}));
  CHECK(std::vector<double>(one.ys().begin(), one.ys().end()) == v({5, 0, 0}));
  const SampleSet two = augment_small_set(SampleSet({0, 1}, {3, 4}), 2);
  CHECK(std::vector<double>(two.xs().begin(), two.xs().end()) == v({0, 1, 3}));
  CHECK(std::vector<double>(two.ys().begin(), two.ys().end()) == v({3, 4, 0}));
  try {
    augment_small_set(SampleSet({0, 1, 2}, {1, 1, 1}), 2);
    FAIL("expected NotApplicable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotApplicable);
  }
}

TEST_CASE("wmp extension examples") {
  const PiecewiseExtension f = wmp_extend(SampleSet({0, 1}, {0, 1}), 1, 2.0);
  for (double x : {-4.0, -10.0, 5.0, 20.0}) CHECK(extension_eval(f, x, 0) == 0.0);
  CHECK(extension_eval(f, 1.0, 0) == 1.0);
  CHECK(support_radius(f, SampleSet({0, 1}, {0, 1})) <= 9.0);
  const double w = wmp_norm(f, 2.0);
  CHECK(w >= lmp_seminorm(f, 2.0));
  CHECK(rel_close(wmp_norm(wmp_extend(SampleSet({0, 1}, {0, -3}), 1, 2.0), 2.0), 3 * w, 1e-12));

  const SampleSet zero({0, 3, 4}, {0, 0, 0});
  const PiecewiseExtension z = wmp_extend(zero, 2, 2.0);
  for (const Poly& g : z.gap_polys) CHECK(g.is_zero());
  CHECK(wmp_norm(z, 2.0) == 0.0);
  CHECK(support_radius(z, zero) == 0.0);

  const SampleSet three({0, 1, 2}, {1.5, -2, 0.25});
  const WmpExtension detail = wmp_extend_detailed(three, 2, 2.0);
  CHECK(detail.zero_jets_checked == 2);
  for (std::size_t i = 0; i < 3; ++i) CHECK(extension_eval(detail.extension, three.x(i), 0) == three.y(i));
  CHECK(support_radius(detail.extension, three) <= 12.0);

  CHECK_THROWS_AS(wmp_extend(three, 2, kInf), Error);
  try {
    wmp_norm(lmp(three, 2), 2.0);
    FAIL("expected NonCompactSupport");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonCompactSupport);
  }
}

TEST_CASE("random wmp extensions: support, interpolation, linearity, small sets") {
  std::mt19937_64 rng(46);
  cli::InstanceShape shape;
  shape.long_gap_prob = 0.3;
  std::normal_distribution<double> g(0.0, 1.0);
  for (int trial = 0; trial < 150; ++trial) {
    const int m = 1 + trial % 3;
    const SampleSet d = cli::random_instance(rng, 1 + trial % 9, shape);
    const PiecewiseExtension f = wmp_extend(d, m, 2.0);
    CHECK(support_radius(f, d) <= support_bound(m));
    CHECK(smoothness_report(f) <= 1e-9);
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(extension_eval(f, d.x(i), 0) == d.y(i));

    // Superposition, piece by piece.
    const double alpha = g(rng);
    const double beta = g(rng);
    std::vector<double> other;
    std::vector<double> combo;
    for (std::size_t i = 0; i < d.size(); ++i) {
      other.push_back(g(rng));
      combo.push_back(alpha * d.y(i) + beta * other.back());
    }
    const std::vector<double> xs(d.xs().begin(), d.xs().end());
    const PiecewiseExtension fo = wmp_extend(SampleSet(xs, other), m, 2.0);
    const PiecewiseExtension fc = wmp_extend(SampleSet(xs, combo), m, 2.0);
    REQUIRE(fc.gap_polys.size() == f.gap_polys.size());
    for (std::size_t j = 0; j < f.gap_polys.size(); ++j) {
      const double a = f.breaks[j];
      const double b = f.breaks[j + 1];
      for (int k = 0; k <= m; ++k) {
        const double scale = std::abs(alpha) * fixture::derivative_scale(f.gap_polys[j], a, b, k) +
                             std::abs(beta) * fixture::derivative_scale(fo.gap_polys[j], a, b, k);
        for (double t : {0.0, 0.3, 0.7}) {
          const double x = a + t * (b - a);
          const double lhs = fc.gap_polys[j].derivative_at(x, k);
          const double rhs = alpha * f.gap_polys[j].derivative_at(x, k) + beta * fo.gap_polys[j].derivative_at(x, k);
          CHECK(std::abs(lhs - rhs) <= 1e-9 * scale);
        }
      }
    }

    if (d.size() <= static_cast<std::size_t>(m)) {
      const double norm = wmp_norm(f, 2.0);
      for (std::size_t k = 0; k < d.size(); ++k) {
        for (std::size_t i = 0; i + k < d.size(); ++i) {
          const double dd = divided_difference(d.xs().subspan(i, k + 1), d.ys().subspan(i, k + 1));
          CHECK(std::abs(dd) <= 4.0 * norm);
        }
      }
    }
  }
}
