#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "csreg/regularizers.hpp"
#include "test_helpers.hpp"

using namespace csreg;
using namespace testutil;

static const double kInf = std::numeric_limits<double>::infinity();

TEST_CASE("closed forms match hand-computed values") {
  DenseVector v10(2), v21(2), v1m1(2), v22(2);
  v10 << 1, 0;
  v21 << 2, 1;
  v1m1 << 1, -1;
  v22 << 2, 2;

  CHECK(eval_bin(v10) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval_bin(v21) == doctest::Approx(9.0).epsilon(1e-14));
  CHECK(eval_osb(v1m1) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(eval_osb(v21) == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(eval_ter(v21) == doctest::Approx(36.0).epsilon(1e-14));

  DenseMatrix swap(2, 2);
  swap << 0, 1, 1, 0;
  CHECK(eval_eig(swap, v10) == doctest::Approx(1.0).epsilon(1e-14));
  DenseVector ev(2);
  ev << 1, 1;
  CHECK(eval_eig(swap, ev) == doctest::Approx(0.0).epsilon(1e-14));

  DenseMatrix d12 = DenseMatrix::Zero(2, 2);
  d12(0, 0) = 1;
  d12(1, 1) = 2;
  CHECK(eval_om(d12) == doctest::Approx(9.0).epsilon(1e-14));

  EquispacedState s;
  s.levels = {DenseVector::Ones(1), DenseVector::Ones(1)};
  CHECK(eval_equ(s) == doctest::Approx(9.0).epsilon(1e-14));
  s.levels[1][0] = 2.0;
  CHECK(eval_equ(s) == doctest::Approx(0.0).epsilon(1e-14));
  DenseVector stacked(4);
  stacked << 1, -1, 2, -2;
  CHECK(eval_equ_stacked(stacked, 2) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(eval_bbin(v10) == doctest::Approx(0.25).epsilon(1e-14));
  double e1 = std::exp(-1.0);
  CHECK(eval_binexp(v10) == doctest::Approx((1.0 - e1) * (1.0 - e1)).epsilon(1e-14));
  CHECK(eval_nondiff_sq(v10) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval_nondiff_root(v10) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-14));
  CHECK(eval_fixed_scale(v22, 1.0) == doctest::Approx(18.0).epsilon(1e-14));
  CHECK(eval_fixed_scale(DenseVector::Ones(2), 1.0) == doctest::Approx(0.0).epsilon(1e-14));

  DenseMatrix row(1, 2);
  row << 1, 0;
  CHECK(eval_ns(row, v10) == doctest::Approx(1.0).epsilon(1e-14));
  DenseVector kern(2);
  kern << 0, 1;
  CHECK(eval_ns(row, kern) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pair recipe reproduces the closed forms and gradients") {
  RngStream rng(301, 0);
  DenseMatrix c = standard_normal_matrix(6, 6, rng);
  auto pairs_and_regs = [&]() {
    std::vector<std::pair<CsPairSpec, Regularizer>> out;
    out.emplace_back(bin_pair(), Regularizer::bin());
    out.emplace_back(osb_pair(), Regularizer::osb());
    out.emplace_back(ter_pair(), Regularizer::ter());
    out.emplace_back(eig_pair(c), Regularizer::eig(c));
    out.emplace_back(om_pair(3, 2), Regularizer::om(2));
    out.emplace_back(equ_pair(3, 2), Regularizer::equ(2));
    return out;
  }();
  for (const auto& [pair, reg] : pairs_and_regs) {
    for (int rep = 0; rep < 50; ++rep) {
      DenseVector x = standard_normal_vector(6, rng);
      double direct = value(reg, x);
      double generic = cs_value(pair, x);
      CHECK(std::abs(direct - generic) <= 1e-10 * std::max({1.0, std::abs(direct)}));
      DenseVector gd = grad_analytic(reg, x);
      DenseVector gg = cs_grad(pair, x);
      CHECK((gd - gg).norm() <= 1e-10 * std::max(1.0, gg.norm()));
    }
  }
}

TEST_CASE("analytic gradients agree with central finite differences") {
  RngStream rng(302, 0);
  DenseMatrix c = standard_normal_matrix(8, 8, rng);
  DenseMatrix cn = standard_normal_matrix(3, 8, rng);
  std::vector<Regularizer> regs = {
      Regularizer::bin(),         Regularizer::osb(),
      Regularizer::ter(),         Regularizer::eig(c),
      Regularizer::equ(2),        Regularizer::bbin(),
      Regularizer::binexp(),      Regularizer::fixed_scale(0.7),
      Regularizer::nullspace(cn), Regularizer::bin_beta(1.3),
  };
  for (const auto& reg : regs) {
    for (int rep = 0; rep < 20; ++rep) {
      DenseVector x = standard_normal_vector(8, rng);
      DenseVector fd = fd_gradient([&](const DenseVector& p) { return value(reg, p); }, x);
      CHECK(grad_rel_err(grad_analytic(reg, x), fd) < 1e-5);
    }
  }
  Regularizer om = Regularizer::om(4);
  for (int rep = 0; rep < 20; ++rep) {
    DenseVector x = standard_normal_vector(24, rng);  // vec of 6x4
    DenseVector fd = fd_gradient([&](const DenseVector& p) { return value(om, p); }, x);
    CHECK(grad_rel_err(grad_analytic(om, x), fd) < 1e-5);
  }
}

TEST_CASE("cs_grad handles a custom polynomial pair") {
  // g = [x1^2 + 2 x2, x1 x2, x2^2], h = [1, x1, x2]
  CsPairSpec pair;
  pair.g = [](const DenseVector& x) {
    DenseVector g(3);
    g << x[0] * x[0] + 2.0 * x[1], x[0] * x[1], x[1] * x[1];
    return g;
  };
  pair.h = [](const DenseVector& x) {
    DenseVector h(3);
    h << 1.0, x[0], x[1];
    return h;
  };
  pair.g_adjoint = [](const DenseVector& x, const DenseVector& v) {
    DenseVector out(2);
    out << 2.0 * x[0] * v[0] + x[1] * v[1], 2.0 * v[0] + x[0] * v[1] + 2.0 * x[1] * v[2];
    return out;
  };
  pair.h_adjoint = [](const DenseVector&, const DenseVector& v) {
    DenseVector out(2);
    out << v[1], v[2];
    return out;
  };
  RngStream rng(303, 0);
  for (int rep = 0; rep < 50; ++rep) {
    DenseVector x = standard_normal_vector(2, rng);
    DenseVector fd = fd_gradient([&](const DenseVector& p) { return cs_value(pair, p); }, x);
    CHECK(grad_rel_err(cs_grad(pair, x), fd) < 1e-5);
  }
}

TEST_CASE("cs_grad hand value for the binary pair") {
  DenseVector x(2);
  x << 1, 0;
  DenseVector g = cs_grad(bin_pair(), x);
  CHECK(g[0] == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(g[1] == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("closed_form_beta minimizes the residual") {
  DenseVector g(2), h(2);
  g << 2, 0;
  h << 1, 1;
  CHECK(closed_form_beta(g, h) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(closed_form_beta(g, DenseVector(DenseVector::Zero(2))), std::invalid_argument);

  RngStream rng(304, 0);
  for (int rep = 0; rep < 100; ++rep) {
    DenseVector gg = standard_normal_vector(6, rng);
    DenseVector hh = standard_normal_vector(6, rng);
    double beta = closed_form_beta(gg, hh);
    double base = (gg - beta * hh).squaredNorm();
    CHECK((gg - (beta + 1e-3) * hh).squaredNorm() >= base - 1e-12);
    CHECK((gg - (beta - 1e-3) * hh).squaredNorm() >= base - 1e-12);
  }
}

TEST_CASE("auto-scale identity links value to the best residual") {
  RngStream rng(305, 0);
  DenseMatrix c = standard_normal_matrix(6, 6, rng);
  std::vector<std::pair<CsPairSpec, Regularizer>> cases;
  cases.emplace_back(bin_pair(), Regularizer::bin());
  cases.emplace_back(osb_pair(), Regularizer::osb());
  cases.emplace_back(ter_pair(), Regularizer::ter());
  cases.emplace_back(eig_pair(c), Regularizer::eig(c));
  cases.emplace_back(om_pair(3, 2), Regularizer::om(2));
  for (const auto& [pair, reg] : cases) {
    for (int rep = 0; rep < 200; ++rep) {
      DenseVector x = standard_normal_vector(6, rng);
      DenseVector gv = pair.g(x);
      DenseVector hv = pair.h(x);
      double beta = closed_form_beta(gv, hv);
      double expected = hv.squaredNorm() * (gv - beta * hv).squaredNorm();
      double got = value(reg, x);
      CHECK(std::abs(got - expected) <= 1e-9 * std::max({1.0, got, expected}));
    }
  }
}

TEST_CASE("values are nonnegative up to cancellation error") {
  RngStream rng(306, 0);
  DenseMatrix c = standard_normal_matrix(8, 8, rng);
  DenseMatrix cn = standard_normal_matrix(3, 8, rng);
  std::vector<Regularizer> regs = {
      Regularizer::bin(),    Regularizer::osb(),    Regularizer::ter(),
      Regularizer::eig(c),   Regularizer::om(4),    Regularizer::equ(2),
      Regularizer::bbin(),   Regularizer::binexp(), Regularizer::nondiff_sq(),
      Regularizer::nondiff_root(), Regularizer::fixed_scale(1.1), Regularizer::nullspace(cn),
  };
  for (const auto& reg : regs) {
    for (int rep = 0; rep < 10000 / int(regs.size()); ++rep) {
      Eigen::Index n = reg.kind == RegKind::Om ? 24 : 8;
      DenseVector x = log_uniform(rng, 0.1, 10.0) * standard_normal_vector(n, rng);
      CHECK(value(reg, x) >= -member_threshold(x.norm()));
    }
  }
}

namespace {

DenseVector perturb(const DenseVector& x, RngStream& rng) {
  return x + 0.1 * standard_normal_vector(x.size(), rng);
}

}  // namespace

TEST_CASE("zero sets evaluate to zero and perturbations do not") {
  RngStream rng(307, 0);
  const Eigen::Index n = 8;
  DenseMatrix g = standard_normal_matrix(n, n, rng);
  DenseMatrix sym = 0.5 * (g + g.transpose());
  auto eig_pairs = eig_real(sym);
  DenseMatrix wide = standard_normal_matrix(3, n, rng);

  auto run_case = [&](const Regularizer& reg, const std::function<DenseVector()>& make) {
    for (int rep = 0; rep < 30; ++rep) {
      DenseVector member = make();
      CHECK(value(reg, member) <= member_threshold(member.norm()));
      DenseVector off = perturb(member, rng);
      CHECK(value(reg, off) > member_threshold(off.norm()));
    }
  };

  // quartic values: perturbation gaps grow like a^2, the threshold like a^8,
  // so member scales stay below the crossover (ter is degree 8 and keeps 10)
  run_case(Regularizer::bin(),
           [&] { return member_sym_binary(n, log_uniform(rng, 0.1, 5.0), rng); });
  run_case(Regularizer::osb(),
           [&] { return member_one_sided(n, log_uniform(rng, 0.1, 5.0), rng); });
  run_case(Regularizer::ter(),
           [&] { return member_ternary(n, log_uniform(rng, 0.1, 10.0), rng); });
  run_case(Regularizer::eig(sym), [&] {
    const auto& p = eig_pairs[rng.below(eig_pairs.size())];
    return DenseVector(log_uniform(rng, 0.1, 5.0) * random_sign(rng) * p.vector);
  });
  run_case(Regularizer::equ(2),
           [&] { return member_equ(n / 2, 2, log_uniform(rng, 0.1, 5.0), rng); });
  run_case(Regularizer::bbin(), [&] { return member_sym_binary(n, rng.uniform(0.3, 1.5), rng); });
  run_case(Regularizer::binexp(),
           [&] { return member_sym_binary(n, rng.uniform(0.3, 1.5), rng); });
  // low-degree growth: keep scales where the degree-8 threshold still separates
  run_case(Regularizer::nondiff_sq(),
           [&] { return member_sym_binary(n, log_uniform(rng, 0.1, 3.0), rng); });
  run_case(Regularizer::nondiff_root(),
           [&] { return member_sym_binary(n, log_uniform(rng, 0.1, 1.5), rng); });
  run_case(Regularizer::fixed_scale(1.3), [&] { return member_sym_binary(n, 1.3, rng); });
  run_case(Regularizer::nullspace(wide), [&] { return member_nullspace(wide, rng); });

  Regularizer om = Regularizer::om(4);
  for (int rep = 0; rep < 30; ++rep) {
    DenseMatrix member = member_orthogonal(6, 4, log_uniform(rng, 0.1, 5.0), rng);
    CHECK(value(om, member) <= member_threshold(member.norm()));
    DenseMatrix off = member + 0.1 * standard_normal_matrix(6, 4, rng);
    CHECK(value(om, off) > member_threshold(off.norm()));
  }
}

TEST_CASE("om value equals bin value of the singular values") {
  RngStream rng(308, 0);
  for (int rep = 0; rep < 30; ++rep) {
    DenseMatrix x = standard_normal_matrix(6, 4, rng);
    double direct = eval_om(x);
    double via_svd = eval_bin(singular_values(x));
    CHECK(std::abs(direct - via_svd) <= 1e-8 * std::max({1.0, direct, via_svd}));
  }
}

TEST_CASE("no spurious stationary points at random probes") {
  RngStream rng(309, 0);
  std::vector<Regularizer> regs = {Regularizer::bin(), Regularizer::osb(), Regularizer::ter(),
                                   Regularizer::om(4), Regularizer::equ(2)};
  for (const auto& reg : regs) {
    for (int rep = 0; rep < 2000; ++rep) {
      Eigen::Index n = reg.kind == RegKind::Om ? 24 : 8;
      DenseVector x = standard_normal_vector(n, rng);
      double v = value(reg, x);
      if (v <= member_threshold(x.norm())) continue;  // landed on the zero set
      CHECK(grad_analytic(reg, x).norm() > 1e-12 * (1.0 + std::pow(x.norm(), 8)));
    }
  }
}

TEST_CASE("holder value generalizes and collapses to the quadratic case") {
  RngStream rng(310, 0);
  CsPairSpec bin = bin_pair();
  DenseVector v10(2);
  v10 << 1, 0;
  CHECK(holder_value(bin, v10, 2, 2, 1) == doctest::Approx(std::sqrt(2.0) - 1.0).epsilon(1e-12));
  CHECK(holder_value(bin, v10, 1, kInf, 1) == doctest::Approx(0.0).epsilon(1e-12));

  for (int rep = 0; rep < 100; ++rep) {
    DenseVector x = standard_normal_vector(6, rng);
    CHECK(rel_gap(holder_value(bin, x, 2, 2, 2), cs_value(bin, x)) <= 1e-10);
    // Hölder's inequality keeps every variant nonnegative.
    CHECK(holder_value(bin, x, 1.5, 3.0, 1.0) >= -1e-12);
    CHECK(holder_value(bin, x, 1, kInf, 2.0) >= -1e-12);
    // members still evaluate to zero
    DenseVector m = member_sym_binary(6, log_uniform(rng, 0.5, 2.0), rng);
    CHECK(std::abs(holder_value(bin, m, 1.5, 3.0, 1.0)) <= 1e-9 * (1.0 + m.squaredNorm()));
  }
  CHECK_THROWS_AS(holder_value(bin, v10, 2, 3, 1), std::invalid_argument);
  CHECK_THROWS_AS(holder_value(bin, v10, 2, 2, 0), std::invalid_argument);
}

TEST_CASE("scale-invariant variant is invariant and anchored at zero") {
  RngStream rng(311, 0);
  CsPairSpec bin = bin_pair();
  DenseVector v10(2);
  v10 << 1, 0;
  CHECK(scale_invariant_value(bin, v10, 2, 2, 2, 0.0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int rep = 0; rep < 100; ++rep) {
    DenseVector x = standard_normal_vector(6, rng);
    double base = scale_invariant_value(bin, x, 2, 2, 2, 1e-3);
    CHECK(base >= -1e-12);
    double c = log_uniform(rng, 0.2, 5.0);
    double scaled = scale_invariant_value(bin, DenseVector(c * x), 2, 2, 2, 0.0);
    double unscaled = scale_invariant_value(bin, x, 2, 2, 2, 0.0);
    CHECK(rel_gap(scaled, unscaled) <= 1e-9);
  }
  DenseVector zero = DenseVector::Zero(3);
  CHECK_THROWS_AS(scale_invariant_value(osb_pair(), zero, 2, 2, 2, 0.0), std::domain_error);
}

TEST_CASE("subgradient access is gated") {
  DenseVector x(3);
  x << 1, -2, 0;
  CHECK_THROWS_AS(grad_analytic(Regularizer::nondiff_sq(), x), std::invalid_argument);
  CHECK_THROWS_AS(grad_analytic(Regularizer::nondiff_root(), x), std::invalid_argument);
  DenseVector g = grad_analytic(Regularizer::nondiff_sq(), x, true);
  // entry at x_i = 0 must use sign(0) = 0
  CHECK(g[2] == doctest::Approx(0.0).epsilon(1e-14));
  DenseVector gr = grad_analytic(Regularizer::nondiff_root(), DenseVector(DenseVector::Zero(3)),
                                 true);
  CHECK(gr.norm() == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("equispaced state round-trips through stacking") {
  RngStream rng(312, 0);
  EquispacedState s;
  s.levels = {standard_normal_vector(4, rng), standard_normal_vector(4, rng),
              standard_normal_vector(4, rng)};
  DenseVector v = s.stacked();
  EquispacedState back = EquispacedState::from_stacked(v, 3);
  REQUIRE(back.levels.size() == 3);
  for (int b = 0; b < 3; ++b) CHECK((back.levels[b] - s.levels[b]).norm() == 0.0);
  CHECK(eval_equ(s) == doctest::Approx(eval_equ_stacked(v, 3)).epsilon(1e-14));
  CHECK_THROWS_AS(EquispacedState::from_stacked(DenseVector::Zero(5), 2), std::invalid_argument);
}

TEST_CASE("landscape grid covers the square and flags members") {
  auto rows = landscape_grid(Regularizer::bin(), -2.0, 2.0, 3);
  REQUIRE(rows.size() == 9);
  CHECK(rows.front().x1 == -2.0);
  CHECK(rows.front().x2 == -2.0);
  CHECK(rows.back().x1 == 2.0);
  CHECK(rows.back().x2 == 2.0);
  for (const auto& r : rows) {
    CHECK(r.log_value == doctest::Approx(std::log10(r.value + 1e-12)).epsilon(1e-12));
    if (std::abs(r.x1) == 2.0 && std::abs(r.x2) == 2.0) {
      CHECK(r.value == doctest::Approx(0.0).epsilon(1e-14));
    }
  }

  // dense scan: the minimum must sit on the one-sided binary pattern set
  auto dense = landscape_grid(Regularizer::osb(), -2.0, 2.0, 401);
  REQUIRE(dense.size() == 401u * 401u);
  const LandscapeRow* best = &dense.front();
  for (const auto& r : dense) {
    if (r.value < best->value) best = &r;
  }
  CHECK(best->value <= 1e-9);
  bool on_pattern = std::abs(best->x1) < 1e-9 || std::abs(best->x2) < 1e-9 ||
                    std::abs(best->x1 - best->x2) < 1e-9;
  CHECK(on_pattern);

  std::ostringstream csv;
  write_landscape_csv(csv, rows);
  CHECK(csv.str().rfind("x1,x2,value,log_value\n", 0) == 0);
}

TEST_CASE("dimension preconditions are enforced") {
  DenseVector x = DenseVector::Ones(5);
  CHECK_THROWS_AS(value(Regularizer::om(2), x), std::invalid_argument);
  CHECK_THROWS_AS(value(Regularizer::equ(2), x), std::invalid_argument);
  CHECK_THROWS_AS(value(Regularizer::bin(), DenseMatrix(DenseMatrix::Ones(2, 2))),
                  std::invalid_argument);
}
