// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "lkn/certify.hpp"
#include "lkn/constants.hpp"
#include "lkn/extremal.hpp"
#include "lkn/geometry.hpp"
#include "lkn/numerics.hpp"
#include "lkn/operators.hpp"
#include "lkn/registry.hpp"

using namespace lkn;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check; keeps only the first few messages.
  void fail(const std::string& what) {
    if (pass || failures < 4) detail << (failures ? "; " : "") << what;
    pass = false;
    ++failures;
  }
  int failures = 0;
};

InequalityParams box_params(int d, double p, double h, int m) {
  return InequalityParams(p, h, ConvexBody::box(d), ConeSpec(d, m));
}

std::string label(int d, double p, double h, int m) {
  std::ostringstream s;
  s << "d=" << d << " p=" << p << " h=" << h << " m=" << m;
  return s.str();
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// 1. Closed-form kernel norm against radial quadrature of g_h^{p'}.
Outcome kernel_norm_oracle() {
  Outcome o;
  const auto t0 = Clock::now();
  double worst = 0.0;
  int cases = 0;
  for (int d = 1; d <= 3; ++d) {
    for (double p : {d + 0.5, 2.0 * d + 1.0, kInf}) {
      for (double h : {0.5, 1.0, 2.0}) {
        for (int m : {0, 1}) {
          const InequalityParams params = box_params(d, p, h, m);
          const double pc = params.p_conj();
          const QuadratureResult r = radial_integral([&](double t) { return kernel_g(params, t); }, params, pc,
                                                     static_cast<double>(d - 1));
          const double quad = std::pow(r.value, 1.0 / pc);
          const double e = rel(kernel_norm(params), quad);
          worst = std::max(worst, e);
          ++cases;
          if (e > 1e-8) o.fail(label(d, p, h, m) + " rel err " + std::to_string(e));
        }
      }
    }
  }
  const double elapsed = seconds_since(t0);
  if (elapsed >= 5.0) o.fail("runtime " + std::to_string(elapsed) + " s");
  o.detail << (o.pass ? "" : "; ") << cases << " cases, worst rel err " << worst << ", " << elapsed << " s";
  return o;
}

// 2. d = 1, p = inf on the whole line.
Outcome classical_nagy() {
  Outcome o;
  // Hand algebra: A(1,inf) = B(1,2) = 1/2, alpha = 1/2, a = (1/2)^{1/2} * 2,
  // mu = 2, so a mu^{-alpha/d} = 1.
  const double lead = constant_a(1, kInf) * std::pow(2.0, -0.5);
  if (std::abs(lead - 1.0) > 1e-14) o.fail("a(1,inf) mu^{-1/2} = " + std::to_string(lead));
  double worst = 0.0;
  for (double h : {0.5, 1.0, 2.0}) {
    const InequalityParams params = box_params(1, kInf, h, 0);
    const TestFunction f = extremal_f(params);
    const Certificate c = certify_nagy_multiplicative(f, params);
    worst = std::max(worst, std::abs(c.ratio - 1.0));
    if (std::abs(c.ratio - 1.0) > 1e-6) o.fail("h=" + std::to_string(h) + " ratio " + std::to_string(c.ratio));
    // ||f||_inf^2 = seminorm * ||f'||_inf for the triangle.
    const double sq = c.lhs * c.lhs;
    const double prod = *c.term("seminorm") * *c.term("grad_norm");
    if (rel(sq, prod) > 1e-6) o.fail("squared form off at h=" + std::to_string(h));
  }
  o.detail << (o.pass ? "" : "; ") << "a mu^{-1/2} = " << lead << ", worst |ratio-1| " << worst;
  return o;
}

const std::vector<std::array<double, 4>> kTriple{{1, kInf, 1.0, 0}, {2, 3.0, 1.0, 1}, {3, 4.0, 0.5, 2}};

// 3. Ostrowski sharpness.
Outcome ostrowski_sharpness() {
  Outcome o;
  double worst = 0.0;
  double slowest = 0.0;
  for (const auto& s : kTriple) {
    const int d = static_cast<int>(s[0]);
    const int m = static_cast<int>(s[3]);
    const auto t0 = Clock::now();
    const InequalityParams params = box_params(d, s[1], s[2], m);
    const Certificate c = certify_ostrowski(ostrowski_extremal(params), params);
    const double elapsed = seconds_since(t0);
    slowest = std::max(slowest, elapsed);
    worst = std::max(worst, std::abs(c.ratio - 1.0));
    if (std::abs(c.ratio - 1.0) > 1e-3) o.fail(label(d, s[1], s[2], m) + " ratio " + std::to_string(c.ratio));
    if (elapsed >= 30.0) o.fail(label(d, s[1], s[2], m) + " took " + std::to_string(elapsed) + " s");
  }
  o.detail << (o.pass ? "" : "; ") << "worst |ratio-1| " << worst << ", slowest " << slowest << " s";
  return o;
}

// 4. Nagy sharpness, both forms.
Outcome nagy_sharpness() {
  Outcome o;
  double worst = 0.0;
  double worst_balance = 0.0;
  for (const auto& s : kTriple) {
    const int d = static_cast<int>(s[0]);
    const int m = static_cast<int>(s[3]);
    const InequalityParams params = box_params(d, s[1], s[2], m);
    const TestFunction f = extremal_f(params);
    const Certificate add = certify_nagy_additive(f, params);
    const Certificate mult = certify_nagy_multiplicative(f, params);
    for (const Certificate* c : {&add, &mult}) {
      worst = std::max(worst, std::abs(c->ratio - 1.0));
      if (std::abs(c->ratio - 1.0) > 1e-3) {
        o.fail(to_string(c->inequality) + " " + label(d, s[1], s[2], m) + " ratio " + std::to_string(c->ratio));
      }
    }
    const double balance = rel(*mult.term("additive_rhs_at_optimal_h"), mult.rhs);
    worst_balance = std::max(worst_balance, balance);
    if (balance > 1e-8) o.fail("optimal_h check " + label(d, s[1], s[2], m) + " rel " + std::to_string(balance));
  }
  o.detail << (o.pass ? "" : "; ") << "worst |ratio-1| " << worst << ", worst optimal_h mismatch " << worst_balance;
  return o;
}

// 5. Charge certificates equal the function certificates.
Outcome charge_delegation() {
  Outcome o;
  double worst = 0.0;
  for (const auto& s : kTriple) {
    const int d = static_cast<int>(s[0]);
    const int m = static_cast<int>(s[3]);
    const InequalityParams params = box_params(d, s[1], s[2], m);
    const TestFunction f = extremal_f(params);
    const Certificate fa = certify_nagy_additive(f, params);
    const Certificate fm = certify_nagy_multiplicative(f, params);
    const Certificate ca = certify_charge({f}, params, Form::additive);
    const Certificate cm = certify_charge({f}, params, Form::multiplicative);
    for (const auto& [a, b] : {std::pair{&fa, &ca}, std::pair{&fm, &cm}}) {
      const double e = std::max({rel(b->lhs, a->lhs), rel(b->rhs, a->rhs), std::abs(b->ratio - a->ratio)});
      worst = std::max(worst, e);
      if (e > 1e-12) o.fail(to_string(b->inequality) + " " + label(d, s[1], s[2], m) + " differs by " + std::to_string(e));
    }
  }
  o.detail << (o.pass ? "" : "; ") << "worst difference " << worst;
  return o;
}

// 6. Mixed-derivative sharpness with F (m = 0) and G (m = 1).
Outcome mixed_sharpness() {
  Outcome o;
  double worst = 0.0;
  double worst_residual = 0.0;
  for (int d = 1; d <= 2; ++d) {
    for (double p : {d + 1.0, kInf}) {
      for (int m : {0, 1}) {
        const InequalityParams params = box_params(d, p, 1.0, m);
        const TestFunction F = m == 0 ? antiderivative_F(params) : antiderivative_G(params);
        if (m == 1) {
          const SplitPoint sp = split_point_a(params);
          worst_residual = std::max(worst_residual, std::abs(sp.residual));
          if (std::abs(sp.residual) > 1e-10) o.fail("split residual " + label(d, p, 1.0, m));
        }
        for (Form form : {Form::additive, Form::multiplicative}) {
          const Certificate c = certify_mixed(F, params, form);
          worst = std::max(worst, std::abs(c.ratio - 1.0));
          if (std::abs(c.ratio - 1.0) > 1e-3) {
            o.fail(to_string(c.inequality) + " " + label(d, p, 1.0, m) + " ratio " + std::to_string(c.ratio));
          }
        }
      }
    }
  }
  const double a = split_point_a(box_params(1, kInf, 1.0, 1)).a;
  const double a_err = std::abs(a - (1.0 - std::sqrt(2.0) / 2.0));
  if (a_err > 1e-9) o.fail("d=1 split point off by " + std::to_string(a_err));
  o.detail << (o.pass ? "" : "; ") << "worst |ratio-1| " << worst << ", worst split residual " << worst_residual
           << ", |a - (1 - sqrt(2)/2)| = " << a_err;
  return o;
}

// 7. Fubini identity and mixed difference = Steklov average of the mixed derivative.
Outcome fubini_steklov() {
  Outcome o;
  QuadratureOptions quad;
  quad.tol = 1e-11;
  quad.max_depth = 20;
  std::mt19937_64 rng(2024);
  double worst_poly = 0.0;
  for (int d = 1; d <= 3; ++d) {
    for (int m = 0; m <= d; ++m) {
      for (int power : {1, 2, 3}) {
        const InequalityParams params = box_params(d, d + 1.0, 0.6, m);
        const TestFunction F = monomial_product(params, power);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> x(d);
        for (int i = 0; i < d; ++i) x[i] = i < m ? std::abs(u(rng)) : u(rng);
        const FubiniCheck c = fubini_identity_check(F, params, x, quad);
        const double r = std::abs(c.residual);
        worst_poly = std::max(worst_poly, r);
        if (r > 1e-8) o.fail("polynomial " + label(d, d + 1.0, 0.6, m) + " residual " + std::to_string(r));
      }
    }
  }
  // f_{e,h} has kinks across the cubature cells; 1e-9 keeps 100 points cheap.
  quad.tol = 1e-9;
  double worst_F = 0.0;
  double worst_steklov = 0.0;
  int points = 0;
  for (int d = 1; d <= 2; ++d) {
    for (double p : {d + 1.0, kInf}) {
      for (int m : {0, 1}) {
        const InequalityParams built = box_params(d, p, 1.0, m);
        const TestFunction F = m == 0 ? antiderivative_F(built) : antiderivative_G(built);
        std::uniform_real_distribution<double> u(-1.2, 1.2);
        std::uniform_real_distribution<double> uh(0.2, 1.0);
        for (int k = 0; k < 13; ++k) {
          std::vector<double> x(d);
          for (int i = 0; i < d; ++i) x[i] = i < m ? std::abs(u(rng)) : u(rng);
          const InequalityParams params = built.with_h(uh(rng));
          if (k < 3) {
            const FubiniCheck c = fubini_identity_check(F, params, x, quad);
            worst_F = std::max(worst_F, std::abs(c.residual));
            if (std::abs(c.residual) > 1e-6) o.fail("F/G " + label(d, p, params.h(), m) + " residual");
          }
          if (points == 100) continue;
          ++points;
          const double lhs = mixed_difference(F, DifferenceScheme::for_params(params), x);
          const double rhs = steklov(*F.mixed_derivative, params, x, quad).value;
          const double e = std::abs(lhs - rhs);
          worst_steklov = std::max(worst_steklov, e);
          if (e > 1e-6) o.fail("Steklov " + label(d, p, params.h(), m) + " diff " + std::to_string(e));
        }
      }
    }
  }
  if (points != 100) o.fail("only " + std::to_string(points) + " Steklov points");
  o.detail << (o.pass ? "" : "; ") << "polynomial residual " << worst_poly << ", F/G residual " << worst_F << ", "
           << points << " Steklov points, worst diff " << worst_steklov;
  return o;
}

// 8. No violated verdicts on seeded registry functions.
Outcome fuzzing() {
  Outcome o;
  struct Setting {
    int d;
    double p;
    double h;
    int m;
  };
  std::vector<Setting> grid;
  for (int d = 1; d <= 3; ++d) {
    for (double p : {d + 1.0, kInf}) {
      for (double h : {0.5, 1.0}) grid.push_back({d, p, h, (d + static_cast<int>(h * 2)) % (d + 1)});
    }
  }
  int certificates = 0;
  int violated = 0;
  double worst_ratio = 0.0;
  const auto t0 = Clock::now();
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Setting& s = grid[seed % grid.size()];
    const InequalityParams params = box_params(s.d, s.p, s.h, s.m);
    const TestFunction f = random_registry_function(params, seed);
    std::vector<Certificate> certs;
    certs.push_back(certify_ostrowski(f, params));
    certs.push_back(certify_nagy_additive(f, params));
    certs.push_back(certify_nagy_multiplicative(f, params));
    certs.push_back(certify_charge({f}, params, Form::additive));
    certs.push_back(certify_mixed(f, params, Form::additive));
    certs.push_back(certify_mixed(f, params, Form::multiplicative));
    certs.push_back(certify_operator_bound(OperatorInstance::mixed, f, params));
    for (const Certificate& c : certs) {
      ++certificates;
      worst_ratio = std::max(worst_ratio, c.ratio);
      if (c.verdict == Verdict::violated) {
        ++violated;
        o.fail("seed " + std::to_string(seed) + " " + to_string(c.inequality) + " " + label(s.d, s.p, s.h, s.m) +
               " ratio " + std::to_string(c.ratio));
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << certificates << " certificates on 50 functions, " << violated
           << " violated, largest ratio " << worst_ratio << ", " << seconds_since(t0) << " s";
  return o;
}

// 9. Sector volumes.
Outcome volume_law() {
  Outcome o;
  for (int d = 1; d <= 4; ++d) {
    for (int m = 0; m <= d; ++m) {
      const double v = sector_volume(ConvexBody::box(d), ConeSpec(d, m));
      if (v != std::ldexp(1.0, d - m)) o.fail("box " + std::to_string(d) + "," + std::to_string(m));
    }
  }
  const double disc = sector_volume(ConvexBody::lq_ball(2, 2.0), ConeSpec(2, 1));
  if (std::abs(disc - std::numbers::pi / 2.0) > 1e-6) o.fail("half disc " + std::to_string(disc));
  o.detail << (o.pass ? "" : "; ") << "boxes exact for d <= 4, half disc error " << std::abs(disc - std::numbers::pi / 2);
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"kernel norm closed form vs radial quadrature", kernel_norm_oracle},
      {"classical Nagy recovery on the line", classical_nagy},
      {"Ostrowski sharpness on the extremal", ostrowski_sharpness},
      {"Nagy additive and multiplicative sharpness", nagy_sharpness},
      {"charge certificates match function certificates", charge_delegation},
      {"mixed-derivative sharpness with F and G", mixed_sharpness},
      {"Fubini and Steklov identities", fubini_steklov},
      {"validity fuzzing on registry functions", fuzzing},
      {"sector volume law", volume_law},
  };
  int failed = 0;
  const auto t0 = Clock::now();
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %zu: %s (%s)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                o.detail.str().c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("total %.1f s, %d of %zu criteria failed\n", seconds_since(t0), failed, criteria.size());
  return failed;
}
