// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Seeds are fixed so runs are reproducible.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "waring/decomposer.hpp"
#include "waring/json_io.hpp"

using namespace waring;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void criterion(int number, const std::string& title, double limit_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    auto start = Clock::now();
    bool ok = false;
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(Clock::now() - start).count();
    if (limit_seconds > 0 && secs > limit_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("time limit exceeded");
    }
    std::ostringstream line;
    line << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << number << ": " << title << " ("
         << secs << "s)";
    if (!ok && !detail.empty()) line << " -- " << detail;
    std::cout << line.str() << std::endl;
    if (!ok) ++g_failures;
}

HermitianForm random_pd_form(const Field& f, std::mt19937_64& rng, int n, long coord,
                             long entry_cap) {
    std::uniform_int_distribution<long> d(-coord, coord);
    while (true) {
        MatE r(f, n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                r.at(i, j) = f.is_rational() ? FieldElement(Rational(d(rng)))
                                             : FieldElement(Rational(d(rng)), Rational(d(rng)));
        MatE gram = r.conj_transpose() * r;
        bool small = true;
        for (int i = 0; i < n && small; ++i)
            for (int j = 0; j < n; ++j)
                if (f.norm(gram.at(i, j)) > entry_cap * entry_cap) { small = false; break; }
        if (!small) continue;
        if (is_positive_definite(gram)) return HermitianForm(f, gram);
    }
}

HermitianForm e6_form() {
    Field f = Field::rationals();
    MatE m(f, 6, 6);
    for (int i = 0; i < 6; ++i) m.at(i, i) = FieldElement(Rational(2));
    auto edge = [&](int a, int b) {
        m.at(a - 1, b - 1) = FieldElement(Rational(-1));
        m.at(b - 1, a - 1) = FieldElement(Rational(-1));
    };
    edge(1, 3); edge(3, 4); edge(4, 5); edge(5, 6); edge(2, 4);
    return HermitianForm(f, m);
}

std::vector<AlgebraicBound> convolution_series(const Field& f, int terms) {
    Rational bsq = f.beta_sq();
    AlgebraicBound beta(0, 1, bsq);
    std::vector<AlgebraicBound> coeff;
    coeff.push_back(AlgebraicBound(1, 0, bsq));
    for (int m = 0; m < terms; ++m) {
        AlgebraicBound acc(0, 0, bsq);
        for (int j = 0; j <= m; ++j) acc = acc + beta.scaled(Rational(j + 1)) * coeff[m - j];
        coeff.push_back(acc.scaled(Rational(1, m + 1)));
    }
    return coeff;
}

}  // namespace

int main() {
    std::cout << "acceptance suite (seeded, exact arithmetic)" << std::endl;

    criterion(1, "200 random pd integral forms over Z decompose to verified representations", 300,
              [](std::string& detail) {
                  std::mt19937_64 rng(0xACCE01);
                  Field f = Field::rationals();
                  BoundsProfile profile = BoundsProfile::certify(f, 64);
                  DecomposeCaps caps;
                  caps.fallback.node_cap = 20000000;
                  for (int trial = 0; trial < 200; ++trial) {
                      int n = 1 + trial % 4;
                      HermitianForm form = random_pd_form(f, rng, n, 2, 10);
                      DecomposeOutcome out = decompose(form, profile, caps);
                      auto* s = std::get_if<DecomposeSuccess>(&out);
                      if (!s) {
                          detail = "no representation at trial " + std::to_string(trial);
                          return false;
                      }
                      if (!verify(form, s->rep)) {
                          detail = "verification failed at trial " + std::to_string(trial);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(2, "E6 Cartan form draws a non-representability certificate", 60,
              [](std::string& detail) {
                  RefuteOutcome out = prove_not_representable(e6_form());
                  if (out.kind != RefuteOutcome::Kind::certificate) {
                      detail = "no certificate";
                      return false;
                  }
                  return out.certificate->trace == 12;
              });

    criterion(3, "500 random psd binary forms over Z are sums of at most 5 squares", 600,
              [](std::string& detail) {
                  std::mt19937_64 rng(0xACCE03);
                  std::uniform_int_distribution<long> d(-50, 50);
                  std::uniform_int_distribution<long> diag(0, 50);
                  Field f = Field::rationals();
                  int done = 0;
                  while (done < 500) {
                      MatE m(f, 2, 2);
                      m.at(0, 0) = FieldElement(Rational(diag(rng)));
                      m.at(1, 1) = FieldElement(Rational(diag(rng)));
                      long b = d(rng);
                      m.at(0, 1) = FieldElement(Rational(b));
                      m.at(1, 0) = FieldElement(Rational(b));
                      if (!is_positive_semidefinite(m)) continue;
                      ++done;
                      SearchBudget budget;
                      budget.g_max = 5;
                      budget.node_cap = 50000000;
                      SearchResult r = search_representation(HermitianForm(f, m), budget);
                      if (!r.rep) {
                          detail = "no 5-square representation at sample " + std::to_string(done);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(4, "1000 random unipotent factors balance within the series bounds", 300,
              [](std::string& detail) {
                  std::mt19937_64 rng(0xACCE04);
                  std::uniform_int_distribution<long> num(-100, 100);
                  std::uniform_int_distribution<long> den(1, 100);
                  for (const Field& f : {Field::rationals(), Field::imaginary_quadratic(1)}) {
                      FieldBounds fb(f);
                      for (int trial = 0; trial < 500; ++trial) {
                          int n = 2 + static_cast<int>(rng() % 7);
                          MatE x = MatE::identity(f, n);
                          for (int i = 0; i < n; ++i)
                              for (int j = i + 1; j < n; ++j) {
                                  Rational a(num(rng), den(rng));
                                  a.canonicalize();
                                  if (f.is_rational()) {
                                      x.at(i, j) = FieldElement(a);
                                  } else {
                                      Rational b(num(rng), den(rng));
                                      b.canonicalize();
                                      x.at(i, j) = FieldElement(a, b);
                                  }
                              }
                          Balancing bal = balance(x);
                          MatE xy = x * bal.Y;
                          MatE inv = xy.inverse();
                          for (int i = 0; i < n; ++i)
                              for (int j = i + 1; j < n; ++j) {
                                  AlgebraicBound c = fb.maclaurin_c(j - i);
                                  AlgebraicBound csq = c * c;
                                  if (AlgebraicBound(f.norm(xy.at(i, j)), 0, f.beta_sq()) > csq ||
                                      AlgebraicBound(f.norm(inv.at(i, j)), 0, f.beta_sq()) > csq) {
                                      detail = "entry bound failed in " + f.name();
                                      return false;
                                  }
                              }
                      }
                  }
                  return true;
              });

    criterion(5, "200 weak reductions satisfy the diagonal ratio bounds", 600,
              [](std::string& detail) {
                  std::mt19937_64 rng(0xACCE05);
                  for (const Field& f : {Field::rationals(), Field::imaginary_quadratic(1)}) {
                      FieldBounds fb(f);
                      for (int trial = 0; trial < 100; ++trial) {
                          int n = 2 + static_cast<int>(rng() % 4);
                          HermitianForm form = random_pd_form(f, rng, n, 2, 40);
                          WeakReduction w = weak_reduce(form);
                          for (int i = 0; i < n; ++i)
                              for (int j = i + 1; j < n; ++j)
                                  if (w.H[i] / w.H[j] > fb.alpha_upper(j - i)) {
                                      detail = "ratio bound failed in " + f.name();
                                      return false;
                                  }
                      }
                  }
                  return true;
              });

    criterion(6, "threshold-scale forms decompose through the pipeline (n = 2, 3)", 120,
              [](std::string& detail) {
                  Field f = Field::rationals();
                  BoundsProfile p = BoundsProfile::certify(f, 64);
                  for (int n : {2, 3}) {
                      auto start = Clock::now();
                      Int m = ceil_rat(p.threshold_G(n)) + 1;
                      MatE g(f, n, n);
                      for (int i = 0; i < n; ++i) g.at(i, i) = FieldElement(Rational(m));
                      g.at(0, 1) = f.one();
                      g.at(1, 0) = f.one();
                      HermitianForm form(f, g);
                      DecomposeOutcome out = decompose(form, p);
                      auto* s = std::get_if<DecomposeSuccess>(&out);
                      if (!s) {
                          detail = "pipeline failed at n=" + std::to_string(n);
                          return false;
                      }
                      if (s->trace.path != "pipeline") {
                          detail = "unexpected path " + s->trace.path;
                          return false;
                      }
                      if (s->rep.g() > 6 * n * n) {
                          detail = "row count above the constructive bound";
                          return false;
                      }
                      if (!verify(form, s->rep)) {
                          detail = "verification failed";
                          return false;
                      }
                      double secs = std::chrono::duration<double>(Clock::now() - start).count();
                      if (secs > 60) {
                          detail = "single run exceeded 60s";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(7, "pair pattern identity, exhaustive over the window, all nine fields", 60,
              [](std::string& detail) {
                  for (int ell : Field::supported_ells()) {
                      Field f = Field::imaginary_quadratic(ell);
                      if (f.sigma() > 2) {
                          detail = "configured sigma exceeds 2";
                          return false;
                      }
                      long window = (1L << (f.sigma() + 1)) - 1;
                      for (long a = -window; a <= window; ++a)
                          for (long b = -window; b <= window; ++b) {
                              PairPattern p = two_by_two_pattern(f, RingElement(Int(a), Int(b)));
                              // the TT* identity is asserted inside; check shape
                              if (p.cols.cols() != std::abs(a) + std::abs(b)) {
                                  detail = "column count mismatch";
                                  return false;
                              }
                          }
                  }
                  return true;
              });

    criterion(8, "series coefficients match the convolution oracle; constants certify at 200", 300,
              [](std::string& detail) {
                  std::vector<Field> fields = {Field::rationals()};
                  for (int ell : Field::supported_ells())
                      fields.push_back(Field::imaginary_quadratic(ell));
                  for (const Field& f : fields) {
                      FieldBounds fb(f);
                      auto oracle = convolution_series(f, 64);
                      for (int m = 0; m <= 64; ++m)
                          if (!(fb.maclaurin_c(m) == oracle[m])) {
                              detail = "coefficient mismatch in " + f.name();
                              return false;
                          }
                      BoundsProfile p = BoundsProfile::certify(f, 200);
                      Rational d1sq = p.d1() * p.d1(), d2sq = p.d2() * p.d2();
                      Rational c3 = Rational(144) * f.beta_sq() * d1sq * d1sq * d2sq * d2sq * d2sq;
                      if (p.d3() < c3) {
                          detail = "D3 fails the max expression in " + f.name();
                          return false;
                      }
                  }
                  return true;
              });

    criterion(9, "200 perturbed identities with small off-diagonals are psd", 120,
              [](std::string& detail) {
                  std::mt19937_64 rng(0xACCE09);
                  std::uniform_int_distribution<long> d(-20, 20);
                  std::vector<Field> fields = {Field::rationals(), Field::imaginary_quadratic(1),
                                               Field::imaginary_quadratic(7)};
                  for (int trial = 0; trial < 200; ++trial) {
                      const Field& f = fields[trial % fields.size()];
                      int n = 2 + static_cast<int>(rng() % 9);
                      // |omega| <= sqrt(N(omega)) + 1, so a denominator of
                      // 21*(1+|w|)*n keeps each entry norm at most 1/n^2
                      long wceil = 1;
                      while (Int(wceil * wceil) < f.omega_norm()) ++wceil;
                      Rational scale = Rational(1, 21L * (1 + wceil) * n);
                      MatE s(f, n, n);
                      for (int i = 0; i < n; ++i) {
                          s.at(i, i) = FieldElement(Rational(d(rng)) * scale);
                          for (int j = i + 1; j < n; ++j) {
                              FieldElement e =
                                  f.is_rational()
                                      ? FieldElement(Rational(d(rng)) * scale)
                                      : FieldElement(Rational(d(rng)) * scale,
                                                     Rational(d(rng)) * scale);
                              s.at(i, j) = e;
                              s.at(j, i) = f.conj(e);
                          }
                      }
                      // exact membership check |s_ij|^2 <= 1/n^2, then psd
                      MatE m = MatE::identity(f, n) + s;
                      for (int i = 0; i < n; ++i)
                          for (int j = 0; j < n; ++j)
                              if (f.norm(s.at(i, j)) * n * n > 1) {
                                  detail = "sample escaped the 1/n bound";
                                  return false;
                              }
                      if (!is_positive_semidefinite(m)) {
                          detail = "psd check failed at trial " + std::to_string(trial);
                          return false;
                      }
                  }
                  return true;
              });

    criterion(10, "four squares: exhaustive to 10^4 and spot checks near 10^12", 60,
              [](std::string& detail) {
                  for (long b = 0; b <= 10000; ++b) {
                      auto q = four_squares(Int(b));
                      if (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] != b) {
                          detail = "sum mismatch at " + std::to_string(b);
                          return false;
                      }
                  }
                  std::mt19937_64 rng(0xACCE10);
                  for (int trial = 0; trial < 20; ++trial) {
                      Int b = Int("1000000000000") + Int(static_cast<unsigned long>(rng() % 2000000));
                      auto q = four_squares(b);
                      if (q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3] != b) {
                          detail = "sum mismatch near 10^12";
                          return false;
                      }
                  }
                  return true;
              });

    criterion(11, "phi lower bound is monotone and the growth exponent is pinned", 120,
              [](std::string& detail) {
                  BoundsProfile p = BoundsProfile::certify(Field::rationals(), 64);
                  Int s(1);
                  int prev = 0;
                  for (int k = 0; k <= 12; ++k, s *= 10) {
                      int n = p.phi_lower_bound(s);
                      if (n < prev) {
                          detail = "monotonicity failed at 10^" + std::to_string(k);
                          return false;
                      }
                      prev = n;
                  }
                  auto [klo, khi] = p.growth_exponent();
                  if (khi - klo >= Rational(1, 1000000)) {
                      detail = "enclosure wider than 1e-6";
                      return false;
                  }
                  // true value solves (k-4)^2 = 8
                  if (!((klo - 4) * (klo - 4) <= 8 && (khi - 4) * (khi - 4) >= 8)) {
                      detail = "enclosure misses 4 + 2 sqrt 2";
                      return false;
                  }
                  return true;
              });

    if (g_failures == 0) {
        std::cout << "all criteria passed" << std::endl;
        return 0;
    }
    std::cout << g_failures << " criteria failed" << std::endl;
    return 1;
}
