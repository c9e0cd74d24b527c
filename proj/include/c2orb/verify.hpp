#pragma once

#include <functional>
#include <string>
#include <vector>

#include "c2orb/coefficients.hpp"

namespace c2orb {

struct CheckReport {
  std::string name;
  bool pass = false;
  /// Exact nonzero difference on failure.
  std::string witness;
  std::vector<std::string> notes;
  double seconds = 0;
  /// Structured payload as a JSON document, or empty.
  std::string data;

  std::string status() const { return pass ? "pass" : "fail"; }
  std::string json(bool with_timing = true) const;
};

/// Reference closed forms transcribed literally from their displays.
struct ReferencePolynomials {
  /// Even-branch determinant polynomial, expanded from its factored display.
  Poly f0;
  /// Odd-branch determinant polynomial, expanded from its factored display.
  Poly f1;
  /// 630(1+(-1)^{p-1}) + (308+411(-1)^{p-1})p + 7(16+9(-1)^{p-1})p^2 + 28p^3 + 2p^4.
  ParityExpr f_small;

  static const ReferencePolynomials& get();
  /// Factored forms evaluated at z = m by plain Rational arithmetic.
  static Poly f0_at(long m);
  static Poly f1_at(long m);
  /// f(p) evaluated termwise from the display.
  static Rational f_small_at(long p);
};

/// The weight-one closed form (-1)^p f(p) / (210 p(p+2)(p+3)(p+4)(p+5)).
ParityExpr weight1_det_reference();
/// det of the beta/gamma difference matrix for (5,2)/(2,5) and (4,3)/(3,4).
ParityExpr weight1_det();

CheckReport verify_det_weight1();
CheckReport verify_appendix();
CheckReport verify_leading_terms();
CheckReport verify_h_closed_forms();
CheckReport verify_beta_gamma_assembly();
CheckReport verify_F_g_h_assembly();
CheckReport verify_pair_scalar_grid();

/// Runs checks concurrently (up to jobs at a time); reports come back in input order.
std::vector<CheckReport> run_checks(const std::vector<std::function<CheckReport()>>& checks, int jobs = 1);

}  // namespace c2orb
