// One representation, many decoders: representation construction, decoder
// scale selection across the case boundary, the zero-penalty sweep, scale
// monotonicity, infeasible targets, and Monte Carlo agreement.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "rdc/gaussian_rdc.hpp"
#include "rdc/gaussian_universal.hpp"

using namespace rdc;

namespace {

GaussianPair correlated_pair() {
  GaussianPair p;
  p.theta1 = 0.7;
  return p;
}

}  // namespace

TEST_CASE("representation correlation matches the rate") {
  const GaussianPair p = correlated_pair();
  CHECK(build_representation(p, 0.34).rho_xz ==
        doctest::Approx(0.7024122775367828).epsilon(1e-15));
  CHECK(build_representation(p, 0.25).rho_xz ==
        doctest::Approx(0.6272713450233213).epsilon(1e-15));
  CHECK(build_representation(p, 0.0).rho_xz == 0.0);
  CHECK_THROWS_AS(build_representation(p, -0.1), NegativeRate);
  // Mutual information of the induced joint law reproduces the rate.
  const GaussianRepresentation z = build_representation(p, 0.34);
  CHECK(-0.5 * std::log1p(-z.rho_xz * z.rho_xz) == doctest::Approx(0.34).epsilon(1e-14));
}

TEST_CASE("decoder hits boundary targets exactly on the binding constraint") {
  const GaussianPair p = correlated_pair();
  const GaussianRepresentation z = build_representation(p, 0.25);
  const TradeoffCurve curve = sample_dcr_curve(p, 0.25, 30);
  for (const TradeoffPoint& pt : curve.points) {
    const UniversalDecoder dec = decoder_for(p, z, pt.d, pt.c);
    const double d_hat = achieved_distortion(p, z, dec);
    const double c_hat = achieved_class_loss(p, dec, z);
    CHECK(d_hat <= pt.d + 1e-12);
    CHECK(c_hat <= pt.c + 1e-12);
    // The binding constraint is met with equality.
    if (pt.case_label == CaseLabel::ClassificationActive) {
      CHECK(c_hat == doctest::Approx(pt.c).epsilon(1e-10));
    } else {
      CHECK(d_hat == doctest::Approx(pt.d).epsilon(1e-10));
    }
  }
}

TEST_CASE("decoder map moments match the closed-form achievements") {
  const GaussianPair p = correlated_pair();
  const GaussianRepresentation z = build_representation(p, 0.3);
  const UniversalDecoder dec = decoder_for(p, z, 0.7, 1.35);
  // E[(X - gamma Z)^2] for the affine decoder, written out by hand.
  const double s = dec.gamma * std::sqrt(z.sigma2_z);
  const double by_hand =
      p.sigma2_x + s * s - 2.0 * s * z.rho_xz * std::sqrt(p.sigma2_x);
  CHECK(achieved_distortion(p, z, dec) == doctest::Approx(by_hand).epsilon(1e-15));
  CHECK(achieved_class_loss(p, dec, z) ==
        doctest::Approx(variance_rule_class_loss(p, s * s)).epsilon(1e-15));
}

TEST_CASE("no-penalty sweep across mixed rates stays at numerical noise") {
  const GaussianPair p = correlated_pair();
  const NoPenaltyReport report = verify_no_penalty(p, {0.05, 0.15, 0.34}, 40);
  REQUIRE(report.checks.size() == 120);
  CHECK(report.max_d_violation <= 1e-12);
  CHECK(report.max_c_violation <= 1e-12);
  // Every check entry individually dominates its target.
  for (const DecoderCheck& ck : report.checks) {
    CHECK(ck.achieved_d <= ck.target_d + 1e-12);
    CHECK(ck.achieved_c <= ck.target_c + 1e-12);
  }
}

TEST_CASE("decoder scale shrinks as the classification budget relaxes") {
  const GaussianPair p = correlated_pair();
  const NoPenaltyReport report = verify_no_penalty(p, {0.25}, 60);
  // Boundary points sweep C ascending; a larger budget never needs a larger
  // output scale in the classification-limited regime, and the scale settles
  // at the fixed Shannon value once distortion binds.
  for (std::size_t i = 1; i < report.checks.size(); ++i) {
    CHECK(report.checks[i].gamma <= report.checks[i - 1].gamma + 1e-12);
  }
}

TEST_CASE("targets below the fixed-rate boundary are rejected") {
  const GaussianPair p = correlated_pair();
  const GaussianRepresentation z = build_representation(p, 0.25);
  // A boundary point of a higher rate is unreachable from the rate-0.25
  // representation.
  const GaussianOptimum better = distortion_of(p, 1.5, 0.5);
  CHECK_THROWS_AS(decoder_for(p, z, better.distortion, 1.5), InfeasiblePair);
  // Distortion below the fixed-rate Shannon floor with slack classification.
  CHECK_THROWS_AS(decoder_for(p, z, 0.9 * std::exp(-0.5), 2.0), InfeasiblePair);
  // Classification below the feasibility threshold is a different failure.
  CHECK_THROWS_AS(decoder_for(p, z, 0.9, feasibility_threshold(p) - 1e-6),
                  InfeasibleClassification);
}

TEST_CASE("plugin limit is scale-free for nonzero decoders") {
  const GaussianPair p = correlated_pair();
  const GaussianRepresentation z = build_representation(p, 0.25);
  const UniversalDecoder tight = decoder_for(p, z, 0.8, 1.2);
  const UniversalDecoder slack = decoder_for(p, z, 0.62, 1.5);
  const double boundary = case_boundary(p, 0.25);
  CHECK(plugin_class_loss_limit(p, z, tight) == doctest::Approx(boundary).epsilon(1e-15));
  CHECK(plugin_class_loss_limit(p, z, slack) == doctest::Approx(boundary).epsilon(1e-15));

  UniversalDecoder constant = tight;
  constant.gamma = 0.0;
  CHECK(plugin_class_loss_limit(p, z, constant) ==
        doctest::Approx(p.label_entropy()).epsilon(1e-15));
}

TEST_CASE("monte carlo estimates converge to the closed forms") {
  const GaussianPair p = correlated_pair();
  const GaussianRepresentation z = build_representation(p, 0.25);
  const UniversalDecoder dec = decoder_for(p, z, 0.8, 1.25);
  const std::size_t n = 200000;
  const MonteCarloEstimate est = monte_carlo_check(p, dec, z, n, 42);

  const double d_exact = achieved_distortion(p, z, dec);
  // Var((X - Xhat)^2) = 2 D^2 for a centered Gaussian error.
  const double se_d = std::sqrt(2.0) * d_exact / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(est.d_hat - d_exact) <= 4.0 * se_d);

  const double c_limit = plugin_class_loss_limit(p, z, dec);
  CHECK(std::abs(est.c_hat - c_limit) <= 0.01);
}

TEST_CASE("monte carlo is deterministic in the seed") {
  const GaussianPair p = correlated_pair();
  const GaussianRepresentation z = build_representation(p, 0.3);
  const UniversalDecoder dec = decoder_for(p, z, 0.75, 1.3);
  const MonteCarloEstimate a = monte_carlo_check(p, dec, z, 50000, 7);
  const MonteCarloEstimate b = monte_carlo_check(p, dec, z, 50000, 7);
  CHECK(a.d_hat == b.d_hat);
  CHECK(a.c_hat == b.c_hat);
  const MonteCarloEstimate c = monte_carlo_check(p, dec, z, 50000, 8);
  CHECK(a.d_hat != c.d_hat);

  CHECK_THROWS_AS(monte_carlo_check(p, dec, z, 100, 7), ConfigError);
}
