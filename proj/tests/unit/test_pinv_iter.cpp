#include <gtest/gtest.h>

#include "oracles.hpp"
#include "pinvq/adversary.hpp"
#include "pinvq/errors.hpp"
#include "pinvq/exact.hpp"
#include "pinvq/pinv_iter.hpp"

using namespace pinvq;

namespace {

QMatrix eps_matrix(const Rat& eps) { return make_family_point(3, 2, eps).a; }

}  // namespace

TEST(PinvIter, AlphaInit) {
  EXPECT_EQ(alpha_init(QMatrix::identity(2)), Rat(1, 2));
  EXPECT_EQ(alpha_init(QMatrix{{GaussRat(0, 1), 1}}), Rat(1, 2));
  EXPECT_THROW(alpha_init(QMatrix(2, 2)), PreconditionError);
}

TEST(PinvIter, StepMatchesScalarRecurrence) {
  const QMatrix i2 = QMatrix::identity(2);
  EXPECT_EQ(ben_israel_step(GaussRat(Rat(1, 2)) * i2, i2), GaussRat(Rat(3, 4)) * i2);
  EXPECT_EQ(ben_israel_step(GaussRat(Rat(3, 4)) * i2, i2), GaussRat(Rat(15, 16)) * i2);
  EXPECT_THROW(ben_israel_step(QMatrix(2, 3), QMatrix(2, 3)), DimensionError);
}

TEST(PinvIter, PseudoinverseIsAFixedPoint) {
  oracle::MatrixGenerator gen(31);
  for (int i = 0; i < 50; ++i) {
    const QMatrix a = gen.any();
    const QMatrix x = pinv_exact(a);
    EXPECT_EQ(ben_israel_step(x, a), x);
  }
}

TEST(PinvIter, IterationsNeeded) {
  const Certificate c{2, 1};
  EXPECT_EQ(iterations_needed(c, Rat(1, 2), 10), 4u);
  // (1/2)^{2^0} = 1/2 ≤ 2^{-1} already holds at k = 0.
  EXPECT_EQ(iterations_needed(c, Rat(1, 2), 1), 0u);
  EXPECT_EQ(iterations_needed(Certificate{1, 1}, 1, 50), 0u);
  EXPECT_THROW(iterations_needed(Certificate{0, 1}, Rat(1, 2), 3), PreconditionError);
  EXPECT_THROW(iterations_needed(Certificate{1, 0}, Rat(1, 2), 3), PreconditionError);
  EXPECT_THROW(iterations_needed(Certificate{1, 3}, Rat(1, 2), 3), PreconditionError);
}

TEST(PinvIter, IterationsNeededIsTheSmallestK) {
  // Direct substitution: λ^{-1}q^{2^{k+1}} ≤ 4^{-N} at k and not at k − 1.
  for (const Rat lambda : {Rat(1, 3), Rat(1, 100), Rat(7, 8)}) {
    const Rat alpha(1, 2);
    const Rat q = 1 - alpha * lambda;
    for (std::size_t N : {1u, 5u, 12u}) {
      const std::size_t k = iterations_needed(Certificate{1, lambda}, alpha, N);
      auto holds = [&](std::size_t kk) {
        Rat p = q;
        for (std::size_t s = 0; s < kk + 1; ++s) p *= p;
        return p <= lambda * pow2(-2 * static_cast<long>(N));
      };
      EXPECT_TRUE(holds(k));
      if (k > 0) EXPECT_FALSE(holds(k - 1));
    }
  }
}

TEST(PinvIter, CertifiedOnFamilyPoint) {
  const auto res = pinv_certified(eps_matrix(Rat(1, 2)), Certificate{2, Rat(1, 4)}, 20);
  const QMatrix truth{{1, 0, 0}, {0, 2, 0}};
  EXPECT_LE(res.ball.radius, pow2(-20));
  EXPECT_LE(frob_norm_sq(res.ball.center - truth), res.ball.radius * res.ball.radius);
  EXPECT_FALSE(res.certificate_suspect);
}

TEST(PinvIter, CertifiedIdentity) {
  const auto res = pinv_certified(QMatrix::identity(2), Certificate{2, 1}, 30);
  EXPECT_LE(res.ball.radius, pow2(-30));
  EXPECT_LE(frob_norm_sq(res.ball.center - QMatrix::identity(2)),
            res.ball.radius * res.ball.radius);
}

TEST(PinvIter, CertifiedExactWhenAlphaLambdaIsOne) {
  const QMatrix a{{1, 0}, {0, 0}};
  const auto res = pinv_certified(a, Certificate{1, 1}, 40);
  EXPECT_EQ(res.ball.center, pinv_exact(a));
  EXPECT_EQ(res.ball.radius, 0);
  EXPECT_EQ(res.trace.stopped_at, 0u);
}

TEST(PinvIter, CertifiedRejectsBadCertificates) {
  const QMatrix a = eps_matrix(Rat(1, 2));
  EXPECT_THROW(pinv_certified(QMatrix(2, 2), Certificate{1, 1}, 5), PreconditionError);
  EXPECT_THROW(pinv_certified(a, Certificate{0, 1}, 5), PreconditionError);
  EXPECT_THROW(pinv_certified(a, Certificate{3, Rat(1, 8)}, 5), PreconditionError);
  EXPECT_THROW(pinv_certified(a, Certificate{1, 0}, 5), PreconditionError);
  // p·λ may not exceed ‖A‖_F² = 5/4.
  EXPECT_THROW(pinv_certified(a, Certificate{2, 1}, 5), PreconditionError);
}

TEST(PinvIter, InvalidCertificateIsFlagged) {
  // λ = 1 is wrong for A_{1/4} (λ_2 = 1/16); the iteration stops early.
  const QMatrix a = make_family_point(2, 2, Rat(1, 4)).a;
  const auto res = pinv_certified(a, Certificate{1, 1}, 20);
  EXPECT_GT(frob_norm_sq(res.ball.center - pinv_exact(a)), res.ball.radius * res.ball.radius);
  EXPECT_TRUE(res.certificate_suspect);
}

TEST(PinvIter, EnclosureSoundOnRandomMatrices) {
  oracle::MatrixGenerator gen(32, {5, 5, true, 4, 3});
  for (int i = 0; i < 40; ++i) {
    const QMatrix a = gen.nonzero();
    const auto cert = oracle::certificate_from_char_poly(a);
    ASSERT_TRUE(cert.has_value());
    for (std::size_t N : {8u, 24u}) {
      const auto res = pinv_certified(a, *cert, N);
      EXPECT_LE(res.ball.radius, pow2(-static_cast<long>(N)));
      EXPECT_LE(frob_norm_sq(res.ball.center - pinv_exact(a)), res.ball.radius * res.ball.radius);
      EXPECT_FALSE(res.certificate_suspect);
    }
  }
}

TEST(PinvIter, TraceBoundsDominateObservedError) {
  oracle::MatrixGenerator gen(33, {4, 4, false, 3, 2});
  for (int i = 0; i < 20; ++i) {
    const QMatrix a = gen.nonzero();
    const auto cert = oracle::certificate_from_char_poly(a);
    ASSERT_TRUE(cert.has_value());
    const QMatrix truth = pinv_exact(a);
    std::vector<QMatrix> iterates;
    CertifiedOptions opts;
    opts.observer = [&](std::size_t, const QMatrix& x) { iterates.push_back(x); };
    const auto res = pinv_certified(a, *cert, 16, opts);
    ASSERT_EQ(iterates.size(), res.trace.iterates.size());
    for (std::size_t k = 0; k < iterates.size(); ++k) {
      const Rat& bound = res.trace.iterates[k].error_bound;
      EXPECT_LE(frob_norm_sq(iterates[k] - truth), bound * bound) << "k = " << k;
      if (k > 0 && res.trace.iterates[k - 1].error_bound < 1) {
        EXPECT_LT(bound, res.trace.iterates[k - 1].error_bound);
      }
    }
  }
}

TEST(PinvIter, ExactIteratesAgreeWithRounded) {
  const QMatrix a{{2, 1}, {1, 1}, {0, 1}};
  const auto cert = oracle::certificate_from_char_poly(a);
  ASSERT_TRUE(cert.has_value());
  CertifiedOptions exact;
  exact.exact_iterates = true;
  const auto r1 = pinv_certified(a, *cert, 12, exact);
  const auto r2 = pinv_certified(a, *cert, 12);
  EXPECT_EQ(r1.trace.stopped_at, r2.trace.stopped_at);
  const Rat both = r1.ball.radius + r2.ball.radius;
  EXPECT_LE(frob_norm_sq(r1.ball.center - r2.ball.center), both * both);
}

TEST(PinvIter, HeuristicConvergesOnIdentity) {
  const auto h = pinv_heuristic(QMatrix::identity(2), pow2(-20), 100);
  EXPECT_EQ(h.reason, HeuristicStop::StepBelowTolerance);
  EXPECT_LE(frob_norm_sq(h.approx - QMatrix::identity(2)), pow2(-30));
  EXPECT_LT(h.iterations, 10u);
}

TEST(PinvIter, HeuristicOnFamilyPoint) {
  const auto h = pinv_heuristic(eps_matrix(Rat(1, 2)), pow2(-30), 200);
  const QMatrix truth{{1, 0, 0}, {0, 2, 0}};
  EXPECT_EQ(h.reason, HeuristicStop::StepBelowTolerance);
  EXPECT_LE(frob_norm_sq(h.approx - truth), pow2(-40));
}

TEST(PinvIter, HeuristicMaxIterationsFarFromTruth) {
  const auto h = pinv_heuristic(eps_matrix(pow2(-20)), pow2(-30), 5);
  EXPECT_EQ(h.reason, HeuristicStop::MaxIterations);
  EXPECT_EQ(to_string(h.reason), "max_iter reached");
  const QMatrix truth = pinv_exact(eps_matrix(pow2(-20)));
  EXPECT_GE(frob_norm_sq(h.approx - truth), pow2(38));
}

TEST(PinvIter, HeuristicStopsSmallStepWhileFarAway) {
  // The (2,2) entry of A_k is about 2^{k-20}, so early steps are far below the
  // tolerance and the step rule fires while the error is still about 2^20.
  const std::size_t n = 20;
  const QMatrix a = make_family_point(2, 2, pow2(-static_cast<long>(n))).a;
  const auto h = pinv_heuristic(a, pow2(-10), 1000);
  EXPECT_EQ(h.reason, HeuristicStop::StepBelowTolerance);
  const QMatrix truth = pinv_exact(a);
  EXPECT_GE(frob_norm_sq(h.approx - truth), pow2(2 * (static_cast<long>(n) - 1)));
  EXPECT_THROW(pinv_heuristic(QMatrix(1, 1), pow2(-10), 10), PreconditionError);
}

TEST(PinvIter, DerivedKappaOnFamilyPoint) {
  const QMatrix a = eps_matrix(Rat(1, 2));
  const auto enc = std::get<BallScalar>(derived_certified(Derived::kappa, a, std::nullopt,
                                                          Certificate{2, Rat(1, 4)}, 16));
  EXPECT_TRUE(enc.contains(Rat(5, 2)));
  EXPECT_LE(enc.radius, pow2(-16));
}

TEST(PinvIter, DerivedPsiLsqOnRankOnePoint) {
  const auto pt = make_family_point(2, 2, 0);
  const auto enc = std::get<BallScalar>(
      derived_certified(Derived::psi_lsq, pt.a, pt.b, Certificate{1, 1}, 20));
  EXPECT_TRUE(enc.contains(1));
  EXPECT_LE(enc.radius, pow2(-20));
}

TEST(PinvIter, DerivedPsiNormContainsSqrtFive) {
  const auto pt = make_family_point(3, 2, Rat(1, 2));
  const auto enc = std::get<BallScalar>(
      derived_certified(Derived::psi_norm, pt.a, pt.b, Certificate{2, Rat(1, 4)}, 24));
  // √5 ∈ [c − r, c + r], decided on squares.
  const Rat lo = enc.center - enc.radius;
  const Rat hi = enc.center + enc.radius;
  EXPECT_LE(lo * lo, 5);
  EXPECT_GE(hi * hi, 5);
  EXPECT_LE(enc.radius, pow2(-24));
}

TEST(PinvIter, DerivedQuantitiesOnRandomMatrices) {
  oracle::MatrixGenerator gen(34, {4, 4, true, 3, 2});
  for (int i = 0; i < 15; ++i) {
    const QMatrix a = gen.nonzero();
    const auto cert = oracle::certificate_from_char_poly(a);
    ASSERT_TRUE(cert.has_value());
    const QVector b = gen.dense(a.rows(), 1, false) * QVector{1};
    const QMatrix x = pinv_exact(a);
    const QVector xhat = x * b;
    const std::size_t N = 12;

    const auto sol = std::get<BallVector>(derived_certified(Derived::psi_sol, a, b, *cert, N));
    EXPECT_LE(sol.radius, pow2(-static_cast<long>(N)));
    EXPECT_LE(norm_sq(sol.center - xhat), sol.radius * sol.radius);

    auto check_scalar = [&](Derived d, const Rat& value_sq) {
      const auto s = std::get<BallScalar>(derived_certified(d, a, b, *cert, N));
      EXPECT_LE(s.radius, pow2(-static_cast<long>(N)));
      const Rat lo = s.center - s.radius;
      const Rat hi = s.center + s.radius;
      EXPECT_GE(hi, 0);
      EXPECT_GE(hi * hi, value_sq) << to_string(d);
      if (sgn(lo) > 0) EXPECT_LE(lo * lo, value_sq) << to_string(d);
    };
    check_scalar(Derived::g_norm, frob_norm_sq(x));
    check_scalar(Derived::psi_norm, norm_sq(xhat));
    check_scalar(Derived::psi_lsq, norm_sq(a * xhat - b));
    check_scalar(Derived::kappa, frob_norm_sq(a) * frob_norm_sq(x));
  }
}

TEST(PinvIter, DerivedNeedsRightHandSide) {
  const QMatrix a = QMatrix::identity(2);
  EXPECT_THROW(derived_certified(Derived::psi_sol, a, std::nullopt, Certificate{2, 1}, 5),
               PreconditionError);
  EXPECT_THROW(derived_certified(Derived::psi_sol, a, QVector{1, 2, 3}, Certificate{2, 1}, 5),
               DimensionError);
}

TEST(PinvIter, TraceRoundTrip) {
  const auto res = pinv_certified(QMatrix::identity(2), Certificate{2, 1}, 10);
  const std::string text = format_trace(res.trace);
  EXPECT_NE(text.find("stopped_at " + std::to_string(res.trace.stopped_at)), std::string::npos);
  const IterationTrace back = parse_trace(text);
  EXPECT_EQ(back.iterates, res.trace.iterates);
  EXPECT_EQ(back.stopped_at, res.trace.stopped_at);
  EXPECT_THROW(parse_trace("0 1/2\n"), ParseError);
  EXPECT_THROW(parse_trace("x 1/2\nstopped_at 0\n"), ParseError);
}
