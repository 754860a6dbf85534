#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "holomon/pulses.hpp"
#include "test_support.hpp"

using namespace holomon;

namespace {

double kronrod_area(const PulseSegment& seg) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate([&](double t) { return amplitude_at(seg, t); }, 0.0,
                                                seg.duration, 10, 1e-15);
}

std::vector<PulseShape> shapes() {
    return {PulseShape::constant(), PulseShape::half_sine(), PulseShape::gaussian(0.2),
            PulseShape::gaussian(0.1), PulseShape::gaussian(0.5)};
}

}  // namespace

TEST(Shape, NamesRoundTrip) {
    for (auto kind : {PulseShape::Kind::Constant, PulseShape::Kind::HalfSine,
                      PulseShape::Kind::TruncatedGaussian}) {
        EXPECT_EQ(parse_shape(to_string(kind)).kind, kind);
    }
    EXPECT_THROW(parse_shape("square"), InvalidParams);
}

TEST(Area, MatchesTargetForEveryShape) {
    for (const auto& shape : shapes())
        for (double T : {0.5, 1.0, 3.0})
            for (double A : {kPi / 2, kPi}) {
                const PulseSegment seg{shape, T, A, GeneratorTag::PlainCoupling, 1.0};
                EXPECT_NEAR(kronrod_area(seg), A, 1e-12);
                EXPECT_NEAR(segment_area(seg), A, 1e-12);
            }
}

TEST(Area, HalfSinePeak) {
    // A = pi, T = 1: Omega(T/2) = pi * pi / 2.
    const PulseSegment seg{PulseShape::half_sine(), 1.0, kPi, GeneratorTag::PlainCoupling, 1.0};
    EXPECT_NEAR(amplitude_at(seg, 0.5), kPi * kPi / 2, 1e-13);
    EXPECT_NEAR(amplitude_at(seg, 0.0), 0.0, 1e-13);
    EXPECT_THROW(amplitude_at(seg, 1.0001), OutOfRange);
    EXPECT_THROW(amplitude_at(seg, -1e-9), OutOfRange);
}

TEST(Area, GaussianIsSymmetricAndPeaked) {
    const PulseSegment seg{PulseShape::gaussian(0.2), 2.0, kPi, GeneratorTag::PlainCoupling, 1.0};
    for (double t : {0.1, 0.4, 0.9}) {
        EXPECT_NEAR(amplitude_at(seg, t), amplitude_at(seg, 2.0 - t), 1e-13);
        EXPECT_LT(amplitude_at(seg, t), amplitude_at(seg, 1.0));
    }
}

TEST(ApplyError, BothModesScaleTheArea) {
    for (const auto& shape : shapes())
        for (double eps : {-0.2, 0.0, 0.1, 0.3}) {
            const std::vector<PulseSegment> nominal{{shape, 1.0, kPi, GeneratorTag::PlainCoupling, 1.0},
                                                    {shape, 1.0, kPi / 2, GeneratorTag::PlainCoupling, 1.0}};
            for (auto mode : {ErrorSpec::Mode::AmplitudeScale, ErrorSpec::Mode::TimeStretch}) {
                const auto out = apply_error(nominal, {eps, mode});
                for (std::size_t i = 0; i < out.size(); ++i) {
                    EXPECT_NEAR(kronrod_area(out[i]), (1 + eps) * nominal[i].target_area, 1e-12);
                    EXPECT_NEAR(out[i].realized_area(), (1 + eps) * nominal[i].target_area, 1e-14);
                }
            }
        }
}

TEST(ApplyError, ModeSemantics) {
    const std::vector<PulseSegment> nominal{{PulseShape::half_sine(), 1.0, kPi, GeneratorTag::PlainCoupling, 1.0}};
    const auto amp = apply_error(nominal, {0.25, ErrorSpec::Mode::AmplitudeScale});
    EXPECT_DOUBLE_EQ(amp[0].duration, 1.0);
    EXPECT_NEAR(amplitude_at(amp[0], 0.5), 1.25 * kPi * kPi / 2, 1e-12);
    const auto stretch = apply_error(nominal, {0.25, ErrorSpec::Mode::TimeStretch});
    EXPECT_DOUBLE_EQ(stretch[0].duration, 1.25);
    // Stretching keeps the peak amplitude.
    EXPECT_NEAR(amplitude_at(stretch[0], 0.625), kPi * kPi / 2, 1e-12);
    EXPECT_DOUBLE_EQ(schedule_duration(stretch), 1.25);
}

TEST(ApplyError, RejectsNonPositiveFactor) {
    const std::vector<PulseSegment> nominal{{}};
    EXPECT_THROW(apply_error(nominal, {-1.0, ErrorSpec::Mode::AmplitudeScale}), InvalidEpsilon);
    EXPECT_THROW(apply_error(nominal, {-1.5, ErrorSpec::Mode::TimeStretch}), InvalidEpsilon);
    EXPECT_THROW(apply_error(nominal, {std::nan(""), ErrorSpec::Mode::TimeStretch}), InvalidEpsilon);
    EXPECT_NO_THROW(apply_error(nominal, {-0.99, ErrorSpec::Mode::AmplitudeScale}));
}

TEST(Validate, RejectsBadSegments) {
    PulseSegment seg;
    seg.duration = 0.0;
    EXPECT_THROW(validate(seg), InvalidParams);
    seg.duration = 1.0;
    seg.shape = PulseShape::gaussian(0.0);
    EXPECT_THROW(validate(seg), InvalidParams);
}

TEST(GaussLegendreRule, ExactForPolynomials) {
    const auto& rule = gauss_legendre_64();
    for (int k = 0; k <= 20; ++k) {
        const double got = rule.integrate([k](double x) { return std::pow(x, k); }, 0.0, 1.0);
        EXPECT_NEAR(got, 1.0 / (k + 1), 1e-14);
    }
}

// Random segments: area is linear in the amplitude scale.
TEST(Property, AreaLinearInScale) {
    for (int trial = 0; trial < 50; ++trial) {
        const auto all = shapes();
        const PulseShape shape = all[trial % all.size()];
        const double T = holomon::testing::uniform(0.1, 5.0);
        const double A = holomon::testing::uniform(0.1, 4.0);
        const double s = holomon::testing::uniform(0.05, 3.0);
        const PulseSegment seg{shape, T, A, GeneratorTag::PlainCoupling, s};
        EXPECT_NEAR(segment_area(seg), s * A, 1e-11 * s * A);
    }
}
