#pragma once

// Pulse envelopes, multi-segment schedules and systematic amplitude error.
//
// A segment's envelope is
//     Omega(t) = amplitude_scale * (target_area / duration) * p(t / duration),
// with the unit-area profile p on [0, 1]. Only the area matters for the
// propagators built from these schedules; the shape is a free choice.

#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <vector>

#include "holomon/errors.hpp"
#include "holomon/model.hpp"

namespace holomon {

struct PulseShape {
    enum class Kind { Constant, HalfSine, TruncatedGaussian };
    Kind kind = Kind::Constant;
    double width_fraction = 0.2;  // Gaussian sigma as a fraction of the duration

    static PulseShape constant() { return {Kind::Constant, 0.2}; }
    static PulseShape half_sine() { return {Kind::HalfSine, 0.2}; }
    static PulseShape gaussian(double width = 0.2) { return {Kind::TruncatedGaussian, width}; }
};

inline std::string_view to_string(PulseShape::Kind kind) {
    switch (kind) {
        case PulseShape::Kind::Constant: return "constant";
        case PulseShape::Kind::HalfSine: return "halfsine";
        case PulseShape::Kind::TruncatedGaussian: return "gaussian";
    }
    return "unknown";
}

inline PulseShape parse_shape(std::string_view name, double width = 0.2) {
    if (name == "constant") return PulseShape::constant();
    if (name == "halfsine") return PulseShape::half_sine();
    if (name == "gaussian") return PulseShape::gaussian(width);
    throw InvalidParams("unknown pulse shape '" + std::string(name) + "'");
}

// Which segment Hamiltonian structure the envelope multiplies.
enum class GeneratorTag {
    MonitorCoupling,       // |phib><phi2| (x) |b><a| + h.c.
    LoopPhaseCoupling,     // e^{-i phi}|phib><phi2| (x) |b><a| + h.c.
    PlainCoupling,         // |phib><phi2| + h.c.
    QuadratureCoupling,    // -i|phib><phi2| + h.c.
    DfsExchange,           // XY + DM couplings on three qubits
};

struct PulseSegment {
    PulseShape shape;
    double duration = 1.0;
    double target_area = kPi;
    GeneratorTag generator_tag = GeneratorTag::MonitorCoupling;
    double amplitude_scale = 1.0;  // (1 + eps) after error injection

    double realized_area() const { return amplitude_scale * target_area; }
};

struct ErrorSpec {
    enum class Mode { AmplitudeScale, TimeStretch };
    double epsilon = 0.0;
    Mode mode = Mode::AmplitudeScale;
};

namespace detail {

// Unit-area profile on u in [0, 1].
inline double unit_profile(const PulseShape& shape, double u) {
    switch (shape.kind) {
        case PulseShape::Kind::Constant: return 1.0;
        case PulseShape::Kind::HalfSine: return 0.5 * kPi * std::sin(kPi * u);
        case PulseShape::Kind::TruncatedGaussian: {
            const double w = shape.width_fraction;
            const double norm =
                w * std::sqrt(2.0 * kPi) * std::erf(1.0 / (2.0 * std::sqrt(2.0) * w));
            const double d = (u - 0.5) / w;
            return std::exp(-0.5 * d * d) / norm;
        }
    }
    return 0.0;
}

}  // namespace detail

inline void validate(const PulseSegment& seg) {
    if (!(seg.duration > 0.0) || !std::isfinite(seg.duration)) {
        throw InvalidParams("segment duration must be positive and finite");
    }
    if (!std::isfinite(seg.target_area) || !std::isfinite(seg.amplitude_scale)) {
        throw InvalidParams("segment area must be finite");
    }
    if (seg.shape.kind == PulseShape::Kind::TruncatedGaussian && !(seg.shape.width_fraction > 0.0)) {
        throw InvalidParams("gaussian width fraction must be positive");
    }
}

/// Envelope value at local time t in [0, duration].
inline double amplitude_at(const PulseSegment& seg, double t) {
    if (!(t >= 0.0 && t <= seg.duration)) {
        throw OutOfRange("t=" + std::to_string(t) + " outside segment [0, " +
                         std::to_string(seg.duration) + "]");
    }
    return seg.amplitude_scale * (seg.target_area / seg.duration) *
           detail::unit_profile(seg.shape, t / seg.duration);
}

// N-point Gauss-Legendre rule on [-1, 1] by Newton iteration on P_N.
template <int N>
struct GaussLegendre {
    std::array<double, N> nodes{};
    std::array<double, N> weights{};

    GaussLegendre() {
        for (int i = 0; i < (N + 1) / 2; ++i) {
            double x = std::cos(kPi * (i + 0.75) / (N + 0.5));
            double dp = 0.0;
            for (int iter = 0; iter < 100; ++iter) {
                double p0 = 1.0;
                double p1 = x;
                for (int k = 2; k <= N; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = N * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[N - 1 - i] = x;
            weights[i] = w;
            weights[N - 1 - i] = w;
        }
    }

    template <class F>
    double integrate(F&& f, double a, double b) const {
        const double half = 0.5 * (b - a);
        const double mid = 0.5 * (a + b);
        double sum = 0.0;
        for (int i = 0; i < N; ++i) sum += weights[i] * f(mid + half * nodes[i]);
        return half * sum;
    }
};

inline const GaussLegendre<64>& gauss_legendre_64() {
    static const GaussLegendre<64> rule;
    return rule;
}

/// Quadrature of the envelope over the segment.
inline double segment_area(const PulseSegment& seg) {
    validate(seg);
    return gauss_legendre_64().integrate([&](double t) { return amplitude_at(seg, t); }, 0.0,
                                         seg.duration);
}

/// Every segment's realized area becomes (1 + eps) times what it was.
inline std::vector<PulseSegment> apply_error(std::vector<PulseSegment> schedule,
                                             const ErrorSpec& err) {
    const double factor = 1.0 + err.epsilon;
    if (!std::isfinite(err.epsilon) || !(factor > 0.0)) {
        throw InvalidEpsilon("1 + eps must be positive, eps=" + std::to_string(err.epsilon));
    }
    for (auto& seg : schedule) {
        // Stretching keeps the peak: Omega_eps(t) = Omega(t / (1 + eps)).
        if (err.mode == ErrorSpec::Mode::TimeStretch) seg.duration *= factor;
        seg.amplitude_scale *= factor;
    }
    return schedule;
}

inline double schedule_duration(const std::vector<PulseSegment>& schedule) {
    double total = 0.0;
    for (const auto& seg : schedule) total += seg.duration;
    return total;
}

}  // namespace holomon
