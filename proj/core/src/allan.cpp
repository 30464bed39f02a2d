#include "satft/allan.hpp"

#include <cmath>

#include "satft/errors.hpp"

namespace satft {

std::string estimator_name(Estimator e) {
    return e == Estimator::adev ? "adev" : "mdev";
}

Estimator estimator_from_name(std::string_view name) {
    if (name == "adev" || name == "ADEV") return Estimator::adev;
    if (name == "mdev" || name == "MDEV") return Estimator::mdev;
    throw InvalidSpecError("unknown estimator: '" + std::string(name) + "'");
}

void StabilityCurve::validate() const {
    if (tau_s.size() != sigma.size() || tau_s.size() != edf.size())
        throw InvalidSpecError("StabilityCurve: ragged columns");
    for (std::size_t i = 0; i < tau_s.size(); ++i) {
        if (!(sigma[i] > 0.0) || !std::isfinite(sigma[i]))
            throw InvalidSpecError("StabilityCurve: sigma must be positive and finite");
        if (i > 0 && !(tau_s[i] > tau_s[i - 1]))
            throw InvalidSpecError("StabilityCurve: tau must be strictly increasing");
    }
}

DeviationAccumulator::DeviationAccumulator(Estimator est, std::size_t m, double dt)
    : est_(est), m_(m), dt_(dt) {
    if (m == 0) throw InvalidSpecError("averaging factor m must be >= 1");
    if (!(dt > 0.0)) throw InvalidSpecError("dt must be positive");
}

void DeviationAccumulator::add_segment(std::span<const double> x) {
    const std::size_t n = x.size();
    const std::size_t m = m_;
    if (n < min_samples(est_, m)) return;

    if (est_ == Estimator::adev) {
        for (std::size_t i = 0; i + 2 * m < n; ++i) {
            double d = x[i + 2 * m] - 2.0 * x[i + m] + x[i];
            sum_sq_ += d * d;
            ++count_;
        }
    } else {
        // Running sum of the m second differences starting at j.
        double s = 0.0;
        for (std::size_t i = 0; i < m; ++i) s += x[i + 2 * m] - 2.0 * x[i + m] + x[i];
        sum_sq_ += s * s;
        ++count_;
        for (std::size_t j = 1; j + 3 * m <= n; ++j) {
            s += (x[j + 3 * m - 1] - 2.0 * x[j + 2 * m - 1] + x[j + m - 1]);
            s -= (x[j + 2 * m - 1] - 2.0 * x[j + m - 1] + x[j - 1]);
            sum_sq_ += s * s;
            ++count_;
        }
    }
}

double DeviationAccumulator::deviation() const {
    if (count_ == 0) return 0.0;
    const double tau = static_cast<double>(m_) * dt_;
    double var;
    if (est_ == Estimator::adev) {
        var = sum_sq_ / (2.0 * tau * tau * static_cast<double>(count_));
    } else {
        const double mm = static_cast<double>(m_);
        var = sum_sq_ / (2.0 * mm * mm * tau * tau * static_cast<double>(count_));
    }
    return std::sqrt(var);
}

double DeviationAccumulator::edf() const {
    // First-order estimate: overlapping estimates are correlated over ~2m
    // strides, so roughly count/(2m) independent terms (never below 1).
    if (count_ == 0) return 0.0;
    double e = static_cast<double>(count_) / (2.0 * static_cast<double>(m_));
    return e < 1.0 ? 1.0 : e;
}

double overlapping_deviation(Estimator est, std::span<const double> x, double dt,
                             std::size_t m) {
    DeviationAccumulator acc(est, m, dt);
    acc.add_segment(x);
    return acc.deviation();
}

std::size_t min_samples(Estimator est, std::size_t m) {
    return est == Estimator::adev ? 2 * m + 1 : 3 * m + 1;
}

std::vector<double> octave_taus(Estimator est, std::size_t n, double dt) {
    std::vector<double> taus;
    for (std::size_t m = 1; min_samples(est, m) + 1 <= n; m *= 2)
        taus.push_back(static_cast<double>(m) * dt);
    return taus;
}

} // namespace satft
