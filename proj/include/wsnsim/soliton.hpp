#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "wsnsim/rng.hpp"

namespace wsnsim {

enum class DistKind { kIdeal, kRobust };

// Soliton degree distribution over {1..k}. Storage slots draw their
// acceptance degree from one of these.
//
// Ideal:  p(1) = 1/k, p(i) = 1/(i(i-1)) for i = 2..k.
// Robust: with R = c0 * ln(k/delta) * sqrt(k) and spike s = round(k/R)
//         clamped to [1, k],
//             tau(i) = R/(i*k)            for i < s
//             tau(s) = R * ln(R/delta)/k
//             tau(i) = 0                  for i > s
//         p(i) = (tau(i) + ideal(i)) / beta,  beta = sum(tau + ideal).
class DegreeDistribution {
public:
    static DegreeDistribution ideal(std::size_t k) {
        if (k < 1) throw std::domain_error("degree distribution: k must be >= 1");
        std::vector<double> pmf(k);
        pmf[0] = 1.0 / static_cast<double>(k);
        for (std::size_t i = 2; i <= k; ++i)
            pmf[i - 1] = 1.0 / (static_cast<double>(i) * static_cast<double>(i - 1));
        return DegreeDistribution(DistKind::kIdeal, k, 0.0, 0.0, 0, std::move(pmf));
    }

    static DegreeDistribution robust(std::size_t k, double c0, double delta) {
        if (k < 1) throw std::domain_error("degree distribution: k must be >= 1");
        if (!(c0 > 0.0)) throw std::domain_error("degree distribution: c0 must be > 0");
        if (!(delta > 0.0 && delta < 1.0))
            throw std::domain_error("degree distribution: delta must be in (0,1)");

        const double kd = static_cast<double>(k);
        const double big_r = c0 * std::log(kd / delta) * std::sqrt(kd);
        const auto spike = static_cast<std::size_t>(
            std::clamp<long long>(std::llround(kd / big_r), 1, static_cast<long long>(k)));

        std::vector<double> weights(k);
        double beta = 0.0;
        for (std::size_t i = 1; i <= k; ++i) {
            double tau = 0.0;
            if (i < spike)
                tau = big_r / (static_cast<double>(i) * kd);
            else if (i == spike)
                tau = big_r * std::log(big_r / delta) / kd;
            const double ideal_i =
                (i == 1) ? 1.0 / kd
                         : 1.0 / (static_cast<double>(i) * static_cast<double>(i - 1));
            const double w = tau + ideal_i;
            if (w < 0.0)
                throw std::domain_error(
                    "degree distribution: negative weight, (k, c0, delta) incompatible");
            weights[i - 1] = w;
            beta += w;
        }
        for (double& w : weights) w /= beta;
        return DegreeDistribution(DistKind::kRobust, k, c0, delta, spike, std::move(weights));
    }

    DistKind kind() const { return kind_; }
    std::size_t k() const { return k_; }
    double c0() const { return c0_; }
    double delta() const { return delta_; }
    std::size_t spike_index() const { return spike_; }

    // P(degree == i), i in [1, k].
    double pmf(std::size_t i) const { return pmf_.at(i - 1); }

    // Degree in [1, k] with probability pmf(i); inverse-CDF draw, one uniform.
    std::size_t sample(Rng& rng) const {
        const double u = rng.next_double();
        const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
        return static_cast<std::size_t>(it - cdf_.begin()) + 1;
    }

private:
    DegreeDistribution(DistKind kind, std::size_t k, double c0, double delta,
                       std::size_t spike, std::vector<double> pmf)
        : kind_(kind), k_(k), c0_(c0), delta_(delta), spike_(spike), pmf_(std::move(pmf)) {
        cdf_.resize(pmf_.size());
        double acc = 0.0;
        for (std::size_t i = 0; i < pmf_.size(); ++i) {
            acc += pmf_[i];
            cdf_[i] = acc;
        }
        cdf_.back() = 1.0;  // guard against rounding at the tail
    }

    DistKind kind_;
    std::size_t k_;
    double c0_;
    double delta_;
    std::size_t spike_;  // 0 for ideal
    std::vector<double> pmf_;
    std::vector<double> cdf_;
};

}  // namespace wsnsim
