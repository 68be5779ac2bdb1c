#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>

namespace dengue {

/// Bijection between a parameter's support and the real line.
struct Transform {
    enum class Kind { identity, logit, log };
    Kind kind = Kind::identity;
    double lo = 0.0;
    double hi = 1.0;

    double to_unconstrained(double x) const;
    double to_constrained(double u) const;
    /// log |d x / d u| at unconstrained point u.
    double log_jacobian(double u) const;
};

class Prior {
public:
    enum class Kind { uniform, normal, exponential };

    static Prior uniform(double lo, double hi);
    static Prior normal(double mean, double sd);
    static Prior exponential(double rate);
    /// Accepts "U(lo,hi)", "N(mean,sd)" and "Exp(rate)", spaces optional.
    static Prior parse(std::string_view text);

    Kind kind() const { return kind_; }
    double first() const { return a_; }
    double second() const { return b_; }

    double log_density(double x) const;
    bool in_support(double x) const;
    /// logit for uniform, identity for normal, log for exponential.
    Transform transform() const;
    /// Short description, e.g. "U(0, 1)" or "N(220, 30)".
    std::string describe() const;

    bool operator==(const Prior&) const = default;

private:
    Prior(Kind k, double a, double b);
    Kind kind_;
    double a_;
    double b_;
};

/// Sampled parameter layout, in posterior CSV column order.
enum ThetaIndex : std::size_t {
    kBetaNp = 0,
    kABeta = 1,
    kTp = 2,
    kSigma = 3,
    kBetaPeak = 4,
    kSigmaObs = 5,
};
inline constexpr std::size_t kThetaDim = 6;
using Theta = std::array<double, kThetaDim>;

/// Column labels: beta_np, A_beta, t_p, sigma, beta_p, sigma_obs.
std::span<const std::string_view> theta_names();

struct PriorSpec {
    std::array<Prior, kThetaDim> priors = {
        Prior::uniform(0.0, 1.0),  Prior::uniform(0.0, 1.0), Prior::normal(220.0, 30.0),
        Prior::normal(60.0, 10.0), Prior::uniform(0.0, 1.0), Prior::exponential(1.0)};

    bool operator==(const PriorSpec&) const = default;
};

/// Sum of component log densities; -inf outside the support. Throws
/// DomainError when theta's length differs from the prior count.
double log_prior(std::span<const double> theta, const PriorSpec& priors);

}  // namespace dengue
