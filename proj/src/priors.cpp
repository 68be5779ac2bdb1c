#include "dengue/priors.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "dengue/errors.hpp"

namespace dengue {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

constexpr std::array<std::string_view, kThetaDim> kThetaNames = {
    "beta_np", "A_beta", "t_p", "sigma", "beta_p", "sigma_obs"};

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

double parse_number(const std::string& s, std::string_view context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw DomainError("bad number '" + s + "' in prior '" + std::string(context) + "'");
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

}  // namespace

double Transform::to_unconstrained(double x) const {
    switch (kind) {
        case Kind::identity: return x;
        case Kind::log: return std::log(x);
        case Kind::logit: {
            const double z = (x - lo) / (hi - lo);
            return std::log(z) - std::log1p(-z);
        }
    }
    return x;
}

double Transform::to_constrained(double u) const {
    switch (kind) {
        case Kind::identity: return u;
        case Kind::log: return std::exp(u);
        case Kind::logit: return lo + (hi - lo) / (1.0 + std::exp(-u));
    }
    return u;
}

double Transform::log_jacobian(double u) const {
    switch (kind) {
        case Kind::identity: return 0.0;
        case Kind::log: return u;
        case Kind::logit: {
            // log sigmoid(u) + log sigmoid(-u), computed stably.
            const double a = -std::log1p(std::exp(-std::abs(u)));
            return std::log(hi - lo) + 2.0 * a - std::abs(u);
        }
    }
    return 0.0;
}

Prior::Prior(Kind k, double a, double b) : kind_(k), a_(a), b_(b) {}

Prior Prior::uniform(double lo, double hi) {
    if (!(lo < hi)) throw DomainError("uniform prior requires lo < hi");
    return Prior(Kind::uniform, lo, hi);
}

Prior Prior::normal(double mean, double sd) {
    if (!(sd > 0.0)) throw DomainError("normal prior requires sd > 0");
    return Prior(Kind::normal, mean, sd);
}

Prior Prior::exponential(double rate) {
    if (!(rate > 0.0)) throw DomainError("exponential prior requires rate > 0");
    return Prior(Kind::exponential, rate, 0.0);
}

Prior Prior::parse(std::string_view text) {
    const std::string s = trim(text);
    const auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')')
        throw DomainError("prior must look like U(lo,hi), N(mean,sd) or Exp(rate): '" + s + "'");
    const std::string name = trim(std::string_view(s).substr(0, open));
    const std::string inner = s.substr(open + 1, s.size() - open - 2);
    const auto comma = inner.find(',');
    if (name == "Exp" || name == "Exponential") {
        if (comma != std::string::npos) throw DomainError("Exp prior takes one argument");
        return exponential(parse_number(trim(inner), s));
    }
    if (comma == std::string::npos) throw DomainError("prior '" + s + "' needs two arguments");
    const double a = parse_number(trim(std::string_view(inner).substr(0, comma)), s);
    const double b = parse_number(trim(std::string_view(inner).substr(comma + 1)), s);
    if (name == "U" || name == "Uniform") return uniform(a, b);
    if (name == "N" || name == "Normal") return normal(a, b);
    throw DomainError("unknown prior family '" + name + "'");
}

bool Prior::in_support(double x) const {
    switch (kind_) {
        case Kind::uniform: return x >= a_ && x <= b_;
        case Kind::normal: return std::isfinite(x);
        case Kind::exponential: return x >= 0.0 && std::isfinite(x);
    }
    return false;
}

double Prior::log_density(double x) const {
    if (!in_support(x)) return kNegInf;
    switch (kind_) {
        case Kind::uniform: return -std::log(b_ - a_);
        case Kind::normal: {
            const double z = (x - a_) / b_;
            return -0.5 * z * z - std::log(b_) - 0.5 * std::log(2.0 * std::numbers::pi);
        }
        case Kind::exponential: return std::log(a_) - a_ * x;
    }
    return kNegInf;
}

Transform Prior::transform() const {
    switch (kind_) {
        case Kind::uniform: return {Transform::Kind::logit, a_, b_};
        case Kind::normal: return {Transform::Kind::identity, 0.0, 0.0};
        case Kind::exponential: return {Transform::Kind::log, 0.0, 0.0};
    }
    return {};
}

std::string Prior::describe() const {
    switch (kind_) {
        case Kind::uniform: return "U(" + fmt(a_) + ", " + fmt(b_) + ")";
        case Kind::normal: return "N(" + fmt(a_) + ", " + fmt(b_) + ")";
        case Kind::exponential: return "Exp(" + fmt(a_) + ")";
    }
    return {};
}

std::span<const std::string_view> theta_names() { return kThetaNames; }

double log_prior(std::span<const double> theta, const PriorSpec& spec) {
    if (theta.size() != spec.priors.size())
        throw DomainError("parameter vector has " + std::to_string(theta.size()) +
                          " entries, prior spec has " + std::to_string(spec.priors.size()));
    double total = 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double lp = spec.priors[i].log_density(theta[i]);
        if (lp == kNegInf) return kNegInf;
        total += lp;
    }
    return total;
}

}  // namespace dengue
