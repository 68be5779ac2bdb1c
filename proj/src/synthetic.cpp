#include "dengue/synthetic.hpp"

#include <algorithm>
#include <random>

#include "dengue/errors.hpp"
#include "dengue/random.hpp"

namespace dengue {

CaseSeries generate_synthetic(const FitSetup& setup, std::span<const double> theta_true,
                              double sigma_obs, std::size_t days, std::uint64_t seed) {
    if (days < 30) throw DomainError("synthetic series needs at least 30 days");
    if (!(sigma_obs >= 0.0)) throw DomainError("sigma_obs must be >= 0");
    const ModelParams p = apply_theta(setup.base, theta_true);
    const SeirState init =
        seeded_state(p, setup.i0.value_or(kDefaultSyntheticInfectious), setup.e0.value_or(-1.0));
    const Trajectory traj =
        integrate(p, init, static_cast<double>(days - 1), setup.step, setup.observable);

    CaseSeries out;
    out.day.resize(days);
    out.count.resize(days);
    Rng rng = make_stream(seed, 0x73796eULL);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (std::size_t i = 0; i < days; ++i) {
        out.day[i] = static_cast<int>(i);
        const double y = traj.observable[i];
        out.count[i] = sigma_obs > 0.0 ? std::max(0.0, y + sigma_obs * noise(rng)) : y;
    }
    return out;
}

}  // namespace dengue
