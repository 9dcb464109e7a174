#include "exitlab/sbm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "exitlab/parallel.hpp"

namespace exitlab {

namespace {

/// Raw view of a grid function for fast clamped linear interpolation in the
/// particle loop.
struct FieldView {
    const double* v = nullptr;
    double left = 0.0;
    double inv_h = 0.0;
    double n = 0.0;  // grid_size as double
    std::size_t last = 0;

    FieldView() = default;
    explicit FieldView(const GridFunction& g)
        : v(g.values().data()),
          left(g.domain().left),
          inv_h(1.0 / g.spacing()),
          n(static_cast<double>(g.grid_size())),
          last(g.grid_size()) {}

    double eval(double x) const {
        double t = (x - left) * inv_h;
        if (t <= 0.0) return v[0];
        if (t >= n) return v[last];
        const auto i = static_cast<std::size_t>(t);
        const double frac = t - static_cast<double>(i);
        return v[i] + frac * (v[i + 1] - v[i]);
    }
};

}  // namespace

OffspringTable::OffspringTable(double branch_rate, double dt) {
    // Birth rate of the embedded linear birth-death process.
    const double a = 0.5 * branch_rate * dt;
    // P(Z=0) = a/(1+a); P(Z=k) = a^{k-1}/(1+a)^{k+1}, k >= 1.
    const double inv1a = 1.0 / (1.0 + a);
    double cum = a * inv1a;
    cdf_.push_back(cum);
    double pk = inv1a * inv1a;  // k = 1
    const double ratio = a * inv1a;
    while (1.0 - cum > 1e-18 && cdf_.size() < 4096) {
        cum += pk;
        cdf_.push_back(cum);
        pk *= ratio;
    }
    cdf_.push_back(1.0);
}

ParticleSystem::ParticleSystem(const SimulationLaw& law, std::size_t resolution,
                               SchemeParams params)
    : law_(&law),
      resolution_(resolution),
      params_(params),
      sqrt_dt_(std::sqrt(params.dt)),
      offspring_(params.branch_rate_factor * static_cast<double>(resolution), params.dt) {
    if (resolution < 1) throw std::invalid_argument("ParticleSystem: resolution must be >= 1");
    if (law.variant != LawVariant::Plain && !law.kill_field)
        throw std::invalid_argument("ParticleSystem: non-plain law requires a kill field");
    if (law.variant != LawVariant::Plain) {
        survival_ = *law.kill_field;
        for (auto& v : survival_.values()) v = std::exp(-v * params_.dt);
    }
}

void ParticleSystem::seed(const AtomicMeasure& mu, const Domain1D& subdomain) {
    for (const auto& atom : mu.atoms) {
        if (atom.weight == 0.0) continue;
        if (atom.weight < 0.0)
            throw std::invalid_argument("ParticleSystem::seed: negative atom weight");
        if (!subdomain.contains_closure(atom.point))
            throw std::invalid_argument("ParticleSystem::seed: atom outside subdomain closure");
        const auto count = static_cast<std::uint64_t>(
            std::ceil(atom.weight * static_cast<double>(resolution_) - 1e-12));
        if (atom.point == subdomain.left) {
            frozen_.left += count;
        } else if (atom.point == subdomain.right) {
            frozen_.right += count;
        } else {
            alive_.insert(alive_.end(), count, atom.point);
        }
    }
    if (alive_.size() > params_.population_cap)
        throw ResourceError("ParticleSystem: population cap exceeded at seeding");
}

void ParticleSystem::release_frozen(const Domain1D& previous_subdomain) {
    alive_.insert(alive_.end(), frozen_.left, previous_subdomain.left);
    alive_.insert(alive_.end(), frozen_.right, previous_subdomain.right);
    frozen_ = {};
}

void ParticleSystem::step(const Domain1D& sub, Rng& rng) {
    const double l = sub.left;
    const double r = sub.right;
    const double dt = params_.dt;
    const double inv_dt = 1.0 / dt;
    // Bridge crossing probability below exp(-36) is not worth the exp().
    const double bridge_cut = 18.0 * dt;

    const bool killing = law_->variant != LawVariant::Plain;
    const FieldView survive = killing ? FieldView(survival_) : FieldView();
    // Under the extinction-conditioned law the blow-up boundary is never
    // reached in the continuum; a discrete step that jumps the killing zone
    // of the full-domain boundary is a kill, not an exit. Subdomain
    // boundaries interior to the kill field still freeze normally.
    bool left_absorbs = false, right_absorbs = false;
    if (law_->variant == LawVariant::ExtinctionConditioned) {
        const auto& kd = law_->kill_field->domain();
        left_absorbs = (l == kd.left);
        right_absorbs = (r == kd.right);
    }

    scratch_.clear();
    for (const double x : alive_) {
        const double xn = x + sqrt_dt_ * rng.normal();

        // Kill before exit: near the boundary the blow-up rate must win,
        // otherwise the extinction-conditioned law would leak exit mass.
        if (killing) {
            const double p = survive.eval(0.5 * (x + xn));
            if (rng.uniform() > p) continue;
        }

        if (xn <= l) {
            if (!left_absorbs) ++frozen_.left;
            continue;
        }
        if (xn >= r) {
            if (!right_absorbs) ++frozen_.right;
            continue;
        }
        const double pl = (x - l) * (xn - l);
        if (pl < bridge_cut && rng.uniform() < std::exp(-2.0 * pl * inv_dt)) {
            if (!left_absorbs) ++frozen_.left;
            continue;
        }
        const double pr = (r - x) * (r - xn);
        if (pr < bridge_cut && rng.uniform() < std::exp(-2.0 * pr * inv_dt)) {
            if (!right_absorbs) ++frozen_.right;
            continue;
        }

        const std::uint32_t children = offspring_.sample(rng);
        for (std::uint32_t c = 0; c < children; ++c) scratch_.push_back(xn);
    }
    alive_.swap(scratch_);
    clock_ += dt;
    if (alive_.size() > params_.population_cap)
        throw ResourceError("ParticleSystem: population cap exceeded");
}

ParticleSystem::ExitCounts ParticleSystem::run_to_exit(const Domain1D& subdomain, Rng& rng) {
    // frozen_ may already hold atoms seeded on the subdomain boundary; they
    // belong to this exit measure. release_frozen() clears it between stages.
    const double deadline = clock_ + params_.horizon;
    while (!alive_.empty()) {
        if (clock_ >= deadline) {
            horizon_dropped_ += alive_.size();
            alive_.clear();
            break;
        }
        step(subdomain, rng);
    }
    return frozen_;
}

BoundaryAtomicMeasure sample_exit_measure(const AtomicMeasure& mu, const SimulationLaw& law,
                                          const Domain1D& subdomain, std::size_t resolution,
                                          Rng& rng, const SchemeParams& params) {
    ParticleSystem sys(law, resolution, params);
    sys.seed(mu, subdomain);
    const auto counts = sys.run_to_exit(subdomain, rng);
    return sys.exit_measure(subdomain, counts);
}

std::vector<BoundaryAtomicMeasure> sample_exit_chain(const AtomicMeasure& mu,
                                                     const SimulationLaw& law,
                                                     const std::vector<Domain1D>& exhaustion,
                                                     std::size_t resolution, Rng& rng,
                                                     const SchemeParams& params) {
    if (exhaustion.empty())
        throw std::invalid_argument("sample_exit_chain: empty exhaustion");
    for (std::size_t k = 1; k < exhaustion.size(); ++k) {
        if (!(exhaustion[k - 1].left > exhaustion[k].left &&
              exhaustion[k - 1].right < exhaustion[k].right))
            throw std::invalid_argument("sample_exit_chain: exhaustion must strictly increase");
    }

    std::vector<BoundaryAtomicMeasure> out;
    out.reserve(exhaustion.size());
    ParticleSystem sys(law, resolution, params);
    sys.seed(mu, exhaustion.front());
    for (std::size_t k = 0; k < exhaustion.size(); ++k) {
        if (k > 0) sys.release_frozen(exhaustion[k - 1]);
        const auto counts = sys.run_to_exit(exhaustion[k], rng);
        out.push_back(sys.exit_measure(exhaustion[k], counts));
    }
    return out;
}

std::vector<BoundaryAtomicMeasure> sample_extinction_conditioned(
    const AtomicMeasure& mu, const GridFunction& u_large, const Domain1D& domain,
    int subchain_depth, std::size_t resolution, Rng& rng, const SchemeParams& params) {
    for (const auto& atom : mu.atoms)
        if (!domain.contains(atom.point))
            throw std::invalid_argument(
                "sample_extinction_conditioned: mu must be compactly supported in the domain");
    auto law = SimulationLaw::extinction_conditioned(u_large);
    auto domains = exhaustion_schedule(domain, subchain_depth);
    domains.push_back(domain);
    return sample_exit_chain(mu, law, domains, resolution, rng, params);
}

MonteCarloEstimate laplace_functional(const AtomicMeasure& mu, const SimulationLaw& law,
                                      const Domain1D& domain, std::pair<double, double> f,
                                      std::size_t resolution, std::size_t replicates,
                                      std::uint64_t seed, const SchemeParams& params) {
    if (f.first < 0.0 || f.second < 0.0 || !std::isfinite(f.first) || !std::isfinite(f.second))
        throw std::invalid_argument("laplace_functional: f must be finite and >= 0");
    if (replicates < 1)
        throw std::invalid_argument("laplace_functional: replicates must be >= 1");

    std::vector<double> values(replicates);
    parallel_replicates(replicates, [&](std::size_t rep) {
        Rng rng(child_seed(seed, "sbm.laplace", rep));
        const auto xd = sample_exit_measure(mu, law, domain, resolution, rng, params);
        const double integral =
            f.first * xd.mass_at_left(domain) + f.second * xd.mass_at_right(domain);
        values[rep] = std::exp(-integral);
    });

    const double mean =
        std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(replicates);
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    const double sd = replicates > 1 ? std::sqrt(ss / static_cast<double>(replicates - 1)) : 0.0;
    return {mean, sd / std::sqrt(static_cast<double>(replicates)), replicates};
}

}  // namespace exitlab
