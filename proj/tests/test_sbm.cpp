#include <doctest.h>

#include <cmath>
#include <vector>

#include "exitlab/pde.hpp"
#include "exitlab/sbm.hpp"

using namespace exitlab;

namespace {

const Domain1D unit{0.0, 1.0};

struct MeanStderr {
    double mean;
    double se;
};

template <class F>
MeanStderr mc_mean(int reps, F&& draw) {
    double s = 0.0, s2 = 0.0;
    for (int r = 0; r < reps; ++r) {
        const double v = draw(r);
        s += v;
        s2 += v * v;
    }
    const double mean = s / reps;
    const double var = (s2 / reps - mean * mean) * reps / (reps - 1.0);
    return {mean, std::sqrt(var / reps)};
}

const GridFunction& u_one() {
    static const GridFunction u = solve_dirichlet_semilinear(unit, {1.0, 1.0}, 2048);
    return u;
}

const GridFunction& u_large_unit() {
    static const GridFunction u = solve_large_solution(unit, 2048);
    return u;
}

}  // namespace

TEST_CASE("exit measure: empty initial measure gives the zero measure") {
    Rng rng(1);
    auto xd = sample_exit_measure(AtomicMeasure{}, SimulationLaw::plain(), unit, 100, rng);
    CHECK(xd.total_mass() == 0.0);
}

TEST_CASE("exit measure: atom outside the closure is rejected") {
    Rng rng(1);
    auto mu = AtomicMeasure::point_mass(1.5, 1.0);
    CHECK_THROWS_AS(sample_exit_measure(mu, SimulationLaw::plain(), unit, 100, rng),
                    std::invalid_argument);
}

TEST_CASE("exit measure: atoms seeded on the boundary freeze immediately") {
    Rng rng(3);
    AtomicMeasure mu;
    mu.add(0.0, 0.25);
    auto xd = sample_exit_measure(mu, SimulationLaw::plain(), unit, 100, rng);
    CHECK(xd.mass_at_left(unit) == doctest::Approx(0.25));
    CHECK(xd.mass_at_right(unit) == 0.0);
}

TEST_CASE("exit measure: critical branching conserves mean mass") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    auto ms = mc_mean(1200, [&](int r) {
        Rng rng(child_seed(101, "sbm.meanmass", r));
        return sample_exit_measure(mu, SimulationLaw::plain(), unit, 1000, rng).total_mass();
    });
    CHECK(std::abs(ms.mean - 1.0) <= 3.0 * ms.se);
}

TEST_CASE("exit measure: killing strictly removes mean mass") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    auto law = SimulationLaw::killed(u_one(), 1);
    auto ms = mc_mean(600, [&](int r) {
        Rng rng(child_seed(102, "sbm.killmass", r));
        return sample_exit_measure(mu, law, unit, 1000, rng).total_mass();
    });
    CHECK(ms.mean + 3.0 * ms.se < 1.0);
}

TEST_CASE("laplace functional: f = 0 gives exactly 1 with zero stderr") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    auto est = laplace_functional(mu, SimulationLaw::plain(), unit, {0.0, 0.0}, 200, 150, 5);
    CHECK(est.estimate == 1.0);
    CHECK(est.stderr_ == 0.0);
}

TEST_CASE("laplace functional: agrees with the boundary-value solver") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    auto est = laplace_functional(mu, SimulationLaw::plain(), unit, {1.0, 1.0}, 1000, 1500, 77);
    const double target = std::exp(-u_one()(0.5));
    CHECK(std::abs(est.estimate - target) <= 3.0 * est.stderr_);
}

TEST_CASE("laplace functional: independent clusters multiply") {
    AtomicMeasure mu;
    mu.add(0.25, 1.0);
    mu.add(0.75, 1.0);
    auto est = laplace_functional(mu, SimulationLaw::plain(), unit, {1.0, 1.0}, 1000, 1500, 78);
    const double target = std::exp(-u_one()(0.25) - u_one()(0.75));
    CHECK(std::abs(est.estimate - target) <= 3.0 * est.stderr_);
}

TEST_CASE("exit chain: a chain of length one is a single exit sample") {
    auto mu = AtomicMeasure::point_mass(0.5, 0.5);
    const Domain1D d1 = exhaustion_subdomain(unit, 1);
    Rng rng1(child_seed(9, "chain", 0));
    Rng rng2(child_seed(9, "chain", 0));
    auto chain = sample_exit_chain(mu, SimulationLaw::plain(), {d1}, 500, rng1);
    auto single = sample_exit_measure(mu, SimulationLaw::plain(), d1, 500, rng2);
    REQUIRE(chain.size() == 1);
    CHECK(chain[0].mass_at_left(d1) == single.mass_at_left(d1));
    CHECK(chain[0].mass_at_right(d1) == single.mass_at_right(d1));
}

TEST_CASE("exit chain: exhaustion must strictly increase") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    Rng rng(5);
    const Domain1D d1 = exhaustion_subdomain(unit, 1);
    CHECK_THROWS_AS(sample_exit_chain(mu, SimulationLaw::plain(), {d1, d1}, 100, rng),
                    std::invalid_argument);
}

TEST_CASE("exit chain: mean total mass is constant along the chain") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    auto domains = exhaustion_schedule(unit, 3);
    const int reps = 700;
    std::vector<double> sums(3, 0.0), sums2(3, 0.0);
    for (int r = 0; r < reps; ++r) {
        Rng rng(child_seed(103, "sbm.chainmass", r));
        auto chain = sample_exit_chain(mu, SimulationLaw::plain(), domains, 800, rng);
        for (int k = 0; k < 3; ++k) {
            const double m = chain[k].total_mass();
            sums[k] += m;
            sums2[k] += m * m;
        }
    }
    for (int k = 0; k < 3; ++k) {
        const double mean = sums[k] / reps;
        const double var = (sums2[k] / reps - mean * mean) * reps / (reps - 1.0);
        const double se = std::sqrt(var / reps);
        CHECK(std::abs(mean - 1.0) <= 3.0 * se);
    }
}

TEST_CASE("exit chain: exp(-<X_k, u1>) has constant mean in k") {
    // Mean-value property of the finite-boundary solution along the chain.
    auto mu = AtomicMeasure::point_mass(0.5, 0.5);
    auto domains = exhaustion_schedule(unit, 4);
    const auto& u1 = u_one();
    const int reps = 1500;
    std::vector<std::vector<double>> vals(4);
    for (int r = 0; r < reps; ++r) {
        Rng rng(child_seed(104, "sbm.mart", r));
        auto chain = sample_exit_chain(mu, SimulationLaw::plain(), domains, 500, rng);
        for (int k = 0; k < 4; ++k) {
            double integral = 0.0;
            for (const auto& a : chain[k].atoms) integral += a.weight * u1(a.point);
            vals[k].push_back(std::exp(-integral));
        }
    }
    // Paired differences against stage 0.
    for (int k = 1; k < 4; ++k) {
        double s = 0.0, s2 = 0.0;
        for (int r = 0; r < reps; ++r) {
            const double d = vals[k][r] - vals[0][r];
            s += d;
            s2 += d * d;
        }
        const double mean = s / reps;
        const double var = (s2 / reps - mean * mean) * reps / (reps - 1.0);
        CHECK(std::abs(mean) <= 3.0 * std::sqrt(var / reps));
    }
}

TEST_CASE("extinction-conditioned chain: no mass ever reaches the boundary") {
    auto mu = AtomicMeasure::point_mass(0.5, 0.2);
    for (int r = 0; r < 40; ++r) {
        Rng rng(child_seed(105, "sbm.ext", r));
        auto chain = sample_extinction_conditioned(mu, u_large_unit(), unit, 2, 400, rng);
        REQUIRE(chain.size() == 3);
        CHECK(chain.back().total_mass() == 0.0);
    }
}

TEST_CASE("extinction-conditioned law: stronger killing gives smaller subdomain mass") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    const Domain1D d1 = exhaustion_subdomain(unit, 1);
    auto law_u = SimulationLaw::extinction_conditioned(u_large_unit());
    auto law_n = SimulationLaw::killed(u_one(), 1);
    auto m_u = mc_mean(500, [&](int r) {
        Rng rng(child_seed(106, "sbm.ord.u", r));
        return sample_exit_measure(mu, law_u, d1, 600, rng).total_mass();
    });
    auto m_n = mc_mean(500, [&](int r) {
        Rng rng(child_seed(106, "sbm.ord.n", r));
        return sample_exit_measure(mu, law_n, d1, 600, rng).total_mass();
    });
    CHECK(m_u.mean + 3.0 * std::hypot(m_u.se, m_n.se) < m_n.mean);
}

TEST_CASE("scaling: doubling the resolution leaves the law unchanged") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    auto a = laplace_functional(mu, SimulationLaw::plain(), unit, {1.0, 1.0}, 500, 1200, 80);
    auto b = laplace_functional(mu, SimulationLaw::plain(), unit, {1.0, 1.0}, 1000, 1200, 81);
    CHECK(std::abs(a.estimate - b.estimate) <= 3.0 * std::hypot(a.stderr_, b.stderr_));
}

TEST_CASE("determinism: a fixed seed reproduces the sample stream bit-exactly") {
    auto mu = AtomicMeasure::point_mass(0.4, 0.7);
    Rng r1(999), r2(999);
    auto a = sample_exit_measure(mu, SimulationLaw::plain(), unit, 300, r1);
    auto b = sample_exit_measure(mu, SimulationLaw::plain(), unit, 300, r2);
    REQUIRE(a.atoms.size() == b.atoms.size());
    for (std::size_t i = 0; i < a.atoms.size(); ++i) {
        CHECK(a.atoms[i].point == b.atoms[i].point);
        CHECK(a.atoms[i].weight == b.atoms[i].weight);
    }
    auto e1 = laplace_functional(mu, SimulationLaw::plain(), unit, {2.0, 0.0}, 200, 64, 4242);
    auto e2 = laplace_functional(mu, SimulationLaw::plain(), unit, {2.0, 0.0}, 200, 64, 4242);
    CHECK(e1.estimate == e2.estimate);
    CHECK(e1.stderr_ == e2.stderr_);
}

TEST_CASE("population cap: exceeding it raises a distinct error") {
    auto mu = AtomicMeasure::point_mass(0.5, 1.0);
    SchemeParams params;
    params.population_cap = 80;
    Rng rng(6);
    CHECK_THROWS_AS(
        sample_exit_measure(mu, SimulationLaw::plain(), unit, 200, rng, params),
        ResourceError);
    params.population_cap = 100;
    Rng rng2(7);
    CHECK_THROWS_AS(
        sample_exit_measure(mu, SimulationLaw::plain(), unit, 100, rng2, params),
        ResourceError);
}
