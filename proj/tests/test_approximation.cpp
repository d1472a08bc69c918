#include <algorithm>
#include <cmath>
#include <random>

#include <doctest.h>

#include "fixtures.hpp"
#include "iacm/approximation.hpp"
#include "iacm/errors.hpp"
#include "oracles.hpp"

using namespace iacm;

namespace {

CausalModelSpec plain(std::size_t bx, std::size_t by) { return {ModelVariant::XtoY, bx, by}; }

std::vector<double> as_vector(const DiscreteDistribution& p) { return {p.mass().begin(), p.mass().end()}; }

double max_abs_diff(const DiscreteDistribution& a, const DiscreteDistribution& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

// Distribution over the model space with all mass inside the support.
DiscreteDistribution random_supported_joint(const SupportSet& s, std::mt19937_64& rng) {
    auto mass = gen::simplex(s.shape.cells(), rng, 0.5);
    double total = 0.0;
    for (std::size_t i = 0; i < mass.size(); ++i) {
        if (!s.member[i]) mass[i] = 0.0;
        total += mass[i];
    }
    if (total == 0.0) {
        const auto first = std::find(s.member.begin(), s.member.end(), true) - s.member.begin();
        mass[static_cast<std::size_t>(first)] = 1.0;
        total = 1.0;
    }
    for (double& v : mass) v /= total;
    return DiscreteDistribution(s.shape, mass);
}

BlockInputs block_inputs_of(const ModelLayout& layout, const DiscreteDistribution& p) {
    BlockInputs in{marginalize(p, MarginalSelector(layout.observed.axes)), {}};
    for (const auto& env : layout.environments) in.environments.push_back(marginalize(p, MarginalSelector(env.axes)));
    return in;
}

} // namespace

TEST_SUITE("approximation") {

TEST_CASE("constraint matrix dimensions") {
    const auto a2 = create_constraint_matrix(2, 2);
    CHECK(a2.rows() == 6);
    CHECK(a2.cols() == 16);
    for (std::size_t j = 0; j < 16; ++j) CHECK(a2(0, j) == 1.0);
    auto ones = [&](std::size_t r) {
        const auto row = a2.row(r);
        return std::count(row.begin(), row.end(), 1.0);
    };
    CHECK(ones(1) == 8);
    CHECK(ones(2) == 8);
    for (std::size_t r = 3; r < 6; ++r) CHECK(ones(r) == 4);

    const auto a3 = create_constraint_matrix(3, 3);
    CHECK(a3.rows() == 15);
    CHECK(a3.cols() == 243);
    CHECK_THROWS_AS(create_constraint_matrix(5, 2), UnsupportedModel);
}

TEST_CASE("constraint matrix equals the definition-built oracle") {
    for (std::size_t bx = 2; bx <= 4; ++bx) {
        for (std::size_t by = 2; by <= 4; ++by) {
            CAPTURE(bx);
            CAPTURE(by);
            const auto a = create_constraint_matrix(bx, by);
            const auto want = oracle::bivariate_constraints(bx, by);
            REQUIRE(a.rows() == want.size());
            CHECK(a.rows() == bx * (2 * by - 1));
            bool same = true;
            for (std::size_t r = 0; r < a.rows(); ++r) {
                same = same && std::equal(a.row(r).begin(), a.row(r).end(), want[r].begin(), want[r].end());
            }
            CHECK(same);
        }
    }
}

TEST_CASE("constraint vector of simple inputs") {
    CHECK(get_constraint_distribution(fixture::uniform_inputs(2, 2)) ==
          std::vector<double>{1, 0.5, 0.5, 0.25, 0.25, 0.25});
    CHECK(get_constraint_distribution(fixture::deterministic_inputs(false, 1.0)) ==
          std::vector<double>{1, 1, 0, 0, 0, 0});

    // The uniform instance has a feasible point with a quarter at 0000, 0111,
    // 1000 and 1111.
    std::vector<double> star(16, 0.0);
    for (std::size_t i : {0b0000, 0b0111, 0b1000, 0b1111}) star[i] = 0.25;
    CHECK(create_constraint_matrix(2, 2).multiply(star) == get_constraint_distribution(fixture::uniform_inputs(2, 2)));
}

TEST_CASE("uniform inputs fit the model exactly") {
    for (std::size_t bx = 2; bx <= 3; ++bx) {
        for (std::size_t by = 2; by <= 3; ++by) {
            for (ErrorMode mode : {ErrorMode::Local, ErrorMode::Global}) {
                const auto r = iacm::iacm(fixture::uniform_inputs(bx, by), plain(bx, by), mode);
                CHECK(r.s_value == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(r.global_error == doctest::Approx(0.0).epsilon(1e-9));
                CHECK(r.local_error == doctest::Approx(0.0).epsilon(1e-9));
                CHECK(r.mode == mode);
            }
        }
    }
}

TEST_CASE("noiseless identity data") {
    const auto in = fixture::deterministic_inputs(false);
    const auto r = iacm::iacm(in, plain(2, 2));
    CHECK(r.s_value == doctest::Approx(1.0));
    CHECK(r.global_error <= 1e-12);
    // The only consistent joint puts half on 0001 and half on 1101.
    CHECK(r.p_hat[0b0001] == doctest::Approx(0.5));
    CHECK(r.p_hat[0b1101] == doctest::Approx(0.5));

    const auto dec = iacm::iacm(in, CausalModelSpec{ModelVariant::XtoYMonoDec, 2, 2}, ErrorMode::Global);
    CHECK(dec.global_error > 0.0);
    CHECK(dec.degenerate());
    CHECK(std::isinf(dec.error()));
    CHECK_THROWS_AS(require_projection(dec), DegenerateModel);

    const auto inc = iacm::iacm(in, CausalModelSpec{ModelVariant::XtoYMonoInc, 2, 2});
    CHECK(inc.s_value == doctest::Approx(1.0));
    CHECK(max_abs_diff(require_projection(inc), inc.p_hat) <= 1e-12);
}

TEST_CASE("objective value agrees with basis enumeration") {
    std::mt19937_64 rng(41);
    const auto a = oracle::bivariate_constraints(2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        const auto in = fixture::random_inputs(2, 2, rng, 0.2);
        for (ModelVariant v : {ModelVariant::XtoY, ModelVariant::XtoYMonoInc, ModelVariant::XtoYMonoDec}) {
            const CausalModelSpec spec{v, 2, 2};
            const auto r = iacm::iacm(in, spec);
            const auto best = oracle::lp_by_enumeration(a, get_constraint_distribution(in), build_objective(spec));
            REQUIRE(best.has_value());
            CHECK(std::abs(r.s_value - best->objective) <= 1e-7);
        }
    }
}

TEST_CASE("projection properties on random instances") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 120; ++trial) {
        const std::size_t bx = gen::range(2, 3, rng);
        const std::size_t by = gen::range(2, 3, rng);
        const auto in = fixture::random_inputs(bx, by, rng, trial % 3 == 0 ? 0.3 : 0.0);
        const auto r = iacm::iacm(in, plain(bx, by), ErrorMode::Global);
        if (r.degenerate()) {
            CHECK(r.s_value <= 1e-12);
            continue;
        }
        const auto support = build_support(plain(bx, by));

        // Feasibility of the maximizer.
        CHECK(max_abs_diff(marginalize(r.p_hat, MarginalSelector({0, 1})), in.joint) <= 1e-7);
        for (std::size_t a = 0; a < bx; ++a) {
            CHECK(max_abs_diff(marginalize(r.p_hat, MarginalSelector({2 + a})), in.interventional[a]) <= 1e-7);
        }
        // Re-weighting stays inside the support and is the KL projection.
        for (std::size_t i = 0; i < support.member.size(); ++i) {
            if (!support.member[i]) CHECK((*r.p_tilde)[i] == 0.0);
        }
        CHECK(std::abs(r.global_error - kl_divergence(*r.p_tilde, r.p_hat)) <= 1e-9);
        CHECK(std::abs(r.global_error + std::log(r.s_value)) <= 1e-9);
        CHECK(r.local_error <= r.global_error + 1e-9);
        CHECK(r.error() == r.global_error);

        if (bx == 2 && by == 2) {
            const double inc = iacm::iacm(in, CausalModelSpec{ModelVariant::XtoYMonoInc, 2, 2}).s_value;
            const double dec = iacm::iacm(in, CausalModelSpec{ModelVariant::XtoYMonoDec, 2, 2}).s_value;
            CHECK(r.s_value >= std::max(inc, dec) - 1e-9);
        }
    }
}

TEST_CASE("objective value does not depend on the pivot order") {
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const auto in = fixture::random_inputs(3, 2, rng, 0.3);
        LpOptions bland;
        bland.degeneracy_limit = 0;
        LpOptions dantzig;
        dantzig.degeneracy_limit = 100000;
        const double s0 = iacm::iacm(in, plain(3, 2)).s_value;
        CHECK(std::abs(iacm::iacm(in, plain(3, 2), ErrorMode::Local, bland).s_value - s0) <= 1e-7);
        CHECK(std::abs(iacm::iacm(in, plain(3, 2), ErrorMode::Local, dantzig).s_value - s0) <= 1e-7);
    }
}

TEST_CASE("data generated inside a model support fits that model") {
    std::mt19937_64 rng(44);
    std::vector<CausalModelSpec> specs{plain(2, 2), plain(3, 2), plain(2, 3), {ModelVariant::XtoYMonoInc, 2, 2},
                                       {ModelVariant::XtoYMonoDec, 2, 2}, {ModelVariant::YtoX, 3, 2}};
    for (ModelVariant v : {ModelVariant::ZConfounder, ModelVariant::ZConfounderHidden, ModelVariant::ZChain,
                           ModelVariant::ZChainHidden, ModelVariant::ZCollider, ModelVariant::ZColliderHidden}) {
        specs.push_back({v, 2, 2, 2});
    }
    for (const auto& spec : specs) {
        CAPTURE(variant_name(spec));
        const auto support = build_support(spec);
        for (int trial = 0; trial < 5; ++trial) {
            const auto p = random_supported_joint(support, rng);
            const auto r = iacm::iacm(block_inputs_of(support.layout, p), spec);
            CHECK(r.s_value == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(r.global_error <= 1e-9);
            CHECK(r.local_error <= 1e-9);
        }
    }
}

TEST_CASE("reverse model is the forward model on swapped inputs") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 10; ++trial) {
        const auto in = fixture::random_inputs(3, 2, rng);
        const auto rev = iacm::iacm(in, CausalModelSpec{ModelVariant::YtoX, 2, 3});
        const auto fwd = iacm::iacm(in, plain(3, 2));
        CHECK(rev.s_value == fwd.s_value);
        CHECK(rev.local_error == fwd.local_error);
        CHECK_THROWS_AS(iacm::iacm(in, plain(2, 3)), ContractViolation);
    }
}

TEST_CASE("ANM objectives report the weighted optimum") {
    std::mt19937_64 rng(46);
    for (int trial = 0; trial < 10; ++trial) {
        const auto in = fixture::random_inputs(2, 2, rng);
        const double s_plain = iacm::iacm(in, plain(2, 2)).s_value;
        for (int k = 1; k <= 4; ++k) {
            const CausalModelSpec spec{ModelVariant::AnmObjective, 2, 2, 2, k};
            const auto r = iacm::iacm(in, spec);
            const auto c = build_objective(spec);
            double s = 0.0;
            for (std::size_t i = 0; i < 16; ++i) s += c[i] * r.p_hat[i];
            CHECK(r.s_value == doctest::Approx(s).epsilon(1e-9));
            CHECK(r.support_mass <= 1.0 + 1e-12);
            CHECK(r.s_value <= 2.0 + 1e-9);
            // S_k weights every support cell by at most 2.
            CHECK(r.s_value <= 2.0 * s_plain + 1e-9);
        }
    }
}

TEST_CASE("missing interventions fall back to uniform") {
    const std::vector<Sample> obs{{0, 0}, {1, 1}, {0, 1}};
    const std::vector<std::vector<int>> interventional{{0, 0, 1}};
    const auto in = make_empirical_inputs(obs, interventional, 3, 2);
    CHECK(in.fallback_used == std::vector<bool>{false, true, true});
    CHECK(as_vector(in.interventional[0]) == std::vector<double>{2.0 / 3.0, 1.0 / 3.0});
    CHECK(as_vector(in.interventional[2]) == std::vector<double>{0.5, 0.5});
    CHECK_NOTHROW(iacm::iacm(in, plain(3, 2)));
}

TEST_CASE("inconsistent inputs are rejected") {
    auto in = fixture::uniform_inputs(2, 2);
    in.interventional.pop_back();
    CHECK_THROWS_AS(iacm::iacm(in, plain(2, 2)), ContractViolation);
    CHECK_THROWS_AS(iacm::iacm(fixture::uniform_inputs(2, 2), CausalModelSpec{ModelVariant::ZChain, 2, 2}),
                    UnsupportedModel);
}

TEST_CASE("time lag shifting") {
    const std::vector<Sample> rows{{0, 10}, {1, 11}, {2, 12}};
    CHECK(shift_for_time_lag(rows, 0) == rows);
    CHECK(shift_for_time_lag(rows, 1) == std::vector<Sample>{{0, 11}, {1, 12}});
    CHECK_THROWS_AS(shift_for_time_lag(rows, 3), InsufficientData);

    const std::vector<TimedSample> timed{{0, 5, -1}, {1, 6, 1}, {0, 7, 0}};
    CHECK(shift_for_time_lag(timed, 1) == std::vector<TimedSample>{{0, 6, -1}, {1, 7, 1}});
}

TEST_CASE("lag scan recovers the generating delay") {
    // y_t = x_{t-2} xor noise. Observational rows come first, then a block
    // under do(X=0) and a block under do(X=1).
    std::mt19937_64 rng(47);
    std::bernoulli_distribution coin(0.5);
    std::bernoulli_distribution flip(0.1);
    std::vector<TimedSample> rows;
    auto push = [&](int env, std::size_t count) {
        for (std::size_t i = 0; i < count; ++i) rows.push_back({env < 0 ? int(coin(rng)) : env, 0, env});
    };
    push(-1, 2000);
    push(0, 1000);
    push(1, 1000);
    for (std::size_t t = 0; t < rows.size(); ++t) {
        const int cause = t >= 2 ? rows[t - 2].x : int(coin(rng));
        rows[t].y = cause ^ int(flip(rng));
    }
    const auto scan = scan_time_lag(rows, 2, 2, 4);
    REQUIRE(scan.errors.size() == 5);
    CHECK(scan.best_lag == 2);
    for (std::size_t lag = 0; lag <= 4; ++lag) {
        if (lag != 2) CHECK(scan.errors[lag] > scan.errors[2]);
    }
}

}
