#include <cmath>

#include "doctest.h"
#include "gen.hpp"
#include "swipt/errors.hpp"
#include "swipt/model.hpp"

using namespace swipt;

TEST_CASE("derived constants at the default point") {
    const auto c = derive_constants(SystemParams{});
    CHECK(c.phi == 0.5);
    CHECK(c.n_tot0 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.n_tot1 == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(c.n_tot2 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.k1 == doctest::Approx(17.5).epsilon(1e-14));
    CHECK(c.k2 == doctest::Approx(2.625).epsilon(1e-14));
    CHECK(c.k3 == doctest::Approx(5.75).epsilon(1e-14));
    CHECK(c.gbar0 == doctest::Approx(10.0).epsilon(1e-14));
    CHECK(c.j1 == doctest::Approx(5.75 / 70.0).epsilon(1e-14));
    CHECK(c.j2 == doctest::Approx(-1.15).epsilon(1e-14));
    CHECK(c.nc_av == doctest::Approx(1.0 + 2.625 / 5.75).epsilon(1e-14));
    CHECK(c.decay_rate() == doctest::Approx(c.k2 / c.k1).epsilon(1e-14));
}

TEST_CASE("two-hop SNR examples") {
    const auto c = derive_constants(SystemParams{});
    CHECK(two_hop_snr(c, 0.0, 3.0) == 0.0);
    CHECK(two_hop_snr(c, 3.0, 0.0) == 0.0);
    CHECK(two_hop_snr(c, 1.0, 1.0) == doctest::Approx(17.5 / 8.375).epsilon(1e-14));
    CHECK(two_hop_snr(c, 2.0, 1.0) > two_hop_snr(c, 1.0, 1.0));
}

TEST_CASE("degenerate splits are rejected with their own error") {
    SystemParams p;
    p.theta = 0.0;
    CHECK_THROWS_AS(derive_constants(p), DegenerateConfigError);
    p.theta = 1.0;
    CHECK_THROWS_AS(derive_constants(p), DegenerateConfigError);
}

TEST_CASE("out-of-range inputs name the field") {
    auto expect_field = [](SystemParams p, const char* field) {
        try {
            validate(p);
            FAIL("accepted invalid ", field);
        } catch (const ValidationError& e) {
            CHECK(e.field() == field);
        }
    };
    SystemParams p;
    p.theta = 1.5;
    expect_field(p, "theta");
    p = {};
    p.eta = 0.0;
    expect_field(p, "eta");
    p = {};
    p.p0 = -1;
    expect_field(p, "p0");
    p = {};
    p.d1 = 0;
    expect_field(p, "d1");
    p = {};
    p.n2c = -0.1;
    expect_field(p, "n2c");
}

TEST_CASE("dB conversion round-trips") {
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK(linear_to_db(1000.0) == doctest::Approx(30.0).epsilon(1e-15));
    for (double db = -10; db <= 40; db += 2.5) CHECK(linear_to_db(db_to_linear(db)) == doctest::Approx(db).epsilon(1e-13));
}

TEST_CASE("property: constants have their signs and the SNR its bounds") {
    gen::Gen g(11);
    for (int i = 0; i < 200; ++i) {
        const auto p = g.params();
        INFO(gen::describe(p));
        const auto c = derive_constants(p);
        CHECK(c.k1 > 0);
        CHECK(c.k2 > 0);
        CHECK(c.k3 > 0);
        CHECK(c.j1 > 0);
        CHECK(c.j2 < -1);
        CHECK(c.phi == 1.0 - p.theta);
        const double x = g.log_uniform(1e-3, 30), y = g.log_uniform(1e-3, 30);
        const double s = two_hop_snr(c, x, y);
        CHECK(s >= 0);
        CHECK(s < c.k1 * x / c.k2);
        CHECK(two_hop_snr(c, x * 1.5, y) >= s);
        CHECK(two_hop_snr(c, x, y * 1.5) >= s);
    }
}

TEST_CASE("property: joint scaling of power and noise leaves the SNR unchanged") {
    gen::Gen g(12);
    for (int i = 0; i < 100; ++i) {
        const auto p = g.params();
        const double k = g.log_uniform(1e-2, 1e2);
        auto q = p;
        q.p0 *= k;
        for (double* n : {&q.n0a, &q.n0c, &q.n1a, &q.n1c, &q.n2a, &q.n2c}) *n *= k;
        INFO(gen::describe(p), " c=", k);
        const auto a = derive_constants(p);
        const auto b = derive_constants(q);
        CHECK(b.k1 == doctest::Approx(a.k1 * k * k).epsilon(1e-12));
        CHECK(b.k2 == doctest::Approx(a.k2 * k * k).epsilon(1e-12));
        CHECK(b.k3 == doctest::Approx(a.k3 * k * k).epsilon(1e-12));
        CHECK(b.gbar0 == doctest::Approx(a.gbar0).epsilon(1e-13));
        CHECK(b.j1 / std::abs(b.j2) == doctest::Approx(a.j1 / std::abs(a.j2)).epsilon(1e-12));
        const double x = g.log_uniform(1e-2, 10), y = g.log_uniform(1e-2, 10);
        CHECK(two_hop_snr(b, x, y) == doctest::Approx(two_hop_snr(a, x, y)).epsilon(1e-12));
    }
}

TEST_CASE("derivation is a pure function") {
    gen::Gen g(13);
    for (int i = 0; i < 20; ++i) {
        const auto p = g.params();
        const auto a = derive_constants(p);
        const auto b = derive_constants(p);
        CHECK(a.k1 == b.k1);
        CHECK(a.k2 == b.k2);
        CHECK(a.k3 == b.k3);
        CHECK(a.j1 == b.j1);
        CHECK(a.j2 == b.j2);
        CHECK(a.nc_av == b.nc_av);
    }
}
