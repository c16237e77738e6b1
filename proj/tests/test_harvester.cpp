#include <doctest.h>

#include <cmath>
#include <random>

#include "pvtag/errors.hpp"
#include "pvtag/harvester.hpp"

using namespace pvtag;

namespace {

PvModuleSpec single_cell(double area_cm2 = 1.0) {
    PvModuleSpec m;
    m.cell = {0.13, 0.88, area_cm2};
    return m;
}

}  // namespace

TEST_CASE("bending factor anchor points") {
    CHECK(bending_factor(kFlat) == 1.0);
    CHECK(bending_factor(5.0) == 0.8);
    CHECK(bending_factor(20.0) == 1.0);
    CHECK(bending_factor(200.0) == 1.0);
    // 0.8 + 0.2 * log2(2) / log2(4) = 0.9
    CHECK(bending_factor(10.0) == doctest::Approx(0.9).epsilon(1e-15));
    CHECK_THROWS_AS(bending_factor(4.99), DomainError);
    CHECK_THROWS_AS(bending_factor(0.0), DomainError);
}

TEST_CASE("bending factor is monotone and continuous at 20 mm") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> radius(5.0, 25.0);
    for (int i = 0; i < 1000; ++i) {
        double a = radius(gen), b = radius(gen);
        if (a > b) std::swap(a, b);
        const double fa = bending_factor(a), fb = bending_factor(b);
        REQUIRE(fa <= fb);
        REQUIRE(fa >= 0.8);
        REQUIRE(fb <= 1.0);
    }
    CHECK(bending_factor(std::nextafter(20.0, 0.0)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("module power of a single indoor cell") {
    const auto out = module_power(single_cell(), IlluminationEnv::indoor());
    CHECK(out.power_w == doctest::Approx(13e-6).epsilon(1e-12));
    CHECK(out.vmpp_v == 0.88);
}

TEST_CASE("1 mm2 of cell in full sun") {
    const auto out = module_power(single_cell(0.01), IlluminationEnv::outdoor());
    CHECK(out.power_w == doctest::Approx(130e-6).epsilon(1e-12));
}

TEST_CASE("six cells in series clear a 3 V gate, three do not") {
    PvModuleSpec m = single_cell();
    m.series_count = 6;
    CHECK(m.vmpp_v() == doctest::Approx(5.28).epsilon(1e-12));
    CHECK(module_power(m, IlluminationEnv::indoor()).vmpp_v >= 3.0);
    m.series_count = 3;
    CHECK(module_power(m, IlluminationEnv::indoor()).vmpp_v == doctest::Approx(2.64).epsilon(1e-12));
    CHECK(m.vmpp_v() < 3.0);
}

TEST_CASE("module power is linear in irradiance, area and efficiency") {
    std::mt19937_64 gen(21);
    std::uniform_real_distribution<double> k(0.1, 3.0), eff(0.02, 0.1), area(0.01, 5.0);
    for (int i = 0; i < 300; ++i) {
        PvModuleSpec m = single_cell(area(gen));
        m.cell.efficiency = eff(gen);
        IlluminationEnv env = IlluminationEnv::indoor();
        const double base = module_power(m, env).power_w;
        const double s = k(gen);

        IlluminationEnv brighter = env;
        brighter.irradiance_w_cm2 *= s;
        REQUIRE(module_power(m, brighter).power_w == doctest::Approx(base * s).epsilon(1e-12));

        PvModuleSpec bigger = m;
        bigger.cell.active_area_cm2 *= s;
        REQUIRE(module_power(bigger, env).power_w == doctest::Approx(base * s).epsilon(1e-12));

        PvModuleSpec better = m;
        better.cell.efficiency *= std::min(s, 3.0);
        if (better.cell.efficiency < kMaxPlausibleEfficiency) {
            REQUIRE(module_power(better, env).power_w ==
                    doctest::Approx(base * std::min(s, 3.0)).epsilon(1e-12));
        }
    }
}

TEST_CASE("series count sets voltage, parallel count sets current") {
    PvModuleSpec m = single_cell();
    const auto env = IlluminationEnv::indoor();
    const auto one = module_power(m, env);
    m.series_count = 4;
    const auto series = module_power(m, env);
    CHECK(series.vmpp_v == doctest::Approx(4 * one.vmpp_v));
    CHECK(series.power_w / m.total_area_cm2() == doctest::Approx(one.power_w / 1.0));
    m.series_count = 1;
    m.parallel_count = 3;
    const auto parallel = module_power(m, env);
    CHECK(parallel.vmpp_v == one.vmpp_v);
    CHECK(parallel.power_w == doctest::Approx(3 * one.power_w));
}

TEST_CASE("bending derates module power") {
    PvModuleSpec m = single_cell();
    m.bend_radius_mm = 5.0;
    CHECK(module_power(m, IlluminationEnv::indoor()).power_w == doctest::Approx(13e-6 * 0.8));
    m.bend_radius_mm = 3.0;
    CHECK_THROWS_AS(module_power(m, IlluminationEnv::indoor()), ValidationError);
}

TEST_CASE("required area for the sensor and IC loads") {
    const PvCellSpec cell{0.13, 0.88, 1.0};
    const double temp = required_area_cm2(15e-6, cell, IlluminationEnv::outdoor(), kFlat);
    // 15e-6 / (0.13 * 0.1)
    CHECK(temp == doctest::Approx(1.153846e-3).epsilon(1e-6));
    CHECK(temp * 100.0 < 1.0);  // under 1 mm2

    const double orient = required_area_cm2(350e-6, cell, IlluminationEnv::indoor(), kFlat);
    CHECK(std::abs(orient - 26.92) <= 0.01);

    const double bent = required_area_cm2(15e-6, cell, IlluminationEnv::outdoor(), 5.0);
    CHECK(bent / temp == doctest::Approx(1.25));

    CHECK_THROWS_AS(required_area_cm2(0.0, cell, IlluminationEnv::outdoor(), kFlat), DomainError);
    CHECK_THROWS_AS(required_area_cm2(-1e-6, cell, IlluminationEnv::outdoor(), kFlat), DomainError);
    CHECK(required_area_cm2(1e-15, cell, IlluminationEnv::outdoor(), kFlat) < 1e-12);
}

TEST_CASE("required area round-trips through module power") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> load(1e-6, 1e-2), bend(5.0, 40.0);
    for (int i = 0; i < 500; ++i) {
        const PvCellSpec cell{0.13, 0.88, 1.0};
        const auto env = (i % 2) ? IlluminationEnv::indoor() : IlluminationEnv::outdoor();
        const double p = load(gen);
        const BendRadius r = (i % 3) ? BendRadius{bend(gen)} : kFlat;
        PvModuleSpec m;
        m.cell = cell;
        m.cell.active_area_cm2 = required_area_cm2(p, cell, env, r);
        m.bend_radius_mm = r;
        REQUIRE(module_power(m, env).power_w == doctest::Approx(p).epsilon(1e-9));
    }
}

TEST_CASE("indoor efficiency override applies only indoors") {
    PvModuleSpec m = single_cell();
    IlluminationEnv indoor = IlluminationEnv::indoor();
    indoor.indoor_efficiency = 0.2;
    CHECK(module_power(m, indoor).power_w == doctest::Approx(20e-6));
    IlluminationEnv outdoor = IlluminationEnv::outdoor();
    outdoor.indoor_efficiency = 0.2;
    CHECK(module_power(m, outdoor).power_w == doctest::Approx(13e-3));
}

TEST_CASE("cell and environment invariants") {
    CHECK_THROWS_AS((PvCellSpec{0.0, 0.88, 1.0}.validate()), ValidationError);
    CHECK_THROWS_AS((PvCellSpec{0.4, 0.88, 1.0}.validate()), ValidationError);
    CHECK_THROWS_AS((PvCellSpec{0.13, 0.0, 1.0}.validate()), ValidationError);
    CHECK_THROWS_AS((PvCellSpec{0.13, 0.88, 0.0}.validate()), ValidationError);
    IlluminationEnv dark = IlluminationEnv::indoor();
    dark.irradiance_w_cm2 = 0.0;
    CHECK_THROWS_AS(dark.validate(), ValidationError);
    CHECK(default_irradiance_w_cm2(EnvClass::outdoor_sun) == 0.1);
    CHECK(default_irradiance_w_cm2(EnvClass::indoor_lit) == 100e-6);
    CHECK(parse_env_class("outdoor_sun") == EnvClass::outdoor_sun);
    CHECK_THROWS_AS(parse_env_class("moonlight"), ValidationError);
}
