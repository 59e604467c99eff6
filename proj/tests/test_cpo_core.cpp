#include "cposlm/cpo_core.hpp"

#include <cmath>
#include <complex>
#include <random>

#include "cposlm/errors.hpp"
#include "doctest.h"

using namespace cposlm;

namespace {
SystemParams with_pump(double omega_c, double delta_c) {
    SystemParams p = paper_point();
    p.omega_c = omega_c;
    p.delta_c = delta_c;
    return p;
}
}  // namespace

TEST_CASE("population inversion closed form") {
    CHECK(population_inversion(with_pump(0.0, 0.0)) == doctest::Approx(-1.0));
    CHECK(population_inversion(with_pump(0.0, 3.7)) == doctest::Approx(-1.0));

    SystemParams sym{1e-12, 1e-12, 0.5, 0.0};  // T1/T2 = 1, 4*Oc^2 = 1
    CHECK(population_inversion(sym) == doctest::Approx(-0.5));

    // hand evaluation of -(1+Dc^2)/(1+Dc^2+4 Oc^2 T1/T2) at the paper point
    CHECK(population_inversion(with_pump(0.3, 0.05)) ==
          doctest::Approx(-0.052756216287).epsilon(1e-9));
}

TEST_CASE("population inversion bounds and monotonicity in pump power") {
    double prev = -2.0;
    for (double oc = 0.0; oc <= 3.0; oc += 0.05) {
        const double w0 = population_inversion(with_pump(oc, 0.17));
        CHECK(w0 >= -1.0);
        CHECK(w0 < 0.0);
        CHECK(w0 > prev);
        prev = w0;
    }
}

TEST_CASE("cpo denominator hand values") {
    const complexd d0 = cpo_denominator(with_pump(0.0, 0.0), 0.0);
    CHECK(d0.real() == doctest::Approx(0.02));
    CHECK(d0.imag() == doctest::Approx(0.0));

    const complexd d1 = cpo_denominator(with_pump(0.3, 0.05), 0.05);
    CHECK(d1.real() == doctest::Approx(0.375938).epsilon(1e-5));
    CHECK(d1.imag() == doctest::Approx(-0.070175).epsilon(1e-5));

    const complexd d2 = cpo_denominator(with_pump(1.0, 0.05), 0.05);
    CHECK(d2.real() == doctest::Approx(4.025037).epsilon(1e-5));
    CHECK(d2.imag() == doctest::Approx(-0.252632).epsilon(1e-4));
}

TEST_CASE("zero-pump susceptibility is the bare Lorentzian") {
    for (double ds = -10.0; ds <= 10.0; ds += 0.01) {
        const ComplexSusceptibility chi =
            susceptibility(with_pump(0.0, 0.0), {ds});
        CHECK(std::abs(chi.re - (-ds / (1 + ds * ds))) < 1e-12);
        CHECK(std::abs(chi.im - 1.0 / (1 + ds * ds)) < 1e-12);
    }
    const ComplexSusceptibility on_res = susceptibility(with_pump(0.0, 0.0), {0.0});
    CHECK(on_res.re == doctest::Approx(0.0));
    CHECK(on_res.im == doctest::Approx(1.0));
    const ComplexSusceptibility one_lw = susceptibility(with_pump(0.0, 0.0), {1.0});
    CHECK(one_lw.re == doctest::Approx(-0.5));
    CHECK(one_lw.im == doctest::Approx(0.5));
}

TEST_CASE("paper-point susceptibility: the CPO hole") {
    const ComplexSusceptibility chi = susceptibility(with_pump(0.3, 0.05), {0.0});
    CHECK(chi.re == doctest::Approx(0.005479482272).epsilon(1e-9));
    CHECK(chi.im == doctest::Approx(0.003069935757).epsilon(1e-9));
}

TEST_CASE("conjugation symmetry under detuning reflection") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    std::uniform_real_distribution<double> oc(0.0, 2.0);
    for (int trial = 0; trial < 500; ++trial) {
        const double omega = oc(rng);
        const double dc = u(rng);
        const double ds = u(rng);
        const complexd a = susceptibility(with_pump(omega, dc), {ds}).value();
        const complexd b = susceptibility(with_pump(omega, -dc), {-ds}).value();
        CHECK(std::abs(b - (-std::conj(a))) < 1e-12);
    }
}

TEST_CASE("deep saturation: absorption hole deepens with pump") {
    const double im0 = susceptibility(with_pump(0.0, 0.05), {0.0}).im;
    const double im3 = susceptibility(with_pump(0.3, 0.05), {0.0}).im;
    const double im1 = susceptibility(with_pump(1.0, 0.05), {0.0}).im;
    CHECK(im0 == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(im1 < im3);
    CHECK(im3 < im0);
    CHECK(im3 / im0 < 0.1);
    CHECK(im1 / im3 < 0.1);
}

TEST_CASE("no poles near the real probe axis") {
    for (double oc : {0.1, 0.3, 1.0}) {
        for (double dc : {0.0, 0.05, 0.5}) {
            double min_abs = 1e300;
            for (double ds = -10.0; ds <= 10.0; ds += 1e-3) {
                const double d = std::abs(cpo_denominator(with_pump(oc, dc), ds + dc));
                min_abs = std::min(min_abs, d);
            }
            CHECK(min_abs > 1e-6);
        }
    }
}

TEST_CASE("optical constants") {
    const OpticalConstants vac = optical_constants({0.0, 0.0}, 530e-9);
    CHECK(vac.n == doctest::Approx(1.0));
    CHECK(vac.alpha == doctest::Approx(0.0));

    // paper's dark-fringe convention Im chi = 0.4 gives alpha*d ~ 3.3e2
    const OpticalConstants dark = optical_constants({0.0, 0.4}, 530e-9);
    CHECK(dark.alpha == doctest::Approx(4.742e6).epsilon(1e-3));
    CHECK(dark.alpha * 71e-6 == doctest::Approx(336.7).epsilon(1e-3));

    const OpticalConstants disp = optical_constants({0.005479, 0.0}, 530e-9);
    CHECK(disp.n == doctest::Approx(1.0027395));

    CHECK_THROWS_AS(optical_constants({0.0, 0.0}, 0.0), config_error);
}

TEST_CASE("transmission") {
    CHECK(transmission(0.0, 71e-6) == doctest::Approx(1.0));
    CHECK(transmission(4.742e6, 71e-6) ==
          doctest::Approx(std::exp(-336.7)).epsilon(1e-2));
    CHECK(transmission(3.3e2 / 71e-6, 71e-6) == doctest::Approx(std::exp(-330.0)));
    CHECK(transmission(-1.0, 1.0) > 1.0);  // gain, unclamped
    CHECK_THROWS_AS(transmission(1.0, -1.0), config_error);
}

TEST_CASE("parameter validation") {
    SystemParams bad = paper_point();
    bad.t2_s = -1.0;
    CHECK_THROWS_AS(population_inversion(bad), config_error);
    bad = paper_point();
    bad.t1_s = 0.0;
    CHECK_THROWS_AS(susceptibility(bad, {0.0}), config_error);
    bad = paper_point();
    bad.omega_c = -0.1;
    CHECK_THROWS_AS(susceptibility(bad, {0.0}), config_error);
    CHECK_THROWS_AS(susceptibility(paper_point(), {std::nan("")}), config_error);
}
