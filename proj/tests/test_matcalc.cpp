#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "scc/matcalc.hpp"

using namespace scc;
namespace {
constexpr double kPi = std::numbers::pi;

// random complex matrix rescaled to a prescribed operator norm
CMat random_contraction(std::mt19937_64& rng, int size, double norm) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    CMat z(size, size);
    for (int r = 0; r < size; ++r)
        for (int c = 0; c < size; ++c) z(r, c) = Complex(gauss(rng), gauss(rng));
    return CMat(z * (norm / operator_norm(z)));
}
}  // namespace

TEST_CASE("operator norm basics") {
    CHECK(operator_norm(CMat(CMat::Identity(3, 3))) == doctest::Approx(1.0));
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 3.0;
    d(1, 1) = 1.0;
    CHECK(operator_norm(d) == doctest::Approx(3.0));
    CMat nil = CMat::Zero(2, 2);
    nil(0, 1) = 2.0;  // singular values of [[0,2],[0,0]] are {2, 0}
    CHECK(operator_norm(nil) == doctest::Approx(2.0));
}

TEST_CASE("tr_log_one_plus on diagonal and zero input") {
    CHECK(std::abs(tr_log_one_plus(CMat(CMat::Zero(3, 3)))) < 1e-15);
    CMat d = CMat::Zero(2, 2);
    d(0, 0) = 0.5;
    d(1, 1) = -0.25;
    CHECK(tr_log_one_plus(d).real() == doctest::Approx(std::log(1.5) + std::log(0.75)));
    CHECK(std::abs(tr_log_one_plus(d).imag()) < 1e-15);

    CMat big = CMat::Identity(2, 2) * 1.5;
    CHECK_THROWS_AS(tr_log_one_plus(big), domain_violation);
}

TEST_CASE("tr_log_series matches scalars and kills nilpotents") {
    CHECK(std::abs(tr_log_series(CMat(CMat::Zero(2, 2)), 1e-12)) < 1e-15);
    CMat s = CMat::Constant(1, 1, Complex(0.5, 0.0));
    CHECK(tr_log_series(s, 1e-13).real() == doctest::Approx(std::log(1.5)));
    CMat nil = CMat::Zero(2, 2);
    nil(0, 1) = 0.9;  // strictly upper triangular: every power is traceless
    CHECK(std::abs(tr_log_series(nil, 1e-13)) < 1e-15);
    CHECK_THROWS_AS(tr_log_series(nil, -1.0), invalid_input);
}

TEST_CASE("eigenvalue route agrees with the series oracle") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> nrm(0.05, 0.9);
    double worst = 0.0;
    double worst_im = 0.0;
    for (int t = 0; t < 500; ++t) {
        const int size = 1 + static_cast<int>(rng() % 4);
        const CMat z = random_contraction(rng, size, nrm(rng));
        const Complex a = tr_log_one_plus(z);
        const Complex b = tr_log_series(z, 1e-12);
        worst = std::max(worst, std::abs(a - b));
        worst_im = std::max(worst_im, std::abs(a.imag()) / (size * kPi / 2));
    }
    CHECK(worst < 1e-9);
    CHECK(worst_im < 1.0);  // |Im tr ln(1+Z)| < size * pi/2, strictly
}

TEST_CASE("continuous_arg_lift examples") {
    ArgPath constant;
    constant.samples.assign(8, Complex(1.0, 0.0));
    CHECK(continuous_arg_lift(constant, 0.0) == doctest::Approx(0.0));

    ArgPath loop;
    for (int k = 0; k <= 64; ++k) loop.samples.push_back(std::polar(1.0, 2 * kPi * k / 64));
    CHECK(continuous_arg_lift(loop, 0.0) == doctest::Approx(2 * kPi));

    // quarter steps have jumps of exactly pi/2 and must be refused
    ArgPath quarters;
    quarters.samples = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    CHECK_THROWS_AS(continuous_arg_lift(quarters, 0.0), refinement_required);

    // refined quarter circle, both orientations
    ArgPath ccw, cw;
    for (int k = 0; k <= 24; ++k) {
        ccw.samples.push_back(std::polar(1.0, 3 * kPi / 2 * k / 24));
        cw.samples.push_back(std::polar(1.0, -3 * kPi / 2 * k / 24));
    }
    CHECK(continuous_arg_lift(ccw, 0.0) == doctest::Approx(3 * kPi / 2));
    CHECK(continuous_arg_lift(cw, 0.0) == doctest::Approx(-3 * kPi / 2));

    CHECK_THROWS_AS(continuous_arg_lift(constant, 1.0), invalid_input);  // bad start value
    CHECK(continuous_arg_lift(constant, 2 * kPi) == doctest::Approx(2 * kPi));
}

TEST_CASE("arg-path concatenation is exactly additive") {
    ArgPath a, b, whole;
    for (int k = 0; k <= 40; ++k) a.samples.push_back(std::polar(1.0 + 0.01 * k, 0.05 * k));
    b.samples.push_back(a.samples.back());
    for (int k = 1; k <= 40; ++k)
        b.samples.push_back(std::polar(1.4 - 0.005 * k, 2.0 - 0.06 * k));
    whole = a;
    whole.samples.insert(whole.samples.end(), b.samples.begin() + 1, b.samples.end());
    const double la = continuous_arg_lift(a, 0.0);
    const double lb = continuous_arg_lift(b, la);
    CHECK(continuous_arg_lift(whole, 0.0) == lb);  // bitwise: the same steps are summed
}

TEST_CASE("lift concatenation is additive") {
    // lifting a path then its continuation equals lifting the concatenation
    auto f = [](double t) { return std::polar(1.0 + 0.3 * t, 3.1 * t * t - 0.8 * t); };
    const LiftResult whole = lift_along(f, 0.0, 1.0, 64);
    const LiftResult first = lift_along(f, 0.0, 0.37, 64);
    const LiftResult second = lift_along(f, 0.37, 1.0, 64);
    const double glued = first.end_lift + (second.end_lift - second.start_arg);
    // exact up to the 2 pi class fixed by the shared sample at 0.37
    CHECK(std::abs(whole.end_lift - glued) < 1e-12);
}

TEST_CASE("lift_along adds a full loop per revolution") {
    auto f = [](double t) { return std::polar(2.0, 2 * kPi * t); };
    const LiftResult one = lift_along(f, 0.0, 1.0, 16);
    CHECK(one.end_lift - one.start_arg == doctest::Approx(2 * kPi));
    const LiftResult three = lift_along(f, 0.0, 3.0, 16);
    CHECK(three.end_lift - three.start_arg == doctest::Approx(6 * kPi));
}

TEST_CASE("principal_power branches") {
    CHECK(std::abs(principal_power(Complex(0, 1), 1.0, Branch::upper_half_plane) - Complex(0, -1)) <
          1e-15);
    const double alpha = 0.73;
    CHECK(std::abs(principal_power(Complex(0, 1), alpha, Branch::upper_half_plane) -
                   std::polar(1.0, -alpha * kPi / 2)) < 1e-15);
    const Complex w = std::polar(1.0, 2 * kPi / 3);
    CHECK(std::abs(principal_power(w, alpha, Branch::upper_half_plane) -
                   std::polar(1.0, -alpha * 2 * kPi / 3)) < 1e-14);

    CHECK_THROWS_AS(principal_power(Complex(0, 0), 1.0, Branch::principal), domain_violation);
    CHECK_THROWS_AS(principal_power(Complex(1, -1), 1.0, Branch::upper_half_plane),
                    domain_violation);
    CHECK(std::abs(principal_power(Complex(2, 0), 2.0, Branch::principal) - Complex(0.25, 0)) <
          1e-15);
}
