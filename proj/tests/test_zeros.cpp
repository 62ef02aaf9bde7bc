#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hil/mp_lambda.hpp"
#include "hil/zeros.hpp"

using hil::cplx;

namespace {
const hil::HalfIntegralForm& G() {
    static hil::HalfIntegralForm g = hil::yoshida_g();
    return g;
}
}  // namespace

TEST_CASE("scan locates the zeros of a known function") {
    // sin(t) on (0.5, 10): zeros at pi, 2 pi, 3 pi.
    hil::ZeroScanReport rep = hil::scan_sign_changes(
        [](double t) { return std::sin(t); }, 0.5, 10.0, 0.25, 1e-10);
    REQUIRE(rep.zeros.size() == 3);
    CHECK(rep.zeros[0] == doctest::Approx(M_PI).epsilon(1e-8));
    CHECK(rep.zeros[1] == doctest::Approx(2 * M_PI).epsilon(1e-8));
    CHECK(rep.zeros[2] == doctest::Approx(3 * M_PI).epsilon(1e-8));
}

TEST_CASE("scan refines through near-tangencies") {
    // Close pair of zeros at 2 +- 0.01 would be stepped over by a 0.25 grid
    // without refinement.
    hil::ZeroScanReport rep = hil::scan_sign_changes(
        [](double t) { return (t - 1.99) * (t - 2.01) * (t - 5.0); }, 0.5,
        6.0, 0.25, 1e-10);
    REQUIRE(rep.zeros.size() == 3);
    CHECK(rep.zeros[0] == doctest::Approx(1.99).epsilon(1e-7));
    CHECK(rep.zeros[1] == doctest::Approx(2.01).epsilon(1e-7));
}

TEST_CASE("critical-line scan of r_f agrees with the rectangle count") {
    // Sign changes of r_f on (0, T] give on-line zeros; the rectangle count
    // around the critical strip must see at least those.
    double T = 12.0;
    hil::ZeroScanReport scan = hil::scan_sign_changes(
        [&](double t) { return hil::r_f(G(), t, 1e-9); }, 1e-3, T, 0.05,
        1e-8);
    hil::RectCount rect =
        hil::count_zeros_rectangle(G(), 0.25, 4.25, 1e-3, T, 1e-9);
    CHECK(rect.count >= static_cast<long>(scan.zeros.size()));
    CHECK(rect.evals > 0);
}

TEST_CASE("rectangle count is additive under horizontal splits") {
    double mid = 6.1;
    hil::RectCount whole =
        hil::count_zeros_rectangle(G(), 0.75, 3.75, 0.4, 11.0, 1e-9);
    hil::RectCount lower =
        hil::count_zeros_rectangle(G(), 0.75, 3.75, 0.4, mid, 1e-9);
    hil::RectCount upper =
        hil::count_zeros_rectangle(G(), 0.75, 3.75, mid, 11.0, 1e-9);
    CHECK(whole.count == lower.count + upper.count);
}

TEST_CASE("empty rectangle away from the strip") {
    hil::RectCount rc =
        hil::count_zeros_rectangle(G(), 5.5, 7.0, 0.5, 4.0, 1e-9);
    CHECK(rc.count == 0);
}

TEST_CASE("n0_growth recognizes the degenerate i_f and counts r_f changes") {
    // First sign change of r_f sits at t = 12.9399; none below.
    hil::GrowthReport rep = hil::n0_growth(G(), {6.0, 16.0}, 0.1);
    CHECK(rep.i_f_degenerate);
    REQUIRE(rep.points.size() == 2);
    CHECK(rep.points[0].n_minus == 0);
    CHECK(rep.points[0].n_plus == 0);
    CHECK(rep.points[1].n_plus >= 1);
    CHECK(rep.fitted_slope_plus > 0.0);
}

TEST_CASE("first critical-line zeros land where the fixtures say") {
    // Frozen from a 90-digit evaluation of the Hecke integral; the envelope
    // normalization keeps the scanned signature O(1) at every height.
    auto fn = [&](double t) {
        return hil::r_f(G(), t) / hil::critical_envelope(G(), t);
    };
    hil::ZeroScanReport rep = hil::scan_sign_changes(fn, 1e-3, 18.0, 0.05,
                                                     1e-7);
    REQUIRE(rep.zeros.size() == 3);
    CHECK(rep.zeros[0] == doctest::Approx(12.939945).epsilon(1e-5));
    CHECK(rep.zeros[1] == doctest::Approx(15.124864).epsilon(1e-5));
    CHECK(rep.zeros[2] == doctest::Approx(17.277509).epsilon(1e-5));
}

TEST_CASE("off-line zeros below t = 10: the analogue of RH fails") {
    // Two zeros inside the strip but none on the line; the located pair is
    // symmetric about sigma0 (real coefficient class).
    hil::RectCount rc =
        hil::count_zeros_rectangle(G(), 0.75, 3.75, 0.0, 10.0, 1e-10);
    CHECK(rc.count == 2);
    auto off = hil::find_offline_zeros(G(), 0.75, 3.75, 0.0, 10.0, 1e-3);
    REQUIRE(off.size() == 2);
    CHECK(off[0].s.imag() == doctest::Approx(8.9496290653).epsilon(1e-6));
    CHECK(off[1].s.imag() == doctest::Approx(8.9496290653).epsilon(1e-6));
    double lo = std::min(off[0].s.real(), off[1].s.real());
    double hi = std::max(off[0].s.real(), off[1].s.real());
    CHECK(lo == doctest::Approx(1.2691791613).epsilon(1e-6));
    CHECK(hi - 2.25 == doctest::Approx(2.25 - lo).epsilon(1e-5));
    CHECK(off[0].lambda_abs < 1e-12);
}

TEST_CASE("high-t rectangle counts match the frozen census") {
    // Counts over 10-high windows of the strip, checked against an
    // independent 90-digit incomplete-gamma evaluation of the same contours.
    hil::RectCount r1 =
        hil::count_zeros_rectangle(G(), 0.75, 3.75, 10.0, 20.0, 1e-10);
    CHECK(r1.count == 5);  // 3 on the line + the pair at t = 19.167
    hil::RectCount r2 =
        hil::count_zeros_rectangle(G(), 0.75, 3.75, 20.0, 30.0, 1e-10);
    CHECK(r2.count == 6);
}
