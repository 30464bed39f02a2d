#include <doctest.h>

#include <random>

#include "satft/errors.hpp"
#include "satft/twcp.hpp"
#include "test_helpers.hpp"

using namespace satft;
using namespace satft::testing;

namespace {

FourPhaseSet synthetic_set(std::size_t n, std::uint64_t seed) {
    FourPhaseSet p;
    Epoch start{57851, 0.0};
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        p.epochs.push_back(start.advanced(static_cast<double>(i)));
        p.l_aa.push_back(gauss(rng));
        p.l_ab.push_back(gauss(rng));
        p.l_ba.push_back(gauss(rng));
        p.l_bb.push_back(gauss(rng));
    }
    return p;
}

} // namespace

TEST_CASE("combine is linear in the phase sets") {
    FourPhaseSet p1 = synthetic_set(200, 1);
    FourPhaseSet p2 = synthetic_set(200, 2);
    const double a = 2.5, b = -1.25;

    FourPhaseSet mix = p1;
    for (std::size_t i = 0; i < mix.size(); ++i) {
        mix.l_aa[i] = a * p1.l_aa[i] + b * p2.l_aa[i];
        mix.l_ab[i] = a * p1.l_ab[i] + b * p2.l_ab[i];
        mix.l_ba[i] = a * p1.l_ba[i] + b * p2.l_ba[i];
        mix.l_bb[i] = a * p1.l_bb[i] + b * p2.l_bb[i];
    }
    auto c1 = combine(p1).flattened();
    auto c2 = combine(p2).flattened();
    auto cm = combine(mix).flattened();
    for (std::size_t i = 0; i < cm.size(); ++i)
        CHECK(cm[i] == doctest::Approx(a * c1[i] + b * c2[i]).epsilon(1e-12));
}

TEST_CASE("a common phase ramp on all four signals drops out") {
    FourPhaseSet p = synthetic_set(300, 3);
    auto before = combine(p).flattened();
    for (std::size_t i = 0; i < p.size(); ++i) {
        double ramp = 0.125 * static_cast<double>(i);
        p.l_aa[i] += ramp;
        p.l_ab[i] += ramp;
        p.l_ba[i] += ramp;
        p.l_bb[i] += ramp;
    }
    auto after = combine(p).flattened();
    for (std::size_t i = 0; i < before.size(); ++i)
        CHECK(after[i] == doctest::Approx(before[i]).epsilon(1e-12));
}

TEST_CASE("an epoch gap becomes a flagged segment boundary") {
    FourPhaseSet p = synthetic_set(100, 4);
    // remove 10 epochs in the middle
    FourPhaseSet gap;
    gap.plan = p.plan;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i >= 50 && i < 60) continue;
        gap.epochs.push_back(p.epochs[i]);
        gap.l_aa.push_back(p.l_aa[i]);
        gap.l_ab.push_back(p.l_ab[i]);
        gap.l_ba.push_back(p.l_ba[i]);
        gap.l_bb.push_back(p.l_bb[i]);
    }
    TimeDiffSeries d = combine(gap);
    REQUIRE(d.segments.size() == 2);
    CHECK(d.segments[0].values.size() == 50);
    CHECK(d.segments[1].values.size() == 40);
    CHECK(d.technique == Technique::twcp);
}

TEST_CASE("dispersive one-way magnitudes at the link carriers") {
    // 100 TECU straight up
    CHECK(iono_phase_delay_s(100.0, 11.0e9) == doctest::Approx(1.111e-9).epsilon(0.001));
    CHECK(iono_phase_delay_s(100.0, 14.0e9) == doctest::Approx(0.686e-9).epsilon(0.001));
    double differential = iono_phase_delay_s(100.0, 11.0e9) - iono_phase_delay_s(100.0, 14.0e9);
    CHECK(differential == doctest::Approx(0.425e-9).epsilon(0.003));
    CHECK(slant_factor(90.0) == doctest::Approx(1.0));
    CHECK(slant_factor(30.0) > 1.5);
}

TEST_CASE("ionosphere correction") {
    Epoch start{57851, 0.0};
    TimeDiffSeries zero =
        TimeDiffSeries::uniform(start, 30.0, std::vector<double>(200, 0.0), Technique::twcp);
    Epoch lo = start.advanced(-60.0), hi = start.advanced(30.0 * 300);

    StationConfig sta, stb;
    sta.elevation_deg = 90.0;
    stb.elevation_deg = 90.0;
    CarrierPlan plan;

    SUBCASE("equal TEC at equal elevations cancels") {
        TecSeries t = TecSeries::constant(37.5, lo, hi);
        TimeDiffSeries out = iono_correct(zero, t, t, sta, stb, plan);
        CHECK(out.iono_corrected);
        for (double v : out.flattened()) CHECK(v == 0.0);
    }

    SUBCASE("100 TECU on one side is 0.213 ns of two-way residual") {
        TecSeries ta = TecSeries::constant(100.0, lo, hi);
        TecSeries tb = TecSeries::constant(0.0, lo, hi);
        TimeDiffSeries out = iono_correct(zero, ta, tb, sta, stb, plan);
        for (double v : out.flattened())
            CHECK(v == doctest::Approx(-0.2125e-9).epsilon(0.005));
    }

    SUBCASE("a few TECU of imbalance is the typical ~10 ps") {
        TecSeries ta = TecSeries::constant(5.0, lo, hi);
        TecSeries tb = TecSeries::constant(0.0, lo, hi);
        TimeDiffSeries out = iono_correct(zero, ta, tb, sta, stb, plan);
        double v = std::abs(out.flattened().front());
        CHECK(v > 5e-12);
        CHECK(v < 15e-12);
    }

    SUBCASE("sign-flipped TEC inverts the correction") {
        TecSeries ta = TecSeries::constant(42.0, lo, hi);
        TecSeries tb = TecSeries::constant(11.0, lo, hi);
        TecSeries na = TecSeries::constant(-42.0, lo, hi);
        TecSeries nb = TecSeries::constant(-11.0, lo, hi);
        NoiseSpec spec;
        spec.white_fm = 1e-13;
        PhaseSeries noise = synthesize_phase(spec, 200, 30.0, 5, start);
        TimeDiffSeries data =
            TimeDiffSeries::uniform(start, 30.0, noise.x, Technique::twcp);
        TimeDiffSeries once = iono_correct(data, ta, tb, sta, stb, plan);
        TimeDiffSeries twice = iono_correct(once, na, nb, sta, stb, plan);
        auto orig = data.flattened(), back = twice.flattened();
        for (std::size_t i = 0; i < orig.size(); ++i)
            CHECK(back[i] == doctest::Approx(orig[i]).epsilon(1e-12));
    }

    SUBCASE("TEC coverage gap is an error naming the span") {
        TecSeries shorttec = TecSeries::constant(10.0, start, start.advanced(300.0));
        TecSeries t = TecSeries::constant(10.0, lo, hi);
        try {
            iono_correct(zero, shorttec, t, sta, stb, plan);
            FAIL("expected CoverageError");
        } catch (const CoverageError& e) {
            CHECK(std::string(e.what()).find("covered") != std::string::npos);
        }
    }
}

TEST_CASE("TEC series sampled from a gridded map") {
    TECMap map = parse_ionex_file(std::string(SATFT_TEST_DATA_DIR) + "/code_daily.inx");
    std::vector<Epoch> at;
    for (int i = 0; i < 12; ++i) at.push_back(map.epochs.front().advanced(1800.0 * i));
    TecSeries tec = TecSeries::from_map(map, 35.7, 139.5, at);
    REQUIRE(tec.epochs.size() == 12);
    for (std::size_t i = 0; i < at.size(); ++i)
        CHECK(tec.at(at[i]) == doctest::Approx(interpolate_vtec(map, 35.7, 139.5, at[i])));
    // linear between the sampled points
    Epoch mid = at[0].advanced(900.0);
    CHECK(tec.at(mid) == doctest::Approx(0.5 * (tec.tecu[0] + tec.tecu[1])));
}

TEST_CASE("excursion detector") {
    Epoch start{57851, 0.0};
    std::mt19937_64 rng(9);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> clean(4000);
    for (double& v : clean) v = 5e-12 * gauss(rng);

    SUBCASE("clean series yields nothing") {
        TimeDiffSeries s = TimeDiffSeries::uniform(start, 1.0, clean, Technique::twcp);
        CHECK(detect_excursions(s, 50e-12, 60).empty());
    }

    SUBCASE("a 0.2 ns step is found at the injected epoch") {
        std::vector<double> v = clean;
        for (std::size_t i = 2000; i < v.size(); ++i) v[i] += 0.2e-9;
        TimeDiffSeries s = TimeDiffSeries::uniform(start, 1.0, v, Technique::twcp);
        auto events = detect_excursions(s, 50e-12, 60);
        REQUIRE(events.size() == 1);
        CHECK(std::abs(events[0].epoch - start.advanced(2000.0)) <= 60.0);
        CHECK(events[0].step_s == doctest::Approx(0.2e-9).epsilon(0.15));
    }

    SUBCASE("two opposite steps are both found") {
        std::vector<double> v = clean;
        for (std::size_t i = 1000; i < v.size(); ++i) v[i] += 0.2e-9;
        for (std::size_t i = 3000; i < v.size(); ++i) v[i] -= 0.2e-9;
        TimeDiffSeries s = TimeDiffSeries::uniform(start, 1.0, v, Technique::twcp);
        auto events = detect_excursions(s, 50e-12, 60);
        REQUIRE(events.size() == 2);
        CHECK(events[0].step_s > 0);
        CHECK(events[1].step_s < 0);
    }

    SUBCASE("short series and bad parameters are refused") {
        TimeDiffSeries s = TimeDiffSeries::uniform(
            start, 1.0, std::vector<double>(50, 0.0), Technique::twcp);
        CHECK_THROWS_AS(detect_excursions(s, 50e-12, 60), InvalidSpecError);
        CHECK_THROWS_AS(detect_excursions(s, 50e-12, 2), InvalidSpecError);
        CHECK_THROWS_AS(detect_excursions(s, 0.0, 10), InvalidSpecError);
    }
}
