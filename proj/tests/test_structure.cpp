#include <catch_amalgamated.hpp>

#include <cmath>

#include "shmbench/rng.hpp"
#include "shmbench/structure.hpp"

using namespace shmbench;
using Catch::Approx;

namespace {

// Brute-force strip oracle: integrate width(y) y^2 over the half-section
// with the midpoint rule, fillet arcs included. Independent of the
// closed-form decomposition in the implementation.
struct StripOracle {
    double area, inertia, w_el;
};

StripOracle strip_section(const IpeSection& s, double d) {
    const double h = s.h_mm - 2.0 * d;
    const double b = s.b_mm - 2.0 * d;
    const double tw = s.t_w_mm - 2.0 * d;
    const double tf = s.t_f_mm - 2.0 * d;
    const double r = s.root_radius_mm;
    const double y_flange = 0.5 * h - tf;   // inner flange face
    const double y_fillet = y_flange - r;   // bottom of the fillet band

    const auto width = [&](double y) {
        if (y >= y_flange) return b;
        if (y >= y_fillet) {
            const double v = y - y_fillet;
            return tw + 2.0 * (r - std::sqrt(std::max(0.0, r * r - v * v)));
        }
        return tw;
    };

    // midpoint rule per smooth segment, so that the width jumps at the
    // segment borders never straddle a strip
    double area = 0.0, inertia = 0.0;
    const double borders[4] = {0.0, y_fillet, y_flange, 0.5 * h};
    for (int seg = 0; seg < 3; ++seg) {
        const std::size_t strips = 800'000;
        const double dy = (borders[seg + 1] - borders[seg]) / static_cast<double>(strips);
        for (std::size_t i = 0; i < strips; ++i) {
            const double y = borders[seg] + (static_cast<double>(i) + 0.5) * dy;
            const double w = width(y);
            area += w * dy;
            inertia += w * y * y * dy;
        }
    }
    return {2.0 * area, 2.0 * inertia, 2.0 * inertia / (0.5 * h)};
}

}  // namespace

TEST_CASE("geometric section properties agree with the catalog values") {
    const IpeSection s{};
    const SectionProperties g = gross_section_geometry(s, 0.0);
    CHECK(g.inertia_mm4 == Approx(231.30e6).epsilon(0.02));
    CHECK(g.area_mm2 == Approx(8446.0).epsilon(0.02));
    CHECK(g.w_el_mm3 == Approx(1156.0e3).epsilon(0.02));
}

TEST_CASE("zero corrosion returns the catalog section untouched") {
    const IpeSection s{};
    const SectionProperties p = corroded_section(s, 0.0);
    CHECK(p.area_mm2 == s.area_mm2);
    CHECK(p.inertia_mm4 == s.inertia_mm4);
    CHECK(p.w_el_mm3 == s.w_el_mm3);
}

TEST_CASE("corroded properties match the strip-integration oracle to 6 digits") {
    const IpeSection s{};
    for (const double d : {0.1, 0.5, 1.5}) {
        const StripOracle ref0 = strip_section(s, 0.0);
        const StripOracle refd = strip_section(s, d);
        const SectionProperties got = corroded_section(s, d);
        CHECK(got.inertia_mm4 == Approx(s.inertia_mm4 * refd.inertia / ref0.inertia).epsilon(1e-6));
        CHECK(got.area_mm2 == Approx(s.area_mm2 * refd.area / ref0.area).epsilon(1e-6));
        CHECK(got.w_el_mm3 == Approx(s.w_el_mm3 * refd.w_el / ref0.w_el).epsilon(1e-6));
    }
}

TEST_CASE("plate part matches the three-rectangle parallel-axis decomposition") {
    const IpeSection s{};
    IpeSection no_fillet = s;
    no_fillet.root_radius_mm = 0.0;
    const SectionProperties g = gross_section_geometry(no_fillet, 0.0);
    const double flange = s.b_mm * std::pow(s.t_f_mm, 3) / 12.0 +
                          s.b_mm * s.t_f_mm * std::pow(0.5 * (s.h_mm - s.t_f_mm), 2);
    const double web = s.t_w_mm * std::pow(s.h_mm - 2.0 * s.t_f_mm, 3) / 12.0;
    CHECK(g.inertia_mm4 == Approx(2.0 * flange + web).epsilon(1e-12));
}

TEST_CASE("section properties decrease strictly with corrosion depth") {
    const IpeSection s{};
    SectionProperties prev = corroded_section(s, 0.0);
    for (double d = 0.2; d < 3.0; d += 0.2) {
        const SectionProperties cur = corroded_section(s, d);
        CHECK(cur.area_mm2 < prev.area_mm2);
        CHECK(cur.inertia_mm4 < prev.inertia_mm4);
        CHECK(cur.w_el_mm3 < prev.w_el_mm3);
        prev = cur;
    }
}

TEST_CASE("consumed sections are rejected") {
    const IpeSection s{};
    CHECK_THROWS_AS(corroded_section(s, 4.5), std::domain_error);  // t_w/2 = 4.3
    CHECK_THROWS_AS(corroded_section(s, -0.1), std::invalid_argument);
}

TEST_CASE("equivalent stiffness reproduces the hand value") {
    // 384 * 210000 * 231.30e6 / 6000^3 = 86352 N/mm
    const double k = equivalent_stiffness_n_m(210000.0, 231.30e6, 6000.0, 0.0);
    CHECK(k == Approx(8.6352e7).epsilon(1e-6));
    CHECK(equivalent_stiffness_n_m(210000.0, 231.30e6, 6000.0, 0.10) / k == Approx(0.9).epsilon(1e-12));
    CHECK(equivalent_stiffness_n_m(105000.0, 231.30e6, 6000.0, 0.0) == Approx(0.5 * k).epsilon(1e-12));
    CHECK_THROWS_AS(equivalent_stiffness_n_m(210000.0, 231.30e6, 6000.0, 1.0), std::domain_error);
}

TEST_CASE("equivalent mass and the resulting natural frequency") {
    const double m = equivalent_mass_kg(43.72, 6000.0);
    CHECK(m == Approx(43.72e3 * 6.0 / 9.81).epsilon(1e-12));
    CHECK(m == Approx(26740.06).epsilon(1e-6));
    CHECK(corrosion_mass_loss_kg(IpeSection{}, 0.0, 6000.0, 7850.0) == 0.0);

    const double k = equivalent_stiffness_n_m(210000.0, 231.30e6, 6000.0, 0.0);
    const double f = natural_frequency_hz(k, m);
    CHECK(f == Approx(9.0443).epsilon(1e-4));
    CHECK(f > 7.0);   // inside the traffic excitation band
    CHECK(f < 15.0);
    CHECK_THROWS_AS(equivalent_mass_kg(43.72, 6000.0, 1e9), std::domain_error);
}

TEST_CASE("midspan deflection reproduces the serviceability design values") {
    CHECK(midspan_deflection_mm(28.72, 210000.0, 231.30e6, 6000.0) == Approx(1.9955).epsilon(5e-4));
    CHECK(midspan_deflection_mm(15.0, 210000.0, 231.30e6, 6000.0) == Approx(1.0422).epsilon(5e-4));
    CHECK(midspan_deflection_mm(57.44, 210000.0, 231.30e6, 6000.0) ==
          Approx(2.0 * midspan_deflection_mm(28.72, 210000.0, 231.30e6, 6000.0)).epsilon(1e-12));
}

TEST_CASE("plastic decay rate from the design moment pair") {
    // (258.84 - 183.12) / 258.84
    CHECK(plastic_decay_rate(258.84, 183.12) == Approx(0.29253593).epsilon(1e-6));
    CHECK(plastic_decay_rate(258.84, 258.84) == 0.0);
    CHECK(plastic_decay_rate(258.84, 300.0) < 0.0);  // past elastic capacity
    // W_el * f_yd with the rounded table value of f_yd
    CHECK(1156e3 * 223.9 * 1e-6 == Approx(258.84).epsilon(1e-4));
}

TEST_CASE("serviceability decay rate and the frequency mapping") {
    CHECK(serviceability_decay_rate(1.99, 24.0) == Approx(1.0 - 1.99 / 24.0).epsilon(1e-12));
    CHECK(serviceability_decay_rate(24.0, 24.0) == 0.0);
    CHECK(serviceability_decay_rate(30.0, 24.0) < 0.0);
    CHECK(frequency_drop_ratio(0.25) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("frequency-stiffness square-root law holds to machine precision") {
    rng::Generator gen(17);
    for (int trial = 0; trial < 200; ++trial) {
        const double k = std::pow(10.0, gen.uniform(5.0, 9.0));
        const double m = std::pow(10.0, gen.uniform(2.0, 5.0));
        const double r = gen.uniform(0.0, 0.95);
        const double ratio = natural_frequency_hz(k * (1.0 - r), m) / natural_frequency_hz(k, m);
        REQUIRE(ratio == Approx(std::sqrt(1.0 - r)).epsilon(1e-12));
    }
}

TEST_CASE("deflection-stiffness reciprocity: delta scales with 1/k") {
    rng::Generator gen(18);
    for (int trial = 0; trial < 100; ++trial) {
        const double p = gen.uniform(1.0, 80.0);
        const double r = gen.uniform(0.0, 0.9);
        const double base = midspan_deflection_mm(p, 210000.0, 231.30e6, 6000.0);
        const double damaged = midspan_deflection_mm(p, 210000.0, 231.30e6 * (1.0 - r), 6000.0);
        REQUIRE(damaged * (1.0 - r) == Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("static and dynamic paths share the same stiffness constant") {
    const double p = 43.72;  // kN/m == N/mm
    const double delta = midspan_deflection_mm(p, 210000.0, 231.30e6, 6000.0);
    const double k_static = p * 6000.0 / delta * 1e3;  // N/m
    CHECK(k_static == Approx(equivalent_stiffness_n_m(210000.0, 231.30e6, 6000.0, 0.0)).epsilon(1e-12));
}

TEST_CASE("static limits derived from the beam constants") {
    const StaticLimits lim = compute_static_limits(BeamModel{});
    CHECK(lim.p_sls_kn_m == Approx(43.72).epsilon(1e-12));
    CHECK(lim.p_uls_kn_m == Approx(61.04).epsilon(1e-3));
    CHECK(lim.delta_lim_g_mm == Approx(24.0).epsilon(1e-12));
    CHECK(lim.delta_lim_q_mm == Approx(20.0).epsilon(1e-12));
    CHECK(lim.r_lim_g == Approx(0.917).epsilon(2e-3));
    CHECK(lim.r_lim_g > lim.r_pl);  // serviceability limits sit beyond the plastic threshold
    CHECK(lim.r_lim_q > lim.r_pl);
}
