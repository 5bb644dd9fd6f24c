#pragma once

#include <cmath>
#include <stdexcept>

namespace shmbench {

constexpr double kGravity = 9.81;  // m/s^2

/// Rolled I-section: plate dimensions plus catalog properties. The root
/// radius matters; without the four web-flange fillets the plate-only
/// inertia of an IPE400 is ~5% below the catalog value.
struct IpeSection {
    double h_mm = 400.0;
    double b_mm = 180.0;
    double t_w_mm = 8.60;
    double t_f_mm = 13.50;
    double root_radius_mm = 21.0;

    // catalog values
    double area_mm2 = 8446.0;
    double inertia_mm4 = 231.30e6;
    double w_el_mm3 = 1156.0e3;
    double w_pl_mm3 = 1307.0e3;

    bool operator==(const IpeSection&) const = default;
};

struct SectionProperties {
    double area_mm2 = 0.0;
    double inertia_mm4 = 0.0;
    double w_el_mm3 = 0.0;
};

namespace detail {

// Spandrel between a square of side r and the inscribed quarter disc:
// area, centroid offset from either tangent face, and own-axis inertia.
inline double spandrel_area(double r) { return (1.0 - M_PI / 4.0) * r * r; }
inline double spandrel_centroid_offset(double r) { return r * (10.0 - 3.0 * M_PI) / (12.0 - 3.0 * M_PI); }
inline double spandrel_own_inertia(double r) {
    const double r4 = r * r * r * r;
    const double about_face = (1.0 - 5.0 * M_PI / 16.0) * r4;
    const double a = spandrel_area(r);
    const double c = spandrel_centroid_offset(r);
    return about_face - a * c * c;
}

}  // namespace detail

/// Strong-axis properties of the (possibly corroded) section computed from
/// plate geometry: two flanges, one web, four root fillets. Corrosion is a
/// uniform depth d removed from every exposed face, so each plate thickness
/// and each overall dimension shrinks by 2d; the root radius is unchanged.
inline SectionProperties gross_section_geometry(const IpeSection& s, double corrosion_depth_mm) {
    const double d = corrosion_depth_mm;
    if (d < 0.0) throw std::invalid_argument("gross_section_geometry: negative corrosion depth");
    const double h = s.h_mm - 2.0 * d;
    const double b = s.b_mm - 2.0 * d;
    const double tw = s.t_w_mm - 2.0 * d;
    const double tf = s.t_f_mm - 2.0 * d;
    if (tw <= 0.0 || tf <= 0.0 || h - 2.0 * tf <= 0.0 || b <= tw)
        throw std::domain_error("gross_section_geometry: section consumed by corrosion");

    const double hw = h - 2.0 * tf;  // clear web height
    const double r = s.root_radius_mm;

    const double a_plates = 2.0 * b * tf + hw * tw;
    const double i_plates = b * h * h * h / 12.0 - (b - tw) * hw * hw * hw / 12.0;

    const double a_f = detail::spandrel_area(r);
    const double y_f = 0.5 * h - tf - detail::spandrel_centroid_offset(r);
    const double i_fillets = 4.0 * (detail::spandrel_own_inertia(r) + a_f * y_f * y_f);

    SectionProperties out;
    out.area_mm2 = a_plates + 4.0 * a_f;
    out.inertia_mm4 = i_plates + i_fillets;
    out.w_el_mm3 = out.inertia_mm4 / (0.5 * h);
    return out;
}

/// Catalog-anchored corroded properties: the geometric model above supplies
/// the relative change, the catalog values supply the d = 0 baseline. At
/// d = 0 the input section is returned unchanged.
inline SectionProperties corroded_section(const IpeSection& s, double corrosion_depth_mm) {
    const SectionProperties ref = gross_section_geometry(s, 0.0);
    const SectionProperties cur = gross_section_geometry(s, corrosion_depth_mm);
    SectionProperties out;
    out.area_mm2 = s.area_mm2 * cur.area_mm2 / ref.area_mm2;
    out.inertia_mm4 = s.inertia_mm4 * cur.inertia_mm4 / ref.inertia_mm4;
    out.w_el_mm3 = s.w_el_mm3 * cur.w_el_mm3 / ref.w_el_mm3;
    return out;
}

/// Fixed-fixed steel beam carrying a concrete slab; the slab contributes
/// mass but no stiffness.
struct BeamModel {
    double span_mm = 6000.0;
    IpeSection section{};
    double e0_mpa = 210000.0;
    double sigma_y_mpa = 235.0;
    double gamma_s = 1.05;
    double density_steel_kg_m3 = 7850.0;
    double density_concrete_kg_m3 = 2500.0;
    double slab_thickness_mm = 180.0;
    double tributary_area_m2 = 30.0;

    double p_g1_kn_m = 22.72;  // structural dead load
    double p_g2_kn_m = 6.0;    // non-structural dead load
    double p_q_ref_kn_m = 15.0;

    // ULS partial factors (structural dead / non-structural dead / live)
    double gamma_g1 = 1.3;
    double gamma_g2 = 1.5;
    double gamma_q = 1.5;

    double zeta = 0.05;
    double mass_participation = 1.0;

    /// Boundary-condition factor in delta = p L^4 / (bc E I); 384 is the
    /// fixed-fixed value and also defines the SDOF stiffness k = bc E I/L^3.
    double bc_factor = 384.0;

    double f_yd_mpa() const { return sigma_y_mpa / gamma_s; }
    double p_g_kn_m() const { return p_g1_kn_m + p_g2_kn_m; }
    double span_m() const { return span_mm / 1000.0; }
    double tributary_width_m() const { return tributary_area_m2 / span_m(); }
    double p_sls_kn_m() const { return p_g_kn_m() + p_q_ref_kn_m; }
    double p_uls_kn_m() const {
        return gamma_g1 * p_g1_kn_m + gamma_g2 * p_g2_kn_m + gamma_q * p_q_ref_kn_m;
    }

    bool operator==(const BeamModel&) const = default;
};

/// k = bc * E * I / L^3 * (1 - r_fast), in N/m.
inline double equivalent_stiffness_n_m(double e_mpa, double i_mm4, double l_mm, double r_fast,
                                       double bc_factor = 384.0) {
    if (!(e_mpa > 0.0) || !(i_mm4 > 0.0) || !(l_mm > 0.0))
        throw std::invalid_argument("equivalent_stiffness: inputs must be positive");
    if (r_fast < 0.0 || r_fast >= 1.0)
        throw std::domain_error("equivalent_stiffness: decay rate must be in [0, 1)");
    const double k_n_mm = bc_factor * e_mpa * i_mm4 / (l_mm * l_mm * l_mm);
    return k_n_mm * 1e3 * (1.0 - r_fast);
}

/// Steel mass lost to a corrosion depth d over the whole span, in kg.
inline double corrosion_mass_loss_kg(const IpeSection& s, double corrosion_depth_mm, double l_mm,
                                     double density_kg_m3) {
    const double a0 = corroded_section(s, 0.0).area_mm2;
    const double a = corroded_section(s, corrosion_depth_mm).area_mm2;
    return (a0 - a) * 1e-6 * (l_mm * 1e-3) * density_kg_m3;
}

/// Equivalent SDOF mass: tributary load mass minus corrosion volume loss.
inline double equivalent_mass_kg(double p_des_kn_m, double l_mm, double corrosion_loss_kg = 0.0,
                                 double participation = 1.0) {
    if (!(p_des_kn_m > 0.0)) throw std::invalid_argument("equivalent_mass: load must be positive");
    const double m = participation * (p_des_kn_m * 1e3 * (l_mm * 1e-3) / kGravity) - corrosion_loss_kg;
    if (!(m > 0.0)) throw std::domain_error("equivalent_mass: non-positive mass");
    return m;
}

/// Euler-Bernoulli midspan deflection under UDL, in mm.
inline double midspan_deflection_mm(double p_kn_m, double e_mpa, double i_mm4, double l_mm,
                                    double bc_factor = 384.0) {
    if (!(e_mpa > 0.0) || !(i_mm4 > 0.0) || !(l_mm > 0.0))
        throw std::invalid_argument("midspan_deflection: inputs must be positive");
    // 1 kN/m == 1 N/mm, so the mixed mm/MPa units close without conversion.
    return p_kn_m * std::pow(l_mm, 4) / (bc_factor * e_mpa * i_mm4);
}

inline double natural_frequency_hz(double k_n_m, double m_kg) {
    if (!(k_n_m > 0.0) || !(m_kg > 0.0))
        throw std::invalid_argument("natural_frequency: k and m must be positive");
    return std::sqrt(k_n_m / m_kg) / (2.0 * M_PI);
}

inline double damping_coefficient_ns_m(double k_n_m, double m_kg, double zeta) {
    return 2.0 * zeta * std::sqrt(k_n_m * m_kg);
}

struct SdofParams {
    double k_n_m = 0.0;
    double m_kg = 0.0;
    double c_ns_m = 0.0;
    double f_n_hz = 0.0;
};

inline SdofParams make_sdof(double k_n_m, double m_kg, double zeta) {
    SdofParams p;
    p.k_n_m = k_n_m;
    p.m_kg = m_kg;
    p.c_ns_m = damping_coefficient_ns_m(k_n_m, m_kg, zeta);
    p.f_n_hz = natural_frequency_hz(k_n_m, m_kg);
    return p;
}

/// Decay rate at which the section reaches its elastic moment capacity.
/// Negative result means the acting moment already exceeds capacity.
inline double plastic_decay_rate(double m_r_el_knm, double m_a_max_knm) {
    if (!(m_r_el_knm > 0.0)) throw std::invalid_argument("plastic_decay_rate: M_R must be positive");
    return (m_r_el_knm - m_a_max_knm) / m_r_el_knm;
}

/// Decay rate at which a deflection limit is reached; negative means the
/// limit is already violated.
inline double serviceability_decay_rate(double delta_des_mm, double delta_lim_mm) {
    if (!(delta_lim_mm > 0.0))
        throw std::invalid_argument("serviceability_decay_rate: limit must be positive");
    return 1.0 - delta_des_mm / delta_lim_mm;
}

/// Frequency ratio implied by a stiffness decay rate r: f/f_ud = sqrt(1-r),
/// so the frequency *drop* is sqrt(r) of f_ud at the limit states.
inline double frequency_drop_ratio(double decay_rate) {
    if (decay_rate < 0.0 || decay_rate > 1.0)
        throw std::domain_error("frequency_drop_ratio: rate must be in [0, 1]");
    return std::sqrt(decay_rate);
}

/// Design-code reference values derived from the beam constants.
struct StaticLimits {
    double p_sls_kn_m;
    double p_uls_kn_m;
    double delta_g_mm;        // deflection under dead load
    double delta_q_mm;        // deflection under reference live load
    double delta_lim_g_mm;    // L/250
    double delta_lim_q_mm;    // L/300
    double m_r_el_knm;        // W_el * f_yd
    double m_a_uls_knm;       // p_uls L^2 / 12
    double r_pl;
    double r_lim_g;
    double r_lim_q;
};

inline StaticLimits compute_static_limits(const BeamModel& beam) {
    StaticLimits out{};
    out.p_sls_kn_m = beam.p_sls_kn_m();
    out.p_uls_kn_m = beam.p_uls_kn_m();
    out.delta_g_mm = midspan_deflection_mm(beam.p_g_kn_m(), beam.e0_mpa, beam.section.inertia_mm4,
                                           beam.span_mm, beam.bc_factor);
    out.delta_q_mm = midspan_deflection_mm(beam.p_q_ref_kn_m, beam.e0_mpa, beam.section.inertia_mm4,
                                           beam.span_mm, beam.bc_factor);
    out.delta_lim_g_mm = beam.span_mm / 250.0;
    out.delta_lim_q_mm = beam.span_mm / 300.0;
    out.m_r_el_knm = beam.section.w_el_mm3 * beam.f_yd_mpa() * 1e-6;
    const double l_m = beam.span_m();
    out.m_a_uls_knm = out.p_uls_kn_m * l_m * l_m / 12.0;
    out.r_pl = plastic_decay_rate(out.m_r_el_knm, out.m_a_uls_knm);
    out.r_lim_g = serviceability_decay_rate(out.delta_g_mm, out.delta_lim_g_mm);
    out.r_lim_q = serviceability_decay_rate(out.delta_q_mm, out.delta_lim_q_mm);
    return out;
}

}  // namespace shmbench
