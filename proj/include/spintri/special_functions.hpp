#pragma once

#include <array>

namespace spintri {

// Roots of 4x^3 - g2 x - g3, sorted ascending.
struct CubicRoots {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

struct HalfPeriods {
    double omega1 = 0.0;     // real half-period, T/2
    double omega3_im = 0.0;  // imaginary half-period
};

struct JacobiTriple {
    double sn = 0.0;
    double cn = 1.0;
    double dn = 1.0;
};

// Complete elliptic integral of the first kind, parameter convention m = k^2.
double complete_elliptic_k(double m);

JacobiTriple jacobi_elliptic(double u, double m);
double jacobi_sn(double u, double m);

CubicRoots solve_depressed_cubic(double g2, double g3);
bool roots_degenerate(const CubicRoots& r);

HalfPeriods half_periods(const CubicRoots& r);

struct WpValue {
    double x = 0.0;
    double xdot = 0.0;
};

// p(t + omega3) on the rectangular lattice, oscillating in [x1, x2].
// Precomputes the Landen/AGM ladder once so repeated evaluation is cheap.
class ShiftedWeierstrass {
public:
    explicit ShiftedWeierstrass(const CubicRoots& r);

    WpValue operator()(double t) const;
    double period() const { return period_; }
    const CubicRoots& roots() const { return roots_; }

private:
    CubicRoots roots_;
    double m_ = 0.0;
    double scale_ = 0.0;  // sqrt(x3 - x1)
    double quarter_ = 0.0;  // K(m)
    double period_ = 0.0;
    int levels_ = 0;
    std::array<double, 16> a_{};
    std::array<double, 16> c_{};

    JacobiTriple jacobi(double u) const;
};

WpValue weierstrass_p_shifted(double t, const CubicRoots& r);

}  // namespace spintri
