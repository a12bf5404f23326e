#pragma once

#include <complex>

#include <Eigen/Dense>

namespace spintri {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Columns are the unit spin vectors s1, s2, s3.
using SpinConfiguration = Mat3;

struct Couplings {
    double j1 = 0.0;
    double j2 = 0.0;
    double j3 = 0.0;

    Vec3 vec() const { return {j1, j2, j3}; }
    double operator[](int i) const { return i == 0 ? j1 : (i == 1 ? j2 : j3); }
};

// u = s2.s3, v = s3.s1, w = s1.s2, delta = det s.
struct GramPoint {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;
    double delta = 0.0;

    double det() const { return 1.0 - u * u - v * v - w * w + 2.0 * u * v * w; }
    Vec3 uvw() const { return {u, v, w}; }
};

struct ConservedValues {
    double epsilon = 0.0;
    double sigma = 0.0;
    double sigma3 = 0.0;
    double s_len = 0.0;

    static ConservedValues make(double epsilon, double sigma, double sigma3);
};

struct Rotation {
    Mat3 r = Mat3::Identity();

    static Rotation axis_angle(const Vec3& axis, double angle);
    Rotation operator*(const Rotation& o) const { return {r * o.r}; }
    Mat3 operator*(const Mat3& s) const { return r * s; }
    Vec3 operator*(const Vec3& x) const { return r * x; }
    Rotation inverse() const { return {r.transpose()}; }
};

bool is_valid_configuration(const SpinConfiguration& s, double tol = 1e-9);
SpinConfiguration normalized(const SpinConfiguration& s);

double hamiltonian(const SpinConfiguration& s, const Couplings& j);
double h1(const SpinConfiguration& s);
Vec3 total_spin(const SpinConfiguration& s);
ConservedValues conserved_values(const SpinConfiguration& s, const Couplings& j);

// Column mu is (sum_k J_mu,k s_k) x s_mu.
Mat3 torque_field(const SpinConfiguration& s, const Couplings& j);

GramPoint gram(const SpinConfiguration& s);

SpinConfiguration standard_config(const GramPoint& g);

// Directional derivative of standard_config along (du, dv, dw, ddelta).
Mat3 standard_config_derivative(const GramPoint& g, const GramPoint& rate);

struct PolarDecomposition {
    Rotation rotation;
    Mat3 p;
};

PolarDecomposition oriented_polar(const SpinConfiguration& s);

// Proper rotation R minimizing |R a - b|, i.e. b ~ R a.
Rotation best_rotation(const Mat3& a, const Mat3& b);

}  // namespace spintri
