#include "spintri/core_model.hpp"

#include <cmath>

#include "spintri/errors.hpp"

namespace spintri {

namespace {

constexpr double kCriticalTol = 1e-12;

template <typename T>
Eigen::Matrix<T, 3, 3> standard_config_impl(T u, T v, T w, T delta) {
    using std::sqrt;
    T a = 2.0 * (u + 1.0) - (v + w) * (v + w);
    T b = 3.0 + 2.0 * (u + v + w);
    if (std::real(b) <= 1e-12) throw DomainError("standard configuration needs nonzero total spin");
    T sb = sqrt(b);
    Eigen::Matrix<T, 3, 3> r;
    r(2, 0) = (v + w + 1.0) / sb;
    r(2, 1) = (u + w + 1.0) / sb;
    r(2, 2) = (u + v + 1.0) / sb;
    if (std::abs(std::real(u)) > 1.0 - 1e-9 && std::abs(std::real(v)) > 1.0 - 1e-9 &&
        std::abs(std::real(w)) > 1.0 - 1e-9)
        throw DomainError("singular extremal Gram point");
    if (std::abs(std::real(a)) < kCriticalTol) {
        if (std::abs(std::real(v) - std::real(w)) > 1e-9 || std::abs(std::real(delta)) > 1e-9)
            throw DomainError("singular extremal Gram point");
        // critical limit: the first row vanishes, second row is +-sqrt(1 - v^2)
        T y = sqrt(1.0 - v * v);
        r(0, 0) = T(0.0);
        r(1, 0) = T(0.0);
        r(0, 1) = T(0.0);
        r(1, 1) = y;
        r(0, 2) = T(0.0);
        r(1, 2) = -y;
        return r;
    }
    if (std::real(a) < 0.0) throw DomainError("Gram point outside the Gram set");
    T sa = sqrt(a);
    T sab = sa * sb;
    r(0, 0) = sa / sb;
    r(1, 0) = T(0.0);
    r(0, 1) = (w * (u + v + 1.0) - (u + 1.0) * (v + 1.0) + w * w) / sab;
    r(1, 1) = delta / sa;
    r(0, 2) = (v * (w + u + 1.0) - (w + 1.0) * (u + 1.0) + v * v) / sab;
    r(1, 2) = -delta / sa;
    return r;
}

}  // namespace

ConservedValues ConservedValues::make(double epsilon, double sigma, double sigma3) {
    return {epsilon, sigma, sigma3, std::sqrt(std::max(0.0, 3.0 + 2.0 * sigma))};
}

Rotation Rotation::axis_angle(const Vec3& axis, double angle) {
    double n = axis.norm();
    if (n == 0.0) return {};
    return {Eigen::AngleAxisd(angle, axis / n).toRotationMatrix()};
}

bool is_valid_configuration(const SpinConfiguration& s, double tol) {
    for (int mu = 0; mu < 3; ++mu)
        if (!(std::fabs(s.col(mu).norm() - 1.0) <= tol)) return false;
    return true;
}

SpinConfiguration normalized(const SpinConfiguration& s) { return s.colwise().normalized(); }

double hamiltonian(const SpinConfiguration& s, const Couplings& j) {
    GramPoint g = gram(s);
    return j.j1 * g.u + j.j2 * g.v + j.j3 * g.w;
}

double h1(const SpinConfiguration& s) {
    GramPoint g = gram(s);
    return g.u + g.v + g.w;
}

Vec3 total_spin(const SpinConfiguration& s) { return s.rowwise().sum(); }

ConservedValues conserved_values(const SpinConfiguration& s, const Couplings& j) {
    Vec3 S = total_spin(s);
    ConservedValues cv;
    cv.epsilon = hamiltonian(s, j);
    cv.sigma = h1(s);
    cv.sigma3 = S.z();
    cv.s_len = std::sqrt(std::max(0.0, 3.0 + 2.0 * cv.sigma));
    return cv;
}

Mat3 torque_field(const SpinConfiguration& s, const Couplings& j) {
    Vec3 s1 = s.col(0), s2 = s.col(1), s3 = s.col(2);
    Mat3 out;
    out.col(0) = (j.j2 * s3 + j.j3 * s2).cross(s1);
    out.col(1) = (j.j3 * s1 + j.j1 * s3).cross(s2);
    out.col(2) = (j.j1 * s2 + j.j2 * s1).cross(s3);
    return out;
}

GramPoint gram(const SpinConfiguration& s) {
    return {s.col(1).dot(s.col(2)), s.col(2).dot(s.col(0)), s.col(0).dot(s.col(1)), s.determinant()};
}

SpinConfiguration standard_config(const GramPoint& g) {
    return standard_config_impl<double>(g.u, g.v, g.w, g.delta);
}

Mat3 standard_config_derivative(const GramPoint& g, const GramPoint& rate) {
    using C = std::complex<double>;
    constexpr double h = 1e-30;
    auto r = standard_config_impl<C>(C(g.u, h * rate.u), C(g.v, h * rate.v), C(g.w, h * rate.w),
                                     C(g.delta, h * rate.delta));
    return r.imag() / h;
}

PolarDecomposition oriented_polar(const SpinConfiguration& s) {
    Eigen::JacobiSVD<Mat3> svd(s, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec3 sv = svd.singularValues();
    if (sv(1) < 1e-9 * std::max(1.0, sv(0))) throw CollinearError("configuration has rank one");
    Mat3 r = svd.matrixU() * svd.matrixV().transpose();
    Mat3 p = svd.matrixV() * sv.asDiagonal() * svd.matrixV().transpose();
    if (r.determinant() < 0.0) {
        r = -r;
        p = -p;
    }
    return {{r}, p};
}

Rotation best_rotation(const Mat3& a, const Mat3& b) {
    Eigen::JacobiSVD<Mat3> svd(b * a.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    Mat3 d = Mat3::Identity();
    if ((svd.matrixU() * svd.matrixV().transpose()).determinant() < 0.0) d(2, 2) = -1.0;
    return {svd.matrixU() * d * svd.matrixV().transpose()};
}

}  // namespace spintri
