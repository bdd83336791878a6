#include "furuta/model.h"

#include <cmath>
#include <numbers>
#include <sstream>

#include <Eigen/LU>

namespace furuta {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be finite and > 0 (got " << value << ")";
    throw std::invalid_argument(msg.str());
  }
}

std::string DetMessage(double det) {
  std::ostringstream msg;
  msg << "singular inertia matrix: |det H| = " << std::abs(det);
  return msg.str();
}

}  // namespace

void PhysicalParams::Validate() const {
  RequirePositive(m1, "m1");
  RequirePositive(m2, "m2");
  RequirePositive(j1z, "j1z");
  RequirePositive(j2x, "j2x");
  RequirePositive(j2y, "j2y");
  RequirePositive(j2z, "j2z");
  RequirePositive(l1, "l1");
  RequirePositive(l2, "l2");
  RequirePositive(L1, "L1");
  RequirePositive(L2, "L2");
  RequirePositive(g, "g");
  if (!(phi > 0.0 && phi <= std::numbers::pi / 2)) {
    std::ostringstream msg;
    msg << "phi must lie in (0, pi/2] (got " << phi << ")";
    throw std::invalid_argument(msg.str());
  }
}

void FrictionParams::Validate() const {
  RequirePositive(mu_d, "mu_d");
  RequirePositive(mu_s, "mu_s");
  RequirePositive(mu_v, "mu_v");
  RequirePositive(theta_dot_t, "theta_dot_t");
  RequirePositive(F_nt, "F_nt");
}

bool State::IsFinite() const {
  return std::isfinite(theta0) && std::isfinite(theta1) &&
         std::isfinite(omega0) && std::isfinite(omega1);
}

SingularInertiaError::SingularInertiaError(double det)
    : std::runtime_error(DetMessage(det)), det_(det) {}

Mat2 InertiaMatrix(const PhysicalParams& p, const State& s) {
  const double s1 = std::sin(s.theta1);
  const double c1 = std::cos(s.theta1);
  const double m2l2sq = p.m2 * p.l2 * p.l2;
  const double coupling = -p.m2 * p.l2 * p.L1 * c1;
  Mat2 h;
  h(0, 0) = p.j1z + p.m1 * p.l1 * p.l1 + (m2l2sq + p.j2y) * s1 * s1 +
            p.j2z * c1 * c1;
  h(0, 1) = coupling;
  h(1, 0) = coupling;
  h(1, 1) = p.j2x + m2l2sq;
  return h;
}

Vec2 CoriolisForces(const PhysicalParams& p, const State& s, CoriolisForm form) {
  const double s1 = std::sin(s.theta1);
  const double c1 = std::cos(s.theta1);
  const double s2 = std::sin(2.0 * s.theta1);
  const double m2l2sq = p.m2 * p.l2 * p.l2;
  const double m2l2L1 = p.m2 * p.l2 * p.L1;
  const double w0 = s.omega0;
  const double w1 = s.omega1;

  if (form == CoriolisForm::kAsPrinted) {
    return {-(m2l2sq - p.j2y + p.j2x) * s2 * w0 * w1 - m2l2L1 * s1 * w1 * w1,
            (m2l2sq - p.j2y + p.j2z) * s1 * c1 * w0 * w0};
  }
  // dH00/dtheta1 = c * sin(2 theta1), dH01/dtheta1 = m2 l2 L1 sin(theta1).
  const double c = m2l2sq + p.j2y - p.j2z;
  return {c * s2 * w0 * w1 + m2l2L1 * s1 * w1 * w1,
          -c * s1 * c1 * w0 * w0};
}

Vec2 GravityForces(const PhysicalParams& p, const State& s) {
  const double s0 = std::sin(s.theta0);
  const double c0 = std::cos(s.theta0);
  const double s1 = std::sin(s.theta1);
  const double c1 = std::cos(s.theta1);
  const double sp = std::sin(p.phi);
  const double cp = std::cos(p.phi);
  return {p.m1 * p.g * p.l1 * s0 * sp +
              p.m2 * p.g * (p.L1 * s0 - p.l2 * s1 * c0) * sp,
          -p.m2 * p.g * p.l2 * (s0 * c1 * sp - s1 * cp)};
}

double PotentialEnergy(const PhysicalParams& p, const State& s) {
  const double sp = std::sin(p.phi);
  const double cp = std::cos(p.phi);
  const double arm = (p.m1 * p.l1 + p.m2 * p.L1) * p.g * sp;
  const double pend = p.m2 * p.g * p.l2;
  return arm * (1.0 - std::cos(s.theta0)) -
         pend * std::sin(s.theta1) * std::sin(s.theta0) * sp +
         pend * cp * (1.0 - std::cos(s.theta1));
}

double KineticEnergy(const PhysicalParams& p, const State& s) {
  const Vec2 qd = s.q_dot();
  return 0.5 * qd.dot(InertiaMatrix(p, s) * qd);
}

double FrictionTorque(const FrictionParams& fp, double omega,
                      double normal_force) {
  const double ratio = omega / fp.theta_dot_t;
  const double dynamic = normal_force * fp.mu_d * std::tanh(4.0 * ratio);
  const double stribeck = normal_force * (fp.mu_s - fp.mu_d) * ratio /
                          (0.25 * ratio * ratio + 0.75);
  const double viscous =
      fp.mu_v * omega * std::tanh(4.0 * normal_force / fp.F_nt);
  return dynamic + stribeck + viscous;
}

double StaticWeightNormalForce(const PhysicalParams& p, const State& /*s*/,
                               int joint) {
  return joint == 0 ? (p.m1 + p.m2) * p.g : p.m2 * p.g;
}

Vec2 SolveAccelerations(const PhysicalParams& p, const State& s,
                        const Vec2& friction, const Vec2& input,
                        CoriolisForm form) {
  const Mat2 h = InertiaMatrix(p, s);
  const double det = h.determinant();
  if (!(std::abs(det) >= kSingularInertiaTolerance)) {
    throw SingularInertiaError(det);
  }
  const Vec2 rhs =
      input - friction - CoriolisForces(p, s, form) - GravityForces(p, s);
  // Closed-form 2x2 inverse.
  return Vec2{h(1, 1) * rhs[0] - h(0, 1) * rhs[1],
              -h(1, 0) * rhs[0] + h(0, 0) * rhs[1]} /
         det;
}

Vec4 DynamicsRhs(const PlantModel& plant, const State& s,
                 const GeneralizedForces& u) {
  const Vec2 friction{
      FrictionTorque(plant.joint0, s.omega0,
                     plant.normal_force(plant.physical, s, 0)),
      FrictionTorque(plant.joint1, s.omega1,
                     plant.normal_force(plant.physical, s, 1))};
  const Vec2 acc = SolveAccelerations(plant.physical, s, friction,
                                      u.ToVector(), plant.coriolis);
  return {s.omega0, s.omega1, acc[0], acc[1]};
}

}  // namespace furuta
