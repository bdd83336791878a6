#pragma once

// Closed-form dynamics of the passive tilted Furuta pendulum and the
// continuous (Stribeck + viscous) joint friction model.
//
// Conventions: angles in radians, SI units throughout. theta0 is the arm
// angle about the tilted base axis, theta1 the pendulum angle about the arm
// axis; (0, 0) is the stable hanging equilibrium for phi > 0.

#include <functional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace furuta {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;
using Vec4 = Eigen::Vector4d;

struct PhysicalParams {
  double m1 = 0.370;      // arm mass [kg]
  double m2 = 0.128;      // pendulum mass [kg]
  double j1z = 3.09e-3;   // arm inertia about its joint axis [kg m^2]
  double j2x = 5.25e-3;   // pendulum inertia, rotation axis [kg m^2]
  double j2y = 5.25e-3;   // pendulum inertia, transverse axis [kg m^2]
  double j2z = 2.91e-6;   // pendulum inertia, long axis [kg m^2]
  double l1 = 0.0620;     // arm pivot to CG [m]
  double l2 = 0.0620;     // pendulum pivot to CG [m]
  double L1 = 0.216;      // arm total length [m]
  double L2 = 0.316;      // pendulum total length [m]
  double g = 9.81;        // [m/s^2]
  double phi = 0.0;       // base tilt [rad]; no default, must be configured

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;
};

// Per-joint friction coefficients. Field names follow the friction model:
// dynamic, static and viscous coefficients, Stribeck transition velocity and
// the transition normal force that switches on the viscous term.
struct FrictionParams {
  double mu_d = 0.0;
  double mu_s = 0.0;
  double mu_v = 0.0;
  double theta_dot_t = 0.0;  // [rad/s]
  double F_nt = 0.0;         // [N]

  void Validate() const;
};

struct State {
  double theta0 = 0.0;
  double theta1 = 0.0;
  double omega0 = 0.0;
  double omega1 = 0.0;

  Vec2 q() const { return {theta0, theta1}; }
  Vec2 q_dot() const { return {omega0, omega1}; }
  Vec4 ToVector() const { return {theta0, theta1, omega0, omega1}; }
  static State FromVector(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }
  static State FromParts(const Vec2& q, const Vec2& q_dot) {
    return {q[0], q[1], q_dot[0], q_dot[1]};
  }
  bool IsFinite() const;

  friend bool operator==(const State&, const State&) = default;
};

struct GeneralizedForces {
  double tau0 = 0.0;
  double tau1 = 0.0;

  Vec2 ToVector() const { return {tau0, tau1}; }
  static GeneralizedForces FromVector(const Vec2& v) { return {v[0], v[1]}; }
};

// Which Coriolis/centrifugal vector to use.
//  kLagrangian: derived from InertiaMatrix (energy consistent). Default.
//  kAsPrinted:  an alternative closed form in circulation, kept for comparison
//               runs. It is not consistent with InertiaMatrix and does not
//               conserve energy when friction is zero.
enum class CoriolisForm { kLagrangian, kAsPrinted };

// Raised when |det H| drops below kSingularInertiaTolerance.
class SingularInertiaError : public std::runtime_error {
 public:
  explicit SingularInertiaError(double det);
  double det() const { return det_; }

 private:
  double det_;
};

inline constexpr double kSingularInertiaTolerance = 1e-12;  // [kg^2 m^4]

Mat2 InertiaMatrix(const PhysicalParams& p, const State& s);
Vec2 CoriolisForces(const PhysicalParams& p, const State& s,
                    CoriolisForm form = CoriolisForm::kLagrangian);
Vec2 GravityForces(const PhysicalParams& p, const State& s);

// Potential energy whose gradient is GravityForces; zero at the equilibrium.
double PotentialEnergy(const PhysicalParams& p, const State& s);
double KineticEnergy(const PhysicalParams& p, const State& s);
inline double MechanicalEnergy(const PhysicalParams& p, const State& s) {
  return KineticEnergy(p, s) + PotentialEnergy(p, s);
}

// Friction torque f(omega) for normal force F_n. Odd in omega and has the
// sign of omega; the equations of motion apply it as -f.
double FrictionTorque(const FrictionParams& fp, double omega, double normal_force);

// Normal force on a joint (0 = arm, 1 = pendulum) as a function of the
// configuration. Swappable so that reaction-force models can be plugged in.
using NormalForceProvider =
    std::function<double(const PhysicalParams&, const State&, int joint)>;

// Static weight: joint 0 carries both links, joint 1 carries the pendulum.
double StaticWeightNormalForce(const PhysicalParams& p, const State& s, int joint);

struct PlantModel {
  PhysicalParams physical;
  FrictionParams joint0;
  FrictionParams joint1;
  NormalForceProvider normal_force = StaticWeightNormalForce;
  CoriolisForm coriolis = CoriolisForm::kLagrangian;

  const FrictionParams& friction(int joint) const {
    return joint == 0 ? joint0 : joint1;
  }
};

// Joint accelerations H^{-1}(u - f(q_dot) - B - G) for an arbitrary pair of
// friction laws. Shared by the plant and the observer.
Vec2 SolveAccelerations(const PhysicalParams& p, const State& s,
                        const Vec2& friction, const Vec2& input,
                        CoriolisForm form);

// (theta0', theta1', theta0'', theta1'').
Vec4 DynamicsRhs(const PlantModel& plant, const State& s,
                 const GeneralizedForces& u = {});

}  // namespace furuta
