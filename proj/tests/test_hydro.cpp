#include "fishdyn/hydro.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace fishdyn;

namespace {

std::vector<CoefficientSample> sampled(const std::function<double(double)>& fn) {
    std::vector<CoefficientSample> samples;
    for (int k = 0; k <= 10; ++k) {
        const double a = M_PI / 60.0 * static_cast<double>(k);
        samples.push_back({a, fn(a)});
    }
    return samples;
}

ActuatorGeometry test_geometry() {
    ActuatorGeometry g;
    g.tail_joint_m = {-0.13, 0.0, 0.0};
    g.tail_cop_radius_m = 0.045;
    return g;
}

HydroParams test_hydro() {
    HydroParams h;
    h.rho_kgm3 = 1000.0;
    h.tail_area_m2 = 0.0022;
    h.area_diag_m2 = {0.010, 0.028, 0.024};
    h.damping_diag_nms = {-0.003, -0.008, -0.008};
    h.tail_drag = fit_coefficient_model(
        CoefficientFamily::TailDrag,
        sampled([](double a) { return 0.08 + 1.8 * std::sin(a) * std::sin(a); }), 4);
    h.tail_lift = fit_coefficient_model(
        CoefficientFamily::TailLift, sampled([](double a) { return 1.2 * std::sin(2 * a); }), 4);
    h.body_drag1 = fit_coefficient_model(
        CoefficientFamily::BodyDrag1,
        sampled([](double a) { return 0.25 + 1.6 * std::sin(a) * std::sin(a); }), 4);
    h.body_lift1 = fit_coefficient_model(
        CoefficientFamily::BodyLift1, sampled([](double a) { return 0.9 * std::sin(2 * a); }), 4);
    h.body_drag2 = fit_coefficient_model(
        CoefficientFamily::BodyDrag2,
        sampled([](double a) { return 0.22 + 1.5 * std::sin(a) * std::sin(a); }), 4);
    h.body_lift2 = fit_coefficient_model(
        CoefficientFamily::BodyLift2, sampled([](double a) { return 0.9 * std::sin(2 * a); }), 4);
    h.impact_pitch = fit_coefficient_model(
        CoefficientFamily::ImpactTorquePitch,
        sampled([](double a) { return -0.05 * std::sin(2 * a); }), 4);
    h.impact_yaw = fit_coefficient_model(
        CoefficientFamily::ImpactTorqueYaw,
        sampled([](double a) { return 0.05 * std::sin(2 * a); }), 4);
    return h;
}

MassModel test_mass() {
    MassModel m;
    m.total_mass_kg = 1.5;
    m.block_mass_kg = 0.2;
    m.buoyancy_mass_kg = 1.5;
    m.body_static_moment_kgm = {0.004, 0.0, 0.009};
    m.body_inertia_diag_kgm2 = {0.0035, 0.011, 0.010};
    m.block_inertia_diag_kgm2 = {3e-5, 5e-5, 5e-5};
    return m;
}

// Mirror about the x-z plane: negate y-ish translational components and
// x/z-ish rotational components.
BodyState mirror_state(const BodyState& s) {
    BodyState m = s;
    m.velocity_body.y() = -s.velocity_body.y();
    m.omega_body.x() = -s.omega_body.x();
    m.omega_body.z() = -s.omega_body.z();
    return m;
}

} // namespace

TEST(TailKinematics, CopOffsetFollowsTailAngle) {
    const ActuatorGeometry g = test_geometry();
    const Eigen::Vector3d straight = tail_cop_offset(0.0, g);
    EXPECT_LT((straight - Eigen::Vector3d(-0.175, 0.0, 0.0)).norm(), 1e-15);
    const Eigen::Vector3d swung = tail_cop_offset(M_PI / 2.0, g);
    EXPECT_LT((swung - Eigen::Vector3d(-0.13, -0.045, 0.0)).norm(), 1e-15);
}

TEST(TailKinematics, StagnantAtRest) {
    const ActuatorGeometry g = test_geometry();
    BodyState state;
    EXPECT_LT(tail_cop_velocity(state, 0.3, 0.0, g).norm(), 1e-15);
}

TEST(TailKinematics, PureTranslationCarriesCop) {
    const ActuatorGeometry g = test_geometry();
    BodyState state;
    state.velocity_body = {1.0, 0.0, 0.0};
    EXPECT_LT((tail_cop_velocity(state, 0.2, 0.0, g) - Eigen::Vector3d(1, 0, 0)).norm(), 1e-15);
}

TEST(TailKinematics, MatchesCrossProductOracle) {
    const ActuatorGeometry g = test_geometry();
    std::mt19937 rng(13);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        BodyState state = test::random_state(rng);
        const double xi1 = 0.4 * unit(rng);
        const double xi1_rate = 4.0 * unit(rng);

        // Independent transcription: v = V + w x (O_b->CoP) + w_t x (O_t->CoP).
        const Eigen::Vector3d cop(g.tail_joint_m.x() - g.tail_cop_radius_m * std::cos(xi1),
                                  g.tail_joint_m.y() - g.tail_cop_radius_m * std::sin(xi1),
                                  g.tail_joint_m.z());
        const Eigen::Vector3d joint_to_cop = cop - g.tail_joint_m;
        const Eigen::Vector3d oracle = state.velocity_body + state.omega_body.cross(cop) +
                                       Eigen::Vector3d(0, 0, xi1_rate).cross(joint_to_cop);
        EXPECT_LT((tail_cop_velocity(state, xi1, xi1_rate, g) - oracle).norm(), 1e-12);
    }
}

TEST(TailForces, StagnantTailProducesNothing) {
    const TailForces f = tail_forces(Eigen::Vector3d::Zero(), 0.3, test_hydro());
    EXPECT_EQ(f.lift.norm(), 0.0);
    EXPECT_EQ(f.drag.norm(), 0.0);
    EXPECT_EQ(f.attack_angle_rad, 0.0);
}

TEST(TailForces, InPlaneFlowHasZeroAttackAngle) {
    const HydroParams h = test_hydro();
    // Velocity along the tail plane for xi1 = 0 is the x axis.
    const Eigen::Vector3d v(0.8, 0.0, 0.0);
    const TailForces f = tail_forces(v, 0.0, h);
    EXPECT_NEAR(f.attack_angle_rad, 0.0, 1e-15);
    const double q = 0.5 * h.rho_kgm3 * v.squaredNorm() * h.tail_area_m2;
    EXPECT_NEAR(f.lift.norm(), q * std::abs(h.tail_lift(0.0)), 1e-12);
    EXPECT_NEAR(f.drag.norm(), q * h.tail_drag(0.0), 1e-12);
    EXPECT_LT((f.drag.normalized() + v.normalized()).norm(), 1e-12);
}

TEST(TailForces, NormalIncidenceDropsLiftKeepsDrag) {
    const HydroParams h = test_hydro();
    // Velocity along the tail normal: attack angle pi/2, lift direction
    // degenerates and must return zero while drag stays full.
    const Eigen::Vector3d v = Eigen::Vector3d(0.0, 1.0, 0.0);
    const TailForces f = tail_forces(v, 0.0, h);
    EXPECT_NEAR(f.attack_angle_rad, M_PI / 2.0, 1e-12);
    EXPECT_EQ(f.lift.norm(), 0.0);
    const double q = 0.5 * h.rho_kgm3 * v.squaredNorm() * h.tail_area_m2;
    EXPECT_NEAR(f.drag.norm(), q * h.tail_drag(M_PI / 2.0), 1e-12);
}

TEST(TailTorque, CrossProductCases) {
    EXPECT_EQ(tail_torque({-0.17, 0.02, 0.0}, Eigen::Vector3d::Zero()).norm(), 0.0);
    // Force through the body origin: offset parallel to force.
    const Eigen::Vector3d r(-0.1, 0.05, 0.0);
    EXPECT_LT(tail_torque(r, 3.0 * r).norm(), 1e-15);

    std::mt19937 rng(37);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector3d a(unit(rng), unit(rng), unit(rng));
        const Eigen::Vector3d b(unit(rng), unit(rng), unit(rng));
        EXPECT_LT((tail_torque(a, b) - a.cross(b)).norm(), 1e-15);
    }
}

TEST(BodyPlanes, PureSurgeUsesFrontalArea) {
    const HydroParams h = test_hydro();
    BodyState state;
    state.velocity_body = {0.6, 0.0, 0.0};
    for (int plane : {1, 2}) {
        const BodyPlaneForces f = body_plane_forces(state, plane, h);
        EXPECT_NEAR(f.attack_angle_rad, 0.0, 1e-15);
        EXPECT_NEAR(f.reference_area_m2, h.area_diag_m2.x(), 1e-15);
        const double q = 0.5 * h.rho_kgm3 * 0.36 * h.area_diag_m2.x();
        const auto& drag_curve = plane == 1 ? h.body_drag1 : h.body_drag2;
        const auto& lift_curve = plane == 1 ? h.body_lift1 : h.body_lift2;
        EXPECT_LT((f.drag - Eigen::Vector3d(-q * drag_curve(0.0), 0, 0)).norm(), 1e-12);
        EXPECT_NEAR(f.lift.norm(), q * std::abs(lift_curve(0.0)), 1e-12);
    }
}

TEST(BodyPlanes, PureHeaveIsNormalIncidenceOnPlane1) {
    const HydroParams h = test_hydro();
    BodyState state;
    state.velocity_body = {0.0, 0.0, 0.4};
    const BodyPlaneForces f = body_plane_forces(state, 1, h);
    EXPECT_NEAR(f.attack_angle_rad, M_PI / 2.0, 1e-12);
    EXPECT_NEAR(f.reference_area_m2, h.area_diag_m2.z(), 1e-15);
    EXPECT_EQ(f.lift.norm(), 0.0); // degenerate direction -> zero lift

    state.velocity_body = {0.0, 0.0, -0.4};
    EXPECT_NEAR(body_plane_forces(state, 1, h).attack_angle_rad, -M_PI / 2.0, 1e-12);
}

TEST(BodyPlanes, ReferenceAreaMatchesQuadraticFormOracle) {
    const HydroParams h = test_hydro();
    std::mt19937 rng(41);
    for (int i = 0; i < 200; ++i) {
        const BodyState state = test::random_state(rng);
        const Eigen::Vector3d v = state.velocity_body;

        Eigen::Vector2d v1(v.x(), v.z());
        if (v1.norm() > 1e-9) {
            const Eigen::Vector2d v1h = v1.normalized();
            const Eigen::Matrix2d a1 =
                Eigen::Vector2d(h.area_diag_m2.x(), h.area_diag_m2.z()).asDiagonal();
            const double oracle = v1h.dot(a1 * v1h);
            EXPECT_NEAR(body_plane_forces(state, 1, h).reference_area_m2, oracle, 1e-12);
        }
        Eigen::Vector2d v2(v.x(), v.y());
        if (v2.norm() > 1e-9) {
            const Eigen::Vector2d v2h = v2.normalized();
            const Eigen::Matrix2d a2 =
                Eigen::Vector2d(h.area_diag_m2.x(), h.area_diag_m2.y()).asDiagonal();
            const double oracle = v2h.dot(a2 * v2h);
            EXPECT_NEAR(body_plane_forces(state, 2, h).reference_area_m2, oracle, 1e-12);
        }
    }
}

TEST(DampingTorque, ZeroLinearSignConvention) {
    const HydroParams h = test_hydro();
    EXPECT_EQ(damping_torque(Eigen::Vector3d::Zero(), h).norm(), 0.0);

    HydroParams yaw_only = h;
    yaw_only.damping_diag_nms = {0.0, 0.0, -0.01};
    const Eigen::Vector3d torque = damping_torque({0.0, 0.0, 1.0}, yaw_only);
    EXPECT_LT((torque - Eigen::Vector3d(0.0, 0.0, -0.01)).norm(), 1e-15);

    std::mt19937 rng(43);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 100; ++i) {
        const Eigen::Vector3d w1(unit(rng), unit(rng), unit(rng));
        const Eigen::Vector3d w2(unit(rng), unit(rng), unit(rng));
        const double c = unit(rng);
        const Eigen::Vector3d lhs = damping_torque(w1 + c * w2, h);
        const Eigen::Vector3d rhs = damping_torque(w1, h) + c * damping_torque(w2, h);
        EXPECT_LT((lhs - rhs).norm(), 1e-12);
    }
}

TEST(ImpactTorque, ZeroVelocityAndAxisConstraint) {
    const HydroParams h = test_hydro();
    BodyState state;
    EXPECT_EQ(impact_torque(state, 0.0, 0.0, h).norm(), 0.0);

    std::mt19937 rng(47);
    for (int i = 0; i < 200; ++i) {
        state = test::random_state(rng);
        const BodyPlaneForces p1 = body_plane_forces(state, 1, h);
        const BodyPlaneForces p2 = body_plane_forces(state, 2, h);
        const Eigen::Vector3d torque =
            impact_torque(state, p1.attack_angle_rad, p2.attack_angle_rad, h);
        EXPECT_EQ(torque.x(), 0.0); // identically zero about the roll axis
    }
}

TEST(ImpactTorque, MatchesDirectFormulaOracle) {
    const HydroParams h = test_hydro();
    std::mt19937 rng(53);
    for (int i = 0; i < 200; ++i) {
        const BodyState state = test::random_state(rng);
        const BodyPlaneForces p1 = body_plane_forces(state, 1, h);
        const BodyPlaneForces p2 = body_plane_forces(state, 2, h);
        const Eigen::Vector3d torque =
            impact_torque(state, p1.attack_angle_rad, p2.attack_angle_rad, h);

        const double sign1 = p1.attack_angle_rad > 0 ? 1.0 : (p1.attack_angle_rad < 0 ? -1.0 : 0.0);
        const double sign2 = p2.attack_angle_rad > 0 ? 1.0 : (p2.attack_angle_rad < 0 ? -1.0 : 0.0);
        const double my = 0.5 * h.rho_kgm3 * p1.speed_squared * p1.reference_area_m2 *
                          h.impact_pitch(p1.attack_angle_rad) * sign1;
        const double mz = 0.5 * h.rho_kgm3 * p2.speed_squared * p2.reference_area_m2 *
                          h.impact_yaw(p2.attack_angle_rad) * sign2;
        EXPECT_NEAR(torque.y(), my, 1e-12);
        EXPECT_NEAR(torque.z(), mz, 1e-12);
    }
}

TEST(GravityBuoyancy, NeutralAtZeroAttitude) {
    const MassModel m = test_mass();
    const GravityBuoyancy gb = gravity_buoyancy({0, 0, 0}, m, Eigen::Vector3d::Zero());
    EXPECT_EQ((gb.gravity_force + gb.buoyancy_force).norm(), 0.0);
    EXPECT_EQ(gb.gravity_moment.norm(), 0.0);
    EXPECT_NEAR(gb.gravity_force.z(), m.total_mass_kg * kGravity, 1e-12);
}

TEST(GravityBuoyancy, PitchRotationOracle) {
    const MassModel m = test_mass();
    std::mt19937 rng(59);
    std::uniform_real_distribution<double> pitch(-1.2, 1.2);
    for (int i = 0; i < 100; ++i) {
        const double theta = pitch(rng);
        const GravityBuoyancy gb = gravity_buoyancy({0.0, theta, 0.0}, m, {0.0, 0.0, 0.008});
        EXPECT_NEAR(gb.gravity_force.x(), -m.total_mass_kg * kGravity * std::sin(theta), 1e-12);
        EXPECT_NEAR(gb.gravity_force.z(), m.total_mass_kg * kGravity * std::cos(theta), 1e-12);
        // Full rotation oracle.
        const Eigen::Vector3d oracle = rotation_body_to_inertial({0.0, theta, 0.0}).transpose() *
                                       Eigen::Vector3d(0, 0, m.total_mass_kg * kGravity);
        EXPECT_LT((gb.gravity_force - oracle).norm(), 1e-12);
    }
}

TEST(GravityBuoyancy, ZeroComGivesZeroMoment) {
    std::mt19937 rng(61);
    for (int i = 0; i < 50; ++i) {
        const Attitude att = test::random_attitude(rng);
        const GravityBuoyancy gb = gravity_buoyancy(att, test_mass(), Eigen::Vector3d::Zero());
        EXPECT_EQ(gb.gravity_moment.norm(), 0.0);
    }
}

// --- module invariants ----------------------------------------------------

TEST(HydroInvariants, ForcesScaleQuadraticallyWithSpeed) {
    const HydroParams h = test_hydro();
    std::mt19937 rng(67);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    std::uniform_real_distribution<double> scale(0.2, 3.0);
    for (int i = 0; i < 100; ++i) {
        BodyState state;
        state.velocity_body = {unit(rng), unit(rng), unit(rng)};
        const double k = scale(rng);
        BodyState scaled = state;
        scaled.velocity_body *= k;

        for (int plane : {1, 2}) {
            const BodyPlaneForces f = body_plane_forces(state, plane, h);
            const BodyPlaneForces fk = body_plane_forces(scaled, plane, h);
            EXPECT_LT((fk.drag - k * k * f.drag).norm(), 1e-9 * std::max(1.0, fk.drag.norm()));
            EXPECT_LT((fk.lift - k * k * f.lift).norm(), 1e-9 * std::max(1.0, fk.lift.norm()));
        }

        const Eigen::Vector3d v(unit(rng), unit(rng), unit(rng));
        const TailForces tf = tail_forces(v, 0.2, h);
        const TailForces tfk = tail_forces(k * v, 0.2, h);
        EXPECT_LT((tfk.drag - k * k * tf.drag).norm(), 1e-9 * std::max(1.0, tfk.drag.norm()));
        EXPECT_LT((tfk.lift - k * k * tf.lift).norm(), 1e-9 * std::max(1.0, tfk.lift.norm()));
    }
}

TEST(HydroInvariants, DragDissipatesLiftIsWorkless) {
    const HydroParams h = test_hydro();
    std::mt19937 rng(71);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        BodyState state = test::random_state(rng);
        for (int plane : {1, 2}) {
            Eigen::Vector3d v_plane = state.velocity_body;
            if (plane == 1) {
                v_plane.y() = 0.0;
            } else {
                v_plane.z() = 0.0;
            }
            const BodyPlaneForces f = body_plane_forces(state, plane, h);
            EXPECT_LE(f.drag.dot(v_plane), 1e-12);
            if (f.lift.norm() > 0.0) {
                EXPECT_LT(std::abs(f.lift.normalized().dot(v_plane.normalized())), 1e-9);
            }
        }
        const Eigen::Vector3d v(unit(rng), unit(rng), unit(rng));
        const double xi1 = 0.4 * unit(rng);
        const TailForces tf = tail_forces(v, xi1, h);
        EXPECT_LE(tf.drag.dot(v), 1e-12);
        if (tf.lift.norm() > 0.0) {
            EXPECT_LT(std::abs(tf.lift.normalized().dot(v.normalized())), 1e-9);
        }
    }
}

TEST(HydroInvariants, MirrorSymmetryOfEveryTerm) {
    const HydroParams h = test_hydro();
    const ActuatorGeometry g = test_geometry();
    std::mt19937 rng(73);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 200; ++i) {
        BodyState state = test::random_state(rng);
        state.attitude = {0, 0, 0};
        const BodyState mirrored = mirror_state(state);
        const double xi1 = 0.4 * unit(rng);
        const double xi1_rate = 4.0 * unit(rng);

        // Tail force mirrors: x,z components equal, y negated.
        const TailForces f = tail_forces(tail_cop_velocity(state, xi1, xi1_rate, g), xi1, h);
        const TailForces fm =
            tail_forces(tail_cop_velocity(mirrored, -xi1, -xi1_rate, g), -xi1, h);
        const Eigen::Vector3d force = f.lift + f.drag;
        const Eigen::Vector3d force_m = fm.lift + fm.drag;
        EXPECT_NEAR(force_m.x(), force.x(), 1e-12);
        EXPECT_NEAR(force_m.y(), -force.y(), 1e-12);
        EXPECT_NEAR(force_m.z(), force.z(), 1e-12);

        // Impact torque mirrors: y equal, x,z negated.
        const double a1 = body_plane_forces(state, 1, h).attack_angle_rad;
        const double a2 = body_plane_forces(state, 2, h).attack_angle_rad;
        const double a1m = body_plane_forces(mirrored, 1, h).attack_angle_rad;
        const double a2m = body_plane_forces(mirrored, 2, h).attack_angle_rad;
        const Eigen::Vector3d mi = impact_torque(state, a1, a2, h);
        const Eigen::Vector3d mim = impact_torque(mirrored, a1m, a2m, h);
        EXPECT_NEAR(mim.y(), mi.y(), 1e-12);
        EXPECT_NEAR(mim.z(), -mi.z(), 1e-12);

        // Damping mirrors with the rates.
        const Eigen::Vector3d md = damping_torque(state.omega_body, h);
        const Eigen::Vector3d mdm = damping_torque(mirrored.omega_body, h);
        EXPECT_NEAR(mdm.x(), -md.x(), 1e-15);
        EXPECT_NEAR(mdm.y(), md.y(), 1e-15);
        EXPECT_NEAR(mdm.z(), -md.z(), 1e-15);
    }
}

TEST(LiftDirection, PerpendicularAndOpposingNormalMotion) {
    std::mt19937 rng(79);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    for (int i = 0; i < 300; ++i) {
        Eigen::Vector3d v(unit(rng), unit(rng), unit(rng));
        if (v.norm() < 1e-6) {
            continue;
        }
        v.normalize();
        Eigen::Vector3d n(unit(rng), unit(rng), unit(rng));
        if (n.norm() < 1e-6) {
            continue;
        }
        n.normalize();
        const Eigen::Vector3d dir = lift_direction(v, n);
        if (dir.norm() == 0.0) {
            continue; // normal incidence
        }
        EXPECT_NEAR(dir.norm(), 1.0, 1e-12);
        EXPECT_LT(std::abs(dir.dot(v)), 1e-12);
        // Opposes the normal component of the motion.
        EXPECT_LE(dir.dot(n) * n.dot(v), 1e-12);
    }
}
