#include "fishdyn/actuation.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"

using namespace fishdyn;

namespace {

constexpr double kDeg = M_PI / 180.0;

ActuatorGeometry test_geometry() {
    ActuatorGeometry g;
    g.bracket_offset_m = {-0.02, 0.0, 0.0};
    g.tail_joint_m = {-0.13, 0.0, 0.0};
    g.motor3_offset_m = 0.04;
    g.bracket_arm_m = 0.015;
    g.rod_end_offset_m = 0.01;
    g.slider_neutral_m = 0.05;
    g.tail_cop_radius_m = 0.045;
    return g;
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

} // namespace

TEST(TailAngle, OffsetAtZeroTime) {
    const TailGait gait{0.2, 0.3, 1.7};
    EXPECT_DOUBLE_EQ(tail_angle(0.0, gait), 0.2);
}

TEST(TailAngle, QuarterPeriodPeak) {
    const TailGait gait{0.0, 20.0 * kDeg, 2.0};
    EXPECT_NEAR(tail_angle(0.125, gait), 20.0 * kDeg, 1e-12);
}

TEST(TailAngle, ThreeQuarterPeriodTrough) {
    // offset 10 deg, amplitude 15 deg, 1 Hz at t = 0.75 s -> 10 - 15 = -5 deg
    const TailGait gait{10.0 * kDeg, 15.0 * kDeg, 1.0};
    EXPECT_NEAR(tail_angle(0.75, gait), -5.0 * kDeg, 1e-12);
}

TEST(TailRate, PeakAtZeroTime) {
    const TailGait gait{0.1, 0.25, 2.5};
    EXPECT_NEAR(tail_rate(0.0, gait), 2.0 * M_PI * 2.5 * 0.25, 1e-12);
}

TEST(TailRate, ZeroAtQuarterPeriod) {
    const TailGait gait{0.0, 0.3, 2.0};
    EXPECT_NEAR(tail_rate(0.125, gait), 0.0, 1e-12);
}

TEST(TailRate, MatchesCentralDifferenceOfAngle) {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> time(0.0, 3.0);
    std::uniform_real_distribution<double> amp(0.0, 0.4);
    std::uniform_real_distribution<double> freq(0.1, 3.0);
    const double dt = 1e-6;
    for (int i = 0; i < 200; ++i) {
        const TailGait gait{0.0, amp(rng), freq(rng)};
        const double t = time(rng);
        const double fd = (tail_angle(t + dt, gait) - tail_angle(t - dt, gait)) / (2.0 * dt);
        EXPECT_NEAR(tail_rate(t, gait), fd, 1e-6);
    }
}

TEST(BlockPosition, NeutralCommand) {
    const ActuatorGeometry g = test_geometry();
    const Eigen::Vector3d p = block_position(BlockCommand{}, g);
    EXPECT_NEAR(p.x(), -0.02 + 0.04 - 0.05 + 0.01, 1e-15);
    EXPECT_NEAR(p.y(), 0.0, 1e-15);
    EXPECT_NEAR(p.z(), 0.015, 1e-15);
}

TEST(BlockPosition, BracketQuarterTurnSwingsBlockSideways) {
    const ActuatorGeometry g = test_geometry();
    const Eigen::Vector3d p = block_position({0.0, M_PI / 2.0}, g);
    EXPECT_NEAR(p.y(), g.bracket_offset_m.y() + g.bracket_arm_m, 1e-15);
    EXPECT_NEAR(p.z(), g.bracket_offset_m.z(), 1e-15);
}

TEST(BlockPosition, NegativeTravelMovesBlockForward) {
    const ActuatorGeometry g = test_geometry();
    const Eigen::Vector3d neutral = block_position(BlockCommand{}, g);
    const Eigen::Vector3d shifted = block_position({-0.02, 0.0}, g);
    EXPECT_NEAR(shifted.x() - neutral.x(), 0.02, 1e-15);
}

TEST(BlockPosition, TravelOutsideRangeThrows) {
    const ActuatorGeometry g = test_geometry();
    EXPECT_THROW(block_position({0.021, 0.0}, g), SliderRangeError);
    EXPECT_THROW(block_position({-0.0201, 0.0}, g), SliderRangeError);
}

TEST(CenterOfMass, VanishingBlockMassUsesBodyMomentsOnly) {
    const ActuatorGeometry g = test_geometry();
    MassModel m = test_mass();
    m.block_mass_kg = 1e-12;
    const Eigen::Vector3d com = center_of_mass({0.015, 1.0}, m, g);
    EXPECT_LT((com - m.body_static_moment_kgm / m.total_mass_kg).norm(), 1e-12);
}

TEST(CenterOfMass, NeutralCommandReproducesConfiguredValue) {
    const Eigen::Vector3d com = center_of_mass(BlockCommand{}, test_mass(), test_geometry());
    EXPECT_LT((com - Eigen::Vector3d(0.0, 0.0, 0.008)).lpNorm<Eigen::Infinity>(), 1e-12);
}

// Moving the slider shifts the vehicle centre of mass by the block's mass
// fraction of the block displacement, exactly and linearly.
TEST(CenterOfMass, LinearInSliderTravel) {
    const ActuatorGeometry g = test_geometry();
    const MassModel m = test_mass();
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> travel(-0.02, 0.02);
    for (int i = 0; i < 100; ++i) {
        const double d0 = travel(rng);
        const double d1 = travel(rng);
        const double com_shift =
            center_of_mass({d1, 0.0}, m, g).x() - center_of_mass({d0, 0.0}, m, g).x();
        const double block_shift =
            block_position({d1, 0.0}, g).x() - block_position({d0, 0.0}, g).x();
        EXPECT_NEAR(com_shift, (m.block_mass_kg / m.total_mass_kg) * block_shift, 1e-15);
        EXPECT_NEAR(block_shift, -(d1 - d0), 1e-15);
    }
}

TEST(CenterOfMass, AffineInBracketAngleSinCos) {
    const ActuatorGeometry g = test_geometry();
    const MassModel m = test_mass();
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    const double scale = m.block_mass_kg * g.bracket_arm_m / m.total_mass_kg;
    const Eigen::Vector3d at_zero = center_of_mass({0.0, 0.0}, m, g); // sin=0, cos=1
    for (int i = 0; i < 100; ++i) {
        const double xi2 = angle(rng);
        const Eigen::Vector3d com = center_of_mass({0.0, xi2}, m, g);
        EXPECT_NEAR(com.y() - at_zero.y(), scale * std::sin(xi2), 1e-15);
        EXPECT_NEAR(com.z() - at_zero.z(), scale * (std::cos(xi2) - 1.0), 1e-15);
    }
}

TEST(Inertia, ZeroOffsetsGiveBareSum) {
    ActuatorGeometry g = test_geometry();
    // Park the block exactly at the origin.
    g.bracket_offset_m = {0.0, 0.0, 0.0};
    g.bracket_arm_m = 0.0;
    g.motor3_offset_m = 0.04;
    g.rod_end_offset_m = 0.01;
    g.slider_neutral_m = 0.05;
    MassModel m = test_mass();
    m.body_static_moment_kgm = Eigen::Vector3d::Zero(); // body CoM at origin too
    const Eigen::Vector3d j = inertia_about_origin(BlockCommand{}, m, g);
    EXPECT_LT((j - (m.body_inertia_diag_kgm2 + m.block_inertia_diag_kgm2)).norm(), 1e-15);
}

TEST(Inertia, MovingBlockOutwardIncreasesYawInertia) {
    const ActuatorGeometry g = test_geometry();
    const MassModel m = test_mass();
    // Neutral block x is -0.02; +0.02 travel moves it to -0.04.
    const double neutral = inertia_about_origin(BlockCommand{}, m, g).z();
    const double outward = inertia_about_origin({0.02, 0.0}, m, g).z();
    EXPECT_GT(outward, neutral);
}

// Independent two-point-mass parallel-axis oracle.
TEST(Inertia, MatchesTwoPointMassOracle) {
    const ActuatorGeometry g = test_geometry();
    const MassModel m = test_mass();
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> travel(-0.02, 0.02);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    for (int i = 0; i < 200; ++i) {
        const BlockCommand cmd{travel(rng), angle(rng)};
        const Eigen::Vector3d j = inertia_about_origin(cmd, m, g);

        const Eigen::Vector3d rw = block_position(cmd, g);
        const double mb = m.total_mass_kg - m.block_mass_kg;
        const Eigen::Vector3d rb = m.body_static_moment_kgm / mb;
        Eigen::Vector3d oracle = m.body_inertia_diag_kgm2 + m.block_inertia_diag_kgm2;
        oracle.x() += mb * (rb.y() * rb.y() + rb.z() * rb.z()) +
                      m.block_mass_kg * (rw.y() * rw.y() + rw.z() * rw.z());
        oracle.y() += mb * (rb.x() * rb.x() + rb.z() * rb.z()) +
                      m.block_mass_kg * (rw.x() * rw.x() + rw.z() * rw.z());
        oracle.z() += mb * (rb.x() * rb.x() + rb.y() * rb.y()) +
                      m.block_mass_kg * (rw.x() * rw.x() + rw.y() * rw.y());
        EXPECT_LT((j - oracle).lpNorm<Eigen::Infinity>(), 1e-12);
        EXPECT_GT(j.minCoeff(), 0.0);
    }
}

TEST(BlockPosition, NeutralBlockXCheck) {
    // Geometry identity: block x = a_rb + d1 - (s_w0 + dd - d3).
    const ActuatorGeometry g = test_geometry();
    EXPECT_NEAR(block_position(BlockCommand{}, g).x(), -0.02, 1e-15);
}
