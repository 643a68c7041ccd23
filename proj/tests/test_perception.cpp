#include <doctest.h>

#include <cmath>
#include <random>

#include "packpair/perception.hpp"

using namespace packpair;

namespace {

const ShoeModel kSports{"sports", 281.0, 100.0, 110.0, 245.0, Softness::Soft, true, false};

KeypointSet top_set() {
    KeypointSet k;
    k.toe = Vec3{100, 0, 30};
    k.heel = Vec3{-100, 0, 30};
    k.topline = Vec3{-50, 0, 120};
    k.outside = Vec3{0, -50, 55};
    k.inside = Vec3{0, 50, 55};
    return k;
}

}  // namespace

TEST_CASE("classify_state follows the visibility pattern") {
    KeypointSet k = top_set();
    CHECK(classify_state(k) == ShoeState::Top);
    k.topline.reset();
    CHECK(classify_state(k) == ShoeState::Bottom);
    k = top_set();
    k.inside.reset();
    CHECK(classify_state(k) == ShoeState::SideOutsideUp);
    k = top_set();
    k.outside.reset();
    CHECK(classify_state(k) == ShoeState::SideInsideUp);
}

TEST_CASE("classify_state rejects inconsistent visibility") {
    KeypointSet k = top_set();
    k.toe.reset();
    CHECK_THROWS_AS(classify_state(k), InconsistentKeypoints);
    k = top_set();
    k.topline.reset();
    k.inside.reset();
    CHECK_THROWS_AS(classify_state(k), InconsistentKeypoints);
    k = top_set();
    k.inside.reset();
    k.outside.reset();
    CHECK_THROWS_AS(classify_state(k), InconsistentKeypoints);
}

TEST_CASE("estimate_shoe_pose midpoint and yaw") {
    KeypointSet k = top_set();
    const ShoePose pose = estimate_shoe_pose(k, ShoeState::Top, {1, 0});
    CHECK(pose.position.x == doctest::Approx(0.0));
    CHECK(pose.position.y == doctest::Approx(0.0));
    CHECK(pose.position.z == doctest::Approx(30.0));
    CHECK(pose.yaw == doctest::Approx(0.0));
    CHECK(pose.roll == doctest::Approx(0.0));

    k.toe = Vec3{0, 100, 30};
    k.heel = Vec3{0, -100, 30};
    const ShoePose quarter = estimate_shoe_pose(k, ShoeState::Top, {1, 0});
    CHECK(quarter.yaw == doctest::Approx(kPi / 2.0));

    k.toe = Vec3{5, 5, 30};
    k.heel = Vec3{5, 5, 30};
    CHECK_THROWS_AS(estimate_shoe_pose(k, ShoeState::Top, {1, 0}), DegenerateInput);
}

TEST_CASE("grasp_pose copies position and yaw") {
    ShoePose pose;
    pose.position = {5, 7, 30};
    pose.yaw = 1.0;
    const GraspPose g = grasp_pose(pose);
    CHECK(g.position.x == 5.0);
    CHECK(g.position.y == 7.0);
    CHECK(g.position.z == 30.0);
    CHECK(g.yaw == 1.0);
}

TEST_CASE("synthetic keypoints round-trip state and yaw for every state") {
    const std::array<ShoeState, 4> states = {ShoeState::Top, ShoeState::Bottom,
                                             ShoeState::SideInsideUp,
                                             ShoeState::SideOutsideUp};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (ShoeState state : states) {
        for (int i = 0; i < 50; ++i) {
            const double yaw = uni(rng) * kPi * 0.999;
            ShoePose pose;
            pose.position = {uni(rng) * 500.0, uni(rng) * 500.0,
                             resting_height(kSports, state)};
            pose.yaw = yaw;
            pose.roll = state_roll(state);
            const KeypointSet k = synthesize_keypoints(kSports, pose, state, 0.0, 0);
            CHECK(classify_state(k) == state);
            const ShoePose back = estimate_shoe_pose(k, state, {1, 0});
            CHECK(std::abs(wrap_angle(back.yaw - yaw)) < 1e-9);
            CHECK(back.position.x == doctest::Approx(pose.position.x).epsilon(1e-12));
        }
    }
}

TEST_CASE("specific noise-free yaw recovery at 2.1 rad") {
    ShoePose pose;
    pose.position = {120.0, -40.0, resting_height(kSports, ShoeState::Top)};
    pose.yaw = 2.1;
    pose.roll = 0.0;
    const KeypointSet k = synthesize_keypoints(kSports, pose, ShoeState::Top, 0.0, 9);
    const ShoePose back = estimate_shoe_pose(k, ShoeState::Top, {1, 0});
    CHECK(std::abs(wrap_angle(back.yaw - 2.1)) < 1e-9);
}

TEST_CASE("noisy yaw error stays small in the mean (2 mm on the sports shoe)") {
    ShoePose pose;
    pose.position = {0, 0, resting_height(kSports, ShoeState::Top)};
    pose.yaw = 0.7;
    double total = 0.0;
    const int n = 2000;
    for (int seed = 0; seed < n; ++seed) {
        const KeypointSet k = synthesize_keypoints(kSports, pose, ShoeState::Top, 2.0,
                                                   std::uint64_t(seed));
        const ShoePose back = estimate_shoe_pose(k, ShoeState::Top, {1, 0});
        total += std::abs(wrap_angle(back.yaw - pose.yaw));
    }
    CHECK(total / n < 2.0 * kPi / 180.0);
}

TEST_CASE("keypoints are deterministic per seed") {
    ShoePose pose;
    pose.position = {10, 20, resting_height(kSports, ShoeState::Top)};
    pose.yaw = 0.3;
    const KeypointSet a = synthesize_keypoints(kSports, pose, ShoeState::Top, 1.5, 42);
    const KeypointSet b = synthesize_keypoints(kSports, pose, ShoeState::Top, 1.5, 42);
    const KeypointSet c = synthesize_keypoints(kSports, pose, ShoeState::Top, 1.5, 43);
    CHECK(a.toe->x == b.toe->x);
    CHECK(a.inside->z == b.inside->z);
    CHECK(a.toe->x != c.toe->x);
}

TEST_CASE("estimate_box_pose on an exact rectangle") {
    const std::vector<Point2> contour = {{0, 0}, {300, 0}, {300, 220}, {0, 220}};
    const BoxModel dims{"sports", 300, 220, 110};
    const BoxPose box = estimate_box_pose(contour, dims);

    for (const Point2& c : contour) {
        bool found = false;
        for (const Point2& got : box.corners)
            if ((got - c).norm() < 1e-9) found = true;
        CHECK(found);
    }
    // pB and pC are the midpoints of the two 220 mm sides.
    const Vec2 b = box.pB.position.xy(), c = box.pC.position.xy();
    CHECK(std::min(b.x, c.x) == doctest::Approx(0.0));
    CHECK(std::max(b.x, c.x) == doctest::Approx(300.0));
    CHECK(b.y == doctest::Approx(110.0));
    CHECK(c.y == doctest::Approx(110.0));
    CHECK((b - c).norm() == doctest::Approx(300.0).epsilon(0.5 / 300.0));
    // Without lid points the hinge side is the long side nearest the origin.
    CHECK(box.pA.position.y == doctest::Approx(0.0));
}

TEST_CASE("estimate_box_pose recovers a rotated box with lid bumps") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double angle = 40.0 * kPi / 180.0;
    const Vec2 center{500, 400};
    const BoxModel dims{"sports", 300, 220, 110};

    const Vec2 ux = rotate2({1, 0}, angle), uy = rotate2({0, 1}, angle);
    std::vector<Point2> contour;
    std::array<Point2, 4> truth{};
    int idx = 0;
    for (double sx : {-1.0, 1.0})
        for (double sy : {-1.0, 1.0})
            truth[idx++] = center + ux * (150.0 * sx) + uy * (110.0 * sy);
    contour.assign(truth.begin(), truth.end());
    // Lid bumps outside one long side, middle portion only.
    for (int i = 0; i < 20; ++i) {
        const double along = (uni(rng) - 0.5) * 0.6 * 300.0;
        const double out = 2.0 + 6.0 * uni(rng);
        contour.push_back(center + ux * along + uy * (110.0 + out));
    }

    const BoxPose box = estimate_box_pose(contour, dims);
    const double diagonal = std::hypot(300.0, 220.0);
    for (const Point2& got : box.corners) {
        double best = 1e300;
        for (const Point2& t : truth) best = std::min(best, (got - t).norm());
        CHECK(best < 0.02 * diagonal);
    }
    const double side_angle = std::atan2(box.pB.position.xy().y - box.pC.position.xy().y,
                                         box.pB.position.xy().x - box.pC.position.xy().x);
    const double err = std::abs(wrap_angle(side_angle - angle));
    CHECK(std::min(err, std::abs(kPi - err)) < 1.0 * kPi / 180.0);
    // The hinge long side is the bumped one.
    const Vec2 hinge_rel = box.pA.position.xy() - center;
    CHECK(hinge_rel.dot(uy) > 0.0);
}

TEST_CASE("estimate_box_pose is equivariant under rigid transforms") {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const BoxModel dims{"sports", 300, 220, 110};
    std::vector<Point2> contour = {{0, 0}, {300, 0}, {300, 220}, {0, 220}};
    for (int i = 0; i < 12; ++i)  // lid points pin the hinge side
        contour.push_back({30.0 + 240.0 * uni(rng), 220.0 + 2.0 + 5.0 * uni(rng)});

    const BoxPose base = estimate_box_pose(contour, dims);
    const double rot = 1.1;
    const Vec2 shift{77.0, -31.0};
    std::vector<Point2> moved;
    for (const Point2& p : contour) moved.push_back(rotate2(p, rot) + shift);
    const BoxPose transformed = estimate_box_pose(moved, dims);

    const Vec2 expect_b = rotate2(base.pB.position.xy(), rot) + shift;
    const Vec2 expect_c = rotate2(base.pC.position.xy(), rot) + shift;
    CHECK((transformed.pB.position.xy() - expect_b).norm() < 1e-6);
    CHECK((transformed.pC.position.xy() - expect_c).norm() < 1e-6);
    const Vec2 expect_a = rotate2(base.pA.position.xy(), rot) + shift;
    CHECK((transformed.pA.position.xy() - expect_a).norm() < 1e-6);
}

TEST_CASE("estimate_box_pose input validation") {
    const BoxModel dims{"sports", 300, 220, 110};
    CHECK_THROWS_AS(estimate_box_pose({{0, 0}, {1, 0}, {1, 1}}, dims), DegenerateInput);
    // Aspect far from the declared dimensions.
    CHECK_THROWS_AS(
        estimate_box_pose({{0, 0}, {500, 0}, {500, 80}, {0, 80}}, dims), DegenerateInput);
}

TEST_CASE("box_pose_from_model agrees with contour estimation") {
    const BoxModel dims{"sports", 300, 220, 110};
    const BoxPose modeled = box_pose_from_model(dims, {150, 110}, 0.0);
    CHECK(modeled.pA.position.y == doctest::Approx(0.0));
    CHECK((modeled.pB.position.xy() - Vec2{300, 110}).norm() < 1e-9);
    CHECK((modeled.pC.position.xy() - Vec2{0, 110}).norm() < 1e-9);
}

TEST_CASE("dimensionless error of a noise-free synthetic set is zero") {
    ShoePose pose;
    pose.position = {50, 60, resting_height(kSports, ShoeState::Top)};
    pose.yaw = 1.2;
    const KeypointSet k = synthesize_keypoints(kSports, pose, ShoeState::Top, 0.0, 1);
    // classify + re-estimate reproduces the same keypoints through the chart
    const KeypointSet again = synthesize_keypoints(
        kSports, estimate_shoe_pose(k, classify_state(k), {1, 0}), classify_state(k), 0.0, 1);
    CHECK((*k.toe - *again.toe).norm() < 1e-9);
    CHECK((*k.topline - *again.topline).norm() < 1e-9);
}

TEST_CASE("a triangular hull cannot provide four distinct corners") {
    const BoxModel dims{"sports", 300, 220, 110};
    const std::vector<Point2> tri = {{0, 0}, {300, 0}, {150, 220}, {150, 110}};
    CHECK_THROWS_AS(estimate_box_pose(tri, dims), AmbiguousCorners);
}

TEST_CASE("yaw estimation is translation invariant and rotation equivariant") {
    ShoePose pose;
    pose.position = {40, 70, resting_height(kSports, ShoeState::Top)};
    pose.yaw = 0.35;
    const KeypointSet base = synthesize_keypoints(kSports, pose, ShoeState::Top, 0.0, 0);
    const double yaw0 = estimate_shoe_pose(base, ShoeState::Top, {1, 0}).yaw;

    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        const double rot = uni(rng) * kPi * 0.9;
        const Vec2 shift{uni(rng) * 400.0, uni(rng) * 400.0};
        const auto tf = [&](const std::optional<Vec3>& v) -> std::optional<Vec3> {
            if (!v) return std::nullopt;
            const Vec2 r = rotate2({v->x, v->y}, rot) + shift;
            return Vec3{r.x, r.y, v->z};
        };
        const KeypointSet moved{tf(base.toe), tf(base.heel), tf(base.topline),
                                tf(base.outside), tf(base.inside)};
        const double yaw = estimate_shoe_pose(moved, ShoeState::Top, {1, 0}).yaw;
        CHECK(std::abs(wrap_angle(yaw - yaw0 - rot)) < 1e-9);
    }
}
