#include <doctest.h>

#include <Eigen/Geometry>
#include <cmath>
#include <cstdio>

#include "coach/error.hpp"
#include "coach/joints.hpp"
#include "coach/motion.hpp"
#include "coach/motion_io.hpp"
#include "coach/rng.hpp"

#include "testutil.hpp"

using namespace coach;

TEST_CASE("joint taxonomy") {
  CHECK(kJoints.size() == 24);
  for (std::size_t i = 0; i < kJoints.size(); ++i) {
    CHECK(kJoints[i].index == static_cast<int>(i));
    CHECK(joint_index_by_name(kJoints[i].name) == static_cast<int>(i));
  }
  CHECK(joint_index_by_name("nonexistent") == -1);
  CHECK(joint_display_name(4) == "left knee");
  CHECK(kJoints[4].side == Side::Left);
  CHECK(kJoints[4].region == Region::Leg);
  CHECK(kJoints[3].region == Region::SpineTorso);

  int arm = 0, leg = 0, spine = 0, head = 0;
  for (const auto& j : kJoints) {
    switch (j.region) {
    case Region::Arm: ++arm; break;
    case Region::Leg: ++leg; break;
    case Region::SpineTorso: ++spine; break;
    case Region::Head: ++head; break;
    }
  }
  CHECK(arm == 10);
  CHECK(leg == 8);
  CHECK(spine == 4);
  CHECK(head == 2);
}

TEST_CASE("wrap_angle basics") {
  CHECK(wrap_angle(190.0) == doctest::Approx(-170.0));
  CHECK(wrap_angle(0.0) == 0.0);
  CHECK(wrap_angle(-180.0) == 180.0);
  CHECK(wrap_angle(180.0) == 180.0);
  CHECK(wrap_angle(540.0) == 180.0);
  CHECK(wrap_angle(-540.0) == 180.0);
  CHECK(wrap_angle(360.0) == 0.0);
  CHECK_THROWS_AS(wrap_angle(std::nan("")), Error);
  CHECK_THROWS_AS(wrap_angle(INFINITY), Error);
}

TEST_CASE("wrap_angle is idempotent") {
  Rng rng(101);
  for (int i = 0; i < 1000; ++i) {
    const double a = 4000.0 * (rng.uniform01() - 0.5);
    const double w = wrap_angle(a);
    CHECK(w > -180.0);
    CHECK(w <= 180.0);
    CHECK(wrap_angle(w) == w);
    const double residue = std::fmod(std::abs(a - w), 360.0);
    CHECK(std::min(residue, 360.0 - residue) < 1e-9);
  }
}

TEST_CASE("temporal_diff") {
  SUBCASE("constant sequence gives zero diffs") {
    const auto seq = testutil::constant_motion(5, 42.0);
    const auto d = temporal_diff(seq);
    CHECK(d.diffs.size() == 4);
    for (const auto& frame : d.diffs) {
      for (const auto& joint : frame) {
        for (double v : joint) CHECK(v == 0.0);
      }
    }
  }
  SUBCASE("direct subtraction") {
    auto seq = testutil::constant_motion(2, 0.0);
    seq.frames[0][7][1] = 10.0;
    seq.frames[1][7][1] = 25.0;
    CHECK(temporal_diff(seq).diffs[0][7][1] == doctest::Approx(15.0));
  }
  SUBCASE("wraps across the 180 boundary") {
    auto seq = testutil::constant_motion(2, 0.0);
    seq.frames[0][0][0] = 170.0;
    seq.frames[1][0][0] = -170.0;
    CHECK(temporal_diff(seq).diffs[0][0][0] == doctest::Approx(20.0));
  }
  SUBCASE("single frame errors") {
    const auto seq = testutil::constant_motion(1);
    CHECK_THROWS_AS(temporal_diff(seq), Error);
  }
}

TEST_CASE("temporal_diff of reversed sequence is the negated reverse") {
  Rng rng(202);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto seq = testutil::random_motion(rng, 2 + rng.uniform_index(6));
    MotionSequence rev = seq;
    std::reverse(rev.frames.begin(), rev.frames.end());
    const auto d = temporal_diff(seq);
    const auto dr = temporal_diff(rev);
    const std::size_t n = d.diffs.size();
    for (std::size_t t = 0; t < n; ++t) {
      for (std::size_t j = 0; j < kJointCount; ++j) {
        for (std::size_t a = 0; a < kAxisCount; ++a) {
          CHECK(d.diffs[t][j][a] ==
                doctest::Approx(wrap_angle(-dr.diffs[n - 1 - t][j][a]))
                    .epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("normalize_by_height") {
  Rng rng(303);
  auto seq = testutil::random_motion(rng, 4, /*with_positions=*/true);

  SUBCASE("identity at reference height") {
    const auto out = normalize_by_height(seq, 1.0);
    CHECK((*out.positions)[0] == (*seq.positions)[0]);
  }
  SUBCASE("coordinates halve at height 2") {
    const auto out = normalize_by_height(seq, 2.0);
    CHECK((*out.positions)[1][5][2] ==
          doctest::Approx((*seq.positions)[1][5][2] * 0.5));
  }
  SUBCASE("rotations untouched") {
    const auto out = normalize_by_height(seq, 1.7);
    CHECK(out.frames == seq.frames);
  }
  SUBCASE("missing positions error") {
    auto bare = seq;
    bare.positions.reset();
    CHECK_THROWS_AS(normalize_by_height(bare, 1.7), Error);
  }
  SUBCASE("invalid height error") {
    CHECK_THROWS_AS(normalize_by_height(seq, 0.0), Error);
    CHECK_THROWS_AS(normalize_by_height(seq, -1.0), Error);
  }
}

TEST_CASE("normalize_by_height is invariant under pre-scaling") {
  Rng rng(404);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto seq = testutil::random_motion(rng, 3, true);
    const double h = 1.4 + rng.uniform01();
    const double k = 0.5 + 2.0 * rng.uniform01();
    MotionSequence scaled = seq;
    for (auto& frame : *scaled.positions) {
      for (auto& joint : frame) {
        for (auto& c : joint) c *= k;
      }
    }
    const auto a = normalize_by_height(scaled, k * h);
    const auto b = normalize_by_height(seq, h);
    for (std::size_t t = 0; t < seq.frames.size(); ++t) {
      for (std::size_t j = 0; j < kJointCount; ++j) {
        for (std::size_t x = 0; x < kAxisCount; ++x) {
          CHECK(std::abs((*a.positions)[t][j][x] - (*b.positions)[t][j][x]) <
                1e-9);
        }
      }
    }
  }
}

namespace {

std::array<double, 3> rotate_euler(const std::array<double, 3>& deg,
                                   double extra_deg,
                                   const Eigen::Vector3d& axis) {
  constexpr double d2r = M_PI / 180.0;
  const Eigen::Matrix3d base =
      (Eigen::AngleAxisd(deg[0] * d2r, Eigen::Vector3d::UnitX()) *
       Eigen::AngleAxisd(deg[1] * d2r, Eigen::Vector3d::UnitY()) *
       Eigen::AngleAxisd(deg[2] * d2r, Eigen::Vector3d::UnitZ()))
          .toRotationMatrix();
  const Eigen::Matrix3d composed =
      base * Eigen::AngleAxisd(extra_deg * d2r, axis).toRotationMatrix();
  const Eigen::Vector3d angles = composed.eulerAngles(0, 1, 2);
  return {angles[0] / d2r, angles[1] / d2r, angles[2] / d2r};
}

} // namespace

TEST_CASE("rotation_geodesic_angle") {
  SUBCASE("identical triples") {
    CHECK(rotation_geodesic_angle({10, 20, 30}, {10, 20, 30}) == 0.0);
  }
  SUBCASE("single-axis rotation") {
    CHECK(rotation_geodesic_angle({0, 0, 0}, {90, 0, 0}) ==
          doctest::Approx(90.0).epsilon(1e-12));
  }
  SUBCASE("composed known rotation of 5 degrees") {
    const std::array<double, 3> a{10, 20, 30};
    const auto b =
        rotate_euler(a, 5.0, Eigen::Vector3d(1, 2, 0.5).normalized());
    CHECK(rotation_geodesic_angle(a, b) == doctest::Approx(5.0).epsilon(1e-6));
  }
  SUBCASE("rejects non-finite input") {
    CHECK_THROWS_AS(rotation_geodesic_angle({std::nan(""), 0, 0}, {0, 0, 0}),
                    Error);
  }
}

TEST_CASE("geodesic angle is symmetric and obeys the triangle inequality") {
  Rng rng(606);
  auto random_triple = [&]() {
    return std::array<double, 3>{360.0 * (rng.uniform01() - 0.5),
                                 360.0 * (rng.uniform01() - 0.5),
                                 360.0 * (rng.uniform01() - 0.5)};
  };
  for (int trial = 0; trial < 1000; ++trial) {
    const auto a = random_triple();
    const auto b = random_triple();
    const auto c = random_triple();
    const double ab = rotation_geodesic_angle(a, b);
    const double ba = rotation_geodesic_angle(b, a);
    const double bc = rotation_geodesic_angle(b, c);
    const double ac = rotation_geodesic_angle(a, c);
    CHECK(ab == doctest::Approx(ba).epsilon(1e-9));
    CHECK(ab >= 0.0);
    CHECK(ab <= 180.0);
    CHECK(ac <= ab + bc + 1e-9);
  }
}

TEST_CASE("motion file round-trip is byte exact") {
  Rng rng(707);
  for (int trial = 0; trial < 20; ++trial) {
    auto seq = testutil::random_motion(rng, 2 + rng.uniform_index(8),
                                       trial % 2 == 0);
    if (trial % 3 == 0) seq.subject_height = 1.5 + rng.uniform01();
    const std::string text = write_motion(seq);
    const MotionSequence back = read_motion(text, "mem");
    CHECK(write_motion(back) == text);
    CHECK(back.frames.size() == seq.frames.size());
    CHECK(back.has_positions() == seq.has_positions());
    CHECK(back.subject_height.has_value() == seq.subject_height.has_value());
  }
}

TEST_CASE("motion file parse errors name the source and line") {
  const auto seq = testutil::constant_motion(2);
  std::string text = write_motion(seq);

  SUBCASE("bad header") {
    CHECK_THROWS_WITH_AS(read_motion("JUNK\n", "input.motion"),
                         doctest::Contains("input.motion:1"), Error);
  }
  SUBCASE("bad frame count") {
    std::string broken = text;
    broken.replace(broken.find("frames 2"), 8, "frames x");
    CHECK_THROWS_AS(read_motion(broken, "f"), Error);
  }
  SUBCASE("truncated frames") {
    std::string broken = text.substr(0, text.rfind("0 0 0"));
    CHECK_THROWS_AS(read_motion(broken, "f"), Error);
  }
  SUBCASE("out-of-range rotation") {
    std::string broken = text;
    const auto pos = broken.find("frames 2\n") + 9;
    broken.replace(pos, 1, "260");
    CHECK_THROWS_AS(read_motion(broken, "f"), Error);
  }
  SUBCASE("wrong joint name") {
    std::string broken = text;
    broken.replace(broken.find("left_hip"), 8, "left_HIP");
    CHECK_THROWS_WITH_AS(read_motion(broken, "f"), doctest::Contains("f:4"),
                         Error);
  }
}

TEST_CASE("motion file write/read through disk") {
  Rng rng(808);
  auto seq = testutil::random_motion(rng, 5, true);
  seq.subject_height = 1.73;
  const std::string path = "/tmp/coach_test_roundtrip.motion";
  write_motion_file(seq, path);
  const auto back = read_motion_file(path);
  CHECK(write_motion(back) == write_motion(seq));
  std::remove(path.c_str());
}
