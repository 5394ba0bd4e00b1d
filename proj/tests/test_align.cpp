#include <doctest.h>

#include <algorithm>

#include "coach/align.hpp"
#include "coach/error.hpp"
#include "coach/rng.hpp"

#include "oracles.hpp"
#include "testutil.hpp"

using namespace coach;

namespace {

void check_path_invariants(const align::AlignmentResult& r,
                           std::size_t ref_len) {
  REQUIRE(!r.path.empty());
  CHECK(r.path.front().first == r.start_index);
  CHECK(r.path.front().second == 0);
  CHECK(r.path.back().first == r.start_index + r.window_length - 1);
  CHECK(r.path.back().second == ref_len - 1);
  for (std::size_t i = 1; i < r.path.size(); ++i) {
    const auto& [pu, pe] = r.path[i - 1];
    const auto& [u, e] = r.path[i];
    CHECK(u >= pu);
    CHECK(e >= pe);
    CHECK(u - pu + e - pe >= 1);
    CHECK(u - pu <= 1);
    CHECK(e - pe <= 1);
  }
  // coverage: every learner window frame and expert frame appears
  std::vector<bool> user_seen(r.window_length, false), ref_seen(ref_len, false);
  for (const auto& [u, e] : r.path) {
    user_seen[u - r.start_index] = true;
    ref_seen[e] = true;
  }
  CHECK(std::all_of(user_seen.begin(), user_seen.end(),
                    [](bool b) { return b; }));
  CHECK(std::all_of(ref_seen.begin(), ref_seen.end(),
                    [](bool b) { return b; }));
}

double path_cost(const align::AlignmentResult& r, const MotionSequence& user,
                 const MotionSequence& ref) {
  double sum = 0.0;
  for (const auto& [u, e] : r.path) {
    sum += align::frame_distance(user.frames[u], ref.frames[e]);
  }
  return sum;
}

} // namespace

TEST_CASE("frame_distance") {
  auto a = testutil::constant_motion(1).frames[0];
  auto b = a;
  CHECK(align::frame_distance(a, b) == 0.0);
  b[2][1] += 3.0;
  CHECK(align::frame_distance(a, b) == doctest::Approx(3.0));
  b[10][0] += 4.0;
  CHECK(align::frame_distance(a, b) == doctest::Approx(5.0));
}

TEST_CASE("frame_distance uses shortest-arc differences") {
  auto a = testutil::constant_motion(1).frames[0];
  auto b = a;
  a[0][0] = 170.0;
  b[0][0] = -170.0;
  CHECK(align::frame_distance(a, b) == doctest::Approx(20.0));
}

TEST_CASE("dtw identity and degenerate cases") {
  Rng rng(11);
  const auto seq = testutil::random_motion(rng, 10);
  SUBCASE("sequence against itself is the diagonal") {
    const auto r = align::dtw(seq, 0, seq.size(), seq);
    CHECK(r.distance == 0.0);
    CHECK(r.path.size() == seq.size());
    for (std::size_t i = 0; i < r.path.size(); ++i) {
      CHECK(r.path[i].first == i);
      CHECK(r.path[i].second == i);
    }
  }
  SUBCASE("single frame vs single frame") {
    const auto a = testutil::slice(seq, 2, 1);
    const auto b = testutil::slice(seq, 5, 1);
    const auto r = align::dtw(a, 0, 1, b);
    CHECK(r.distance ==
          doctest::Approx(align::frame_distance(a.frames[0], b.frames[0])));
    CHECK(r.path.size() == 1);
    CHECK(r.path[0] == std::pair<std::size_t, std::size_t>{0, 0});
  }
  SUBCASE("empty input errors") {
    CHECK_THROWS_AS(align::dtw(seq, 0, 0, seq), Error);
  }
}

TEST_CASE("dtw distance matches the quadratic oracle") {
  Rng rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto user = testutil::random_motion(rng, 2 + rng.uniform_index(7));
    const auto ref = testutil::random_motion(rng, 2 + rng.uniform_index(9));
    const auto r = align::dtw(user, 0, user.size(), ref);
    CHECK(r.distance ==
          doctest::Approx(oracle::dtw_distance(user, 0, user.size(), ref))
              .epsilon(1e-12));
    check_path_invariants(r, ref.size());
    // the returned path realizes the reported distance
    CHECK(path_cost(r, user, ref) == doctest::Approx(r.distance).epsilon(1e-9));
  }
}

TEST_CASE("dtw is symmetric for equal lengths and zero on itself") {
  Rng rng(13);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.uniform_index(8);
    const auto a = testutil::random_motion(rng, n);
    const auto b = testutil::random_motion(rng, n);
    const double ab = align::dtw(a, 0, n, b).distance;
    const double ba = align::dtw(b, 0, n, a).distance;
    CHECK(ab == ba);
    CHECK(align::dtw(a, 0, n, a).distance == 0.0);
  }
}

TEST_CASE("find_start") {
  Rng rng(14);
  SUBCASE("locates an exact copy after a noise prefix") {
    const auto ref = testutil::random_motion(rng, 10);
    const auto noise = testutil::random_motion(rng, 7);
    const auto user = testutil::concat(noise, ref);
    CHECK(align::find_start(user, ref) == 7);
  }
  SUBCASE("identical sequences start at zero") {
    const auto ref = testutil::random_motion(rng, 12);
    CHECK(align::find_start(ref, ref) == 0);
  }
  SUBCASE("ties break to the smallest start") {
    // constant sequences: every window has zero distance
    const auto ref = testutil::constant_motion(5, 1.0);
    const auto user = testutil::constant_motion(20, 1.0);
    CHECK(align::find_start(user, ref) == 0);
  }
  SUBCASE("learner shorter than reference errors") {
    const auto ref = testutil::random_motion(rng, 10);
    const auto user = testutil::slice(ref, 0, 6);
    CHECK_THROWS_AS(align::find_start(user, ref), Error);
  }
}

TEST_CASE("find_length") {
  Rng rng(15);
  SUBCASE("exact copy selects the native length") {
    const auto ref = testutil::random_motion(rng, 10);
    const auto tail = testutil::random_motion(rng, 6);
    const auto user = testutil::concat(ref, tail);
    CHECK(align::find_length(user, ref, 0) == 10);
  }
  SUBCASE("half-speed learner stretches the window") {
    // With every frame duplicated, all lengths that cover the reference
    // reach zero cost; the tie-break then applies, so the brute-force
    // scan is the authority on which length wins.
    const auto ref = testutil::random_motion(rng, 8);
    MotionSequence doubled;
    doubled.fps = ref.fps;
    for (const auto& f : ref.frames) {
      doubled.frames.push_back(f);
      doubled.frames.push_back(f);
    }
    const std::size_t len = align::find_length(doubled, ref, 0);
    CHECK(len == oracle::brute_find_length(doubled, ref, 0));
    CHECK(align::dtw(doubled, 0, len, ref).distance == 0.0);
    CHECK(len >= 15); // the window stretches to cover the doubled frames
  }
  SUBCASE("all-tie constant sequences pick the native length") {
    const auto ref = testutil::constant_motion(6, 2.0);
    const auto user = testutil::constant_motion(14, 2.0);
    CHECK(align::find_length(user, ref, 0) == 6);
  }
  SUBCASE("empty admissible range errors") {
    const auto ref = testutil::random_motion(rng, 10);
    const auto user = testutil::random_motion(rng, 12);
    CHECK_THROWS_AS(align::find_length(user, ref, 10), Error);
  }
}

TEST_CASE("find_start and find_length match exhaustive brute force") {
  Rng rng(16);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t ref_len = 2 + rng.uniform_index(11);    // <= 12
    const std::size_t extra = rng.uniform_index(9);           // <= 8
    auto ref = testutil::random_motion(rng, ref_len, false, 40.0);
    auto user = testutil::random_motion(rng, ref_len + extra, false, 40.0);
    // embed a noisy copy of ref somewhere to create structure
    const std::size_t at = rng.uniform_index(extra + 1);
    for (std::size_t i = 0; i < ref_len; ++i) {
      user.frames[at + i] = ref.frames[i];
    }
    const std::size_t t_star = align::find_start(user, ref);
    CHECK(t_star == oracle::brute_find_start(user, ref));
    const std::size_t l_star = align::find_length(user, ref, t_star);
    CHECK(l_star == oracle::brute_find_length(user, ref, t_star));
  }
}

TEST_CASE("align composes the stages") {
  Rng rng(17);
  SUBCASE("junk-padded copy aligns exactly") {
    const auto ref = testutil::random_motion(rng, 9);
    const auto pre = testutil::random_motion(rng, 5);
    const auto post = testutil::random_motion(rng, 5);
    const auto user = testutil::concat(testutil::concat(pre, ref), post);
    const auto r = align::align(user, ref);
    CHECK(r.start_index == 5);
    CHECK(r.window_length == 9);
    CHECK(r.distance == 0.0);
    check_path_invariants(r, ref.size());
  }
  SUBCASE("learner equal to reference") {
    const auto ref = testutil::random_motion(rng, 11);
    const auto r = align::align(ref, ref);
    CHECK(r.start_index == 0);
    CHECK(r.window_length == 11);
    CHECK(r.distance == 0.0);
  }
  SUBCASE("learner too short errors") {
    const auto ref = testutil::random_motion(rng, 11);
    const auto user = testutil::slice(ref, 0, 5);
    CHECK_THROWS_AS(align::align(user, ref), Error);
  }
}

TEST_CASE("appending frames after the window never changes its distance") {
  Rng rng(18);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto ref = testutil::random_motion(rng, 2 + rng.uniform_index(6));
    const auto user = testutil::random_motion(rng, ref.size() + rng.uniform_index(5));
    const std::size_t len = ref.size();
    const double before = align::dtw(user, 0, len, ref).distance;
    const auto extended =
        testutil::concat(user, testutil::random_motion(rng, 3));
    const double after = align::dtw(extended, 0, len, ref).distance;
    CHECK(before == after);
  }
}

TEST_CASE("fast_dtw agrees with exact dtw on benign inputs") {
  Rng rng(19);
  SUBCASE("identity") {
    const auto seq = testutil::random_motion(rng, 60);
    const auto r = align::fast_dtw(seq, 0, seq.size(), seq, 10);
    CHECK(r.distance == 0.0);
    check_path_invariants(r, seq.size());
  }
  SUBCASE("near-diagonal warps") {
    for (int trial = 0; trial < 10; ++trial) {
      // smooth-ish sequences: random walk with small steps
      MotionSequence ref = testutil::constant_motion(40);
      for (std::size_t t = 1; t < ref.frames.size(); ++t) {
        for (std::size_t j = 0; j < kJointCount; ++j) {
          for (std::size_t a = 0; a < kAxisCount; ++a) {
            ref.frames[t][j][a] = wrap_angle(
                ref.frames[t - 1][j][a] + 6.0 * (rng.uniform01() - 0.5));
          }
        }
      }
      MotionSequence user = ref;
      // duplicate a few frames to create local tempo variation
      for (int k = 0; k < 4; ++k) {
        const std::size_t at = rng.uniform_index(user.frames.size());
        user.frames.insert(user.frames.begin() + static_cast<long>(at),
                           user.frames[at]);
      }
      const auto exact = align::dtw(user, 0, user.frames.size(), ref);
      const auto fast =
          align::fast_dtw(user, 0, user.frames.size(), ref, 10);
      CHECK(fast.distance == doctest::Approx(exact.distance).epsilon(1e-12));
      check_path_invariants(fast, ref.frames.size());
    }
  }
  SUBCASE("small inputs fall back to exact") {
    const auto a = testutil::random_motion(rng, 6);
    const auto b = testutil::random_motion(rng, 8);
    const auto exact = align::dtw(a, 0, 6, b);
    const auto fast = align::fast_dtw(a, 0, 6, b, 10);
    CHECK(fast.distance == exact.distance);
  }
  SUBCASE("negative radius errors") {
    const auto a = testutil::random_motion(rng, 6);
    CHECK_THROWS_AS(align::fast_dtw(a, 0, 6, a, -1), Error);
  }
}
