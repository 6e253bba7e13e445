#include <gtest/gtest.h>

#include <sstream>
#include <vector>

#include "satset/io.hpp"

using namespace satset;

TEST(Io, SetFileRoundTrip) {
  const auto plane = build_pg2(7);
  const auto run = run_truncated(plane, 2.0);
  std::stringstream ss;
  write_set(plane, run.final_set, ss);
  EXPECT_NE(ss.str().find(" : "), std::string::npos);
  EXPECT_EQ(read_set(ss), run.final_set);
}

TEST(Io, SetFileWithoutCoordinates) {
  std::stringstream fano("plane 7 7 2\n0 1 2\n0 3 4\n0 5 6\n1 3 5\n1 4 6\n2 3 6\n2 4 5\n");
  const auto plane = load_plane(fano);
  const std::vector<PointId> set{0, 3, 6, 1};
  std::stringstream ss;
  write_set(plane, set, ss);
  EXPECT_EQ(ss.str(), "0\n3\n6\n1\n");
  EXPECT_EQ(read_set(ss), set);
}

TEST(Io, SetFileParsing) {
  std::istringstream with_comments("# chosen points\n\n4 : 0 1 3\n  9   # trailing\n");
  EXPECT_EQ(read_set(with_comments), (std::vector<PointId>{4, 9}));
  std::istringstream empty("# nothing\n");
  EXPECT_THROW(read_set(empty), ParseError);
  std::istringstream junk("4\nabc\n");
  EXPECT_THROW(read_set(junk), ParseError);
  std::istringstream negative("-3\n");
  EXPECT_THROW(read_set(negative), ParseError);
  std::istringstream two("4 5\n");
  EXPECT_THROW(read_set(two), ParseError);
}

TEST(Io, TrajectoryJsonRoundTrip) {
  const auto plane = build_pg2(11);
  const auto run = run_truncated(plane, 1.0);
  const auto j = trajectory_to_json(run.trajectory);
  ASSERT_EQ(j.size(), run.trajectory.size());
  EXPECT_TRUE(j[0].contains("bound_num"));
  const auto back = trajectory_from_json(nlohmann::json::parse(j.dump()));
  ASSERT_EQ(back.size(), run.trajectory.size());
  for (std::size_t n = 0; n < back.size(); ++n) {
    const auto &a = back[n], &b = run.trajectory[n];
    EXPECT_EQ(a.i, b.i);
    EXPECT_EQ(a.line, b.line);
    EXPECT_EQ(a.point, b.point);
    EXPECT_EQ(a.r_before, b.r_before);
    EXPECT_EQ(a.r_after, b.r_after);
    EXPECT_EQ(a.bound_num, b.bound_num);
    EXPECT_EQ(a.bound_den, b.bound_den);
    EXPECT_EQ(a.skew_available, b.skew_available);
  }
}

TEST(Io, PlainStepsHaveNullLine) {
  const auto plane = build_pg2(5);
  auto state = init_state(plane);
  const auto log = plain_greedy_step(state);
  const auto j = step_to_json(log);
  EXPECT_TRUE(j.at("line").is_null());
  EXPECT_FALSE(j.at("skew").get<bool>());
}
