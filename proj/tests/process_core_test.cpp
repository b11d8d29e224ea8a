#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <vector>

#include "ppwave/process_core.hpp"

namespace {

using namespace ppwave;

TEST(Window, RejectsEmptyInterval) {
  EXPECT_THROW(Window(1.0, 1.0), std::invalid_argument);
  EXPECT_THROW(Window(2.0, 1.0), std::invalid_argument);
  EXPECT_DOUBLE_EQ(Window(-1.0, 3.0).length(), 4.0);
}

TEST(EventTrain, SortsAndChecksWindow) {
  const EventTrain t({0.5, 0.1, 1.9, 0.5}, {0.0, 2.0});
  EXPECT_EQ(t.times(), (std::vector<double>{0.1, 0.5, 0.5, 1.9}));
  EXPECT_EQ(t.count(), 4u);
  EXPECT_THROW(EventTrain({2.5}, {0.0, 2.0}), std::invalid_argument);
  EXPECT_NO_THROW(EventTrain({0.0, 2.0}, {0.0, 2.0}));
}

TEST(CountIn, Examples) {
  const EventTrain t({0.1, 0.5, 1.9}, {0.0, 2.0});
  EXPECT_EQ(count_in(t, {0.0, 2.0}), 3u);
  EXPECT_EQ(count_in(t, {0.2, 1.0}), 1u);
  EXPECT_EQ(count_in(EventTrain({}, {0.0, 2.0}), {0.0, 2.0}), 0u);
  // Both endpoints are inclusive.
  EXPECT_EQ(count_in(t, {0.5, 1.9}), 2u);
}

TEST(ScaleTrain, Examples) {
  const auto s = scale_train(EventTrain({0.01, 0.02}, {0.0, 2.0}), 50.0);
  EXPECT_EQ(s.times(), (std::vector<double>{0.5, 1.0}));
  EXPECT_EQ(s.window(), Window(0.0, 100.0));

  const EventTrain x({0.3, 1.7}, {0.0, 2.0});
  EXPECT_EQ(scale_train(x, 1.0), x);

  const auto neg = scale_train(EventTrain({-0.5}, {-1.0, 3.0}), 2.0);
  EXPECT_EQ(neg.times(), (std::vector<double>{-1.0}));
  EXPECT_EQ(neg.window(), Window(-2.0, 6.0));

  EXPECT_THROW(scale_train(x, 0.0), std::invalid_argument);
  EXPECT_THROW(scale_train(x, -1.0), std::invalid_argument);
}

TEST(ScaleTrain, RoundTripAndCountInvariance) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> unif(-1.0, 3.0), fac(0.01, 200.0);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> t(50);
    for (auto& v : t) v = unif(rng);
    const EventTrain x(t, {-1.0, 3.0});
    const double c = fac(rng);
    const auto back = scale_train(scale_train(x, c), 1.0 / c);
    for (std::size_t i = 0; i < x.count(); ++i)
      EXPECT_NEAR(back[i], x[i], 1e-12 * std::max(1.0, std::abs(x[i])));

    double a = unif(rng), b = unif(rng);
    if (a > b) std::swap(a, b);
    if (a == b) continue;
    const Window w(a, b);
    const auto sx = scale_train(x, c);
    EXPECT_EQ(count_in(x, w), count_in(sx, Window(a * c, b * c)));
  }
}

TEST(EventFile, ReadWrite) {
  const EventTrain x({0.125, 1.0 / 3.0, 1.5}, {0.0, 2.0});
  std::stringstream ss;
  write_event_train(ss, x);
  EXPECT_EQ(ss.str().rfind("# window 0 2\n", 0), 0u);
  EXPECT_EQ(read_event_train(ss), x);
}

TEST(EventFile, ParsesCommentsAndDuplicates) {
  std::istringstream in("# window -1 3\n# a comment\n\n0.5\n0.5\n-0.25\n");
  const auto t = read_event_train(in);
  EXPECT_EQ(t.times(), (std::vector<double>{-0.25, 0.5, 0.5}));
  EXPECT_EQ(t.window(), Window(-1.0, 3.0));
}

TEST(EventFile, Errors) {
  std::istringstream no_header("0.5\n");
  EXPECT_THROW(read_event_train(no_header), std::runtime_error);
  std::istringstream bad("# window 0 1\nabc\n");
  EXPECT_THROW(read_event_train(bad), std::runtime_error);
  std::istringstream outside("# window 0 1\n1.5\n");
  EXPECT_THROW(read_event_train(outside), std::invalid_argument);
}

TEST(InteractionModel, Validation) {
  InteractionModel m;
  EXPECT_NO_THROW(m.validate());
  m.nu = 0.01;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = {};
  m.mu_p = 0.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
  m = {};
  m.theta = -1.0;
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

}  // namespace
