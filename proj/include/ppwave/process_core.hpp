#pragma once

// Event trains, observation windows and the parent/child interaction model.

#include <algorithm>
#include <cstddef>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ppwave {

/// Closed real interval [lo;hi] with lo < hi.
struct Window {
  double lo = 0.0;
  double hi = 1.0;

  Window() = default;
  Window(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo < hi))
      throw std::invalid_argument("Window: lo must be < hi");
  }

  double length() const noexcept { return hi - lo; }
  bool contains(double t) const noexcept { return lo <= t && t <= hi; }

  friend bool operator==(const Window&, const Window&) = default;
};

/// Sorted event times observed on a window. Ties are allowed and kept.
class EventTrain {
 public:
  EventTrain() = default;

  /// Sorts `times` and checks that every event lies in `window`.
  EventTrain(std::vector<double> times, Window window)
      : times_(std::move(times)), window_(window) {
    std::sort(times_.begin(), times_.end());
    if (!times_.empty() &&
        (times_.front() < window_.lo || times_.back() > window_.hi))
      throw std::invalid_argument("EventTrain: event outside window");
  }

  const std::vector<double>& times() const noexcept { return times_; }
  const Window& window() const noexcept { return window_; }
  std::size_t count() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }

  auto begin() const noexcept { return times_.begin(); }
  auto end() const noexcept { return times_.end(); }
  double operator[](std::size_t i) const { return times_[i]; }

  friend bool operator==(const EventTrain&, const EventTrain&) = default;

 private:
  std::vector<double> times_;
  Window window_;
};

/// Parent/child model: parents are Poisson(mu_p) on [0;T], children are
/// orphans at rate mu_c plus, per parent U, a Poisson process of intensity
/// theta on [U+nu; U+b_support].
struct InteractionModel {
  double mu_p = 50.0;
  double mu_c = 20.0;
  double theta = 0.0;
  double nu = 0.0;
  double b_support = 0.01;
  double T = 1.0;

  void validate() const {
    if (!(mu_p > 0.0)) throw std::invalid_argument("InteractionModel: mu_p must be > 0");
    if (!(mu_c >= 0.0)) throw std::invalid_argument("InteractionModel: mu_c must be >= 0");
    if (!(theta >= 0.0)) throw std::invalid_argument("InteractionModel: theta must be >= 0");
    if (!(nu >= 0.0)) throw std::invalid_argument("InteractionModel: nu must be >= 0");
    if (!(b_support - nu > 0.0))
      throw std::invalid_argument("InteractionModel: need nu < b_support");
    if (!(T > 0.0)) throw std::invalid_argument("InteractionModel: T must be > 0");
  }

  /// Parent window [0;T].
  Window parent_window() const { return {0.0, T}; }
  /// Child observation window [-1;T+1].
  Window child_window() const { return {-1.0, T + 1.0}; }
};

/// Number of events t with w.lo <= t <= w.hi.
inline std::size_t count_in(const EventTrain& train, const Window& w) {
  const auto& t = train.times();
  auto first = std::lower_bound(t.begin(), t.end(), w.lo);
  auto last = std::upper_bound(first, t.end(), w.hi);
  return static_cast<std::size_t>(last - first);
}

/// Events of `train` inside `w`, observed on `w`.
inline EventTrain restrict_to(const EventTrain& train, const Window& w) {
  const auto& t = train.times();
  auto first = std::lower_bound(t.begin(), t.end(), w.lo);
  auto last = std::upper_bound(first, t.end(), w.hi);
  return EventTrain(std::vector<double>(first, last), w);
}

/// Multiplies every time and both window endpoints by `factor` (> 0).
inline EventTrain scale_train(const EventTrain& train, double factor) {
  if (!(factor > 0.0))
    throw std::invalid_argument("scale_train: factor must be > 0");
  std::vector<double> out(train.times());
  for (auto& t : out) t *= factor;
  return EventTrain(std::move(out),
                    Window(train.window().lo * factor, train.window().hi * factor));
}

// Plain-text event file: "# window lo hi" header, then one time per line.
// Blank lines and further '#' comment lines are ignored.

inline EventTrain read_event_train(std::istream& in) {
  std::string line;
  bool have_window = false;
  double lo = 0.0, hi = 0.0;
  std::vector<double> times;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto pos = line.find_first_not_of(" \t\r");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') {
      std::istringstream hs(line.substr(pos + 1));
      std::string key;
      if (hs >> key && key == "window") {
        if (!(hs >> lo >> hi))
          throw std::runtime_error("event file: malformed window header at line " +
                                   std::to_string(lineno));
        have_window = true;
      }
      continue;
    }
    std::istringstream ls(line);
    double t;
    if (!(ls >> t))
      throw std::runtime_error("event file: bad time at line " + std::to_string(lineno));
    times.push_back(t);
  }
  if (!have_window)
    throw std::runtime_error("event file: missing '# window lo hi' header");
  return EventTrain(std::move(times), Window(lo, hi));
}

inline void write_event_train(std::ostream& out, const EventTrain& train) {
  const auto old_prec = out.precision(std::numeric_limits<double>::max_digits10);
  out << "# window " << train.window().lo << ' ' << train.window().hi << '\n';
  for (double t : train) out << t << '\n';
  out.precision(old_prec);
}

}  // namespace ppwave
