#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ftl {

using Minutes = int64_t;  // integer minutes from the start of the planning horizon
using Km = int64_t;       // integer kilometres

// All types here are plain values and every function is referentially
// transparent, so concurrent use needs no coordination.

// Terminal network. Node 0 is the depot. Matrices are asymmetric.
struct Network {
  int node_count = 0;
  std::vector<std::vector<Km>> distance;        // km
  std::vector<std::vector<Minutes>> travel_time;  // minutes
  std::vector<Minutes> service_time;              // per-node, minutes
};

// A batch of identical truckload units sharing origin, destination and window.
struct Commodity {
  std::string id;
  int origin = 0;
  int destination = 0;
  int64_t quantity = 0;
  Minutes available = 0;  // earliest pickup
  Minutes deadline = 0;   // latest arrival at the destination
};

// Contiguous equal-length working shifts.
struct ShiftCalendar {
  int shift_count = 0;
  Minutes first_start = 0;
  Minutes duration = 0;

  Minutes start(int s) const { return first_start + static_cast<Minutes>(s) * duration; }
  Minutes end(int s) const { return start(s) + duration; }
  Minutes horizon_end() const { return start(shift_count); }
};

struct Instance {
  Network network;
  std::vector<Commodity> commodities;
  ShiftCalendar shifts;
  int64_t fleet_size = 0;  // trucks available per shift
};

struct Violation {
  std::string code;    // machine readable, e.g. "commodity.window-empty"
  std::string detail;  // human readable
};

// Returns every violated invariant; empty means the instance is usable.
std::vector<Violation> validate_instance(const Instance& inst);

struct GeneratorConfig {
  int node_count = 7;
  int shift_count = 4;
  Minutes shift_duration = 720;
  std::pair<int, int> commodity_count{50, 90};
  std::pair<int64_t, int64_t> unit_total{260, 630};
  double fraction_available_at_start = 0.30;
  double emergency_fraction = 0.20;  // share of commodities with a window under 10h
  std::pair<Km, Km> distance_range{5, 40};
  double speed_km_per_min = 1.0;
  Minutes service_time = 30;
  int64_t fleet_size = 0;  // 0 = derive from unit total
  uint64_t seed = 1;
};

class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Deterministic for a fixed seed; the result always passes validate_instance.
Instance generate_instance(const GeneratorConfig& cfg);

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-oriented instance file, see README for the layout. Round-trip exact.
Instance parse_instance(std::string_view text);
std::string serialize_instance(const Instance& inst);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace ftl
