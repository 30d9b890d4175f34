#include "ftl/instance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "ftl/rng.hpp"

namespace ftl {
namespace {

void add(std::vector<Violation>& out, std::string code, std::string detail) {
  out.push_back({std::move(code), std::move(detail)});
}

// Arrival at the destination of the dedicated route (0, o, d, 0) started in
// shift s, waiting for the commodity's availability at the pickup. Used to
// decide whether a commodity can be serviced at all.
bool dedicated_route_fits(const Instance& inst, const Commodity& k, int s) {
  const auto& net = inst.network;
  const Minutes start = inst.shifts.start(s);
  const Minutes end = inst.shifts.end(s);
  const Minutes pickup_arrival = start + net.service_time[0] + net.travel_time[0][k.origin];
  const Minutes pickup_start = std::max(pickup_arrival, k.available);
  const Minutes delivery = pickup_start + net.service_time[k.origin] + net.travel_time[k.origin][k.destination];
  const Minutes back_home = delivery + net.service_time[k.destination] + net.travel_time[k.destination][0];
  return delivery <= k.deadline && back_home <= end;
}

}  // namespace

std::vector<Violation> validate_instance(const Instance& inst) {
  std::vector<Violation> out;
  const auto& net = inst.network;
  const int n = net.node_count;

  if (n < 1) add(out, "network.node-count", "node count must be positive");
  auto check_matrix = [&](const auto& m, const std::string& name) {
    if (static_cast<int>(m.size()) != n) {
      add(out, "network.shape", name + " has " + std::to_string(m.size()) + " rows, expected " + std::to_string(n));
      return;
    }
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(m[i].size()) != n) {
        add(out, "network.shape", name + " row " + std::to_string(i) + " has wrong arity");
        continue;
      }
      for (int j = 0; j < n; ++j) {
        if (m[i][j] < 0)
          add(out, "network.negative", name + "[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative");
      }
      if (m[i].size() == static_cast<size_t>(n) && m[i][i] != 0)
        add(out, "network.diagonal", name + " diagonal entry " + std::to_string(i) + " is nonzero");
    }
  };
  check_matrix(net.distance, "distance");
  check_matrix(net.travel_time, "travel_time");
  if (static_cast<int>(net.service_time.size()) != n) {
    add(out, "network.shape", "service_time has wrong arity");
  } else {
    for (int i = 0; i < n; ++i)
      if (net.service_time[i] < 0) add(out, "network.negative", "service_time[" + std::to_string(i) + "] is negative");
  }

  if (inst.shifts.shift_count < 1) add(out, "shifts.count", "shift count must be positive");
  if (inst.shifts.duration <= 0) add(out, "shifts.duration", "shift duration must be positive");
  if (inst.fleet_size < 1) add(out, "fleet.size", "fleet size must be positive");

  const bool network_ok = out.empty();
  const Minutes horizon_end = inst.shifts.horizon_end();

  std::set<std::string> seen_ids;
  for (const auto& k : inst.commodities) {
    if (!seen_ids.insert(k.id).second) add(out, "commodity.duplicate-id", "duplicate commodity id " + k.id);
    if (k.origin == k.destination) add(out, "commodity.self-loop", k.id + " has origin == destination");
    if (k.origin < 0 || k.origin >= n || k.destination < 0 || k.destination >= n)
      add(out, "commodity.node-range", k.id + " references a node outside the network");
    if (k.quantity < 1) add(out, "commodity.quantity", k.id + " has non-positive quantity");
    if (k.available >= k.deadline) add(out, "commodity.window-empty", k.id + " has an empty time window");
    if (k.available < inst.shifts.first_start || k.deadline > horizon_end)
      add(out, "commodity.outside-horizon", k.id + " window leaves the planning horizon");
  }

  if (network_ok) {
    for (const auto& k : inst.commodities) {
      if (k.origin == k.destination || k.origin < 0 || k.origin >= n || k.destination < 0 || k.destination >= n ||
          k.available >= k.deadline)
        continue;  // already reported above
      bool fits = false;
      for (int s = 0; s < inst.shifts.shift_count && !fits; ++s) fits = dedicated_route_fits(inst, k, s);
      if (!fits) add(out, "commodity.no-shift-fit", k.id + " cannot be serviced by a dedicated route in any shift");
    }
  }
  return out;
}

Instance generate_instance(const GeneratorConfig& cfg) {
  if (cfg.node_count < 3) throw GeneratorError("node_count must be at least 3");
  if (cfg.shift_count < 1) throw GeneratorError("shift_count must be positive");
  if (cfg.shift_duration <= 0) throw GeneratorError("shift_duration must be positive");
  if (cfg.commodity_count.first < 1 || cfg.commodity_count.second < cfg.commodity_count.first)
    throw GeneratorError("commodity_count range is empty");
  if (cfg.unit_total.first < 1 || cfg.unit_total.second < cfg.unit_total.first)
    throw GeneratorError("unit_total range is empty");
  if (cfg.fraction_available_at_start < 0.0 || cfg.fraction_available_at_start > 1.0)
    throw GeneratorError("fraction_available_at_start outside [0,1]");
  if (cfg.emergency_fraction < 0.0 || cfg.emergency_fraction > 1.0)
    throw GeneratorError("emergency_fraction outside [0,1]");
  if (cfg.distance_range.first < 1 || cfg.distance_range.second < cfg.distance_range.first)
    throw GeneratorError("distance_range is empty");
  if (cfg.speed_km_per_min <= 0.0) throw GeneratorError("speed must be positive");

  DetRng rng(cfg.seed);
  Instance inst;
  auto& net = inst.network;
  const int n = cfg.node_count;
  net.node_count = n;
  net.distance.assign(n, std::vector<Km>(n, 0));
  net.travel_time.assign(n, std::vector<Minutes>(n, 0));
  net.service_time.assign(n, cfg.service_time);
  net.service_time[0] = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      net.distance[i][j] = rng.uniform_int(cfg.distance_range.first, cfg.distance_range.second);
      net.travel_time[i][j] =
          static_cast<Minutes>(std::llround(static_cast<double>(net.distance[i][j]) / cfg.speed_km_per_min));
    }

  inst.shifts = {cfg.shift_count, 0, cfg.shift_duration};
  const Minutes horizon = inst.shifts.horizon_end();

  const int m = static_cast<int>(rng.uniform_int(cfg.commodity_count.first, cfg.commodity_count.second));
  int64_t total_units = rng.uniform_int(cfg.unit_total.first, cfg.unit_total.second);
  if (total_units < m) total_units = m;

  // Random composition of total_units into m positive parts.
  std::vector<int64_t> cuts;
  {
    std::set<int64_t> chosen;
    while (static_cast<int>(chosen.size()) < m - 1) chosen.insert(rng.uniform_int(1, total_units - 1));
    cuts.assign(chosen.begin(), chosen.end());
  }
  std::vector<int64_t> quantity(m);
  {
    int64_t prev = 0;
    for (int i = 0; i < m; ++i) {
      const int64_t next = (i + 1 < m) ? cuts[i] : total_units;
      quantity[i] = next - prev;
      prev = next;
    }
  }

  std::vector<int> order(m);
  for (int i = 0; i < m; ++i) order[i] = i;
  rng.shuffle(order);
  const int n_start = static_cast<int>(std::llround(cfg.fraction_available_at_start * m));
  std::vector<bool> at_start(m, false);
  for (int i = 0; i < std::min(n_start, m); ++i) at_start[order[i]] = true;

  rng.shuffle(order);
  const int n_emergency = static_cast<int>(std::llround(cfg.emergency_fraction * m));
  std::vector<bool> emergency(m, false);
  for (int i = 0; i < std::min(n_emergency, m); ++i) emergency[order[i]] = true;

  constexpr Minutes kEmergencyCap = 599;  // strictly under 10 hours
  constexpr Minutes kMinWindow = 60;

  inst.fleet_size = 1;  // placeholder so dedicated_route_fits can run
  for (int i = 0; i < m; ++i) {
    Commodity k;
    k.id = "c" + std::to_string(i + 1);
    k.quantity = quantity[i];
    bool ok = false;
    for (int attempt = 0; attempt < 256 && !ok; ++attempt) {
      k.origin = static_cast<int>(rng.uniform_int(1, n - 1));
      k.destination = static_cast<int>(rng.uniform_int(1, n - 1));
      if (k.origin == k.destination) continue;
      // Minimum slack a window must leave for the dedicated route.
      const Minutes needed = net.travel_time[0][k.origin] + net.service_time[k.origin] +
                             net.travel_time[k.origin][k.destination];
      Minutes lo = std::max(kMinWindow, needed + 1);
      Minutes hi;
      if (emergency[i]) {
        hi = kEmergencyCap;
        if (lo > hi) continue;
      } else {
        lo = std::max<Minutes>(lo, 600);
        hi = horizon;
      }
      const Minutes sigma_cap = horizon - lo;
      if (sigma_cap < 0) continue;
      k.available = at_start[i] ? 0 : rng.uniform_int(0, sigma_cap);
      hi = std::min(hi, horizon - k.available);
      if (lo > hi) continue;
      k.deadline = k.available + rng.uniform_int(lo, hi);
      bool fits = false;
      for (int s = 0; s < inst.shifts.shift_count && !fits; ++s) fits = dedicated_route_fits(inst, k, s);
      ok = fits;
    }
    if (!ok)
      throw GeneratorError("could not place a window for commodity " + k.id +
                           "; the configured windows cannot fit any shift");
    inst.commodities.push_back(std::move(k));
  }

  inst.fleet_size = cfg.fleet_size > 0
                        ? cfg.fleet_size
                        : (total_units + 2 * cfg.shift_count - 1) / (2 * cfg.shift_count);

  const auto violations = validate_instance(inst);
  if (!violations.empty())
    throw GeneratorError("generated instance failed validation: " + violations.front().code);
  return inst;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

int64_t parse_int(const std::string& tok, int line) {
  try {
    size_t pos = 0;
    const int64_t v = std::stoll(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(line, "expected an integer, got '" + tok + "'");
  }
}

}  // namespace

Instance parse_instance(std::string_view text) {
  Instance inst;
  enum class Section { None, Meta, Distance, TravelTime, ServiceTime, Commodities };
  Section section = Section::None;
  bool saw_meta = false, saw_distance = false, saw_travel = false, saw_service = false, saw_commodities = false;
  int matrix_row = 0;
  int nodes = -1;

  std::istringstream stream{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(stream, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto last = line.find_last_not_of(" \t\r");
    line = line.substr(first, last - first + 1);

    if (line.front() == '[') {
      if (line == "[meta]") {
        section = Section::Meta;
        saw_meta = true;
      } else if (line == "[distance]") {
        section = Section::Distance;
        saw_distance = true;
        matrix_row = 0;
      } else if (line == "[travel_time]") {
        section = Section::TravelTime;
        saw_travel = true;
        matrix_row = 0;
      } else if (line == "[service_time]") {
        section = Section::ServiceTime;
        saw_service = true;
      } else if (line == "[commodities]") {
        section = Section::Commodities;
        saw_commodities = true;
      } else {
        throw ParseError(line_no, "unknown section " + line);
      }
      if (section != Section::Meta && nodes < 0)
        throw ParseError(line_no, "section " + line + " appears before [meta] declared nodes");
      continue;
    }

    const auto toks = split_ws(line);
    switch (section) {
      case Section::None:
        throw ParseError(line_no, "content before any section header");
      case Section::Meta: {
        if (toks.size() != 2) throw ParseError(line_no, "meta entries are 'key value'");
        const int64_t v = parse_int(toks[1], line_no);
        if (toks[0] == "nodes") {
          nodes = static_cast<int>(v);
          inst.network.node_count = nodes;
          inst.network.distance.assign(nodes, {});
          inst.network.travel_time.assign(nodes, {});
        } else if (toks[0] == "shifts") {
          inst.shifts.shift_count = static_cast<int>(v);
        } else if (toks[0] == "shift_start") {
          inst.shifts.first_start = v;
        } else if (toks[0] == "shift_duration") {
          inst.shifts.duration = v;
        } else if (toks[0] == "fleet") {
          inst.fleet_size = v;
        } else {
          throw ParseError(line_no, "unknown meta key '" + toks[0] + "'");
        }
        break;
      }
      case Section::Distance:
      case Section::TravelTime: {
        if (static_cast<int>(toks.size()) != nodes)
          throw ParseError(line_no, "matrix row " + std::to_string(matrix_row) + " has " +
                                        std::to_string(toks.size()) + " entries, expected " + std::to_string(nodes));
        if (matrix_row >= nodes) throw ParseError(line_no, "matrix has more rows than nodes");
        std::vector<int64_t> row(nodes);
        for (int j = 0; j < nodes; ++j) row[j] = parse_int(toks[j], line_no);
        if (section == Section::Distance)
          inst.network.distance[matrix_row] = row;
        else
          inst.network.travel_time[matrix_row] = row;
        ++matrix_row;
        break;
      }
      case Section::ServiceTime: {
        if (static_cast<int>(toks.size()) != nodes)
          throw ParseError(line_no, "service_time row has wrong arity");
        inst.network.service_time.clear();
        for (const auto& t : toks) inst.network.service_time.push_back(parse_int(t, line_no));
        break;
      }
      case Section::Commodities: {
        if (toks.size() != 6)
          throw ParseError(line_no, "commodity lines are 'id origin dest qty available deadline'");
        Commodity k;
        k.id = toks[0];
        k.origin = static_cast<int>(parse_int(toks[1], line_no));
        k.destination = static_cast<int>(parse_int(toks[2], line_no));
        k.quantity = parse_int(toks[3], line_no);
        k.available = parse_int(toks[4], line_no);
        k.deadline = parse_int(toks[5], line_no);
        inst.commodities.push_back(std::move(k));
        break;
      }
    }
  }

  if (!saw_meta) throw ParseError(line_no, "missing [meta] section");
  if (!saw_distance) throw ParseError(line_no, "missing [distance] section");
  if (!saw_travel) throw ParseError(line_no, "missing [travel_time] section");
  if (!saw_service) throw ParseError(line_no, "missing [service_time] section");
  if (!saw_commodities) throw ParseError(line_no, "missing [commodities] section");
  for (int i = 0; i < inst.network.node_count; ++i) {
    if (static_cast<int>(inst.network.distance[i].size()) != inst.network.node_count)
      throw ParseError(line_no, "distance matrix is missing row " + std::to_string(i));
    if (static_cast<int>(inst.network.travel_time[i].size()) != inst.network.node_count)
      throw ParseError(line_no, "travel_time matrix is missing row " + std::to_string(i));
  }
  return inst;
}

std::string serialize_instance(const Instance& inst) {
  std::ostringstream out;
  out << "[meta]\n";
  out << "nodes " << inst.network.node_count << "\n";
  out << "shifts " << inst.shifts.shift_count << "\n";
  out << "shift_start " << inst.shifts.first_start << "\n";
  out << "shift_duration " << inst.shifts.duration << "\n";
  out << "fleet " << inst.fleet_size << "\n";
  auto matrix = [&](const auto& m, const char* name) {
    out << "[" << name << "]\n";
    for (const auto& row : m) {
      for (size_t j = 0; j < row.size(); ++j) out << (j ? " " : "") << row[j];
      out << "\n";
    }
  };
  matrix(inst.network.distance, "distance");
  matrix(inst.network.travel_time, "travel_time");
  out << "[service_time]\n";
  for (size_t i = 0; i < inst.network.service_time.size(); ++i)
    out << (i ? " " : "") << inst.network.service_time[i];
  out << "\n[commodities]\n";
  for (const auto& k : inst.commodities)
    out << k.id << " " << k.origin << " " << k.destination << " " << k.quantity << " " << k.available << " "
        << k.deadline << "\n";
  return out.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace ftl
