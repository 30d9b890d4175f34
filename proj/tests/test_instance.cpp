#include "doctest.h"

#include <cmath>
#include <set>

#include "fixtures.hpp"
#include "ftl/instance.hpp"

using namespace ftl;

namespace {

bool has_code(const std::vector<Violation>& vs, const std::string& code) {
  for (const auto& v : vs)
    if (v.code == code) return true;
  return false;
}

}  // namespace

TEST_CASE("five-node fixture validates cleanly") {
  const Instance inst = fixtures::five_node();
  CHECK(validate_instance(inst).empty());
}

TEST_CASE("empty window and self-loop are reported") {
  Instance inst = fixtures::five_node();
  inst.commodities[0].deadline = inst.commodities[0].available;
  inst.commodities[1].destination = inst.commodities[1].origin;
  const auto vs = validate_instance(inst);
  CHECK(has_code(vs, "commodity.window-empty"));
  CHECK(has_code(vs, "commodity.self-loop"));
}

TEST_CASE("matrix and shift problems are reported") {
  Instance inst = fixtures::five_node();
  inst.network.distance[2][2] = 7;
  inst.network.travel_time[1].pop_back();
  inst.fleet_size = 0;
  const auto vs = validate_instance(inst);
  CHECK(has_code(vs, "network.diagonal"));
  CHECK(has_code(vs, "network.shape"));
  CHECK(has_code(vs, "fleet.size"));
}

TEST_CASE("unreachable commodity window is reported") {
  Instance inst = fixtures::five_node();
  inst.commodities[0].available = 700;
  inst.commodities[0].deadline = 719;  // no dedicated run fits before the shift ends
  CHECK(has_code(validate_instance(inst), "commodity.no-shift-fit"));
}

TEST_CASE("generator is deterministic per seed") {
  GeneratorConfig cfg;
  cfg.node_count = 6;
  cfg.shift_count = 4;
  cfg.commodity_count = {20, 30};
  cfg.unit_total = {80, 150};
  cfg.seed = 1;
  const Instance a = generate_instance(cfg);
  const Instance b = generate_instance(cfg);
  CHECK(serialize_instance(a) == serialize_instance(b));
  cfg.seed = 2;
  const Instance c = generate_instance(cfg);
  CHECK(serialize_instance(a) != serialize_instance(c));
}

TEST_CASE("generated instances honour the configured mix") {
  GeneratorConfig cfg;
  cfg.shift_count = 8;
  cfg.commodity_count = {115, 125};
  cfg.unit_total = {800, 1100};
  cfg.fraction_available_at_start = 0.30;
  cfg.emergency_fraction = 0.20;
  cfg.seed = 7;
  const Instance inst = generate_instance(cfg);
  CHECK(validate_instance(inst).empty());

  const int m = static_cast<int>(inst.commodities.size());
  CHECK(m >= 115);
  CHECK(m <= 125);

  int64_t units = 0;
  int at_start = 0, emergency = 0;
  for (const auto& k : inst.commodities) {
    units += k.quantity;
    if (k.available == 0) ++at_start;
    if (k.deadline - k.available < 600) ++emergency;
  }
  CHECK(units >= 800);
  CHECK(units <= 1100);
  // share available at the horizon start within one commodity of the target
  CHECK(std::abs(at_start - static_cast<int>(std::llround(0.30 * m))) <= 1);
  const double emergency_fraction = static_cast<double>(emergency) / m;
  CHECK(emergency_fraction >= 0.10);
  CHECK(emergency_fraction <= 0.30);
}

TEST_CASE("all commodities available at start when the fraction is one") {
  GeneratorConfig cfg;
  cfg.commodity_count = {10, 15};
  cfg.unit_total = {30, 60};
  cfg.fraction_available_at_start = 1.0;
  cfg.seed = 3;
  const Instance inst = generate_instance(cfg);
  for (const auto& k : inst.commodities) CHECK(k.available == 0);
}

TEST_CASE("generated instances validate across seeds") {
  for (uint64_t seed = 1; seed <= 10; ++seed) {
    GeneratorConfig cfg;
    cfg.node_count = 5;
    cfg.shift_count = 2;
    cfg.commodity_count = {5, 9};
    cfg.unit_total = {15, 30};
    cfg.seed = seed;
    const Instance inst = generate_instance(cfg);
    CHECK(validate_instance(inst).empty());
  }
}

TEST_CASE("generator rejects impossible windows") {
  GeneratorConfig cfg;
  cfg.shift_count = 1;
  cfg.shift_duration = 30;  // nothing fits half an hour
  cfg.commodity_count = {3, 5};
  cfg.unit_total = {5, 10};
  CHECK_THROWS_AS(generate_instance(cfg), GeneratorError);
}

TEST_CASE("serialize/parse round trip is exact") {
  const Instance inst = fixtures::five_node();
  const std::string text = serialize_instance(inst);
  const Instance back = parse_instance(text);
  CHECK(serialize_instance(back) == text);
  CHECK(back.commodities.size() == inst.commodities.size());
  CHECK(back.commodities[0].id == "k1");
  CHECK(back.network.travel_time[0][1] == 15);
  CHECK(back.fleet_size == inst.fleet_size);

  GeneratorConfig cfg;
  cfg.commodity_count = {10, 20};
  cfg.unit_total = {40, 80};
  cfg.seed = 11;
  const Instance gen = generate_instance(cfg);
  CHECK(serialize_instance(parse_instance(serialize_instance(gen))) == serialize_instance(gen));
}

TEST_CASE("comments and blank lines are ignored") {
  std::string text = serialize_instance(fixtures::five_node());
  text = "# generated fixture\n\n" + text + "\n# trailing comment\n";
  CHECK(serialize_instance(parse_instance(text)) == serialize_instance(fixtures::five_node()));
}

TEST_CASE("missing section is a parse error naming the section") {
  const Instance inst = fixtures::five_node();
  std::string text = serialize_instance(inst);
  const auto pos = text.find("[commodities]");
  text = text.substr(0, pos);
  try {
    parse_instance(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("commodities") != std::string::npos);
  }
}

TEST_CASE("wrong matrix arity is a parse error with the row") {
  std::string text = serialize_instance(fixtures::five_node());
  const auto pos = text.find("0 10");
  text.replace(pos, 4, "0");  // first distance row loses an entry
  try {
    parse_instance(text);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("row 0") != std::string::npos);
  }
}

TEST_CASE("unknown section is rejected") {
  std::string text = serialize_instance(fixtures::five_node());
  text += "[mystery]\n1 2 3\n";
  CHECK_THROWS_AS(parse_instance(text), ParseError);
}
