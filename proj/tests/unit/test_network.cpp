#include "nlnet/error.hpp"
#include "nlnet/network.hpp"
#include "nlnet/scenario.hpp"

#include "support.hpp"

#include <doctest.h>

#include <functional>
#include <stdexcept>

using namespace nlnet;

namespace {
  Junction& first_with(Network& n, std::size_t n_in, std::size_t n_out) {
    for (auto& j : n.junctions) {
      if (j.incoming.size() == n_in && j.outgoing.size() == n_out) {
        return j;
      }
    }
    throw std::logic_error("no such junction");
  }
}  // namespace

TEST_CASE("affine velocity law") {
  CHECK(eval_velocity({0.5, 1.0}, 0.0) == doctest::Approx(0.5));
  CHECK(eval_velocity({2.0, 1.0}, 1.0) == doctest::Approx(0.0));
  CHECK(eval_velocity({1.0, 1.0}, 0.4) == doctest::Approx(0.6));
  CHECK_THROWS_AS(eval_velocity({1.0, 1.0}, 1.2), DomainError);
  CHECK_THROWS_AS(eval_velocity({1.0, 1.0}, -0.1), DomainError);

  VelocityLaw const law{1.3, 0.75};
  double prev = law(0.0);
  for (int i = 1; i <= 300; ++i) {
    double const v = law(0.75 * i / 300.0);
    CHECK(v <= prev);
    CHECK(v >= 0.0);
    prev = v;
  }
}

TEST_CASE("diamond network is valid") {
  CHECK(validate_network(builtin_diamond().network, 0.5).empty());
}

TEST_CASE("range longer than a road") {
  Network net;
  net.roads = {test::road(1, 0.0, 1.0), test::road(2, 1.0, 3.0, 1, 1, true)};
  net.junctions = {Junction{1, {1}, {2}, CouplingKind::one_to_one, {}, {}}};
  REQUIRE(validate_network(net, 0.5).empty());
  auto const v = validate_network(net, 1.5);
  REQUIRE(v.size() == 1);
  CHECK(v[0].what.find("eta") != std::string::npos);
}

TEST_CASE("distribution row must sum to one") {
  Network net = test::one_to_two(CouplingKind::one_to_two_maxflux, 0.3, 0.6);
  CHECK(validate_network(net, 0.1).size() == 1);
}

TEST_CASE("every single-field corruption of the diamond is rejected") {
  using Corruption = std::function<void(Network&)>;
  std::vector<std::pair<char const*, Corruption>> const cases{
      {"negative v_max", [](Network& n) { n.roads[3].law.v_max = -1.0; }},
      {"zero rho_max", [](Network& n) { n.roads[2].law.rho_max = 0.0; }},
      {"empty interval", [](Network& n) { n.roads[4].b = n.roads[4].a; }},
      {"short road", [](Network& n) { n.roads[5].b = n.roads[5].a + 0.4; }},
      {"duplicate road id", [](Network& n) { n.roads[6].id = n.roads[5].id; }},
      {"alpha row", [](Network& n) { first_with(n, 1, 2).distribution[0][0] = 0.7; }},
      {"negative alpha", [](Network& n) { first_with(n, 1, 2).distribution = {{-0.2, 1.2}}; }},
      {"priority sum", [](Network& n) { first_with(n, 2, 1).priority[0] = 0.9; }},
      {"unknown road", [](Network& n) { n.junctions[2].outgoing[0] = 42; }},
      {"coupling arity", [](Network& n) {
         first_with(n, 1, 2).coupling = CouplingKind::two_to_one_priority;
       }},
      {"missing distribution", [](Network& n) { first_with(n, 1, 2).distribution.clear(); }},
      {"missing priority", [](Network& n) { first_with(n, 2, 1).priority.clear(); }},
      {"road twice in a junction", [](Network& n) {
         auto& j = first_with(n, 1, 2);
         j.outgoing[1] = j.outgoing[0];
       }},
  };
  for (auto const& [name, corrupt] : cases) {
    CAPTURE(name);
    Network net = builtin_diamond().network;
    corrupt(net);
    CHECK_FALSE(validate_network(net, 0.5).empty());
  }
}

TEST_CASE("coupling names round trip") {
  for (auto k : {CouplingKind::one_to_one, CouplingKind::one_to_two_maxflux,
                 CouplingKind::one_to_two_distribution, CouplingKind::two_to_one_maxflux,
                 CouplingKind::two_to_one_priority}) {
    CHECK(parse_coupling(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_coupling("three_to_one"), ConfigError);
  CHECK(coupling_for(CouplingFamily::distribution, 2, 1) == CouplingKind::two_to_one_priority);
  CHECK(coupling_for(CouplingFamily::maxflux, 1, 2) == CouplingKind::one_to_two_maxflux);
}
