#include <cstdlib>
#include <string>
#include <vector>

#include "catch_amalgamated.hpp"

#include "cmpp/io.hpp"
#include "cmpp/verify.hpp"

using namespace cmpp;

TEST_CASE("argument parsing", "[io]") {
  CHECK(io::parse_int_list("0,0,1,0") == std::vector<int>{0, 0, 1, 0});
  CHECK(io::parse_int_list("").empty());
  CHECK_THROWS_AS(io::parse_int_list("1,,2"), usage_error);
  CHECK_THROWS_AS(io::parse_int_list("1,x"), usage_error);
  const auto parts = io::parse_parts("3:0,7:1");
  REQUIRE(parts.size() == 2);
  CHECK(parts[1] == Part{7, 1});
  CHECK_THROWS_AS(io::parse_parts("3-0"), usage_error);
  CHECK_THROWS_AS(io::parse_parts("3:0:1"), usage_error);
}

TEST_CASE("partition json", "[io]") {
  const CmppPartition p(DiagramConfig(3, {0, 0, 1, 0}), {{7, 1}, {3, 0}});
  CHECK(io::to_json(p).dump() ==
        R"({"ell":3,"k":[0,0,1,0],"variant":"standard","parts":[{"magnitude":3,"absolute_height":0},)"
        R"({"magnitude":7,"absolute_height":1}]})");
}

TEST_CASE("heights json", "[io]") {
  const CmppPartition p(DiagramConfig(3, {0, 0, 1, 0}), {{3, 0}, {7, 1}, {14, 2}, {23, 2}, {26, 2}, {34, 1}});
  const auto j = io::heights_json(p, relative_heights(p), nullptr);
  CHECK(j["profile"].dump() == "[2,2,2]");
  CHECK(j["heights"][2].dump() == R"({"magnitude":14,"absolute_height":2,"relative_height":2})");
  CHECK_FALSE(j.contains("trace"));
}

TEST_CASE("series and counts json use decimal strings", "[io]") {
  const auto s = series_for_family(Family::main, 1, 1, 4, 1);
  CHECK(io::to_json(s).dump() ==
        R"([{"z":0,"q":0,"c":"1"},{"z":1,"q":1,"c":"1"},{"z":1,"q":2,"c":"1"},{"z":1,"q":3,"c":"1"},{"z":1,"q":4,"c":"1"}])");
  const auto t = enumerate_admissible(DiagramConfig(1, {0, 1}), {4, std::nullopt, std::nullopt});
  CHECK(io::to_csv(t) == "j,n,count\n0,0,1\n1,1,1\n1,2,1\n1,3,1\n1,4,1\n2,4,1\n");
  CHECK(io::to_json(t)[0].dump() == R"({"j":0,"n":0,"count":"1"})");
}

TEST_CASE("verification reports", "[io]") {
  VerifyRequest rq;
  rq.family = VerifyFamily::main;
  rq.ell = 1;
  rq.index = 1;
  rq.max_weight = 20;
  rq.max_z = 20;
  const auto ok = verify(rq);
  CHECK(ok.pass);
  CHECK(ok.mismatches == 0);
  CHECK_FALSE(ok.cells.empty());
  CHECK(io::to_json(ok)["pass"] == true);

  rq.perturb = true;
  const auto bad = verify(rq);
  CHECK_FALSE(bad.pass);
  CHECK(bad.mismatches > 0);

  VerifyRequest b;
  b.family = VerifyFamily::bounded_p0;
  b.ell = 1;
  b.max_weight = 10;
  b.max_z = 10;
  CHECK_THROWS_AS(verify(b), usage_error);
  b.bound = 3;
  const auto rb = verify(b);
  CHECK((rb.bound_semantics == "M" || rb.bound_semantics == "M-1" || rb.bound_semantics == "none"));
  CHECK(io::to_json(rb).contains("bound_semantics"));
}

TEST_CASE("parallel verification keeps input order", "[io]") {
  std::vector<VerifyRequest> rqs;
  for (int i = 0; i <= 3; ++i) rqs.push_back({VerifyFamily::star, 3, i, 14, 14, std::nullopt, false});
  const auto out = verify_all(rqs, 3);
  REQUIRE(out.size() == 4);
  for (int i = 0; i <= 3; ++i) {
    CHECK(out[i].request.index == i);
    CHECK(out[i].pass);
  }
  rqs.push_back({VerifyFamily::main, 3, 9, 14, 14, std::nullopt, false});
  CHECK_THROWS_AS(verify_all(rqs, 2), usage_error);

  setenv("CMPP_THREADS", "2", 1);
  CHECK(thread_budget() == 2);
  unsetenv("CMPP_THREADS");
  CHECK(thread_budget() >= 1);
}
