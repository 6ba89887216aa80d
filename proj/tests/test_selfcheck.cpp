#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "verlinde/selfcheck.hpp"

using namespace vt;

TEST_CASE("fast suite passes on a correct build") {
  SelfCheckReport r = run_selfcheck({});
  CHECK_FALSE(r.full);
  CHECK_FALSE(r.weak_admissibility);
  CHECK(r.all_passed());
  REQUIRE(!r.items.empty());

  std::set<std::string> names;
  for (const auto& item : r.items) {
    CAPTURE(item.name);
    CHECK(item.passed);
    CHECK(item.detail.empty());
    CHECK(item.cases > 0);
    CHECK(names.insert(item.name).second);
  }

  // The fast grid must exercise the headline properties.
  for (const std::string expected :
       {"integrality", "class-sums", "orthogonality", "character-law",
        "dual-paths", "kostant-sign", "torus-count"}) {
    CAPTURE(expected);
    CHECK(names.count(expected) == 1);
  }
  // The numeric sampling belongs to the full suite only.
  CHECK(names.count("numeric-suite") == 0);
}

TEST_CASE("weak admissibility variant reports the borderline fraction") {
  SelfCheckOptions opt;
  opt.weak_admissibility = true;
  SelfCheckReport r = run_selfcheck(opt);
  CHECK_FALSE(r.all_passed());

  const SelfCheckItem* integrality = nullptr;
  for (const auto& item : r.items)
    if (item.name == "integrality") integrality = &item;
  REQUIRE(integrality != nullptr);
  CHECK_FALSE(integrality->passed);
  // The A1 adjoint quotient at the weakly admitted level 2 evaluates to 3/2.
  CHECK(integrality->detail.find("3/2") != std::string::npos);
  CHECK(integrality->detail.find("k=2") != std::string::npos);

  // The discrepancy is confined to the integrality sweep.
  for (const auto& item : r.items)
    if (item.name != "integrality") {
      CAPTURE(item.name);
      CHECK(item.passed);
    }
}

TEST_CASE("report serialization is deterministic and re-parses") {
  SelfCheckReport r = run_selfcheck({});
  std::string text = report_json(r);
  CHECK(text == report_json(r));

  nlohmann::json parsed = nlohmann::json::parse(text);
  CHECK(parsed.at("suite") == "fast");
  CHECK(parsed.at("weak_admissibility") == false);
  CHECK(parsed.at("all_passed") == true);
  REQUIRE(parsed.at("items").is_array());
  CHECK(parsed.at("items").size() == r.items.size());
  for (size_t i = 0; i < r.items.size(); ++i) {
    const auto& j = parsed.at("items").at(i);
    CHECK(j.at("name") == r.items[i].name);
    CHECK(j.at("cases") == r.items[i].cases);
    CHECK(j.at("passed") == r.items[i].passed);
  }

  // Key order is pinned: the header keys come before the item list.
  size_t suite_pos = text.find("\"suite\"");
  size_t items_pos = text.find("\"items\"");
  REQUIRE(suite_pos != std::string::npos);
  REQUIRE(items_pos != std::string::npos);
  CHECK(suite_pos < items_pos);
}
