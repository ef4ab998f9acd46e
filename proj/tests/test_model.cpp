#include <doctest.h>

#include <fstream>

#include <json.hpp>

#include "amc/error.hpp"
#include "amc/model.hpp"

using namespace amc;

namespace {

const std::string kFig1 = AMC_FIXTURES "/fig1.cgf.json";

nlohmann::json fig1Json() {
  std::ifstream in(kFig1);
  return nlohmann::json::parse(in);
}

std::string validationMessage(const nlohmann::json& j) {
  try {
    parseModel(j.dump());
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("example frame loads as a valid CGF") {
  Model m = loadModel(kFig1);
  REQUIRE(m.isCgf());
  const Cgf& g = m.cgf();
  CHECK(g.stateCount() == 3);
  CHECK(g.agents == 3);
  CHECK(g.moveCounts(0) == std::vector<int>{2, 2, 2});
  CHECK(g.grandMoveCount(0) == 8);
  CHECK(validateCgf(g).empty());
  CHECK(g.initial == StateId{0});
  CHECK(g.valuation.lookup("p") == StateSet{1});
  CHECK(g.valuation.lookup("nowhere").empty());
}

TEST_CASE("outcome on the example frame") {
  const Cgf g = loadModel(kFig1).cgf();
  CHECK(outcome(g, 0, {1, 2, 1}) == 1);
  CHECK(outcome(g, 0, {2, 2, 2}) == 2);
  CHECK(outcome(g, 0, {1, 1, 2}) == 1);
  CHECK_THROWS_AS(outcome(g, 0, {3, 1, 1}), ValidationError);
  CHECK_THROWS_AS(outcome(g, 0, {1, 1}), ValidationError);
}

TEST_CASE("admissible joint moves") {
  const Cgf g = loadModel(kFig1).cgf();
  auto moves = admissibleJointMoves(g, 0, {1, 3});
  REQUIRE(moves.size() == 4);
  CHECK(moves[0].moves == std::vector<int>{1, 1});
  CHECK(moves[1].moves == std::vector<int>{1, 2});
  CHECK(moves[2].moves == std::vector<int>{2, 1});
  CHECK(moves[3].moves == std::vector<int>{2, 2});
  CHECK(moves[0].coalition == Coalition{1, 3});

  auto none = admissibleJointMoves(g, 0, {});
  REQUIRE(none.size() == 1);
  CHECK(none[0].moves.empty());
  CHECK(admissibleJointMoves(g, 0, {1, 2, 3}).size() == 8);
  CHECK(admissibleJointMoves(g, 1, {1, 2, 3}).size() == 1);
  CHECK_THROWS(admissibleJointMoves(g, 0, {4}));
  CHECK_THROWS(admissibleJointMoves(g, 7, {1}));

  // |moves| is the product of the members' bounds, and splitMoves agrees.
  for (std::uint64_t mask = 0; mask < 8; ++mask) {
    Coalition c = Coalition::fromMask(mask);
    MoveSplit split = splitMoves(g, 0, c);
    CHECK(admissibleJointMoves(g, 0, c).size() == std::size_t{1} << c.size());
    CHECK(split.coalition.size() * split.counter.size() == 8);
    auto mine = admissibleJointMoves(g, 0, c);
    auto theirs = admissibleJointMoves(g, 0, c.complement(3));
    for (std::size_t i = 0; i < mine.size(); ++i) {
      for (std::size_t j = 0; j < theirs.size(); ++j) {
        GrandMove s(3);
        for (std::size_t k = 0; k < mine[i].moves.size(); ++k)
          s[static_cast<std::size_t>(c.members()[k] - 1)] = mine[i].moves[k];
        auto others = c.complement(3).members();
        for (std::size_t k = 0; k < theirs[j].moves.size(); ++k)
          s[static_cast<std::size_t>(others[k] - 1)] = theirs[j].moves[k];
        CHECK(g.grandIndex(0, s) == split.coalition[i] + split.counter[j]);
      }
    }
  }
}

TEST_CASE("CGF validation errors") {
  auto j = fig1Json();
  j["transitions"]["w1"].erase("1,2,1");
  CHECK(validationMessage(j).find("outcome undefined for admissible grand move") != std::string::npos);

  j = fig1Json();
  j["moves"]["w1"][1] = 0;
  CHECK(!validationMessage(j).empty());

  j = fig1Json();
  j["transitions"]["w1"]["3,1,1"] = "w2";
  CHECK(validationMessage(j).find("inadmissible grand move") != std::string::npos);

  j = fig1Json();
  j["transitions"]["w1"]["1,1,1"] = "w9";
  CHECK(validationMessage(j).find("w9") != std::string::npos);

  j = fig1Json();
  j["valuation"]["p"] = {"nowhere"};
  CHECK(!validationMessage(j).empty());

  CHECK_THROWS_AS(parseModel("{not json"), ParseError);
  CHECK_THROWS_AS(parseModel(R"({"kind":"lts"})"), ParseError);
  CHECK_THROWS_AS(loadModel("/nonexistent/model.json"), IoError);
}

TEST_CASE("EF parsing and validation") {
  Model m = loadModel(AMC_FIXTURES "/fig1.ef.json");
  REQUIRE(m.isEf());
  const Ef& e = m.ef();
  CHECK(validateEf(e).empty());
  REQUIRE(e.family(0, {1, 3}) != nullptr);
  CHECK(*e.family(0, {1, 3}) == Family{{1}, {2}});
  CHECK(e.family(0, Coalition::fromMask(0))->size() == 1);

  const char* emptySet =
      R"({"kind":"ef","agents":1,"states":["a"],"effectivity":{"a":{"{1}":[[]]}}})";
  CHECK_THROWS_WITH_AS(parseModel(emptySet), doctest::Contains("empty effectivity set"), ValidationError);
  const char* emptyFamily =
      R"({"kind":"ef","agents":1,"states":["a"],"effectivity":{"a":{"{1}":[]}}})";
  CHECK_THROWS_WITH_AS(parseModel(emptyFamily), doctest::Contains("empty effectivity family"), ValidationError);
  const char* badAgent =
      R"({"kind":"ef","agents":1,"states":["a"],"effectivity":{"a":{"{2}":[["a"]]}}})";
  CHECK_THROWS_AS(parseModel(badAgent), ValidationError);
  const char* badCoalition =
      R"({"kind":"ef","agents":1,"states":["a"],"effectivity":{"a":{"1":[["a"]]}}})";
  CHECK_THROWS_AS(parseModel(badCoalition), ParseError);
}

TEST_CASE("serialization round-trips") {
  for (const char* path : {AMC_FIXTURES "/fig1.cgf.json", AMC_FIXTURES "/fig1.ef.json"}) {
    Model a = loadModel(path);
    std::string text = toJson(a);
    Model b = parseModel(text);
    CHECK(toJson(b) == text);
    CHECK(a.base().states == b.base().states);
    CHECK(a.base().valuation.atoms() == b.base().valuation.atoms());
    if (a.isCgf()) {
      for (StateId w = 0; w < a.base().stateCount(); ++w)
        for (std::size_t i = 0; i < a.cgf().grandMoveCount(w); ++i)
          CHECK(a.cgf().outcomeAt(w, i) == b.cgf().outcomeAt(w, i));
    } else {
      for (StateId w = 0; w < a.base().stateCount(); ++w) CHECK(a.ef().families(w) == b.ef().families(w));
    }
  }
}

TEST_CASE("coalition text") {
  CHECK(Coalition{3, 1}.toString() == "{1,3}");
  CHECK(Coalition{}.toString() == "{}");
  CHECK(Coalition::parse("{ 2 , 1 }") == Coalition{1, 2});
  CHECK_THROWS_AS(Coalition::parse("{1,"), ParseError);
  CHECK_THROWS_AS(Coalition{0}, ValidationError);
  CHECK(Coalition{1, 2}.complement(3) == Coalition{3});
}
