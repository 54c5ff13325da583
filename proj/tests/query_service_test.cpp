#include <gtest/gtest.h>

#include <random>
#include <set>
#include <sstream>

#include "nlq/query_service.hpp"
#include "nlq/repl.hpp"
#include "support/fixture.hpp"
#include "support/generators.hpp"

namespace nlq {
namespace {

const Engine& engine() { return testing::fixture_engine(); }

std::set<std::string> first_column(const QueryResponse& r) {
  std::set<std::string> out;
  for (const auto& row : *r.rows) out.insert(stringify(row.at(0)));
  return out;
}

TEST(Engine, LoadsFixture) {
  EXPECT_EQ(engine().database().tables().size(), 2u);
  EXPECT_GT(engine().lexicon().size(), 100u);
  EXPECT_GT(engine().index().size(), 10u);
}

TEST(Engine, MissingFilesAreConfigErrors) {
  AppConfig cfg = testing::fixture_config();
  cfg.data_dir = "/nonexistent";
  try {
    Engine::load(cfg);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kConfigError);
  }
}

TEST(AppConfig, DefaultsFollowTheSchemaFile) {
  AppConfig cfg;
  cfg.schema_path = "/srv/app/schema.json";
  EXPECT_EQ(cfg.resolved_data_dir(), "/srv/app");
  EXPECT_EQ(cfg.resolved_lexicon_path(), "/srv/app/lexicon.tsv");
  cfg.schema_path = "schema.json";
  EXPECT_EQ(cfg.resolved_data_dir(), ".");
}

TEST(AnswerQuestion, ItalianRestaurants) {
  auto r = answer_question("what are the italian restaurants?", engine());
  ASSERT_EQ(r.status, ResponseStatus::kAnswered) << r.message.value_or("");
  EXPECT_EQ(*r.sql,
            "SELECT DISTINCT restaurant_name FROM restaurants NATURAL JOIN cuisines WHERE "
            "cuisine='Italian'");
  EXPECT_EQ(*r.columns, (std::vector<std::string>{"restaurant_name"}));
  EXPECT_EQ(first_column(r), (std::set<std::string>{"Pasta Palace", "Trattoria Roma"}));
  EXPECT_FALSE(r.message);
}

TEST(AnswerQuestion, RestaurantsAndCitiesServingFastFood) {
  auto r = answer_question("What are the restaurants and cities in India that serve fast food",
                           engine());
  ASSERT_EQ(r.status, ResponseStatus::kAnswered);
  EXPECT_EQ(*r.columns, (std::vector<std::string>{"city", "restaurant_name"}));
  ASSERT_EQ(r.rows->size(), 1u);
  EXPECT_EQ(stringify((*r.rows)[0][0]), "New Delhi");
  EXPECT_EQ(stringify((*r.rows)[0][1]), "Quick Bite Express");
}

TEST(AnswerQuestion, ChineseInMumbaiPhrasingsAgree) {
  auto a = answer_question("what restaurants in mumbai have chinese food?", engine());
  auto b = answer_question("which chinese restaurants are in mumbai", engine());
  ASSERT_EQ(a.status, ResponseStatus::kAnswered);
  ASSERT_EQ(b.status, ResponseStatus::kAnswered);
  EXPECT_EQ(*a.rows, *b.rows);
  EXPECT_EQ(first_column(a), (std::set<std::string>{"Bombay Spice House", "Golden Dragon"}));
}

TEST(AnswerQuestion, CannotAnswer) {
  for (const char* q : {"sing me a song", "hello", "???", "the of and"}) {
    auto r = answer_question(q, engine());
    EXPECT_EQ(r.status, ResponseStatus::kCannotAnswer) << q;
    EXPECT_FALSE(r.sql) << q;
    EXPECT_FALSE(r.rows) << q;
    ASSERT_TRUE(r.message) << q;
    EXPECT_FALSE(r.message->empty());
  }
}

TEST(AnswerQuestion, InvalidInputIsError) {
  auto empty = answer_question("   ", engine());
  EXPECT_EQ(empty.status, ResponseStatus::kError);
  EXPECT_TRUE(empty.message);

  auto huge = answer_question(std::string(2000, 'a'), engine());
  EXPECT_EQ(huge.status, ResponseStatus::kError);
}

TEST(AnswerQuestion, ExecutionFailureIsReportedGenerically) {
  // Schema says "restaurants" exists, the database does not have it.
  SchemaConfig cfg = engine().config();
  cfg.value_index_columns.clear();
  Database db;
  db.add(*engine().database().find("cuisines"));
  auto broken = Engine::from_parts(cfg, std::move(db), engine().lexicon());

  std::ostringstream log;
  auto* old = std::clog.rdbuf(log.rdbuf());
  auto r = answer_question("list the restaurants", broken);
  std::clog.rdbuf(old);

  EXPECT_EQ(r.status, ResponseStatus::kError);
  EXPECT_TRUE(r.sql);
  EXPECT_EQ(*r.message, kExecutionFailedMessage);
  EXPECT_NE(log.str().find("restaurants"), std::string::npos);
}

TEST(AnswerQuestion, IsStateless) {
  const char* q = "which restaurants in new delhi serve fast food";
  auto first = to_json(answer_question(q, engine()));
  answer_question("what is the currency in italy", engine());
  answer_question("sing me a song", engine());
  EXPECT_EQ(to_json(answer_question(q, engine())), first);
}

TEST(AnswerQuestion, TraceCoversEveryCandidate) {
  const char* q = "which restaurants have an excellent rating?";
  auto r = answer_question(q, engine());
  auto candidates = question_candidates(q, engine().lexicon());
  ASSERT_TRUE(r.trace);
  ASSERT_EQ(r.trace->entries.size(), candidates.size());
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    EXPECT_EQ(r.trace->entries[i].outcome.candidate, candidates[i]);
  }
}

TEST(AnswerQuestion, StatusMatchesPayload) {
  std::mt19937 rng(5);
  for (int i = 0; i < 500; ++i) {
    auto text = testing::random_unicode(rng, 200);
    auto r = answer_question(text, engine());
    switch (r.status) {
      case ResponseStatus::kAnswered:
        ASSERT_TRUE(r.sql && r.columns && r.rows) << text;
        ASSERT_FALSE(r.message);
        for (const auto& row : *r.rows) ASSERT_EQ(row.size(), r.columns->size());
        ASSERT_EQ(parse_sql(*r.sql), *r.query);
        break;
      case ResponseStatus::kCannotAnswer:
      case ResponseStatus::kError:
        ASSERT_TRUE(r.message) << text;
        ASSERT_FALSE(r.rows);
        break;
    }
    (void)dump_json(to_json(r));
  }
}

TEST(Json, ResponseShape) {
  auto j = to_json(answer_question("what are the italian restaurants?", engine()));
  for (const char* key : {"question", "status", "sql", "columns", "rows", "trace", "message"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["status"], "answered");
  EXPECT_TRUE(j["message"].is_null());
  ASSERT_TRUE(j["trace"].is_array());
  const auto& first = j["trace"][0];
  EXPECT_EQ(first["candidate"], "italian restaurants");
  EXPECT_EQ(first["kind"], "noun_phrase");
  EXPECT_EQ(first["result"]["type"], "unmapped");
  bool has_predicate = false;
  for (const auto& e : j["trace"]) {
    if (e["result"]["type"] == "predicate") {
      has_predicate = true;
      EXPECT_EQ(e["result"]["value"], "Italian");
      EXPECT_EQ(e["source"], "value_index");
    }
  }
  EXPECT_TRUE(has_predicate);
}

TEST(Json, NumbersStayNumeric) {
  auto j = to_json(answer_question("which restaurants have an excellent rating?", engine()));
  ASSERT_EQ(j["columns"][0], "aggregate_rating");
  for (const auto& row : j["rows"]) EXPECT_TRUE(row[0].is_number_float());
}

TEST(Json, InvalidUtf8IsReplaced) {
  auto text = dump_json(to_json(answer_question("caf\xC3", engine())));
  EXPECT_NE(text.find("\"question\""), std::string::npos);
}

TEST(SchemaJson, ListsTablesAndSynonyms) {
  auto j = schema_json(engine().config());
  ASSERT_EQ(j["tables"].size(), 2u);
  EXPECT_EQ(j["tables"][0]["name"], "restaurants");
  EXPECT_EQ(j["references"].size(), 1u);
  EXPECT_GE(j["synonyms"].size(), 3u);
}

TEST(Repl, AnswersQuestionsUntilQuit) {
  std::istringstream in("which restaurants have an excellent rating?\n\n:quit\nignored\n");
  std::ostringstream out;
  EXPECT_EQ(run_repl(engine(), in, out, false), 0);
  auto text = out.str();
  EXPECT_NE(text.find("SELECT DISTINCT aggregate_rating, restaurant_name FROM restaurants WHERE "
                      "rating_text='Excellent'"),
            std::string::npos);
  EXPECT_NE(text.find("(3 rows)"), std::string::npos);
  EXPECT_NE(text.find("Atlantic Dishes"), std::string::npos);
  EXPECT_EQ(text.find("mapping:"), std::string::npos);
}

TEST(Repl, TraceAndCannotAnswer) {
  std::istringstream in("sing me a song\nwhat is the currency in italy\n");
  std::ostringstream out;
  EXPECT_EQ(run_repl(engine(), in, out, true), 0);
  auto text = out.str();
  EXPECT_NE(text.find(kCannotAnswerMessage), std::string::npos);
  EXPECT_NE(text.find("mapping:"), std::string::npos);
  EXPECT_NE(text.find("Euro"), std::string::npos);
  EXPECT_NE(text.find("(1 row)"), std::string::npos);
}

}  // namespace
}  // namespace nlq
