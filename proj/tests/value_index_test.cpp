#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "nlq/value_index.hpp"
#include "support/fixture.hpp"

namespace nlq {
namespace {

const ValueIndex& index() { return testing::fixture_engine().index(); }

TEST(ValueIndex, FixtureValuesMapToTheirColumns) {
  EXPECT_EQ(lookup_value(index(), {"italian"}), (ValueEntry{"Italian", "cuisine", "cuisines"}));
  EXPECT_EQ(lookup_value(index(), {"excellent"}),
            (ValueEntry{"Excellent", "rating_text", "restaurants"}));
  EXPECT_EQ(lookup_value(index(), {"mumbai"}), (ValueEntry{"Mumbai", "city", "restaurants"}));
  EXPECT_EQ(lookup_value(index(), {"india"}),
            (ValueEntry{"India", "country_name", "restaurants"}));
}

TEST(ValueIndex, MultiWordValues) {
  EXPECT_EQ(lookup_value(index(), {"fast", "food"}),
            (ValueEntry{"Fast Food", "cuisine", "cuisines"}));
  EXPECT_EQ(lookup_value(index(), {"New", "Delhi"}),
            (ValueEntry{"New Delhi", "city", "restaurants"}));
}

TEST(ValueIndex, SchemaWordsAreNotValues) {
  EXPECT_FALSE(lookup_value(index(), {"restaurant"}).has_value());
  EXPECT_FALSE(lookup_value(index(), {"fast"}).has_value());
}

TEST(ValueIndex, KeysAreNotLemmatized) {
  Database db;
  db.add(Table{"menu", {{"dish", ColumnType::kText}}, {{std::string("Dishes")}}});
  auto idx = ValueIndex::build(db, {{"menu", "dish"}});
  EXPECT_TRUE(idx.lookup({"dishes"}).has_value());
  EXPECT_FALSE(idx.lookup({"dish"}).has_value());
}

TEST(ValueIndex, SizeEqualsDistinctValuesOfFixtureColumns) {
  const auto& engine = testing::fixture_engine();
  std::set<std::string> distinct;
  for (const auto& vc : engine.config().value_index_columns) {
    const Table* t = engine.database().find(vc.table);
    auto col = *t->column_index(vc.column);
    for (const auto& row : t->rows) distinct.insert(normalize_phrase(std::get<std::string>(row[col])));
  }
  EXPECT_TRUE(index().warnings().empty());
  EXPECT_EQ(index().size(), distinct.size());
}

TEST(ValueIndex, CollisionKeepsEarlierColumnAndWarns) {
  Database db;
  db.add(Table{"t",
               {{"first", ColumnType::kText}, {"second", ColumnType::kText}},
               {{std::string("Paris"), std::string("paris")},
                {std::string("Rome"), std::string("Oslo")},
                {std::string(""), std::string("PARIS")}}});
  auto idx = ValueIndex::build(db, {{"t", "first"}, {"t", "second"}});
  EXPECT_EQ(idx.lookup({"paris"}), (ValueEntry{"Paris", "first", "t"}));
  EXPECT_EQ(idx.lookup({"oslo"}), (ValueEntry{"Oslo", "second", "t"}));
  EXPECT_EQ(idx.warnings().size(), 1u);
  EXPECT_EQ(idx.collisions().size(), 1u);
  // distinct (column, key) pairs: first{paris, rome}, second{paris, oslo}; minus one clash.
  EXPECT_EQ(idx.size(), 4u - idx.collisions().size());
}

TEST(ValueIndex, EmptyColumnContributesNothing) {
  Database db;
  db.add(Table{"t", {{"c", ColumnType::kText}}, {}});
  EXPECT_EQ(ValueIndex::build(db, {{"t", "c"}}).size(), 0u);
}

TEST(ValueIndex, RejectsUnknownAndNonTextColumns) {
  Database db;
  db.add(Table{"t", {{"n", ColumnType::kInteger}}, {}});
  EXPECT_THROW(ValueIndex::build(db, {{"t", "missing"}}), Error);
  EXPECT_THROW(ValueIndex::build(db, {{"nope", "n"}}), Error);
  EXPECT_THROW(ValueIndex::build(db, {{"t", "n"}}), Error);
}

TEST(ValueIndex, CapIsEnforced) {
  Database db;
  Table t{"t", {{"c", ColumnType::kText}}, {}};
  for (int i = 0; i < 10; ++i) t.rows.push_back({std::string("v") + std::to_string(i)});
  db.add(std::move(t));
  EXPECT_NO_THROW(ValueIndex::build(db, {{"t", "c"}}, 10));
  EXPECT_THROW(ValueIndex::build(db, {{"t", "c"}}, 9), Error);
}

TEST(ValueIndex, RebuildIsDeterministic) {
  const auto& engine = testing::fixture_engine();
  auto again = ValueIndex::build(engine.database(), engine.config().value_index_columns);
  EXPECT_EQ(again.entries(), index().entries());
}

}  // namespace
}  // namespace nlq
