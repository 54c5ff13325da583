#pragma once

// End-to-end question answering: engine state loaded once at startup and the
// question -> SQL -> rows pipeline, plus JSON views of responses and schema.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "nlq/error.hpp"
#include "nlq/mini_rdb.hpp"
#include "nlq/schema_graph.hpp"
#include "nlq/semantic_mapper.hpp"
#include "nlq/sql_builder.hpp"
#include "nlq/text_pipeline.hpp"
#include "nlq/value_index.hpp"

namespace nlq {

struct AppConfig {
  std::string schema_path;
  std::string data_dir;      // empty -> directory of schema_path
  std::string lexicon_path;  // empty -> <data_dir>/lexicon.tsv
  int port = 8080;
  bool trace = false;

  std::string resolved_data_dir() const {
    if (!data_dir.empty()) return data_dir;
    auto parent = std::filesystem::path(schema_path).parent_path();
    return parent.empty() ? std::string(".") : parent.string();
  }

  std::string resolved_lexicon_path() const {
    if (!lexicon_path.empty()) return lexicon_path;
    return (std::filesystem::path(resolved_data_dir()) / "lexicon.tsv").string();
  }
};

/// Loads <data_dir>/<table>.csv for every configured table.
inline Database load_database(const SchemaConfig& config, const std::string& data_dir) {
  Database db;
  for (const auto& t : config.tables) {
    auto path = std::filesystem::path(data_dir) / (t.name + ".csv");
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kConfigError, "cannot open " + path.string());
    db.add(load_csv(in, t.name, t.columns));
  }
  return db;
}

/// Everything the pipeline reads. Built once; shared read-only afterwards.
class Engine {
 public:
  static Engine load(const AppConfig& app) {
    auto config = SchemaConfig::load(app.schema_path);
    auto db = load_database(config, app.resolved_data_dir());
    auto lexicon = Lexicon::load(app.resolved_lexicon_path());
    return from_parts(std::move(config), std::move(db), std::move(lexicon));
  }

  static Engine from_parts(SchemaConfig config, Database db, Lexicon lexicon) {
    auto graph = build_graph(config);
    auto index = ValueIndex::build(db, config.value_index_columns);
    return Engine(std::move(config), std::move(graph), std::move(db), std::move(index),
                  std::move(lexicon));
  }

  const SchemaConfig& config() const { return config_; }
  const SchemaGraph& graph() const { return graph_; }
  const Database& database() const { return db_; }
  const ValueIndex& index() const { return index_; }
  const Lexicon& lexicon() const { return lexicon_; }

 private:
  Engine(SchemaConfig config, SchemaGraph graph, Database db, ValueIndex index, Lexicon lexicon)
      : config_(std::move(config)),
        graph_(std::move(graph)),
        db_(std::move(db)),
        index_(std::move(index)),
        lexicon_(std::move(lexicon)) {}

  SchemaConfig config_;
  SchemaGraph graph_;
  Database db_;
  ValueIndex index_;
  Lexicon lexicon_;
};

enum class ResponseStatus { kAnswered, kCannotAnswer, kError };

inline std::string_view to_string(ResponseStatus s) {
  switch (s) {
    case ResponseStatus::kAnswered: return "answered";
    case ResponseStatus::kCannotAnswer: return "cannot_answer";
    case ResponseStatus::kError: return "error";
  }
  return "error";
}

struct QueryResponse {
  std::string question;
  ResponseStatus status = ResponseStatus::kError;
  std::optional<SqlQuery> query;
  std::optional<std::string> sql;
  std::optional<std::vector<std::string>> columns;
  std::optional<std::vector<Row>> rows;
  std::optional<MappingTrace> trace;
  std::optional<std::string> message;
};

inline constexpr std::string_view kCannotAnswerMessage =
    "The question cannot be answered: none of its words match a table, column or value "
    "in the database.";
inline constexpr std::string_view kExecutionFailedMessage =
    "The generated query could not be executed. The failure has been logged.";

/// Runs the whole pipeline. Never throws: every failure is folded into the
/// response status.
inline QueryResponse answer_question(std::string_view text, const Engine& engine) noexcept {
  QueryResponse resp;
  try {
    resp.question = std::string(text);
    auto candidates = question_candidates(text, engine.lexicon());

    MappingReport report;
    try {
      report = map_question(candidates, engine.index(), engine.graph());
    } catch (const NothingMapped& e) {
      resp.status = ResponseStatus::kCannotAnswer;
      resp.trace = e.trace();
      resp.message = std::string(kCannotAnswerMessage);
      return resp;
    }
    resp.trace = report.trace;

    SqlQuery query;
    try {
      query = build_query(report.elements, engine.graph());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoProjection) throw;
      resp.status = ResponseStatus::kCannotAnswer;
      resp.message = std::string("The question cannot be answered: ") + e.what();
      return resp;
    }
    resp.query = query;
    resp.sql = render_sql(query);

    try {
      auto result = execute(query, engine.database());
      resp.columns = std::move(result.columns);
      resp.rows = std::move(result.rows);
      resp.status = ResponseStatus::kAnswered;
    } catch (const std::exception& e) {
      std::clog << "nlq: execution of [" << *resp.sql << "] failed: " << e.what() << '\n';
      resp.status = ResponseStatus::kError;
      resp.message = std::string(kExecutionFailedMessage);
    }
  } catch (const Error& e) {
    resp.status = ResponseStatus::kError;
    resp.message = e.what();
  } catch (const std::exception& e) {
    std::clog << "nlq: internal error: " << e.what() << '\n';
    resp.status = ResponseStatus::kError;
    resp.message = "internal error";
  } catch (...) {
    resp.status = ResponseStatus::kError;
    resp.message = "internal error";
  }
  return resp;
}

// ---------------------------------------------------------------------------
// JSON views

inline nlohmann::json to_json(const Value& v) {
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<double>(v);
}

inline nlohmann::json to_json(const MappingResult& r) {
  return std::visit(
      [](const auto& x) -> nlohmann::json {
        using R = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<R, PredicateRef>) {
          return {{"type", "predicate"}, {"table", x.table}, {"attribute", x.attribute},
                  {"value", x.value}};
        } else if constexpr (std::is_same_v<R, AttributeRef>) {
          return {{"type", "attribute"}, {"table", x.table}, {"attribute", x.attribute}};
        } else if constexpr (std::is_same_v<R, TableRef>) {
          return {{"type", "table"}, {"table", x.table}};
        } else {
          return {{"type", "unmapped"}};
        }
      },
      r);
}

inline nlohmann::json to_json(const MappingTrace& trace) {
  auto out = nlohmann::json::array();
  for (const auto& e : trace.entries) {
    const auto& c = e.outcome.candidate;
    out.push_back({
        {"candidate", c.word_text()},
        {"lemmas", c.lemmas},
        {"kind", to_string(c.kind)},
        {"span", {c.span.begin, c.span.end}},
        {"result", to_json(e.outcome.result)},
        {"source", to_string(e.outcome.source)},
        {"consumed_by", e.consumed_by ? nlohmann::json(*e.consumed_by) : nlohmann::json(nullptr)},
        {"duplicate", e.duplicate},
    });
  }
  return out;
}

inline nlohmann::json to_json(const QueryResponse& r) {
  nlohmann::json j{{"question", r.question}, {"status", to_string(r.status)}};
  j["sql"] = r.sql ? nlohmann::json(*r.sql) : nlohmann::json(nullptr);
  j["columns"] = r.columns ? nlohmann::json(*r.columns) : nlohmann::json(nullptr);
  if (r.rows) {
    auto rows = nlohmann::json::array();
    for (const auto& row : *r.rows) {
      auto jr = nlohmann::json::array();
      for (const auto& v : row) jr.push_back(to_json(v));
      rows.push_back(std::move(jr));
    }
    j["rows"] = std::move(rows);
  } else {
    j["rows"] = nullptr;
  }
  j["trace"] = r.trace ? to_json(*r.trace) : nlohmann::json(nullptr);
  j["message"] = r.message ? nlohmann::json(*r.message) : nlohmann::json(nullptr);
  return j;
}

/// Tables, columns, references and synonyms, for clients that help users
/// phrase questions.
inline nlohmann::json schema_json(const SchemaConfig& cfg) {
  nlohmann::json j{{"tables", nlohmann::json::array()},
                   {"references", nlohmann::json::array()},
                   {"synonyms", nlohmann::json::array()}};
  for (const auto& t : cfg.tables) {
    auto cols = nlohmann::json::array();
    for (const auto& c : t.columns) cols.push_back({{"name", c.name}, {"type", to_string(c.type)}});
    j["tables"].push_back({{"name", t.name},
                           {"label", t.label.empty() ? schema_label(t.name) : schema_label(t.label)},
                           {"display_attribute", t.display_attribute},
                           {"columns", std::move(cols)}});
  }
  for (const auto& r : cfg.references) {
    j["references"].push_back(
        {{"left_table", r.left_table}, {"right_table", r.right_table}, {"column", r.column}});
  }
  for (const auto& s : cfg.synonyms) {
    nlohmann::json js{{"word", s.word},
                      {"target_kind", to_string(s.target_kind)},
                      {"target_table", s.target_table}};
    if (s.target_attribute) js["target_attribute"] = *s.target_attribute;
    j["synonyms"].push_back(std::move(js));
  }
  return j;
}

/// Serializes with invalid UTF-8 replaced, so arbitrary user text is safe.
inline std::string dump_json(const nlohmann::json& j, int indent = -1) {
  return j.dump(indent, ' ', false, nlohmann::json::error_handler_t::replace);
}

}  // namespace nlq
