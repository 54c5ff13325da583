#pragma once

// In-process property graph over the backend schema. Nodes are tables,
// attributes and synonyms, labelled with lowercase lemmatized text so that
// question lemmas match directly; edges are has_attribute, synonym_of and
// references. The graph is immutable once built.

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "nlq/error.hpp"
#include "nlq/strings.hpp"
#include "nlq/text_pipeline.hpp"
#include "nlq/value.hpp"

namespace nlq {

enum class NodeKind { kTable, kAttribute, kSynonym };
enum class EdgeKind { kHasAttribute, kSynonymOf, kReferences };

inline std::string_view to_string(NodeKind k) {
  switch (k) {
    case NodeKind::kTable: return "table";
    case NodeKind::kAttribute: return "attribute";
    case NodeKind::kSynonym: return "synonym";
  }
  return "table";
}

inline std::string_view to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::kHasAttribute: return "has_attribute";
    case EdgeKind::kSynonymOf: return "synonym_of";
    case EdgeKind::kReferences: return "references";
  }
  return "references";
}

// ---------------------------------------------------------------------------
// Configuration

struct TableConfig {
  std::string name;
  std::string display_attribute;
  std::vector<ColumnDef> columns;
  std::string label;  // empty -> derived from name

  const ColumnDef* column(std::string_view col) const {
    for (const auto& c : columns) {
      if (c.name == col) return &c;
    }
    return nullptr;
  }
};

struct ReferenceConfig {
  std::string left_table;
  std::string right_table;
  std::string column;
};

struct SynonymConfig {
  std::string word;
  NodeKind target_kind = NodeKind::kAttribute;
  std::string target_table;
  std::optional<std::string> target_attribute;
};

struct ValueColumnConfig {
  std::string table;
  std::string column;
};

struct SchemaConfig {
  std::vector<TableConfig> tables;
  std::vector<ReferenceConfig> references;
  std::vector<SynonymConfig> synonyms;
  std::vector<ValueColumnConfig> value_index_columns;

  const TableConfig* table(std::string_view name) const {
    for (const auto& t : tables) {
      if (t.name == name) return &t;
    }
    return nullptr;
  }

  static SchemaConfig from_json(const nlohmann::json& j) {
    try {
      SchemaConfig cfg;
      for (const auto& jt : j.at("tables")) {
        TableConfig t;
        t.name = jt.at("name").get<std::string>();
        t.display_attribute = jt.at("display_attribute").get<std::string>();
        t.label = jt.value("label", std::string{});
        for (const auto& jc : jt.at("columns")) {
          auto type_name = jc.at("type").get<std::string>();
          auto type = parse_column_type(type_name);
          if (!type) {
            throw Error(ErrorCode::kConfigError, "unknown column type '" + type_name + "'");
          }
          t.columns.push_back(ColumnDef{jc.at("name").get<std::string>(), *type});
        }
        cfg.tables.push_back(std::move(t));
      }
      for (const auto& jr : j.value("references", nlohmann::json::array())) {
        cfg.references.push_back(ReferenceConfig{jr.at("left_table").get<std::string>(),
                                                 jr.at("right_table").get<std::string>(),
                                                 jr.at("column").get<std::string>()});
      }
      for (const auto& js : j.value("synonyms", nlohmann::json::array())) {
        SynonymConfig s;
        s.word = js.at("word").get<std::string>();
        auto kind = js.at("target_kind").get<std::string>();
        if (kind == "table") {
          s.target_kind = NodeKind::kTable;
        } else if (kind == "attribute") {
          s.target_kind = NodeKind::kAttribute;
        } else {
          throw Error(ErrorCode::kConfigError, "synonym target_kind must be table or attribute");
        }
        s.target_table = js.at("target_table").get<std::string>();
        if (js.contains("target_attribute") && !js.at("target_attribute").is_null()) {
          s.target_attribute = js.at("target_attribute").get<std::string>();
        }
        cfg.synonyms.push_back(std::move(s));
      }
      for (const auto& jv : j.value("value_index_columns", nlohmann::json::array())) {
        cfg.value_index_columns.push_back(
            ValueColumnConfig{jv.at("table").get<std::string>(), jv.at("column").get<std::string>()});
      }
      return cfg;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kConfigError, std::string("malformed schema config: ") + e.what());
    }
  }

  static SchemaConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::kConfigError, "cannot open schema config " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kConfigError, path + ": " + e.what());
    }
    return from_json(j);
  }
};

// ---------------------------------------------------------------------------
// Graph

using NodeId = std::size_t;

struct SchemaNode {
  NodeId id = 0;
  std::string label;
  NodeKind kind = NodeKind::kTable;
  std::string table;      // owning table (table/attribute); empty for synonyms
  std::string attribute;  // physical column name for attribute nodes
};

struct SchemaEdge {
  NodeId from = 0;
  NodeId to = 0;
  EdgeKind kind = EdgeKind::kHasAttribute;
  std::string column;  // shared column for references edges
};

struct TableInfo {
  std::string physical_name;
  std::string display_attribute;
  std::vector<ColumnDef> columns;
};

struct GraphMatch {
  NodeId node = 0;
  NodeKind kind = NodeKind::kTable;
  friend bool operator==(const GraphMatch&, const GraphMatch&) = default;
};

struct ResolvedElement {
  NodeKind kind = NodeKind::kTable;  // kTable or kAttribute
  std::string table;
  std::optional<std::string> attribute;
  friend bool operator==(const ResolvedElement&, const ResolvedElement&) = default;
};

/// Lemmatized lowercase label for a schema identifier: "aggregate_rating"
/// becomes "aggregate rating", "restaurants" becomes "restaurant".
inline std::string schema_label(std::string_view identifier) {
  std::vector<std::string> words;
  std::string current;
  for (char c : identifier) {
    if (c == '_' || is_ascii_space(c)) {
      if (!current.empty()) words.push_back(lemmatize(current));
      current.clear();
    } else {
      current += ascii_lower(c);
    }
  }
  if (!current.empty()) words.push_back(lemmatize(current));
  return join(words, " ");
}

class SchemaGraph {
 public:
  /// Validates the config and materializes the graph. Throws ConfigError
  /// naming the first violated constraint.
  static SchemaGraph build(const SchemaConfig& config) {
    validate(config);
    SchemaGraph g;
    for (const auto& t : config.tables) {
      g.table_index_[t.name] = g.tables_.size();
      g.tables_.push_back(TableInfo{t.name, t.display_attribute, t.columns});
    }

    std::map<std::string, NodeId> table_nodes;
    std::map<std::pair<std::string, std::string>, NodeId> attribute_nodes;
    for (const auto& t : config.tables) {
      NodeId tn = g.add_node(t.label.empty() ? schema_label(t.name) : schema_label(t.label),
                             NodeKind::kTable, t.name, "");
      table_nodes[t.name] = tn;
      for (const auto& c : t.columns) {
        NodeId an = g.add_node(schema_label(c.name), NodeKind::kAttribute, t.name, c.name);
        attribute_nodes[{t.name, c.name}] = an;
        g.edges_.push_back(SchemaEdge{tn, an, EdgeKind::kHasAttribute, ""});
      }
    }
    for (const auto& r : config.references) {
      g.edges_.push_back(SchemaEdge{table_nodes.at(r.left_table), table_nodes.at(r.right_table),
                                    EdgeKind::kReferences, r.column});
    }
    for (const auto& s : config.synonyms) {
      NodeId sn = g.add_node(schema_label(s.word), NodeKind::kSynonym, "", "");
      NodeId target = s.target_kind == NodeKind::kTable
                          ? table_nodes.at(s.target_table)
                          : attribute_nodes.at({s.target_table, *s.target_attribute});
      g.edges_.push_back(SchemaEdge{sn, target, EdgeKind::kSynonymOf, ""});
    }
    g.index_labels();
    return g;
  }

  /// Assembles a graph from pre-built parts without validation. resolve()
  /// reports structural problems as GraphCorrupt.
  static SchemaGraph from_parts(std::vector<TableInfo> tables, std::vector<SchemaNode> nodes,
                                std::vector<SchemaEdge> edges) {
    SchemaGraph g;
    for (std::size_t i = 0; i < tables.size(); ++i) g.table_index_[tables[i].physical_name] = i;
    g.tables_ = std::move(tables);
    g.nodes_ = std::move(nodes);
    for (std::size_t i = 0; i < g.nodes_.size(); ++i) g.nodes_[i].id = i;
    g.edges_ = std::move(edges);
    g.index_labels();
    return g;
  }

  /// All nodes carrying exactly `label`, ordered table < attribute < synonym,
  /// then by owning table name.
  std::vector<GraphMatch> lookup(std::string_view label) const {
    std::vector<GraphMatch> out;
    auto it = label_index_.find(std::string(label));
    if (it == label_index_.end()) return out;
    for (NodeId id : it->second) out.push_back(GraphMatch{id, nodes_[id].kind});
    return out;
  }

  ResolvedElement resolve(const GraphMatch& match) const {
    if (match.node >= nodes_.size()) {
      throw Error(ErrorCode::kGraphCorrupt, "node id out of range");
    }
    const SchemaNode& node = nodes_[match.node];
    switch (node.kind) {
      case NodeKind::kTable:
        return ResolvedElement{NodeKind::kTable, node.table, std::nullopt};
      case NodeKind::kAttribute:
        return resolve_attribute(node);
      case NodeKind::kSynonym: {
        std::vector<NodeId> targets;
        for (const auto& e : edges_) {
          if (e.kind == EdgeKind::kSynonymOf && e.from == node.id) targets.push_back(e.to);
        }
        if (targets.size() != 1 || targets.front() >= nodes_.size() ||
            nodes_[targets.front()].kind == NodeKind::kSynonym) {
          throw Error(ErrorCode::kGraphCorrupt, "synonym '" + node.label +
                                                    "' must have exactly one synonym_of edge");
        }
        const SchemaNode& target = nodes_[targets.front()];
        if (target.kind == NodeKind::kTable) {
          return ResolvedElement{NodeKind::kTable, target.table, std::nullopt};
        }
        return resolve_attribute(target);
      }
    }
    throw Error(ErrorCode::kGraphCorrupt, "unknown node kind");
  }

  /// Orders `tables` so that every table after the first shares a references
  /// edge with an earlier one. Input order is kept wherever connectivity
  /// allows. Duplicates are dropped.
  std::vector<std::string> join_path(const std::vector<std::string>& tables) const {
    std::vector<std::string> pending;
    for (const auto& t : tables) {
      if (!table_index_.count(t)) throw Error(ErrorCode::kUnknownTable, t);
      if (std::find(pending.begin(), pending.end(), t) == pending.end()) pending.push_back(t);
    }
    if (pending.empty()) throw Error(ErrorCode::kNoProjection, "no tables to join");

    std::vector<std::string> plan{pending.front()};
    pending.erase(pending.begin());
    while (!pending.empty()) {
      auto next = std::find_if(pending.begin(), pending.end(), [&](const std::string& t) {
        return std::any_of(plan.begin(), plan.end(),
                           [&](const std::string& p) { return references(p, t); });
      });
      if (next == pending.end()) throw DisconnectedTables(pending);
      plan.push_back(*next);
      pending.erase(next);
    }
    return plan;
  }

  /// True when a references edge connects the two tables (either direction).
  bool references(std::string_view a, std::string_view b) const {
    for (const auto& e : edges_) {
      if (e.kind != EdgeKind::kReferences) continue;
      const auto& from = nodes_[e.from].table;
      const auto& to = nodes_[e.to].table;
      if ((from == a && to == b) || (from == b && to == a)) return true;
    }
    return false;
  }

  const TableInfo* table(std::string_view physical_name) const {
    auto it = table_index_.find(std::string(physical_name));
    return it == table_index_.end() ? nullptr : &tables_[it->second];
  }

  const std::vector<TableInfo>& tables() const { return tables_; }
  const std::vector<SchemaNode>& nodes() const { return nodes_; }
  const std::vector<SchemaEdge>& edges() const { return edges_; }
  const SchemaNode& node(NodeId id) const { return nodes_.at(id); }

  std::size_t count(NodeKind kind) const {
    return static_cast<std::size_t>(std::count_if(
        nodes_.begin(), nodes_.end(), [kind](const SchemaNode& n) { return n.kind == kind; }));
  }

 private:
  NodeId add_node(std::string label, NodeKind kind, std::string table, std::string attribute) {
    NodeId id = nodes_.size();
    nodes_.push_back(SchemaNode{id, std::move(label), kind, std::move(table), std::move(attribute)});
    return id;
  }

  // Owning table comes from the single incoming has_attribute edge.
  ResolvedElement resolve_attribute(const SchemaNode& attr) const {
    std::vector<NodeId> owners;
    for (const auto& e : edges_) {
      if (e.kind == EdgeKind::kHasAttribute && e.to == attr.id) owners.push_back(e.from);
    }
    if (owners.size() != 1 || owners.front() >= nodes_.size()) {
      throw Error(ErrorCode::kGraphCorrupt,
                  "attribute '" + attr.label + "' must have exactly one owning table");
    }
    return ResolvedElement{NodeKind::kAttribute, nodes_[owners.front()].table, attr.attribute};
  }

  std::string sort_table(const SchemaNode& n) const {
    if (n.kind != NodeKind::kSynonym) return n.table;
    for (const auto& e : edges_) {
      if (e.kind == EdgeKind::kSynonymOf && e.from == n.id && e.to < nodes_.size()) {
        return nodes_[e.to].table;
      }
    }
    return {};
  }

  void index_labels() {
    label_index_.clear();
    for (const auto& n : nodes_) label_index_[n.label].push_back(n.id);
    for (auto& [label, ids] : label_index_) {
      std::sort(ids.begin(), ids.end(), [this](NodeId a, NodeId b) {
        const auto& na = nodes_[a];
        const auto& nb = nodes_[b];
        return std::make_tuple(static_cast<int>(na.kind), sort_table(na), na.attribute, a) <
               std::make_tuple(static_cast<int>(nb.kind), sort_table(nb), nb.attribute, b);
      });
    }
  }

  static void fail(const std::string& what) { throw Error(ErrorCode::kConfigError, what); }

  static void validate(const SchemaConfig& cfg) {
    if (cfg.tables.empty()) fail("at least one table is required");

    std::set<std::string> table_names, table_labels;
    for (const auto& t : cfg.tables) {
      if (t.name.empty()) fail("table with empty name");
      if (!table_names.insert(t.name).second) fail("duplicate table '" + t.name + "'");
      auto label = t.label.empty() ? schema_label(t.name) : schema_label(t.label);
      if (!table_labels.insert(label).second) fail("duplicate table label '" + label + "'");
      if (t.columns.empty()) fail("table '" + t.name + "' has no columns");
      std::set<std::string> cols, labels;
      for (const auto& c : t.columns) {
        if (c.name.empty()) fail("table '" + t.name + "' has a column with an empty name");
        if (!cols.insert(c.name).second) {
          fail("duplicate column '" + c.name + "' in table '" + t.name + "'");
        }
        if (!labels.insert(schema_label(c.name)).second) {
          fail("columns of '" + t.name + "' collide on label '" + schema_label(c.name) + "'");
        }
      }
      if (!t.column(t.display_attribute)) {
        fail("display_attribute '" + t.display_attribute + "' is not a column of '" + t.name + "'");
      }
    }

    for (const auto& r : cfg.references) {
      const auto* l = cfg.table(r.left_table);
      const auto* rt = cfg.table(r.right_table);
      if (!l) fail("reference to unknown table '" + r.left_table + "'");
      if (!rt) fail("reference to unknown table '" + r.right_table + "'");
      if (r.left_table == r.right_table) fail("self reference on '" + r.left_table + "'");
      if (!l->column(r.column) || !rt->column(r.column)) {
        fail("reference column '" + r.column + "' must exist in both '" + r.left_table +
             "' and '" + r.right_table + "'");
      }
    }

    // Rendered SQL uses unqualified names, so a column name shared by two
    // tables is only allowed as a declared join column between them.
    for (std::size_t i = 0; i < cfg.tables.size(); ++i) {
      for (std::size_t k = i + 1; k < cfg.tables.size(); ++k) {
        const auto& a = cfg.tables[i];
        const auto& b = cfg.tables[k];
        for (const auto& c : a.columns) {
          if (!b.column(c.name)) continue;
          bool declared = std::any_of(cfg.references.begin(), cfg.references.end(), [&](const auto& r) {
            return r.column == c.name && ((r.left_table == a.name && r.right_table == b.name) ||
                                          (r.left_table == b.name && r.right_table == a.name));
          });
          if (!declared) {
            fail("column '" + c.name + "' is shared by '" + a.name + "' and '" + b.name +
                 "' but is not a declared reference");
          }
        }
      }
    }

    std::set<std::string> synonym_labels;
    for (const auto& s : cfg.synonyms) {
      auto label = schema_label(s.word);
      if (label.empty()) fail("synonym with empty word");
      if (!synonym_labels.insert(label).second) fail("duplicate synonym '" + label + "'");
      const auto* t = cfg.table(s.target_table);
      if (!t) fail("synonym '" + s.word + "' targets unknown table '" + s.target_table + "'");
      if (s.target_kind == NodeKind::kAttribute) {
        if (!s.target_attribute || !t->column(*s.target_attribute)) {
          fail("synonym '" + s.word + "' targets unknown attribute '" +
               s.target_attribute.value_or("") + "' of '" + s.target_table + "'");
        }
      } else if (s.target_attribute) {
        fail("synonym '" + s.word + "' targets a table but names an attribute");
      }
    }

    for (const auto& v : cfg.value_index_columns) {
      const auto* t = cfg.table(v.table);
      if (!t || !t->column(v.column)) {
        fail("value index column '" + v.table + "." + v.column + "' does not exist");
      }
    }
  }

  std::vector<TableInfo> tables_;
  std::unordered_map<std::string, std::size_t> table_index_;
  std::vector<SchemaNode> nodes_;
  std::vector<SchemaEdge> edges_;
  std::unordered_map<std::string, std::vector<NodeId>> label_index_;
};

inline SchemaGraph build_graph(const SchemaConfig& config) { return SchemaGraph::build(config); }

}  // namespace nlq
