#pragma once

// Maps candidate phrases to database elements. The value index is consulted
// first (surface form, then lemma form), then the schema graph on the lemma.
// Mapped outcomes are compiled into the three template lists: tables,
// projected attributes, and attribute=value predicates.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "nlq/error.hpp"
#include "nlq/schema_graph.hpp"
#include "nlq/text_pipeline.hpp"
#include "nlq/value_index.hpp"

namespace nlq {

struct PredicateRef {
  std::string table;
  std::string attribute;
  std::string value;
  friend bool operator==(const PredicateRef&, const PredicateRef&) = default;
};

struct AttributeRef {
  std::string table;
  std::string attribute;
  friend bool operator==(const AttributeRef&, const AttributeRef&) = default;
};

struct TableRef {
  std::string table;
  friend bool operator==(const TableRef&, const TableRef&) = default;
};

struct Unmapped {
  friend bool operator==(const Unmapped&, const Unmapped&) = default;
};

using MappingResult = std::variant<Unmapped, PredicateRef, AttributeRef, TableRef>;

enum class MappingSource { kValueIndex, kGraphDirect, kGraphSynonym, kNone };

inline std::string_view to_string(MappingSource s) {
  switch (s) {
    case MappingSource::kValueIndex: return "value_index";
    case MappingSource::kGraphDirect: return "graph_direct";
    case MappingSource::kGraphSynonym: return "graph_synonym";
    case MappingSource::kNone: return "none";
  }
  return "none";
}

struct MappingOutcome {
  CandidatePhrase candidate;
  MappingResult result;
  MappingSource source = MappingSource::kNone;

  bool mapped() const { return !std::holds_alternative<Unmapped>(result); }
};

struct TraceEntry {
  MappingOutcome outcome;
  std::optional<std::size_t> consumed_by;  // index of the absorbing noun phrase
  bool duplicate = false;                  // same result already contributed
};

/// One entry per extracted candidate, in extraction order.
struct MappingTrace {
  std::vector<TraceEntry> entries;
};

struct MappedElements {
  std::vector<std::string> tables;
  std::vector<std::string> anchor_tables;  // tables named directly (Table outcomes)
  std::vector<AttributeRef> attributes;
  std::vector<PredicateRef> predicates;
};

struct MappingReport {
  MappedElements elements;
  MappingTrace trace;
};

/// No candidate mapped to anything. Carries the trace so callers can explain
/// why the question could not be answered.
class NothingMapped : public Error {
 public:
  explicit NothingMapped(MappingTrace trace)
      : Error(ErrorCode::kNothingMapped, "no word in the question matches the database"),
        trace_(std::move(trace)) {}

  const MappingTrace& trace() const noexcept { return trace_; }

 private:
  MappingTrace trace_;
};

inline MappingOutcome map_candidate(const CandidatePhrase& phrase, const ValueIndex& index,
                                    const SchemaGraph& graph) {
  MappingOutcome out{phrase, Unmapped{}, MappingSource::kNone};

  auto value = index.lookup(phrase.words);
  if (!value && phrase.lemmas != phrase.words) value = index.lookup(phrase.lemmas);
  if (value) {
    out.result = PredicateRef{value->table, value->attribute, value->value};
    out.source = MappingSource::kValueIndex;
    return out;
  }

  auto matches = graph.lookup(phrase.lemma_text());
  if (matches.empty()) return out;
  const GraphMatch& first = matches.front();
  ResolvedElement element = graph.resolve(first);
  if (element.kind == NodeKind::kTable) {
    out.result = TableRef{element.table};
  } else {
    out.result = AttributeRef{element.table, *element.attribute};
  }
  out.source = first.kind == NodeKind::kSynonym ? MappingSource::kGraphSynonym
                                                : MappingSource::kGraphDirect;
  return out;
}

namespace detail {

template <typename T>
bool push_unique(std::vector<T>& v, const T& item) {
  if (std::find(v.begin(), v.end(), item) != v.end()) return false;
  v.push_back(item);
  return true;
}

}  // namespace detail

/// Noun phrases are tried longest first; a mapped phrase absorbs the single
/// tokens inside its span. Remaining singles follow in source order.
inline MappingReport map_question(const std::vector<CandidatePhrase>& candidates,
                                  const ValueIndex& index, const SchemaGraph& graph) {
  MappingReport report;
  auto& entries = report.trace.entries;
  entries.resize(candidates.size());

  std::vector<std::size_t> phrases, singles;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    entries[i].outcome = MappingOutcome{candidates[i], Unmapped{}, MappingSource::kNone};
    (candidates[i].kind == PhraseKind::kNounPhrase ? phrases : singles).push_back(i);
  }
  std::stable_sort(phrases.begin(), phrases.end(), [&](std::size_t a, std::size_t b) {
    return candidates[a].lemmas.size() > candidates[b].lemmas.size();
  });

  std::vector<std::size_t> order;
  for (std::size_t p : phrases) {
    bool inside_mapped = std::any_of(order.begin(), order.end(), [&](std::size_t m) {
      return candidates[m].kind == PhraseKind::kNounPhrase &&
             candidates[m].span.contains(candidates[p].span);
    });
    if (inside_mapped) continue;
    entries[p].outcome = map_candidate(candidates[p], index, graph);
    if (!entries[p].outcome.mapped()) continue;
    order.push_back(p);
    for (std::size_t s : singles) {
      if (!entries[s].consumed_by && candidates[p].span.contains(candidates[s].span)) {
        entries[s].consumed_by = p;
      }
    }
  }
  for (std::size_t s : singles) {
    if (entries[s].consumed_by) continue;
    entries[s].outcome = map_candidate(candidates[s], index, graph);
    if (entries[s].outcome.mapped()) order.push_back(s);
  }

  if (order.empty()) throw NothingMapped(std::move(report.trace));

  MappedElements& el = report.elements;
  std::vector<std::string> other_tables;
  for (std::size_t i : order) {
    bool fresh = std::visit(
        [&](const auto& r) -> bool {
          using R = std::decay_t<decltype(r)>;
          if constexpr (std::is_same_v<R, TableRef>) {
            return detail::push_unique(el.anchor_tables, r.table);
          } else if constexpr (std::is_same_v<R, PredicateRef>) {
            detail::push_unique(other_tables, r.table);
            return detail::push_unique(el.predicates, r);
          } else if constexpr (std::is_same_v<R, AttributeRef>) {
            detail::push_unique(other_tables, r.table);
            return detail::push_unique(el.attributes, r);
          } else {
            return false;
          }
        },
        entries[i].outcome.result);
    entries[i].duplicate = !fresh;
  }

  // Attributes that already appear in an attribute=value pair are not projected.
  std::erase_if(el.attributes, [&](const AttributeRef& a) {
    return std::any_of(el.predicates.begin(), el.predicates.end(), [&](const PredicateRef& p) {
      return p.table == a.table && p.attribute == a.attribute;
    });
  });

  for (const auto& t : el.anchor_tables) detail::push_unique(el.tables, t);
  for (const auto& t : other_tables) detail::push_unique(el.tables, t);
  return report;
}

}  // namespace nlq
