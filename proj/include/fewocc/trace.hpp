#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fewocc/bigint.hpp"
#include "fewocc/calculus.hpp"

namespace fewocc {

enum class StepKind { Axiom, Split, Compose };

struct TraceNode {
  StepKind kind = StepKind::Axiom;
  int left = -1;   // Split: child; Compose: F₁
  int right = -1;  // Compose: F₂
};

/// Abstract (width, |F′|) of a trace node and the occurrence cap the step
/// needs: 2|F′| of the child for Split, the compose requirement for Compose.
struct NodeAnnotation {
  unsigned width = 0;
  BigInt size;
  BigInt requirement;
  bool splittable = false;
};

/// A derivation DAG. Nodes are listed children-first; ids are positions.
///
/// Text form, one node per line, ids consecutive from 0:
///   <id> AXIOM | <id> SPLIT <child> | <id> COMPOSE <left> <right>
/// followed by `FINAL <id>`.
class DerivTrace {
 public:
  DerivTrace() = default;
  DerivTrace(std::vector<TraceNode> nodes, int final_id);

  const std::vector<TraceNode>& nodes() const { return nodes_; }
  int final_id() const { return final_id_; }

  /// Widths and sizes the producer believes each node has. When present,
  /// annotate() cross-checks them.
  void set_claims(std::vector<std::pair<unsigned, BigInt>> claims) { claims_ = std::move(claims); }
  const std::optional<std::vector<std::pair<unsigned, BigInt>>>& claims() const { return claims_; }

  /// Replays the rules abstractly for target width k. Throws Error when a
  /// step is not a legal rule application under `mode` or the final node is
  /// not complete, InternalError when a claim disagrees.
  std::vector<NodeAnnotation> annotate(unsigned k, RuleMode mode = RuleMode::Restricted) const;
  /// Largest step requirement; the cap the whole derivation needs.
  BigInt required_s(unsigned k, RuleMode mode = RuleMode::Restricted) const;

  std::string to_text() const;
  static DerivTrace parse(std::string_view text);

 private:
  std::vector<TraceNode> nodes_;
  int final_id_ = -1;
  std::optional<std::vector<std::pair<unsigned, BigInt>>> claims_;
};

}  // namespace fewocc
