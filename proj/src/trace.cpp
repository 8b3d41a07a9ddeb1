#include "fewocc/trace.hpp"

#include <charconv>
#include <sstream>

#include "fewocc/error.hpp"

namespace fewocc {

DerivTrace::DerivTrace(std::vector<TraceNode> nodes, int final_id)
    : nodes_(std::move(nodes)), final_id_(final_id) {
  if (nodes_.empty()) throw Error("trace has no nodes");
  if (final_id_ < 0 || final_id_ >= static_cast<int>(nodes_.size())) {
    throw Error("FINAL refers to unknown node " + std::to_string(final_id_));
  }
  for (int id = 0; id < static_cast<int>(nodes_.size()); ++id) {
    const auto& n = nodes_[static_cast<std::size_t>(id)];
    auto child_ok = [id](int c) { return c >= 0 && c < id; };
    const bool ok = n.kind == StepKind::Axiom ? (n.left < 0 && n.right < 0)
                    : n.kind == StepKind::Split ? (child_ok(n.left) && n.right < 0)
                                                : (child_ok(n.left) && child_ok(n.right));
    if (!ok) throw Error("node " + std::to_string(id) + " must refer to earlier nodes only");
  }
}

std::vector<NodeAnnotation> DerivTrace::annotate(unsigned k, RuleMode mode) const {
  if (k == 0) throw Error("k must be at least 1");
  std::vector<NodeAnnotation> out;
  out.reserve(nodes_.size());
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    NodeAnnotation a;
    const std::string where = "node " + std::to_string(id) + ": ";
    switch (n.kind) {
      case StepKind::Axiom:
        a.width = 0;
        a.size = 1;
        a.requirement = 0;
        a.splittable = true;
        break;
      case StepKind::Split: {
        const auto& c = out[static_cast<std::size_t>(n.left)];
        if (c.width >= k) throw Error(where + "split of a complete formula");
        if (mode == RuleMode::Restricted && !c.splittable) {
          throw Error(where + "split of a non-splittable formula");
        }
        a.width = c.width + 1;
        a.requirement = 2 * c.size;
        a.size = a.width == k ? BigInt(0) : BigInt(2 * c.size);
        a.splittable = c.splittable;
        break;
      }
      case StepKind::Compose: {
        const auto& l = out[static_cast<std::size_t>(n.left)];
        const auto& r = out[static_cast<std::size_t>(n.right)];
        if (!(l.width <= r.width && r.width < k)) {
          throw Error(where + "compose needs k1 <= k2 < k");
        }
        const unsigned d = k - r.width;
        a.width = l.width + d;
        a.requirement = compose_requirement(k, l.width, r.width, l.size, r.size);
        a.size = a.width == k ? BigInt(0) : BigInt(pow2_minus_one(d) * l.size);
        a.splittable = false;
        break;
      }
    }
    if (claims_) {
      if (claims_->size() != nodes_.size()) throw InternalError("claim count differs from node count");
      const auto& [cw, cs] = (*claims_)[id];
      if (cw != a.width || cs != a.size) {
        throw InternalError(where + "claimed (width " + std::to_string(cw) + ", size " +
                            to_string(cs) + ") but replay gives (width " +
                            std::to_string(a.width) + ", size " + to_string(a.size) + ")");
      }
    }
    out.push_back(std::move(a));
  }
  if (out[static_cast<std::size_t>(final_id_)].width != k) {
    throw Error("final node " + std::to_string(final_id_) + " is not a complete k-CNF");
  }
  return out;
}

BigInt DerivTrace::required_s(unsigned k, RuleMode mode) const {
  BigInt best = 0;
  for (const auto& a : annotate(k, mode)) {
    if (a.requirement > best) best = a.requirement;
  }
  return best;
}

std::string DerivTrace::to_text() const {
  std::ostringstream os;
  for (std::size_t id = 0; id < nodes_.size(); ++id) {
    const auto& n = nodes_[id];
    os << id;
    switch (n.kind) {
      case StepKind::Axiom: os << " AXIOM"; break;
      case StepKind::Split: os << " SPLIT " << n.left; break;
      case StepKind::Compose: os << " COMPOSE " << n.left << ' ' << n.right; break;
    }
    os << '\n';
  }
  os << "FINAL " << final_id_ << '\n';
  return os.str();
}

namespace {

int parse_id(const std::string& tok, std::size_t line_no) {
  int v = -1;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size() || v < 0) {
    throw Error("trace line " + std::to_string(line_no) + ": bad id '" + tok + "'");
  }
  return v;
}

}  // namespace

DerivTrace DerivTrace::parse(std::string_view text) {
  std::vector<TraceNode> nodes;
  std::optional<int> final_id;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty()) continue;
    if (final_id) throw Error("trace line " + std::to_string(line_no) + ": content after FINAL");
    if (toks[0] == "FINAL") {
      if (toks.size() != 2) throw Error("trace line " + std::to_string(line_no) + ": bad FINAL");
      final_id = parse_id(toks[1], line_no);
      continue;
    }
    const int id = parse_id(toks[0], line_no);
    if (id != static_cast<int>(nodes.size())) {
      throw Error("trace line " + std::to_string(line_no) + ": expected id " +
                  std::to_string(nodes.size()) + ", got " + toks[0]);
    }
    TraceNode n;
    if (toks.size() == 2 && toks[1] == "AXIOM") {
      n.kind = StepKind::Axiom;
    } else if (toks.size() == 3 && toks[1] == "SPLIT") {
      n.kind = StepKind::Split;
      n.left = parse_id(toks[2], line_no);
    } else if (toks.size() == 4 && toks[1] == "COMPOSE") {
      n.kind = StepKind::Compose;
      n.left = parse_id(toks[2], line_no);
      n.right = parse_id(toks[3], line_no);
    } else {
      throw Error("trace line " + std::to_string(line_no) + ": unrecognized step '" + line + "'");
    }
    nodes.push_back(n);
  }
  if (!final_id) throw Error("trace has no FINAL line");
  return DerivTrace(std::move(nodes), *final_id);
}

}  // namespace fewocc
