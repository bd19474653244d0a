// JSON and CSV renderings of library results. Needs nlohmann/json (vendored as json.hpp).
#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "rpack/ech.hpp"
#include "rpack/obstructions.hpp"
#include "rpack/recurrence.hpp"
#include "rpack/reducer.hpp"
#include "rpack/widths.hpp"

namespace rpack::io {

using nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline json versioned(json j) {
  j["schemaVersion"] = kSchemaVersion;
  return j;
}

// RFC 4180: quote a field containing a comma, quote or line break.
inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

inline void csv_row(std::ostream& os, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
  os << "\r\n";
}

inline json permutation_json(const Permutation& sigma) {
  json a = json::array();
  for (std::size_t j : sigma) a.push_back(j);
  return a;
}

// One record per move with the class reached after it.
inline std::vector<json> trace_records(const ReductionOutcome& o) {
  std::vector<json> out;
  HClass cur = o.input;
  for (const Move& m : o.word) {
    cur = apply_move(m, cur);
    json r;
    if (std::holds_alternative<CremonaMove>(m)) {
      r["move"] = "cremona";
    } else {
      r["move"] = "permute";
      r["sigma"] = permutation_json(std::get<PermuteMove>(m).sigma);
    }
    r["class"] = cur.str();
    out.push_back(std::move(r));
  }
  return out;
}

inline json outcome_json(const ReductionOutcome& o) {
  json j;
  j["verdict"] = to_string(o.verdict);
  if (o.reason != ExteriorReason::None) j["reason"] = to_string(o.reason);
  j["input"] = o.input.str();
  j["finalClass"] = o.finalClass.str();
  j["iterations"] = o.iterations;
  j["moves"] = o.word.size();
  if (o.verdict == Verdict::Boundary) {
    json obs = json::array();
    for (const HClass& e : obstructions_from_outcome(o)) obs.push_back(e.str());
    j["obstructions"] = obs;
  }
  return versioned(j);
}

inline void write_json_lines(std::ostream& os, const ReductionOutcome& o) {
  os << outcome_json(o).dump() << "\n";
  for (const json& r : trace_records(o)) os << r.dump() << "\n";
}

inline json piece_json(const WidthPiece& p) {
  json j;
  j["muLo"] = p.lo.str();
  j["muHi"] = p.hi ? json(p.hi->str()) : json("inf");
  j["loClosed"] = p.loClosed;
  j["hiClosed"] = p.hiClosed;
  j["formula"] = to_string(p.formula);
  return j;
}

inline json profile_json(const WidthProfile& prof) {
  json j;
  j["bundle"] = to_string(prof.bundle);
  j["k"] = prof.k;
  json pieces = json::array();
  for (const WidthPiece& p : prof.pieces) pieces.push_back(piece_json(p));
  j["pieces"] = pieces;
  json gaps = json::array();
  for (const UnlistedRange& u : prof.unlisted) gaps.push_back({{"muLo", u.lo.str()}, {"muHi", u.hi.str()}});
  j["unlisted"] = gaps;
  return versioned(j);
}

inline json bracket_json(const Bracket& br, const QuadExt& closed) {
  json j;
  j["lo"] = to_string(br.lo);
  j["hi"] = to_string(br.hi);
  j["closedForm"] = closed.str();
  j["containsClosedForm"] = bracket_contains(br, closed);
  return versioned(j);
}

inline json obstructions_json(const BundleSpec& b, int k, const ObstructionList& list) {
  json j;
  j["reason"] = list.reason;
  json classes = json::array();
  HClass v = ball_vector(b, k, width_at(b, k));
  for (const ObstructionEntry& e : list.entries) {
    classes.push_back({{"class", e.cls.str()},
                       {"source", e.source},
                       {"selfIntersection", self_intersection(e.cls).str()},
                       {"canonicalPairing", canonical_pairing(e.cls).str()},
                       {"pairingWithBallVector", pairing(v, e.cls).str()}});
  }
  j["classes"] = classes;
  return versioned(j);
}

inline json embed_json(const EmbedResult& r) {
  json j;
  j["embeds"] = r.embeds;
  j["method"] = to_string(r.method);
  if (r.method == EmbedMethod::WidthExact) {
    j["k"] = r.k;
  } else {
    j["prefixUsed"] = r.prefixUsed;
    if (r.embeds) j["qualifier"] = "prefix-certified";
  }
  if (r.witnessIndex) j["witnessIndex"] = *r.witnessIndex;
  return versioned(j);
}

}  // namespace rpack::io
