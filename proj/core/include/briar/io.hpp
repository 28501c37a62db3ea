#pragma once

#include <string>
#include <vector>

#include "briar/ball.hpp"
#include "briar/paths.hpp"

namespace briar {

inline constexpr int kSchemaVersion = 1;

/// Parses the group-table / signature text sections:
///   group <name> cyclic <m>
///   group <name> table <m> / r0... / r1... / ...
///   signature factors <name>... rank <k>
FactorSignature parse_signature(const std::string& text);

/// Full marked-graph file: signature section, optional `extra-word <tokens>`
/// lines, graph section (vertex/edge/base) and the loops section
/// (`loop w<i> base <v> : g e g e ... g`). Loops may be omitted, in which
/// case the graph must be the standard seed shape and the standard marking
/// is used.
struct GogFile {
  std::shared_ptr<const SpineContext> ctx;
  MarkedGraph graph;
};
GogFile parse_gog(const std::string& text);
std::string serialize_gog(const MarkedGraph& m);

/// JSON (nlohmann) serialization; the canonical id table keeps path and
/// certificate files compact.
std::string marked_graph_to_json(const MarkedGraph& m);
MarkedGraph marked_graph_from_json(std::shared_ptr<const SpineContext> ctx,
                                   const std::string& json_text);

std::string path_to_json(const StandardPath& p);
StandardPath path_from_json(std::shared_ptr<const SpineContext> ctx,
                            const std::string& json_text);

std::string push_report_to_json(const StandardPath& input,
                                const PushResult& result, long long k);
std::string loop_push_report_to_json(const LoopPush& result, long long k,
                                     long long n);
/// Re-reads a push report and replays its certificate.
CertCheck replay_push_report(std::shared_ptr<const SpineContext> ctx,
                             const std::string& json_text,
                             long long avoid_radius);

std::string ball_report_to_json(const Ball& ball);
std::string ball_adjacency_dot(const Ball& ball);
std::string star_graph_dot(const MarkedGraph& m, const StarGraph& s);

std::string signature_spec(const FactorSignature& sig);

}  // namespace briar
