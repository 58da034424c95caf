#pragma once

#include <string>

#include "sskg/bounds.hpp"
#include "sskg/degrade.hpp"
#include "sskg/probcore.hpp"
#include "sskg/protocol.hpp"
#include "sskg/sources.hpp"

namespace sskg {

/// JSON encodings. Numbers round-trip bit-exactly (shortest representation
/// that re-parses to the same double).
std::string to_json(const FiniteDist& p);
std::string to_json(const JointDist2& j);
std::string to_json(const JointDist3& j);
std::string to_json(const Channel& ch);
std::string to_json(const SkBounds& b);
std::string to_json(const DegradednessVerdict& v);
std::string to_json(const ProtocolReport& r);
std::string to_json(const KeySchedule& s);

/// Parsers; validation failures carry the offending position or field.
FiniteDist finite_dist_from_json(const std::string& text);
JointDist3 joint3_from_json(const std::string& text);
SkBounds sk_bounds_from_json(const std::string& text);
ProtocolReport protocol_report_from_json(const std::string& text);
KeySchedule key_schedule_from_json(const std::string& text);

/// File helpers.
JointDist3 load_joint3(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// CSV with header x,y,z, one row per symbol.
std::string sample_set_csv(const SampleSet& s);

} // namespace sskg
