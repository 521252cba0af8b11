#pragma once

#include <iosfwd>
#include <string>

#include "ccsim/model.hpp"

namespace ccsim {

// Trace format: UTF-8 text, one request per line as "<type_token> <item_token>".
// Lines whose first non-blank character is '#' are comments; blank lines are
// ignored. Throws TraceParseError with the offending line number.
RequestSequence parse_trace(std::istream& in);
RequestSequence parse_trace_file(const std::string& path);

void write_trace(std::ostream& out, const RequestSequence& seq);
void write_trace_file(const std::string& path, const RequestSequence& seq);

}  // namespace ccsim
