#include "ccsim/trace.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "ccsim/errors.hpp"

namespace ccsim {

RequestSequence parse_trace(std::istream& in) {
  RequestSequence seq;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    lineno += 1;
    std::istringstream fields(line);
    std::string type, id, extra;
    if (!(fields >> type)) continue;           // blank line
    if (type.front() == '#') continue;         // comment
    if (!(fields >> id)) {
      throw TraceParseError(lineno, "expected \"<type_token> <item_token>\"");
    }
    if (fields >> extra) {
      throw TraceParseError(lineno, "trailing token \"" + extra + "\"");
    }
    seq.requests.push_back(Item{type, id});
  }
  return seq;
}

RequestSequence parse_trace_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open trace file: " + path);
  return parse_trace(in);
}

void write_trace(std::ostream& out, const RequestSequence& seq) {
  for (const Item& item : seq.requests) {
    out << item.type << ' ' << item.id << '\n';
  }
}

void write_trace_file(const std::string& path, const RequestSequence& seq) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file: " + path);
  write_trace(out, seq);
}

}  // namespace ccsim
