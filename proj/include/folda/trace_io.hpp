#ifndef FOLDA_TRACE_IO_HPP
#define FOLDA_TRACE_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "folda/trace.hpp"

namespace folda {

struct TraceIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Two on-disk forms:
//  - plain text (default): one trace per line, activities comma-separated,
//    surrounding whitespace trimmed; an empty line is the empty trace.
//    Sequential traces only; activity names must not contain commas or
//    newlines.
//  - JSON (.json files or content starting with '['): an array whose
//    elements are either arrays of activity strings (sequential) or objects
//    {"events": [{"id": .., "activity": ..}, ...], "order": [[id, id], ..]}
//    declaring a partial order (ids may be strings or numbers; order pairs
//    are before/after).
std::vector<Trace> read_traces(const std::string& path);
std::vector<Trace> parse_traces_text(std::istream& in);
std::vector<Trace> parse_traces_json(std::istream& in);

void write_traces_text(const std::vector<Trace>& traces, const std::string& path);
void write_traces_json(const std::vector<Trace>& traces, const std::string& path);

}  // namespace folda

#endif
