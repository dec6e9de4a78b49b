#include "folda/trace_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

namespace folda {

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

std::vector<Trace> parse_traces_text(std::istream& in) {
  std::vector<Trace> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    Trace tr;
    if (!trim(line).empty()) {
      std::stringstream ss(line);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::string act = trim(item);
        if (act.empty()) {
          throw TraceIoError("line " + std::to_string(lineno) + ": empty activity name");
        }
        tr.activities.push_back(std::move(act));
      }
    }
    out.push_back(std::move(tr));
  }
  return out;
}

std::vector<Trace> parse_traces_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw TraceIoError(std::string("trace json parse error: ") + e.what());
  }
  if (!doc.is_array()) throw TraceIoError("trace json: top level must be an array");
  std::vector<Trace> out;
  for (const auto& item : doc) {
    Trace tr;
    if (item.is_array()) {
      for (const auto& a : item) {
        if (!a.is_string() || a.get<std::string>().empty())
          throw TraceIoError("trace json: activities must be non-empty strings");
        tr.activities.push_back(a.get<std::string>());
      }
    } else if (item.is_object()) {
      tr.partial = true;
      if (!item.contains("events") || !item["events"].is_array())
        throw TraceIoError("trace json: partial-order trace needs an events array");
      std::map<std::string, std::uint32_t> ids;
      for (const auto& ev : item["events"]) {
        if (!ev.contains("activity") || !ev["activity"].is_string() ||
            ev["activity"].get<std::string>().empty())
          throw TraceIoError("trace json: event without activity");
        std::string id = ev.contains("id")
                             ? (ev["id"].is_string() ? ev["id"].get<std::string>()
                                                     : std::to_string(ev["id"].get<long long>()))
                             : std::to_string(tr.activities.size());
        if (!ids.emplace(id, static_cast<std::uint32_t>(tr.activities.size())).second)
          throw TraceIoError("trace json: duplicate event id " + id);
        tr.activities.push_back(ev["activity"].get<std::string>());
      }
      if (item.contains("order")) {
        for (const auto& edge : item["order"]) {
          if (!edge.is_array() || edge.size() != 2)
            throw TraceIoError("trace json: order edges are [before, after] pairs");
          auto key = [&](const nlohmann::json& v) {
            return v.is_string() ? v.get<std::string>() : std::to_string(v.get<long long>());
          };
          auto a = ids.find(key(edge[0]));
          auto b = ids.find(key(edge[1]));
          if (a == ids.end() || b == ids.end())
            throw TraceIoError("trace json: order edge references unknown event");
          tr.order.emplace_back(a->second, b->second);
        }
      }
      order_closure(tr);  // rejects cyclic declarations early
    } else {
      throw TraceIoError("trace json: each trace is an array or an object");
    }
    out.push_back(std::move(tr));
  }
  return out;
}

std::vector<Trace> read_traces(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw TraceIoError("cannot open trace file " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return parse_traces_json(f);
  // sniff: a leading '[' means JSON
  int c = f.peek();
  while (c == ' ' || c == '\n' || c == '\t' || c == '\r') {
    f.get();
    c = f.peek();
  }
  if (c == '[') return parse_traces_json(f);
  return parse_traces_text(f);
}

void write_traces_text(const std::vector<Trace>& traces, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw TraceIoError("cannot open " + path + " for writing");
  for (const Trace& tr : traces) {
    if (tr.partial)
      throw TraceIoError("plain trace files hold sequential traces; use the json form");
    for (std::size_t i = 0; i < tr.activities.size(); ++i) {
      const std::string& a = tr.activities[i];
      if (a.empty() || a.find(',') != std::string::npos || a.find('\n') != std::string::npos)
        throw TraceIoError("activity name not representable in plain trace file: '" + a + "'");
      if (i) f << ",";
      f << a;
    }
    f << "\n";
  }
  if (!f) throw TraceIoError("write failed for " + path);
}

void write_traces_json(const std::vector<Trace>& traces, const std::string& path) {
  nlohmann::json doc = nlohmann::json::array();
  for (const Trace& tr : traces) {
    if (!tr.partial) {
      doc.push_back(tr.activities);
      continue;
    }
    nlohmann::json obj;
    obj["events"] = nlohmann::json::array();
    for (std::size_t i = 0; i < tr.activities.size(); ++i) {
      obj["events"].push_back({{"id", i}, {"activity", tr.activities[i]}});
    }
    obj["order"] = nlohmann::json::array();
    for (auto [a, b] : tr.order) obj["order"].push_back({a, b});
    doc.push_back(std::move(obj));
  }
  std::ofstream f(path);
  if (!f) throw TraceIoError("cannot open " + path + " for writing");
  f << doc.dump(2) << "\n";
  if (!f) throw TraceIoError("write failed for " + path);
}

}  // namespace folda
