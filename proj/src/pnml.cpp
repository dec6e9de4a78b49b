#include "folda/pnml.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

namespace folda {

namespace {

namespace pt = boost::property_tree;

std::string name_text(const pt::ptree& node) {
  if (auto name = node.get_child_optional("name")) {
    if (auto text = name->get_optional<std::string>("text")) return *text;
  }
  return "";
}

bool silent_name(const std::string& s) { return s.empty() || s.rfind("tau", 0) == 0; }

struct NetScan {
  PetriNet net;
  std::map<std::string, std::uint32_t> place_ids;
  std::map<std::string, std::uint32_t> trans_ids;
  std::vector<Marking::Entry> initial;
  bool have_final = false;
  std::vector<Marking::Entry> final_entries;

  void collect_nodes(const pt::ptree& parent);
  void collect_arcs(const pt::ptree& parent);
  void read_final_markings(const pt::ptree& fm);
};

void NetScan::collect_nodes(const pt::ptree& parent) {
  for (const auto& [key, node] : parent) {
    if (key == "page") {
      collect_nodes(node);
    } else if (key == "place") {
      auto id = node.get_optional<std::string>("<xmlattr>.id");
      if (!id) throw PnmlError("place without id attribute");
      if (place_ids.count(*id)) throw PnmlError("duplicate place id " + *id);
      std::string nm = name_text(node);
      std::uint32_t p = net.add_place(nm.empty() ? *id : nm);
      place_ids[*id] = p;
      if (auto init = node.get_child_optional("initialMarking")) {
        int tokens = init->get<int>("text", 0);
        if (tokens < 0) throw PnmlError("negative initial marking on place " + *id);
        if (tokens > 0) initial.emplace_back(p, static_cast<std::uint32_t>(tokens));
      }
    } else if (key == "transition") {
      auto id = node.get_optional<std::string>("<xmlattr>.id");
      if (!id) throw PnmlError("transition without id attribute");
      if (trans_ids.count(*id)) throw PnmlError("duplicate transition id " + *id);
      std::string nm = name_text(node);
      trans_ids[*id] = net.add_transition(*id, silent_name(nm) ? "" : nm);
    }
  }
}

// Arcs resolve after every page's nodes are known.
void NetScan::collect_arcs(const pt::ptree& parent) {
  for (const auto& [key, node] : parent) {
    if (key == "page") {
      collect_arcs(node);
      continue;
    }
    if (key != "arc") continue;
    auto src = node.get_optional<std::string>("<xmlattr>.source");
    auto tgt = node.get_optional<std::string>("<xmlattr>.target");
    if (!src || !tgt) throw PnmlError("arc without source/target");
    auto sp = place_ids.find(*src);
    auto st = trans_ids.find(*src);
    auto tp = place_ids.find(*tgt);
    auto tt = trans_ids.find(*tgt);
    if (sp != place_ids.end() && tt != trans_ids.end()) {
      net.add_arc_pt(sp->second, tt->second);
    } else if (st != trans_ids.end() && tp != place_ids.end()) {
      net.add_arc_tp(st->second, tp->second);
    } else {
      throw PnmlError("arc references unknown nodes: " + *src + " -> " + *tgt);
    }
  }
}

void NetScan::read_final_markings(const pt::ptree& fm) {
  auto marking = fm.get_child_optional("marking");
  if (!marking) throw PnmlError("finalmarkings without a marking element");
  for (const auto& [key, node] : *marking) {
    if (key != "place") continue;
    auto idref = node.get_optional<std::string>("<xmlattr>.idref");
    if (!idref) throw PnmlError("final marking place without idref");
    auto it = place_ids.find(*idref);
    if (it == place_ids.end()) throw PnmlError("final marking references unknown place " + *idref);
    int tokens = node.get<int>("text", 1);
    if (tokens < 0) throw PnmlError("negative final marking on place " + *idref);
    if (tokens > 0) final_entries.emplace_back(it->second, static_cast<std::uint32_t>(tokens));
  }
  have_final = true;
}

}  // namespace

PetriNet read_pnml(const std::string& path) {
  pt::ptree doc;
  try {
    pt::read_xml(path, doc, pt::xml_parser::trim_whitespace);
  } catch (const pt::xml_parser_error& e) {
    throw PnmlError(std::string("pnml parse error: ") + e.what());
  }
  auto pnml = doc.get_child_optional("pnml");
  if (!pnml) throw PnmlError(path + ": no <pnml> root element");
  auto netnode = pnml->get_child_optional("net");
  if (!netnode) throw PnmlError(path + ": no <net> element");

  NetScan scan;
  scan.collect_nodes(*netnode);
  scan.collect_arcs(*netnode);
  if (auto fm = netnode->get_child_optional("finalmarkings")) {
    scan.read_final_markings(*fm);
  }
  scan.net.initial = Marking(std::move(scan.initial));

  if (!scan.have_final) {
    std::ifstream sidecar(path + ".fm");
    if (sidecar) {
      std::string pid;
      int count;
      while (sidecar >> pid >> count) {
        auto it = scan.place_ids.find(pid);
        if (it == scan.place_ids.end())
          throw PnmlError("sidecar final marking references unknown place " + pid);
        if (count > 0) scan.final_entries.emplace_back(it->second, count);
      }
      scan.have_final = true;
    }
  }
  if (!scan.have_final) {
    throw MissingFinalMarkingError(path + ": no final marking (finalmarkings block or " + path +
                                   ".fm sidecar required)");
  }
  scan.net.final_marking = Marking(std::move(scan.final_entries));
  scan.net.validate();
  return scan.net;
}

namespace {

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

void write_pnml(const PetriNet& net, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw PnmlError("cannot open " + path + " for writing");
  f << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  f << "<pnml>\n";
  f << "  <net id=\"net1\" type=\"http://www.pnml.org/version-2009/grammar/ptnet\">\n";
  f << "    <page id=\"pg1\">\n";
  for (std::uint32_t p = 0; p < net.num_places(); ++p) {
    f << "      <place id=\"p" << p << "\">\n";
    f << "        <name><text>" << xml_escape(net.place_names[p]) << "</text></name>\n";
    if (std::uint32_t tokens = net.initial.count(p); tokens > 0) {
      f << "        <initialMarking><text>" << tokens << "</text></initialMarking>\n";
    }
    f << "      </place>\n";
  }
  for (std::uint32_t t = 0; t < net.num_transitions(); ++t) {
    const Transition& tr = net.transitions[t];
    f << "      <transition id=\"t" << t << "\">\n";
    f << "        <name><text>" << (tr.silent() ? "tau_" + std::to_string(t) : xml_escape(tr.label))
      << "</text></name>\n";
    f << "      </transition>\n";
  }
  int arc = 0;
  for (std::uint32_t t = 0; t < net.num_transitions(); ++t) {
    for (std::uint32_t p : net.transitions[t].pre) {
      f << "      <arc id=\"a" << arc++ << "\" source=\"p" << p << "\" target=\"t" << t
        << "\"/>\n";
    }
    for (std::uint32_t p : net.transitions[t].post) {
      f << "      <arc id=\"a" << arc++ << "\" source=\"t" << t << "\" target=\"p" << p
        << "\"/>\n";
    }
  }
  f << "    </page>\n";
  f << "    <finalmarkings>\n      <marking>\n";
  for (const auto& [p, c] : net.final_marking.entries()) {
    f << "        <place idref=\"p" << p << "\"><text>" << c << "</text></place>\n";
  }
  f << "      </marking>\n    </finalmarkings>\n";
  f << "  </net>\n</pnml>\n";
  if (!f) throw PnmlError("write failed for " + path);
}

}  // namespace folda
