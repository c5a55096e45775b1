#include "inet/dot.hpp"

#include <sstream>

namespace inet {

namespace {

class Writer {
 public:
  Writer(const CellPermutation& cells, const std::string& name) : cells_(cells) {
    out_ << "graph " << name << " {\n  node [fontsize=10];\n";
    for (const Cell& c : cells.orbits()) {
      out_ << "  c" << c.point() << " [shape=triangle, label=\"" << c.label << '@' << c.point() << "\"];\n";
    }
  }

  // Node standing for port p, with p an endpoint of a wire.
  std::string node(Port p) const {
    if (auto at = cells_.locate(p)) return "c" + std::to_string(cells_.orbits()[at->orbit].point());
    return "p" + std::to_string(p);
  }

  bool principal(Port p) const {
    auto at = cells_.locate(p);
    return at && at->index == 0;
  }

  void port_node(Port p, bool anonymous) {
    if (anonymous) {
      out_ << "  p" << p << " [shape=point, label=\"\"];\n";
    } else {
      out_ << "  p" << p << " [shape=plaintext, label=\"" << p << "\"];\n";
    }
  }

  void loop(Port p) {
    out_ << "  l" << p << " [shape=point, label=\"\"];\n";
    out_ << "  l" << p << " -- l" << p << ";\n";
  }

  void wire(Port a, Port b) {
    out_ << "  " << node(a) << " -- " << node(b) << " [taillabel=\"" << a << "\", headlabel=\"" << b << '"';
    if (principal(a) && principal(b)) {
      out_ << ", color=red, penwidth=2";
    } else if (principal(a) || principal(b)) {
      out_ << ", style=bold";
    }
    out_ << "];\n";
  }

  void cut(Port a, Port b) {
    out_ << "  " << node(a) << " -- " << node(b) << " [color=\"black:black\"];\n";
  }

  std::string finish() {
    out_ << "}\n";
    return out_.str();
  }

 private:
  const CellPermutation& cells_;
  std::ostringstream out_;
};

}  // namespace

std::string to_dot(const Net& net, const std::string& name) {
  Writer w(net.cells(), name);
  for (Port p : net.free_ports()) w.port_node(p, false);
  for (const Orbit& o : net.wiring().orbits()) {
    if (o.fixed_point()) {
      w.loop(o.first);
    } else {
      w.wire(o.first, o.second);
    }
  }
  return w.finish();
}

std::string to_dot(const ACNet& net, const std::string& name) {
  Writer w(net.cells(), name);
  for (const auto& [p, q] : net.axioms().table()) {
    if (p == q || net.cells().contains(p)) continue;
    w.port_node(p, net.cuts().contains(p));
  }
  for (const Orbit& o : net.axioms().orbits()) {
    if (o.fixed_point()) {
      w.loop(o.first);
    } else {
      w.wire(o.first, o.second);
    }
  }
  for (const Orbit& o : net.cuts().orbits()) w.cut(o.first, o.second);
  return w.finish();
}

}  // namespace inet
