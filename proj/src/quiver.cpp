#include "mdt/quiver.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace mdt {

int Quiver::vertex_index(const std::string& name) const {
  for (size_t i = 0; i < vertices.size(); ++i)
    if (vertices[i] == name) return static_cast<int>(i);
  return -1;
}

int Quiver::arrow_index(const std::string& name) const {
  for (size_t i = 0; i < arrows.size(); ++i)
    if (arrows[i].name == name) return static_cast<int>(i);
  return -1;
}

void Quiver::validate() const {
  std::set<std::string> names(vertices.begin(), vertices.end());
  if (names.size() != vertices.size()) throw InputError("duplicate vertex name");
  std::set<std::string> anames;
  for (const auto& a : arrows) {
    if (!anames.insert(a.name).second) throw InputError("duplicate arrow name " + a.name);
    if (a.src < 0 || a.src >= static_cast<int>(vertices.size()) || a.tgt < 0 ||
        a.tgt >= static_cast<int>(vertices.size()))
      throw InputError("arrow " + a.name + " references an unknown vertex");
  }
  for (const auto& t : potential) {
    if (t.word.size() < 2) throw InputError("potential cycle needs length >= 2");
    for (size_t k = 0; k < t.word.size(); ++k) {
      int a = t.word[k];
      if (a < 0 || a >= static_cast<int>(arrows.size()))
        throw InputError("potential references an unknown arrow");
      int b = t.word[(k + 1) % t.word.size()];
      if (arrows[a].tgt != arrows[b].src)
        throw InputError("potential word is not a composable cycle");
    }
  }
}

Quiver parse_quiver(std::istream& in, const std::string& name) {
  Quiver q;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError(name + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string keyword;
    if (!(ls >> keyword)) continue;
    if (keyword == "vertex") {
      std::string v;
      if (!(ls >> v)) throw fail("expected: vertex <name>");
      q.vertices.push_back(v);
    } else if (keyword == "arrow") {
      std::string aname, s, t;
      if (!(ls >> aname >> s >> t)) throw fail("expected: arrow <name> <src> <tgt>");
      int si = q.vertex_index(s), ti = q.vertex_index(t);
      if (si < 0) throw fail("unknown source vertex " + s);
      if (ti < 0) throw fail("unknown target vertex " + t);
      q.arrows.push_back({aname, si, ti});
    } else if (keyword == "potential") {
      std::string coeff;
      if (!(ls >> coeff)) throw fail("expected: potential <coefficient> <arrows...>");
      Quiver::Term term;
      try {
        term.coeff = Rat(coeff);
        term.coeff.canonicalize();
      } catch (const std::exception&) {
        throw fail("bad coefficient " + coeff);
      }
      std::string aname;
      while (ls >> aname) {
        int ai = q.arrow_index(aname);
        if (ai < 0) throw fail("unknown arrow " + aname);
        term.word.push_back(ai);
      }
      if (term.word.size() < 2) throw fail("potential cycle needs length >= 2");
      q.potential.push_back(std::move(term));
    } else {
      throw fail("unknown keyword '" + keyword + "'");
    }
  }
  try {
    q.validate();
  } catch (const InputError& e) {
    throw ParseError(name + ": " + e.what());
  }
  return q;
}

Quiver load_quiver(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open quiver file " + path);
  return parse_quiver(in, path);
}

}  // namespace mdt
