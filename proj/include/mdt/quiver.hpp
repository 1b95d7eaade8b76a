#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mdt/base.hpp"

namespace mdt {

// Quiver with potential.  Potential words are stored in traversal order:
// word[0] is the first arrow a cycle runs through, i.e. the rightmost
// factor in composition notation.
struct Quiver {
  struct Arrow {
    std::string name;
    int src = 0;
    int tgt = 0;
  };
  struct Term {
    Rat coeff;
    std::vector<int> word;  // arrow indices
  };

  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;
  std::vector<Term> potential;

  int vertex_index(const std::string& name) const;  // -1 when absent
  int arrow_index(const std::string& name) const;
  void validate() const;  // throws InputError
};

Quiver parse_quiver(std::istream& in, const std::string& name = "<input>");
Quiver load_quiver(const std::string& path);

}  // namespace mdt
