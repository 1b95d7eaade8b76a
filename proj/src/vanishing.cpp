#include "mdt/vanishing.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace mdt {

void ResolutionData::validate() const {
  std::set<std::string> labels;
  for (const auto& [label, mult] : divisors) {
    if (!labels.insert(label).second) throw InputError("duplicate divisor label " + label);
    if (mult < 1) throw InputError("divisor " + label + " needs multiplicity >= 1");
  }
  std::set<std::vector<std::string>> seen;
  for (const auto& [subset, cls] : strata) {
    if (subset.empty()) throw InputError("empty stratum subset");
    for (const auto& l : subset)
      if (!labels.count(l)) throw InputError("stratum references undeclared divisor " + l);
    std::vector<std::string> key = subset;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end())
      throw InputError("stratum repeats a divisor label");
    if (!seen.insert(key).second) throw InputError("duplicate stratum subset");
  }
  if (!central_fibre_class.numerator().trivial_only() || !central_fibre_class.denominator().empty())
    throw InputError("central fibre class must be sector-free and polynomial");
}

ResolutionData parse_resolution(std::istream& in, const std::string& name) {
  ResolutionData data;
  bool have_central = false;
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
    if (keyword == "divisor") {
      std::string label;
      int mult;
      if (!(ls >> label >> mult)) throw fail("expected: divisor <label> <multiplicity>");
      std::string rest;
      if (ls >> rest) throw fail("trailing tokens after divisor line");
      data.divisors.emplace_back(label, mult);
    } else if (keyword == "stratum") {
      auto colon = line.find(':');
      if (colon == std::string::npos) throw fail("stratum line needs ':' before the cover class");
      std::istringstream head(line.substr(line.find("stratum") + 7, colon - line.find("stratum") - 7));
      std::vector<std::string> subset;
      std::string label;
      while (head >> label) subset.push_back(label);
      if (subset.empty()) throw fail("stratum needs at least one divisor label");
      MotiveExpr cls;
      try {
        cls = parse_motive(line.substr(colon + 1));
      } catch (const ParseError& e) {
        throw fail(std::string("bad cover class: ") + e.what());
      }
      data.strata.emplace_back(std::move(subset), std::move(cls));
    } else if (keyword == "central") {
      if (have_central) throw fail("second central line");
      auto pos = line.find("central");
      try {
        data.central_fibre_class = parse_motive(line.substr(pos + 7));
      } catch (const ParseError& e) {
        throw fail(std::string("bad central fibre class: ") + e.what());
      }
      have_central = true;
    } else {
      throw fail("unknown keyword '" + keyword + "'");
    }
  }
  if (!have_central) throw ParseError(name + ": missing central line");
  try {
    data.validate();
  } catch (const InputError& e) {
    throw ParseError(name + ": " + e.what());
  }
  return data;
}

ResolutionData load_resolution(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open resolution file " + path);
  return parse_resolution(in, path);
}

ResolutionData power_resolution(long long n) {
  if (n < 1) throw InputError("power resolution needs exponent >= 1");
  ResolutionData data;
  data.divisors.emplace_back("E", static_cast<int>(n));
  data.strata.emplace_back(std::vector<std::string>{"E"}, mu_n_class(n));
  data.central_fibre_class = MotiveExpr::one();
  return data;
}

MotiveExpr nearby_cycle(const ResolutionData& data) {
  data.validate();
  MotiveExpr total;
  MotiveExpr one_minus_L = MotiveExpr::one() - MotiveExpr::L();
  for (const auto& [subset, cls] : data.strata)
    total += one_minus_L.pow(static_cast<long>(subset.size()) - 1) * cls;
  return total;
}

MotiveExpr vanishing_cycle(const ResolutionData& data) {
  return nearby_cycle(data) - data.central_fibre_class;
}

MotiveExpr milnor_fibre_ts(long long a, long long b) {
  if (a < 1 || b < 1) throw InputError("exponents must be >= 1");
  MotiveExpr fa = MotiveExpr::one() - mu_n_class(a);
  MotiveExpr fb = MotiveExpr::one() - mu_n_class(b);
  return MotiveExpr::one() - MotiveExpr::mul_exotic(fa, fb);
}

MotiveExpr chapter2_weight() {
  ResolutionData data = load_resolution(std::string(MDT_DATA_DIR) + "/trT4_sut.res");
  MotiveExpr nearby = nearby_cycle(data);
  return (data.central_fibre_class - nearby) * MotiveExpr::Linv();
}

}  // namespace mdt
