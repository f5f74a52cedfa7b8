#ifndef REGSAT_DTD_HPP
#define REGSAT_DTD_HPP

#include <map>

#include "regsat/atra.hpp"

namespace regsat {

// Label-structure DTD: a root label and a content model per label.
struct Dtd {
  std::string root;
  std::vector<std::string> labels;   // declaration order
  std::map<std::string, LabelRegex> rules;
};

Dtd parse_dtd(const std::string& text);
std::string to_string(const Dtd& d);
bool conforms(const Dtd& d, const DataTree& t);

// extra labels join the alphabet and are rejected wherever they occur
AtraAutomaton dtd_to_atra(const Dtd& d, const std::vector<std::string>& extraLabels = {});

}  // namespace regsat

#endif
