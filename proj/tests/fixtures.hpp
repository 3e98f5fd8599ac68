#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "causalog/datalog.hpp"
#include "causalog/relmodel.hpp"

namespace causalog::fixtures {

inline std::string read_data(const std::string& name) {
  std::ifstream in(std::string(CAUSALOG_TEST_DATA) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Atom atom(const std::string& text) { return parse_atom(text); }

inline AtomSet atoms(std::initializer_list<const char*> texts) {
  AtomSet out;
  for (const char* t : texts) out.insert(parse_atom(t));
  return out;
}

// Authors/journals table, all endogenous.
inline Instance ex1() { return parse_instance(read_data("ex1.cdb")); }
// Same tuples with the Journal relation exogenous.
inline Instance ex1_partition() { return parse_instance(read_data("ex1_partition.cdb")); }
inline Program q1() { return parse_program(read_data("q1.dl")); }
inline Instance ex3() { return parse_instance(read_data("ex3.cdb")); }
inline Program q3() { return parse_program(read_data("q3.dl")); }

inline Tuple john_xml() { return parse_tuple("John,XML"); }

inline AtomSet ex1_causes() {
  return atoms({"Author(John,TODS)", "Author(John,TKDE)", "Journal(TKDE,XML,30)", "Journal(TODS,XML,32)"});
}

// The four two-tuple deletions that drop (John,XML): one tuple from each derivation.
inline AtomFamily ex1_deletions() {
  return {atoms({"Author(John,TODS)", "Author(John,TKDE)"}),
          atoms({"Author(John,TODS)", "Journal(TKDE,XML,30)"}),
          atoms({"Journal(TODS,XML,32)", "Author(John,TKDE)"}),
          atoms({"Journal(TODS,XML,32)", "Journal(TKDE,XML,30)"})};
}

// One author, one venue, two topics: Author(j,v) feeds both answers.
inline Instance vc_instance() {
  return Instance(atoms({"Author(j,v)", "Journal(v,t1,1)", "Journal(v,t2,1)"}), {});
}

}  // namespace causalog::fixtures
