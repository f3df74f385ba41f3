#pragma once

#include <string>

#include "reedy/presentation.hpp"

namespace fx {

inline const std::string kExamples = REEDY_SOURCE_DIR "/examples/";

struct Loaded {
  reedy::PresentationFile p;
  reedy::CatPtr cat;
  reedy::ReedyStructure rs;
};

inline Loaded from_presentation(const reedy::PresentationFile& p) {
  auto cat = reedy::build_linear_category(p);
  reedy::ReedyStructure rs = reedy::build_reedy_structure(p, *cat);
  return {p, cat, rs};
}

inline Loaded example(const std::string& name) {
  return from_presentation(reedy::load_presentation(kExamples + name + ".reedy"));
}

// qh over GF(3), small enough for enumeration oracles.
inline Loaded qh_gf3() {
  return from_presentation(reedy::parse_presentation(R"(
[field]     kind=GF p=3
[quiver]    vertices = v0 v1
            arrow a : v0 -> v1
            arrow b : v1 -> v0
[relations] b*a
[limits]    maxlen = 4
[reedy]     degree v0 = 0
            degree v1 = 1
            plus  = a
            minus = b
)"));
}

}  // namespace fx
