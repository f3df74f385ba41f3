#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "reedy/category.hpp"

namespace reedy {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
        line(line),
        column(column) {}
  std::size_t line, column;
};

// Raised when every path of length maxlen cannot be shown to reduce modulo the relations.
class BoundInsufficient : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string name;
  std::size_t source = 0, target = 0;
};

struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Arrow> arrows;

  std::optional<std::size_t> vertex(std::string_view name) const;
  std::optional<std::size_t> arrow(std::string_view name) const;
};

// Arrows in application order (first applied first). Empty means e(source).
struct PathWord {
  std::size_t source = 0, target = 0;
  std::vector<std::size_t> arrows;

  std::size_t length() const { return arrows.size(); }
  bool operator==(const PathWord&) const = default;
};

std::string path_name(const Quiver& q, const PathWord& p);

struct RelationExpr {
  std::vector<std::pair<Scalar, PathWord>> terms;
};

struct ReedyData {
  std::vector<int> degree;
  std::vector<std::size_t> plus, minus;
};

struct PresentationFile {
  Field field;
  Quiver quiver;
  std::vector<RelationExpr> relations;
  std::size_t maxlen = 0;
  std::optional<ReedyData> reedy;
};

PresentationFile parse_presentation(std::string_view text);
PresentationFile load_presentation(const std::string& path);

// V_0 = {}, V_{n+1} = vertices all of whose incoming (resp. outgoing) arrows
// start (resp. end) in V_n; returns the sequence until it stabilizes.
std::vector<std::vector<std::size_t>> left_rooted_sequence(const Quiver& q);
std::vector<std::vector<std::size_t>> right_rooted_sequence(const Quiver& q);
bool is_left_rooted(const Quiver& q);
bool is_right_rooted(const Quiver& q);

std::shared_ptr<LinearCategory> build_linear_category(const PresentationFile& p);
// Requires a [reedy] section; C+/C- are generated by the listed arrows.
ReedyStructure build_reedy_structure(const PresentationFile& p, const LinearCategory& cat);
// Direct Reedy structure from left rootedness (all arrows raise degree).
std::optional<ReedyStructure> direct_structure(const PresentationFile& p, const LinearCategory& cat);

}  // namespace reedy
