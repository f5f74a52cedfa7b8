#ifndef REGSAT_MODEL_HPP
#define REGSAT_MODEL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace regsat {

using Datum = std::int64_t;
using Position = std::vector<int>;   // tree positions, root = {}

enum class ErrorKind {
  Syntax,
  EmptyWord,
  EmptyChildList,
  Unbalanced,
  UnknownPosition,
  UnknownState,
  UnknownLabel,
  OrderedMismatch,
  NegatedQuantifier,
  NotNormalized,
  Contract,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, int line = 0, int col = 0);
  ErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  ErrorKind kind_;
  int line_, col_;
};

struct Item {
  std::string label;
  Datum datum = 0;
  bool operator==(const Item&) const = default;
};

struct DataWord {
  std::vector<Item> items;
  std::size_t size() const { return items.size(); }
  // positions are 1-based
  const Item& at(int pos) const;
  bool operator==(const DataWord&) const = default;
};

struct WordType {
  bool hasNext = false;
};

struct TreeType {
  bool hasChild = false;
  bool hasRight = false;
};

// Nodes are stored in preorder; node 0 is the root.
struct DataTree {
  struct Node {
    std::string label;
    Datum datum = 0;
    int parent = -1;
    std::vector<int> children;
  };
  std::vector<Node> nodes;

  std::size_t size() const { return nodes.size(); }
  int first_child(int id) const;
  int next_sibling(int id) const;
  int index_in_parent(int id) const;   // 0-based
  Position position_of(int id) const;
  int node_at(const Position& p) const;   // throws UnknownPosition
  bool operator==(const DataTree& o) const;

  static DataTree leaf(std::string label, Datum d);
  int add_child(int parent, std::string label, Datum d);
};

DataWord parse_word(const std::string& text);
DataTree parse_tree(const std::string& text);
std::string to_string(const DataWord& w);
std::string to_string(const DataTree& t);
std::string to_string(const Position& p);

WordType type_of(const DataWord& w, int pos);
TreeType type_of(const DataTree& t, const Position& p);
TreeType type_of_node(const DataTree& t, int id);

bool fcns_leq(const DataTree& t, const Position& x, const Position& y);
bool fcns_leq_id(const DataTree& t, int x, int y);

std::vector<Position> positions(const DataTree& t);

}  // namespace regsat

#endif
