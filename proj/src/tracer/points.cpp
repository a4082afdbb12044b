#include "points.hpp"

namespace invclust {
namespace {

class PointWalker {
 public:
  explicit PointWalker(PointTable& table) : table_(table) {}

  void unit(const Node& root) {
    for (const auto& fn : root.children) {
      if (fn.kind != NodeKind::FunctionDef) continue;
      const std::string& name = *fn.identifier;
      table_.entry[&fn] = {name + "@entry", PointKind::FunctionEntry};
      table_.order.push_back(table_.entry[&fn]);
      statements(fn.children.back(), name);
      table_.exit[&fn] = {name + "@exit", PointKind::FunctionExit};
      table_.order.push_back(table_.exit[&fn]);
    }
  }

 private:
  struct Counters {
    int loops = 0;
    int ifs = 0;
    int blocks = 0;
  };

  void add(const Node& block, std::string id, PointKind kind) {
    ProgramPoint point{std::move(id), kind};
    table_.blocks[&block] = point;
    table_.order.push_back(point);
  }

  void statements(const Node& block, const std::string& parent) {
    Counters counters;
    for (const auto& stmt : block.children) statement(stmt, parent, counters);
  }

  void statement(const Node& stmt, const std::string& parent, Counters& counters) {
    switch (stmt.kind) {
      case NodeKind::While:
      case NodeKind::For: {
        std::string id = parent + "/loop" + std::to_string(++counters.loops);
        const Node& body = stmt.children.back();
        add(body, id, PointKind::LoopBody);
        statements(body, id);
        return;
      }
      case NodeKind::If: {
        std::string base = parent + "/if" + std::to_string(++counters.ifs);
        add(stmt.children[1], base + "/then", PointKind::ThenBlock);
        statements(stmt.children[1], base + "/then");
        if (stmt.children.size() > 2) {
          add(stmt.children[2], base + "/else", PointKind::ElseBlock);
          statements(stmt.children[2], base + "/else");
        }
        return;
      }
      case NodeKind::Block: {
        std::string id = parent + "/block" + std::to_string(++counters.blocks);
        add(stmt, id, PointKind::PlainBlock);
        statements(stmt, id);
        return;
      }
      default:
        return;
    }
  }

  PointTable& table_;
};

}  // namespace

PointTable build_point_table(const SyntaxTree& tree) {
  PointTable table;
  PointWalker(table).unit(tree.root);
  return table;
}

std::vector<ProgramPoint> program_points(const SyntaxTree& tree) {
  return build_point_table(tree).order;
}

std::string_view point_kind_name(PointKind kind) {
  switch (kind) {
    case PointKind::FunctionEntry: return "function-entry";
    case PointKind::FunctionExit: return "function-exit";
    case PointKind::LoopBody: return "loop-body";
    case PointKind::ThenBlock: return "then-block";
    case PointKind::ElseBlock: return "else-block";
    case PointKind::PlainBlock: return "plain-block";
  }
  return "?";
}

}  // namespace invclust
