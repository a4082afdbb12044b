#include "invclust/renamer.hpp"

#include <map>
#include <optional>
#include <set>

#include "invclust/errors.hpp"

namespace invclust {
namespace {

struct Variable {
  std::string name;
  std::string prefix;  // "int" or "float"
  std::vector<int> scope_path;
  std::optional<std::string> new_name;
};

std::string prefix_for(const std::string& type) { return type == "int" ? "int" : "float"; }

class Renamer {
 public:
  explicit Renamer(const SyntaxTree& tree) : tree_(tree) {
    for (const auto& fn : tree_.root.children)
      if (fn.kind == NodeKind::FunctionDef) functions_.insert(*fn.identifier);
  }

  RenameResult run() {
    std::vector<int> path;
    visit_unit(tree_.root, path);

    // Never-bound variables follow, in declaration order.
    for (auto& var : vars_)
      if (!var.new_name) assign_name(var);

    for (auto& [slot, index] : slots_) *slot = *vars_[index].new_name;

    RenameResult result;
    for (std::size_t index : naming_order_) {
      const auto& var = vars_[index];
      result.map.entries.push_back({var.name, var.scope_path, *var.new_name});
    }
    result.tree = std::move(tree_);
    return result;
  }

 private:
  void assign_name(Variable& var) {
    int& counter = counters_[var.prefix];
    var.new_name = var.prefix + std::to_string(counter++);
    naming_order_.push_back(static_cast<std::size_t>(&var - vars_.data()));
  }

  void bind(std::size_t index) {
    if (!vars_[index].new_name) assign_name(vars_[index]);
  }

  std::size_t declare(Node& node, const std::vector<int>& scope_path) {
    vars_.push_back({*node.identifier, prefix_for(*node.type_name), scope_path, std::nullopt});
    std::size_t index = vars_.size() - 1;
    scopes_.back().push_back({*node.identifier, index});
    slots_.emplace_back(&*node.identifier, index);
    return index;
  }

  std::size_t resolve(Node& ref) {
    const std::string& name = *ref.identifier;
    for (auto scope = scopes_.rbegin(); scope != scopes_.rend(); ++scope)
      for (auto it = scope->rbegin(); it != scope->rend(); ++it)
        if (it->first == name) {
          slots_.emplace_back(&*ref.identifier, it->second);
          return it->second;
        }
    throw UnresolvedIdentifier(name, ref.line);
  }

  void visit_unit(Node& root, std::vector<int>& path) {
    for (std::size_t i = 0; i < root.children.size(); ++i) {
      Node& fn = root.children[i];
      path.push_back(static_cast<int>(i));
      scopes_.emplace_back();
      for (std::size_t p = 0; p + 1 < fn.children.size(); ++p) bind(declare(fn.children[p], path));
      path.push_back(static_cast<int>(fn.children.size() - 1));
      visit_block(fn.children.back(), path);
      path.pop_back();
      scopes_.pop_back();
      path.pop_back();
    }
  }

  void visit_block(Node& block, std::vector<int>& path) {
    scopes_.emplace_back();
    for (std::size_t i = 0; i < block.children.size(); ++i) {
      path.push_back(static_cast<int>(i));
      visit_statement(block.children[i], path);
      path.pop_back();
    }
    scopes_.pop_back();
  }

  // `path` points at `stmt`; declarations land in the enclosing scope.
  void visit_statement(Node& stmt, std::vector<int>& path) {
    std::vector<int> scope_path(path.begin(), path.end() - 1);
    switch (stmt.kind) {
      case NodeKind::Decl: {
        if (!stmt.children.empty()) visit_expression(stmt.children[0]);
        std::size_t index = declare(stmt, scope_path);
        if (!stmt.children.empty()) bind(index);
        return;
      }
      case NodeKind::ArrayDecl: {
        for (std::size_t i = 1; i < stmt.children.size(); ++i) visit_expression(stmt.children[i]);
        std::size_t index = declare(stmt, scope_path);
        if (stmt.children.size() > 1) bind(index);
        return;
      }
      case NodeKind::Assign: {
        std::size_t target = visit_target(stmt.children[0]);
        visit_expression(stmt.children[1]);
        bind(target);
        return;
      }
      case NodeKind::UnaryOp:
        if (*stmt.op == "++" || *stmt.op == "--") {
          bind(visit_target(stmt.children[0]));
          return;
        }
        visit_expression(stmt);
        return;
      case NodeKind::Scanf:
        for (auto& target : stmt.children) bind(visit_target(target));
        return;
      case NodeKind::Printf:
      case NodeKind::Return:
        for (auto& child : stmt.children) visit_expression(child);
        return;
      case NodeKind::Call:
        visit_expression(stmt);
        return;
      case NodeKind::Block:
        visit_block(stmt, path);
        return;
      case NodeKind::If:
        visit_expression(stmt.children[0]);
        for (std::size_t i = 1; i < stmt.children.size(); ++i) {
          path.push_back(static_cast<int>(i));
          visit_block(stmt.children[i], path);
          path.pop_back();
        }
        return;
      case NodeKind::While:
        visit_expression(stmt.children[0]);
        path.push_back(1);
        visit_block(stmt.children[1], path);
        path.pop_back();
        return;
      case NodeKind::For: {
        scopes_.emplace_back();
        path.push_back(0);
        if (!is_empty_clause(stmt.children[0])) visit_statement(stmt.children[0], path);
        path.pop_back();
        if (!is_empty_clause(stmt.children[1])) visit_expression(stmt.children[1]);
        // The step runs after the body, but "first assigned" is textual.
        path.push_back(2);
        if (!is_empty_clause(stmt.children[2])) visit_statement(stmt.children[2], path);
        path.pop_back();
        path.push_back(3);
        visit_block(stmt.children[3], path);
        path.pop_back();
        scopes_.pop_back();
        return;
      }
      default:
        visit_expression(stmt);
    }
  }

  std::size_t visit_target(Node& target) {
    if (target.kind == NodeKind::ArrayIndex) {
      std::size_t index = resolve(target.children[0]);
      visit_expression(target.children[1]);
      return index;
    }
    return resolve(target);
  }

  void visit_expression(Node& expr) {
    switch (expr.kind) {
      case NodeKind::IdentifierRef:
        resolve(expr);
        return;
      case NodeKind::Call:
        if (!functions_.count(*expr.identifier)) throw UnresolvedIdentifier(*expr.identifier, expr.line);
        break;
      default:
        break;
    }
    for (auto& child : expr.children) visit_expression(child);
  }

  SyntaxTree tree_;
  std::set<std::string> functions_;
  std::vector<Variable> vars_;
  std::vector<std::vector<std::pair<std::string, std::size_t>>> scopes_;
  std::vector<std::pair<std::string*, std::size_t>> slots_;
  std::vector<std::size_t> naming_order_;
  std::map<std::string, int> counters_;
};

}  // namespace

const RenameEntry* RenameMap::find(const std::string& original) const {
  for (const auto& e : entries)
    if (e.original_name == original) return &e;
  return nullptr;
}

RenameResult rename(const SyntaxTree& tree) {
  Renamer renamer(tree);
  return renamer.run();
}

bool alpha_equivalent(const SyntaxTree& a, const SyntaxTree& b) {
  return rename(a).tree == rename(b).tree;
}

}  // namespace invclust
