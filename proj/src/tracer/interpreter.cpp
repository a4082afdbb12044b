#include <algorithm>
#include <charconv>
#include <cctype>
#include <cerrno>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <regex>
#include <sstream>

#include "invclust/errors.hpp"
#include "invclust/format.hpp"
#include "points.hpp"

namespace invclust {

double to_double(const Number& n) {
  if (const auto* i = std::get_if<std::int64_t>(&n)) return static_cast<double>(*i);
  return std::get<double>(n);
}

std::string format_number(const Number& n) {
  if (const auto* i = std::get_if<std::int64_t>(&n)) return std::to_string(*i);
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, std::get<double>(n));
  return std::string(buf, ptr);
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Error: return "error";
  }
  return "?";
}

std::string_view runtime_error_name(RuntimeErrorKind kind) {
  switch (kind) {
    case RuntimeErrorKind::DivByZero: return "div-by-zero";
    case RuntimeErrorKind::ArrayOutOfBounds: return "array-out-of-bounds";
    case RuntimeErrorKind::ScanfExhausted: return "scanf-exhausted";
    case RuntimeErrorKind::IntegerOverflow: return "integer-overflow";
    case RuntimeErrorKind::StepLimit: return "step-limit";
    case RuntimeErrorKind::UninitializedRead: return "uninitialized-read";
    case RuntimeErrorKind::InvalidProgram: return "invalid-program";
  }
  return "?";
}

void TraceLog::append(const TraceLog& other) {
  for (const auto& [id, kind] : other.kinds) kinds[id] = kind;
  for (const auto& [id, snaps] : other.samples) {
    auto& dst = samples[id];
    dst.insert(dst.end(), snaps.begin(), snaps.end());
  }
  outputs.insert(outputs.end(), other.outputs.begin(), other.outputs.end());
}

std::size_t TraceLog::sample_count(const std::string& point) const {
  auto it = samples.find(point);
  return it == samples.end() ? 0 : it->second.size();
}

bool SuiteRun::all_pass() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Pass; });
}

bool SuiteRun::any_error() const {
  return std::any_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::Error; });
}

namespace {

std::vector<std::string> normalized_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

bool outputs_match(std::string_view actual, std::string_view expected) {
  return normalized_lines(actual) == normalized_lines(expected);
}

namespace {

struct Trap {
  RuntimeErrorKind kind;
  int line;
  std::string message;
};

struct Variable {
  bool is_double = false;
  bool is_array = false;
  std::vector<Number> values;
  std::vector<char> initialized;
};

struct Scope {
  std::vector<std::pair<std::string, Variable>> vars;
};

struct Frame {
  const Node* function = nullptr;
  std::vector<Scope> scopes;
  std::optional<Number> return_value;
  bool returned = false;
};

constexpr int kMaxCallDepth = 1000;

class Interpreter {
 public:
  Interpreter(const SyntaxTree& tree, const TestCase& test, const Limits& limits)
      : tree_(tree), points_(build_point_table(tree)), input_(test.stdin_text), limits_(limits) {
    for (const auto& fn : tree.root.children)
      if (fn.kind == NodeKind::FunctionDef) functions_.emplace(*fn.identifier, &fn);
  }

  Execution run(const TestCase& test) {
    Execution result;
    try {
      auto main_fn = functions_.find("main");
      if (main_fn == functions_.end()) trap(RuntimeErrorKind::InvalidProgram, 0, "no main function");
      if (main_fn->second->children.size() != 1)
        trap(RuntimeErrorKind::InvalidProgram, main_fn->second->line, "main must not take parameters");
      call(*main_fn->second, {}, main_fn->second->line);
      result.verdict = outputs_match(out_, test.expected_stdout) ? Verdict::Pass : Verdict::Fail;
    } catch (const Trap& t) {
      result.verdict = Verdict::Error;
      result.error = RuntimeError{t.kind, current_point(), t.line, t.message};
    }
    log_.outputs.push_back(out_);
    result.stdout_text = out_;
    result.log = std::move(log_);
    return result;
  }

 private:
  [[noreturn]] void trap(RuntimeErrorKind kind, int line, std::string message) {
    throw Trap{kind, line, std::move(message)};
  }

  std::string current_point() const { return point_stack_.empty() ? "" : point_stack_.back(); }

  void step(int line) {
    if (++steps_ > limits_.max_steps) trap(RuntimeErrorKind::StepLimit, line, "step limit exceeded");
  }

  // --- environment -------------------------------------------------------

  Frame& frame() { return frames_.back(); }

  Variable* lookup(const std::string& name) {
    auto& scopes = frame().scopes;
    for (auto scope = scopes.rbegin(); scope != scopes.rend(); ++scope)
      for (auto it = scope->vars.rbegin(); it != scope->vars.rend(); ++it)
        if (it->first == name) return &it->second;
    return nullptr;
  }

  Variable& require(const Node& ref) {
    Variable* var = lookup(*ref.identifier);
    if (!var) trap(RuntimeErrorKind::InvalidProgram, ref.line, "undeclared identifier '" + *ref.identifier + "'");
    return *var;
  }

  void declare(const std::string& name, Variable var) {
    frame().scopes.back().vars.emplace_back(name, std::move(var));
  }

  void snapshot(const ProgramPoint& point) {
    Snapshot snap;
    for (const auto& scope : frame().scopes)
      for (const auto& [name, var] : scope.vars) {
        if (var.is_array) {
          snap.erase(name);
          continue;
        }
        if (var.initialized[0]) {
          snap[name] = var.values[0];
        } else {
          snap.erase(name);  // shadowed by an uninitialised inner declaration
        }
      }
    log_.kinds[point.id] = point.kind;
    log_.samples[point.id].push_back(std::move(snap));
  }

  // --- values ----------------------------------------------------------------

  Number convert(const Number& value, bool to_double_type, int line) {
    if (to_double_type) return to_double(value);
    if (const auto* i = std::get_if<std::int64_t>(&value)) return *i;
    double d = std::get<double>(value);
    if (!(d > -9223372036854775808.0 && d < 9223372036854775808.0))
      trap(RuntimeErrorKind::IntegerOverflow, line, "real value out of integer range");
    return static_cast<std::int64_t>(d);
  }

  static bool truthy(const Number& v) { return to_double(v) != 0.0; }

  Number arithmetic(const std::string& op, const Number& a, const Number& b, int line) {
    bool real = std::holds_alternative<double>(a) || std::holds_alternative<double>(b);
    if (op == "==" || op == "!=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
      bool r;
      if (real) {
        double x = to_double(a), y = to_double(b);
        r = op == "==" ? x == y : op == "!=" ? x != y : op == "<" ? x < y : op == "<=" ? x <= y : op == ">" ? x > y : x >= y;
      } else {
        std::int64_t x = std::get<std::int64_t>(a), y = std::get<std::int64_t>(b);
        r = op == "==" ? x == y : op == "!=" ? x != y : op == "<" ? x < y : op == "<=" ? x <= y : op == ">" ? x > y : x >= y;
      }
      return std::int64_t{r ? 1 : 0};
    }
    if (real) {
      if (op == "%") trap(RuntimeErrorKind::InvalidProgram, line, "'%' applied to a real operand");
      double x = to_double(a), y = to_double(b);
      if (op == "+") return x + y;
      if (op == "-") return x - y;
      if (op == "*") return x * y;
      return x / y;
    }
    std::int64_t x = std::get<std::int64_t>(a), y = std::get<std::int64_t>(b), r = 0;
    bool overflow = false;
    if (op == "+") {
      overflow = __builtin_add_overflow(x, y, &r);
    } else if (op == "-") {
      overflow = __builtin_sub_overflow(x, y, &r);
    } else if (op == "*") {
      overflow = __builtin_mul_overflow(x, y, &r);
    } else {
      if (y == 0) trap(RuntimeErrorKind::DivByZero, line, "integer division by zero");
      if (x == std::numeric_limits<std::int64_t>::min() && y == -1) overflow = true;
      else r = op == "/" ? x / y : x % y;
    }
    if (overflow) trap(RuntimeErrorKind::IntegerOverflow, line, "integer overflow in '" + op + "'");
    return r;
  }

  // --- lvalues ---------------------------------------------------------------

  struct Slot {
    Variable* var;
    std::size_t index;
  };

  Slot slot(const Node& target) {
    if (target.kind == NodeKind::IdentifierRef) {
      Variable& var = require(target);
      if (var.is_array) trap(RuntimeErrorKind::InvalidProgram, target.line, "array used as scalar");
      return {&var, 0};
    }
    Variable& var = require(target.children[0]);
    if (!var.is_array) trap(RuntimeErrorKind::InvalidProgram, target.line, "subscript of a scalar");
    Number idx = eval(target.children[1]);
    if (!std::holds_alternative<std::int64_t>(idx))
      trap(RuntimeErrorKind::InvalidProgram, target.line, "array subscript is not an integer");
    std::int64_t i = std::get<std::int64_t>(idx);
    if (i < 0 || static_cast<std::size_t>(i) >= var.values.size())
      trap(RuntimeErrorKind::ArrayOutOfBounds, target.line,
           "index " + std::to_string(i) + " outside array of " + std::to_string(var.values.size()));
    return {&var, static_cast<std::size_t>(i)};
  }

  Number read(const Slot& s, const Node& at) {
    if (!s.var->initialized[s.index])
      trap(RuntimeErrorKind::UninitializedRead, at.line, "read of uninitialised variable");
    return s.var->values[s.index];
  }

  void write(const Slot& s, const Number& value, int line) {
    s.var->values[s.index] = convert(value, s.var->is_double, line);
    s.var->initialized[s.index] = 1;
  }

  // --- expressions -----------------------------------------------------------

  Number eval(const Node& expr) {
    switch (expr.kind) {
      case NodeKind::Literal:
        if (const auto* i = std::get_if<std::int64_t>(&*expr.literal)) return *i;
        return std::get<double>(*expr.literal);
      case NodeKind::IdentifierRef:
      case NodeKind::ArrayIndex: {
        Slot s = slot(expr);
        return read(s, expr);
      }
      case NodeKind::UnaryOp: {
        Number v = eval(expr.children[0]);
        if (*expr.op == "!") return std::int64_t{truthy(v) ? 0 : 1};
        if (const auto* i = std::get_if<std::int64_t>(&v)) {
          if (*i == std::numeric_limits<std::int64_t>::min())
            trap(RuntimeErrorKind::IntegerOverflow, expr.line, "integer overflow in negation");
          return -*i;
        }
        return -std::get<double>(v);
      }
      case NodeKind::BinaryOp: {
        const std::string& op = *expr.op;
        if (op == "&&") {
          if (!truthy(eval(expr.children[0]))) return std::int64_t{0};
          return std::int64_t{truthy(eval(expr.children[1])) ? 1 : 0};
        }
        if (op == "||") {
          if (truthy(eval(expr.children[0]))) return std::int64_t{1};
          return std::int64_t{truthy(eval(expr.children[1])) ? 1 : 0};
        }
        Number a = eval(expr.children[0]);
        Number b = eval(expr.children[1]);
        return arithmetic(op, a, b, expr.line);
      }
      case NodeKind::Call: {
        auto value = call_expression(expr);
        if (!value) trap(RuntimeErrorKind::UninitializedRead, expr.line, "use of missing return value");
        return *value;
      }
      default:
        trap(RuntimeErrorKind::InvalidProgram, expr.line, "not an expression");
    }
  }

  std::optional<Number> call_expression(const Node& expr) {
    auto it = functions_.find(*expr.identifier);
    if (it == functions_.end())
      trap(RuntimeErrorKind::InvalidProgram, expr.line, "call to undefined function '" + *expr.identifier + "'");
    std::vector<Number> args;
    for (const auto& arg : expr.children) args.push_back(eval(arg));
    return call(*it->second, std::move(args), expr.line);
  }

  std::optional<Number> call(const Node& fn, std::vector<Number> args, int line) {
    std::size_t params = fn.children.size() - 1;
    if (args.size() != params)
      trap(RuntimeErrorKind::InvalidProgram, line, "wrong number of arguments to '" + *fn.identifier + "'");
    if (frames_.size() >= kMaxCallDepth) trap(RuntimeErrorKind::StepLimit, line, "call depth limit exceeded");
    step(line);
    frames_.emplace_back();
    frame().function = &fn;
    frame().scopes.emplace_back();
    for (std::size_t i = 0; i < params; ++i) {
      const Node& p = fn.children[i];
      Variable var;
      var.is_double = *p.type_name != "int";
      var.values = {convert(args[i], var.is_double, line)};
      var.initialized = {1};
      declare(*p.identifier, std::move(var));
    }
    const ProgramPoint& entry = points_.entry.at(&fn);
    point_stack_.push_back(entry.id);
    snapshot(entry);

    const Node& body = fn.children.back();
    frame().scopes.emplace_back();
    for (const auto& stmt : body.children) {
      exec(stmt);
      if (frame().returned) break;
    }
    if (!frame().returned) {
      if (*fn.identifier == "main" && *fn.type_name == "int") frame().return_value = std::int64_t{0};
      exit_snapshot();
    }
    std::optional<Number> result = frame().return_value;
    frames_.pop_back();
    point_stack_.pop_back();
    return result;
  }

  void exit_snapshot() {
    const Node& fn = *frame().function;
    const ProgramPoint& point = points_.exit.at(&fn);
    snapshot(point);
    if (frame().return_value) log_.samples[point.id].back()["return"] = *frame().return_value;
  }

  // --- statements ------------------------------------------------------------

  void run_block(const Node& block) {
    frame().scopes.emplace_back();
    for (const auto& stmt : block.children) {
      exec(stmt);
      if (frame().returned) break;
    }
    if (!frames_.empty() && !frame().scopes.empty()) frame().scopes.pop_back();
  }

  // A block that opens a program point: snapshot on entry, then run.
  void run_point_block(const Node& block) {
    const ProgramPoint& point = points_.blocks.at(&block);
    point_stack_.push_back(point.id);
    snapshot(point);
    run_block(block);
    point_stack_.pop_back();
  }

  void exec(const Node& stmt) {
    step(stmt.line);
    switch (stmt.kind) {
      case NodeKind::Decl: {
        Variable var;
        var.is_double = *stmt.type_name != "int";
        var.values = {std::int64_t{0}};
        var.initialized = {0};
        if (!stmt.children.empty()) {
          var.values[0] = convert(eval(stmt.children[0]), var.is_double, stmt.line);
          var.initialized[0] = 1;
        }
        declare(*stmt.identifier, std::move(var));
        return;
      }
      case NodeKind::ArrayDecl: {
        Variable var;
        var.is_double = *stmt.type_name != "int";
        var.is_array = true;
        std::size_t n = static_cast<std::size_t>(std::get<std::int64_t>(*stmt.children[0].literal));
        var.values.assign(n, std::int64_t{0});
        var.initialized.assign(n, 0);
        if (stmt.children.size() > 1) {
          // C zero-fills the remainder of a partially initialised array.
          for (std::size_t i = 0; i < n; ++i) {
            var.values[i] = i + 1 < stmt.children.size()
                                ? convert(eval(stmt.children[i + 1]), var.is_double, stmt.line)
                                : convert(std::int64_t{0}, var.is_double, stmt.line);
            var.initialized[i] = 1;
          }
        }
        declare(*stmt.identifier, std::move(var));
        return;
      }
      case NodeKind::Assign: {
        Slot target = slot(stmt.children[0]);
        const std::string& op = *stmt.op;
        if (op == "=") {
          write(target, eval(stmt.children[1]), stmt.line);
          return;
        }
        Number current = read(target, stmt.children[0]);
        Number rhs = eval(stmt.children[1]);
        write(target, arithmetic(op.substr(0, 1), current, rhs, stmt.line), stmt.line);
        return;
      }
      case NodeKind::UnaryOp: {
        Slot target = slot(stmt.children[0]);
        Number current = read(target, stmt.children[0]);
        write(target, arithmetic(*stmt.op == "++" ? "+" : "-", current, std::int64_t{1}, stmt.line), stmt.line);
        return;
      }
      case NodeKind::Call:
        call_expression(stmt);
        return;
      case NodeKind::Return: {
        const Node& fn = *frame().function;
        if (!stmt.children.empty()) {
          Number value = eval(stmt.children[0]);
          if (*fn.type_name == "void")
            trap(RuntimeErrorKind::InvalidProgram, stmt.line, "value returned from void function");
          frame().return_value = convert(value, *fn.type_name != "int", stmt.line);
        }
        frame().returned = true;
        exit_snapshot();
        return;
      }
      case NodeKind::Scanf:
        scan(stmt);
        return;
      case NodeKind::Printf:
        print(stmt);
        return;
      case NodeKind::Block:
        run_point_block(stmt);
        return;
      case NodeKind::If:
        if (truthy(eval(stmt.children[0]))) {
          run_point_block(stmt.children[1]);
        } else if (stmt.children.size() > 2) {
          run_point_block(stmt.children[2]);
        }
        return;
      case NodeKind::While: {
        std::int64_t iterations = 0;
        while (truthy(eval(stmt.children[0]))) {
          loop_tick(iterations, stmt.line);
          run_point_block(stmt.children[1]);
          if (frame().returned) return;
        }
        return;
      }
      case NodeKind::For: {
        frame().scopes.emplace_back();
        if (!is_empty_clause(stmt.children[0])) exec(stmt.children[0]);
        std::int64_t iterations = 0;
        while (is_empty_clause(stmt.children[1]) || truthy(eval(stmt.children[1]))) {
          loop_tick(iterations, stmt.line);
          run_point_block(stmt.children[3]);
          if (frame().returned) break;
          if (!is_empty_clause(stmt.children[2])) exec(stmt.children[2]);
        }
        frame().scopes.pop_back();
        return;
      }
      default:
        trap(RuntimeErrorKind::InvalidProgram, stmt.line, "not a statement");
    }
  }

  void loop_tick(std::int64_t& iterations, int line) {
    if (++iterations > limits_.max_loop_iters) trap(RuntimeErrorKind::StepLimit, line, "loop iteration limit exceeded");
    step(line);
  }

  // --- I/O -------------------------------------------------------------------

  void scan(const Node& stmt) {
    auto pieces = parse_scanf_format(std::get<std::string>(*stmt.literal));
    std::size_t target = 0;
    for (const auto& piece : pieces) {
      if (!piece.conversion) continue;
      while (in_pos_ < input_.size() && std::isspace(static_cast<unsigned char>(input_[in_pos_]))) ++in_pos_;
      if (in_pos_ >= input_.size()) trap(RuntimeErrorKind::ScanfExhausted, stmt.line, "input exhausted");
      const char* begin = input_.c_str() + in_pos_;
      char* end = nullptr;
      Number value;
      if (piece.conv == 'd') {
        errno = 0;
        long long v = std::strtoll(begin, &end, 10);
        if (end == begin) trap(RuntimeErrorKind::ScanfExhausted, stmt.line, "input does not match %d");
        if (errno == ERANGE) trap(RuntimeErrorKind::IntegerOverflow, stmt.line, "input integer out of range");
        value = static_cast<std::int64_t>(v);
      } else {
        double v = std::strtod(begin, &end);
        if (end == begin) trap(RuntimeErrorKind::ScanfExhausted, stmt.line, "input does not match %f");
        value = v;
      }
      in_pos_ += static_cast<std::size_t>(end - begin);
      write(slot(stmt.children[target++]), value, stmt.line);
    }
  }

  void print(const Node& stmt) {
    auto pieces = parse_printf_format(std::get<std::string>(*stmt.literal));
    std::size_t arg = 0;
    for (const auto& piece : pieces) {
      if (!piece.conversion) {
        out_ += piece.text;
        continue;
      }
      Number value = eval(stmt.children[arg++]);
      std::string spec = "%" + piece.flags;
      if (piece.width) spec += std::to_string(*piece.width);
      if (piece.precision) spec += "." + std::to_string(*piece.precision);
      char buf[512];
      if (piece.conv == 'd') {
        std::int64_t v = std::get<std::int64_t>(convert(value, false, stmt.line));
        spec += PRId64;
        std::snprintf(buf, sizeof buf, spec.c_str(), v);
      } else {
        spec += "f";
        std::snprintf(buf, sizeof buf, spec.c_str(), to_double(value));
      }
      out_ += buf;
    }
  }

  const SyntaxTree& tree_;
  PointTable points_;
  std::unordered_map<std::string, const Node*> functions_;
  std::string input_;
  std::size_t in_pos_ = 0;
  Limits limits_;
  std::int64_t steps_ = 0;
  std::vector<Frame> frames_;
  std::vector<std::string> point_stack_;
  std::string out_;
  TraceLog log_;
};

}  // namespace

Execution execute(const SyntaxTree& tree, const TestCase& test, const Limits& limits) {
  Interpreter interp(tree, test, limits);
  return interp.run(test);
}

SuiteRun run_suite(const SyntaxTree& tree, std::span<const TestCase> tests, const Limits& limits) {
  SuiteRun run;
  for (const auto& test : tests) {
    Execution exec = execute(tree, test, limits);
    run.log.append(exec.log);
    run.verdicts.push_back(exec.verdict);
    run.errors.push_back(std::move(exec.error));
  }
  return run;
}

std::vector<TestCase> load_tests(const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw Error("test directory not found: " + dir.string());
  static const std::regex pattern(R"(t(\d+)\.in)");
  std::vector<std::pair<long, fs::path>> inputs;
  for (const auto& entry : fs::directory_iterator(dir)) {
    std::smatch m;
    std::string name = entry.path().filename().string();
    if (std::regex_match(name, m, pattern)) inputs.emplace_back(std::stol(m[1]), entry.path());
  }
  std::sort(inputs.begin(), inputs.end());
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  std::vector<TestCase> tests;
  for (const auto& [index, in_path] : inputs) {
    fs::path out_path = in_path;
    out_path.replace_extension(".out");
    if (!fs::exists(out_path)) throw Error("missing expected output " + out_path.string());
    tests.push_back({slurp(in_path), slurp(out_path)});
  }
  return tests;
}

}  // namespace invclust
