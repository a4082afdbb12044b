#include "program_gen.hpp"

#include <algorithm>
#include <set>

namespace testsupport {

int uniform_int(std::mt19937_64& gen, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(gen);
}

namespace {

bool chance(std::mt19937_64& gen, int percent) { return uniform_int(gen, 0, 99) < percent; }

struct Builder {
  std::mt19937_64& gen;
  int vars;
  std::vector<bool> is_double;
  std::vector<int> accumulators;
  std::vector<std::string> lines;

  std::string v(int i) const { return "{v" + std::to_string(i) + "}"; }

  std::string pick_operand() {
    int choice = uniform_int(gen, 0, vars);
    if (choice == vars) return std::to_string(uniform_int(gen, 0, 3));
    return v(choice);
  }

  void emit(int depth, const std::string& line) { lines.push_back(std::string(2 * depth, ' ') + line); }

  void simple_statement(int depth) {
    int target = accumulators[uniform_int(gen, 0, static_cast<int>(accumulators.size()) - 1)];
    switch (uniform_int(gen, 0, 3)) {
      case 0: emit(depth, v(target) + " = " + v(target) + " + " + pick_operand() + ";"); break;
      case 1: emit(depth, v(target) + " = " + pick_operand() + " - " + pick_operand() + ";"); break;
      case 2: emit(depth, v(target) + " = " + v(target) + " * 2;"); break;
      default: emit(depth, v(target) + "++;"); break;
    }
  }

  void body(int depth, int loops_left, int counter) {
    int stmts = uniform_int(gen, 1, 2);
    for (int s = 0; s < stmts; ++s) {
      if (chance(gen, 25)) {
        emit(depth, "if (" + pick_operand() + " < " + pick_operand() + ") {");
        simple_statement(depth + 1);
        if (chance(gen, 50)) {
          emit(depth, "} else {");
          simple_statement(depth + 1);
        }
        emit(depth, "}");
      } else {
        simple_statement(depth);
      }
    }
    if (loops_left > 0 && counter + 1 < vars && !is_double[counter + 1] && accumulators.size() > 1)
      loop(depth, loops_left - 1, counter + 1);
  }

  void loop(int depth, int loops_left, int counter) {
    // An inner counter stops being an accumulator.
    std::erase(accumulators, counter);
    std::string c = v(counter);
    bool down = chance(gen, 30);
    std::string init = down ? v(0) : "0";
    std::string cond = down ? c + " > 0" : c + " < " + v(0);
    std::string step = down ? c + "--" : c + "++";
    if (chance(gen, 50)) {
      emit(depth, "for (" + c + " = " + init + "; " + cond + "; " + step + ") {");
      body(depth + 1, loops_left, counter);
      emit(depth, "}");
    } else {
      emit(depth, c + " = " + init + ";");
      emit(depth, "while (" + cond + ") {");
      body(depth + 1, loops_left, counter);
      emit(depth + 1, step + ";");
      emit(depth, "}");
    }
  }
};

}  // namespace

ProgramTemplate random_program(std::mt19937_64& gen) {
  Builder b{gen, uniform_int(gen, 3, 4), {}, {}, {}};
  b.is_double.assign(b.vars, false);
  for (int i = 2; i < b.vars; ++i) b.is_double[i] = chance(gen, 20);
  for (int i = 2; i < b.vars; ++i) b.accumulators.push_back(i);

  std::vector<int> order(b.vars);
  for (int i = 0; i < b.vars; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), gen);
  for (int i : order) {
    std::string type = b.is_double[i] ? "double" : "int";
    std::string init;
    if (i >= 1) init = b.is_double[i] ? " = " + std::to_string(uniform_int(gen, -2, 4)) + ".5"
                                      : " = " + std::to_string(uniform_int(gen, -3, 5));
    b.emit(1, type + " " + b.v(i) + init + ";");
  }
  b.emit(1, "scanf(\"%d\", &" + b.v(0) + ");");
  if (chance(gen, 30)) {
    b.emit(1, "if (" + b.v(0) + " > 2) {");
    b.simple_statement(2);
    b.emit(1, "} else {");
    b.simple_statement(2);
    b.emit(1, "}");
  }
  int loops = uniform_int(gen, 1, 2);
  if (loops == 2 && chance(gen, 50)) {
    b.loop(1, 1, 1);  // nested when a spare int accumulator exists
  } else {
    for (int l = 0; l < loops; ++l) b.loop(1, 0, 1);
  }
  for (int i = 2; i < b.vars; ++i)
    b.emit(1, std::string("printf(\"") + (b.is_double[i] ? "%f" : "%d") + "\\n\", " + b.v(i) + ");");

  std::string text = "int main() {\n";
  for (const auto& line : b.lines) text += line + "\n";
  text += "  return 0;\n}\n";
  return {text, b.vars};
}

std::string instantiate(const ProgramTemplate& tmpl, const std::vector<std::string>& names) {
  std::string text = tmpl.text;
  for (int i = 0; i < tmpl.vars; ++i) {
    std::string key = "{v" + std::to_string(i) + "}";
    for (std::size_t pos; (pos = text.find(key)) != std::string::npos;) text.replace(pos, key.size(), names.at(i));
  }
  return text;
}

std::vector<std::string> random_names(std::mt19937_64& gen, int count) {
  static const std::set<std::string> reserved = {
      "int",    "double", "float",  "void",     "if",      "else",   "while",    "for",    "return",
      "struct", "union",  "enum",   "switch",   "case",    "default", "do",      "goto",   "break",
      "continue", "typedef", "char", "long",    "short",   "unsigned", "signed", "const",  "static",
      "extern", "sizeof", "volatile", "register", "auto",  "main",   "scanf",    "printf"};
  std::set<std::string> used;
  std::vector<std::string> names;
  while (static_cast<int>(names.size()) < count) {
    std::string name(1, static_cast<char>('a' + uniform_int(gen, 0, 25)));
    int extra = uniform_int(gen, 0, 5);
    for (int i = 0; i < extra; ++i) {
      int c = uniform_int(gen, 0, 36);
      name += c < 26 ? static_cast<char>('a' + c) : c < 36 ? static_cast<char>('0' + c - 26) : '_';
    }
    if (reserved.count(name) || used.count(name)) continue;
    if (name.rfind("int", 0) == 0 || name.rfind("float", 0) == 0) continue;
    used.insert(name);
    names.push_back(name);
  }
  return names;
}

std::vector<invclust::TestCase> random_suite(std::mt19937_64& gen, int tests) {
  std::vector<invclust::TestCase> suite;
  for (int t = 0; t < tests; ++t) suite.push_back({std::to_string(uniform_int(gen, 0, 6)) + "\n", ""});
  return suite;
}

}  // namespace testsupport
