#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "invclust/syntax_tree.hpp"

namespace invclust {

using Number = std::variant<std::int64_t, double>;

double to_double(const Number& n);
std::string format_number(const Number& n);  // decimal ints, shortest round-trip reals

enum class PointKind { FunctionEntry, FunctionExit, LoopBody, ThenBlock, ElseBlock, PlainBlock };

std::string_view point_kind_name(PointKind kind);

// Ids are paths of construct ordinals, e.g. "main@entry", "main/loop1",
// "main/loop1/if2/then". They depend only on the tree shape, so a while loop
// and the for loop it was converted to share an id.
struct ProgramPoint {
  std::string id;
  PointKind kind = PointKind::PlainBlock;

  bool operator==(const ProgramPoint&) const = default;
};

// Statically enumerates every program point in text order.
std::vector<ProgramPoint> program_points(const SyntaxTree& tree);

// Variable name -> value. The pseudo-variable "return" holds the returned
// value in function-exit snapshots.
using Snapshot = std::map<std::string, Number>;

struct TraceLog {
  std::map<std::string, PointKind> kinds;
  std::map<std::string, std::vector<Snapshot>> samples;
  std::vector<std::string> outputs;  // captured stdout, one per test

  void append(const TraceLog& other);
  std::size_t sample_count(const std::string& point) const;
};

struct TestCase {
  std::string stdin_text;
  std::string expected_stdout;
};

struct Limits {
  std::int64_t max_steps = 10'000'000;
  std::int64_t max_loop_iters = 1'000'000;
};

enum class Verdict { Pass, Fail, Error };
std::string_view verdict_name(Verdict v);

enum class RuntimeErrorKind {
  DivByZero,
  ArrayOutOfBounds,
  ScanfExhausted,
  IntegerOverflow,
  StepLimit,
  UninitializedRead,
  InvalidProgram,  // missing main, unknown function, arity mismatch, ...
};
std::string_view runtime_error_name(RuntimeErrorKind kind);

struct RuntimeError {
  RuntimeErrorKind kind = RuntimeErrorKind::InvalidProgram;
  std::string point;  // program point active when the error was raised
  int line = 0;
  std::string message;
};

struct Execution {
  TraceLog log;
  std::string stdout_text;
  Verdict verdict = Verdict::Error;
  std::optional<RuntimeError> error;
};

// Comparison used for verdicts: trailing whitespace on each line and trailing
// blank lines are ignored.
bool outputs_match(std::string_view actual, std::string_view expected);

Execution execute(const SyntaxTree& tree, const TestCase& test, const Limits& limits = {});

struct SuiteRun {
  TraceLog log;  // per-test logs concatenated in test order
  std::vector<Verdict> verdicts;
  std::vector<std::optional<RuntimeError>> errors;

  bool all_pass() const;
  bool any_error() const;
};

SuiteRun run_suite(const SyntaxTree& tree, std::span<const TestCase> tests, const Limits& limits = {});

// Reads t<i>.in / t<i>.out pairs ordered by i.
std::vector<TestCase> load_tests(const std::filesystem::path& dir);

}  // namespace invclust
