// Thin process wrapper: stdin + argv in, stdout/stderr + exit code out.
// All behavior lives in the library so tests can drive the same code path
// in-process.

#include <monorel/cli.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);

  // Read stdin only when some subcommand may consume it ('-' input); reading
  // unconditionally would hang interactive runs of `monorel gallery`.
  std::string stdin_text;
  bool wants_stdin = false;
  bool next_is_input_value = false;
  for (const std::string& a : args) {
    if (next_is_input_value) {
      wants_stdin = a == "-";
      next_is_input_value = false;
      continue;
    }
    if (a == "--input") {
      next_is_input_value = true;
      wants_stdin = false;
    } else if (a.rfind("--input=", 0) == 0) {
      wants_stdin = a == "--input=-";
    } else if (a == "classify" || a == "fitz" || a == "modulus") {
      wants_stdin = true;  // default --input is '-'
    }
  }
  if (wants_stdin) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    stdin_text = buf.str();
  }

  std::string out, err;
  const int code = monorel::cli::run_cli(args, stdin_text, out, err);
  std::cout << out;
  std::cerr << err;
  return code;
}
