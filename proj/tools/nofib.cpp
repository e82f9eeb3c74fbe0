// Command-line front end. Usage:
//
//   nofib <group> <command> [<document>] [args...] [--format=text|structured]
//         [--budget=N] [--seed=N]
//
// The document is a toolkit text file ('-' reads stdin); `ob binding-bound`
// takes no document. Exit codes: 0 success, 1 validation failure, 2 parse
// error.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nofib/nofib.hpp"

namespace {

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) {
    // NOFIB_FIXTURES overrides the fixture root for relative paths
    const char* root = std::getenv("NOFIB_FIXTURES");
    if (root && !path.empty() && path[0] != '/')
      in = std::ifstream(std::string(root) + "/" + path);
    if (!in) throw nofib::error("cannot open document '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool takes_document(const std::string& group, const std::string& sub) {
  return !(group == "ob" && sub == "binding-bound");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nonorientable Lefschetz fibration toolkit"};
  app.allow_extras(false);

  nofib::RunOptions opts;
  std::vector<std::string> positionals;
  app.add_option("--format", opts.format, "output format: text or structured")
      ->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--budget", opts.budget, "Tietze simplification move budget");
  app.add_option("--seed", opts.seed, "seed for randomized test tooling");
  app.add_option("args", positionals, "command, document and arguments");

  CLI11_PARSE(app, argc, argv);

  if (positionals.size() < 2) {
    std::cerr << "usage: nofib <ob|lf|tri> <command> [<document>] [args...]\n";
    return 1;
  }

  std::string doc_text;
  std::vector<std::string> args{positionals[0], positionals[1]};
  size_t rest = 2;
  if (takes_document(positionals[0], positionals[1])) {
    if (positionals.size() < 3) {
      std::cerr << "error: command needs a document path\n";
      return 1;
    }
    try {
      doc_text = read_input(positionals[2]);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;
    }
    rest = 3;
  }
  for (size_t i = rest; i < positionals.size(); ++i)
    args.push_back(positionals[i]);

  nofib::RunResult res = nofib::run_command(args, doc_text, opts);
  if (res.exit_code == 0) {
    std::cout << res.out;
  } else {
    std::cerr << res.out;
  }
  return res.exit_code;
}
