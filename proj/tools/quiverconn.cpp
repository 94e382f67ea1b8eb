// quiverconn: quiver data of irregular connections on the Riemann sphere.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "quiverconn/errors.hpp"
#include "quiverconn/report.hpp"
#include "quiverconn/spec_file.hpp"
#include "quiverconn/verify.hpp"

namespace {

enum Exit { kOk = 0, kParse = 2, kSemantic = 3, kResource = 4, kVerification = 5 };

struct Options {
  std::string spec;
  std::string word;
  std::uint64_t seed = 1;
  int trials = 5;
  bool json = false;
  std::string out;
};

int emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return kOk;
  }
  std::ofstream file(opt.out);
  if (!file) {
    std::cerr << "error: cannot write '" << opt.out << "'\n";
    return kSemantic;
  }
  file << text;
  return kOk;
}

std::string dumped(const qc::Json& j) { return j.dump(2) + "\n"; }

int run(const std::string& command, const Options& opt) {
  const qc::SpecFile spec = qc::load_spec(opt.spec);
  if (command == "analyze") {
    const auto r = qc::analyze_report(spec);
    return emit(opt, opt.json ? dumped(r) : qc::render_analyze(r));
  }
  if (command == "readings") {
    const auto r = qc::readings_report(spec);
    return emit(opt, opt.json ? dumped(r) : qc::render_readings(r));
  }
  if (command == "reflect") {
    const auto r = qc::reflect_report(spec, opt.word);
    return emit(opt, opt.json ? dumped(r) : qc::render_reflect(r));
  }
  if (command == "dot") return emit(opt, qc::dot_report(spec));
  const auto summary = qc::run_verification(spec, opt.seed, opt.trials);
  const int written = emit(opt, opt.json ? dumped(summary.to_json()) : summary.to_text());
  if (written != kOk) return written;
  return summary.all_passed() ? kOk : kVerification;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quiver data, readings, reflections and existence checks for meromorphic connections"};
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opt.spec, "Specification file (JSON)")->required();
    sub->add_flag("--json", opt.json, "Machine-readable output");
    sub->add_option("--out", opt.out, "Write output to this file");
  };
  for (const char* name : {"analyze", "readings", "dot"}) add_common(app.add_subcommand(name));
  auto* reflect = app.add_subcommand("reflect", "Apply a Weyl word (rightmost generator first)");
  add_common(reflect);
  reflect->add_option("--word", opt.word, "Node ids separated by spaces");
  auto* verify = app.add_subcommand("verify", "Run the numeric invariant suite");
  add_common(verify);
  verify->add_option("--seed", opt.seed, "Random seed");
  verify->add_option("--trials", opt.trials, "Number of random instances")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    return run(command, opt);
  } catch (const qc::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const qc::ResourceLimitExceeded& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return kResource;
  } catch (const qc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  }
}
