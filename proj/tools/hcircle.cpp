#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hcircle/commands.hpp"

namespace {

struct RawFlags {
  std::string q;
  std::vector<long long> two_n;
  long long max_two_n = 0;
  double x = 0, y = 0, z = 0, s = 0;
  long long h = 0;
  int k = 0;
  std::string format;
  std::string out;
  unsigned threads = 0;
  std::string fault;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice points on hyperbolic circles around Heegner points"};
  app.require_subcommand(1);
  RawFlags raw;

  struct Sub {
    const char* name;
    const char* help;
  };
  const Sub subs[] = {
      {"verify", "Run the cross-module identity suite"},
      {"circle", "List the matrices and lattice points on given circles"},
      {"survey", "Per-radius statistics for all radii up to --x"},
      {"count", "Hyperbolic circle-problem sum against 6x"},
      {"bnumbers", "Shifted B-number counts and the sifted progression"},
      {"plot", "SVG of the circles in the half-plane and the disc"},
  };
  std::map<std::string, CLI::App*> apps;
  for (const auto& sub : subs) {
    CLI::App* c = app.add_subcommand(sub.name, sub.help);
    // -h would collide with the shift flag --h
    c->set_help_flag("--help", "Print this help message and exit");
    c->add_option("--q", raw.q, "3|4|7|8|11|19|43|67|163|all")->required();
    c->add_option("--two-n", raw.two_n, "Radii as 2n, comma separated")->delimiter(',');
    c->add_option("--max-two-n", raw.max_two_n, "Largest 2n scanned by verify");
    c->add_option("--x", raw.x, "Size parameter");
    c->add_option("--h", raw.h, "Shift for bnumbers");
    c->add_option("--y", raw.y, "Progression length for bnumbers");
    c->add_option("--z", raw.z, "Sieve level for bnumbers");
    c->add_option("--s", raw.s, "Sieve exponent, z = y^(1/s)");
    c->add_option("--k", raw.k, "Erdos-Turan terms for circle");
    c->add_option("--format", raw.format, "csv, json or svg");
    c->add_option("--out", raw.out, "Output file (default standard output)");
    c->add_option("--threads", raw.threads, "Worker threads (0 = all cores)");
    c->add_option("--inject-fault", raw.fault, "Negative control for verify: c4");
    apps[sub.name] = c;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  std::string name;
  for (const auto& [n, c] : apps)
    if (c->parsed()) name = n;
  CLI::App* c = apps[name];

  hcircle::CommandArgs args;
  try {
    args.qs = hcircle::parse_q_selector(raw.q);
    if (!raw.format.empty()) args.format = hcircle::parse_format(raw.format);
  } catch (const hcircle::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  for (long long t : raw.two_n) args.two_n.push_back(t);
  if (c->count("--max-two-n")) args.max_two_n = raw.max_two_n;
  if (c->count("--x")) args.x = raw.x;
  if (c->count("--h")) args.h = raw.h;
  if (c->count("--y")) args.y = raw.y;
  if (c->count("--z")) args.z = raw.z;
  if (c->count("--s")) args.s = raw.s;
  if (c->count("--k")) args.k = raw.k;
  args.threads = raw.threads;
  args.inject_fault = raw.fault;

  // Buffer so that a usage error never leaves a half-written file behind.
  std::ostringstream buffer;
  const hcircle::CommandResult result = hcircle::run_command(name, args, buffer, std::cerr);
  if (result.exit_code == 2) return 2;
  if (raw.out.empty()) {
    std::cout << buffer.str();
    std::cout.flush();
  } else {
    std::ofstream f(raw.out, std::ios::binary);
    if (!f) {
      std::cerr << "error: cannot open " << raw.out << '\n';
      return 2;
    }
    f << buffer.str();
  }
  return result.exit_code;
}
