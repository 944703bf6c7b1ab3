#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "qfc/builders.hpp"
#include "qfc/codec.hpp"
#include "qfc/demos.hpp"
#include "qfc/eval.hpp"
#include "qfc/oracle.hpp"

namespace {

constexpr int EXIT_PARSE = 2;
constexpr int EXIT_RUNTIME = 3;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qfc::state_format_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

qfc::TermPtr load_term(const std::string& path) { return qfc::parse_term(slurp(path)); }

qfc::State load_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw qfc::state_format_error("cannot open " + path);
  return qfc::read_state(in);
}

void save_state(const std::string& path, const qfc::State& s) {
  std::ofstream out(path);
  if (!out) throw qfc::state_format_error("cannot open " + path + " for writing");
  qfc::write_state(out, s);
}

int cmd_run(const std::string& term_file, const std::string& state_file,
            const std::string& out_file) {
  qfc::TermPtr term;
  qfc::State in;
  try {
    term = load_term(term_file);
    in = load_state(state_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_PARSE;
  }
  try {
    auto diag = qfc::validate(term);
    for (const auto& d : diag.items)
      if (d.severity == qfc::Severity::Error) {
        std::cerr << "invalid term: " << d.rule << " at " << d.path << ": " << d.message << "\n";
        return EXIT_RUNTIME;
      }
    qfc::State out = qfc::eval(term, in);
    save_state(out_file, out);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_RUNTIME;
  }
}

int cmd_check(const std::string& term_file, std::size_t n, double tol) {
  qfc::TermPtr term;
  try {
    term = load_term(term_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_PARSE;
  }
  auto diag = qfc::validate(term);
  for (const auto& d : diag.items)
    std::cout << (d.severity == qfc::Severity::Error ? "error" : "warning") << " [" << d.rule
              << "] " << (d.path.empty() ? "/" : d.path) << ": " << d.message << "\n";
  if (!diag.ok()) {
    std::cout << "validation failed\n";
    return 1;
  }
  if (!diag.measurement_free) {
    std::cout << "not measurement-free; unitarity skipped\n";
    return 0;
  }
  try {
    auto m = qfc::to_matrix(term, n);
    auto chk = qfc::check_unitary(m, tol);
    std::cout << "n=" << n << " max |M^dag M - I| = " << chk.max_deviation << " -> "
              << (chk.pass ? "pass" : "FAIL") << "\n";
    return chk.pass ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_RUNTIME;
  }
}

int cmd_invert(const std::string& term_file, const std::string& out_file) {
  qfc::TermPtr term;
  try {
    term = load_term(term_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_PARSE;
  }
  try {
    qfc::TermPtr inv = qfc::invert(term);
    std::ofstream out(out_file);
    if (!out) throw qfc::term_error("cannot open " + out_file + " for writing");
    out << qfc::render(inv) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_RUNTIME;
  }
}

int cmd_sample(const std::string& term_file, const std::string& state_file, std::uint64_t seed,
               std::size_t shots) {
  qfc::TermPtr term;
  qfc::State in;
  try {
    term = load_term(term_file);
    in = load_state(state_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_PARSE;
  }
  try {
    qfc::State out = qfc::eval(term, in);
    std::map<std::string, std::size_t> freq;
    for (std::size_t i = 0; i < shots; ++i) {
      std::string draw = qfc::sample(out, seed + i);
      std::cout << draw << "\n";
      ++freq[draw];
    }
    std::cout << "-- frequencies over " << shots << " shots --\n";
    for (const auto& [bits, count] : freq)
      std::cout << bits << " " << count << " (" << (double)count / (double)shots << ")\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_RUNTIME;
  }
}

int cmd_complexity(const std::string& term_file) {
  try {
    std::cout << qfc::complexity(load_term(term_file)) << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_PARSE;
  }
}

int report(const char* name, const qfc::CheckResult& r) {
  std::cout << name << ": " << (r.cases - r.failures) << "/" << r.cases
            << " pass, max deviation " << r.max_deviation << "\n";
  return r.pass() ? 0 : 1;
}

int cmd_demo(const std::string& which, std::size_t k, std::size_t n, double eps, bool quiet) {
  auto sink = [&](const std::string& line) { std::cout << "  " << line << "\n"; };
  qfc::RowSink row = quiet ? qfc::RowSink(nullptr) : qfc::RowSink(sink);
  try {
    if (which == "epr") {
      auto term = qfc::t_compo(qfc::t_branch(qfc::t_ident(), qfc::t_not()),
                               qfc::t_rot(qfc::Angle::pi_frac(1, 4)));
      qfc::State out = qfc::eval(term, qfc::State::basis("00"));
      std::ostringstream ss;
      qfc::write_state(ss, out);
      std::cout << ss.str();
      return report("epr", qfc::check_epr());
    }
    // the exhaustive case sweeps only list failing rows; majority prints its
    // per-input probability table
    if (which == "binsearch")
      return report("binsearch", qfc::check_bin_search(k, 1e-9, nullptr));
    if (which == "parity") return report("parity", qfc::check_parity(n, 1e-9, nullptr));
    if (which == "majority") return report("majority", qfc::check_majority(k, eps, 1e-9, row));
    std::cerr << "unknown demo '" << which << "'\n";
    return EXIT_PARSE;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return EXIT_RUNTIME;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum function calculus"};
  app.require_subcommand(1);

  std::string term_file, state_file, out_file, demo_name;
  std::size_t n = 2, shots = 1, k = 2;
  double tol = 1e-9, eps = 0.5;
  std::uint64_t seed = 0;
  bool verbose = false;

  auto* run = app.add_subcommand("run", "evaluate a term on a state");
  run->add_option("term", term_file)->required();
  run->add_option("state", state_file)->required();
  run->add_option("out", out_file)->required();

  auto* check = app.add_subcommand("check", "validate a term and test unitarity");
  check->add_option("term", term_file)->required();
  check->add_option("--n", n, "input length for the matrix")->check(CLI::Range(0, 12));
  check->add_option("--tol", tol);

  auto* inv = app.add_subcommand("invert", "write the inverse term");
  inv->add_option("term", term_file)->required();
  inv->add_option("out", out_file)->required();

  auto* smp = app.add_subcommand("sample", "sample measurement outcomes");
  smp->add_option("term", term_file)->required();
  smp->add_option("state", state_file)->required();
  smp->add_option("--seed", seed);
  smp->add_option("--shots", shots);

  auto* demo = app.add_subcommand("demo", "run a built-in algorithm contract check");
  demo->add_option("name", demo_name, "epr | binsearch | parity | majority")->required();
  demo->add_option("--k", k)->check(CLI::Range(1, 4));
  demo->add_option("--n", n)->check(CLI::Range(1, 14));
  demo->add_option("--eps", eps)->check(CLI::Range(0.0, 0.7499));
  demo->add_flag("--quiet", verbose, "suppress the per-case table");

  auto* comp = app.add_subcommand("complexity", "print the construction-history size");
  comp->add_option("term", term_file)->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(term_file, state_file, out_file);
  if (check->parsed()) return cmd_check(term_file, n, tol);
  if (inv->parsed()) return cmd_invert(term_file, out_file);
  if (smp->parsed()) return cmd_sample(term_file, state_file, seed, shots);
  if (demo->parsed()) return cmd_demo(demo_name, k, n, eps, verbose);
  if (comp->parsed()) return cmd_complexity(term_file);
  return 0;
}
