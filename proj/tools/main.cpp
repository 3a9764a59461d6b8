#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>

#include "commands.hpp"
#include "digitseq/errors.hpp"
#include "digitseq/function_spec.hpp"

namespace {

using namespace digitseq::cli;

void add_source(CLI::App* cmd, Source& src) {
  auto* p = cmd->add_option("--preset", src.preset,
                            "thue-morse, rudin-shapiro, digit-sum:<q>,<m'>, block-ones:<L>");
  auto* s = cmd->add_option("--spec-file", src.spec_file, "function spec file")->check(CLI::ExistingFile);
  p->excludes(s);
  cmd->add_option("--map", src.map, "id, square or affine:a,b")->capture_default_str();
}

void add_common(CLI::App* cmd, Source& src) {
  cmd->add_option("--out", src.out, "write the report here instead of stdout");
  cmd->add_option("--seed", src.seed, "seed for sampled sweeps")->capture_default_str();
  cmd->add_option("--threads", src.threads, "worker threads")->capture_default_str()->check(CLI::Range(1, 256));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"digitseq: block-additive digital functions along squares"};
  app.require_subcommand(1);

  Source src;
  GenerateArgs gen;
  StatsArgs stats;
  ExpsumArgs exps;
  FourierArgs four;
  ToolboxArgs tb;
  BenchArgs bench;

  auto* c_gen = app.add_subcommand("generate", "emit b(map(t)) mod m'");
  add_source(c_gen, src);
  add_common(c_gen, src);
  c_gen->add_option("--start", gen.start)->capture_default_str();
  c_gen->add_option("--count", gen.count)->capture_default_str();
  c_gen->add_option("--format", gen.format, "raw or csv")->capture_default_str();

  auto* c_stats = app.add_subcommand("stats", "block frequencies and subword complexity");
  add_source(c_stats, src);
  add_common(c_stats, src);
  c_stats->add_option("-N", stats.N)->capture_default_str();
  c_stats->add_option("-k", stats.k, "largest block length")->capture_default_str();
  c_stats->add_option("--complexity", stats.complexity, "subword complexity up to this length");
  c_stats->add_option("--tolerance", stats.tolerance, "fail when a deviation exceeds this or a block is missing");
  c_stats->add_option("--report", stats.report, "csv or json")->capture_default_str();

  auto* c_exp = app.add_subcommand("expsum", "S0 over a grid of N and its log-log slope");
  add_source(c_exp, src);
  add_common(c_exp, src);
  c_exp->add_option("--alpha", exps.alpha, "numerators over m', e.g. 1,0")->required();
  c_exp->add_option("--grid", exps.grid)->capture_default_str();
  c_exp->add_option("--report", exps.report, "csv or json")->capture_default_str();

  auto* c_four = app.add_subcommand("fourier", "Fourier-term identities and decay checks");
  add_source(c_four, src);
  add_common(c_four, src);
  c_four->add_option("--alpha", four.alpha)->required();
  c_four->add_option("--lambda", four.lambda)->capture_default_str();
  c_four->add_option("--check", four.check)
      ->check(CLI::IsMember({"recursion", "parseval", "prop1", "prop2", "cond1", "cond2", "witness"}))
      ->capture_default_str();
  c_four->add_option("--samples", four.samples)->capture_default_str();
  c_four->add_option("--index", four.index, "offset vector for prop1/prop2, e.g. 0,1");
  c_four->add_option("--freq", four.h, "frequency h")->capture_default_str();
  c_four->add_option("--d", four.d)->capture_default_str();
  c_four->add_option("--limit", four.limit, "largest accepted prop2 constant")->capture_default_str();

  auto* c_tool = app.add_subcommand("toolbox", "explicit bounds and carry counts");
  c_tool->require_subcommand(1);
  std::string tool;
  for (const char* name : {"gauss", "vaaler", "vdc", "carry", "sinsum"}) {
    auto* t = c_tool->add_subcommand(name);
    add_common(t, src);
    t->callback([&tool, name] { tool = name; });
  }
  auto* t_gauss = c_tool->get_subcommand("gauss");
  t_gauss->add_option("-a", tb.a)->capture_default_str();
  t_gauss->add_option("-b", tb.b)->capture_default_str();
  t_gauss->add_option("-m", tb.m)->capture_default_str();
  t_gauss->add_option("--n0", tb.n0, "incomplete sum start");
  t_gauss->add_option("--N", tb.N, "incomplete sum length");
  auto* t_vaaler = c_tool->get_subcommand("vaaler");
  t_vaaler->add_option("--alpha", tb.alpha)->capture_default_str();
  t_vaaler->add_option("--H", tb.H)->capture_default_str();
  t_vaaler->add_option("--grid", tb.grid)->capture_default_str();
  auto* t_vdc = c_tool->get_subcommand("vdc");
  t_vdc->add_option("--N", tb.length, "length of the random sequence")->capture_default_str();
  t_vdc->add_option("--Q", tb.Q)->capture_default_str();
  t_vdc->add_option("--R", tb.R)->capture_default_str();
  auto* t_carry = c_tool->get_subcommand("carry");
  add_source(t_carry, src);
  t_carry->add_option("--nu", tb.nu)->capture_default_str();
  t_carry->add_option("--lambda", tb.lambda)->capture_default_str();
  t_carry->add_option("--rho", tb.rho)->capture_default_str();
  t_carry->add_option("--r", tb.r)->capture_default_str();
  t_carry->add_option("--mu", tb.mu, "run the digit-band decomposition check");
  t_carry->add_option("--rho-prime", tb.rho_prime)->capture_default_str();
  t_carry->add_option("--ell", tb.ell)->capture_default_str();
  t_carry->add_option("--s", tb.s)->capture_default_str();
  auto* t_sin = c_tool->get_subcommand("sinsum");
  t_sin->add_option("-a", tb.a)->capture_default_str();
  t_sin->add_option("-m", tb.m)->capture_default_str();
  t_sin->add_option("-b", tb.shift)->capture_default_str();
  t_sin->add_option("-U", tb.U)->capture_default_str();
  t_sin->add_option("-A", tb.A)->capture_default_str();

  auto* c_bench = app.add_subcommand("bench", "generation throughput");
  add_source(c_bench, src);
  add_common(c_bench, src);
  c_bench->add_option("--count", bench.count)->capture_default_str();
  c_bench->add_flag("--timing", bench.timing, "include wall-clock seconds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::unique_ptr<std::ofstream> file;
  std::ostream* out = &std::cout;
  if (!src.out.empty()) {
    file = std::make_unique<std::ofstream>(src.out);
    if (!*file) {
      std::cerr << "cannot open " << src.out << '\n';
      return 2;
    }
    out = file.get();
  }

  try {
    if (c_gen->parsed()) run_generate(src, gen, *out);
    else if (c_stats->parsed()) run_stats(src, stats, *out);
    else if (c_exp->parsed()) run_expsum(src, exps, *out);
    else if (c_four->parsed()) run_fourier(src, four, *out);
    else if (c_tool->parsed()) run_toolbox(tool, src, tb, *out);
    else if (c_bench->parsed()) run_bench(src, bench, *out);
  } catch (const CheckFailed& e) {
    std::cerr << "check failed: " << e.what << '\n';
    return 1;
  } catch (const digitseq::HypothesisViolation& e) {
    std::cerr << "hypothesis violated: " << e.what() << '\n';
    return 1;
  } catch (const digitseq::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return 2;
  } catch (const digitseq::SpecParseError& e) {
    std::cerr << "spec error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
