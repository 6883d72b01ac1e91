#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "nt/error.hpp"
#include "nt/harness.hpp"

namespace h = nt::harness;

namespace {

void add_common(CLI::App* sub, h::ExperimentConfig& cfg) {
  sub->add_option("--D", cfg.D, "modulus (max modulus for linnik and I3/A3)");
  sub->add_option("--x", cfg.x, "range bound");
  sub->add_option("--y", cfg.y, "summation bound for decompose (default x)");
  sub->add_option("--T", cfg.T, "height of the t-range (0 = experiment default)");
  sub->add_option("--alpha", cfg.alpha, "classifier alpha");
  sub->add_option("--delta", cfg.delta, "delta for the order tests");
  sub->add_option("--beta", cfg.beta, "bound on |g(p)|");
  sub->add_option("--c", cfg.c, "constant c");
  sub->add_option("--c1", cfg.c1, "constant c1");
  sub->add_option("--c0", cfg.c0, "constant c0 in psi(t)");
  sub->add_option("--k", cfg.k, "power k in the taxonomy variant");
  sub->add_option("--seed", cfg.seed, "64-bit seed");
  sub->add_option("--g", cfg.g, "function: one, mobius, mobius-tail(D), unit-tail(D), random-unitdisc(seed)");
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mean values of multiplicative functions in progressions: experiments and checks"};
  app.set_version_flag("--version", std::string(h::kVersion));
  app.require_subcommand(1);
  h::ExperimentConfig cfg;

  auto* verify = app.add_subcommand("verify", "run a lemma verification suite");
  verify->add_option("lemma", cfg.lemma, "lemma id")->required()->check(CLI::IsMember(h::verify_lemmas()));
  add_common(verify, cfg);
  for (const char* name : {"decompose", "exceptional", "taxonomy", "halasz", "linnik", "sieve-stats"})
    add_common(app.add_subcommand(name, std::string(name) + " experiment"), cfg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.experiment = app.get_subcommands().front()->get_name();
    h::Report rep;
    if (cfg.experiment == "verify") rep = h::run_verify(cfg.lemma, cfg);
    else if (cfg.experiment == "decompose") rep = h::run_decompose(cfg);
    else if (cfg.experiment == "exceptional") rep = h::run_exceptional(cfg);
    else if (cfg.experiment == "taxonomy") rep = h::run_taxonomy(cfg);
    else if (cfg.experiment == "halasz") rep = h::run_halasz(cfg);
    else if (cfg.experiment == "linnik") rep = h::run_linnik(cfg);
    else rep = h::run_sieve_stats(cfg);
    h::write_report(rep, cfg);
    return rep.flagged ? 1 : 0;
  } catch (const nt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const nt::DomainError& e) {
    std::cerr << "config outside hypothesis range: " << e.what() << "\n";
    return 2;
  } catch (const nt::ResourceError& e) {
    std::cerr << "resource refusal: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
