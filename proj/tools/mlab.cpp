// mlab -- batch CLI for the summatory-function / zeta toolkit.
//
// Subcommands: summatory, twisted, zeta, verify, zeros, psi, probe,
// intervals, extremes. Everything is deterministic; output is CSV with a
// leading manifest comment line.

#include <CLI11.hpp>
#include <iostream>
#include <sstream>

#include "mlab/mlab.hpp"

namespace {

// "a", "a:b" or "a:b:step"
void parse_range(const std::string& text, double& lo, double& hi, double& step) {
  std::istringstream ss(text);
  std::string part;
  std::vector<double> vals;
  while (std::getline(ss, part, ':')) vals.push_back(std::stod(part));
  if (vals.empty() || vals.size() > 3) throw CLI::ValidationError("range", "expected a[:b[:step]]");
  lo = vals[0];
  hi = vals.size() > 1 ? vals[1] : vals[0];
  step = vals.size() > 2 ? vals[2] : 1.0;
}

std::vector<mlab::u64> parse_xlist(const std::string& text) {
  std::istringstream ss(text);
  std::string part;
  std::vector<mlab::u64> xs;
  while (std::getline(ss, part, ',')) xs.push_back(static_cast<mlab::u64>(std::stod(part)));
  return xs;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mlab: summatory Mobius/Liouville functions, zeta representations, and identity scans"};
  app.require_subcommand(1);

  mlab::RunConfig cfg;
  std::string kind_name = "mobius";
  std::string sigma_range, t_range, xlist_text;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output CSV path (default stdout)");
    sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
    sub->add_option("--seed", cfg.seed, "reserved; all computation is deterministic");
  };
  auto add_kind = [&](CLI::App* sub) {
    sub->add_option("--kind", kind_name, "mobius or liouville")
        ->check(CLI::IsMember({"mobius", "liouville"}));
  };

  auto* summatory = app.add_subcommand("summatory", "checkpointed M(x) or L(x) trace");
  summatory->add_option("--xmax", cfg.x_max, "upper limit X")->required();
  add_kind(summatory);
  add_common(summatory);

  auto* twisted = app.add_subcommand("twisted", "checkpointed twisted trace M_chi(x)");
  twisted->add_option("--xmax", cfg.x_max, "upper limit X")->required();
  twisted->add_option("--q", cfg.q, "character modulus");
  twisted->add_option("--char-index", cfg.char_index, "character index (0 = principal)");
  add_common(twisted);

  auto* zeta = app.add_subcommand("zeta", "grid scan of zeta representations");
  zeta->add_option("--sigma", sigma_range, "sigma range a[:b[:step]]");
  zeta->add_option("--t", t_range, "t range a[:b[:step]]");
  zeta->add_option("--method", cfg.method, "eta|dirichlet|fracpart|reflect|all");
  zeta->add_flag("--growth", cfg.growth, "emit growth-bound ratios per sigma band instead");
  add_common(zeta);

  auto* verify = app.add_subcommand("verify", "run a verification suite, exit 4 on failure");
  verify->add_option("--suite", cfg.suite, "identities|inequalities|zeta|all");
  add_common(verify);

  auto* zeros = app.add_subcommand("zeros", "critical-line zeros up to height T");
  zeros->add_option("--tmax", cfg.t_max, "height ceiling (<= 500)")->required();
  add_common(zeros);

  auto* psi = app.add_subcommand("psi", "Chebyshev psi by sieve vs truncated explicit formula");
  psi->add_option("--x", cfg.psi_x, "evaluation point (half-integers dodge jumps)");
  psi->add_option("--kzeros", cfg.k_zeros, "zero pairs in the truncation");
  add_common(psi);

  auto* probe = app.add_subcommand("probe", "step-integral probe toward 1/zeta(1/2+eps)");
  probe->add_option("--theorem", cfg.theorem, "1 (Mobius form) or 2 (Liouville form)");
  probe->add_option("--epsilon", cfg.epsilon, "offset eps > 0 in s = 1/2 + eps")->required();
  probe->add_option("--xlist", xlist_text, "comma-separated increasing X values")->required();
  add_common(probe);

  auto* intervals = app.add_subcommand("intervals", "short-interval sums and exponent fit");
  intervals->add_option("--xlist", xlist_text, "comma-separated x grid");
  intervals->add_option("--policy", cfg.y_policy, "sqrt or logpow");
  intervals->add_option("--c", cfg.log_power_c, "exponent C for the logpow policy");
  add_kind(intervals);
  add_common(intervals);

  auto* extremes = app.add_subcommand("extremes", "exact extrema of S(x)/sqrt(x) plus run scan");
  extremes->add_option("--xmax", cfg.x_max, "upper limit X")->required();
  add_kind(extremes);
  add_common(extremes);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return mlab::kExitUsage;
  }

  cfg.subcommand = app.get_subcommands().front()->get_name();
  cfg.kind = (kind_name == "liouville") ? mlab::Kind::Liouville : mlab::Kind::Mobius;
  try {
    if (!sigma_range.empty()) parse_range(sigma_range, cfg.sigma_min, cfg.sigma_max, cfg.sigma_step);
    if (!t_range.empty()) parse_range(t_range, cfg.t_min, cfg.t_max, cfg.t_step);
    if (!xlist_text.empty()) cfg.x_list = parse_xlist(xlist_text);
    return mlab::run_experiment(cfg);
  } catch (const mlab::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return mlab::kExitCapacity;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return mlab::kExitUsage;
  }
}
