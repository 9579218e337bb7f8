#include "cli.hpp"

#include <complex>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "moelab/certify.hpp"
#include "moelab/channels.hpp"
#include "moelab/combinatorics.hpp"
#include "moelab/errors.hpp"
#include "moelab/grammar.hpp"
#include "moelab/groups.hpp"
#include "moelab/harmonic.hpp"
#include "moelab/interval.hpp"

namespace moelab::cli {
namespace {

using nlohmann::json;

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream stream(text);
  while (std::getline(stream, item, ',')) {
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) continue;
    parts.push_back(item.substr(first, last - first + 1));
  }
  return parts;
}

json interval_pair(const IntervalReal& v) {
  return json::array({v.lo_double(), v.hi_double()});
}

void emit(const json& report, const std::string& out_path, std::ostream& out) {
  if (out_path.empty()) {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(out_path);
  if (!file) throw ValidationError("cannot open output file: " + out_path);
  file << report.dump(2) << '\n';
}

/// All flag values for one invocation; every subcommand reads the subset it
/// declares. MOELAB_BUDGET in the environment overrides --budget.
struct Options {
  std::string group;
  std::string second_group;
  std::string factors;
  std::string copies = "1";
  std::string out_path;
  std::string q_decimal;
  std::string input = "delta_e";
  std::uint32_t radius = 3;
  std::uint32_t power = 1;
  std::uint32_t outer = 2;        // n for direct powers
  std::uint32_t exact_coords = 1; // m: non-neutral coordinate count
  std::uint32_t restarts = 32;
  std::uint32_t max_iter = 5000;
  std::uint64_t trials = 200;
  std::uint64_t seed = 0;
  std::uint64_t m_cap = 1;
  std::uint64_t q_squared = 0;  // 0 = unset
  std::uint64_t girth_cutoff = 16;
  double tol = 1e-9;
  long precision_bits = IntervalReal::kDefaultPrecision;
  long max_precision_bits = 8192;
  std::size_t budget = Budget::kDefault;
  bool composed = false;

  Budget make_budget() const {
    std::size_t elements = budget;
    if (const char* env = std::getenv("MOELAB_BUDGET")) {
      char* end = nullptr;
      const unsigned long long parsed = std::strtoull(env, &end, 10);
      if (end == env || *end != '\0' || parsed == 0)
        throw ValidationError("MOELAB_BUDGET must be a positive integer");
      elements = static_cast<std::size_t>(parsed);
    }
    return Budget{elements};
  }
};

int cmd_group_info(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto group = parse_group_spec(opt.group);
  const Budget budget = opt.make_budget();
  json report{{"command", "group info"},
              {"group", group->to_string()},
              {"finite", group->is_finite()},
              {"generator_count", to_string(group->generator_count())}};
  if (group->is_finite()) report["order"] = to_string(group->size());
  try {
    const auto gens = generators(*group, budget);
    if (gens.size() <= 32) {
      json listed = json::array();
      for (const auto& s : gens) listed.push_back(s.to_string(*group));
      report["generators"] = std::move(listed);
    }
    report["ball_sizes"] = json::array(
        {1, ball(*group, 1, budget).size(), ball(*group, 2, budget).size()});
  } catch (const BudgetError& e) {
    report["enumeration"] = std::string("skipped: ") + e.what();
  }
  emit(report, opt.out_path, out);
  err << "group " << group->to_string() << ": "
      << (group->is_finite() ? "finite, order " + to_string(group->size())
                             : "infinite")
      << ", " << to_string(group->generator_count()) << " generator(s)\n";
  return 0;
}

int cmd_constants(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto group = parse_group_spec(opt.group);
  const Budget budget = opt.make_budget();
  json report{{"command", "constants"}, {"group", group->to_string()}};

  try {
    const auto mult = pair_multiplicity(*group, budget);
    json field{{"value", mult.value}, {"degenerate", mult.degenerate}};
    if (mult.witness) field["witness"] = mult.witness->to_string(*group);
    report["pair_multiplicity"] = std::move(field);
  } catch (const Error& e) {
    report["pair_multiplicity"] = {{"error", e.what()}};
  }

  try {
    const auto g = girth(*group, opt.girth_cutoff, budget);
    report["girth"] = g.exceeded
                          ? json{{"exceeds_cutoff", opt.girth_cutoff}}
                          : json{{"value", g.value}, {"degenerate", g.degenerate}};
  } catch (const Error& e) {
    report["girth"] = {{"error", e.what()}};
  }

  try {
    report["minimal_generating_set"] = is_minimal_generating_set(*group, budget);
  } catch (const Error& e) {
    report["minimal_generating_set"] = {{"error", e.what()}};
  }

  try {
    report["ball2_size"] = ball(*group, 2, budget).size();
  } catch (const Error& e) {
    report["ball2_size"] = {{"error", e.what()}};
  }

  try {
    report["ball2_norm_constant"] =
        interval_pair(ball2_norm_constant_interval(*group, opt.precision_bits, budget));
  } catch (const Error& e) {
    report["ball2_norm_constant"] = {{"error", e.what()}};
  }

  report["kappa_at_set_size"] =
      interval_pair(kappa(group->generator_count(), opt.precision_bits));
  report["precision_bits"] = opt.precision_bits;

  emit(report, opt.out_path, out);
  err << "constants for " << group->to_string() << " written\n";
  return 0;
}

int cmd_norm(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto group = parse_group_spec(opt.group);
  const Budget budget = opt.make_budget();
  const auto window = ball(*group, opt.radius, budget);

  AlgebraElement f(group);
  const double amplitude = 1.0 / std::sqrt(static_cast<double>(window.size()));
  for (const auto& x : window) f.add_term(x, amplitude);

  NormOptions options;
  options.radius = opt.radius + 1;
  const NormBound bound = operator_norm(*group, f, options, budget);

  json report{{"command", "norm"},
              {"group", group->to_string()},
              {"function", "uniform"},
              {"radius", opt.radius},
              {"support_size", window.size()},
              {"l2_norm", f.l2_norm()},
              {"lower", bound.lower},
              {"lower_method", bound.lower_method},
              {"upper", bound.upper},
              {"upper_method", bound.upper_method}};
  emit(report, opt.out_path, out);
  err << "norm of the uniform function on B_" << opt.radius << "(" << group->to_string()
      << "): [" << bound.lower << ", " << bound.upper << "]\n";
  return 0;
}

int report_verification(const VerificationReport& rep, const Options& opt,
                        std::ostream& out, std::ostream& err) {
  emit(rep.to_json(), opt.out_path, out);
  err << rep.lemma << " on " << rep.group_display << ": "
      << (rep.pass ? "PASS" : "FAIL") << "  max_ratio=" << rep.max_ratio
      << " bound=" << rep.bound << " margin=" << rep.margin << '\n';
  return rep.pass ? 0 : 1;
}

int cmd_verify_srd(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto g = parse_group_spec(opt.group);
  const auto h = parse_group_spec(opt.second_group);
  const Budget budget = opt.make_budget();
  const auto rep =
      verify_product_inequality(g, h, ball(*g, 2, budget), ball(*h, 2, budget),
                                opt.trials, opt.seed, opt.tol, budget);
  return report_verification(rep, opt, out, err);
}

int cmd_verify_power(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto g = parse_group_spec(opt.group);
  const Budget budget = opt.make_budget();
  const auto rep = verify_power_inequality(g, opt.outer, opt.exact_coords, opt.trials,
                                           opt.seed, opt.tol, budget);
  return report_verification(rep, opt, out, err);
}

int cmd_verify_freeprod(const Options& opt, std::ostream& out, std::ostream& err) {
  std::vector<GroupSpecPtr> specs;
  for (const auto& text : split_list(opt.factors)) specs.push_back(parse_group_spec(text));
  if (specs.empty()) throw ValidationError("--factors needs at least one group spec");
  const Budget budget = opt.make_budget();
  const auto rep = verify_freeprod_inequality(specs, opt.radius, opt.trials, opt.seed,
                                              opt.tol, budget);
  return report_verification(rep, opt, out, err);
}

DensityState build_input(const GroupSpecPtr& group, const Options& opt,
                         const Budget& budget) {
  if (opt.input == "delta_e") return DensityState::delta_identity(group, opt.power);
  if (opt.input != "uniform")
    throw ValidationError("--input must be delta_e or uniform");

  const auto window = ball(*group, opt.radius, budget);
  std::size_t dims = 1;
  for (std::uint32_t j = 0; j < opt.power; ++j) {
    dims *= window.size();
    if (dims > budget.max_elements)
      throw BudgetError("uniform input state exceeds the basis budget");
  }
  std::vector<std::vector<Element>> basis;
  basis.reserve(dims);
  std::vector<std::size_t> digits(opt.power, 0);
  for (std::size_t flat = 0; flat < dims; ++flat) {
    std::vector<Element> tuple;
    tuple.reserve(opt.power);
    std::size_t rest = flat;
    for (std::uint32_t j = 0; j < opt.power; ++j) {
      tuple.push_back(window[rest % window.size()]);
      rest /= window.size();
    }
    basis.push_back(std::move(tuple));
  }
  Eigen::VectorXcd amplitudes =
      Eigen::VectorXcd::Constant(static_cast<Eigen::Index>(dims),
                                 1.0 / std::sqrt(static_cast<double>(dims)));
  return DensityState::pure(group, opt.power, std::move(basis), amplitudes);
}

int cmd_channel_entropy(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto group = parse_group_spec(opt.group);
  const Budget budget = opt.make_budget();
  const DensityState input = build_input(group, opt, budget);

  json report{{"command", "channel entropy"},
              {"group", group->to_string()},
              {"power", opt.power},
              {"input", opt.input},
              {"composed", opt.composed},
              {"units", "nats"}};
  int exit_code = 0;
  double entropy = 0.0;
  if (opt.composed) {
    const DensityState output = compose_left_right(input, budget);
    entropy = von_neumann_entropy(output.matrix);
    report["entropy"] = entropy;
    report["renyi2"] = -std::log(output.matrix.squaredNorm());
    report["output_dimension"] = output.basis.size();
  } else {
    const auto environment = complementary_output(input, budget);
    entropy = von_neumann_entropy(environment);
    report["entropy"] = entropy;
    report["renyi2"] = -std::log(environment.squaredNorm());
    report["output_dimension"] = static_cast<std::size_t>(environment.rows());

    const double q = ball2_norm_constant(*group, budget);
    const auto mult = pair_multiplicity(*group, budget);
    const auto dev = l2_deviation_check(input, q, mult.value, opt.tol, budget);
    report["deviation"] = {{"q", dev.q},
                           {"pair_multiplicity", dev.pair_multiplicity},
                           {"hs_deviation", dev.hs_deviation},
                           {"bound", dev.deviation_bound},
                           {"pass", dev.deviation_pass},
                           {"entropy_chain_bound", dev.entropy_chain_bound},
                           {"chain_pass", dev.chain_pass}};
    exit_code = (dev.deviation_pass && dev.chain_pass) ? 0 : 1;
  }
  emit(report, opt.out_path, out);
  err << (opt.composed ? "composed channel" : "complementary channel") << " on "
      << group->to_string() << ": H = " << entropy << " nats\n";
  return exit_code;
}

int cmd_moe(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto group = parse_group_spec(opt.group);
  const Budget budget = opt.make_budget();
  MoeOptions options;
  options.radius = opt.radius;
  options.power = opt.power;
  options.restarts = opt.restarts;
  options.seed = opt.seed;
  options.tol = opt.tol;
  options.max_iter = opt.max_iter;
  const MoeResult result = minimize_output_entropy(group, options, budget);

  json report{{"command", "moe"},
              {"group", group->to_string()},
              {"radius", opt.radius},
              {"power", opt.power},
              {"restarts", opt.restarts},
              {"seed", opt.seed},
              {"best_value", result.best_value},
              {"units", "nats"},
              {"best_restart", result.best_restart},
              {"converged", result.converged},
              {"gradient_norm", result.gradient_norm},
              {"state_norm_error", result.state_norm_error},
              {"window_dimension", result.window_dimension},
              {"restart_values", result.restart_values}};
  emit(report, opt.out_path, out);
  err << "moe(" << group->to_string() << ", R=" << opt.radius << ", k=" << opt.power
      << ") <= " << result.best_value << " nats"
      << (result.converged ? " (stationary)" : " (not stationary)") << '\n';
  return result.converged ? 0 : 1;
}

int report_certificate(const Certificate& cert, const Options& opt, std::ostream& out,
                       std::ostream& err) {
  emit(cert.to_json(), opt.out_path, out);
  err << cert.verdict();
  if (cert.accepted() && cert.gap)
    err << "  gap=[" << cert.gap->lo_double() << ", " << cert.gap->hi_double()
        << "] nats";
  err << "  precision=" << cert.precision_bits << " bits\n";
  if (!cert.accepted())
    for (const auto& check : cert.checks)
      if (check.status != CheckStatus::Pass)
        err << "  " << to_string(check.status) << ": " << check.name << '\n';
  return cert.accepted() ? 0 : 1;
}

int cmd_certify_main(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto group = parse_group_spec(opt.group);
  std::optional<IntervalReal> q;
  if (opt.q_squared != 0)
    q = IntervalReal::exact(BigInt(static_cast<unsigned long>(opt.q_squared)),
                            opt.precision_bits)
            .sqrt();
  else if (!opt.q_decimal.empty())
    q = IntervalReal::from_decimal(opt.q_decimal, opt.precision_bits);
  const auto cert = certify_main_theorem(group, q, opt.precision_bits,
                                         opt.max_precision_bits, opt.make_budget());
  return report_certificate(cert, opt, out, err);
}

int cmd_certify_freeprod(const Options& opt, std::ostream& out, std::ostream& err) {
  const auto factor_texts = split_list(opt.factors);
  if (factor_texts.empty()) throw ValidationError("--factors needs at least one group spec");
  const auto copy_texts = split_list(opt.copies);
  if (copy_texts.size() != 1 && copy_texts.size() != factor_texts.size())
    throw ValidationError("--copies takes one count or one per factor");

  std::vector<GroupSpec::Factor> factors;
  for (std::size_t i = 0; i < factor_texts.size(); ++i) {
    const auto& copies = copy_texts.size() == 1 ? copy_texts[0] : copy_texts[i];
    factors.push_back({parse_group_spec(factor_texts[i]), parse_bigint(copies)});
  }
  const auto cert = certify_free_product(opt.m_cap, factors, opt.precision_bits,
                                         opt.max_precision_bits, opt.make_budget());
  return report_certificate(cert, opt, out, err);
}

void add_output_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--out", opt.out_path, "write the JSON report to this file");
  cmd->add_option("--budget", opt.budget, "max basis elements for enumerations")
      ->check(CLI::PositiveNumber);
}

void add_sampling_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--trials", opt.trials, "random samples (default 200)");
  cmd->add_option("--seed", opt.seed, "RNG seed (default 0)");
  cmd->add_option("--tol", opt.tol, "comparison tolerance (default 1e-9)");
}

void add_precision_flag(CLI::App* cmd, Options& opt) {
  cmd->add_option("--precision-bits", opt.precision_bits,
                  "interval working precision (default 256)")
      ->check(CLI::Range(2L, 1L << 20));
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"group-algebra norms, channel entropies and additivity-violation certificates"};
  app.require_subcommand(1);
  int exit_code = 0;

  // group info
  auto* group_cmd = app.add_subcommand("group", "inspect a parsed group spec");
  group_cmd->require_subcommand(1);
  auto* info = group_cmd->add_subcommand("info", "canonical form, order, generators");
  info->add_option("--G", opt.group, "group spec")->required();
  add_output_flags(info, opt);
  info->callback([&] { exit_code = cmd_group_info(opt, out, err); });

  // constants
  auto* constants = app.add_subcommand(
      "constants", "pair multiplicity, girth, rank minimality, norm constants");
  constants->add_option("--G", opt.group, "group spec")->required();
  constants->add_option("--girth-cutoff", opt.girth_cutoff, "girth search cutoff (default 16)");
  add_precision_flag(constants, opt);
  add_output_flags(constants, opt);
  constants->callback([&] { exit_code = cmd_constants(opt, out, err); });

  // norm
  auto* norm = app.add_subcommand(
      "norm", "convolution-operator norm of the uniform function on a ball");
  norm->add_option("--G", opt.group, "group spec")->required();
  norm->add_option("--radius", opt.radius, "support ball radius (default 3)");
  add_output_flags(norm, opt);
  norm->callback([&] { exit_code = cmd_norm(opt, out, err); });

  // verify
  auto* verify = app.add_subcommand("verify", "randomized + exact inequality checks");
  verify->require_subcommand(1);
  auto* srd = verify->add_subcommand(
      "srd", "product-group bound ||lambda(phi)|| <= p q ||phi||_2 on B2 x B2");
  srd->add_option("--G", opt.group, "first group spec")->required();
  srd->add_option("--H", opt.second_group, "second group spec")->required();
  add_sampling_flags(srd, opt);
  add_output_flags(srd, opt);
  srd->callback([&] { exit_code = cmd_verify_srd(opt, out, err); });

  auto* pow_cmd = verify->add_subcommand(
      "power", "direct-power bound C(n,m)^{1/2} p^m on exactly-m-coordinate tuples");
  pow_cmd->add_option("--G", opt.group, "base group spec")->required();
  pow_cmd->add_option("--n", opt.outer, "direct-power exponent")->required();
  pow_cmd->add_option("--m", opt.exact_coords, "non-neutral coordinate count")->required();
  add_sampling_flags(pow_cmd, opt);
  add_output_flags(pow_cmd, opt);
  pow_cmd->callback([&] { exit_code = cmd_verify_power(opt, out, err); });

  auto* fp_cmd = verify->add_subcommand(
      "freeprod", "free-product bound 5 sqrt(2) max_i sqrt(|B2(G_i)|) on B2");
  fp_cmd->add_option("--factors", opt.factors, "comma-separated factor specs")->required();
  fp_cmd->add_option("--radius", opt.radius, "compression radius (default 3)");
  add_sampling_flags(fp_cmd, opt);
  add_output_flags(fp_cmd, opt);
  fp_cmd->callback([&] { exit_code = cmd_verify_freeprod(opt, out, err); });

  // channel entropy
  auto* channel = app.add_subcommand("channel", "translation-averaging channel experiments");
  channel->require_subcommand(1);
  auto* entropy = channel->add_subcommand(
      "entropy", "output entropy of the complementary or composed channel");
  entropy->add_option("--G", opt.group, "group spec")->required();
  entropy->add_option("--power", opt.power, "tensor power k (default 1)");
  entropy->add_option("--input", opt.input, "input state: delta_e or uniform");
  entropy->add_option("--radius", opt.radius, "support radius for uniform input");
  entropy->add_flag("--composed", opt.composed, "left channel composed with right");
  entropy->add_option("--tol", opt.tol, "bound tolerance (default 1e-9)");
  add_output_flags(entropy, opt);
  entropy->callback([&] { exit_code = cmd_channel_entropy(opt, out, err); });

  // moe
  auto* moe = app.add_subcommand(
      "moe", "projected-gradient minimum output entropy over a window");
  moe->add_option("--G", opt.group, "group spec")->required();
  moe->add_option("--radius", opt.radius, "window radius (default 3)");
  moe->add_option("--power", opt.power, "tensor power k (default 1)");
  moe->add_option("--restarts", opt.restarts, "optimizer restarts (default 32)");
  moe->add_option("--seed", opt.seed, "RNG seed (default 0)");
  moe->add_option("--tol", opt.tol, "stagnation tolerance (default 1e-9)");
  moe->add_option("--max-iter", opt.max_iter, "iteration cap per restart");
  add_output_flags(moe, opt);
  moe->callback([&] { exit_code = cmd_moe(opt, out, err); });

  // certify
  auto* certify = app.add_subcommand("certify", "interval-arithmetic certificates");
  certify->require_subcommand(1);
  auto* main_cmd = certify->add_subcommand(
      "main", "hypothesis q sqrt(mult) <= kappa(|S|) plus certified gap");
  main_cmd->add_option("--G", opt.group, "group spec")->required();
  main_cmd->add_option("--q", opt.q_decimal, "decimal override for the norm constant q");
  main_cmd->add_option("--q-squared", opt.q_squared,
                       "integer q^2 override (q = sqrt of it, exactly)");
  add_precision_flag(main_cmd, opt);
  main_cmd->add_option("--max-precision-bits", opt.max_precision_bits,
                       "escalation cap (default 8192)");
  add_output_flags(main_cmd, opt);
  main_cmd->callback([&] { exit_code = cmd_certify_main(opt, out, err); });

  auto* freeprod_cmd = certify->add_subcommand(
      "freeprod", "free-product pipeline with symbolic copy counts");
  freeprod_cmd->add_option("--M", opt.m_cap, "factor rank cap M")->required();
  freeprod_cmd->add_option("--factors", opt.factors, "comma-separated factor specs")
      ->required();
  freeprod_cmd->add_option("--copies", opt.copies,
                           "copy count per factor (big integer, e.g. 10^84)");
  add_precision_flag(freeprod_cmd, opt);
  freeprod_cmd->add_option("--max-precision-bits", opt.max_precision_bits,
                           "escalation cap (default 8192)");
  add_output_flags(freeprod_cmd, opt);
  freeprod_cmd->callback([&] { exit_code = cmd_certify_freeprod(opt, out, err); });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 2;
  } catch (const BudgetError& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 2;
  }
  return exit_code;
}

}  // namespace moelab::cli
