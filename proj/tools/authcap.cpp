// Command-line front end: region membership, boundary sweeps, projections,
// and desk-scale code simulation.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "authcap/io.hpp"
#include "authcap/operational.hpp"
#include "authcap/simmons.hpp"

namespace {

using namespace authcap;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitNoConvergence = 4;

// JSON config files, applied below command-line flags: {"region": {"lt": 0.1}}
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override {
    return "{}\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    std::vector<CLI::ConfigItem> items;
    flatten({}, nlohmann::json::parse(input), items);
    return items;
  }

 private:
  static void flatten(const std::vector<std::string>& parents,
                      const nlohmann::json& node,
                      std::vector<CLI::ConfigItem>& items) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      if (it.value().is_object()) {
        std::vector<std::string> deeper = parents;
        deeper.push_back(it.key());
        flatten(deeper, it.value(), items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = it.key();
      auto as_text = [](const nlohmann::json& v) {
        return v.is_string() ? v.get<std::string>() : v.dump();
      };
      if (it.value().is_array())
        for (const auto& v : it.value()) item.inputs.push_back(as_text(v));
      else
        item.inputs.push_back(as_text(it.value()));
      items.push_back(item);
    }
  }
};

RatePoint parse_point(const std::string& s) {
  std::stringstream ss(s);
  std::string part;
  std::vector<double> v;
  while (std::getline(ss, part, ',')) v.push_back(std::stod(part));
  if (v.size() != 3) throw std::invalid_argument("--point expects r,alpha,kappa");
  RatePoint p{v[0], v[1], v[2]};
  p.validate();
  return p;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file " + path);
  out << text;
}

nlohmann::json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return nlohmann::json::parse(in);
}

struct RegionArgs {
  std::string theorem = "3";
  double lt = 0.1, lq = 0.3;
  int j = 1;
  std::string point;
  std::string channels_file, aux_file;
  double rho_step = 1.0 / 16.0, nu_step = 0.005, kt_step = 1e-3;
  std::string format = "json", out;
};

int run_region(const RegionArgs& a) {
  const RatePoint p = parse_point(a.point);
  nlohmann::json j;
  RegionVerdict verdict;

  const bool general = !a.channels_file.empty();
  if (general) {
    const auto cj = load_json(a.channels_file);
    ChannelPair pair(cond_from_json(cj.at("t")), cond_from_json(cj.at("q")));
    const auto axj = load_json(a.aux_file);
    if (a.theorem == "gungor") {
      const auto g = gungor_contains(p, pair, cond_from_json(axj.at("rho")),
                                     dist_from_json(axj.at("tau")), a.kt_step,
                                     a.nu_step);
      verdict = g.verdict;
      j["best_kappa_tilde"] = g.best_kappa_tilde;
    } else {
      AuxiliaryChoice aux{cond_from_json(axj.at("rho")),
                          DetCondDist(cond_from_json(axj.at("sigma"))),
                          dist_from_json(axj.at("tau")), a.j};
      verdict = a.theorem == "1" ? theorem1_contains(p, pair, aux, a.nu_step)
                                 : theorem3_contains(p, pair, aux, a.nu_step);
    }
  } else {
    const BscFamily fam{a.lt, a.lq};
    BscSearchOptions search;
    search.rho_step = a.rho_step;
    search.nu_step = a.nu_step;
    if (a.theorem == "gungor") {
      const auto g = gungor_contains_bsc(p, fam, search, a.kt_step);
      verdict = g.verdict;
      j["best_kappa_tilde"] = g.best_kappa_tilde;
      if (const auto best = max_alpha_gungor_bsc(fam, p.r, p.kappa, search, a.kt_step)) {
        j["max_alpha"] = best->alpha;
        j["aux"] = {{"lambda_rho", best->lambda_rho}};
      }
    } else {
      const int which = a.theorem == "1" ? 1 : 3;
      const auto best = max_alpha_bsc(fam, p.r, p.kappa, a.j, which, search);
      if (best) {
        const AuxiliaryChoice aux = make_bsc_aux(best->structure, best->lambda_rho, a.j);
        const InnerBoundTerms terms =
            compute_terms_bsc(fam.channels(), aux, search.nu_step);
        verdict = which == 1 ? theorem1_contains_terms(p, terms, a.j)
                             : theorem3_contains_terms(p, terms, a.j);
        j["aux"] = {{"structure", best->structure == BscAuxStructure::SingletonW
                                      ? "singleton_w"
                                      : "identity_sigma"},
                    {"lambda_rho", best->lambda_rho}};
        j["max_alpha"] = best->alpha;
      } else {
        verdict.contained = false;
        verdict.slacks = {{"r_plus_alpha", -kInf}};
      }
    }
  }

  j.update(verdict_to_json(verdict));
  j["theorem"] = a.theorem;
  j["point"] = {{"r", p.r}, {"alpha", p.alpha}, {"kappa", p.kappa}};

  if (a.format == "csv") {
    std::string csv = "constraint,slack\n";
    for (const auto& s : verdict.slacks)
      csv += s.constraint + "," + format_sig(s.slack) + "\n";
    emit(csv, a.out);
  } else {
    emit(j.dump(2) + "\n", a.out);
  }
  return kExitOk;
}

struct SweepArgs {
  std::string mode = "r-alpha";
  double lt = 0.05, lq = 0.25;
  double r = 0.25, kappa = 0.25;
  int j = 1;
  double x_min = 0.0, x_max = 0.5, x_step = 0.01;
  std::string compare;
  double rho_step = 1.0 / 16.0, nu_step = 0.005;
  std::string format = "csv", out, svg;
};

int run_sweep(const SweepArgs& a) {
  SweepMode mode;
  std::string x_label;
  if (a.mode == "r-alpha") {
    mode = SweepMode::RVsAlpha;
    x_label = "r";
  } else if (a.mode == "alpha-kappa") {
    mode = SweepMode::AlphaVsKappa;
    x_label = "kappa";
  } else if (a.mode == "alpha-lt") {
    mode = SweepMode::AlphaVsLambdaT;
    x_label = "lambda_t";
  } else {
    throw std::invalid_argument("--mode must be r-alpha, alpha-kappa or alpha-lt");
  }
  if (!a.compare.empty() && a.compare != "gungor")
    throw std::invalid_argument("--compare supports only 'gungor'");
  if (a.x_step <= 0.0) throw std::invalid_argument("--x-step must be positive");

  SweepOptions opts;
  opts.x_min = a.x_min;
  opts.x_max = a.x_max;
  opts.x_step = a.x_step;
  opts.r = a.r;
  opts.kappa = a.kappa;
  opts.j = a.j;
  opts.compare_gungor = a.compare == "gungor";
  opts.search.rho_step = a.rho_step;
  opts.search.nu_step = a.nu_step;

  const Curve curve = sweep_bsc(BscFamily{a.lt, a.lq}, mode, opts);

  if (a.format == "json") {
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& pt : curve) {
      nlohmann::json e{{"x", pt.x}, {"binding", pt.binding}};
      if (pt.value) e["value"] = *pt.value;
      if (pt.gungor) e["gungor"] = *pt.gungor;
      pts.push_back(e);
    }
    emit(nlohmann::json{{"points", pts}}.dump(2) + "\n", a.out);
  } else {
    emit(curve_to_csv(curve, opts.compare_gungor), a.out);
  }
  if (!a.svg.empty()) emit(curve_to_svg(curve, x_label), a.svg);
  return kExitOk;
}

struct ProjectArgs {
  std::string in, out;
};

int run_project(const ProjectArgs& a) {
  const ProjectionProblem prob = problem_from_json(load_json(a.in));
  const ProjectionResult res = solve(prob);
  emit(result_to_json(res).dump(2) + "\n", a.out);
  return res.converged ? kExitOk : kExitNoConvergence;
}

struct LfuncArgs {
  double lt = 0.05, lq = 0.25, lrho = 0.0;
  std::string structure = "singleton";
  double nu_step = 1e-3;
  std::string channels_file, aux_file, out;
  double grid = 0.05;
};

int run_lfunc(const LfuncArgs& a) {
  nlohmann::json j;
  if (!a.channels_file.empty()) {
    const auto cj = load_json(a.channels_file);
    ChannelPair pair(cond_from_json(cj.at("t")), cond_from_json(cj.at("q")));
    const auto axj = load_json(a.aux_file);
    const LResult res =
        l_func(pair, cond_from_json(axj.at("rho")),
               DetCondDist(cond_from_json(axj.at("sigma"))),
               dist_from_json(axj.at("tau")), a.grid);
    j["value"] = res.value;
    j["nu_witness"] = cond_to_json(res.nu);
  } else {
    const BscFamily fam{a.lt, a.lq};
    const AuxiliaryChoice aux = make_bsc_aux(a.structure == "identity"
                                                 ? BscAuxStructure::IdentitySigma
                                                 : BscAuxStructure::SingletonW,
                                             a.lrho, 1);
    const BscLResult res = l_func_bsc(fam.channels(), aux, a.nu_step);
    j["value"] = res.value;
    j["lambda_nu"] = res.lambda_nu;
  }
  emit(j.dump(2) + "\n", a.out);
  return kExitOk;
}

struct TransformArgs {
  std::string point;
  double beta = 0.0;
  int j = 1;
  std::string out;
};

int run_transform(const TransformArgs& a) {
  const RatePoint p = parse_point(a.point);
  const RatePoint img = theorem2_transform(p, a.beta, a.j);
  emit(nlohmann::json{{"r", img.r}, {"alpha", img.alpha}, {"kappa", img.kappa}}
           .dump(2) + "\n",
       a.out);
  return kExitOk;
}

struct SimmonsArgs {
  int n = 4, alphabet = 2;
  std::uint64_t keys = 4, codes = 1, seed = 1;
  std::string out;
};

int run_simulate_simmons(const SimmonsArgs& a) {
  SimmonsParams params{a.n, a.alphabet, a.keys};
  std::string csv = "quantity,value,exact|mc,stderr\n";
  Rational sub_sum = 0, imp_sum = 0;
  for (std::uint64_t c = 0; c < a.codes; ++c) {
    const SimmonsCode code = build_simmons(params, a.seed + c);
    const Rational sub = simmons_substitution_success(code);
    const Rational imp = simmons_impersonation_success(code);
    sub_sum += sub;
    imp_sum += imp;
    csv += "substitution_success," + format_sig(sub.convert_to<double>()) + ",exact,\n";
    csv += "impersonation_success," + format_sig(imp.convert_to<double>()) + ",exact,\n";
  }
  const Rational codes(static_cast<BigInt>(a.codes));
  csv += "mean_substitution_success," +
         format_sig((sub_sum / codes).convert_to<double>()) + ",exact,\n";
  csv += "mean_impersonation_success," +
         format_sig((imp_sum / codes).convert_to<double>()) + ",exact,\n";
  emit(csv, a.out);
  return kExitOk;
}

struct SimCodeArgs {
  std::string preset;
  int n = 2;
  std::uint64_t m_hat = 1, m_tilde = 2, keys = 2, seed = 1;
  std::string tau_counts = "2", sigma_counts = "1,1", rho_counts = "1,0,0,1";
  int sigma_in = 1, sigma_out = 2, rho_in = 2, rho_out = 2;
  std::string lt = "0.25", lq = "0.25";
  int rounds = 1, round = 1;
  std::string method = "exact";
  std::uint64_t samples = 100000;
  std::string out, dump_code;
};

std::vector<int> parse_counts(const std::string& s) {
  std::stringstream ss(s);
  std::string part;
  std::vector<int> v;
  while (std::getline(ss, part, ',')) v.push_back(std::stoi(part));
  return v;
}

int run_simulate_code(SimCodeArgs a) {
  if (a.preset == "ref-n2") {
    a.n = 2;
    a.m_hat = 2;
    a.m_tilde = 1;
    a.keys = 2;
    a.tau_counts = "2";
    a.sigma_counts = "1,1";
    a.sigma_in = 1;
    a.sigma_out = 2;
    a.rho_counts = "1,0,0,1";
    a.rho_in = 2;
    a.rho_out = 2;
    a.lt = "0.25";
    a.lq = "0.25";
    a.rounds = 1;
    a.round = 1;
    a.seed = 2;
  } else if (!a.preset.empty()) {
    throw std::invalid_argument("unknown preset " + a.preset);
  }

  TypeClassParams params;
  params.n = a.n;
  params.m_hat_count = a.m_hat;
  params.m_tilde_count = a.m_tilde;
  params.key_count = a.keys;
  const auto tau_c = parse_counts(a.tau_counts);
  params.tau = NType(a.n, tau_c);
  params.sigma = CondNType(a.n, a.sigma_in, a.sigma_out, parse_counts(a.sigma_counts));
  params.rho = CondNType(a.n, a.rho_in, a.rho_out, parse_counts(a.rho_counts));

  const RationalKernel t = RationalKernel::bsc(parse_decimal(a.lt));
  const RationalKernel q = RationalKernel::bsc(parse_decimal(a.lq));

  const TypeClassCode code = build_typeclass_code(params, a.seed);
  const CodeView view = make_view(code, t, a.rounds);

  std::string csv = "quantity,value,exact|mc,stderr\n";
  if (a.method == "mc") {
    const McEstimate est =
        epsilon_mc(view, t.to_cond_dist(), a.round - 1, a.samples, a.seed);
    csv += "epsilon," + format_sig(est.mean) + ",mc," + format_sig(est.stderr_) + "\n";
  } else {
    const Rational eps = epsilon_exact(view, t, a.round - 1);
    csv += "epsilon," + format_sig(eps.convert_to<double>()) + ",exact,\n";
    const Rational om = omega_exact(view, q, a.round, a.rounds);
    csv += "omega," + format_sig(om.convert_to<double>()) + ",exact,\n";
    csv += "omega_rational," + om.convert_to<std::string>() + ",exact,\n";
  }
  emit(csv, a.out);
  if (!a.dump_code.empty()) emit(code_to_json(code, a.seed).dump(2) + "\n", a.dump_code);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"authcap: authentication capacity inner-bound toolkit"};
  app.require_subcommand(1);
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON config file; flags take precedence");
  app.fallthrough();

  RegionArgs region;
  auto* cmd_region = app.add_subcommand("region", "rate-point containment verdict");
  cmd_region->add_option("--theorem", region.theorem, "1, 3 or gungor")
      ->default_str("3");
  cmd_region->add_option("--lt", region.lt, "flip probability of the main channel");
  cmd_region->add_option("--lq", region.lq, "flip probability of the adversary channel");
  cmd_region->add_option("--j", region.j, "communication rounds")->default_val(1);
  cmd_region->add_option("--point", region.point, "r,alpha,kappa")->required();
  cmd_region->add_option("--channels", region.channels_file, "explicit channel JSON");
  cmd_region->add_option("--aux", region.aux_file, "explicit auxiliary JSON");
  cmd_region->add_option("--rho-step", region.rho_step, "auxiliary search grid step");
  cmd_region->add_option("--nu-step", region.nu_step, "nu search grid step");
  cmd_region->add_option("--grid", region.kt_step, "kappa-tilde grid resolution");
  cmd_region->add_option("--format", region.format, "json or csv");
  cmd_region->add_option("--out", region.out, "output path (default stdout)");

  SweepArgs sweep;
  auto* cmd_sweep = app.add_subcommand("sweep", "boundary curve over an abscissa grid");
  cmd_sweep->add_option("--mode", sweep.mode, "r-alpha, alpha-kappa or alpha-lt");
  cmd_sweep->add_option("--lt", sweep.lt, "main channel flip probability");
  cmd_sweep->add_option("--lq", sweep.lq, "adversary channel flip probability");
  cmd_sweep->add_option("--r", sweep.r, "fixed message rate");
  cmd_sweep->add_option("--kappa", sweep.kappa, "fixed key consumption rate");
  cmd_sweep->add_option("--j", sweep.j, "communication rounds");
  cmd_sweep->add_option("--x-min", sweep.x_min, "abscissa start");
  cmd_sweep->add_option("--x-max", sweep.x_max, "abscissa end");
  cmd_sweep->add_option("--x-step", sweep.x_step, "abscissa step");
  cmd_sweep->add_option("--compare", sweep.compare, "add comparison curve (gungor)");
  cmd_sweep->add_option("--rho-step", sweep.rho_step, "auxiliary search grid step");
  cmd_sweep->add_option("--nu-step", sweep.nu_step, "nu search grid step");
  cmd_sweep->add_option("--format", sweep.format, "csv or json");
  cmd_sweep->add_option("--out", sweep.out, "output path");
  cmd_sweep->add_option("--svg", sweep.svg, "optional SVG plot path");

  ProjectArgs project;
  auto* cmd_project = app.add_subcommand("project", "solve a projection problem");
  cmd_project->add_option("--in", project.in, "problem JSON")->required();
  cmd_project->add_option("--out", project.out, "output path");

  LfuncArgs lfunc;
  auto* cmd_lfunc = app.add_subcommand("lfunc", "channel-derived authentication budget");
  cmd_lfunc->add_option("--lt", lfunc.lt, "main channel flip probability");
  cmd_lfunc->add_option("--lq", lfunc.lq, "adversary channel flip probability");
  cmd_lfunc->add_option("--lrho", lfunc.lrho, "auxiliary input flip probability");
  cmd_lfunc->add_option("--structure", lfunc.structure, "singleton or identity");
  cmd_lfunc->add_option("--nu-step", lfunc.nu_step, "nu grid step");
  cmd_lfunc->add_option("--channels", lfunc.channels_file, "explicit channel JSON");
  cmd_lfunc->add_option("--aux", lfunc.aux_file, "explicit auxiliary JSON");
  cmd_lfunc->add_option("--grid", lfunc.grid, "general-mode nu grid step");
  cmd_lfunc->add_option("--out", lfunc.out, "output path");

  TransformArgs transform;
  auto* cmd_transform = app.add_subcommand("transform", "keyed-subset rate transform");
  cmd_transform->add_option("--point", transform.point, "r,alpha,kappa")->required();
  cmd_transform->add_option("--beta", transform.beta, "rate traded for authentication")
      ->required();
  cmd_transform->add_option("--j", transform.j, "communication rounds")->default_val(1);
  cmd_transform->add_option("--out", transform.out, "output path");

  SimmonsArgs simmons;
  auto* cmd_simmons =
      app.add_subcommand("simulate-simmons", "keyed-subset scheme attack probabilities");
  cmd_simmons->add_option("--n", simmons.n, "block length");
  cmd_simmons->add_option("--alphabet", simmons.alphabet, "input alphabet size");
  cmd_simmons->add_option("--keys", simmons.keys, "key count (perfect square)");
  cmd_simmons->add_option("--codes", simmons.codes, "number of seeded codes");
  cmd_simmons->add_option("--seed", simmons.seed, "base seed");
  cmd_simmons->add_option("--out", simmons.out, "output path");

  SimCodeArgs simcode;
  auto* cmd_simcode =
      app.add_subcommand("simulate-code", "exact operational quantities of a layered code");
  cmd_simcode->add_option("--preset", simcode.preset, "named instance (ref-n2)");
  cmd_simcode->add_option("--n", simcode.n, "block length");
  cmd_simcode->add_option("--mhat", simcode.m_hat, "outer message count");
  cmd_simcode->add_option("--mtilde", simcode.m_tilde, "inner message count");
  cmd_simcode->add_option("--keys", simcode.keys, "key count");
  cmd_simcode->add_option("--seed", simcode.seed, "seed");
  cmd_simcode->add_option("--tau-counts", simcode.tau_counts, "W-type counts");
  cmd_simcode->add_option("--sigma-counts", simcode.sigma_counts, "U|W type counts");
  cmd_simcode->add_option("--sigma-in", simcode.sigma_in, "sigma conditioning alphabet");
  cmd_simcode->add_option("--sigma-out", simcode.sigma_out, "sigma output alphabet");
  cmd_simcode->add_option("--rho-counts", simcode.rho_counts, "X|U type counts");
  cmd_simcode->add_option("--rho-in", simcode.rho_in, "rho conditioning alphabet");
  cmd_simcode->add_option("--rho-out", simcode.rho_out, "rho output alphabet");
  cmd_simcode->add_option("--lt", simcode.lt, "main channel flip (decimal, exact)");
  cmd_simcode->add_option("--lq", simcode.lq, "adversary flip (decimal, exact)");
  cmd_simcode->add_option("--rounds", simcode.rounds, "total rounds j");
  cmd_simcode->add_option("--round", simcode.round, "attacked round i");
  cmd_simcode->add_option("--method", simcode.method, "exact or mc");
  cmd_simcode->add_option("--samples", simcode.samples, "mc sample count");
  cmd_simcode->add_option("--out", simcode.out, "output path");
  cmd_simcode->add_option("--dump-code", simcode.dump_code, "serialize codebook JSON");

  try {
    app.parse(argc, argv);
    if (*cmd_region) return run_region(region);
    if (*cmd_sweep) return run_sweep(sweep);
    if (*cmd_project) return run_project(project);
    if (*cmd_lfunc) return run_lfunc(lfunc);
    if (*cmd_transform) return run_transform(transform);
    if (*cmd_simmons) return run_simulate_simmons(simmons);
    if (*cmd_simcode) return run_simulate_code(simcode);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return kExitOk;  // --help
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const authcap::BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
