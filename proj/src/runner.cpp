#include "runner.hpp"

#include <cmath>

#include "checks.hpp"
#include "ensembles.hpp"
#include "products.hpp"
#include "random_families.hpp"
#include "report.hpp"

namespace ncagm {

namespace {

nlohmann::json verdict_array_report(const char* kind, nlohmann::json config,
                                    const std::vector<CheckVerdict>& verdicts) {
  nlohmann::json vj = nlohmann::json::array();
  int passed = 0, failed = 0, unmet = 0;
  for (const auto& v : verdicts) {
    vj.push_back(v.to_json());
    if (v.state == VerdictState::pass) ++passed;
    else if (v.state == VerdictState::fail) ++failed;
    else ++unmet;
  }
  return nlohmann::json{{"schema", "report_v1"},
                        {"kind", kind},
                        {"config", std::move(config)},
                        {"verdicts", vj},
                        {"counts", {{"pass", passed}, {"fail", failed}, {"unmet", unmet}}}};
}

struct CheckParams {
  int n = 6, d = 3, m = 4;
  std::uint64_t seed = 1;
  int trials = 100;
  double t = 0;          // 0: draw per trial
  std::string sigma;     // empty: draw per trial
};

CheckParams parse_params(const nlohmann::json& config) {
  CheckParams p;
  if (!config.contains("params")) return p;
  const auto& j = config.at("params");
  if (j.contains("n")) p.n = j.at("n").get<int>();
  if (j.contains("d")) p.d = j.at("d").get<int>();
  if (j.contains("m")) p.m = j.at("m").get<int>();
  if (j.contains("seed")) p.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("trials")) p.trials = j.at("trials").get<int>();
  if (j.contains("t")) p.t = j.at("t").get<double>();
  if (j.contains("sigma")) p.sigma = j.at("sigma").get<std::string>();
  if (p.n < 1 || p.m < 1 || p.d < 1) throw_invalid("check: n, d, m must be positive");
  if (p.trials < 1) throw_invalid("check: trials must be >= 1");
  return p;
}

}  // namespace

nlohmann::json run_partitions_table(int d) {
  const auto lattice = enumerate_partitions(d);
  nlohmann::json rows = nlohmann::json::array();
  std::int64_t abs_sum = 0;
  for (const auto& pi : lattice) {
    const std::int64_t mu = mobius_zero_to(pi);
    abs_sum += std::abs(mu);
    rows.push_back(nlohmann::json{{"partition", pi.to_text()}, {"blocks", pi.block_count()}, {"mobius", mu}});
  }
  return nlohmann::json{{"schema", "report_v1"},
                        {"kind", "partitions"},
                        {"config", {{"d", d}}},
                        {"rows", rows},
                        {"count", lattice.size()},
                        {"sum_abs_mobius", abs_sum}};
}

nlohmann::json run_products(const nlohmann::json& config) {
  if (!config.contains("family")) throw_invalid("products: config needs a family");
  const OperatorFamily fam = OperatorFamily::from_json(config.at("family"));
  const bool has_d = config.contains("d") && !config.at("d").is_null();
  const bool has_sigma = config.contains("sigma") && !config.at("sigma").is_null();
  if (has_d == has_sigma) throw_invalid("products: give exactly one of d or sigma");
  ProductLimits limits;
  if (config.contains("max_terms")) limits.max_terms = config.at("max_terms").get<long long>();

  nlohmann::json residuals = nlohmann::json::object();
  nlohmann::json out{{"schema", "report_v1"}, {"kind", "products"}};
  nlohmann::json cfg{{"n", fam.size()}, {"m", fam.dim()}};

  // Each enumeration-based route is included when it fits its caps; the scan
  // route always runs. Residuals cover every computed pair.
  std::vector<std::pair<std::string, Matrix>> routes;
  auto attempt = [&](const char* name, auto&& compute) {
    try {
      routes.emplace_back(name, compute());
    } catch (const Error& e) {
      if (e.code() != ErrorCode::resource_limit) throw;
    }
  };

  if (has_d) {
    const int d = config.at("d").get<int>();
    cfg["d"] = d;
    MobiusCache cache(d);
    attempt("bruteforce", [&] { return p_d_bruteforce(fam, d, limits).mat(); });
    attempt("mobius", [&] { return p_d_via_mobius(fam, d, cache, limits).mat(); });
    routes.emplace_back("scan", p_d_scan(fam, d, cache, limits).mat());
  } else {
    const SetPartition sigma = SetPartition::parse(config.at("sigma").get<std::string>());
    cfg["sigma"] = sigma.to_text();
    attempt("direct", [&] { return full_sum_direct(fam, sigma, limits); });
    attempt("embedded", [&] { return full_sum_embedded(fam, sigma, limits); });
    attempt("restricted-aggregate", [&] {
      // [sigma] must also equal the sum of the restricted sums over the
      // coarsenings of sigma.
      Matrix agg(fam.dim());
      for (const auto& tau : coarsenings_of(sigma)) agg += restricted_sum(fam, tau, limits);
      return agg;
    });
    routes.emplace_back("scan", full_sum_scan(fam, sigma, limits));
    try {
      out["restricted"] = matrix_to_json(restricted_sum(fam, sigma, limits));
    } catch (const Error& e) {
      if (e.code() != ErrorCode::resource_limit) throw;
    }
  }

  const double scale = std::max(1.0, routes.front().second.frobenius_norm());
  nlohmann::json algos = nlohmann::json::array();
  for (const auto& [name, value] : routes) algos.push_back(name);
  for (std::size_t i = 0; i < routes.size(); ++i)
    for (std::size_t j = i + 1; j < routes.size(); ++j)
      residuals[routes[i].first + "_vs_" + routes[j].first] =
          (routes[i].second - routes[j].second).frobenius_norm() / scale;
  out["matrix"] = matrix_to_json(routes.front().second);
  out["algorithms"] = algos;
  out["config"] = cfg;
  out["residuals"] = residuals;
  return out;
}

nlohmann::json run_check(const nlohmann::json& config) {
  const std::string checker = config.value("checker", "");
  if (checker.empty()) throw_invalid("check: config needs a checker name");
  const double tol = config.value("tol", kDefaultCheckTol);
  const CheckParams prm = parse_params(config);

  // Explicit-input mode: one verdict on the supplied operands.
  if (config.contains("family") || config.contains("a")) {
    CheckVerdict v;
    if (checker == "cross-term") {
      if (!config.contains("a") || !config.contains("b"))
        throw_invalid("check: cross-term needs matrices a and b");
      const Matrix a = matrix_from_json(config.at("a"));
      const Matrix b = matrix_from_json(config.at("b"));
      v = check_cross_term(a, b, prm.t > 0 ? prm.t : 1.0, tol);
    } else {
      const OperatorFamily fam = OperatorFamily::from_json(config.at("family"));
      if (checker == "norm-agm") v = check_norm_agm(fam, prm.d, tol);
      else if (checker == "binomial-identity") v = check_binomial_identity(fam, prm.d, tol);
      else if (checker == "order-agm") v = check_order_agm(fam, prm.d, tol);
      else if (checker == "order-agm-d3") v = check_order_agm_d3(fam, tol);
      else if (checker == "d3-closed-form") v = check_d3_closed_form(fam, tol);
      else if (checker == "norm-chain") v = check_norm_chain(fam, tol);
      else if (checker == "partition-norm") {
        if (prm.sigma.empty()) throw_invalid("check: partition-norm needs sigma");
        v = check_partition_norm(fam, SetPartition::parse(prm.sigma), tol);
      } else if (checker == "pd-two-sided") v = check_pd_two_sided(fam, prm.d, tol);
      else throw_invalid("check: unknown checker '" + checker + "'");
    }
    nlohmann::json cfg = config;
    return verdict_array_report("check", std::move(cfg), {v});
  }

  // Randomized suite: independently seeded trials.
  std::vector<CheckVerdict> verdicts(static_cast<std::size_t>(prm.trials));
  parallel_for(static_cast<std::size_t>(prm.trials), [&](std::size_t trial) {
    CounterRng rng(prm.seed, 0x636865636bULL, trial);
    CheckVerdict v;
    if (checker == "norm-agm") {
      v = check_norm_agm(random_psd_family(prm.n, prm.m, rng), prm.d, tol);
    } else if (checker == "binomial-identity") {
      v = check_binomial_identity(random_sum_constrained_family(prm.n, prm.m, rng), prm.d, tol);
    } else if (checker == "order-agm") {
      v = check_order_agm(random_order_agm_family(prm.n, prm.d, prm.m, rng), prm.d, tol);
    } else if (checker == "order-agm-d3") {
      v = check_order_agm_d3(random_positive_diagonal_normalized(prm.n, prm.m, rng), tol);
    } else if (checker == "d3-closed-form") {
      v = check_d3_closed_form(random_sum_constrained_family(prm.n, prm.m, rng), tol);
    } else if (checker == "cross-term") {
      const Matrix a = random_complex_matrix(prm.m, rng);
      const Matrix b = random_complex_matrix(prm.m, rng);
      const double t = prm.t > 0 ? prm.t : rng.uniform_in(0.1, 10.0);
      v = check_cross_term(a, b, t, tol);
    } else if (checker == "norm-chain") {
      v = check_norm_chain(random_sum_constrained_family(prm.n, prm.m, rng), tol);
    } else if (checker == "partition-norm") {
      const OperatorFamily fam = random_hermitian_family(prm.n, prm.m, rng);
      const SetPartition sigma =
          prm.sigma.empty() ? random_partition(prm.d, rng) : SetPartition::parse(prm.sigma);
      v = check_partition_norm(fam, sigma, tol);
    } else if (checker == "pd-two-sided") {
      v = check_pd_two_sided(random_centered_family(prm.n, prm.m, rng, 0.5), prm.d, tol);
    } else {
      throw_invalid("check: unknown checker '" + checker + "'");
    }
    verdicts[trial] = std::move(v);
  });

  nlohmann::json cfg{{"checker", checker},
                     {"tol", tol},
                     {"params",
                      {{"n", prm.n}, {"d", prm.d}, {"m", prm.m}, {"seed", prm.seed},
                       {"trials", prm.trials}, {"t", prm.t}, {"sigma", prm.sigma}}}};
  return verdict_array_report("check", std::move(cfg), verdicts);
}

nlohmann::json run_ensemble(const nlohmann::json& config) {
  const EnsembleSpec spec = EnsembleSpec::from_json(config);
  const std::string experiment = config.value("experiment", "deviation");
  if (experiment == "deviation") {
    const int d_prod = config.value("dprod", 2);
    return run_deviation_experiment(spec, d_prod);
  }
  if (experiment == "centering") return run_centering_experiment(spec);
  if (experiment == "moments") return run_moment_experiment(spec);
  throw_invalid("ensemble: unknown experiment '" + experiment + "'");
}

}  // namespace ncagm
