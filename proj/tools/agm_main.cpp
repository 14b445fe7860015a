// agm: command-line front end for the ncagm shared library.
//
// Subcommands:
//   partitions  lattice table with Moebius values for one d
//   products    P_d / restricted / full sums on a JSON family, cross-checked
//   check       inequality checkers on a family or random input (JSONL out)
//   ensemble    Monte Carlo experiments over random-matrix ensembles
//
// Exit codes: 0 all asserted verdicts pass (hypotheses-unmet counts
// separately), 1 failed verdict, 2 usage error, 3 precondition/resource/
// numeric failure.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncagm/ncagm.h"

namespace {

using nlohmann::json;

int status_to_exit(ncagm_status st) {
  switch (st) {
    case NCAGM_OK: return 0;
    case NCAGM_ERR_INVALID_ARGUMENT:
    case NCAGM_ERR_PARSE: return 2;
    default: return 3;
  }
}

int report_error(ncagm_status st) {
  std::cerr << "agm: " << ncagm_status_name(st) << ": " << ncagm_last_error() << "\n";
  return status_to_exit(st);
}

std::string read_text_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CLI::ValidationError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Atomic report write: temporary file in place, then rename.
bool write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) return false;
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) return false;
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0) {
    std::remove(tmp.c_str());
    return false;
  }
  return true;
}

struct OwnedString {
  char* s = nullptr;
  ~OwnedString() { ncagm_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

int exit_from_counts(const json& report) {
  if (report.contains("counts") && report.at("counts").value("fail", 0) > 0) return 1;
  return 0;
}

int write_out_and_finish(const json& report, const std::string& out_path) {
  if (!out_path.empty()) {
    if (!write_file_atomic(out_path, report.dump(2) + "\n")) {
      std::cerr << "agm: io-error: cannot write " << out_path << "\n";
      return 3;
    }
  }
  return exit_from_counts(report);
}

// "n=6" style tokens into a JSON params object; numeric values when they
// parse as numbers, strings otherwise (sigma=1,2|3).
json params_from_tokens(const std::vector<std::string>& tokens) {
  json params = json::object();
  for (const auto& tok : tokens) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0)
      throw CLI::ValidationError("expected key=value, got '" + tok + "'");
    const std::string key = tok.substr(0, eq);
    const std::string val = tok.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double num = std::stod(val, &used);
      if (used == val.size()) {
        if (num == static_cast<long long>(num) && key != "t" && key != "p")
          params[key] = static_cast<long long>(num);
        else
          params[key] = num;
        continue;
      }
    } catch (const std::exception&) {
    }
    params[key] = val;
  }
  return params;
}

int cmd_partitions(int d, const std::string& out_path, bool as_json) {
  OwnedString rep;
  if (const auto st = ncagm_run_partitions(d, &rep.s)) return report_error(st);
  const json report = json::parse(rep.str());
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::printf("%-28s %-7s %s\n", "partition", "blocks", "mobius");
    for (const auto& row : report.at("rows"))
      std::printf("%-28s %-7d %lld\n", row.at("partition").get<std::string>().c_str(),
                  row.at("blocks").get<int>(), static_cast<long long>(row.at("mobius").get<std::int64_t>()));
    std::printf("%zu partitions; sum |mobius| = %lld\n", report.at("rows").size(),
                static_cast<long long>(report.at("sum_abs_mobius").get<std::int64_t>()));
  }
  if (!out_path.empty() && !write_file_atomic(out_path, report.dump(2) + "\n")) {
    std::cerr << "agm: io-error: cannot write " << out_path << "\n";
    return 3;
  }
  return 0;
}

int cmd_products(const std::string& family_path, int d, const std::string& sigma,
                 long long max_terms, const std::string& out_path) {
  json config;
  config["family"] = json::parse(read_text_file(family_path));
  if (d > 0) config["d"] = d;
  if (!sigma.empty()) config["sigma"] = sigma;
  if (max_terms > 0) config["max_terms"] = max_terms;
  OwnedString rep;
  if (const auto st = ncagm_run_products(config.dump().c_str(), &rep.s)) return report_error(st);
  const json report = json::parse(rep.str());
  std::cout << report.dump(2) << "\n";
  return write_out_and_finish(report, out_path);
}

int cmd_check(const std::string& checker, const std::string& family_path, const std::string& a_path,
              const std::string& b_path, bool random_input, const std::vector<std::string>& kv,
              double tol, const std::string& out_path, const std::string& csv_path) {
  json config;
  config["checker"] = checker;
  if (tol >= 0) config["tol"] = tol;
  const json params = params_from_tokens(kv);
  if (!params.empty()) config["params"] = params;
  if (!family_path.empty()) {
    config["family"] = json::parse(read_text_file(family_path));
  } else if (!a_path.empty()) {
    config["a"] = json::parse(read_text_file(a_path));
    if (b_path.empty()) throw CLI::ValidationError("--a needs --b");
    config["b"] = json::parse(read_text_file(b_path));
  } else if (!random_input) {
    throw CLI::ValidationError("check: give --family/--a or --random with key=value parameters");
  }
  OwnedString rep;
  if (const auto st = ncagm_run_check(config.dump().c_str(), &rep.s)) return report_error(st);
  const json report = json::parse(rep.str());
  for (const auto& v : report.at("verdicts")) std::cout << v.dump() << "\n";
  const auto& counts = report.at("counts");
  std::cerr << "check " << checker << ": " << counts.at("pass").get<int>() << " pass, "
            << counts.at("fail").get<int>() << " fail, " << counts.at("unmet").get<int>()
            << " hypotheses-unmet\n";
  if (!csv_path.empty()) {
    std::string csv = "name,state,lhs,rhs,margin,tol,scale,digest\n";
    for (const auto& v : report.at("verdicts")) {
      char line[512];
      std::snprintf(line, sizeof line, "%s,%s,%.17g,%.17g,%.17g,%.17g,%.17g,%s\n",
                    v.at("name").get<std::string>().c_str(), v.at("state").get<std::string>().c_str(),
                    v.at("lhs").get<double>(), v.at("rhs").get<double>(), v.at("margin").get<double>(),
                    v.at("tol").get<double>(), v.at("scale").get<double>(),
                    v.at("digest").get<std::string>().c_str());
      csv += line;
    }
    if (!write_file_atomic(csv_path, csv)) {
      std::cerr << "agm: io-error: cannot write " << csv_path << "\n";
      return 3;
    }
  }
  return write_out_and_finish(report, out_path);
}

int cmd_ensemble(const json& config, const std::string& out_path) {
  const auto start = std::chrono::steady_clock::now();
  OwnedString rep;
  if (const auto st = ncagm_run_ensemble(config.dump().c_str(), &rep.s)) return report_error(st);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const json report = json::parse(rep.str());
  std::cout << report.dump(2) << "\n";
  // Wall time goes to stderr, not into the report: identical configs must
  // produce byte-identical report files.
  std::fprintf(stderr, "ensemble %s: %.2f s\n", config.value("experiment", "deviation").c_str(), secs);
  return write_out_and_finish(report, out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"noncommutative AGM toolkit"};
  app.require_subcommand(1);

  // partitions
  auto* sub_partitions = app.add_subcommand("partitions", "enumerate a partition lattice with Moebius values");
  int part_d = 4;
  std::string part_out;
  bool part_json = false;
  sub_partitions->add_option("--d", part_d, "ground-set size")->required();
  sub_partitions->add_option("--out", part_out, "write the JSON report here");
  sub_partitions->add_flag("--json", part_json, "print the JSON report instead of the table");

  // products
  auto* sub_products = app.add_subcommand("products", "symmetric products on a JSON family");
  std::string prod_family, prod_sigma, prod_out;
  int prod_d = 0;
  long long prod_max_terms = 0;
  sub_products->add_option("--family", prod_family, "family JSON file ('-' for stdin)")->required();
  sub_products->add_option("--d", prod_d, "product length for P_d");
  sub_products->add_option("--sigma", prod_sigma, "partition in '1,2|3' form");
  sub_products->add_option("--max-terms", prod_max_terms, "override the enumeration term cap");
  sub_products->add_option("--out", prod_out, "write the JSON report here");

  // check
  auto* sub_check = app.add_subcommand("check", "run an inequality checker; verdicts as JSON lines");
  std::string chk_name, chk_family, chk_a, chk_b, chk_out, chk_csv;
  std::vector<std::string> chk_params;
  bool chk_random = false;
  double chk_tol = -1;
  sub_check->add_option("checker", chk_name,
                        "norm-agm | binomial-identity | order-agm | order-agm-d3 | d3-closed-form | "
                        "cross-term | norm-chain | partition-norm | pd-two-sided")
      ->required();
  sub_check->add_option("params", chk_params, "key=value parameters (n, d, m, seed, trials, t, sigma)");
  sub_check->add_flag("--random", chk_random, "generate random input per trial");
  sub_check->add_option("--family", chk_family, "family JSON file ('-' for stdin)");
  sub_check->add_option("--a", chk_a, "matrix JSON file (cross-term)");
  sub_check->add_option("--b", chk_b, "matrix JSON file (cross-term)");
  sub_check->add_option("--tol", chk_tol, "tolerance override");
  sub_check->add_option("--out", chk_out, "write the JSON report here");
  sub_check->add_option("--csv", chk_csv, "write verdicts as CSV here");

  // ensemble
  auto* sub_ensemble = app.add_subcommand("ensemble", "Monte Carlo ensemble experiment");
  std::string ens_kind = "wishart", ens_out, ens_experiment = "deviation";
  int ens_d = 3, ens_m = 64, ens_n = 48, ens_dprod = 2, ens_samples = 400;
  double ens_p = 6.0;
  std::uint64_t ens_seed = 1;
  bool ens_split = false;
  sub_ensemble->add_option("--kind", ens_kind, "wishart | logconcave-cube | logconcave-ball");
  sub_ensemble->add_option("--d", ens_d, "matrix dimension");
  sub_ensemble->add_option("--m", ens_m, "Wishart inner dimension");
  sub_ensemble->add_option("--n", ens_n, "family size");
  sub_ensemble->add_option("--p", ens_p, "moment order");
  sub_ensemble->add_option("--dprod", ens_dprod, "product length");
  sub_ensemble->add_option("--samples", ens_samples, "Monte Carlo replicates");
  sub_ensemble->add_option("--seed", ens_seed, "RNG seed");
  sub_ensemble->add_flag("--split", ens_split, "estimate the mean from the first half of the stream");
  sub_ensemble->add_option("--experiment", ens_experiment, "deviation | centering | moments");
  sub_ensemble->add_option("--out", ens_out, "write the JSON report here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return 2;
  }

  try {
    if (*sub_partitions) return cmd_partitions(part_d, part_out, part_json);
    if (*sub_products) {
      if ((prod_d > 0) == !prod_sigma.empty())
        throw CLI::ValidationError("products: give exactly one of --d and --sigma");
      return cmd_products(prod_family, prod_d, prod_sigma, prod_max_terms, prod_out);
    }
    if (*sub_check)
      return cmd_check(chk_name, chk_family, chk_a, chk_b, chk_random, chk_params, chk_tol, chk_out, chk_csv);
    if (*sub_ensemble) {
      json config{{"kind", ens_kind},       {"d", ens_d},       {"m", ens_m},
                  {"n", ens_n},             {"p", ens_p},       {"dprod", ens_dprod},
                  {"samples", ens_samples}, {"seed", ens_seed}, {"split", ens_split},
                  {"experiment", ens_experiment}};
      return cmd_ensemble(config, ens_out);
    }
  } catch (const CLI::ValidationError& e) {
    std::cerr << "agm: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "agm: parse-error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
