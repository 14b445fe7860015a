#pragma once

#include <json.hpp>

namespace ncagm {

/// High-level entry points behind the CLI and the C API. Each takes a JSON
/// config and returns a report_v1 document; failures surface as ncagm::Error.

/// The lattice table for one d: every partition with its block count and
/// Moebius value from the bottom, plus the |mu| column sum.
nlohmann::json run_partitions_table(int d);

/// Products run on an explicit family. With "d": P_d by every applicable
/// algorithm plus cross-residuals. With "sigma": the restricted and full sums
/// by every route plus cross-residuals.
/// config: {"family": <family json>, "d": int} or {"family": ..., "sigma": "1,2|3"}
nlohmann::json run_products(const nlohmann::json& config);

/// Inequality checkers, on an explicit family or on generated random input.
/// config: {"checker": name, "tol"?: real,
///          "family"?: <family json>, "a"?: <matrix>, "b"?: <matrix>,
///          "params"?: {"n","d","m","seed","trials","t","sigma"}}
nlohmann::json run_check(const nlohmann::json& config);

/// Monte Carlo experiment over a random-matrix ensemble.
/// config: ensemble spec fields plus {"dprod": int, "experiment": "deviation"|"centering"|"moments"}
nlohmann::json run_ensemble(const nlohmann::json& config);

}  // namespace ncagm
