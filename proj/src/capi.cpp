#include "ncagm/ncagm.h"

#include <algorithm>
#include <cstring>
#include <new>
#include <string>

#include "checks.hpp"
#include "ensembles.hpp"
#include "family.hpp"
#include "partition.hpp"
#include "products.hpp"
#include "runner.hpp"

using namespace ncagm;

struct ncagm_partition {
  SetPartition p;
};
struct ncagm_mobius_cache {
  MobiusCache c;
};
// Holds a general square complex matrix; operations that need Hermitian input
// check the anti-Hermitian drift first.
struct ncagm_matrix {
  Matrix a;
};
struct ncagm_family {
  OperatorFamily f;
};

namespace {

thread_local std::string g_last_error = "";

ncagm_status code_to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return NCAGM_ERR_INVALID_ARGUMENT;
    case ErrorCode::order_violation: return NCAGM_ERR_ORDER_VIOLATION;
    case ErrorCode::precondition: return NCAGM_ERR_PRECONDITION;
    case ErrorCode::resource_limit: return NCAGM_ERR_RESOURCE_LIMIT;
    case ErrorCode::numeric_failure: return NCAGM_ERR_NUMERIC;
    case ErrorCode::parse_error: return NCAGM_ERR_PARSE;
    case ErrorCode::io_error: return NCAGM_ERR_IO;
  }
  return NCAGM_ERR_INTERNAL;
}

/// Runs fn, translating C++ failures into status codes + last-error text.
template <typename Fn>
ncagm_status guarded(Fn&& fn) {
  try {
    fn();
    return NCAGM_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return code_to_status(e.code());
  } catch (const nlohmann::json::exception& e) {
    g_last_error = e.what();
    return NCAGM_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return NCAGM_ERR_RESOURCE_LIMIT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return NCAGM_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return NCAGM_ERR_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

ncagm_status require(bool cond, const char* msg) {
  if (cond) return NCAGM_OK;
  g_last_error = msg;
  return NCAGM_ERR_INVALID_ARGUMENT;
}

nlohmann::json parse_json_arg(const char* text, const char* what) {
  if (text == nullptr) throw Error(ErrorCode::invalid_argument, std::string(what) + ": null JSON");
  return nlohmann::json::parse(text);
}

HermitianMatrix as_hermitian(const Matrix& a, const char* what) {
  if (a.anti_hermitian_drift() > 1e-12 * std::max(1.0, a.frobenius_norm()))
    throw Error(ErrorCode::precondition, std::string(what) + ": matrix is not Hermitian");
  return HermitianMatrix(a);
}

}  // namespace

extern "C" {

const char* ncagm_status_name(ncagm_status s) {
  switch (s) {
    case NCAGM_OK: return "ok";
    case NCAGM_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case NCAGM_ERR_ORDER_VIOLATION: return "order-violation";
    case NCAGM_ERR_PRECONDITION: return "precondition";
    case NCAGM_ERR_RESOURCE_LIMIT: return "resource-limit";
    case NCAGM_ERR_NUMERIC: return "numeric-failure";
    case NCAGM_ERR_PARSE: return "parse-error";
    case NCAGM_ERR_IO: return "io-error";
    case NCAGM_ERR_INTERNAL: return "internal-error";
  }
  return "?";
}

const char* ncagm_last_error(void) { return g_last_error.c_str(); }

void ncagm_string_free(char* s) { delete[] s; }

ncagm_status ncagm_partition_parse(const char* text, ncagm_partition** out) {
  if (auto st = require(text && out, "ncagm_partition_parse: null argument")) return st;
  return guarded([&] { *out = new ncagm_partition{SetPartition::parse(text)}; });
}

ncagm_status ncagm_partition_from_rgs(const int* rgs, int d, ncagm_partition** out) {
  if (auto st = require(rgs && out && d >= 1, "ncagm_partition_from_rgs: null argument or d < 1")) return st;
  return guarded([&] {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
      if (rgs[k] < 0 || rgs[k] > 255) throw_invalid("partition: rgs label out of range");
      v[static_cast<std::size_t>(k)] = static_cast<std::uint8_t>(rgs[k]);
    }
    *out = new ncagm_partition{SetPartition(std::move(v))};
  });
}

ncagm_status ncagm_partition_format(const ncagm_partition* p, char** out) {
  if (auto st = require(p && out, "ncagm_partition_format: null argument")) return st;
  return guarded([&] { *out = dup_string(p->p.to_text()); });
}

int ncagm_partition_ground_size(const ncagm_partition* p) { return p ? p->p.ground_size() : 0; }

int ncagm_partition_block_count(const ncagm_partition* p) { return p ? p->p.block_count() : 0; }

void ncagm_partition_free(ncagm_partition* p) { delete p; }

ncagm_status ncagm_enumerate_partitions(int d, ncagm_partition*** out_list, size_t* out_len) {
  if (auto st = require(out_list && out_len, "ncagm_enumerate_partitions: null argument")) return st;
  return guarded([&] {
    const auto lattice = enumerate_partitions(d);
    ncagm_partition** list = new ncagm_partition*[lattice.size()];
    for (std::size_t i = 0; i < lattice.size(); ++i) list[i] = new ncagm_partition{lattice[i]};
    *out_list = list;
    *out_len = lattice.size();
  });
}

void ncagm_partition_list_free(ncagm_partition** list, size_t len) {
  if (!list) return;
  for (size_t i = 0; i < len; ++i) delete list[i];
  delete[] list;
}

ncagm_status ncagm_refines_leq(const ncagm_partition* sigma, const ncagm_partition* pi, int* out) {
  if (auto st = require(sigma && pi && out, "ncagm_refines_leq: null argument")) return st;
  return guarded([&] { *out = refines_leq(sigma->p, pi->p) ? 1 : 0; });
}

ncagm_status ncagm_mobius_zero_to(const ncagm_partition* pi, int64_t* out) {
  if (auto st = require(pi && out, "ncagm_mobius_zero_to: null argument")) return st;
  return guarded([&] { *out = mobius_zero_to(pi->p); });
}

ncagm_status ncagm_mobius_cache_create(int d, ncagm_mobius_cache** out) {
  if (auto st = require(out != nullptr, "ncagm_mobius_cache_create: null argument")) return st;
  return guarded([&] { *out = new ncagm_mobius_cache{MobiusCache(d)}; });
}

void ncagm_mobius_cache_free(ncagm_mobius_cache* c) { delete c; }

ncagm_status ncagm_mobius(ncagm_mobius_cache* c, const ncagm_partition* pi, const ncagm_partition* sigma,
                          int64_t* out) {
  if (auto st = require(c && pi && sigma && out, "ncagm_mobius: null argument")) return st;
  return guarded([&] { *out = c->c.value(pi->p, sigma->p); });
}

ncagm_status ncagm_matrix_create(int m, const double* re, const double* im, ncagm_matrix** out) {
  if (auto st = require(re && out && m >= 1, "ncagm_matrix_create: null argument or m < 1")) return st;
  return guarded([&] {
    Matrix a(m);
    for (int r = 0; r < m; ++r)
      for (int c = 0; c < m; ++c) {
        const std::size_t k = static_cast<std::size_t>(r) * m + c;
        a(r, c) = cplx(re[k], im ? im[k] : 0.0);
      }
    *out = new ncagm_matrix{HermitianMatrix(a).mat()};
  });
}

int ncagm_matrix_dim(const ncagm_matrix* a) { return a ? a->a.dim() : 0; }

ncagm_status ncagm_matrix_entries(const ncagm_matrix* a, double* re, double* im) {
  if (auto st = require(a != nullptr, "ncagm_matrix_entries: null matrix")) return st;
  const int m = a->a.dim();
  for (int r = 0; r < m; ++r)
    for (int c = 0; c < m; ++c) {
      const std::size_t k = static_cast<std::size_t>(r) * m + c;
      if (re) re[k] = a->a(r, c).real();
      if (im) im[k] = a->a(r, c).imag();
    }
  return NCAGM_OK;
}

ncagm_status ncagm_matrix_to_json(const ncagm_matrix* a, char** out) {
  if (auto st = require(a && out, "ncagm_matrix_to_json: null argument")) return st;
  return guarded([&] { *out = dup_string(matrix_to_json(a->a).dump()); });
}

void ncagm_matrix_free(ncagm_matrix* a) { delete a; }

ncagm_status ncagm_family_from_json(const char* json, ncagm_family** out) {
  if (auto st = require(json && out, "ncagm_family_from_json: null argument")) return st;
  return guarded([&] {
    *out = new ncagm_family{OperatorFamily::from_json(parse_json_arg(json, "family"))};
  });
}

ncagm_status ncagm_family_create(const ncagm_matrix* const* members, int n, ncagm_family** out) {
  if (auto st = require(members && out && n >= 1, "ncagm_family_create: null argument or n < 1")) return st;
  return guarded([&] {
    std::vector<HermitianMatrix> xs;
    xs.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      if (!members[i]) throw_invalid("family: null member");
      xs.push_back(as_hermitian(members[i]->a, "ncagm_family_create"));
    }
    *out = new ncagm_family{OperatorFamily(std::move(xs))};
  });
}

int ncagm_family_size(const ncagm_family* f) { return f ? f->f.size() : 0; }

int ncagm_family_dim(const ncagm_family* f) { return f ? f->f.dim() : 0; }

ncagm_status ncagm_family_to_json(const ncagm_family* f, char** out) {
  if (auto st = require(f && out, "ncagm_family_to_json: null argument")) return st;
  return guarded([&] { *out = dup_string(f->f.to_json().dump()); });
}

void ncagm_family_free(ncagm_family* f) { delete f; }

ncagm_status ncagm_eigenvalues(const ncagm_matrix* a, double* out) {
  if (auto st = require(a && out, "ncagm_eigenvalues: null argument")) return st;
  return guarded([&] {
    const auto es = eig_hermitian(as_hermitian(a->a, "ncagm_eigenvalues"));
    for (std::size_t k = 0; k < es.values.size(); ++k) out[k] = es.values[k];
  });
}

ncagm_status ncagm_op_norm(const ncagm_matrix* a, double* out) {
  if (auto st = require(a && out, "ncagm_op_norm: null argument")) return st;
  return guarded([&] { *out = op_norm_general(a->a); });
}

ncagm_status ncagm_loewner_leq(const ncagm_matrix* a, const ncagm_matrix* b, double tol, int* out) {
  if (auto st = require(a && b && out, "ncagm_loewner_leq: null argument")) return st;
  return guarded([&] {
    *out = loewner_leq(as_hermitian(a->a, "ncagm_loewner_leq"), as_hermitian(b->a, "ncagm_loewner_leq"), tol)
               ? 1
               : 0;
  });
}

ncagm_status ncagm_sq_sum_norm(const ncagm_family* f, double* out) {
  if (auto st = require(f && out, "ncagm_sq_sum_norm: null argument")) return st;
  return guarded([&] { *out = sq_sum_norm(f->f); });
}

ncagm_status ncagm_pd_bruteforce(const ncagm_family* f, int d, ncagm_matrix** out) {
  if (auto st = require(f && out, "ncagm_pd_bruteforce: null argument")) return st;
  return guarded([&] { *out = new ncagm_matrix{p_d_bruteforce(f->f, d).mat()}; });
}

ncagm_status ncagm_pd_mobius(const ncagm_family* f, int d, ncagm_matrix** out) {
  if (auto st = require(f && out, "ncagm_pd_mobius: null argument")) return st;
  return guarded([&] {
    MobiusCache cache(d);
    *out = new ncagm_matrix{p_d_via_mobius(f->f, d, cache).mat()};
  });
}

ncagm_status ncagm_restricted_sum(const ncagm_family* f, const ncagm_partition* sigma, ncagm_matrix** out) {
  if (auto st = require(f && sigma && out, "ncagm_restricted_sum: null argument")) return st;
  return guarded([&] { *out = new ncagm_matrix{restricted_sum(f->f, sigma->p)}; });
}

ncagm_status ncagm_full_sum_direct(const ncagm_family* f, const ncagm_partition* sigma, ncagm_matrix** out) {
  if (auto st = require(f && sigma && out, "ncagm_full_sum_direct: null argument")) return st;
  return guarded([&] { *out = new ncagm_matrix{full_sum_direct(f->f, sigma->p)}; });
}

ncagm_status ncagm_full_sum_embedded(const ncagm_family* f, const ncagm_partition* sigma, ncagm_matrix** out) {
  if (auto st = require(f && sigma && out, "ncagm_full_sum_embedded: null argument")) return st;
  return guarded([&] { *out = new ncagm_matrix{full_sum_embedded(f->f, sigma->p)}; });
}

ncagm_status ncagm_run_partitions(int d, char** report_json) {
  if (auto st = require(report_json != nullptr, "ncagm_run_partitions: null argument")) return st;
  return guarded([&] { *report_json = dup_string(run_partitions_table(d).dump(2)); });
}

ncagm_status ncagm_run_products(const char* config_json, char** report_json) {
  if (auto st = require(config_json && report_json, "ncagm_run_products: null argument")) return st;
  return guarded(
      [&] { *report_json = dup_string(run_products(parse_json_arg(config_json, "products")).dump(2)); });
}

ncagm_status ncagm_run_check(const char* config_json, char** report_json) {
  if (auto st = require(config_json && report_json, "ncagm_run_check: null argument")) return st;
  return guarded([&] { *report_json = dup_string(run_check(parse_json_arg(config_json, "check")).dump(2)); });
}

ncagm_status ncagm_run_ensemble(const char* config_json, char** report_json) {
  if (auto st = require(config_json && report_json, "ncagm_run_ensemble: null argument")) return st;
  return guarded(
      [&] { *report_json = dup_string(run_ensemble(parse_json_arg(config_json, "ensemble")).dump(2)); });
}

}  // extern "C"
