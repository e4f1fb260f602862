#include "acstab/acstab.h"

#include <exception>
#include <new>
#include <string>
#include <vector>

#include "acstab/bounds.hpp"
#include "acstab/errors.hpp"
#include "acstab/harness.hpp"
#include "acstab/operator.hpp"
#include "acstab/serialize.hpp"

struct acstab_model {
  acstab::FuncModel model;
  acstab::NormKind norm;
};

struct acstab_report {
  acstab::RunResult result;
};

namespace {

thread_local std::string last_error;

acstab_status record(acstab_status status, const char* message) {
  last_error = message;
  return status;
}

template <class F>
acstab_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return ACSTAB_OK;
  } catch (const acstab::Error& e) {
    return record(static_cast<acstab_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return record(ACSTAB_PARSE_ERROR, e.what());
  } catch (const std::bad_alloc&) {
    return record(ACSTAB_INTERNAL_ERROR, "out of memory");
  } catch (const std::exception& e) {
    return record(ACSTAB_INTERNAL_ERROR, e.what());
  } catch (...) {
    return record(ACSTAB_INTERNAL_ERROR, "unknown exception");
  }
}

acstab::ScalarMode to_mode(acstab_mode mode) {
  if (mode == ACSTAB_EXACT) return acstab::ScalarMode::exact;
  if (mode == ACSTAB_FLOAT) return acstab::ScalarMode::floating;
  acstab::fail(acstab::ErrorCode::invalid_argument, "unknown scalar mode");
}

void check_shape(const acstab_model* model, size_t d, size_t m) {
  if (!model) acstab::fail(acstab::ErrorCode::invalid_argument, "null model");
  if (d != model->model.domain_dim() || m != model->model.codomain_dim())
    acstab::fail(acstab::ErrorCode::dimension_mismatch, "buffer sizes do not match the model");
}

acstab::Point to_point(const acstab_model* model, acstab_mode mode, const double* x, size_t d) {
  if (!x) acstab::fail(acstab::ErrorCode::invalid_argument, "null input buffer");
  return acstab::Point::from_doubles({x, d}, to_mode(mode), model->norm);
}

void copy_out(const acstab::Point& p, double* out) {
  if (!out) acstab::fail(acstab::ErrorCode::invalid_argument, "null output buffer");
  for (size_t k = 0; k < p.dim(); ++k) out[k] = p[k].to_double();
}

}  // namespace

extern "C" {

const char* acstab_version(void) { return "1.0.0"; }

const char* acstab_status_string(acstab_status status) {
  switch (status) {
    case ACSTAB_OK: return "ok";
    case ACSTAB_INTERNAL_ERROR: return "internal_error";
    default:
      if (status >= ACSTAB_INVALID_ARGUMENT && status <= ACSTAB_IO_ERROR)
        return acstab::to_string(static_cast<acstab::ErrorCode>(status)).data();
      return "unknown";
  }
}

const char* acstab_last_error(void) { return last_error.c_str(); }

acstab_status acstab_model_from_json(const char* config_json, acstab_model** out) {
  if (!config_json || !out) return record(ACSTAB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto j = acstab::Json::parse(config_json);
    const auto cfg = acstab::parse_config(j);
    if (!cfg.model) acstab::fail(acstab::ErrorCode::parse_error, "config has no \"model\" section");
    *out = new acstab_model{*cfg.model, cfg.norm};
  });
}

void acstab_model_free(acstab_model* model) { delete model; }

acstab_status acstab_model_dims(const acstab_model* model, size_t* d, size_t* m) {
  if (!model || !d || !m) return record(ACSTAB_INVALID_ARGUMENT, "null argument");
  *d = model->model.domain_dim();
  *m = model->model.codomain_dim();
  return ACSTAB_OK;
}

acstab_status acstab_model_eval(const acstab_model* model, acstab_mode mode, const double* x, size_t d,
                                double* out, size_t m) {
  return guarded([&] {
    check_shape(model, d, m);
    copy_out(model->model(to_point(model, mode, x, d)), out);
  });
}

acstab_status acstab_d_residual(const acstab_model* model, acstab_mode mode, const double* x, const double* y,
                                size_t d, double* out, size_t m, double* magnitude) {
  return guarded([&] {
    check_shape(model, d, m);
    const auto r = acstab::d_residual(model->model, to_point(model, mode, x, d), to_point(model, mode, y, d));
    copy_out(r.value, out);
    if (magnitude) *magnitude = r.magnitude;
  });
}

acstab_status acstab_corollary_sum_bound(double theta, double p, double norm_x, double* out) {
  if (!out) return record(ACSTAB_INVALID_ARGUMENT, "null output");
  return guarded([&] { *out = acstab::corollary_sum_bound(theta, p, norm_x); });
}

acstab_status acstab_corollary_product_bound(double theta, double r, double s, double norm_x, double* out) {
  if (!out) return record(ACSTAB_INVALID_ARGUMENT, "null output");
  return guarded([&] { *out = acstab::corollary_product_bound(theta, r, s, norm_x); });
}

acstab_status acstab_subcommand_parse(const char* name, acstab_subcommand* out) {
  if (!name || !out) return record(ACSTAB_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = static_cast<acstab_subcommand>(acstab::parse_subcommand(name)); });
}

acstab_status acstab_run(acstab_subcommand sub, const char* config_json, const char* out_dir,
                         acstab_report** out) {
  if (!config_json || !out) return record(ACSTAB_INVALID_ARGUMENT, "null argument");
  *out = nullptr;
  if (sub < ACSTAB_CHECK_LEMMAS || sub > ACSTAB_SWEEP) return record(ACSTAB_INVALID_ARGUMENT, "unknown subcommand");
  return guarded([&] {
    auto result = acstab::run(static_cast<acstab::Subcommand>(sub), config_json, out_dir ? out_dir : "");
    *out = new acstab_report{std::move(result)};
  });
}

int acstab_report_exit_code(const acstab_report* report) {
  return report ? report->result.exit_code : acstab::exit_code::internal;
}

const char* acstab_report_summary(const acstab_report* report) {
  return report ? report->result.summary.c_str() : "";
}

size_t acstab_report_file_count(const acstab_report* report) { return report ? report->result.files.size() : 0; }

const char* acstab_report_file(const acstab_report* report, size_t index) {
  if (!report || index >= report->result.files.size()) return nullptr;
  return report->result.files[index].c_str();
}

void acstab_report_free(acstab_report* report) { delete report; }

}  // extern "C"
