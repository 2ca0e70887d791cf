#include "rmtlab/json_io.hpp"

#include <cmath>

#include <json.hpp>

namespace rmt {

namespace {
using nlohmann::json;

json bound_report_json(const BoundReport& r) {
  return json{{"p", r.p},
              {"n", r.n},
              {"K", r.K},
              {"q", r.q},
              {"proposition_bound", r.proposition_bound},
              {"bonferroni_bound", r.bonferroni_bound},
              {"chain_bound", r.chain_bound},
              {"case_label", to_string(r.case_label)},
              {"silverstein_limit", r.silverstein_limit}};
}

json estimate_json(const TailEstimate& e) {
  return json{{"event", to_string(e.event)},
              {"successes", e.successes},
              {"trials", e.trials},
              {"p_hat", e.p_hat},
              {"ci_low", e.ci_low},
              {"ci_high", e.ci_high},
              {"confidence", e.confidence}};
}

}  // namespace

std::string to_json(const BoundReport& report) {
  return bound_report_json(report).dump();
}

std::string to_json(const DistributionSpec& spec) {
  json j;
  j["kind"] = to_string(spec.kind);
  if (spec.tail) {
    j["alpha"] = spec.tail->alpha;
    j["c0"] = spec.tail->c0;
  }
  j["t_min"] = spec.t_min;
  if (std::isfinite(spec.t_max)) {
    j["t_max"] = spec.t_max;
  }
  return j.dump();
}

std::string to_json(const TailEstimate& estimate) {
  return estimate_json(estimate).dump();
}

std::string to_json(const VerificationVerdict& verdict) {
  json j{{"bound_report", bound_report_json(verdict.bound_report)},
         {"row_norm", estimate_json(verdict.row_norm)},
         {"lambda_max", estimate_json(verdict.lambda)},
         {"margin", verdict.margin},
         {"pass", verdict.pass}};
  return j.dump();
}

std::string trial_to_json_line(const TrialStatistics& trial) {
  return json{{"trial_index", trial.trial_index},
              {"lambda_max", trial.lambda_max},
              {"max_row_sq_norm", trial.max_row_sq_norm}}
      .dump();
}

}  // namespace rmt
