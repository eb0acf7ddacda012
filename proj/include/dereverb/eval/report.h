// Copyright 2026 The Dereverb Authors
// License: Apache 2.0 (http://www.apache.org/licenses/LICENSE-2.0)

#ifndef DEREVERB_EVAL_REPORT_H_
#define DEREVERB_EVAL_REPORT_H_

#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dereverb/corpus/example.h"
#include "dereverb/models/config.h"
#include "dereverb/models/model.h"

namespace dereverb::eval {

struct MetricRow {
  std::string example_id;
  std::string metric;
  double value = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double std = 0.0;  // population
  size_t count = 0;
};

struct MetricsReport {
  models::ModelKind kind = models::ModelKind::kRir;
  std::vector<MetricRow> rows;                  // example order
  std::map<std::string, Aggregate> aggregates;  // by metric name
  // Per metric, examples whose value is undefined (an estimated RIR with no
  // energy or too little decay for a T60).
  std::map<std::string, size_t> undefined;
};

// Metric names produced for a model kind, in row order per example.
std::vector<std::string> MetricNames(models::ModelKind kind);

struct NamedExample {
  std::string id;
  corpus::TrainingExample example;
};

// Runs the model on every example. Dry models report lsd and mag_mse; RIR
// models report rir_mse, edc_mse and t60_error; the joint model reports
// all of these plus l_rec. Aggregates are independent of example order.
// Throws EmptySplit.
MetricsReport Evaluate(const models::Model& model,
                       const std::vector<NamedExample>& examples);

// "example_id,metric,value" rows, then a "# aggregate" section with
// "metric,mean,std,count" rows and "# undefined" counts.
void WriteReportCsv(const MetricsReport& report, std::ostream& out);
void WriteReportCsv(const MetricsReport& report,
                    const std::filesystem::path& path);

}  // namespace dereverb::eval

#endif  // DEREVERB_EVAL_REPORT_H_
