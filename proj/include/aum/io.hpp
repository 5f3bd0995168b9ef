#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "aum/error_model.hpp"
#include "aum/format.hpp"
#include "aum/matrix.hpp"
#include "aum/optim.hpp"

namespace aum::io {

// Malformed input file; the message carries the source name and line number.
class ParseError : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

struct Capacity {
  int fpp = 0;
  int fnp = 0;
};

struct RawBreakpoint {
  std::size_t example_id = 0;  // 1-based, as in the file
  Step step;
};

// Header example_id, value, delta_fp, delta_fn (tab separated).
std::vector<RawBreakpoint> read_breakpoints(std::istream& in, const std::string& source = "breakpoints");
// Header example_id, fpp, fnp (tab separated).
std::vector<std::pair<std::size_t, Capacity>> read_capacities(std::istream& in,
                                                              const std::string& source = "capacities");

// Builds the set; example ids must be 1..n. Capacities missing from the table
// default to the largest running FP (left to right) and the largest running
// FN (right to left) of the example.
ExampleSet assemble(const std::vector<RawBreakpoint>& breakpoints,
                    const std::vector<std::pair<std::size_t, Capacity>>& capacities = {});

struct BinaryData {
  std::vector<int> labels;
  Matrix features;
};

// Header label,feat_1,...,feat_p; labels -1 or 1.
BinaryData read_binary_csv(std::istream& in, const std::string& source = "labels");
// Header feat_1,...,feat_p; one row per example.
Matrix read_features_csv(std::istream& in, const std::string& source = "features");
// One value per line; an optional non-numeric first line is a header.
std::vector<double> read_predictions(std::istream& in, const std::string& source = "predictions");

void write_breakpoints(std::ostream& out, const ExampleSet& set);
void write_capacities(std::ostream& out, const ExampleSet& set);
void write_binary_csv(std::ostream& out, const BinaryData& data);
void write_features_csv(std::ostream& out, const Matrix& features);
void write_predictions(std::ostream& out, const std::vector<double>& predictions);

// iteration,aum,auc,error_rate,step,intercept[,val_aum,val_auc]
void write_trace_csv(std::ostream& out, const std::vector<TraceRecord>& trace);
// Weights, intercept, selected iteration and rule as a JSON document.
std::string fit_to_json(const FitResult& fit, Objective objective);

std::string read_file(const std::string& path);

}  // namespace aum::io
