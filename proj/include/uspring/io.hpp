#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "uspring/analysis.hpp"
#include "uspring/integrator.hpp"
#include "uspring/ndof.hpp"
#include "uspring/nnm.hpp"
#include "uspring/one_dof.hpp"
#include "uspring/system.hpp"

namespace uspring {

// Deterministic output: keys in authoring order, floats as %.17g, so equal
// inputs give byte-identical files.
class JsonWriter {
 public:
  explicit JsonWriter(std::ostream& os) : os_(os) {}
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(const std::string& k);
  JsonWriter& value(double v);
  JsonWriter& value(int v);
  JsonWriter& value(bool v);
  JsonWriter& value(const std::string& v);
  JsonWriter& value(const char* v) { return value(std::string(v)); }
  JsonWriter& value(const std::vector<double>& v);

 private:
  void separate();
  std::ostream& os_;
  std::vector<bool> first_;
  bool pending_key_ = false;
};

std::string format_double(double v);

void write_timeseries_csv(const TimeSeries& ts, std::ostream& os);
void write_timeseries_sidecar(const OscillatorSystem& sys, const TimeSeries& ts,
                              std::ostream& os);
void write_expansion1_json(const Expansion1Dof& e, std::ostream& os);
void write_expansion1_reconstruction_csv(const Expansion1Dof& e, double eps,
                                         int n_samples, std::ostream& os);
void write_expansion_n_json(const ExpansionNDof& e, std::ostream& os);
void write_branch_csv(const std::vector<NNMResult>& branch, std::ostream& os);
void write_branch_json(const std::vector<NNMResult>& branch, bool completed,
                       const std::string& diagnostic, std::ostream& os);
void write_spectrum_csv(const FourierSpectrum& sp, std::ostream& os);
void write_first_order_csv(const OscillatorSystem& sys,
                           const FirstOrderFrequencies& fo, std::ostream& os);

}  // namespace uspring
