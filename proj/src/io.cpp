#include "uspring/io.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>

namespace uspring {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void JsonWriter::separate() {
  if (pending_key_) {
    pending_key_ = false;
    return;
  }
  if (!first_.empty()) {
    if (!first_.back()) os_ << ",";
    first_.back() = false;
  }
}

JsonWriter& JsonWriter::begin_object() {
  separate();
  os_ << "{";
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_object() {
  os_ << "}";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::begin_array() {
  separate();
  os_ << "[";
  first_.push_back(true);
  return *this;
}

JsonWriter& JsonWriter::end_array() {
  os_ << "]";
  first_.pop_back();
  return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
  separate();
  os_ << '"' << k << "\":";
  pending_key_ = true;
  return *this;
}

JsonWriter& JsonWriter::value(double v) {
  separate();
  os_ << format_double(v);
  return *this;
}

JsonWriter& JsonWriter::value(int v) {
  separate();
  os_ << v;
  return *this;
}

JsonWriter& JsonWriter::value(bool v) {
  separate();
  os_ << (v ? "true" : "false");
  return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
  separate();
  os_ << '"';
  for (char c : v) {
    switch (c) {
      case '"': os_ << "\\\""; break;
      case '\\': os_ << "\\\\"; break;
      case '\n': os_ << "\\n"; break;
      case '\t': os_ << "\\t"; break;
      default: os_ << c;
    }
  }
  os_ << '"';
  return *this;
}

JsonWriter& JsonWriter::value(const std::vector<double>& v) {
  begin_array();
  for (double x : v) value(x);
  return end_array();
}

void write_timeseries_csv(const TimeSeries& ts, std::ostream& os) {
  os << "t";
  for (int k = 0; k < ts.n_dof; ++k) os << ",u_" << (k + 1);
  for (int k = 0; k < ts.n_dof; ++k) os << ",v_" << (k + 1);
  os << "\n";
  for (int i = 0; i < ts.samples(); ++i) {
    os << format_double(ts.times[i]);
    for (int k = 0; k < ts.n_dof; ++k) os << "," << format_double(ts.u(i)[k]);
    for (int k = 0; k < ts.n_dof; ++k) os << "," << format_double(ts.v(i)[k]);
    os << "\n";
  }
}

void write_timeseries_sidecar(const OscillatorSystem& sys, const TimeSeries& ts,
                              std::ostream& os) {
  JsonWriter w(os);
  w.begin_object();
  w.key("tol").value(ts.tol);
  w.key("samples").value(ts.samples());
  w.key("events").begin_array();
  for (const auto& e : ts.events) {
    w.begin_object();
    w.key("t").value(e.t);
    w.key("index").value(e.index);
    w.end_object();
  }
  w.end_array();
  w.key("system").begin_object();
  w.key("n").value(sys.size());
  w.key("lambdas").value(sys.lambdas);
  w.key("A").value(sys.A);
  w.key("B").value(sys.B);
  w.key("eps").value(sys.eps);
  w.key("hash").value(sys.hash());
  w.end_object();
  w.end_object();
  os << "\n";
}

namespace {

const char* case_name(CaseTag t) {
  switch (t) {
    case CaseTag::homogeneous: return "homogeneous";
    case CaseTag::offset: return "offset";
    case CaseTag::critical: return "critical";
    case CaseTag::no_contact: return "no_contact";
  }
  return "?";
}

}  // namespace

void write_expansion1_json(const Expansion1Dof& e, std::ostream& os) {
  JsonWriter w(os);
  w.begin_object();
  w.key("case").value(case_name(e.case_tag));
  w.key("omega0").value(e.omega0);
  w.key("omega1").value(e.omega1);
  w.key("omega2").value(e.omega2);
  w.key("alpha1").value(e.alpha1);
  w.key("alpha2").value(e.alpha2);
  w.key("a").value(e.a);
  w.key("b").value(e.b);
  w.key("a0").value(e.a0);
  w.key("a1").value(e.a1);
  w.key("v1_coefficients").value(e.v1.coefficients);
  w.key("truncation_tail").value(e.truncation_tail);
  w.key("horizon_exponent").value(e.horizon_exponent);
  w.key("horizon_infinite").value(e.horizon_infinite);
  w.end_object();
  os << "\n";
}

void write_expansion1_reconstruction_csv(const Expansion1Dof& e, double eps,
                                         int n_samples, std::ostream& os) {
  os << "s,v0,v0_plus_eps_v1\n";
  for (int i = 0; i < n_samples; ++i) {
    const double s = 2.0 * kPi * i / (n_samples - 1);
    const double v0 = e.a0 * std::cos(s);
    const double v1 = eval_series(e.v1, s);
    os << format_double(s) << "," << format_double(v0) << ","
       << format_double(v0 + eps * v1) << "\n";
  }
}

void write_expansion_n_json(const ExpansionNDof& e, std::ostream& os) {
  JsonWriter w(os);
  w.begin_object();
  w.key("mode").value(e.mode);
  w.key("omega0").value(e.omega0);
  w.key("omega1").value(e.omega1);
  w.key("omega2").value(e.omega2);
  w.key("alpha1").value(e.alpha1);
  w.key("alpha2").value(e.alpha2);
  w.key("a0").value(e.a0);
  w.key("a1").value(e.a1);
  w.key("a_k").value(e.a_k);
  w.key("forcing_tail").value(e.forcing_tail);
  w.key("v1").begin_array();
  for (const auto& s : e.v1) w.value(s.coefficients);
  w.end_array();
  w.end_object();
  os << "\n";
}

void write_branch_csv(const std::vector<NNMResult>& branch, std::ostream& os) {
  os << "eps,T,frequency,energy,residual,iterations\n";
  for (const auto& p : branch) {
    os << format_double(p.eps) << "," << format_double(p.T) << ","
       << format_double(2.0 * kPi / p.T) << ","
       << format_double(p.energy) << "," << format_double(p.residual_norm) << ","
       << p.iterations << "\n";
  }
}

void write_branch_json(const std::vector<NNMResult>& branch, bool completed,
                       const std::string& diagnostic, std::ostream& os) {
  JsonWriter w(os);
  w.begin_object();
  w.key("completed").value(completed);
  w.key("diagnostic").value(diagnostic);
  w.key("points").begin_array();
  for (const auto& p : branch) {
    w.begin_object();
    w.key("eps").value(p.eps);
    w.key("T").value(p.T);
    w.key("energy").value(p.energy);
    w.key("residual_norm").value(p.residual_norm);
    w.key("velocity_return").value(p.velocity_return);
    w.key("iterations").value(p.iterations);
    w.key("branch_id").value(p.branch_id);
    w.key("x0").value(p.x0);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  os << "\n";
}

void write_spectrum_csv(const FourierSpectrum& sp, std::ostream& os) {
  os << "frequency,amplitude\n";
  for (size_t i = 0; i < sp.frequencies.size(); ++i)
    os << format_double(sp.frequencies[i]) << "," << format_double(sp.amplitudes[i])
       << "\n";
}

void write_first_order_csv(const OscillatorSystem& sys,
                           const FirstOrderFrequencies& fo, std::ostream& os) {
  os << "mode,lambda,lambda1,lambda_eps,converged\n";
  for (size_t k = 0; k < fo.lambda1.size(); ++k) {
    os << k << "," << format_double(sys.lambdas[k]) << ","
       << format_double(fo.lambda1[k]) << "," << format_double(fo.lambda_eps[k])
       << "," << (fo.converged[k] ? 1 : 0) << "\n";
  }
}

}  // namespace uspring
