#include "uspring/presets.hpp"

#include <cmath>

#include "uspring/errors.hpp"

namespace uspring {

OscillatorSystem chain_system(int n, int defect_mode, double gap, double eps) {
  if (n < 1) raise(ErrorKind::invalid_argument, "chain_system: n < 1");
  std::vector<double> mass(n, 1.0);
  std::vector<double> k(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) {
    k[static_cast<size_t>(i) * n + i] = 2.0;
    if (i + 1 < n) {
      k[static_cast<size_t>(i) * n + i + 1] = -1.0;
      k[static_cast<size_t>(i + 1) * n + i] = -1.0;
    }
  }
  return modal_from_physical(mass, k, defect_mode, gap, eps);
}

OscillatorSystem preset_system(const std::string& name, double eps, double gap) {
  if (name == "1dof")
    return make_system({1.0}, {1.0}, {gap}, eps);
  if (name == "1dof_gap")
    return make_system({1.0}, {1.0}, {gap == 0.0 ? 0.5 : gap}, eps);
  if (name == "chain2") return chain_system(2, 0, gap, eps);
  if (name == "chain3") return chain_system(3, 0, gap, eps);
  if (name == "chain5") return chain_system(5, 0, gap, eps);
  if (name == "chain20") return chain_system(20, 0, gap, eps);
  if (name == "modal3") {
    const std::vector<double> w = {1.0, 0.7, 0.4};
    std::vector<double> a(9);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[static_cast<size_t>(i) * 3 + j] = w[i] * w[j];
    return make_system({1.0, std::sqrt(2.0), std::sqrt(5.0)}, std::move(a),
                       {gap, gap, gap}, eps);
  }
  if (name == "coupled3") {
    return make_system({1.0, std::sqrt(2.0), std::sqrt(5.0)},
                       {1.0, 0.25, 0.1,   //
                        0.25, 0.7, 0.15,  //
                        0.1, 0.15, 1.3},
                       {gap, gap, gap}, eps);
  }
  raise(ErrorKind::invalid_argument, "unknown preset: " + name);
}

std::vector<std::string> preset_names() {
  return {"1dof",   "1dof_gap", "chain2", "chain3",
          "chain5", "chain20",  "modal3", "coupled3"};
}

}  // namespace uspring
