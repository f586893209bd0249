#include "semilag/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace semilag {

OmegaSpec OmegaSpec::constant(double c) {
  if (!std::isfinite(c)) {
    throw std::invalid_argument("OmegaSpec::constant: speed must be finite");
  }
  OmegaSpec s;
  s.case_ = Case::Constant;
  s.constant_ = c;
  return s;
}

OmegaSpec OmegaSpec::tx(TxFn fn) {
  if (!fn) {
    throw std::invalid_argument("OmegaSpec::tx: empty function");
  }
  OmegaSpec s;
  s.case_ = Case::TX;
  s.tx_ = std::move(fn);
  return s;
}

OmegaSpec OmegaSpec::txy(TxyFn fn) {
  if (!fn) {
    throw std::invalid_argument("OmegaSpec::txy: empty function");
  }
  OmegaSpec s;
  s.case_ = Case::TXY;
  s.txy_ = std::move(fn);
  return s;
}

double OmegaSpec::operator()(double t, double x, std::span<const double> y) const {
  double w = constant_;
  switch (case_) {
  case Case::Constant: break;
  case Case::TX: w = tx_(t, x); break;
  case Case::TXY: w = txy_(t, x, y); break;
  }
  if (!std::isfinite(w)) {
    throw std::domain_error("OmegaSpec: advection speed evaluated to a non-finite value");
  }
  return w;
}

} // namespace semilag
