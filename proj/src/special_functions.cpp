#include "stochgraph/special_functions.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_sf_zeta.h>

#include <stdexcept>

namespace stochgraph {

namespace {

double checked(int status, const gsl_sf_result& r, const char* what) {
  if (status != GSL_SUCCESS) throw std::domain_error(std::string(what) + ": " + gsl_strerror(status));
  return r.val;
}

struct QuietGsl {
  QuietGsl() { gsl_set_error_handler_off(); }
};
const QuietGsl quiet_gsl;

}  // namespace

double zeta(double s) {
  if (!(s > 1.0)) throw std::domain_error("zeta needs s > 1");
  gsl_sf_result r;
  return checked(gsl_sf_zeta_e(s, &r), r, "zeta");
}

double hurwitz_zeta(double s, double q) {
  if (!(s > 1.0) || !(q > 0.0)) throw std::domain_error("hurwitz_zeta needs s > 1, q > 0");
  gsl_sf_result r;
  return checked(gsl_sf_hzeta_e(s, q, &r), r, "hurwitz_zeta");
}

double power_tail(double s, std::size_t m) {
  if (m == 0) throw std::domain_error("power_tail needs m >= 1");
  return hurwitz_zeta(s, static_cast<double>(m));
}

}  // namespace stochgraph
