#pragma once

namespace assoc {

double normal_pdf(double x);
double normal_cdf(double x);
// 1 - Phi(x) without cancellation for large x.
double normal_sf(double x);
double normal_quantile(double p);

}  // namespace assoc
