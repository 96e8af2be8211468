#include "scp/quality.hpp"

#include <algorithm>
#include <cmath>

namespace scp {

QualityWeights ewm_weights(const Instance& inst) {
  QualityWeights w;
  const double log_parts = std::log(static_cast<double>(inst.parts.size()));
  for (const auto& part : inst.parts) {
    auto sup = inst.suppliers_of(part.id);
    if (sup.empty()) throw NoSupplierForPart(part.id);
    double max_q = 0.0;
    for (const auto* s : sup) max_q = std::max(max_q, s->quality);
    if (max_q <= 0.0) max_q = 1.0;

    double xi_sum = 0.0;
    for (const auto* s : sup) {
      const double xi = s->quality / max_q;
      w.xi[part.id][s->id] = xi;
      xi_sum += xi;
    }
    double entropy = 0.0;
    for (const auto* s : sup) {
      const double rho = xi_sum > 0.0 ? w.xi[part.id][s->id] / xi_sum : 0.0;
      w.rho[part.id][s->id] = rho;
      if (rho > 0.0) entropy -= rho * std::log(rho);
    }
    entropy = log_parts > 0.0 ? entropy / log_parts : 0.0;
    w.entropy[part.id] = entropy;
    w.divergence[part.id] = std::abs(1.0 - entropy);
  }

  double psi_sum = 0.0;
  for (const auto& [_, psi] : w.divergence) psi_sum += psi;
  if (psi_sum > 1e-15) {
    for (const auto& part : inst.parts) w.omega[part.id] = w.divergence[part.id] / psi_sum;
  } else {
    // Identical dispersion everywhere carries no information; fall back to
    // uniform part weights.
    for (const auto& part : inst.parts)
      w.omega[part.id] = 1.0 / static_cast<double>(inst.parts.size());
  }
  return w;
}

double batch_quality(const std::vector<Receipt>& receipts, const QualityWeights& weights,
                     const Instance& inst) {
  double numerator = 0.0;
  double denominator = 0.0;
  for (const auto& r : receipts) {
    if (r.quantity <= 0.0) continue;
    const SupplierSpec* s = inst.find_supplier(r.part_id, r.supplier_id);
    if (!s) throw DataError("receipt references unknown supplier " + r.part_id + "/" + r.supplier_id);
    auto it = weights.omega.find(r.part_id);
    const double omega = it != weights.omega.end() ? it->second : 0.0;
    numerator += omega * s->quality * r.quantity;
    denominator += omega * r.quantity;
  }
  if (denominator <= 0.0) throw EmptyBatch();
  return numerator / denominator;
}

int demand_uplift(double q, const CustomerSpec& customer, const EmSpec& em) {
  const double raw = (q - em.base_quality) * em.quality_sensitivity * customer.orders_fp;
  if (raw <= 0.0) return 0;
  return static_cast<int>(std::floor(raw + 1e-9));
}

}  // namespace scp
